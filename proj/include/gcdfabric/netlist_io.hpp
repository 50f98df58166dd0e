// Copyright 2026 The gcdfabric Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text formats for finalized netlists.
//
// `lines` is a flat record format, one record per line:
//
//   input <name> <width> <net...>
//   gate <id> <KIND> <in...> -> <out>
//   output <name> <width> <net...>
//
// Net indices are the netlist's own: 0 and 1 are the constant-0/1 nets,
// input nets follow, then one fresh net per gate in emission order. The
// format round-trips through parse_lines. `dot` renders the same structure
// as a graphviz digraph.

#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gcdfabric/netlist.hpp"

namespace gcdfabric {

enum class ExportFormat { Lines, Dot };

inline std::string to_lines(const Netlist& nl) {
  if (!nl.finalized()) throw std::logic_error("export requires a finalized netlist");
  std::ostringstream out;
  for (const Group& group : nl.inputs()) {
    out << "input " << group.name << ' ' << group.width();
    for (std::uint32_t n : group.nets) out << ' ' << n;
    out << '\n';
  }
  std::size_t id = 0;
  for (const Gate& gate : nl.gates()) {
    out << "gate " << id++ << ' ' << to_string(gate.kind);
    for (unsigned i = 0; i < gate.arity(); ++i) out << ' ' << gate.in[i];
    out << " -> " << gate.out << '\n';
  }
  for (const Group& group : nl.outputs()) {
    out << "output " << group.name << ' ' << group.width();
    for (std::uint32_t n : group.nets) out << ' ' << n;
    out << '\n';
  }
  return out.str();
}

inline std::string to_dot(const Netlist& nl) {
  if (!nl.finalized()) throw std::logic_error("export requires a finalized netlist");
  std::ostringstream out;
  out << "digraph netlist {\n  rankdir=LR;\n";
  // node per source net (constants that are actually read, then inputs)
  std::vector<std::uint8_t> const_used(2, 0);
  for (const Gate& gate : nl.gates())
    for (unsigned i = 0; i < gate.arity(); ++i)
      if (gate.in[i] < 2) const_used[gate.in[i]] = 1;
  for (std::uint32_t c = 0; c < 2; ++c)
    if (const_used[c])
      out << "  n" << c << " [label=\"" << c << "\" shape=box];\n";
  for (const Group& group : nl.inputs())
    for (unsigned i = 0; i < group.width(); ++i)
      out << "  n" << group.nets[i] << " [label=\"" << group.name << '[' << i
          << "]\" shape=ellipse];\n";
  // gates; a gate node is addressed through its output net
  std::vector<std::size_t> driver(nl.net_count(), SIZE_MAX);
  std::size_t id = 0;
  for (const Gate& gate : nl.gates()) {
    driver[gate.out] = id;
    out << "  g" << id << " [label=\"" << to_string(gate.kind)
        << "\" shape=record];\n";
    ++id;
  }
  auto node_of = [&](std::uint32_t net) {
    std::ostringstream name;
    if (driver[net] == SIZE_MAX)
      name << 'n' << net;
    else
      name << 'g' << driver[net];
    return name.str();
  };
  id = 0;
  for (const Gate& gate : nl.gates()) {
    for (unsigned i = 0; i < gate.arity(); ++i)
      out << "  " << node_of(gate.in[i]) << " -> g" << id << ";\n";
    ++id;
  }
  for (const Group& group : nl.outputs()) {
    out << "  out_" << group.name << " [label=\"" << group.name
        << "\" shape=box];\n";
    for (std::uint32_t n : group.nets)
      out << "  " << node_of(n) << " -> out_" << group.name << ";\n";
  }
  out << "}\n";
  return out.str();
}

inline std::string export_netlist(const Netlist& nl, ExportFormat format) {
  return format == ExportFormat::Lines ? to_lines(nl) : to_dot(nl);
}

/// Rebuilds a netlist from its `lines` text. The reconstruction re-emits
/// every record through the normal builder API and cross-checks that the
/// net numbering matches the file, so a parsed netlist evaluates exactly
/// like the one that was exported.
inline Netlist parse_lines(std::string_view text) {
  struct OutputRec {
    std::string name;
    std::vector<std::uint32_t> nets;
  };

  std::istringstream in{std::string(text)};
  std::string line;

  // Inputs must be replayed before gates, so peek at the records first to
  // size the width hint.
  std::vector<std::string> lines;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);

  unsigned width_hint = 1;
  for (const std::string& l : lines) {
    std::istringstream ls(l);
    std::string tag, name;
    unsigned width = 0;
    if (ls >> tag >> name >> width && tag == "input")
      width_hint = std::max(width_hint, width);
  }

  Netlist nl(width_hint, BuildMode::Mixed);
  std::size_t next_gate_id = 0;
  auto fail = [](const std::string& why, const std::string& where) -> void {
    throw std::runtime_error("netlist parse error: " + why + " in \"" + where +
                             "\"");
  };

  for (const std::string& l : lines) {
    std::istringstream ls(l);
    std::string tag;
    ls >> tag;
    if (tag == "input" || tag == "output") {
      std::string name;
      unsigned width = 0;
      if (!(ls >> name >> width)) fail("malformed group record", l);
      std::vector<std::uint32_t> nets(width);
      for (std::uint32_t& n : nets)
        if (!(ls >> n)) fail("missing group net index", l);
      if (tag == "input") {
        std::vector<NetId> ids = nl.add_input(name, width);
        for (unsigned i = 0; i < width; ++i)
          if (ids[i].index() != nets[i]) fail("input net numbering mismatch", l);
      } else {
        std::vector<NetId> ids;
        ids.reserve(width);
        for (std::uint32_t n : nets) ids.push_back(nl.net_by_index(n));
        nl.add_output(name, ids);
      }
    } else if (tag == "gate") {
      std::size_t id = 0;
      std::string kind_str;
      if (!(ls >> id >> kind_str)) fail("malformed gate record", l);
      if (id != next_gate_id) fail("gate id out of order", l);
      GateKind kind = gate_kind_from_string(kind_str);
      unsigned arity = kind == GateKind::Not ? 1u : 2u;
      std::vector<NetId> in_nets;
      for (unsigned i = 0; i < arity; ++i) {
        std::uint32_t n = 0;
        if (!(ls >> n)) fail("missing gate input", l);
        in_nets.push_back(nl.net_by_index(n));
      }
      std::string arrow;
      std::uint32_t out_net = 0;
      if (!(ls >> arrow >> out_net) || arrow != "->")
        fail("malformed gate record", l);
      NetId out;
      switch (kind) {
        case GateKind::Nand: out = nl.nand(in_nets[0], in_nets[1]); break;
        case GateKind::And: out = nl.and_(in_nets[0], in_nets[1]); break;
        case GateKind::Or: out = nl.or_(in_nets[0], in_nets[1]); break;
        case GateKind::Xor: out = nl.xor_(in_nets[0], in_nets[1]); break;
        case GateKind::Not: out = nl.not_(in_nets[0]); break;
        case GateKind::Nor: out = nl.nor_(in_nets[0], in_nets[1]); break;
      }
      if (out.index() != out_net) fail("gate output numbering mismatch", l);
      ++next_gate_id;
    } else {
      fail("unknown record tag", l);
    }
  }
  nl.finalize();
  return nl;
}

}  // namespace gcdfabric
