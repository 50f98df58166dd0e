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

// Combinational netlists built from 2-input gates, with the 2-input NAND as
// the universal primitive. A netlist in NandOnly mode expands every derived
// builder (NOT/AND/OR/XOR/NOR) into the standard NAND identities:
//
//   NOT a   = a NAND a
//   a AND b = (a NAND b) NAND (a NAND b)
//   a OR  b = (a NAND a) NAND (b NAND b)
//   a XOR b = (a NAND (a NAND b)) NAND ((a NAND b) NAND b)
//
// Nets are single-driver, gates are appended in topological order, and a
// finalized netlist is immutable and safe to share across threads.

#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gcdfabric {

/// Stimulus or result value for a named net group. Bit i of the word drives
/// (or is read from) net i of the group, LSB first.
using Word = std::uint64_t;

enum class GateKind : std::uint8_t { Nand, And, Or, Xor, Not, Nor };

inline constexpr std::array<GateKind, 6> all_gate_kinds = {
    GateKind::Nand, GateKind::And, GateKind::Or,
    GateKind::Xor,  GateKind::Not, GateKind::Nor};

constexpr std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::Nand: return "NAND";
    case GateKind::And: return "AND";
    case GateKind::Or: return "OR";
    case GateKind::Xor: return "XOR";
    case GateKind::Not: return "NOT";
    case GateKind::Nor: return "NOR";
  }
  return "?";
}

inline GateKind gate_kind_from_string(std::string_view s) {
  for (GateKind k : all_gate_kinds)
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown gate kind: " + std::string(s));
}

/// Relative cell area with the 2-input NAND as the unit. Overridable at the
/// cost-model level; these defaults feed GateStats::nand_equivalent_area.
constexpr double default_area_weight(GateKind kind) {
  switch (kind) {
    case GateKind::Nand:
    case GateKind::Not:
      return 1.0;
    case GateKind::Xor:
      return 2.5;
    default:
      return 1.5;
  }
}

constexpr double default_delay_weight(GateKind) { return 1.0; }

/// Mixed emits one native gate per builder call; NandOnly expands every
/// builder into 2-input NANDs.
enum class BuildMode : std::uint8_t { Mixed, NandOnly };

class Netlist;

/// Opaque handle to one boolean net. Only valid for the netlist that issued
/// it; any builder or evaluator rejects foreign handles.
class NetId {
 public:
  NetId() = default;

  std::uint32_t index() const { return index_; }
  bool valid() const { return owner_ != 0; }

  friend bool operator==(NetId, NetId) = default;

 private:
  friend class Netlist;
  NetId(std::uint32_t index, std::uint32_t owner) : index_(index), owner_(owner) {}

  std::uint32_t index_ = 0;
  std::uint32_t owner_ = 0;
};

/// One gate. NOT is unary (in[1] mirrors in[0]); every other kind is binary.
struct Gate {
  GateKind kind;
  std::array<std::uint32_t, 2> in;
  std::uint32_t out;

  unsigned arity() const { return kind == GateKind::Not ? 1u : 2u; }
};

/// Census of a finalized netlist: gate counts by kind, unit-delay depth of
/// the deepest input-to-output path, and the default-weighted area.
struct GateStats {
  std::map<GateKind, std::size_t> counts;
  std::size_t depth = 0;
  double nand_equivalent_area = 0.0;

  std::size_t count(GateKind kind) const {
    auto it = counts.find(kind);
    return it == counts.end() ? 0 : it->second;
  }

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& [kind, c] : counts) n += c;
    return n;
  }

  bool nand_only() const {
    for (const auto& [kind, c] : counts)
      if (kind != GateKind::Nand && c > 0) return false;
    return true;
  }
};

/// Named bundle of nets forming one input or output port of a netlist.
struct Group {
  std::string name;
  std::vector<std::uint32_t> nets;

  unsigned width() const { return static_cast<unsigned>(nets.size()); }
};

class Netlist {
 public:
  explicit Netlist(unsigned width_hint = 32, BuildMode mode = BuildMode::Mixed)
      : id_(next_id()), width_hint_(width_hint), mode_(mode) {}

  unsigned width_hint() const { return width_hint_; }
  BuildMode mode() const { return mode_; }
  bool nand_only() const { return mode_ == BuildMode::NandOnly; }
  bool finalized() const { return finalized_; }

  /// The predeclared constant-0/constant-1 nets (indices 0 and 1).
  NetId constant(bool value) const { return NetId(value ? 1u : 0u, id_); }

  bool owns(NetId net) const {
    return net.owner_ == id_ && net.index_ < net_count_;
  }

  std::vector<NetId> add_input(const std::string& name, unsigned width) {
    require_building();
    if (width == 0 || width > 64)
      throw std::invalid_argument("input group width must be in [1, 64]");
    if (!gates_.empty())
      throw std::logic_error("inputs must be declared before any gate");
    if (find_input(name))
      throw std::invalid_argument("duplicate input group: " + name);
    Group group;
    group.name = name;
    std::vector<NetId> ids;
    ids.reserve(width);
    for (unsigned i = 0; i < width; ++i) {
      NetId net = fresh_net();
      group.nets.push_back(net.index());
      ids.push_back(net);
    }
    inputs_.push_back(std::move(group));
    return ids;
  }

  void add_output(const std::string& name, std::span<const NetId> nets) {
    require_building();
    if (nets.empty() || nets.size() > 64)
      throw std::invalid_argument("output group width must be in [1, 64]");
    if (find_output(name))
      throw std::invalid_argument("duplicate output group: " + name);
    Group group;
    group.name = name;
    for (NetId net : nets) group.nets.push_back(check(net));
    outputs_.push_back(std::move(group));
  }

  void add_output(const std::string& name, NetId net) {
    add_output(name, std::span<const NetId>(&net, 1));
  }

  // --- builders ----------------------------------------------------------

  NetId nand(NetId a, NetId b) { return emit(GateKind::Nand, a, b); }

  NetId not_(NetId a) {
    if (nand_only()) return nand(a, a);
    return emit(GateKind::Not, a, a);
  }

  NetId and_(NetId a, NetId b) {
    if (nand_only()) {
      NetId n = nand(a, b);
      return nand(n, n);
    }
    return emit(GateKind::And, a, b);
  }

  NetId or_(NetId a, NetId b) {
    if (nand_only()) return nand(nand(a, a), nand(b, b));
    return emit(GateKind::Or, a, b);
  }

  NetId xor_(NetId a, NetId b) {
    if (nand_only()) {
      NetId ab = nand(a, b);
      return nand(nand(a, ab), nand(ab, b));
    }
    return emit(GateKind::Xor, a, b);
  }

  NetId nor_(NetId a, NetId b) {
    if (nand_only()) return not_(or_(a, b));
    return emit(GateKind::Nor, a, b);
  }

  /// Balanced tree of 2-input ANDs. A single-net span is returned as-is.
  NetId and_tree(std::span<const NetId> nets) {
    if (nets.empty()) throw std::invalid_argument("and_tree of zero nets");
    if (nets.size() == 1) {
      check(nets[0]);
      return nets[0];
    }
    std::size_t mid = nets.size() / 2;
    return and_(and_tree(nets.first(mid)), and_tree(nets.subspan(mid)));
  }

  NetId or_tree(std::span<const NetId> nets) {
    if (nets.empty()) throw std::invalid_argument("or_tree of zero nets");
    if (nets.size() == 1) {
      check(nets[0]);
      return nets[0];
    }
    std::size_t mid = nets.size() / 2;
    return or_(or_tree(nets.first(mid)), or_tree(nets.subspan(mid)));
  }

  /// Wide NOR: balanced OR tree with the final inversion fused into the root.
  NetId nor_tree(std::span<const NetId> nets) {
    if (nets.empty()) throw std::invalid_argument("nor_tree of zero nets");
    if (nets.size() == 1) return not_(nets[0]);
    std::size_t mid = nets.size() / 2;
    return nor_(or_tree(nets.first(mid)), or_tree(nets.subspan(mid)));
  }

  /// 2-to-1 multiplexer: sel ? when_set : when_clear.
  NetId mux(NetId sel, NetId when_set, NetId when_clear) {
    return or_(and_(when_set, sel), and_(when_clear, not_(sel)));
  }

  /// Per-bit 2-to-1 multiplexer over two equal-width buses, sharing one
  /// inverted select net.
  std::vector<NetId> mux_word(NetId sel, std::span<const NetId> when_set,
                              std::span<const NetId> when_clear) {
    if (when_set.size() != when_clear.size())
      throw std::invalid_argument("mux_word operand width mismatch");
    NetId nsel = not_(sel);
    std::vector<NetId> out;
    out.reserve(when_set.size());
    for (std::size_t i = 0; i < when_set.size(); ++i)
      out.push_back(or_(and_(when_set[i], sel), and_(when_clear[i], nsel)));
    return out;
  }

  // --- finalize and inspect ----------------------------------------------

  /// Validates the structure (every gate input defined earlier, one driver
  /// per net, outputs driven) and freezes the netlist.
  void finalize() {
    require_building();
    std::vector<std::uint8_t> defined(net_count_, 0);
    defined[0] = defined[1] = 1;
    for (const Group& group : inputs_)
      for (std::uint32_t n : group.nets) defined[n] = 1;
    for (const Gate& gate : gates_) {
      for (unsigned i = 0; i < gate.arity(); ++i)
        if (!defined[gate.in[i]])
          throw std::logic_error("gate reads a net defined later");
      if (defined[gate.out])
        throw std::logic_error("net has more than one driver");
      defined[gate.out] = 1;
    }
    for (const Group& group : outputs_)
      for (std::uint32_t n : group.nets)
        if (!defined[n]) throw std::logic_error("undriven output net");
    finalized_ = true;
  }

  std::size_t net_count() const { return net_count_; }
  std::span<const Gate> gates() const { return gates_; }
  std::span<const Group> inputs() const { return inputs_; }
  std::span<const Group> outputs() const { return outputs_; }

  const Group* find_input(std::string_view name) const {
    for (const Group& g : inputs_)
      if (g.name == name) return &g;
    return nullptr;
  }

  const Group* find_output(std::string_view name) const {
    for (const Group& g : outputs_)
      if (g.name == name) return &g;
    return nullptr;
  }

  /// Handle for an existing net by raw index (used by the text parser).
  NetId net_by_index(std::uint32_t index) const {
    if (index >= net_count_)
      throw std::invalid_argument("net index out of range");
    return NetId(index, id_);
  }

  GateStats stats() const {
    require_finalized();
    GateStats s;
    std::vector<std::uint32_t> level(net_count_, 0);
    for (const Gate& gate : gates_) {
      ++s.counts[gate.kind];
      s.nand_equivalent_area += default_area_weight(gate.kind);
      std::uint32_t l = level[gate.in[0]];
      if (gate.arity() == 2) l = std::max(l, level[gate.in[1]]);
      level[gate.out] = l + 1;
    }
    std::size_t depth = 0;
    if (!outputs_.empty()) {
      for (const Group& group : outputs_)
        for (std::uint32_t n : group.nets)
          depth = std::max<std::size_t>(depth, level[n]);
    } else {
      for (const Gate& gate : gates_)
        depth = std::max<std::size_t>(depth, level[gate.out]);
    }
    s.depth = depth;
    return s;
  }

  /// Pure single-pass evaluation: assigns every input group, runs the gates
  /// in order, returns every output group.
  std::map<std::string, Word> evaluate(
      const std::map<std::string, Word>& assignment) const;

 private:
  friend class Evaluator;

  static std::uint32_t next_id() {
    static std::atomic<std::uint32_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
  }

  void require_building() const {
    if (finalized_) throw std::logic_error("netlist is finalized");
  }

  void require_finalized() const {
    if (!finalized_) throw std::logic_error("netlist is not finalized");
  }

  std::uint32_t check(NetId net) const {
    if (net.owner_ != id_)
      throw std::invalid_argument("net belongs to a different netlist");
    if (net.index_ >= net_count_)
      throw std::invalid_argument("net index out of range");
    return net.index_;
  }

  NetId fresh_net() { return NetId(net_count_++, id_); }

  NetId emit(GateKind kind, NetId a, NetId b) {
    require_building();
    if (nand_only() && kind != GateKind::Nand)
      throw std::logic_error("nand-only netlist cannot hold a native gate");
    Gate gate;
    gate.kind = kind;
    gate.in = {check(a), check(b)};
    NetId out = fresh_net();
    gate.out = out.index();
    gates_.push_back(gate);
    return out;
  }

  std::uint32_t id_;
  unsigned width_hint_;
  BuildMode mode_;
  bool finalized_ = false;
  std::uint32_t net_count_ = 2;  // nets 0 and 1 are the constants
  std::vector<Gate> gates_;
  std::vector<Group> inputs_;
  std::vector<Group> outputs_;
};

/// Reusable evaluation scratchpad over one finalized netlist. Cheap to call
/// repeatedly; the netlist itself is never touched.
class Evaluator {
 public:
  explicit Evaluator(const Netlist& netlist)
      : nl_(&netlist),
        values_(netlist.net_count(), 0),
        assigned_(netlist.inputs().size(), 0) {
    if (!netlist.finalized())
      throw std::logic_error("evaluator requires a finalized netlist");
    values_[1] = 1;
  }

  const Netlist& netlist() const { return *nl_; }

  void set_input(const Group& group, Word value) {
    std::size_t index = group_index(group);
    if (group.width() < 64 && (value >> group.width()) != 0)
      throw std::invalid_argument("value does not fit input group '" +
                                  group.name + "'");
    for (unsigned i = 0; i < group.width(); ++i)
      values_[group.nets[i]] = static_cast<std::uint8_t>((value >> i) & 1u);
    assigned_[index] = 1;
  }

  void set_input(std::string_view name, Word value) {
    const Group* group = nl_->find_input(name);
    if (!group)
      throw std::invalid_argument("unknown input group: " + std::string(name));
    set_input(*group, value);
  }

  void run() {
    for (std::size_t i = 0; i < assigned_.size(); ++i)
      if (!assigned_[i])
        throw std::invalid_argument("input group not assigned: " +
                                    nl_->inputs()[i].name);
    std::uint8_t* v = values_.data();
    for (const Gate& gate : nl_->gates_) {
      std::uint8_t a = v[gate.in[0]];
      std::uint8_t b = v[gate.in[1]];
      std::uint8_t out = 0;
      switch (gate.kind) {
        case GateKind::Nand: out = 1u ^ (a & b); break;
        case GateKind::And: out = a & b; break;
        case GateKind::Or: out = a | b; break;
        case GateKind::Xor: out = a ^ b; break;
        case GateKind::Not: out = 1u ^ a; break;
        case GateKind::Nor: out = 1u ^ (a | b); break;
      }
      v[gate.out] = out;
    }
  }

  Word group_value(const Group& group) const {
    Word w = 0;
    for (unsigned i = 0; i < group.width(); ++i)
      w |= Word(values_[group.nets[i]]) << i;
    return w;
  }

  Word output(std::string_view name) const {
    const Group* group = nl_->find_output(name);
    if (!group)
      throw std::invalid_argument("unknown output group: " + std::string(name));
    return group_value(*group);
  }

  /// Value of one net after run(); handy for probing internal signals.
  int net_value(NetId net) const {
    if (!nl_->owns(net))
      throw std::invalid_argument("net belongs to a different netlist");
    return values_[net.index()];
  }

 private:
  std::size_t group_index(const Group& group) const {
    std::span<const Group> groups = nl_->inputs();
    if (groups.empty() || &group < groups.data() ||
        &group >= groups.data() + groups.size())
      throw std::invalid_argument("group belongs to a different netlist");
    return static_cast<std::size_t>(&group - groups.data());
  }

  const Netlist* nl_;
  std::vector<std::uint8_t> values_;
  std::vector<std::uint8_t> assigned_;
};

inline std::map<std::string, Word> Netlist::evaluate(
    const std::map<std::string, Word>& assignment) const {
  require_finalized();
  Evaluator eval(*this);
  for (const auto& [name, value] : assignment) {
    if (!find_input(name))
      throw std::invalid_argument("unknown input group: " + name);
    eval.set_input(name, value);
  }
  eval.run();
  std::map<std::string, Word> result;
  for (const Group& group : outputs_) result[group.name] = eval.group_value(group);
  return result;
}

}  // namespace gcdfabric
