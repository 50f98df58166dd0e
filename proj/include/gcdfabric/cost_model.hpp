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

// Technology-independent cost estimation: weighted gate census as the area
// proxy, weighted critical path as the delay proxy, and their product (ADP)
// as the comparison metric. Weights are user-overridable; no cell library
// is assumed beyond "NAND is the unit".

#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gcdfabric/gcd_machines.hpp"
#include "gcdfabric/netlist.hpp"

namespace gcdfabric {

struct CostWeights {
  std::map<GateKind, double> area;
  std::map<GateKind, double> delay;

  static CostWeights defaults() {
    CostWeights w;
    for (GateKind k : all_gate_kinds) {
      w.area[k] = default_area_weight(k);
      w.delay[k] = default_delay_weight(k);
    }
    return w;
  }

  double area_of(GateKind k) const { return area.at(k); }
  double delay_of(GateKind k) const { return delay.at(k); }

  void validate() const {
    for (GateKind k : all_gate_kinds) {
      if (area.find(k) == area.end() || delay.find(k) == delay.end())
        throw std::domain_error("cost weights missing gate kind " +
                                std::string(to_string(k)));
      if (!(area.at(k) > 0) || !(delay.at(k) > 0))
        throw std::domain_error("cost weights must be positive");
    }
  }
};

/// Longest input-to-output path with per-kind delay weights.
inline double weighted_critical_path(const Netlist& nl, const CostWeights& w) {
  std::vector<double> level(nl.net_count(), 0.0);
  for (const Gate& gate : nl.gates()) {
    double l = level[gate.in[0]];
    if (gate.arity() == 2) l = std::max(l, level[gate.in[1]]);
    level[gate.out] = l + w.delay_of(gate.kind);
  }
  double depth = 0.0;
  if (!nl.outputs().empty()) {
    for (const Group& group : nl.outputs())
      for (std::uint32_t n : group.nets) depth = std::max(depth, level[n]);
  } else {
    for (const Gate& gate : nl.gates())
      depth = std::max(depth, level[gate.out]);
  }
  return depth;
}

struct CostReport {
  ArchVariant variant = ArchVariant::ForLoop;
  bool behavioral = false;  // no structural cost: area/delay/adp absent
  std::optional<double> area;
  std::optional<double> delay;
  std::optional<double> adp;
  GateStats census;
};

inline CostReport cost_netlist(const Netlist& nl,
                               const CostWeights& weights = CostWeights::defaults()) {
  weights.validate();
  CostReport report;
  double area = 0.0;
  for (const Gate& gate : nl.gates()) area += weights.area_of(gate.kind);
  report.census = nl.stats();
  report.area = area;
  report.delay = weighted_critical_path(nl, weights);
  report.adp = *report.area * *report.delay;
  return report;
}

inline CostReport cost(const Machine& machine,
                       const CostWeights& weights = CostWeights::defaults()) {
  weights.validate();
  const Netlist* dp = machine.datapath();
  if (!dp) {
    CostReport report;
    report.variant = machine.variant();
    report.behavioral = true;
    return report;
  }
  CostReport report = cost_netlist(*dp, weights);
  report.variant = machine.variant();
  return report;
}

/// 100 * (adp_other - adp_opt) / adp_other. The reference must be positive.
inline double percent_reduction(double adp_opt, double adp_other) {
  if (!(adp_other > 0.0))
    throw std::domain_error("reference adp must be positive");
  return 100.0 * (adp_other - adp_opt) / adp_other;
}

struct ComparisonTable {
  unsigned width = 0;
  CostWeights weights;
  std::vector<CostReport> rows;
  // reduction of the first row's adp relative to each row; empty for the
  // first row itself and for behavioral rows
  std::vector<std::optional<double>> reduction_vs_first;
  std::string note;
};

inline ComparisonTable compare(std::span<const ArchVariant> variants,
                               unsigned width,
                               const CostWeights& weights = CostWeights::defaults()) {
  weights.validate();
  ComparisonTable table;
  table.width = width;
  table.weights = weights;
  table.note =
      "reduction_vs_first = 100 * (adp_row - adp_first) / adp_row; "
      "behavioral rows carry no structural cost";
  for (ArchVariant v : variants)
    table.rows.push_back(cost(build_machine(v, width), weights));
  table.reduction_vs_first.resize(table.rows.size());
  for (std::size_t i = 1; i < table.rows.size(); ++i)
    if (table.rows[0].adp && table.rows[i].adp)
      table.reduction_vs_first[i] =
          percent_reduction(*table.rows[0].adp, *table.rows[i].adp);
  return table;
}

namespace detail {

inline std::string format_units(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

}  // namespace detail

inline nlohmann::json census_to_json(const GateStats& stats) {
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [kind, count] : stats.counts)
    counts[std::string(to_string(kind))] = count;
  return {{"counts", counts},
          {"depth", stats.depth},
          {"nand_equivalent_area", stats.nand_equivalent_area}};
}

inline nlohmann::json to_json_value(const ComparisonTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const CostReport& r = table.rows[i];
    nlohmann::json row = {
        {"variant", std::string(to_string(r.variant))},
        {"behavioral", r.behavioral},
        {"area", r.area ? nlohmann::json(*r.area) : nlohmann::json()},
        {"delay", r.delay ? nlohmann::json(*r.delay) : nlohmann::json()},
        {"adp", r.adp ? nlohmann::json(*r.adp) : nlohmann::json()},
        {"reduction_vs_first", table.reduction_vs_first[i]
                                   ? nlohmann::json(*table.reduction_vs_first[i])
                                   : nlohmann::json()},
    };
    if (!r.behavioral) row["census"] = census_to_json(r.census);
    rows.push_back(std::move(row));
  }
  nlohmann::json weights_area = nlohmann::json::object();
  nlohmann::json weights_delay = nlohmann::json::object();
  for (GateKind k : all_gate_kinds) {
    weights_area[std::string(to_string(k))] = table.weights.area_of(k);
    weights_delay[std::string(to_string(k))] = table.weights.delay_of(k);
  }
  return {{"schema_version", 1},
          {"report", "cost-comparison"},
          {"width", table.width},
          {"weights", {{"area", weights_area}, {"delay", weights_delay}}},
          {"rows", rows},
          {"note", table.note}};
}

inline std::string to_json(const ComparisonTable& table) {
  return to_json_value(table).dump(2) + "\n";
}

inline std::string to_csv(const ComparisonTable& table) {
  std::string out = "variant,area,delay,adp,reduction_vs_first,behavioral_flag\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const CostReport& r = table.rows[i];
    out += to_string(r.variant);
    out += ',';
    if (r.area) out += detail::format_units(*r.area);
    out += ',';
    if (r.delay) out += detail::format_units(*r.delay);
    out += ',';
    if (r.adp) out += detail::format_units(*r.adp);
    out += ',';
    if (table.reduction_vs_first[i])
      out += detail::format_units(*table.reduction_vs_first[i]);
    out += ',';
    out += r.behavioral ? "true" : "false";
    out += '\n';
  }
  return out;
}

inline std::string to_text(const ComparisonTable& table) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "cost comparison at width %u\n", table.width);
  out += buf;
  std::snprintf(buf, sizeof buf, "%-18s %12s %10s %14s %16s\n", "variant",
                "area", "delay", "adp", "reduction[%]");
  out += buf;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const CostReport& r = table.rows[i];
    std::string area = r.area ? detail::format_units(*r.area) : "-";
    std::string delay = r.delay ? detail::format_units(*r.delay) : "-";
    std::string adp = r.adp ? detail::format_units(*r.adp) : "-";
    std::string red = table.reduction_vs_first[i]
                          ? detail::format_units(*table.reduction_vs_first[i])
                          : "-";
    std::snprintf(buf, sizeof buf, "%-18s %12s %10s %14s %16s\n",
                  std::string(to_string(r.variant)).c_str(), area.c_str(),
                  delay.c_str(), adp.c_str(), red.c_str());
    out += buf;
    if (r.behavioral) {
      std::snprintf(buf, sizeof buf, "%-18s %s\n", "",
                    "(behavioral: no structural cost)");
      out += buf;
    }
  }
  out += "note: " + table.note + "\n";
  return out;
}

/// Weights file: JSON object with optional "area" and "delay" maps keyed by
/// gate kind; unspecified kinds keep their defaults.
inline CostWeights weights_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::domain_error(std::string("malformed weights file: ") + e.what());
  }
  if (!doc.is_object()) throw std::domain_error("weights file must be a JSON object");
  CostWeights w = CostWeights::defaults();
  auto apply = [&](const char* key, std::map<GateKind, double>& dest) {
    if (!doc.contains(key)) return;
    const nlohmann::json& section = doc.at(key);
    if (!section.is_object())
      throw std::domain_error(std::string("weights section '") + key +
                              "' must be an object");
    for (const auto& [name, value] : section.items()) {
      GateKind kind = gate_kind_from_string(name);
      if (!value.is_number())
        throw std::domain_error("weight for " + name + " must be a number");
      dest[kind] = value.get<double>();
    }
  };
  try {
    apply("area", w.area);
    apply("delay", w.delay);
  } catch (const std::invalid_argument& e) {
    throw std::domain_error(std::string("malformed weights file: ") + e.what());
  }
  w.validate();
  return w;
}

}  // namespace gcdfabric
