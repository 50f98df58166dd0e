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

// Cycle-accurate GCD machines over the subtractive update
//
//   gcd(a, b) = a            if a == b
//             = gcd(a-b, b)  if a > b
//             = gcd(a, b-a)  if a < b
//
// Four architectures share one FSM contract (Idle -> Load -> Run* -> Done):
//
//   ForLoop          behavioral reference, host arithmetic, no netlist
//   Gcd2Sub          comparator + two ripple-borrow subtractors + muxes
//   GcdSad           one absolute-difference block + muxes, native gates
//   OptimizedGcdSad  the same datapath synthesized purely from NAND
//
// In the structural variants every register update comes out of the datapath
// netlist; the step code never does host arithmetic. A run takes exactly
// one Load cycle, one Run cycle per subtractive step, and one Done cycle.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gcdfabric/carry_gen.hpp"
#include "gcdfabric/netlist.hpp"
#include "gcdfabric/sad_block.hpp"

namespace gcdfabric {

enum class ArchVariant : std::uint8_t { ForLoop, Gcd2Sub, GcdSad, OptimizedGcdSad };

inline constexpr std::array<ArchVariant, 4> all_variants = {
    ArchVariant::ForLoop, ArchVariant::Gcd2Sub, ArchVariant::GcdSad,
    ArchVariant::OptimizedGcdSad};

constexpr std::string_view to_string(ArchVariant v) {
  switch (v) {
    case ArchVariant::ForLoop: return "for-loop";
    case ArchVariant::Gcd2Sub: return "gcd2sub";
    case ArchVariant::GcdSad: return "gcdsad";
    case ArchVariant::OptimizedGcdSad: return "optimized-gcdsad";
  }
  return "?";
}

inline std::optional<ArchVariant> arch_from_string(std::string_view name) {
  for (ArchVariant v : all_variants)
    if (name == to_string(v)) return v;
  if (name == "forloop") return ArchVariant::ForLoop;
  return std::nullopt;
}

enum class FsmState : std::uint8_t { Idle, Load, Run, Done };

constexpr std::string_view to_string(FsmState s) {
  switch (s) {
    case FsmState::Idle: return "Idle";
    case FsmState::Load: return "Load";
    case FsmState::Run: return "Run";
    case FsmState::Done: return "Done";
  }
  return "?";
}

/// One trace record per cycle: the FSM state during the cycle and the
/// register values after the cycle's write.
struct CycleRecord {
  std::uint64_t cycle;
  FsmState state;
  Word x;
  Word y;
};

using CycleTrace = std::vector<CycleRecord>;

/// One line per cycle: `cycle,state,X,Y` in decimal.
inline std::string trace_to_csv(const CycleTrace& trace) {
  std::string out;
  for (const CycleRecord& r : trace) {
    out += std::to_string(r.cycle);
    out += ',';
    out += to_string(r.state);
    out += ',';
    out += std::to_string(r.x);
    out += ',';
    out += std::to_string(r.y);
    out += '\n';
  }
  return out;
}

struct GcdSteps {
  Word gcd;
  std::uint64_t steps;  // subtraction updates until the operands meet
};

/// Subtractive reference. Rejects zero operands: the update never terminates
/// on them.
inline GcdSteps gcd_reference(Word a, Word b) {
  if (a == 0 || b == 0)
    throw std::domain_error("gcd by repeated subtraction needs operands >= 1");
  std::uint64_t steps = 0;
  while (a != b) {
    if (a > b)
      a -= b;
    else
      b -= a;
    ++steps;
  }
  return {a, steps};
}

class timeout_error : public std::runtime_error {
 public:
  timeout_error(const std::string& what, CycleTrace partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}

  const CycleTrace& partial_trace() const { return partial_; }

 private:
  CycleTrace partial_;
};

struct RunResult {
  Word gcd;
  std::uint64_t cycles;
  CycleTrace trace;
};

/// Contiguous gate range of one named datapath section.
struct DatapathBlock {
  std::string name;
  std::size_t first_gate;
  std::size_t gate_count;
};

namespace detail {

/// a - b as a ripple-borrow chain of cascaded 1-bit stages; correct modulo
/// 2^n, exact when a >= b.
inline std::vector<NetId> build_subtractor(Netlist& nl,
                                           std::span<const NetId> a,
                                           std::span<const NetId> b) {
  if (a.empty() || a.size() != b.size())
    throw std::invalid_argument("subtractor operand width mismatch");
  std::vector<NetId> diff;
  diff.reserve(a.size());
  NetId borrow = nl.constant(false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    NetId axb = nl.xor_(a[i], b[i]);
    diff.push_back(nl.xor_(axb, borrow));
    if (i + 1 < a.size()) {
      NetId take = nl.and_(nl.not_(a[i]), b[i]);
      NetId keep = nl.and_(nl.not_(axb), borrow);
      borrow = nl.or_(take, keep);
    }
  }
  return diff;
}

}  // namespace detail

class Machine;
Machine build_machine(ArchVariant variant, unsigned width);

/// A built architecture instance: datapath netlist (if structural), the FSM,
/// and the X/Y/R registers. Single-threaded during a run; the underlying
/// netlist is immutable and may be shared between machine copies.
class Machine {
 public:
  ArchVariant variant() const { return variant_; }
  unsigned width() const { return width_; }

  /// Structural datapath, or nullptr for the behavioral for-loop machine.
  const Netlist* datapath() const { return datapath_.get(); }

  std::span<const DatapathBlock> blocks() const { return blocks_; }

  std::map<GateKind, std::size_t> block_census(const DatapathBlock& block) const {
    if (!datapath_) return {};
    std::map<GateKind, std::size_t> census;
    std::span<const Gate> gates = datapath_->gates();
    for (std::size_t i = block.first_gate;
         i < block.first_gate + block.gate_count; ++i)
      ++census[gates[i].kind];
    return census;
  }

  FsmState state() const { return state_; }
  Word reg_x() const { return x_; }
  Word reg_y() const { return y_; }
  Word reg_r() const { return r_; }

  void reset() {
    state_ = FsmState::Idle;
    x_ = y_ = r_ = 0;
  }

  /// Runs one GCD computation. Throws timeout_error (carrying the partial
  /// trace) when the run would take more than max_cycles cycles, and
  /// domain_error on zero or out-of-range operands.
  RunResult run(Word a, Word b, std::uint64_t max_cycles,
                bool record_trace = true) {
    if (max_cycles < 2)
      throw std::invalid_argument("max_cycles must be at least 2");
    check_operand(a, "operand a");
    check_operand(b, "operand b");
    reset();
    CycleTrace trace;
    std::uint64_t cycle = 0;
    auto record = [&](FsmState s) {
      if (record_trace) trace.push_back({cycle, s, x_, y_});
      ++cycle;
    };

    state_ = FsmState::Load;
    x_ = a;
    y_ = b;
    record(FsmState::Load);

    for (;;) {
      bool eq, gt;
      Word next_x, next_y;
      if (variant_ == ArchVariant::ForLoop) {
        eq = x_ == y_;
        gt = x_ > y_;
        next_x = gt ? x_ - y_ : x_;
        next_y = (!gt && !eq) ? y_ - x_ : y_;
      } else {
        eval_->set_input(*in_x_, x_);
        eval_->set_input(*in_y_, y_);
        eval_->run();
        eq = eval_->group_value(*out_eq_) != 0;
        gt = eval_->group_value(*out_gt_) != 0;
        next_x = eval_->group_value(*out_new_x_);
        next_y = eval_->group_value(*out_new_y_);
      }
      if (cycle >= max_cycles)
        throw timeout_error("gcd run exceeded " + std::to_string(max_cycles) +
                                " cycles",
                            std::move(trace));
      if (eq) {
        state_ = FsmState::Done;
        r_ = x_;
        record(FsmState::Done);
        break;
      }
      state_ = FsmState::Run;
      x_ = next_x;
      y_ = next_y;
      record(FsmState::Run);
    }
    return {r_, cycle, std::move(trace)};
  }

 private:
  friend Machine build_machine(ArchVariant, unsigned);

  Machine() = default;

  void check_operand(Word value, const char* name) const {
    if (value == 0)
      throw std::domain_error(std::string(name) + " must be >= 1");
    if (width_ < 64 && (value >> width_) != 0)
      throw std::domain_error(std::string(name) + " does not fit in " +
                              std::to_string(width_) + " bits");
  }

  ArchVariant variant_ = ArchVariant::ForLoop;
  unsigned width_ = 0;
  std::shared_ptr<const Netlist> datapath_;
  std::vector<DatapathBlock> blocks_;
  std::optional<Evaluator> eval_;
  const Group* in_x_ = nullptr;
  const Group* in_y_ = nullptr;
  const Group* out_new_x_ = nullptr;
  const Group* out_new_y_ = nullptr;
  const Group* out_gt_ = nullptr;
  const Group* out_eq_ = nullptr;

  FsmState state_ = FsmState::Idle;
  Word x_ = 0;
  Word y_ = 0;
  Word r_ = 0;
};

inline Machine build_machine(ArchVariant variant, unsigned width) {
  if (width == 0 || width > 32)
    throw std::invalid_argument("machine width must be in [1, 32]");
  Machine m;
  m.variant_ = variant;
  m.width_ = width;
  if (variant == ArchVariant::ForLoop) return m;

  BuildMode mode = variant == ArchVariant::OptimizedGcdSad
                       ? BuildMode::NandOnly
                       : BuildMode::Mixed;
  auto nl = std::make_shared<Netlist>(width, mode);
  std::vector<NetId> x = nl->add_input("X", width);
  std::vector<NetId> y = nl->add_input("Y", width);

  auto block = [&](std::string name, auto&& fn) {
    std::size_t first = nl->gates().size();
    fn();
    m.blocks_.push_back({std::move(name), first, nl->gates().size() - first});
  };

  NetId gt, eq;
  std::vector<NetId> next_x, next_y;
  if (variant == ArchVariant::Gcd2Sub) {
    block("comparator", [&] {
      gt = build_carry_out(*nl, x, y);
      std::vector<NetId> ne;
      ne.reserve(width);
      for (unsigned i = 0; i < width; ++i) ne.push_back(nl->xor_(x[i], y[i]));
      eq = nl->nor_tree(ne);
    });
    std::vector<NetId> x_minus_y, y_minus_x;
    block("subtractor_x_minus_y",
          [&] { x_minus_y = detail::build_subtractor(*nl, x, y); });
    block("subtractor_y_minus_x",
          [&] { y_minus_x = detail::build_subtractor(*nl, y, x); });
    block("update_mux", [&] {
      next_x = nl->mux_word(gt, x_minus_y, x);
      next_y = nl->mux_word(gt, y, y_minus_x);
    });
  } else {
    SadOutputs s;
    block("sad", [&] { s = build_sad(*nl, x, y); });
    gt = s.gt;
    eq = s.eq;
    block("update_mux", [&] {
      next_x = nl->mux_word(gt, s.diff, x);
      next_y = nl->mux_word(gt, y, s.diff);
    });
  }
  nl->add_output("newX", next_x);
  nl->add_output("newY", next_y);
  nl->add_output("gt", gt);
  nl->add_output("eq", eq);
  nl->finalize();

  m.datapath_ = std::move(nl);
  m.eval_.emplace(*m.datapath_);
  m.in_x_ = m.datapath_->find_input("X");
  m.in_y_ = m.datapath_->find_input("Y");
  m.out_new_x_ = m.datapath_->find_output("newX");
  m.out_new_y_ = m.datapath_->find_output("newY");
  m.out_gt_ = m.datapath_->find_output("gt");
  m.out_eq_ = m.datapath_->find_output("eq");
  return m;
}

}  // namespace gcdfabric
