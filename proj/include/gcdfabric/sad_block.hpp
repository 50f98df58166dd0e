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

// Absolute-difference block. The carry C of A + ~B decides which operand is
// the smaller one; that operand is inverted bitwise while the other passes
// through:
//
//   BX(i) = B(i) XOR C          AX(i) = NOT(A(i) XOR C)
//
// The selected pair sums to 2^n - 1 + |A - B|, so the final ripple adder
// runs with carry-in 1 to cancel the bias: diff = AX + BX + 1 = |A - B|.
// Equality falls out as a wide NOR over the difference bits.

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "gcdfabric/carry_gen.hpp"
#include "gcdfabric/netlist.hpp"

namespace gcdfabric {

struct SadOutputs {
  std::vector<NetId> diff;  // |A - B|
  NetId gt;                 // A > B (the carry C)
  NetId eq;                 // A == B (NOR over diff)
  // conditionally inverted operands, exposed for probing
  std::vector<NetId> bx;
  std::vector<NetId> ax;
};

inline SadOutputs build_sad(Netlist& nl, std::span<const NetId> a,
                            std::span<const NetId> b) {
  if (a.empty() || a.size() != b.size())
    throw std::invalid_argument("sad operand width mismatch");
  SadOutputs out;
  out.gt = build_carry_out(nl, a, b);
  out.bx.reserve(a.size());
  out.ax.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.bx.push_back(nl.xor_(b[i], out.gt));
    out.ax.push_back(nl.not_(nl.xor_(a[i], out.gt)));
  }
  // ripple full-adder chain, carry-in 1, carry-out discarded
  NetId carry = nl.constant(true);
  out.diff.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    NetId half = nl.xor_(out.ax[i], out.bx[i]);
    out.diff.push_back(nl.xor_(half, carry));
    if (i + 1 < a.size())
      carry = nl.or_(nl.and_(out.ax[i], out.bx[i]), nl.and_(half, carry));
  }
  out.eq = nl.nor_tree(out.diff);
  return out;
}

/// Standalone block with input groups A, B and output groups diff, gt, eq.
inline Netlist build_sad_netlist(unsigned width, BuildMode mode) {
  Netlist nl(width, mode);
  std::vector<NetId> a = nl.add_input("A", width);
  std::vector<NetId> b = nl.add_input("B", width);
  SadOutputs s = build_sad(nl, a, b);
  nl.add_output("diff", s.diff);
  nl.add_output("gt", s.gt);
  nl.add_output("eq", s.eq);
  nl.finalize();
  return nl;
}

struct SadValue {
  Word diff;
  int gt;
  int eq;
};

namespace detail {

inline const Netlist& shared_sad_netlist(unsigned width, BuildMode mode) {
  static std::mutex mutex;
  static std::map<std::pair<unsigned, BuildMode>,
                  std::unique_ptr<const Netlist>>
      cache;
  return cached_netlist(cache, mutex, width, mode, build_sad_netlist);
}

}  // namespace detail

/// Evaluates the (cached) block on two words. All three results come from
/// the netlist, not from host arithmetic.
inline SadValue sad(Word a, Word b, unsigned width,
                    BuildMode mode = BuildMode::NandOnly) {
  if (width == 0 || padded_carry_width(width) == 0)
    throw std::invalid_argument("unsupported sad width");
  detail::check_operand_range(a, width, "operand A");
  detail::check_operand_range(b, width, "operand B");
  Evaluator eval(detail::shared_sad_netlist(width, mode));
  eval.set_input("A", a);
  eval.set_input("B", b);
  eval.run();
  return {eval.output("diff"), static_cast<int>(eval.output("gt")),
          static_cast<int>(eval.output("eq"))};
}

}  // namespace gcdfabric
