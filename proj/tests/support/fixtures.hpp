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

// Test-only circuit fixtures, kept independent of the library's lookahead
// construction so they can serve as structural baselines and oracles.

#pragma once

#include <gcdfabric/netlist.hpp>

namespace gcdfabric::testing {

/// A > B as the borrow-out of B - A, built from cascaded 1-bit ripple
/// stages: borrow(i+1) = (~B(i) AND A(i)) OR (NOT(B(i) XOR A(i)) AND borrow(i)).
/// Linear depth baseline for the lookahead carry netlist.
inline NetId build_ripple_borrow_comparator(Netlist& nl,
                                            std::span<const NetId> a,
                                            std::span<const NetId> b) {
  NetId borrow = nl.constant(false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    NetId take = nl.and_(nl.not_(b[i]), a[i]);
    NetId keep = nl.and_(nl.not_(nl.xor_(b[i], a[i])), borrow);
    borrow = nl.or_(take, keep);
  }
  return borrow;
}

inline Netlist build_ripple_comparator_netlist(unsigned width, BuildMode mode) {
  Netlist nl(width, mode);
  std::vector<NetId> a = nl.add_input("A", width);
  std::vector<NetId> b = nl.add_input("B", width);
  nl.add_output("gt", build_ripple_borrow_comparator(nl, a, b));
  nl.finalize();
  return nl;
}

}  // namespace gcdfabric::testing
