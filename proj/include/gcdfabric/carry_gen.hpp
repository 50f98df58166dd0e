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

// Carry-out generation: produces only the final carry of A + ~B (carry-in 0)
// through carry-lookahead structure, without building the sum. That carry is
// exactly the unsigned comparison A > B:
//
//   A + (2^n - 1 - B) >= 2^n  <=>  A > B
//
// Per bit over NB = ~B:  p(i) = A(i) OR NB(i),  g(i) = A(i) AND NB(i).
// Per 4-bit group:       p4 = p3·p2·p1·p0,
//                        g4 = g3 + g2·p3 + g1·p3·p2 + g0·p3·p2·p1.
// Groups combine by the same radix-4 recurrence; at 32 bits that is eight
// groups folded into two superblocks and one final combine. Widths that are
// not a supported power of two are zero-padded on the high side, which
// changes neither the carry nor the comparison.

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "gcdfabric/netlist.hpp"

namespace gcdfabric {

/// Bitwise propagate/generate vectors over A and NB = ~B.
struct PgVectors {
  std::vector<NetId> p;
  std::vector<NetId> g;
  std::vector<NetId> nb;
};

/// 4-bit group aggregates of PgVectors.
struct GroupVectors {
  std::vector<NetId> p4;
  std::vector<NetId> g4;
};

/// Carry-out of a chain of (generate, propagate) stages with carry-in 0:
/// C = sum over j of g[j] * product of p[k] for k > j. Terms and the final
/// sum are balanced trees of 2-input gates.
inline NetId lookahead_carry(Netlist& nl, std::span<const NetId> gen,
                             std::span<const NetId> prop) {
  if (gen.empty() || gen.size() != prop.size())
    throw std::invalid_argument("lookahead_carry stage width mismatch");
  std::vector<NetId> terms;
  terms.reserve(gen.size());
  for (std::size_t j = gen.size(); j-- > 0;) {
    std::vector<NetId> literals;
    literals.push_back(gen[j]);
    for (std::size_t k = j + 1; k < gen.size(); ++k) literals.push_back(prop[k]);
    terms.push_back(nl.and_tree(literals));
  }
  return nl.or_tree(terms);
}

inline PgVectors build_pg(Netlist& nl, std::span<const NetId> a,
                          std::span<const NetId> b) {
  if (a.empty() || a.size() != b.size())
    throw std::invalid_argument("build_pg operand width mismatch");
  PgVectors pg;
  pg.p.reserve(a.size());
  pg.g.reserve(a.size());
  pg.nb.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    NetId nb = nl.not_(b[i]);
    pg.nb.push_back(nb);
    pg.p.push_back(nl.or_(a[i], nb));
    pg.g.push_back(nl.and_(a[i], nb));
  }
  return pg;
}

inline GroupVectors build_groups(Netlist& nl, const PgVectors& pg) {
  if (pg.p.empty() || pg.p.size() % 4 != 0)
    throw std::invalid_argument("group aggregation needs a multiple of 4 bits");
  GroupVectors groups;
  for (std::size_t j = 0; j < pg.p.size(); j += 4) {
    std::span<const NetId> p(pg.p.data() + j, 4);
    std::span<const NetId> g(pg.g.data() + j, 4);
    groups.p4.push_back(nl.and_tree(p));
    groups.g4.push_back(lookahead_carry(nl, g, p));
  }
  return groups;
}

/// Supported lookahead width for an n-bit request, or 0 when out of range.
constexpr unsigned padded_carry_width(std::size_t n) {
  for (unsigned w : {4u, 8u, 16u, 32u})
    if (n <= w) return w;
  return 0;
}

/// The carry net C of A + ~B with carry-in 0; C == 1 iff A > B (unsigned).
inline NetId build_carry_out(Netlist& nl, std::span<const NetId> a,
                             std::span<const NetId> b) {
  if (a.empty() || a.size() != b.size())
    throw std::invalid_argument("carry operand width mismatch");
  unsigned padded = padded_carry_width(a.size());
  if (padded == 0)
    throw std::invalid_argument("carry width above 32 is unsupported");
  std::vector<NetId> av(a.begin(), a.end());
  std::vector<NetId> bv(b.begin(), b.end());
  while (av.size() < padded) {
    av.push_back(nl.constant(false));
    bv.push_back(nl.constant(false));
  }
  PgVectors pg = build_pg(nl, av, bv);
  GroupVectors groups = build_groups(nl, pg);
  std::vector<NetId> g = groups.g4;
  std::vector<NetId> p = groups.p4;
  while (g.size() > 4) {
    std::vector<NetId> g_next, p_next;
    for (std::size_t j = 0; j < g.size(); j += 4) {
      std::span<const NetId> gg(g.data() + j, 4);
      std::span<const NetId> pp(p.data() + j, 4);
      g_next.push_back(lookahead_carry(nl, gg, pp));
      p_next.push_back(nl.and_tree(pp));
    }
    g = std::move(g_next);
    p = std::move(p_next);
  }
  return lookahead_carry(nl, g, p);
}

/// Standalone carry netlist with input groups A, B and output group C.
inline Netlist build_carry_netlist(unsigned width, BuildMode mode) {
  Netlist nl(width, mode);
  std::vector<NetId> a = nl.add_input("A", width);
  std::vector<NetId> b = nl.add_input("B", width);
  nl.add_output("C", build_carry_out(nl, a, b));
  nl.finalize();
  return nl;
}

namespace detail {

inline void check_operand_range(Word value, unsigned width, const char* name) {
  if (width < 64 && (value >> width) != 0)
    throw std::domain_error(std::string(name) + " does not fit in " +
                            std::to_string(width) + " bits");
}

/// Per-(width, mode) cache of finalized netlists. Initialized once under a
/// lock, then read-only.
template <typename BuildFn>
const Netlist& cached_netlist(
    std::map<std::pair<unsigned, BuildMode>, std::unique_ptr<const Netlist>>&
        cache,
    std::mutex& mutex, unsigned width, BuildMode mode, BuildFn&& build) {
  std::scoped_lock lock(mutex);
  auto key = std::make_pair(width, mode);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<const Netlist>(build(width, mode)))
             .first;
  return *it->second;
}

inline const Netlist& shared_carry_netlist(unsigned width, BuildMode mode) {
  static std::mutex mutex;
  static std::map<std::pair<unsigned, BuildMode>,
                  std::unique_ptr<const Netlist>>
      cache;
  return cached_netlist(cache, mutex, width, mode, build_carry_netlist);
}

}  // namespace detail

/// Evaluates the (cached) carry netlist on two words; returns 1 iff a > b.
inline int carry_out_value(Word a, Word b, unsigned width,
                           BuildMode mode = BuildMode::NandOnly) {
  if (width == 0 || padded_carry_width(width) == 0)
    throw std::invalid_argument("unsupported carry width");
  detail::check_operand_range(a, width, "operand A");
  detail::check_operand_range(b, width, "operand B");
  Evaluator eval(detail::shared_carry_netlist(width, mode));
  eval.set_input("A", a);
  eval.set_input("B", b);
  eval.run();
  return static_cast<int>(eval.output("C"));
}

}  // namespace gcdfabric
