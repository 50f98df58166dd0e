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

// Cross-variant agreement sweeps: every selected architecture must return
// the same gcd as the modulo oracle and obey the cycle law
// cycles == subtractive steps + 2. Pairs fan out across worker threads;
// results are merged in pair order, so the outcome is independent of the
// thread count.

#pragma once

#include <numeric>
#include <random>
#include <thread>
#include <vector>

#include "gcdfabric/gcd_machines.hpp"

namespace gcdfabric {

struct VerifyOptions {
  unsigned width = 8;
  std::vector<ArchVariant> archs{all_variants.begin(), all_variants.end()};
  enum class Mode { Exhaustive, Random } mode = Mode::Exhaustive;
  std::uint64_t count = 0;  // random mode: number of pairs
  std::uint64_t seed = 0;   // random mode
  unsigned threads = 0;     // 0 = hardware concurrency
  bool check_cycles = true;
};

struct VerifyMismatch {
  Word a = 0;
  Word b = 0;
  ArchVariant arch = ArchVariant::ForLoop;
  Word got_gcd = 0;
  Word want_gcd = 0;
  std::uint64_t got_cycles = 0;
  std::uint64_t want_cycles = 0;
};

struct VerifySummary {
  std::uint64_t pairs = 0;
  std::vector<VerifyMismatch> mismatches;
};

namespace detail {

inline void sweep_range(const VerifyOptions& opt,
                        std::span<const std::pair<Word, Word>> pairs,
                        std::vector<VerifyMismatch>& out) {
  std::vector<Machine> machines;
  machines.reserve(opt.archs.size());
  for (ArchVariant v : opt.archs) machines.push_back(build_machine(v, opt.width));
  const std::uint64_t max_cycles = std::uint64_t(1) << opt.width;

  for (const auto& [a, b] : pairs) {
    const Word want_gcd = std::gcd(a, b);
    const std::uint64_t want_cycles = gcd_reference(a, b).steps + 2;
    for (Machine& m : machines) {
      Word got_gcd = 0;
      std::uint64_t got_cycles = 0;
      try {
        RunResult r = m.run(a, b, max_cycles, /*record_trace=*/false);
        got_gcd = r.gcd;
        got_cycles = r.cycles;
      } catch (const timeout_error&) {
        got_cycles = max_cycles + 1;
      }
      bool bad = got_gcd != want_gcd ||
                 (opt.check_cycles && got_cycles != want_cycles);
      if (bad)
        out.push_back({a, b, m.variant(), got_gcd, want_gcd, got_cycles,
                       want_cycles});
    }
  }
}

}  // namespace detail

inline VerifySummary verify_sweep(const VerifyOptions& opt) {
  if (opt.width == 0 || opt.width > 32)
    throw std::invalid_argument("verify width must be in [1, 32]");
  if (opt.archs.empty())
    throw std::invalid_argument("verify needs at least one architecture");

  std::vector<std::pair<Word, Word>> pairs;
  if (opt.mode == VerifyOptions::Mode::Exhaustive) {
    const Word top = (opt.width >= 64 ? ~Word(0) : (Word(1) << opt.width) - 1);
    pairs.reserve(static_cast<std::size_t>(top * top));
    for (Word a = 1; a <= top; ++a)
      for (Word b = 1; b <= top; ++b) pairs.emplace_back(a, b);
  } else {
    std::mt19937_64 rng(opt.seed);
    const Word top = (Word(1) << opt.width) - 1;
    std::uniform_int_distribution<Word> dist(1, top);
    pairs.reserve(opt.count);
    for (std::uint64_t i = 0; i < opt.count; ++i) {
      Word a = dist(rng);
      Word b = dist(rng);
      pairs.emplace_back(a, b);
    }
  }

  unsigned threads = opt.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<std::size_t>(pairs.size(), 1));

  VerifySummary summary;
  summary.pairs = pairs.size();
  if (pairs.empty()) return summary;

  if (threads == 1) {
    detail::sweep_range(opt, pairs, summary.mismatches);
    return summary;
  }

  std::vector<std::vector<VerifyMismatch>> results(threads);
  std::vector<std::thread> workers;
  const std::size_t chunk = (pairs.size() + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t first = t * chunk;
    if (first >= pairs.size()) break;
    const std::size_t len = std::min(chunk, pairs.size() - first);
    workers.emplace_back([&, first, len, t] {
      detail::sweep_range(
          opt, std::span<const std::pair<Word, Word>>(&pairs[first], len),
          results[t]);
    });
  }
  for (std::thread& w : workers) w.join();
  for (std::vector<VerifyMismatch>& r : results)
    summary.mismatches.insert(summary.mismatches.end(), r.begin(), r.end());
  return summary;
}

}  // namespace gcdfabric
