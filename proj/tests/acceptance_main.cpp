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

// Acceptance suite. Runs each shipping criterion end to end and prints one
// PASS/FAIL line per criterion; the exit code is the number of failures.
// Optional argv[1]: path to the CLI binary, used for the byte-determinism
// checks on real subprocess output.

#include <gcdfabric/gcdfabric.hpp>

#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/fixtures.hpp"

using namespace gcdfabric;

namespace {

struct Outcome {
  int id;
  bool pass;
  std::string detail;
};

std::vector<Outcome> outcomes;

void report(int id, bool pass, const std::string& detail) {
  outcomes.push_back({id, pass, detail});
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
}

Word abs_diff(Word a, Word b) { return a > b ? a - b : b - a; }

// criterion 1 + 5a: exhaustive width-8 sweep, gcd agreement against the
// modulo oracle and the cycle law cycles == steps + 2, on all four variants.
VerifySummary exhaustive_width8;

void criterion_1_exhaustive_gcd() {
  VerifyOptions opt;
  opt.width = 8;
  opt.check_cycles = true;
  exhaustive_width8 = verify_sweep(opt);
  std::ostringstream detail;
  detail << "exhaustive width-8 gcd agreement, all four architectures ("
         << exhaustive_width8.pairs << " pairs, "
         << exhaustive_width8.mismatches.size() << " mismatches)";
  report(1, exhaustive_width8.pairs == 65025 &&
                exhaustive_width8.mismatches.empty(),
         detail.str());
}

void criterion_2_carry() {
  std::uint64_t checked = 0, bad = 0;
  auto check_pair = [&](Evaluator& eval, Word a, Word b, unsigned width) {
    eval.set_input("A", a);
    eval.set_input("B", b);
    eval.run();
    Word c = eval.output("C");
    Word mask = (Word(1) << width) - 1;
    Word sum_bit = ((a + (mask - b)) >> width) & 1;
    ++checked;
    if (c != static_cast<Word>(a > b ? 1 : 0) || c != sum_bit) ++bad;
  };
  for (unsigned width : {4u, 8u}) {
    Netlist nl = build_carry_netlist(width, BuildMode::NandOnly);
    Evaluator eval(nl);
    const Word top = (Word(1) << width) - 1;
    for (Word a = 0; a <= top; ++a)
      for (Word b = 0; b <= top; ++b) check_pair(eval, a, b, width);
  }
  {
    Netlist nl = build_carry_netlist(32, BuildMode::NandOnly);
    Evaluator eval(nl);
    const Word top = 0xFFFFFFFFull;
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Word> dist(0, top);
    for (int i = 0; i < 100000; ++i)
      check_pair(eval, dist(rng), dist(rng), 32);
    for (Word a : {Word(0), Word(1), top - 1, top})
      for (Word b : {Word(0), Word(1), top - 1, top}) check_pair(eval, a, b, 32);
    for (Word v : {Word(0), Word(1), Word(12345), top / 3, top - 1}) {
      check_pair(eval, v, v, 32);
      if (v < top) {
        check_pair(eval, v, v + 1, 32);
        check_pair(eval, v + 1, v, 32);
      }
    }
  }
  std::ostringstream detail;
  detail << "carry-out == (A > B) == sum bit n: widths 4+8 exhaustive, "
            "width 32 boundary + 100000 seeded pairs ("
         << checked << " pairs, " << bad << " mismatches)";
  report(2, bad == 0, detail.str());
}

void criterion_3_sad() {
  Netlist mixed = build_sad_netlist(8, BuildMode::Mixed);
  Netlist nand = build_sad_netlist(8, BuildMode::NandOnly);
  Evaluator em(mixed), en(nand);
  std::uint64_t bad = 0;
  for (Word a = 0; a < 256; ++a)
    for (Word b = 0; b < 256; ++b) {
      em.set_input("A", a);
      em.set_input("B", b);
      em.run();
      en.set_input("A", a);
      en.set_input("B", b);
      en.run();
      Word diff = abs_diff(a, b);
      Word gt = a > b ? 1 : 0;
      Word eq = a == b ? 1 : 0;
      bool ok = em.output("diff") == diff && em.output("gt") == gt &&
                em.output("eq") == eq && en.output("diff") == diff &&
                en.output("gt") == gt && en.output("eq") == eq;
      if (!ok) ++bad;
    }
  std::ostringstream detail;
  detail << "abs-difference block width-8 exhaustive, mixed and nand-only "
            "agree with |A-B|/A>B/A==B (65536 pairs, "
         << bad << " mismatches)";
  report(3, bad == 0, detail.str());
}

void criterion_4_nand_only() {
  bool pass = true;
  std::ostringstream detail;
  for (unsigned width : {4u, 8u, 16u, 32u}) {
    Machine m = build_machine(ArchVariant::OptimizedGcdSad, width);
    GateStats s = m.datapath()->stats();
    if (!s.nand_only()) {
      pass = false;
      detail << " non-NAND gates at width " << width << ";";
    }
  }
  // builder expansion counts
  Netlist nl(1, BuildMode::NandOnly);
  NetId a = nl.add_input("a", 1)[0];
  NetId b = nl.add_input("b", 1)[0];
  std::size_t base = nl.gates().size();
  nl.not_(a);
  std::size_t not_gates = nl.gates().size() - base;
  base = nl.gates().size();
  nl.and_(a, b);
  std::size_t and_gates = nl.gates().size() - base;
  base = nl.gates().size();
  nl.or_(a, b);
  std::size_t or_gates = nl.gates().size() - base;
  base = nl.gates().size();
  nl.xor_(a, b);
  std::size_t xor_gates = nl.gates().size() - base;
  if (not_gates != 1 || and_gates != 2 || or_gates != 3 || xor_gates != 4)
    pass = false;
  std::ostringstream msg;
  msg << "nand-only datapath census at widths 4/8/16/32 and builder "
         "expansions NOT="
      << not_gates << " AND=" << and_gates << " OR=" << or_gates
      << " XOR=" << xor_gates << detail.str();
  report(4, pass, msg.str());
}

void criterion_5_cycle_law() {
  // part 1: the cycle law already ran inside the criterion-1 sweep
  bool law = exhaustive_width8.pairs == 65025 &&
             exhaustive_width8.mismatches.empty();
  // part 2: trace invariants on 1000 sampled runs
  std::mt19937_64 rng(41);
  std::uint64_t violations = 0;
  const std::array structural = {ArchVariant::Gcd2Sub, ArchVariant::GcdSad,
                                 ArchVariant::OptimizedGcdSad};
  std::array<Machine, 3> machines = {
      build_machine(structural[0], 8), build_machine(structural[1], 8),
      build_machine(structural[2], 8)};
  for (int i = 0; i < 1000; ++i) {
    Word a = 1 + (rng() % 255);
    Word b = 1 + (rng() % 255);
    Machine& m = machines[i % machines.size()];
    RunResult r = m.run(a, b, 512);
    Word invariant = std::gcd(a, b);
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
      const CycleRecord& rec = r.trace[k];
      if (std::gcd(rec.x, rec.y) != invariant) ++violations;
      if (rec.state == FsmState::Run &&
          std::max(rec.x, rec.y) >=
              std::max(r.trace[k - 1].x, r.trace[k - 1].y))
        ++violations;
    }
    if (r.trace.back().state != FsmState::Done ||
        r.trace.back().x != r.trace.back().y)
      ++violations;
  }
  std::ostringstream detail;
  detail << "cycles == steps + 2 across the width-8 sweep; gcd invariant and "
            "strict max decrease on 1000 sampled traces ("
         << violations << " violations)";
  report(5, law && violations == 0, detail.str());
}

void criterion_6_adp_arithmetic() {
  double r1 = percent_reduction(1727.0, 2038.453);
  double r2 = percent_reduction(1727.0, 1847.832);
  bool pass = std::abs(r1 - 15.0) <= 1.0 && std::abs(r2 - 6.0) <= 1.0;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "adp reduction column: %.4f%% (target 15 +/- 1), %.4f%% "
                "(target 6 +/- 1)",
                r1, r2);
  report(6, pass, buf);
}

void criterion_7_depth_record() {
  std::ostringstream detail;
  detail << "width-32 carry depth, recorded:";
  bool built = true;
  for (BuildMode mode : {BuildMode::Mixed, BuildMode::NandOnly}) {
    try {
      Netlist lookahead = build_carry_netlist(32, mode);
      Netlist ripple = testing::build_ripple_comparator_netlist(32, mode);
      detail << (mode == BuildMode::NandOnly ? " nand-only" : " mixed")
             << " lookahead=" << lookahead.stats().depth
             << " ripple=" << ripple.stats().depth;
    } catch (const std::exception& e) {
      built = false;
      detail << " build failure: " << e.what();
    }
  }
  report(7, built, detail.str());
}

std::string run_subprocess(const std::string& command) {
  std::string output;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return output;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
  pclose(pipe);
  return output;
}

void criterion_8_determinism(const std::string& cli_path) {
  bool pass = true;
  std::ostringstream detail;

  // library level: identical sweeps and identical exports
  VerifyOptions opt;
  opt.width = 8;
  opt.mode = VerifyOptions::Mode::Random;
  opt.count = 500;
  opt.seed = 7;
  VerifySummary s1 = verify_sweep(opt);
  VerifySummary s2 = verify_sweep(opt);
  if (s1.pairs != s2.pairs || s1.mismatches.size() != s2.mismatches.size())
    pass = false;
  Netlist carry = build_carry_netlist(8, BuildMode::NandOnly);
  if (to_lines(carry) != to_lines(carry) || to_dot(carry) != to_dot(carry))
    pass = false;
  detail << "library reruns identical";

  if (!cli_path.empty()) {
    const std::string quoted = "'" + cli_path + "'";
    std::string v1 = run_subprocess(
        quoted +
        " verify --width 6 --mode random --count 200 --seed 7 2>/dev/null");
    std::string v2 = run_subprocess(
        quoted +
        " verify --width 6 --mode random --count 200 --seed 7 2>/dev/null");
    std::string e1 = run_subprocess(
        quoted + " export --what carry --width 4 --format lines 2>/dev/null");
    std::string e2 = run_subprocess(
        quoted + " export --what carry --width 4 --format lines 2>/dev/null");
    bool cli_ok = !v1.empty() && v1 == v2 && !e1.empty() && e1 == e2;
    if (!cli_ok) pass = false;
    detail << "; cli stdout byte-identical across reruns ("
           << (cli_ok ? "yes" : "NO") << ")";
  } else {
    detail << "; cli binary path not provided, subprocess check skipped";
  }
  report(8, pass, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli_path = argc > 1 ? argv[1] : "";

  criterion_1_exhaustive_gcd();
  criterion_2_carry();
  criterion_3_sad();
  criterion_4_nand_only();
  criterion_5_cycle_law();
  criterion_6_adp_arithmetic();
  criterion_7_depth_record();
  criterion_8_determinism(cli_path);

  int failures = 0;
  for (const Outcome& o : outcomes)
    if (!o.pass) ++failures;
  std::printf("%d/%zu criteria passed\n", static_cast<int>(outcomes.size()) - failures,
              outcomes.size());
  return failures;
}
