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

// Command-line front door: run one computation, sweep-verify architectures
// against the oracle, compare costs, export netlists. All stdout output is
// deterministic given the flags; timing chatter goes to stderr.

#pragma once

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gcdfabric/cost_model.hpp"
#include "gcdfabric/gcd_machines.hpp"
#include "gcdfabric/netlist_io.hpp"
#include "gcdfabric/verify.hpp"

namespace gcdfabric::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_domain = 2;
inline constexpr int exit_timeout = 3;
inline constexpr int exit_mismatch = 4;
inline constexpr int exit_io = 5;

namespace detail {

inline ArchVariant parse_arch(const std::string& name) {
  std::optional<ArchVariant> v = arch_from_string(name);
  if (!v)
    throw std::domain_error("unknown architecture: " + name +
                            " (expected for-loop, gcd2sub, gcdsad or "
                            "optimized-gcdsad)");
  return *v;
}

inline std::vector<ArchVariant> parse_arch_list(
    const std::vector<std::string>& names) {
  if (names.empty())
    return {all_variants.begin(), all_variants.end()};
  std::vector<ArchVariant> archs;
  archs.reserve(names.size());
  for (const std::string& n : names) archs.push_back(parse_arch(n));
  return archs;
}

inline std::uint64_t default_max_cycles(unsigned width) {
  return std::uint64_t(1) << width;
}

/// Writes to the given path, or to fallback when the path is empty.
/// Returns false on I/O failure.
inline bool write_text(const std::string& path, const std::string& text,
                       std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return static_cast<bool>(fallback);
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) return false;
  file << text;
  file.flush();
  return static_cast<bool>(file);
}

struct RunOptions {
  std::string arch = "optimized-gcdsad";
  unsigned width = 32;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t max_cycles = 0;  // 0 = 2^width
  std::string format = "text";
  bool show_trace = false;
};

inline int cmd_run(const RunOptions& opt, std::ostream& out) {
  ArchVariant arch = parse_arch(opt.arch);
  Machine machine = build_machine(arch, opt.width);
  std::uint64_t max_cycles =
      opt.max_cycles ? opt.max_cycles : default_max_cycles(opt.width);
  RunResult result = machine.run(opt.a, opt.b, max_cycles, opt.show_trace);
  if (opt.format == "json") {
    nlohmann::json doc = {
        {"schema_version", 1}, {"arch", std::string(to_string(arch))},
        {"width", opt.width},  {"a", opt.a},
        {"b", opt.b},          {"gcd", result.gcd},
        {"cycles", result.cycles}};
    if (opt.show_trace) {
      nlohmann::json trace = nlohmann::json::array();
      for (const CycleRecord& r : result.trace)
        trace.push_back({{"cycle", r.cycle},
                         {"state", std::string(to_string(r.state))},
                         {"x", r.x},
                         {"y", r.y}});
      doc["trace"] = std::move(trace);
    }
    out << doc.dump(2) << "\n";
  } else {
    out << "arch: " << to_string(arch) << "\n";
    out << "width: " << opt.width << "\n";
    out << "a: " << opt.a << "\n";
    out << "b: " << opt.b << "\n";
    out << "gcd: " << result.gcd << "\n";
    out << "cycles: " << result.cycles << "\n";
    if (opt.show_trace) out << trace_to_csv(result.trace);
  }
  return exit_ok;
}

struct VerifyCliOptions {
  unsigned width = 8;
  std::vector<std::string> archs;
  std::string mode = "exhaustive";
  std::uint64_t count = 100000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string format = "text";
};

inline int cmd_verify(const VerifyCliOptions& cli_opt, std::ostream& out,
                      std::ostream& err) {
  VerifyOptions opt;
  opt.width = cli_opt.width;
  opt.archs = parse_arch_list(cli_opt.archs);
  opt.threads = cli_opt.threads;
  std::optional<std::uint64_t> seed = cli_opt.seed;
  if (cli_opt.mode == "exhaustive") {
    if (cli_opt.width > 10)
      throw std::domain_error(
          "exhaustive mode is limited to width <= 10; use --mode random");
    opt.mode = VerifyOptions::Mode::Exhaustive;
  } else if (cli_opt.mode == "random") {
    opt.mode = VerifyOptions::Mode::Random;
    opt.count = cli_opt.count;
    if (!seed) {
      if (const char* env = std::getenv("GCDFABRIC_SEED"))
        seed = std::strtoull(env, nullptr, 10);
      else
        seed = std::random_device{}();
    }
    opt.seed = *seed;
  } else {
    throw std::domain_error("unknown verify mode: " + cli_opt.mode);
  }

  auto start = std::chrono::steady_clock::now();
  VerifySummary summary = verify_sweep(opt);
  std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;

  const bool pass = summary.mismatches.empty();
  constexpr std::size_t max_listed = 20;

  if (cli_opt.format == "json") {
    nlohmann::json archs = nlohmann::json::array();
    for (ArchVariant v : opt.archs) archs.push_back(std::string(to_string(v)));
    nlohmann::json mismatches = nlohmann::json::array();
    for (std::size_t i = 0;
         i < std::min(summary.mismatches.size(), max_listed); ++i) {
      const VerifyMismatch& m = summary.mismatches[i];
      mismatches.push_back({{"a", m.a},
                            {"b", m.b},
                            {"arch", std::string(to_string(m.arch))},
                            {"got_gcd", m.got_gcd},
                            {"want_gcd", m.want_gcd},
                            {"got_cycles", m.got_cycles},
                            {"want_cycles", m.want_cycles}});
    }
    nlohmann::json doc = {{"schema_version", 1},
                          {"width", opt.width},
                          {"mode", cli_opt.mode},
                          {"archs", archs},
                          {"pairs", summary.pairs},
                          {"mismatches", summary.mismatches.size()},
                          {"mismatch_list", mismatches},
                          {"seed", seed ? nlohmann::json(*seed) : nlohmann::json()},
                          {"status", pass ? "pass" : "fail"}};
    out << doc.dump(2) << "\n";
  } else {
    out << "width: " << opt.width << "\n";
    out << "mode: " << cli_opt.mode << "\n";
    out << "archs:";
    for (ArchVariant v : opt.archs) out << ' ' << to_string(v);
    out << "\n";
    if (seed) out << "seed: " << *seed << "\n";
    out << "pairs: " << summary.pairs << "\n";
    out << "mismatches: " << summary.mismatches.size() << "\n";
    for (std::size_t i = 0;
         i < std::min(summary.mismatches.size(), max_listed); ++i) {
      const VerifyMismatch& m = summary.mismatches[i];
      out << "  a=" << m.a << " b=" << m.b << " arch=" << to_string(m.arch)
          << " gcd=" << m.got_gcd << " want=" << m.want_gcd
          << " cycles=" << m.got_cycles << " want=" << m.want_cycles << "\n";
    }
    out << "result: " << (pass ? "PASS" : "FAIL") << "\n";
  }
  err << "elapsed: " << elapsed.count() << " s\n";
  return pass ? exit_ok : exit_mismatch;
}

struct CompareOptions {
  unsigned width = 32;
  std::vector<std::string> archs;
  std::string weights_path;
  std::string format = "text";
  std::string output_path;
};

inline int cmd_compare(const CompareOptions& opt, std::ostream& out,
                       std::ostream& err) {
  CostWeights weights = CostWeights::defaults();
  if (!opt.weights_path.empty()) {
    std::ifstream file(opt.weights_path, std::ios::binary);
    if (!file) {
      err << "error: cannot read weights file: " << opt.weights_path << "\n";
      return exit_io;
    }
    std::ostringstream text;
    text << file.rdbuf();
    weights = weights_from_json(text.str());
  }
  std::vector<ArchVariant> archs =
      opt.archs.empty()
          ? std::vector<ArchVariant>{ArchVariant::OptimizedGcdSad,
                                     ArchVariant::GcdSad, ArchVariant::Gcd2Sub,
                                     ArchVariant::ForLoop}
          : parse_arch_list(opt.archs);
  ComparisonTable table = compare(archs, opt.width, weights);
  std::string text;
  if (opt.format == "json")
    text = to_json(table);
  else if (opt.format == "csv")
    text = to_csv(table);
  else
    text = to_text(table);
  if (!write_text(opt.output_path, text, out)) {
    err << "error: cannot write output file: " << opt.output_path << "\n";
    return exit_io;
  }
  return exit_ok;
}

struct ExportOptions {
  std::string what = "sad";
  std::string arch = "optimized-gcdsad";
  unsigned width = 32;
  std::string format = "lines";
  std::string output_path;
};

inline int cmd_export(const ExportOptions& opt, std::ostream& out,
                      std::ostream& err) {
  ArchVariant arch = parse_arch(opt.arch);
  if (arch == ArchVariant::ForLoop)
    throw std::domain_error("the for-loop architecture has no netlist");
  ExportFormat format =
      opt.format == "dot" ? ExportFormat::Dot : ExportFormat::Lines;
  std::string text;
  if (opt.what == "datapath") {
    Machine machine = build_machine(arch, opt.width);
    text = export_netlist(*machine.datapath(), format);
  } else {
    BuildMode mode = arch == ArchVariant::OptimizedGcdSad ? BuildMode::NandOnly
                                                          : BuildMode::Mixed;
    if (opt.what == "carry")
      text = export_netlist(build_carry_netlist(opt.width, mode), format);
    else if (opt.what == "sad")
      text = export_netlist(build_sad_netlist(opt.width, mode), format);
    else
      throw std::domain_error("unknown export target: " + opt.what);
  }
  if (!write_text(opt.output_path, text, out)) {
    err << "error: cannot write output file: " << opt.output_path << "\n";
    return exit_io;
  }
  return exit_ok;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{
      "gate-level Euclidean GCD architectures: simulate, verify, compare, "
      "export"};
  app.require_subcommand(1);

  detail::RunOptions run_opt;
  CLI::App* run_cmd =
      app.add_subcommand("run", "run one GCD computation on an architecture");
  run_cmd->add_option("--arch", run_opt.arch, "architecture")
      ->capture_default_str();
  run_cmd->add_option("--width", run_opt.width, "register width in bits")
      ->check(CLI::Range(1u, 32u))
      ->capture_default_str();
  run_cmd->add_option("--a", run_opt.a, "first operand")->required();
  run_cmd->add_option("--b", run_opt.b, "second operand")->required();
  run_cmd->add_option("--max-cycles", run_opt.max_cycles,
                      "cycle guard (default 2^width)");
  run_cmd->add_option("--format", run_opt.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  run_cmd->add_flag("--trace", run_opt.show_trace, "print the cycle trace");

  detail::VerifyCliOptions verify_opt;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "sweep architectures against the gcd oracle");
  verify_cmd->add_option("--width", verify_opt.width, "register width in bits")
      ->check(CLI::Range(1u, 32u))
      ->capture_default_str();
  verify_cmd->add_option("--archs", verify_opt.archs,
                         "architectures (default: all four)");
  verify_cmd->add_option("--mode", verify_opt.mode, "exhaustive or random")
      ->check(CLI::IsMember({"exhaustive", "random"}))
      ->capture_default_str();
  verify_cmd->add_option("--count", verify_opt.count,
                         "random mode: number of pairs")
      ->capture_default_str();
  std::uint64_t seed_value = 0;
  CLI::Option* seed_flag = verify_cmd->add_option(
      "--seed", seed_value, "random mode seed (default: GCDFABRIC_SEED env)");
  verify_cmd->add_option("--threads", verify_opt.threads,
                         "worker threads (default: hardware)");
  verify_cmd->add_option("--format", verify_opt.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  detail::CompareOptions compare_opt;
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "area/delay/ADP comparison report");
  compare_cmd
      ->add_option("--width", compare_opt.width, "register width in bits")
      ->check(CLI::Range(1u, 32u))
      ->capture_default_str();
  compare_cmd->add_option("--archs", compare_opt.archs,
                          "architectures, first is the baseline");
  compare_cmd->add_option("--weights", compare_opt.weights_path,
                          "JSON file overriding gate weights");
  compare_cmd->add_option("--format", compare_opt.format,
                          "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  compare_cmd->add_option("-o,--output", compare_opt.output_path,
                          "write to file instead of stdout");

  detail::ExportOptions export_opt;
  CLI::App* export_cmd =
      app.add_subcommand("export", "write a netlist as text");
  export_cmd->add_option("--what", export_opt.what, "sad, carry or datapath")
      ->check(CLI::IsMember({"sad", "carry", "datapath"}))
      ->capture_default_str();
  export_cmd->add_option("--arch", export_opt.arch, "architecture")
      ->capture_default_str();
  export_cmd->add_option("--width", export_opt.width, "width in bits")
      ->check(CLI::Range(1u, 32u))
      ->capture_default_str();
  export_cmd->add_option("--format", export_opt.format, "lines or dot")
      ->check(CLI::IsMember({"lines", "dot"}))
      ->capture_default_str();
  export_cmd->add_option("-o,--output", export_opt.output_path,
                         "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (seed_flag->count() > 0) verify_opt.seed = seed_value;
    if (*run_cmd) return detail::cmd_run(run_opt, out);
    if (*verify_cmd) return detail::cmd_verify(verify_opt, out, err);
    if (*compare_cmd) return detail::cmd_compare(compare_opt, out, err);
    if (*export_cmd) return detail::cmd_export(export_opt, out, err);
  } catch (const timeout_error& e) {
    err << "error: timeout: " << e.what() << "\n";
    return exit_timeout;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_domain;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_domain;
  } catch (const std::ios_base::failure& e) {
    err << "error: i/o failure: " << e.what() << "\n";
    return exit_io;
  }
  return exit_usage;
}

/// Convenience overload for tests.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace gcdfabric::cli
