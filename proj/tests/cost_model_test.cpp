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

#include <gcdfabric/cost_model.hpp>

#include <random>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

using namespace gcdfabric;

namespace {

Netlist nand_chain(std::size_t length) {
  Netlist nl(1, BuildMode::NandOnly);
  NetId a = nl.add_input("a", 1)[0];
  NetId n = a;
  for (std::size_t i = 0; i < length; ++i) n = nl.nand(n, n);
  nl.add_output("o", n);
  nl.finalize();
  return nl;
}

}  // namespace

TEST_CASE("a 4-nand chain costs area 4, delay 4, adp 16", "[cost]") {
  CostReport r = cost_netlist(nand_chain(4));
  REQUIRE(r.area.has_value());
  CHECK(*r.area == Catch::Approx(4.0));
  CHECK(*r.delay == Catch::Approx(4.0));
  CHECK(*r.adp == Catch::Approx(16.0));
}

TEST_CASE("an empty datapath costs nothing", "[cost]") {
  Netlist nl(4);
  auto x = nl.add_input("x", 4);
  nl.add_output("x", x);
  nl.finalize();
  CostReport r = cost_netlist(nl);
  CHECK(*r.area == 0.0);
  CHECK(*r.delay == 0.0);
  CHECK(*r.adp == 0.0);
}

TEST_CASE("adp is exactly area times delay on every report", "[cost]") {
  for (unsigned width : {4u, 8u}) {
    ComparisonTable table =
        compare(std::span<const ArchVariant>(all_variants), width);
    for (const CostReport& r : table.rows) {
      if (r.behavioral) {
        CHECK_FALSE(r.area.has_value());
        CHECK_FALSE(r.delay.has_value());
        CHECK_FALSE(r.adp.has_value());
      } else {
        REQUIRE(r.adp.has_value());
        CHECK(*r.adp == *r.area * *r.delay);
      }
    }
  }
}

TEST_CASE("report censuses equal the netlist stats gate for gate", "[cost]") {
  for (ArchVariant v :
       {ArchVariant::Gcd2Sub, ArchVariant::GcdSad, ArchVariant::OptimizedGcdSad}) {
    Machine m = build_machine(v, 8);
    CostReport r = cost(m);
    GateStats direct = m.datapath()->stats();
    CHECK(r.census.counts == direct.counts);
    CHECK(r.census.depth == direct.depth);
  }
}

TEST_CASE("behavioral variants are flagged and carry no cost", "[cost]") {
  CostReport r = cost(build_machine(ArchVariant::ForLoop, 32));
  CHECK(r.behavioral);
  CHECK_FALSE(r.area.has_value());
  CHECK(r.census.total() == 0);
}

TEST_CASE("percent reduction on reference adp figures", "[cost]") {
  // 100 * (2038.453 - 1727) / 2038.453 and 100 * (1847.832 - 1727) / 1847.832
  CHECK(percent_reduction(1727.0, 2038.453) == Catch::Approx(15.2789).margin(1e-3));
  CHECK(percent_reduction(1727.0, 1847.832) == Catch::Approx(6.5391).margin(1e-3));
  // both land within one percentage point of the rounded 15 / 6 figures
  CHECK(std::abs(percent_reduction(1727.0, 2038.453) - 15.0) <= 1.0);
  CHECK(std::abs(percent_reduction(1727.0, 1847.832) - 6.0) <= 1.0);
}

TEST_CASE("percent reduction edge behavior", "[cost]") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(0.5, 5000.0);
  for (int i = 0; i < 200; ++i) {
    double x = dist(rng);
    CHECK(percent_reduction(x, x) == 0.0);
    double y = dist(rng);
    if (x != y) {
      // antisymmetric in the sign of the numerator
      CHECK((percent_reduction(x, y) > 0) == (percent_reduction(y, x) < 0));
    }
  }
  CHECK_THROWS_AS(percent_reduction(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(percent_reduction(1.0, -3.0), std::domain_error);
}

TEST_CASE("comparison table layout", "[cost]") {
  const std::array archs = {ArchVariant::OptimizedGcdSad, ArchVariant::GcdSad};
  ComparisonTable table = compare(archs, 32);
  REQUIRE(table.rows.size() == 2);
  CHECK_FALSE(table.reduction_vs_first[0].has_value());
  REQUIRE(table.reduction_vs_first[1].has_value());
  CHECK(*table.reduction_vs_first[1] ==
        Catch::Approx(percent_reduction(*table.rows[0].adp, *table.rows[1].adp)));
}

TEST_CASE("area grows with width", "[cost]") {
  for (ArchVariant v :
       {ArchVariant::Gcd2Sub, ArchVariant::GcdSad, ArchVariant::OptimizedGcdSad}) {
    double w8 = *cost(build_machine(v, 8)).area;
    double w32 = *cost(build_machine(v, 32)).area;
    CHECK(w32 > w8);
  }
}

TEST_CASE("csv report format", "[cost]") {
  ComparisonTable table =
      compare(std::span<const ArchVariant>(all_variants), 8);
  std::string csv = to_csv(table);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "variant,area,delay,adp,reduction_vs_first,behavioral_flag");
  std::size_t rows = 0;
  std::string line;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == table.rows.size());
  // the behavioral for-loop row has empty cost cells
  CHECK(csv.find("for-loop,,,,,true") != std::string::npos);
}

TEST_CASE("json report carries schema version and censuses", "[cost]") {
  const std::array archs = {ArchVariant::OptimizedGcdSad, ArchVariant::ForLoop};
  ComparisonTable table = compare(archs, 8);
  nlohmann::json doc = nlohmann::json::parse(to_json(table));
  CHECK(doc.at("schema_version") == 1);
  CHECK(doc.at("width") == 8);
  REQUIRE(doc.at("rows").size() == 2);
  const auto& first = doc.at("rows").at(0);
  CHECK(first.at("variant") == "optimized-gcdsad");
  CHECK(first.at("behavioral") == false);
  CHECK(first.at("census").at("counts").at("NAND").get<std::size_t>() ==
        table.rows[0].census.count(GateKind::Nand));
  const auto& second = doc.at("rows").at(1);
  CHECK(second.at("behavioral") == true);
  CHECK(second.at("adp").is_null());
}

TEST_CASE("weights file overrides recompute the report", "[cost]") {
  const std::string text = R"({"area": {"NAND": 1.0, "XOR": 2.5, "AND": 2.0}})";
  CostWeights weights = weights_from_json(text);
  CHECK(weights.area_of(GateKind::And) == 2.0);
  CHECK(weights.area_of(GateKind::Or) == 1.5);  // untouched default

  Machine m = build_machine(ArchVariant::GcdSad, 8);
  CostReport r = cost(m, weights);
  // recompute by hand from the census
  double expected = 0.0;
  for (const auto& [kind, count] : r.census.counts)
    expected += weights.area_of(kind) * static_cast<double>(count);
  CHECK(*r.area == Catch::Approx(expected));
}

TEST_CASE("weights validation", "[cost]") {
  CHECK_THROWS_AS(weights_from_json("not json"), std::domain_error);
  CHECK_THROWS_AS(weights_from_json(R"({"area": {"NAND": 0}})"),
                  std::domain_error);
  CHECK_THROWS_AS(weights_from_json(R"({"area": {"FROB": 1}})"),
                  std::domain_error);
  CHECK_THROWS_AS(weights_from_json(R"([1,2,3])"), std::domain_error);
}

TEST_CASE("weighted critical path respects per-kind delays", "[cost]") {
  Netlist nl(1, BuildMode::Mixed);
  NetId a = nl.add_input("a", 1)[0];
  NetId b = nl.add_input("b", 1)[0];
  // XOR feeding AND: unit delays give depth 2
  nl.add_output("o", nl.and_(nl.xor_(a, b), a));
  nl.finalize();
  CostWeights w = CostWeights::defaults();
  CHECK(weighted_critical_path(nl, w) == Catch::Approx(2.0));
  w.delay[GateKind::Xor] = 3.0;
  CHECK(weighted_critical_path(nl, w) == Catch::Approx(4.0));
}
