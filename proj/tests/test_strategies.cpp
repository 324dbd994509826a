// Copyright 2026 The genesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doctest.h"
#include "fixtures.hpp"
#include "genesim/engine.hpp"
#include "genesim/error.hpp"
#include "genesim/strategies.hpp"

using namespace genesim;

namespace {

struct Snapshot {
  Population<double> pop;
  VectorXd gamma;
  VectorXd r;
  KinshipMatrix<double> kg;
  KinshipMatrix<double> ko;
  double rho;
};

Snapshot snapshot(Population<double> pop) {
  const VectorXd gamma = VectorXd::Constant(pop.cols(), 1.0 / static_cast<double>(pop.cols()));
  const VectorXd r = organism_fitness(pop, gamma);
  auto kg = kinship(pop, Axis::gene);
  auto ko = kinship(pop, Axis::organism);
  const double rho = initial_fitness_range(r).rho;
  return {std::move(pop), gamma, r, std::move(kg), std::move(ko), rho};
}

void check_within(const MatrixXd& actual, const MatrixXd& expected, double tol) {
  REQUIRE(actual.rows() == expected.rows());
  REQUIRE(actual.cols() == expected.cols());
  const double worst = (actual - expected).cwiseAbs().maxCoeff();
  INFO("worst deviation " << worst);
  CHECK(worst <= tol);
}

}  // namespace

TEST_CASE("dominant and balanced matrices on the simple table") {
  const auto s = snapshot(fixtures::simple_population());
  const auto dom = gs_dominant(s.pop, s.gamma);
  const auto bal = os_balanced(s.pop, s.gamma, s.r);
  check_within(dom.values, MatrixXd{{0.044, -0.074, -0.074}, {0.015, 0.000, -0.074}, {-0.074, 0.015, 0.000}}, 0.001);
  check_within(bal.values, MatrixXd{{-0.119, 0.059, 0.059}, {-0.052, -0.030, 0.082}, {0.082, -0.052, -0.030}}, 0.001);
  // Sums of the printed matrix columns; analytically (4/27)(sum phi - 3/2).
  check_within(dom.column_sums(), VectorXd{{-0.4, -1.6, -4.0}} / 27.0, 1e-15);
  check_within(dom.column_sums(), VectorXd{{-0.01, -0.06, -0.15}}, 0.005);
  check_within(bal.column_sums(), VectorXd{{-0.09, -0.02, 0.11}}, 0.005);
  const VectorXd total = dom.column_sums() + bal.column_sums();
  check_within(total, VectorXd{{-0.10, -0.08, -0.04}}, 0.005);
  CHECK(dom.strategy == Strategy::gs_dominant);
  CHECK(bal.strategy == Strategy::os_balanced);
}

TEST_CASE("altruistic and selfish matrices match the reference values") {
  const auto golden = fixtures::golden();
  const std::pair<const char*, Population<double>> cases[] = {
      {"table2", fixtures::simple_population()},
      {"table3", fixtures::real_world_population()},
  };
  for (const auto& [key, pop] : cases) {
    CAPTURE(key);
    const auto s = snapshot(pop);
    const auto& g = golden.at(key);
    CHECK(s.rho == doctest::Approx(g.at("rho").get<double>()).epsilon(1e-12));
    check_within(s.r, fixtures::to_matrix(nlohmann::json::array({g.at("r0")})).transpose(), 1e-12);
    const auto alt = gs_altruistic(s.pop, s.gamma, s.kg);
    check_within(alt.values, fixtures::to_matrix(g.at("altruistic")), 1e-12);
    const auto bal = os_balanced(s.pop, s.gamma, s.r);
    const auto sel = os_selfish(s.pop, s.r, s.ko, s.rho, bal);
    check_within(sel.values, fixtures::to_matrix(g.at("selfish")), 1e-12);

    // The per-equation normalization halves the selfish matrix.
    const auto half = os_selfish(s.pop, s.r, s.ko, s.rho, bal, SelfishNormalization::per_equation);
    check_within(half.values, 0.5 * sel.values, 1e-15);
  }
}

TEST_CASE("flight A selfish row and selfish totals on the real-world table") {
  const auto s = snapshot(fixtures::real_world_population());
  const auto bal = os_balanced(s.pop, s.gamma, s.r);
  const auto sel = os_selfish(s.pop, s.r, s.ko, s.rho, bal);
  check_within(sel.values.row(0).transpose(), VectorXd{{0.040, -0.019, -0.019, -0.019, 0.017}}, 0.002);
  check_within(sel.column_sums(), VectorXd{{0.091, -0.023, -0.030, -0.055, 0.016}}, 0.003);
}

TEST_CASE("balanced rows sum to zero when every cell is present") {
  const auto s = snapshot(fixtures::real_world_population());
  const auto bal = os_balanced(s.pop, s.gamma, s.r);
  for (Index i = 0; i < bal.values.rows(); ++i) CHECK(std::abs(bal.values.row(i).sum()) < 1e-15);
}

TEST_CASE("selfish pressure is antisymmetric in total") {
  const auto s = snapshot(fixtures::real_world_population());
  const VectorXd p = selfish_pressure(s.r, s.ko, s.rho);
  CHECK(std::abs(p.sum()) < 1e-15);
  // Flight A is by far the weakest organism.
  CHECK(p(0) == p.minCoeff());
  CHECK(p(0) < 0);
}

TEST_CASE("contribution shares") {
  const auto s = snapshot(fixtures::simple_population());
  const MatrixXd mu = contribution_shares(s.pop, s.gamma, s.r);
  for (Index i = 0; i < mu.rows(); ++i) CHECK(mu.row(i).sum() == doctest::Approx(1.0));
  CHECK(mu(0, 0) == 1.0);

  const Population<double> zero_row(MatrixXd{{0.0, 0.0}, {1.0, 0.5}});
  const VectorXd g = VectorXd::Constant(2, 0.5);
  const VectorXd r = organism_fitness(zero_row, g);
  CHECK(contribution_shares(zero_row, g, r).row(0).isZero());
  CHECK(os_balanced(zero_row, g, r).values.row(0).isZero());
}

TEST_CASE("absent cells receive no resources") {
  Mask present = Mask::Constant(2, 2, true);
  present(1, 0) = false;
  const Population<double> pop(MatrixXd{{0.4, 0.9}, {0.0, 0.2}}, present);
  const auto s = snapshot(pop);
  const auto bal = os_balanced(s.pop, s.gamma, s.r);
  CHECK(gs_dominant(s.pop, s.gamma).values(1, 0) == 0.0);
  CHECK(gs_altruistic(s.pop, s.gamma, s.kg).values(1, 0) == 0.0);
  CHECK(bal.values(1, 0) == 0.0);
  CHECK(os_selfish(s.pop, s.r, s.ko, s.rho, bal).values(1, 0) == 0.0);
}

TEST_CASE("a single gene produces no altruistic transfer and no balanced change") {
  const auto s = snapshot(Population<double>(MatrixXd{{0.3}, {0.9}, {0.6}}));
  CHECK(gs_altruistic(s.pop, s.gamma, s.kg).values.isZero());
  CHECK(os_balanced(s.pop, s.gamma, s.r).values.isZero());
  CHECK(gs_dominant(s.pop, s.gamma).values(1, 0) == doctest::Approx(4.0 / 3.0 * 0.4));
}

TEST_CASE("shape mismatches are reported") {
  const auto pop = fixtures::simple_population();
  CHECK_THROWS_AS(gs_dominant(pop, VectorXd::Ones(2)), DimensionError);
  CHECK_THROWS_AS(os_balanced(pop, VectorXd::Ones(3) / 3.0, VectorXd::Ones(2)), DimensionError);
  const auto s = snapshot(pop);
  CHECK_THROWS_AS(gs_altruistic(pop, s.gamma, kinship(fixtures::real_world_population(), Axis::gene)),
                  DimensionError);
  const auto bal = os_balanced(pop, s.gamma, s.r);
  CHECK_THROWS_AS(os_selfish(pop, s.r, s.ko, 0.0, bal), std::invalid_argument);
}

TEST_CASE("mixing") {
  const auto s = snapshot(fixtures::simple_population());
  StrategySet<double> set{gs_dominant(s.pop, s.gamma), gs_altruistic(s.pop, s.gamma, s.kg),
                          os_balanced(s.pop, s.gamma, s.r), {}};
  set.selfish = os_selfish(s.pop, s.r, s.ko, s.rho, set.balanced);

  SUBCASE("pure weights select one strategy") {
    const auto [g, o] = mix(set.gene(), set.organism(), StrategyMix::dom_bal());
    CHECK(g.values == set.dominant.values);
    CHECK(o.values == set.balanced.values);
    CHECK(g.strategy == Strategy::mixed_gene);
  }
  SUBCASE("even weights average") {
    const auto [g, o] = mix(set.gene(), set.organism(), StrategyMix::self_consistent());
    check_within(g.values, 0.5 * (set.dominant.values + set.altruistic.values), 1e-15);
    check_within(o.values, 0.5 * (set.balanced.values + set.selfish.values), 1e-15);
  }
  SUBCASE("zero weight may name an unevaluated strategy") {
    std::map<Strategy, DeltaMatrix<double>> only_dom{{Strategy::gs_dominant, set.dominant}};
    CHECK_NOTHROW(combine(only_dom, StrategyMix::dom_bal().gene_weights(), Strategy::mixed_gene, "gene"));
    CHECK_THROWS_AS(combine(only_dom, StrategyMix::alt_sel().gene_weights(), Strategy::mixed_gene, "gene"),
                    std::invalid_argument);
  }
  SUBCASE("weights must form a convex combination") {
    StrategyMix bad = StrategyMix::dom_bal();
    bad.dominant = 0.6;
    bad.altruistic = 0.5;
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("gene alphas must sum to 1"), ValidationError);
    bad = StrategyMix::dom_bal();
    bad.balanced = 1.2;
    bad.selfish = -0.2;
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("non-negative"), ValidationError);
  }
}

TEST_CASE("sign scenarios") {
  SUBCASE("simple table, flight C selfish signs") {
    const auto s = snapshot(fixtures::simple_population());
    const auto d = sign_scenarios(s.pop, s.gamma, s.r, s.kg, s.ko, s.rho);
    REQUIRE(d.organism_signs.size() == 3);
    const auto& c = d.organism_signs[2];
    CHECK(c[0].first.sign == 1);
    CHECK(c[0].second.sign == 1);
    CHECK(c[1].first.sign == -1);
    CHECK(c[1].second.sign == 1);
    CHECK(c[2].first.sign == -1);
    CHECK(c[2].second.sign == 1);
  }
  SUBCASE("real-world table, flight A") {
    const auto s = snapshot(fixtures::real_world_population());
    const auto d = sign_scenarios(s.pop, s.gamma, s.r, s.kg, s.ko, s.rho);
    const auto& a = d.organism_signs[0];
    const int expected_first[] = {-1, 1, 1, 1, -1};
    for (std::size_t j = 0; j < 5; ++j) {
      CAPTURE(j);
      CHECK(a[j].first.sign == expected_first[j]);
      CHECK(a[j].second.sign == -1);
    }
    // The price cell carries the largest balanced magnitude of the row.
    CHECK(a[0].first.level > a[1].first.level);
  }
  SUBCASE("rendering") {
    CHECK(to_string(SignPair{{1, 1}, {-1, 2}}) == "(+,--)");
    CHECK(to_string(SignPair{{0, 0}, {1, 3}}) == "(0,+++)");
  }
  SUBCASE("gene signs pair dominant with transfer") {
    const auto s = snapshot(fixtures::simple_population());
    const auto d = sign_scenarios(s.pop, s.gamma, s.r, s.kg, s.ko, s.rho);
    CHECK(d.gene_signs[0][0].first.sign == 1);   // phi = 0.8 > 1/2
    CHECK(d.gene_signs[0][0].second.sign == -1); // A is strongest on price
    CHECK(d.gene_signs[1][1].first.sign == 0);   // phi = 0.5
  }
}
