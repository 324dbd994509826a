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

#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "genesim/error.hpp"
#include "genesim/model.hpp"

using namespace genesim;
using K = FitnessKind;

namespace {

ColumnFitness<double> column_fitness(FitnessKind kind, std::vector<Cell> cells, std::vector<std::string> targets = {}) {
  return variant_fitness<double>(FeatureSpec{0, kind, std::move(targets)}, cells);
}

}  // namespace

TEST_CASE("simple table normalizes to the reference population") {
  const auto pop = fixtures::simple_population();
  const MatrixXd expected{{0.8, 0.0, 0.0}, {0.6, 0.5, 0.0}, {0.0, 0.6, 0.5}};
  CHECK(pop.values().isApprox(expected, 1e-15));
  CHECK(pop.present().all());
  CHECK(pop.gene_names() == std::vector<std::string>{"price", "time", "stops"});
  CHECK(pop.organism_names() == std::vector<std::string>{"A", "B", "C"});
}

TEST_CASE("flight J row in the real-world table") {
  const auto pop = fixtures::real_world_population();
  const Eigen::RowVectorXd j = pop.organism(9);
  const Eigen::RowVectorXd expected{{0.0, 0.6, 0.5, 1.0, 1.0}};
  CHECK(j.isApprox(expected, 1e-15));
}

TEST_CASE("fitness kinds") {
  SUBCASE("inverse percentage") {
    const auto f = column_fitness(K::inverse_percentage, {300.0, 600.0, 1500.0});
    CHECK(f.values(0) == doctest::Approx(0.8));
    CHECK(f.values(1) == doctest::Approx(0.6));
    CHECK(f.values(2) == 0.0);
  }
  SUBCASE("percentage") {
    const auto f = column_fitness(K::percentage, {0.0, 1.0, 2.0});
    CHECK(f.values(0) == 0.0);
    CHECK(f.values(1) == 0.5);
    CHECK(f.values(2) == 1.0);
  }
  SUBCASE("all-zero column") {
    CHECK(column_fitness(K::percentage, {0.0, 0.0}).values.isZero());
    CHECK(column_fitness(K::inverse_percentage, {0.0, 0.0}).values.isOnes());
  }
  SUBCASE("boolean marks presence") {
    const auto f = column_fitness(K::boolean, {0.0, Missing{}, LabelList{"x"}});
    CHECK(f.values(0) == 1.0);
    CHECK(f.values(1) == 0.0);
    CHECK(f.values(2) == 1.0);
    CHECK(!f.present[1]);
    const RawTable one({"a"}, {{Cell{7.0}}});
    CHECK(build_population<double>(one, fixtures::specs({K::boolean})).values() == MatrixXd::Ones(1, 1));
  }
  SUBCASE("overlap") {
    const auto f = column_fitness(K::overlap, {LabelList{"wifi", "meal"}, LabelList{}, LabelList{"meal", "bar"}},
                                  {"wifi", "meal"});
    CHECK(f.values(0) == 1.0);
    CHECK(f.values(1) == 0.0);
    CHECK(f.values(2) == 0.5);
  }
  SUBCASE("missing cells stay absent and contribute 0") {
    const auto f = column_fitness(K::percentage, {2.0, Missing{}, 4.0});
    CHECK(f.present == std::vector<bool>{true, false, true});
    CHECK(f.values(1) == 0.0);
    CHECK(f.values(0) == 0.5);
  }
}

TEST_CASE("fitness errors") {
  CHECK_THROWS_AS(column_fitness(K::percentage, {LabelList{"x"}, 1.0}), ValidationError);
  CHECK_THROWS_AS(column_fitness(K::overlap, {LabelList{"x"}}), ValidationError);
  CHECK_THROWS_AS(column_fitness(K::percentage, {Missing{}, Missing{}}), ValidationError);
  CHECK_THROWS_AS(RawTable({"a"}, {{Cell{-1.0}}}), ValidationError);
  CHECK_THROWS_AS(RawTable({"a", "b"}, {{Cell{1.0}}}), ValidationError);

  try {
    build_population<double>(fixtures::numeric_table({"price", "time"}, {{1, 2}, {3, 4}}),
                             fixtures::specs({K::percentage}));
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    REQUIRE(!e.issues().empty());
    CHECK(e.issues()[0].column == std::optional<std::string>("time"));
  }
}

TEST_CASE("population rejects out-of-range values") {
  CHECK_THROWS_AS(Population<double>(MatrixXd{{1.5}}), ValidationError);
  CHECK_THROWS_AS(Population<double>(MatrixXd(0, 0)), DimensionError);
}

TEST_CASE("organism fitness is a dot product") {
  const auto pop = fixtures::simple_population();
  const VectorXd r = organism_fitness(pop, VectorXd::Constant(3, 1.0 / 3.0));
  CHECK(r(0) == doctest::Approx(0.8 / 3));
  CHECK(r(1) == doctest::Approx(1.1 / 3));
  CHECK(r(2) == doctest::Approx(1.1 / 3));
  CHECK_THROWS_AS(organism_fitness(pop, VectorXd::Ones(2)), DimensionError);
}

TEST_CASE("gene kinship") {
  const auto k = kinship(fixtures::simple_population(), Axis::gene);
  CHECK(k.axis == Axis::gene);
  CHECK(k.values(0, 1) == doctest::Approx(0.67).epsilon(0.01));
  CHECK(k.values(0, 2) == doctest::Approx(0.63).epsilon(0.01));
  CHECK(k.values(1, 2) == doctest::Approx(0.83).epsilon(0.01));
  CHECK(k.values.diagonal().isOnes());
  CHECK(k.values.isApprox(k.values.transpose()));

  SUBCASE("identical columns have kinship 1") {
    const Population<double> pop(MatrixXd{{0.2, 0.2}, {0.7, 0.7}, {1.0, 1.0}});
    CHECK(kinship(pop, Axis::gene).values(0, 1) == 1.0);
  }
  SUBCASE("all ones against all zeros") {
    for (Index n : {1, 2, 4, 9}) {
      MatrixXd phi(n, 2);
      phi.col(0).setOnes();
      phi.col(1).setZero();
      CHECK(kinship(Population<double>(phi), Axis::gene).values(0, 1) ==
            doctest::Approx(1.0 - 1.0 / std::sqrt(static_cast<double>(n))));
    }
  }
}

TEST_CASE("organism kinship uses the row length") {
  const Population<double> pop(MatrixXd{{1.0, 1.0, 1.0, 1.0}, {0.0, 0.0, 0.0, 0.0}});
  const auto k = kinship(pop, Axis::organism);
  CHECK(k.values(0, 1) == doctest::Approx(0.5));
}

TEST_CASE("initial fitness range") {
  CHECK(initial_fitness_range(VectorXd{{0.2, 0.5, 0.3}}).rho == doctest::Approx(0.3));
  CHECK(initial_fitness_range(VectorXd{{0.4, 0.4}}).rho == 0.4);
  CHECK(initial_fitness_range(VectorXd{{0.0, 0.0}}).rho == 1.0);
}
