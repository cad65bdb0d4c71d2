// Copyright 2026 The locdisc Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "locdisc/catalog.hpp"
#include "locdisc/helstrom.hpp"
#include "locdisc/optimizer.hpp"
#include "locdisc/random.hpp"
#include "oracle.hpp"

namespace locdisc {
namespace {

class TwoState : public ::testing::TestWithParam<int> {};

TEST_P(TwoState, BoundMatchesJacobiTraceNorm) {
  const int d = GetParam();
  Rng rng(500 + d);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix r0 = random_density(d, 1 + trial % d, rng);
    const ComplexMatrix r1 = random_density(d, 1 + (trial / 2) % d, rng);
    const double p0 = rng.uniform();
    EXPECT_NEAR(helstrom_two_state_bound(r0, r1, p0), oracle::helstrom(r0, r1, p0), 1e-10);
  }
}

TEST_P(TwoState, PureStateClosedForm) {
  const int d = GetParam();
  Rng rng(600 + d);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix u = random_unitary(d, rng), w = random_unitary(d, rng);
    const ComplexVector a = u.col(0), b = w.col(0);
    const double p0 = rng.uniform();
    const double overlap = std::norm(a.dot(b));
    const double expected = 0.5 * (1.0 + std::sqrt(1.0 - 4.0 * p0 * (1.0 - p0) * overlap));
    EXPECT_NEAR(helstrom_two_state_bound(outer(a), outer(b), p0), expected, 1e-10);
  }
}

INSTANTIATE_TEST_SUITE_P(Dims, TwoState, ::testing::Values(2, 3, 4, 8, 9));

TEST(HelstromConditions, BreidbartBasisIsCertified) {
  const Ensemble tau = catalog::gv_bob_tau();
  const HelstromReport r = check_helstrom_conditions(tau, qubit_basis_povm(std::numbers::pi / 8));
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.success, oracle::cos2_pi8, 1e-12);
  EXPECT_LT(r.gamma_antihermitian_residual, 1e-15);
}

TEST(HelstromConditions, SuboptimalMeasurementFails) {
  const Ensemble tau = catalog::gv_bob_tau();
  const HelstromReport r = check_helstrom_conditions(tau, qubit_basis_povm(0.0));
  EXPECT_FALSE(r.pass);
  EXPECT_LT(r.min_eigenvalue(), -1e-3);
  EXPECT_NEAR(r.success, 0.75, 1e-12);
}

TEST(HelstromConditions, RejectsMismatchedShapes) {
  EXPECT_THROW(check_helstrom_conditions(catalog::gv_bob_tau(), uniform_povm(3, 2)), DimensionError);
  EXPECT_THROW(check_helstrom_conditions(catalog::gv_bob_tau(), uniform_povm(2, 3)), DimensionError);
  EXPECT_THROW(helstrom_two_state_bound(catalog::domino_row_mixtures()), Error);
}

// Γ − p_jρ_j ⪰ 0 for every j bounds every measurement's success by Tr Γ, so
// random measurements must never beat a certified optimum.
TEST(HelstromConditions, RandomMeasurementsNeverBeatCertifiedOptimum) {
  struct Case {
    Ensemble e;
    double optimum;
  };
  std::vector<Case> cases = {{catalog::gv_bob_tau(), oracle::cos2_pi8},
                             {catalog::twofour_alice_rows(), oracle::cos2_pi8},
                             {catalog::domino_sigma_ensemble(), oracle::domino_success}};
  for (const auto& c : cases) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      const Povm p = random_povm(c.e.dim(), c.e.size(), seed);
      EXPECT_LE(scaled_success(c.e, p), c.optimum + 1e-12);
    }
  }
}

TEST(HelstromConditions, UnitaryInvariance) {
  Rng rng(77);
  const Ensemble tau = catalog::gv_bob_tau();
  const Povm opt = qubit_basis_povm(std::numbers::pi / 8);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix u = random_unitary(2, rng);
    std::vector<State> states;
    for (const auto& s : tau.states()) states.emplace_back(DensityOperator(conjugate(u, s.density())));
    const Ensemble rotated({2}, states, tau.priors());
    std::vector<ComplexMatrix> effects;
    for (const auto& e : opt.effects()) effects.push_back(conjugate(u, e.matrix()));
    const HelstromReport r = check_helstrom_conditions(rotated, Povm::from_matrices(effects));
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(r.success, oracle::cos2_pi8, 1e-12);
    EXPECT_NEAR(helstrom_two_state_bound(rotated), oracle::cos2_pi8, 1e-12);
  }
}

TEST(SuccessProbability, SubsetFormulaEqualsScaledEnsembleObjective) {
  const auto sigma = catalog::sigma_operators();
  const Ensemble e = catalog::domino_sigma_ensemble();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Povm p = random_povm(3, 8, seed);
    EXPECT_NEAR(subset_success_probability(sigma, p), scaled_success(e, p), 1e-12);
  }
  EXPECT_THROW(subset_success_probability(sigma, uniform_povm(3, 7)), DimensionError);
}

TEST(SuccessProbability, ExplicitGuessMap) {
  const Ensemble tau = catalog::gv_bob_tau();
  const Povm z = qubit_basis_povm(0.0);
  EXPECT_NEAR(success_probability(tau, z, {0, 1}), 0.75, 1e-12);
  EXPECT_NEAR(success_probability(tau, z, {1, 0}), 0.25, 1e-12);
  EXPECT_THROW(success_probability(tau, z, {0}), DimensionError);
  EXPECT_THROW(success_probability(tau, z, {0, 2}), Error);
}

}  // namespace
}  // namespace locdisc
