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
#include <map>
#include <set>

#include "locdisc/catalog.hpp"
#include "oracle.hpp"

namespace locdisc::catalog {
namespace {

ComplexMatrix from_array(const std::array<std::array<double, 3>, 3>& a) {
  ComplexMatrix m(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = a[i][j];
  return m;
}

class Bases : public ::testing::TestWithParam<std::string> {
 protected:
  ProductBasis basis() const {
    if (GetParam() == "gv") return gv_basis();
    if (GetParam() == "twofour") return twofour_basis();
    return domino_basis();
  }
};

TEST_P(Bases, AreOrthonormal) {
  const ProductBasis b = basis();
  const auto n = static_cast<int>(b.size());
  EXPECT_EQ(n, b.dims().total());
  EXPECT_LT((b.gram() - ComplexMatrix::Identity(n, n)).norm(), 1e-12);
}

TEST_P(Bases, JointStatesAreProducts) {
  const ProductBasis b = basis();
  for (const auto& s : b.states()) {
    const ComplexMatrix rho = s.joint().projector();
    EXPECT_LT((oracle::kron(s.alice.projector(), s.bob.projector()) - rho).norm(), 1e-14);
    // Pure reduced states are the signature of a product.
    const ComplexMatrix ra = partial_trace(rho, b.dims(), Party::A);
    EXPECT_NEAR((ra * ra).trace().real(), 1.0, 1e-12);
  }
}

TEST_P(Bases, EnsembleIsUniformWithIndexedLabels) {
  const ProductBasis b = basis();
  const Ensemble e = b.ensemble();
  for (std::size_t s = 0; s < e.size(); ++s) {
    EXPECT_DOUBLE_EQ(e.prior(s), 1.0 / static_cast<double>(e.size()));
    ASSERT_TRUE(e.labels()[s].index.has_value());
    const auto [i, j] = *e.labels()[s].index;
    EXPECT_EQ(e.labels()[s].name, "psi_" + std::to_string(i) + std::to_string(j));
  }
}

INSTANTIATE_TEST_SUITE_P(Catalog, Bases, ::testing::Values("gv", "twofour", "domino"));

TEST(Domino, CentralStateAndExplicitAmplitudes) {
  const ProductBasis b = domino_basis();
  EXPECT_NEAR(b.at(1, 1).joint()[4].real(), 1.0, 1e-15);
  // ψ_00 = |0⟩|0−1⟩.
  const Ket& bob = b.at(0, 0).bob;
  EXPECT_NEAR(bob[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(bob[1].real(), -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_THROW(b.index_of(3, 0), Error);
}

TEST(Subsets, OneSidedOrthogonality) {
  EXPECT_LT(one_sided_orthogonality_residual(gv_subsets(), gv_basis()), 1e-12);
  EXPECT_LT(one_sided_orthogonality_residual(domino_subsets(), domino_basis()), 1e-12);
  EXPECT_THROW(one_sided_orthogonality_residual(twofour_subspace_subsets(), twofour_basis()), Error);
}

TEST(Subsets, TwofourClassesAreBobSubspaces) {
  const ProductBasis b = twofour_basis();
  const auto fam = twofour_subspace_subsets();
  ASSERT_EQ(fam.size(), 2u);
  for (std::size_t c = 0; c < 2; ++c) {
    for (const auto& [i, j] : fam.members[c]) {
      const Ket& bob = b.at(i, j).bob;
      const double weight = std::norm(bob[2 * c]) + std::norm(bob[2 * c + 1]);
      EXPECT_NEAR(weight, 1.0, 1e-14);
    }
  }
}

TEST(Sigma, PartialTraceMatchesClosedForms) {
  const auto traced = sigma_operators();
  const auto closed = sigma_closed_forms();
  ASSERT_EQ(traced.size(), 8u);
  for (std::size_t k = 0; k < 8; ++k) {
    EXPECT_LT((traced[k] - closed[k]).norm(), 1e-12) << "k=" << k;
    EXPECT_NEAR(traced[k].trace().real(), 1.0, 1e-12);
  }
  EXPECT_LT((traced[0] - from_array(oracle::sigma0)).norm(), 1e-12);
  EXPECT_LT((traced[4] - from_array(oracle::sigma4)).norm(), 1e-12);
}

TEST(Sigma, SymmetriesPermuteTheFamily) {
  const auto sigma = sigma_operators();
  const auto [u, v] = symmetry_unitaries();
  EXPECT_LT((u * u.adjoint() - ComplexMatrix::Identity(3, 3)).norm(), 1e-15);
  EXPECT_LT((v * v.adjoint() - ComplexMatrix::Identity(3, 3)).norm(), 1e-15);
  for (const ComplexMatrix& w : {u, v}) {
    std::set<std::size_t> image;
    for (const auto& s : sigma) {
      const ComplexMatrix t = conjugate(w, s);
      for (std::size_t k = 0; k < 8; ++k) {
        if ((t - sigma[k]).norm() < 1e-12) image.insert(k);
      }
    }
    EXPECT_EQ(image.size(), 8u);
  }
}

TEST(GuessFunctions, EnumerationIsLexicographic) {
  const auto all = all_guess_functions(3, 3);
  ASSERT_EQ(all.size(), 27u);
  EXPECT_EQ(all.front().to_string(), "(0,0,0)");
  EXPECT_EQ(all[1].to_string(), "(0,0,1)");
  EXPECT_EQ(all.back().to_string(), "(2,2,2)");
  EXPECT_EQ(all_guess_functions(2, 2).size(), 4u);
}

TEST(GuessFunctions, TriplesMapToTheirFunctions) {
  const std::vector<std::string> expected = {"(0,0,0)", "(0,0,1)", "(1,2,2)", "(2,2,2)",
                                             "(1,1,0)", "(1,1,1)", "(2,1,0)", "(2,1,1)"};
  const ProductBasis b = domino_basis();
  const auto fam = domino_subsets();
  for (std::size_t k = 0; k < 8; ++k) {
    EXPECT_EQ(subset_guess_function(b, fam.members[k], Party::B).to_string(), expected[k]);
  }
}

TEST(GuessFunctions, BruteForceKernelsAreTheTriples) {
  // A_g = σ_k / 3 exactly for the eight triple functions and for no others.
  const auto ops = domino_alice_guess_operators();
  const auto sigma = sigma_operators();
  ASSERT_EQ(ops.size(), 27u);
  std::map<std::string, int> hits;
  for (const auto& g : ops) {
    for (std::size_t k = 0; k < 8; ++k) {
      if ((g.op - sigma[k] / 3.0).norm() < 1e-12) hits[g.guess.to_string()] = static_cast<int>(k);
    }
  }
  EXPECT_EQ(hits.size(), 8u);
  EXPECT_EQ(hits["(0,0,0)"], 0);
  EXPECT_EQ(hits["(2,1,1)"], 7);
  double total = 0.0;
  for (const auto& g : ops) total += g.op.trace().real();
  EXPECT_NEAR(total, 9.0, 1e-12);  // 27 functions, each of trace 1/3
}

TEST(GuessFunctions, GvBobOperators) {
  const auto ops = gv_bob_guess_operators();
  ASSERT_EQ(ops.size(), 4u);
  const ComplexMatrix t0 = (Ket::basis(2, 0).projector() + Ket::superposition(2, 0, 1, 1).projector()) / 4.0;
  EXPECT_EQ(ops[0].guess.to_string(), "(0,0)");
  EXPECT_LT((ops[0].op - t0).norm(), 1e-14);
}

TEST(GuessFunctions, RejectsStatesCoherentOnClassicalSide) {
  EXPECT_THROW(effective_guess_operators(gv_ensemble(), Party::B, {{0, 1}, {2, 3}}), Error);
  EXPECT_THROW(effective_guess_operators(gv_ensemble(), Party::A, {{0, 1}}), DimensionError);
}

TEST(GuessProblem, ScaleRestoresOriginalUnits) {
  const auto ops = domino_alice_guess_operators();
  const Ensemble e = guess_problem_ensemble(ops);
  EXPECT_NEAR(e.objective_scale(), 9.0, 1e-12);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    EXPECT_LT((e.objective_scale() * e.prior(i) * e.state(i).density() - ops[i].op).norm(), 1e-12);
  }
}

TEST(Reductions, NamedEnsembles) {
  const Ensemble tau = gv_bob_tau();
  const Ensemble rows = twofour_alice_rows();
  ASSERT_EQ(rows.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_LT((rows.state(i).density() - tau.state(i).density()).norm(), 1e-12);
  }
  const Ensemble sig = domino_sigma_ensemble();
  EXPECT_EQ(sig.size(), 8u);
  EXPECT_DOUBLE_EQ(sig.objective_scale(), 8.0 / 3.0);
  const Ensemble dr = domino_row_mixtures();
  EXPECT_EQ(dr.size(), 3u);
  EXPECT_EQ(dr.labels()[2].name, "rho_2");
}

}  // namespace
}  // namespace locdisc::catalog
