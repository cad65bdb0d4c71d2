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
#include <string>

#include "locdisc/json_io.hpp"
#include "locdisc/quantum.hpp"
#include "locdisc/random.hpp"

namespace locdisc {
namespace {

TEST(Ket, RenormalizesWithinWindowOnly) {
  const Ket k{Complex(0.6 * (1 + 5e-7)), Complex(0.8 * (1 + 5e-7))};
  EXPECT_NEAR(k.amplitudes().norm(), 1.0, 1e-15);
  EXPECT_THROW((Ket{Complex(0.6), Complex(0.9)}), Error);
  EXPECT_THROW(Ket(ComplexVector(0)), DimensionError);
}

TEST(Ket, SuperpositionShorthand) {
  const Ket m = Ket::superposition(3, 0, 1, -1);
  EXPECT_NEAR(m[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(m[1].real(), -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(m[2], Complex(0.0));
  EXPECT_NEAR(std::abs(m.inner(Ket::superposition(3, 0, 1, +1))), 0.0, 1e-15);
  EXPECT_THROW(Ket::superposition(3, 1, 1, 1), DimensionError);
  EXPECT_THROW(Ket::basis(2, 2), DimensionError);
}

TEST(Ket, TensorOrdersAliceFirst) {
  const Ket t = Ket::basis(2, 1).tensor(Ket::basis(3, 2));
  EXPECT_EQ(t.dim(), 6);
  EXPECT_NEAR(t[1 * 3 + 2].real(), 1.0, 1e-15);
}

TEST(DensityOperator, ValidatesTraceAndPositivity) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2) / 2.0;
  EXPECT_NO_THROW(DensityOperator{m});
  EXPECT_THROW(DensityOperator{ComplexMatrix::Identity(2, 2)}, Error);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityOperator{neg}, Error);
  ComplexMatrix skew = m;
  skew(0, 1) = 0.1;
  EXPECT_THROW(DensityOperator{skew}, NotHermitianError);
}

TEST(HermitianOperator, SymmetrizesRoundingNoise) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = Complex(0.3, 1e-12);
  m(1, 0) = Complex(0.3, 0.0);
  const HermitianOperator h(m);
  EXPECT_EQ(h.matrix()(0, 1), std::conj(h.matrix()(1, 0)));
}

TEST(Ensemble, ValidatesPriorsAndDimensions) {
  const std::vector<State> two = {Ket::basis(2, 0), Ket::basis(2, 1)};
  EXPECT_NO_THROW(Ensemble({2}, two, {0.25, 0.75}));
  EXPECT_THROW(Ensemble({2}, two, {0.5, 0.6}), Error);
  EXPECT_THROW(Ensemble({2}, two, {1.5, -0.5}), Error);
  EXPECT_THROW(Ensemble({2}, two, {1.0}), DimensionError);
  EXPECT_THROW(Ensemble({3}, two, {0.5, 0.5}), DimensionError);
  EXPECT_THROW(Ensemble({2}, two, {0.5, 0.5}, {StateLabel::named("x")}), DimensionError);
  EXPECT_THROW(Ensemble({2}, two, {0.5, 0.5}, {}, 0.0), Error);
}

TEST(Ensemble, FindsLabels) {
  const Ensemble e = Ensemble::uniform({2, 2}, {Ket::basis(4, 0), Ket::basis(4, 3)},
                                       {StateLabel::indexed(0, 0), StateLabel::indexed(1, 1)});
  EXPECT_EQ(e.find("psi_11"), std::optional<std::size_t>(1));
  EXPECT_FALSE(e.find("psi_22").has_value());
  EXPECT_EQ(e.bipartite().total(), 4);
}

TEST(Povm, ValidationReport) {
  const Povm z = Povm::projective({Ket::basis(2, 0), Ket::basis(2, 1)});
  EXPECT_TRUE(validate_povm(z).pass);

  const Povm incomplete = Povm::from_matrices({Ket::basis(2, 0).projector()});
  const PovmReport r = validate_povm(incomplete);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.completeness_residual, 1.0, 1e-15);

  ComplexMatrix a = ComplexMatrix::Zero(2, 2), b = ComplexMatrix::Identity(2, 2);
  a(0, 0) = -0.1;
  b(0, 0) = 1.1;
  const PovmReport rn = validate_povm(Povm::from_matrices({a, b}));
  EXPECT_FALSE(rn.pass);
  EXPECT_NEAR(rn.min_effect_eigenvalue, -0.1, 1e-15);
}

TEST(Born, ProbabilitiesSumToOne) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix rho = random_density(3, 2, rng);
    const ComplexMatrix u = random_unitary(3, rng);
    std::vector<Ket> basis;
    for (int i = 0; i < 3; ++i) basis.emplace_back(ComplexVector(u.col(i)));
    const auto dist = outcome_distribution(rho, Povm::projective(basis));
    double s = 0.0;
    for (double p : dist) {
      EXPECT_GE(p, 0.0);
      s += p;
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
  EXPECT_THROW(born_probability(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)),
               DimensionError);
}

// --- JSON ------------------------------------------------------------------

TEST(Json, EnsembleRoundTrip) {
  Rng rng(9);
  const Ensemble e({2, 2}, {Ket::basis(4, 2), DensityOperator(random_density(4, 2, rng))}, {0.3, 0.7},
                   {StateLabel::named("a"), StateLabel::named("b")}, 2.5);
  const Ensemble back = ensemble_from_json(Json::parse(to_json(e).dump()));
  EXPECT_EQ(back.dims(), e.dims());
  EXPECT_EQ(back.priors(), e.priors());
  EXPECT_TRUE(back.state(0).is_pure());
  EXPECT_FALSE(back.state(1).is_pure());
  EXPECT_LT((back.state(1).density() - e.state(1).density()).norm(), 1e-15);
  EXPECT_EQ(back.labels()[1].name, "b");
  EXPECT_EQ(back.objective_scale(), 2.5);
}

TEST(Json, PovmRoundTrip) {
  const Povm p = Povm::projective({Ket::superposition(2, 0, 1, 1), Ket::superposition(2, 0, 1, -1)});
  const Povm back = povm_from_json(Json::parse(to_json(p).dump()));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_LT((back.effect(1) - p.effect(1)).norm(), 1e-15);
}

std::string input_error(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

TEST(Json, ErrorsNameTheField) {
  const Json bad_prior = Json::parse(R"({"dims":[2],"priors":[0.5,"x"],"states":[
      {"dim":2,"amps":[[1,0],[0,0]]},{"dim":2,"amps":[[0,0],[1,0]]}]})");
  EXPECT_NE(input_error([&] { ensemble_from_json(bad_prior); }).find("ensemble.priors[1]"), std::string::npos);

  const Json bad_amp = Json::parse(R"({"dims":[2],"priors":[1],"states":[{"dim":2,"amps":[[1,0],[0]]}]})");
  EXPECT_NE(input_error([&] { ensemble_from_json(bad_amp); }).find("ensemble.states[0].amps[1]"),
            std::string::npos);

  const Json unnormalized = Json::parse(R"({"dims":[2],"priors":[1],"states":[{"dim":2,"amps":[[1,0],[1,0]]}]})");
  EXPECT_NE(input_error([&] { ensemble_from_json(unnormalized); }).find("ensemble.states[0]"),
            std::string::npos);

  const Json missing = Json::parse(R"({"dims":[2],"states":[]})");
  EXPECT_NE(input_error([&] { ensemble_from_json(missing); }).find("ensemble.priors"), std::string::npos);

  const Json skew = Json::parse(R"({"effects":[[[[1,0],[1,0]],[[0,0],[0,0]]]]})");
  EXPECT_NE(input_error([&] { povm_from_json(skew); }).find("povm.effects[0]"), std::string::npos);

  const Json ragged = Json::parse(R"({"effects":[[[[1,0],[0,0]],[[0,0]]]]})");
  EXPECT_NE(input_error([&] { povm_from_json(ragged); }).find("povm.effects[0][1]"), std::string::npos);
}

TEST(Json, MissingFileIsInputError) {
  EXPECT_THROW(parse_json_file("/nonexistent/file.json"), InputError);
}

}  // namespace
}  // namespace locdisc
