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
#include <functional>

#include "locdisc/catalog.hpp"
#include "locdisc/json_io.hpp"
#include "locdisc/locc.hpp"
#include "oracle.hpp"

namespace locdisc {
namespace {

// Independent evaluator for product inputs: local operations keep a product
// state product, so Alice's and Bob's factors are tracked separately.
// Internal effects must be projectors or rank one.
double product_success(const ProtocolNode& node, const ComplexMatrix& ra, const ComplexMatrix& rb,
                       const std::string& truth) {
  if (node.is_leaf()) return node.guess == truth ? 1.0 : 0.0;
  const ComplexMatrix& local = node.party == Party::A ? ra : rb;
  double total = 0.0;
  for (std::size_t k = 0; k < node.effects.size(); ++k) {
    const ComplexMatrix& e = node.effects[k];
    const double p = (local * e).trace().real();
    if (p < 1e-15) continue;
    ComplexMatrix root = e;
    if ((e * e - e).norm() > 1e-10) root = e / std::sqrt(e.trace().real());
    const ComplexMatrix post = root * local * root / p;
    total += p * (node.party == Party::A ? product_success(node.children[k], post, rb, truth)
                                         : product_success(node.children[k], ra, post, truth));
  }
  return total;
}

double product_success(const LoccProtocol& proto, const catalog::ProductBasis& basis) {
  double s = 0.0;
  for (const auto& st : basis.states()) {
    s += product_success(proto.root, st.alice.projector(), st.bob.projector(), st.label.name);
  }
  return s / static_cast<double>(basis.size());
}

catalog::ProductBasis basis_for(const LoccProtocol& p) {
  if (p.ensemble == "gv") return catalog::gv_basis();
  if (p.ensemble == "twofour") return catalog::twofour_basis();
  return catalog::domino_basis();
}

Ensemble ensemble_for(const LoccProtocol& p) { return basis_for(p).ensemble(); }

TEST(Protocols, ExactValuesMatchProductEvaluator) {
  for (const auto& [name, proto] : builtin_protocols()) {
    EXPECT_NEAR(evaluate_exact(proto, ensemble_for(proto)), product_success(proto, basis_for(proto)), 1e-12)
        << name;
  }
}

TEST(Protocols, PublishedValues) {
  EXPECT_NEAR(evaluate_exact(gv_forward(), catalog::gv_ensemble()), 1.0, 1e-12);
  EXPECT_NEAR(evaluate_exact(twofour_two_way(), catalog::twofour_ensemble()), 1.0, 1e-12);
  const double b = evaluate_exact(gv_backward_breidbart(), catalog::gv_ensemble());
  EXPECT_NEAR(b, oracle::cos2_pi8, 1e-12);
  EXPECT_NEAR(evaluate_exact(gv_backward_alternate(), catalog::gv_ensemble()), b, 1e-12);
  EXPECT_NEAR(evaluate_exact(twofour_oneway_ab(), catalog::twofour_ensemble()), oracle::cos2_pi8, 1e-12);
  EXPECT_NEAR(evaluate_exact(twofour_oneway_ba(), catalog::twofour_ensemble()), oracle::cos2_pi8, 1e-12);
  EXPECT_NEAR(evaluate_exact(domino_oneway(), catalog::domino_ensemble()), oracle::domino_success, 1e-10);
}

TEST(Protocols, MessageCounts) {
  EXPECT_EQ(validate_protocol(twofour_two_way()).messages, 2);
  for (const auto& [name, proto] : builtin_protocols()) {
    const ProtocolInfo info = validate_protocol(proto);
    if (proto.pattern == Communication::OneWay) {
      EXPECT_EQ(info.messages, 1) << name;
    }
  }
  const ProtocolInfo d = validate_protocol(domino_oneway());
  EXPECT_FALSE(d.projective);
  EXPECT_FALSE(d.terminal_only_general);
  EXPECT_TRUE(validate_protocol(gv_forward()).projective);
}

TEST(Protocols, DetailedEvaluationIsConsistent) {
  for (const auto& [name, proto] : builtin_protocols()) {
    const ExactEvaluation ev = evaluate_detailed(proto, ensemble_for(proto));
    for (double r : ev.reach_total) EXPECT_NEAR(r, 1.0, 1e-12) << name;
    EXPECT_LT(ev.max_trace_error, 1e-12) << name;
    EXPECT_GE(ev.min_update_eigenvalue, -1e-12) << name;
  }
}

TEST(Protocols, DominoProtocolEqualsSubsetFormula) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    // any Alice measurement works with the same Bob follow-up
    const Povm a = random_povm(3, 8, seed);
    EXPECT_NEAR(evaluate_exact(domino_oneway(a), catalog::domino_ensemble()),
                subset_success_probability(catalog::sigma_operators(), a), 1e-12);
  }
  EXPECT_THROW(domino_oneway(uniform_povm(3, 7)), ProtocolError);
}

LoccProtocol tiny(ProtocolNode root, Communication pattern = Communication::TwoWay) {
  return {"tiny", {2, 2}, std::move(root), pattern, "gv"};
}

TEST(Validation, RejectsMalformedTrees) {
  const ComplexMatrix p0 = Ket::basis(2, 0).projector();
  const ComplexMatrix p1 = Ket::basis(2, 1).projector();
  auto leaf = [](const char* g) { return ProtocolNode::leaf(g); };

  EXPECT_THROW(validate_protocol(tiny(ProtocolNode::measure(Party::A, {p0}, {leaf("psi_00")}))), ProtocolError);
  EXPECT_THROW(validate_protocol(tiny(ProtocolNode::measure(Party::A, {p0, p1}, {leaf("psi_00")}))),
               ProtocolError);
  EXPECT_THROW(validate_protocol(tiny(ProtocolNode::measure(Party::A, {ComplexMatrix::Identity(3, 3)},
                                                            {leaf("psi_00")}))),
               ProtocolError);
  ComplexMatrix neg = 2.0 * p0;
  EXPECT_THROW(validate_protocol(tiny(ProtocolNode::measure(Party::A, {neg, p1 - p0}, {leaf("a"), leaf("b")}))),
               ProtocolError);
  EXPECT_THROW(validate_protocol(tiny(ProtocolNode::leaf(""))), ProtocolError);

  // A -> B -> A is two messages.
  ProtocolNode back = ProtocolNode::measure(
      Party::A, {p0, p1},
      {ProtocolNode::measure(Party::B, {p0, p1},
                             {ProtocolNode::measure(Party::A, {p0, p1}, {leaf("psi_00"), leaf("psi_01")}),
                              leaf("psi_10")}),
       leaf("psi_11")});
  EXPECT_EQ(validate_protocol(tiny(back)).messages, 2);
  EXPECT_THROW(validate_protocol(tiny(back, Communication::OneWay)), ProtocolError);
}

TEST(Validation, GeneralPovmOnlyWhenPartyIsDone) {
  const Povm trine = random_povm(2, 3, 4);
  const ComplexMatrix p0 = Ket::basis(2, 0).projector();
  const ComplexMatrix p1 = Ket::basis(2, 1).projector();
  auto bob = [&] {
    return ProtocolNode::measure(Party::B, {p0, p1}, {ProtocolNode::leaf("psi_00"), ProtocolNode::leaf("psi_01")});
  };
  auto alice = [&] {
    return ProtocolNode::measure(Party::A, {p0, p1}, {ProtocolNode::leaf("psi_00"), ProtocolNode::leaf("psi_01")});
  };
  const std::vector<ComplexMatrix> e = {trine.effect(0), trine.effect(1), trine.effect(2)};
  EXPECT_NO_THROW(validate_protocol(tiny(ProtocolNode::measure(Party::A, e, {bob(), bob(), bob()}))));
  EXPECT_THROW(validate_protocol(tiny(ProtocolNode::measure(Party::A, e, {bob(), alice(), bob()}))),
               ProtocolError);
}

TEST(Validation, EvaluationChecksEnsemble) {
  EXPECT_THROW(evaluate_exact(gv_forward(), catalog::twofour_ensemble()), DimensionError);
  LoccProtocol p = gv_forward();
  p.root.children[0].children[0].guess = "nobody";
  EXPECT_THROW(evaluate_exact(p, catalog::gv_ensemble()), ProtocolError);
}

TEST(Sampling, SameSeedSameReport) {
  const LoccProtocol p = gv_backward_breidbart();
  const Ensemble e = catalog::gv_ensemble();
  const SampleReport a = sample(p, e, 20000, 7), b = sample(p, e, 20000, 7), c = sample(p, e, 20000, 8);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.successes, c.successes);
  EXPECT_THROW(sample(p, e, 0, 1), Error);
}

TEST(Sampling, WithinFourSigmaOfExact) {
  const std::uint64_t shots = 100000;
  for (const auto& [name, proto] : builtin_protocols()) {
    const Ensemble e = ensemble_for(proto);
    const double exact = evaluate_exact(proto, e);
    const SampleReport r = sample(proto, e, shots, 2026);
    const double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(shots));
    EXPECT_LE(std::abs(r.aggregate - exact), 4.0 * sigma + 1e-12) << name;
    std::uint64_t trials = 0;
    for (auto t : r.trials) trials += t;
    EXPECT_EQ(trials, shots);
  }
}

TEST(Sampling, PerfectProtocolNeverErrs) {
  const SampleReport r = sample(twofour_two_way(), catalog::twofour_ensemble(), 10000, 3);
  EXPECT_EQ(r.aggregate, 1.0);
  for (std::size_t s = 0; s < r.trials.size(); ++s) EXPECT_EQ(r.successes[s], r.trials[s]);
}

TEST(ProtocolJson, RoundTripPreservesValue) {
  for (const auto& [name, proto] : builtin_protocols()) {
    const LoccProtocol back = protocol_from_json(Json::parse(to_json(proto).dump()));
    EXPECT_EQ(back.name, proto.name);
    EXPECT_EQ(back.pattern, proto.pattern);
    EXPECT_EQ(back.ensemble, proto.ensemble);
    EXPECT_NEAR(evaluate_exact(back, ensemble_for(proto)), evaluate_exact(proto, ensemble_for(proto)), 1e-12)
        << name;
  }
}

TEST(ProtocolJson, MalformedInputNamesThePath) {
  Json j = to_json(gv_forward());
  j["root"]["children"][1]["effects"][0][0][0] = "x";
  try {
    protocol_from_json(j);
    FAIL() << "accepted malformed protocol";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("protocol.root.children[1].effects[0][0][0]"), std::string::npos)
        << e.what();
  }
  Json one_way_back = to_json(twofour_two_way());
  one_way_back["pattern"] = "one-way";
  EXPECT_THROW(protocol_from_json(one_way_back), InputError);
  Json parties = to_json(gv_forward());
  parties["parties"] = {"A", "C"};
  EXPECT_THROW(protocol_from_json(parties), InputError);
}

}  // namespace
}  // namespace locdisc
