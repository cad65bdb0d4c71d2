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

#ifndef LOCDISC_LOCC_HPP
#define LOCDISC_LOCC_HPP

/**
 * @file locc.hpp
 * @brief Local measurement protocols with classical communication.
 *
 * A protocol is a finite tree. Internal nodes are a local measurement by one
 * party with one child per outcome; leaves name the guessed state. The
 * outcome sequence is the classical communication: a message is sent each
 * time the acting party changes along a path.
 *
 * After an outcome with effect E the state is updated by the Lüders rule
 * ρ → √E ρ √E / Tr(Eρ), which is PρP/Tr(Pρ) for a projector. A
 * non-projective measurement may have children only if its party never
 * measures again below it; the other party's reduced state is then the same
 * for every realization of the POVM.
 */

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "locdisc/catalog.hpp"
#include "locdisc/matrix.hpp"
#include "locdisc/optimizer.hpp"
#include "locdisc/quantum.hpp"
#include "locdisc/random.hpp"

namespace locdisc {

class ProtocolError : public Error {
 public:
  using Error::Error;
};

struct ProtocolNode {
  Party party = Party::A;
  std::vector<ComplexMatrix> effects;  ///< local operators on `party`
  std::vector<ProtocolNode> children;  ///< one per effect
  std::string guess;                   ///< set on leaves only

  bool is_leaf() const { return effects.empty(); }

  static ProtocolNode leaf(std::string g) {
    ProtocolNode n;
    n.guess = std::move(g);
    return n;
  }

  static ProtocolNode measure(Party p, std::vector<ComplexMatrix> effects,
                              std::vector<ProtocolNode> children) {
    ProtocolNode n;
    n.party = p;
    n.effects = std::move(effects);
    n.children = std::move(children);
    return n;
  }

  /// Measurement in an orthonormal basis, outcome k leading to children[k].
  static ProtocolNode basis(Party p, const std::vector<Ket>& kets, std::vector<ProtocolNode> children) {
    std::vector<ComplexMatrix> e;
    for (const auto& k : kets) e.push_back(k.projector());
    return measure(p, std::move(e), std::move(children));
  }
};

enum class Communication { OneWay, TwoWay };

inline const char* to_string(Communication c) {
  return c == Communication::OneWay ? "one-way" : "two-way";
}

struct LoccProtocol {
  std::string name;
  BipartiteDims dims;
  ProtocolNode root;
  Communication pattern = Communication::TwoWay;
  std::string ensemble;  ///< catalog ensemble the protocol is written for, if any
};

/// Structural facts established by validate_protocol().
struct ProtocolInfo {
  int messages = 0;                 ///< max party alternations along a path
  int leaves = 0;
  int internal_nodes = 0;
  bool projective = true;           ///< every internal node is projective
  bool terminal_only_general = true;  ///< non-projective nodes only at the last layer
};

namespace detail {

inline bool is_projective(const std::vector<ComplexMatrix>& effects, double t) {
  for (std::size_t i = 0; i < effects.size(); ++i) {
    if ((effects[i] * effects[i] - effects[i]).norm() > t) return false;
    for (std::size_t j = i + 1; j < effects.size(); ++j) {
      if ((effects[i] * effects[j]).norm() > t) return false;
    }
  }
  return true;
}

inline bool measures(const ProtocolNode& node, Party p) {
  if (node.is_leaf()) return false;
  if (node.party == p) return true;
  for (const auto& c : node.children) {
    if (measures(c, p)) return true;
  }
  return false;
}

inline void validate_node(const ProtocolNode& node, const LoccProtocol& proto, int alternations,
                          const Party* previous, const std::string& path, ProtocolInfo& info) {
  if (node.is_leaf()) {
    if (!node.children.empty()) throw ProtocolError(path + ": leaf with children");
    if (node.guess.empty()) throw ProtocolError(path + ": leaf without a guess");
    ++info.leaves;
    info.messages = std::max(info.messages, alternations);
    return;
  }
  ++info.internal_nodes;
  const int d = proto.dims.of(node.party);
  if (node.children.size() != node.effects.size()) {
    throw ProtocolError(path + ": " + std::to_string(node.effects.size()) + " effects but " +
                        std::to_string(node.children.size()) + " children");
  }
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (std::size_t k = 0; k < node.effects.size(); ++k) {
    const ComplexMatrix& e = node.effects[k];
    if (e.rows() != d || e.cols() != d) {
      throw ProtocolError(path + ": effect " + std::to_string(k) + " is not " + std::to_string(d) +
                          "x" + std::to_string(d) + " for party " + to_string(node.party));
    }
    if (antihermitian_norm(e) > tol::certification) {
      throw ProtocolError(path + ": effect " + std::to_string(k) + " is not Hermitian");
    }
    if (min_eigenvalue(e) < -tol::certification) {
      throw ProtocolError(path + ": effect " + std::to_string(k) + " is not positive");
    }
    sum += e;
  }
  if ((sum - ComplexMatrix::Identity(d, d)).norm() > tol::certification) {
    throw ProtocolError(path + ": effects do not sum to the identity");
  }
  const bool proj = is_projective(node.effects, tol::certification);
  bool terminal = true;
  for (const auto& c : node.children) terminal = terminal && c.is_leaf();
  info.projective = info.projective && proj;
  if (!proj && !terminal) {
    info.terminal_only_general = false;
    // The other party's statistics do not depend on how a POVM is realized,
    // but a later measurement by the same party would.
    for (const auto& c : node.children) {
      if (measures(c, node.party)) {
        throw ProtocolError(path + ": non-projective measurement by " + std::string(to_string(node.party)) +
                            " is followed by another measurement of the same party");
      }
    }
  }

  const int alt = alternations + ((previous && *previous != node.party) ? 1 : 0);
  if (proto.pattern == Communication::OneWay && alt > 1) {
    throw ProtocolError(path + ": one-way protocol sends a message back");
  }
  for (std::size_t k = 0; k < node.children.size(); ++k) {
    validate_node(node.children[k], proto, alt, &node.party, path + "/" + std::to_string(k), info);
  }
}

}  // namespace detail

/// Checks shapes, positivity, completeness (1e-10) and the declared
/// communication pattern.
inline ProtocolInfo validate_protocol(const LoccProtocol& proto) {
  ProtocolInfo info;
  if (proto.dims.a <= 0 || proto.dims.b <= 0) throw ProtocolError("protocol: bad dimensions");
  detail::validate_node(proto.root, proto, 0, nullptr, "root", info);
  return info;
}

struct ExactEvaluation {
  double success = 0.0;
  std::vector<double> per_state;    ///< P(correct | state)
  std::vector<double> reach_total;  ///< Σ leaf-reach probabilities per state
  double max_trace_error = 0.0;     ///< |Tr ρ − 1| after updates
  double min_update_eigenvalue = 0.0;
};

namespace detail {

struct Branching {
  std::vector<double> probabilities;
  std::vector<ComplexMatrix> updated;  ///< empty matrix when pruned
};

inline constexpr double prune_threshold = 1e-14;

inline Branching branch(const ProtocolNode& node, const ComplexMatrix& rho, BipartiteDims dims,
                        bool need_updates) {
  Branching b;
  for (const auto& e : node.effects) {
    const ComplexMatrix full = embed(e, dims, node.party);
    const double p = std::max(0.0, trace_product(rho, full));
    b.probabilities.push_back(p);
    if (!need_updates || p < prune_threshold) {
      b.updated.emplace_back();
      continue;
    }
    const ComplexMatrix k = embed(psd_sqrt(e), dims, node.party);
    b.updated.push_back(hermitian_part(k * rho * k / p));
  }
  return b;
}

inline bool terminal(const ProtocolNode& node) {
  return std::all_of(node.children.begin(), node.children.end(),
                     [](const ProtocolNode& c) { return c.is_leaf(); });
}

inline void evaluate_node(const ProtocolNode& node, const ComplexMatrix& rho, double weight,
                          BipartiteDims dims, const std::string& truth, double& correct,
                          double& reach, ExactEvaluation& ev) {
  if (node.is_leaf()) {
    reach += weight;
    if (node.guess == truth) correct += weight;
    return;
  }
  const Branching b = branch(node, rho, dims, !terminal(node));
  for (std::size_t k = 0; k < node.children.size(); ++k) {
    const double p = b.probabilities[k];
    if (p < prune_threshold) continue;
    const ProtocolNode& child = node.children[k];
    if (child.is_leaf()) {
      evaluate_node(child, rho, weight * p, dims, truth, correct, reach, ev);
      continue;
    }
    const ComplexMatrix& next = b.updated[k];
    ev.max_trace_error = std::max(ev.max_trace_error, std::abs(real_trace(next) - 1.0));
    ev.min_update_eigenvalue = std::min(ev.min_update_eigenvalue, min_eigenvalue(next));
    evaluate_node(child, next, weight * p, dims, truth, correct, reach, ev);
  }
}

inline void check_compatible(const LoccProtocol& proto, const Ensemble& ensemble) {
  const BipartiteDims d = ensemble.bipartite();
  if (!(d == proto.dims)) {
    throw DimensionError("protocol " + proto.name + " is for " + std::to_string(proto.dims.a) +
                         "x" + std::to_string(proto.dims.b) + ", ensemble is " +
                         std::to_string(d.a) + "x" + std::to_string(d.b));
  }
}

inline void check_guesses(const ProtocolNode& node, const Ensemble& ensemble) {
  if (node.is_leaf()) {
    if (!ensemble.find(node.guess)) {
      throw ProtocolError("leaf guess '" + node.guess + "' names no ensemble state");
    }
    return;
  }
  for (const auto& c : node.children) check_guesses(c, ensemble);
}

}  // namespace detail

/// Exact success probability, propagating each state through the tree with
/// Born probabilities and Lüders updates. Branches below 1e-14 are pruned.
inline ExactEvaluation evaluate_detailed(const LoccProtocol& proto, const Ensemble& ensemble) {
  validate_protocol(proto);
  detail::check_compatible(proto, ensemble);
  detail::check_guesses(proto.root, ensemble);
  ExactEvaluation ev;
  for (std::size_t s = 0; s < ensemble.size(); ++s) {
    double correct = 0.0, reach = 0.0;
    detail::evaluate_node(proto.root, ensemble.state(s).density(), 1.0, proto.dims,
                          ensemble.labels()[s].name, correct, reach, ev);
    ev.per_state.push_back(correct);
    ev.reach_total.push_back(reach);
    ev.success += ensemble.prior(s) * correct;
  }
  return ev;
}

inline double evaluate_exact(const LoccProtocol& proto, const Ensemble& ensemble) {
  return evaluate_detailed(proto, ensemble).success;
}

// ---------------------------------------------------------------------------
// Sampling

struct SampleReport {
  std::string protocol;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> labels;
  std::vector<std::uint64_t> trials;     ///< times each state was prepared
  std::vector<std::uint64_t> successes;  ///< correct guesses per state
  std::vector<double> frequencies;       ///< successes / trials (0 when never prepared)
  double aggregate = 0.0;                ///< prior-weighted mean of frequencies
  double standard_error = 0.0;           ///< √(P(1−P)/shots) at P = aggregate

  bool operator==(const SampleReport&) const = default;
};

namespace detail {

/// Outcome tree for one state with conditional branch probabilities
/// precomputed, so a shot is a walk through cumulative tables.
struct SampleTree {
  struct Node {
    std::vector<double> cumulative;
    std::vector<int> child;  ///< index into nodes, or −1 for a pruned branch
    bool leaf = false;
    bool correct = false;
  };
  std::vector<Node> nodes;

  int build(const ProtocolNode& node, const ComplexMatrix& rho, BipartiteDims dims,
            const std::string& truth) {
    const int id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    if (node.is_leaf()) {
      nodes[id].leaf = true;
      nodes[id].correct = node.guess == truth;
      return id;
    }
    const Branching b = branch(node, rho, dims, !terminal(node));
    double acc = 0.0;
    std::vector<double> cumulative;
    std::vector<int> children;
    for (std::size_t k = 0; k < node.children.size(); ++k) {
      const double p = b.probabilities[k] < prune_threshold ? 0.0 : b.probabilities[k];
      acc += p;
      cumulative.push_back(acc);
      children.push_back(p > 0.0 ? build(node.children[k], node.children[k].is_leaf() ? rho : b.updated[k],
                                         dims, truth)
                                 : -1);
    }
    nodes[id].cumulative = std::move(cumulative);
    nodes[id].child = std::move(children);
    return id;
  }

  bool shoot(Rng& rng) const {
    int at = 0;
    while (!nodes[at].leaf) {
      const Node& n = nodes[at];
      std::size_t k = rng.pick(n.cumulative);
      // never land on a pruned branch
      while (n.child[k] < 0) k = (k + 1) % n.child.size();
      at = n.child[k];
    }
    return nodes[at].correct;
  }
};

}  // namespace detail

/// Seeded simulation: draw the true state from the priors, then each outcome
/// from its Born probability given the updated state. Deterministic per seed
/// (single RNG stream, one shot after another).
inline SampleReport sample(const LoccProtocol& proto, const Ensemble& ensemble, std::uint64_t shots,
                           std::uint64_t seed) {
  if (shots == 0) throw Error("sample: shots must be at least 1");
  validate_protocol(proto);
  detail::check_compatible(proto, ensemble);
  detail::check_guesses(proto.root, ensemble);

  std::vector<detail::SampleTree> trees(ensemble.size());
  for (std::size_t s = 0; s < ensemble.size(); ++s) {
    trees[s].build(proto.root, ensemble.state(s).density(), proto.dims, ensemble.labels()[s].name);
  }
  std::vector<double> prior_cdf;
  double acc = 0.0;
  for (double p : ensemble.priors()) prior_cdf.push_back(acc += p);

  SampleReport r;
  r.protocol = proto.name;
  r.shots = shots;
  r.seed = seed;
  for (const auto& l : ensemble.labels()) r.labels.push_back(l.name);
  r.trials.assign(ensemble.size(), 0);
  r.successes.assign(ensemble.size(), 0);

  Rng rng(seed);
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const std::size_t s = rng.pick(prior_cdf);
    ++r.trials[s];
    if (trees[s].shoot(rng)) ++r.successes[s];
  }
  for (std::size_t s = 0; s < ensemble.size(); ++s) {
    const double f = r.trials[s] ? static_cast<double>(r.successes[s]) / r.trials[s] : 0.0;
    r.frequencies.push_back(f);
    r.aggregate += ensemble.prior(s) * f;
  }
  r.standard_error = std::sqrt(std::max(0.0, r.aggregate * (1.0 - r.aggregate)) / shots);
  return r;
}

// ---------------------------------------------------------------------------
// Built-in protocols

namespace detail {

inline std::vector<ProtocolNode> leaves(std::initializer_list<const char*> names) {
  std::vector<ProtocolNode> out;
  for (const char* n : names) out.push_back(ProtocolNode::leaf(n));
  return out;
}

inline std::vector<Ket> z_basis(int d) {
  std::vector<Ket> out;
  for (int i = 0; i < d; ++i) out.push_back(Ket::basis(d, i));
  return out;
}

inline std::vector<Ket> x_basis2() {
  return {Ket::superposition(2, 0, 1, +1), Ket::superposition(2, 0, 1, -1)};
}

/// {|0±1⟩, |2±3⟩}.
inline std::vector<Ket> x_basis4() {
  return {Ket::superposition(4, 0, 1, +1), Ket::superposition(4, 0, 1, -1),
          Ket::superposition(4, 2, 3, +1), Ket::superposition(4, 2, 3, -1)};
}

}  // namespace detail

/// Alice measures z; Bob measures z on outcome 0 and x on outcome 1.
inline LoccProtocol gv_forward() {
  using namespace detail;
  ProtocolNode root = ProtocolNode::basis(
      Party::A, z_basis(2),
      {ProtocolNode::basis(Party::B, z_basis(2), leaves({"psi_00", "psi_01"})),
       ProtocolNode::basis(Party::B, x_basis2(), leaves({"psi_10", "psi_11"}))});
  return {"gv_forward", {2, 2}, std::move(root), Communication::OneWay, "gv"};
}

/// Bob measures the Breidbart basis and reports the subset S_00 or S_11;
/// Alice's z outcome picks the state within it.
inline LoccProtocol gv_backward_breidbart() {
  using namespace detail;
  const auto [phi0, phi1] = catalog::breidbart_basis();
  ProtocolNode root = ProtocolNode::basis(
      Party::B, {phi0, phi1},
      {ProtocolNode::basis(Party::A, z_basis(2), leaves({"psi_00", "psi_10"})),
       ProtocolNode::basis(Party::A, z_basis(2), leaves({"psi_01", "psi_11"}))});
  return {"gv_backward_breidbart", {2, 2}, std::move(root), Communication::OneWay, "gv"};
}

/// The other optimal choice: Bob's basis at −π/8, reporting S_01 or S_10.
inline LoccProtocol gv_backward_alternate() {
  using namespace detail;
  const double a = -std::numbers::pi / 8;
  const Ket e0{std::cos(a), std::sin(a)};
  const Ket e1{std::sin(a), -std::cos(a)};
  ProtocolNode root = ProtocolNode::basis(
      Party::B, {e0, e1},
      {ProtocolNode::basis(Party::A, z_basis(2), leaves({"psi_00", "psi_11"})),
       ProtocolNode::basis(Party::A, z_basis(2), leaves({"psi_01", "psi_10"}))});
  return {"gv_backward_alternate", {2, 2}, std::move(root), Communication::OneWay, "gv"};
}

/// Bob projects onto {0,1} or {2,3}; Alice measures z or x accordingly; Bob
/// finishes in the basis matching Alice's outcome. Two messages.
inline LoccProtocol twofour_two_way() {
  using namespace detail;
  ComplexMatrix low = ComplexMatrix::Zero(4, 4), high = ComplexMatrix::Zero(4, 4);
  low(0, 0) = low(1, 1) = 1.0;
  high(2, 2) = high(3, 3) = 1.0;
  // Outcomes that the subspace projection has ruled out still need a label.
  ProtocolNode s0 = ProtocolNode::basis(
      Party::A, z_basis(2),
      {ProtocolNode::basis(Party::B, z_basis(4), leaves({"psi_00", "psi_01", "psi_02", "psi_03"})),
       ProtocolNode::basis(Party::B, x_basis4(), leaves({"psi_10", "psi_11", "psi_12", "psi_13"}))});
  ProtocolNode s1 = ProtocolNode::basis(
      Party::A, x_basis2(),
      {ProtocolNode::basis(Party::B, z_basis(4), leaves({"psi_00", "psi_01", "psi_02", "psi_03"})),
       ProtocolNode::basis(Party::B, x_basis4(), leaves({"psi_10", "psi_11", "psi_12", "psi_13"}))});
  ProtocolNode root = ProtocolNode::measure(Party::B, {low, high}, {std::move(s0), std::move(s1)});
  return {"twofour_two_way", {2, 4}, std::move(root), Communication::TwoWay, "twofour"};
}

/// Alice measures the Breidbart basis; Bob measures z on outcome 0 and the
/// x-type basis on outcome 1.
inline LoccProtocol twofour_oneway_ab() {
  using namespace detail;
  const auto [phi0, phi1] = catalog::breidbart_basis();
  ProtocolNode root = ProtocolNode::basis(
      Party::A, {phi0, phi1},
      {ProtocolNode::basis(Party::B, z_basis(4), leaves({"psi_00", "psi_01", "psi_02", "psi_03"})),
       ProtocolNode::basis(Party::B, x_basis4(), leaves({"psi_10", "psi_11", "psi_12", "psi_13"}))});
  return {"twofour_oneway_AB", {2, 4}, std::move(root), Communication::OneWay, "twofour"};
}

/// Bob measures a Breidbart-type basis inside each subspace, which includes
/// the subspace projection: cos(π/8)|0⟩ + sin(π/8)|1⟩, sin(π/8)|0⟩ − cos(π/8)|1⟩
/// and the same on {|2⟩, |3⟩}. Alice then measures z (first subspace) or x
/// (second).
inline LoccProtocol twofour_oneway_ba() {
  using namespace detail;
  const double c = std::cos(std::numbers::pi / 8), s = std::sin(std::numbers::pi / 8);
  const std::vector<Ket> bob{Ket{c, s, 0.0, 0.0}, Ket{s, -c, 0.0, 0.0}, Ket{0.0, 0.0, c, s},
                             Ket{0.0, 0.0, s, -c}};
  ProtocolNode root = ProtocolNode::basis(
      Party::B, bob,
      {ProtocolNode::basis(Party::A, z_basis(2), leaves({"psi_00", "psi_10"})),
       ProtocolNode::basis(Party::A, z_basis(2), leaves({"psi_01", "psi_11"})),
       ProtocolNode::basis(Party::A, x_basis2(), leaves({"psi_02", "psi_12"})),
       ProtocolNode::basis(Party::A, x_basis2(), leaves({"psi_03", "psi_13"}))});
  return {"twofour_oneway_BA", {2, 4}, std::move(root), Communication::OneWay, "twofour"};
}

/// Alice performs the 8-outcome measurement naming a triple S_k; Bob then
/// measures the basis formed by the Bob factors of S_k, which identifies the
/// member.
inline LoccProtocol domino_oneway(const Povm& alice) {
  if (alice.size() != 8 || alice.dim() != 3) {
    throw ProtocolError("domino_oneway: Alice's measurement must have 8 effects on a qutrit");
  }
  const catalog::ProductBasis basis = catalog::domino_basis();
  const catalog::SubsetFamily family = catalog::domino_subsets();
  std::vector<ComplexMatrix> effects;
  std::vector<ProtocolNode> children;
  for (std::size_t k = 0; k < 8; ++k) {
    effects.push_back(alice.effect(k));
    std::vector<Ket> kets;
    std::vector<ProtocolNode> names;
    for (const auto& [i, j] : family.members[k]) {
      kets.push_back(basis.at(i, j).bob);
      names.push_back(ProtocolNode::leaf(StateLabel::indexed(i, j).name));
    }
    children.push_back(ProtocolNode::basis(Party::B, kets, std::move(names)));
  }
  return {"domino_oneway", {3, 3}, ProtocolNode::measure(Party::A, std::move(effects), std::move(children)),
          Communication::OneWay, "domino"};
}

inline LoccProtocol domino_oneway() { return domino_oneway(solve_symmetric_gamma().povm); }

/// Every built-in protocol by name.
inline std::map<std::string, LoccProtocol> builtin_protocols() {
  std::map<std::string, LoccProtocol> out;
  for (auto p : {gv_forward(), gv_backward_breidbart(), gv_backward_alternate(), twofour_two_way(),
                 twofour_oneway_ab(), twofour_oneway_ba(), domino_oneway()}) {
    std::string n = p.name;
    out.emplace(std::move(n), std::move(p));
  }
  return out;
}

}  // namespace locdisc

#endif  // LOCDISC_LOCC_HPP
