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

#ifndef LOCDISC_CATALOG_HPP
#define LOCDISC_CATALOG_HPP

/**
 * @file catalog.hpp
 * @brief The product bases, subset families, mixtures, reduced operators and
 *        symmetry unitaries of the locally-distinguishable-product-state
 *        problems:
 *
 *  - "gv": the two-qubit basis {|0⟩|0⟩, |0⟩|1⟩, |1⟩|0+1⟩, |1⟩|0−1⟩};
 *  - "twofour": the 2⊗4 basis built from two copies of it;
 *  - "domino": the nine 3⊗3 domino states.
 *
 * Product states keep their local factors so one-sided orthogonality and
 * guess-function correspondences can be computed rather than tabulated.
 */

#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "locdisc/matrix.hpp"
#include "locdisc/quantum.hpp"

namespace locdisc::catalog {

struct ProductState {
  StateLabel label;
  Ket alice;
  Ket bob;

  Ket joint() const { return alice.tensor(bob); }
  const Ket& factor(Party p) const { return p == Party::A ? alice : bob; }
};

/// Equiprobable orthonormal product basis with structured labels.
class ProductBasis {
 public:
  ProductBasis(std::string name, BipartiteDims dims, std::vector<ProductState> states)
      : name_(std::move(name)), dims_(dims), states_(std::move(states)) {
    for (const auto& s : states_) {
      if (s.alice.dim() != dims_.a || s.bob.dim() != dims_.b) {
        throw DimensionError("ProductBasis: factor dimension mismatch for " + s.label.name);
      }
    }
  }

  const std::string& name() const { return name_; }
  BipartiteDims dims() const { return dims_; }
  std::size_t size() const { return states_.size(); }
  const std::vector<ProductState>& states() const { return states_; }

  std::size_t index_of(int i, int j) const {
    for (std::size_t k = 0; k < states_.size(); ++k) {
      if (states_[k].label.index == std::make_pair(i, j)) return k;
    }
    throw Error("ProductBasis " + name_ + ": no state psi_" + std::to_string(i) +
                std::to_string(j));
  }
  const ProductState& at(int i, int j) const { return states_[index_of(i, j)]; }

  Ensemble ensemble() const {
    std::vector<State> st;
    std::vector<StateLabel> labels;
    for (const auto& s : states_) {
      st.emplace_back(s.joint());
      labels.push_back(s.label);
    }
    return Ensemble::uniform({dims_.a, dims_.b}, std::move(st), std::move(labels));
  }

  /// Gram matrix of the joint states.
  ComplexMatrix gram() const {
    const auto n = static_cast<Eigen::Index>(states_.size());
    ComplexMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) g(i, j) = states_[i].joint().inner(states_[j].joint());
    return g;
  }

 private:
  std::string name_;
  BipartiteDims dims_;
  std::vector<ProductState> states_;
};

namespace detail {
inline Ket k(int dim, int i) { return Ket::basis(dim, i); }
inline Ket plus(int dim, int i, int j) { return Ket::superposition(dim, i, j, +1); }
inline Ket minus(int dim, int i, int j) { return Ket::superposition(dim, i, j, -1); }
inline ProductState ps(int i, int j, Ket a, Ket b) {
  return {StateLabel::indexed(i, j), std::move(a), std::move(b)};
}
}  // namespace detail

inline ProductBasis gv_basis() {
  using namespace detail;
  return ProductBasis("gv", {2, 2},
                      {ps(0, 0, k(2, 0), k(2, 0)), ps(0, 1, k(2, 0), k(2, 1)),
                       ps(1, 0, k(2, 1), plus(2, 0, 1)), ps(1, 1, k(2, 1), minus(2, 0, 1))});
}

inline Ensemble gv_ensemble() { return gv_basis().ensemble(); }

/// cos(π/8)|0⟩ + sin(π/8)|1⟩ and sin(π/8)|0⟩ − cos(π/8)|1⟩.
inline std::pair<Ket, Ket> breidbart_basis() {
  const double c = std::cos(std::numbers::pi / 8), s = std::sin(std::numbers::pi / 8);
  return {Ket{c, s}, Ket{s, -c}};
}

inline ProductBasis twofour_basis() {
  using namespace detail;
  return ProductBasis(
      "twofour", {2, 4},
      {ps(0, 0, k(2, 0), k(4, 0)), ps(0, 1, k(2, 0), k(4, 1)),
       ps(1, 0, k(2, 1), plus(4, 0, 1)), ps(1, 1, k(2, 1), minus(4, 0, 1)),
       ps(0, 2, plus(2, 0, 1), k(4, 2)), ps(0, 3, plus(2, 0, 1), k(4, 3)),
       ps(1, 2, minus(2, 0, 1), plus(4, 2, 3)), ps(1, 3, minus(2, 0, 1), minus(4, 2, 3))});
}

inline Ensemble twofour_ensemble() { return twofour_basis().ensemble(); }

inline ProductBasis domino_basis() {
  using namespace detail;
  return ProductBasis("domino", {3, 3},
                      {ps(0, 0, k(3, 0), minus(3, 0, 1)), ps(0, 1, k(3, 0), plus(3, 0, 1)),
                       ps(0, 2, minus(3, 0, 1), k(3, 2)), ps(1, 0, plus(3, 1, 2), k(3, 0)),
                       ps(1, 1, k(3, 1), k(3, 1)), ps(1, 2, plus(3, 0, 1), k(3, 2)),
                       ps(2, 0, minus(3, 1, 2), k(3, 0)), ps(2, 1, k(3, 2), minus(3, 1, 2)),
                       ps(2, 2, k(3, 2), plus(3, 1, 2))});
}

inline Ensemble domino_ensemble() { return domino_basis().ensemble(); }

/// Named subsets of a product basis. When `distinguishing_side` is set, the
/// members of every subset are pairwise orthogonal on that side.
struct SubsetFamily {
  std::string name;
  std::optional<Party> distinguishing_side;
  std::vector<std::string> subset_names;
  std::vector<std::vector<std::pair<int, int>>> members;

  std::size_t size() const { return members.size(); }
};

/// Largest |G − I| entry over the one-sided Gram matrices of every subset.
inline double one_sided_orthogonality_residual(const SubsetFamily& family,
                                               const ProductBasis& basis) {
  if (!family.distinguishing_side) {
    throw Error("one_sided_orthogonality_residual: family " + family.name +
                " has no distinguishing side");
  }
  const Party side = *family.distinguishing_side;
  double worst = 0.0;
  for (const auto& subset : family.members) {
    for (std::size_t x = 0; x < subset.size(); ++x) {
      for (std::size_t y = 0; y < subset.size(); ++y) {
        const Ket& u = basis.at(subset[x].first, subset[x].second).factor(side);
        const Ket& v = basis.at(subset[y].first, subset[y].second).factor(side);
        const double target = x == y ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(u.inner(v) - target));
      }
    }
  }
  return worst;
}

/// S_00, S_01, S_10, S_11: one state from each pair {ψ_i0, ψ_i1}, told apart
/// by Alice's z measurement.
inline SubsetFamily gv_subsets() {
  return {"gv-pairs",
          Party::A,
          {"S_00", "S_01", "S_10", "S_11"},
          {{{0, 0}, {1, 0}}, {{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}, {{0, 1}, {1, 1}}}};
}

/// The two subspace classes of the 2⊗4 basis, told apart by Bob's
/// {|0⟩⟨0|+|1⟩⟨1|, |2⟩⟨2|+|3⟩⟨3|} projection.
inline SubsetFamily twofour_subspace_subsets() {
  return {"twofour-subspaces",
          std::nullopt,
          {"S_0", "S_1"},
          {{{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}}};
}

/// S_0..S_7: the domino triples perfectly distinguishable on Bob's side.
inline SubsetFamily domino_subsets() {
  return {"domino-triples",
          Party::B,
          {"S_0", "S_1", "S_2", "S_3", "S_4", "S_5", "S_6", "S_7"},
          {{{0, 0}, {0, 1}, {0, 2}},
           {{0, 0}, {0, 1}, {1, 2}},
           {{1, 0}, {2, 1}, {2, 2}},
           {{2, 0}, {2, 1}, {2, 2}},
           {{1, 0}, {1, 1}, {0, 2}},
           {{1, 0}, {1, 1}, {1, 2}},
           {{2, 0}, {1, 1}, {0, 2}},
           {{2, 0}, {1, 1}, {1, 2}}}};
}

/// A total map from a party's classical outcome to a row (candidate) index.
struct GuessFunction {
  std::vector<int> values;

  int operator()(std::size_t outcome) const { return values.at(outcome); }
  std::size_t domain() const { return values.size(); }

  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
    os << ')';
    return os.str();
  }

  bool operator==(const GuessFunction&) const = default;
};

/// All codomain^domain functions, lexicographic with the first outcome most
/// significant.
inline std::vector<GuessFunction> all_guess_functions(int domain, int codomain) {
  std::vector<GuessFunction> out;
  std::vector<int> v(static_cast<std::size_t>(domain), 0);
  while (true) {
    out.push_back({v});
    int pos = domain - 1;
    while (pos >= 0 && ++v[pos] == codomain) v[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

/// For a subset whose members are orthogonal on the classical side, the
/// guess function g(b) = row index of the member whose classical factor
/// overlaps |b⟩. Throws if members from different rows share an outcome.
inline GuessFunction subset_guess_function(const ProductBasis& basis,
                                           const std::vector<std::pair<int, int>>& subset,
                                           Party classical) {
  const int d = basis.dims().of(classical);
  std::vector<int> g(static_cast<std::size_t>(d), -1);
  for (const auto& [i, j] : subset) {
    const Ket& f = basis.at(i, j).factor(classical);
    for (int b = 0; b < d; ++b) {
      if (std::abs(f[b]) <= tol::construction) continue;
      if (g[b] >= 0 && g[b] != i) {
        throw Error("subset_guess_function: outcome " + std::to_string(b) +
                    " overlaps members from rows " + std::to_string(g[b]) + " and " +
                    std::to_string(i));
      }
      g[b] = i;
    }
  }
  for (int b = 0; b < d; ++b) {
    if (g[b] < 0) throw Error("subset_guess_function: outcome " + std::to_string(b) + " unused");
  }
  return {g};
}

/// ρ_j = (1/3) Σ_k |ψ_jk⟩⟨ψ_jk| for the three domino rows, equiprobable.
inline Ensemble domino_row_mixtures() {
  const ProductBasis basis = domino_basis();
  std::vector<State> rows;
  std::vector<StateLabel> labels;
  for (int j = 0; j < 3; ++j) {
    ComplexMatrix rho = ComplexMatrix::Zero(9, 9);
    for (int k = 0; k < 3; ++k) rho += basis.at(j, k).joint().projector() / 3.0;
    rows.emplace_back(DensityOperator(rho));
    labels.push_back(StateLabel::named("rho_" + std::to_string(j)));
  }
  return Ensemble::uniform({3, 3}, std::move(rows), std::move(labels));
}

struct SymmetryUnitaries {
  ComplexMatrix u;  ///< −|0⟩⟨0| + |1⟩⟨1| + |2⟩⟨2|
  ComplexMatrix v;  ///< |0⟩⟨2| + |1⟩⟨1| + |2⟩⟨0|
};

inline SymmetryUnitaries symmetry_unitaries() {
  ComplexMatrix u = ComplexMatrix::Identity(3, 3);
  u(0, 0) = -1.0;
  ComplexMatrix v = ComplexMatrix::Zero(3, 3);
  v(0, 2) = 1.0;
  v(1, 1) = 1.0;
  v(2, 0) = 1.0;
  return {u, v};
}

/// σ_k = Tr_B[(1/3) Σ_{ψ∈S_k} |ψ⟩⟨ψ|] for the eight domino triples.
inline std::vector<ComplexMatrix> sigma_operators() {
  const ProductBasis basis = domino_basis();
  const SubsetFamily family = domino_subsets();
  std::vector<ComplexMatrix> out;
  for (const auto& subset : family.members) {
    ComplexMatrix m = ComplexMatrix::Zero(9, 9);
    for (const auto& [i, j] : subset) m += basis.at(i, j).joint().projector() / 3.0;
    out.push_back(partial_trace(m, basis.dims(), Party::A));
  }
  return out;
}

/// The same eight operators from their closed forms: σ_0 and σ_4 written
/// out, the rest obtained by the listed U, V conjugations.
inline std::vector<ComplexMatrix> sigma_closed_forms() {
  const auto [u, v] = symmetry_unitaries();
  const ComplexMatrix p0 = Ket::basis(3, 0).projector();
  const ComplexMatrix p1 = Ket::basis(3, 1).projector();
  const ComplexMatrix m01 = Ket::superposition(3, 0, 1, -1).projector();
  const ComplexMatrix p12 = Ket::superposition(3, 1, 2, +1).projector();

  const ComplexMatrix s0 = 2.0 / 3.0 * p0 + 1.0 / 3.0 * m01;
  const ComplexMatrix s4 = (m01 + p1 + p12) / 3.0;
  const ComplexMatrix vu = v * u;
  const ComplexMatrix uv = u * v;
  return {s0,
          conjugate(u, s0),
          conjugate(vu, s0),
          conjugate(v, s0),
          s4,
          conjugate(u, s4),
          conjugate(uv, s4),
          conjugate(v, s4)};
}

/// One effective operator A_g per guess function g.
struct GuessOperator {
  GuessFunction guess;
  ComplexMatrix op;
};

/// ⟨b| X |b'⟩ with the bra/ket acting on `classical`; the result acts on the
/// other party.
inline ComplexMatrix classical_block(const ComplexMatrix& x, BipartiteDims dims, Party classical,
                                     int b, int bp) {
  if (classical == Party::A) return x.block(b * dims.b, bp * dims.b, dims.b, dims.b);
  ComplexMatrix out(dims.a, dims.a);
  for (int k = 0; k < dims.a; ++k)
    for (int l = 0; l < dims.a; ++l) out(k, l) = x(k * dims.b + b, l * dims.b + bp);
  return out;
}

/// Effective operators for a measurement in which `classical` is measured in
/// its computational basis {|b⟩} and each outcome b is read as one of the
/// candidate states `candidates[b]`. For every guess function g, picking
/// position g(b) in candidates[b],
///
///     A_g = Σ_b p_c ⟨b| ρ_c |b⟩,   c = candidates[b][g(b)],
///
/// an operator on the other party. A measurement {π_g} on that party then
/// succeeds with probability Σ_g Tr(A_g π_g).
///
/// Every state must be block diagonal in {|b⟩} on the classical side.
inline std::vector<GuessOperator> effective_guess_operators(
    const Ensemble& ensemble, Party classical,
    const std::vector<std::vector<std::size_t>>& candidates) {
  const BipartiteDims dims = ensemble.bipartite();
  const int d = dims.of(classical);
  if (static_cast<int>(candidates.size()) != d) {
    throw DimensionError("effective_guess_operators: need one candidate list per outcome");
  }
  std::size_t width = 0;
  for (const auto& c : candidates) {
    if (c.empty()) throw Error("effective_guess_operators: empty candidate list");
    if (width && c.size() != width) {
      throw Error("effective_guess_operators: candidate lists differ in length");
    }
    width = c.size();
    for (std::size_t s : c) {
      if (s >= ensemble.size()) throw Error("effective_guess_operators: candidate out of range");
    }
  }

  const auto weighted = ensemble.weighted_densities();
  for (std::size_t s = 0; s < weighted.size(); ++s) {
    for (int b = 0; b < d; ++b) {
      for (int bp = 0; bp < d; ++bp) {
        if (b == bp) continue;
        const double off = classical_block(weighted[s], dims, classical, b, bp).norm();
        if (off > tol::certification) {
          throw Error("effective_guess_operators: state " + ensemble.labels()[s].name +
                      " is not diagonal on the classical side (block " + std::to_string(b) +
                      "," + std::to_string(bp) + " has norm " + std::to_string(off) + ")");
        }
      }
    }
  }

  std::vector<GuessOperator> out;
  for (auto& g : all_guess_functions(d, static_cast<int>(width))) {
    const int other_dim = dims.of(other(classical));
    ComplexMatrix a = ComplexMatrix::Zero(other_dim, other_dim);
    for (int b = 0; b < d; ++b) {
      a += classical_block(weighted[candidates[b][g(b)]], dims, classical, b, b);
    }
    out.push_back({std::move(g), hermitian_part(a)});
  }
  return out;
}

/// Normalizes effective operators into an ensemble: states A_g / Tr A_g,
/// priors Tr A_g / Σ Tr A, and objective scale Σ Tr A, so that the scaled
/// success probability equals Σ_g Tr(A_g π_g).
inline Ensemble guess_problem_ensemble(const std::vector<GuessOperator>& ops) {
  double total = 0.0;
  for (const auto& g : ops) total += real_trace(g.op);
  std::vector<State> states;
  std::vector<double> priors;
  std::vector<StateLabel> labels;
  for (const auto& g : ops) {
    const double t = real_trace(g.op);
    if (t <= 0.0) throw Error("guess_problem_ensemble: operator with zero trace");
    states.emplace_back(DensityOperator(g.op / t));
    priors.push_back(t / total);
    labels.push_back(StateLabel::named("g" + g.guess.to_string()));
  }
  // renormalize priors to absorb rounding in the trace sum
  const double psum = std::accumulate(priors.begin(), priors.end(), 0.0);
  for (double& p : priors) p /= psum;
  const int d = static_cast<int>(ops.front().op.rows());
  return Ensemble({d}, std::move(states), std::move(priors), std::move(labels), total);
}

/// gv with Alice read in the z basis: outcome i selects the pair {ψ_i0, ψ_i1}.
inline std::vector<GuessOperator> gv_bob_guess_operators() {
  const ProductBasis basis = gv_basis();
  return effective_guess_operators(
      basis.ensemble(), Party::A,
      {{basis.index_of(0, 0), basis.index_of(0, 1)}, {basis.index_of(1, 0), basis.index_of(1, 1)}});
}

/// Domino rows with Bob read in the computational basis: 27 operators on
/// Alice's qutrit.
inline std::vector<GuessOperator> domino_alice_guess_operators() {
  return effective_guess_operators(domino_row_mixtures(), Party::B, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
}

/// τ_0 = ½(|0⟩⟨0| + |+⟩⟨+|) and τ_1 = ½(|1⟩⟨1| + |−⟩⟨−|), equiprobable: Bob's
/// task of assigning the gv state to S_00 or S_11.
inline Ensemble gv_bob_tau() {
  const ComplexMatrix t0 =
      (Ket::basis(2, 0).projector() + Ket::superposition(2, 0, 1, +1).projector()) / 2.0;
  const ComplexMatrix t1 =
      (Ket::basis(2, 1).projector() + Ket::superposition(2, 0, 1, -1).projector()) / 2.0;
  return Ensemble::uniform({2}, {DensityOperator(t0), DensityOperator(t1)},
                           {StateLabel::named("tau_0"), StateLabel::named("tau_1")});
}

/// σ_0..σ_7 with priors 1/8 and objective scale 8/3, so the scaled success
/// probability is the subset-assignment probability (8/3)·(1/8)·Σ Tr(σ_k π_k).
inline Ensemble domino_sigma_ensemble() {
  std::vector<State> states;
  std::vector<StateLabel> labels;
  int k = 0;
  for (const auto& s : sigma_operators()) {
    states.emplace_back(DensityOperator(s));
    labels.push_back(StateLabel::named("sigma_" + std::to_string(k++)));
  }
  std::vector<double> priors(8, 1.0 / 8.0);
  return Ensemble({3}, std::move(states), std::move(priors), std::move(labels), 8.0 / 3.0);
}

/// Alice-reduced row mixtures of the 2⊗4 basis, Tr_B[(1/4) Σ_j |ψ_ij⟩⟨ψ_ij|]:
/// what Alice must tell apart when she measures first.
inline Ensemble twofour_alice_rows() {
  const ProductBasis basis = twofour_basis();
  std::vector<State> rows;
  std::vector<StateLabel> labels;
  for (int i = 0; i < 2; ++i) {
    ComplexMatrix m = ComplexMatrix::Zero(8, 8);
    for (int j = 0; j < 4; ++j) m += basis.at(i, j).joint().projector() / 4.0;
    rows.emplace_back(DensityOperator(partial_trace(m, basis.dims(), Party::A)));
    labels.push_back(StateLabel::named("row_" + std::to_string(i)));
  }
  return Ensemble::uniform({2}, std::move(rows), std::move(labels));
}

}  // namespace locdisc::catalog

#endif  // LOCDISC_CATALOG_HPP
