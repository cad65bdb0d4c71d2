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

#ifndef LOCDISC_QUANTUM_HPP
#define LOCDISC_QUANTUM_HPP

/**
 * @file quantum.hpp
 * @brief Kets, density operators, ensembles with priors, POVMs and the Born
 *        rule.
 */

#include <cmath>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "locdisc/matrix.hpp"

namespace locdisc {

/// A unit vector. Inputs within 1e-6 of unit norm are renormalized, anything
/// further off is rejected.
class Ket {
 public:
  static constexpr double renormalize_window = 1e-6;

  explicit Ket(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() == 0) throw DimensionError("Ket: empty amplitude vector");
    if (!amps_.allFinite()) throw Error("Ket: non-finite amplitude");
    const double n = amps_.norm();
    if (std::abs(n - 1.0) > renormalize_window) {
      throw Error("Ket: norm " + std::to_string(n) + " is not 1");
    }
    amps_ /= n;
  }

  Ket(std::initializer_list<Complex> amplitudes)
      : Ket(Eigen::Map<const ComplexVector>(amplitudes.begin(),
                                            static_cast<Eigen::Index>(amplitudes.size()))) {}

  /// |i⟩ in dimension `dim`.
  static Ket basis(int dim, int i) {
    if (i < 0 || i >= dim) throw DimensionError("Ket::basis: index out of range");
    ComplexVector v = ComplexVector::Zero(dim);
    v(i) = 1.0;
    return Ket(std::move(v));
  }

  /// (|i⟩ + sign·|j⟩)/√2, the |i±j⟩ shorthand.
  static Ket superposition(int dim, int i, int j, int sign) {
    if (i < 0 || i >= dim || j < 0 || j >= dim || i == j) {
      throw DimensionError("Ket::superposition: bad indices");
    }
    ComplexVector v = ComplexVector::Zero(dim);
    v(i) = 1.0 / std::sqrt(2.0);
    v(j) = (sign >= 0 ? 1.0 : -1.0) / std::sqrt(2.0);
    return Ket(std::move(v));
  }

  int dim() const { return static_cast<int>(amps_.size()); }
  const ComplexVector& amplitudes() const { return amps_; }
  Complex operator[](int i) const { return amps_(i); }

  Complex inner(const Ket& other) const { return amps_.dot(other.amps_); }
  ComplexMatrix projector() const { return outer(amps_); }
  Ket tensor(const Ket& other) const { return Ket(kron(amps_, other.amps_)); }
  Ket transformed(const ComplexMatrix& u) const { return Ket(u * amps_); }

 private:
  ComplexVector amps_;
};

/// A Hermitian matrix. Construction symmetrizes away rounding-level
/// anti-Hermitian parts and rejects anything above 1e-8.
class HermitianOperator {
 public:
  HermitianOperator() = default;

  explicit HermitianOperator(const ComplexMatrix& m) {
    require_hermitian(m, tol::hermitian_reject, "HermitianOperator");
    m_ = hermitian_part(m);
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  operator const ComplexMatrix&() const { return m_; }

 private:
  ComplexMatrix m_;
};

/// Hermitian, PSD within 1e-10 and unit trace within 1e-10.
class DensityOperator {
 public:
  explicit DensityOperator(const ComplexMatrix& m) : op_(m) {
    const double t = real_trace(op_.matrix());
    if (std::abs(t - 1.0) > tol::certification) {
      throw Error("DensityOperator: trace " + std::to_string(t) + " is not 1");
    }
    const PsdResult r = is_psd(op_.matrix(), tol::certification);
    if (!r) {
      throw Error("DensityOperator: negative eigenvalue " + std::to_string(r.min_eigenvalue));
    }
  }

  explicit DensityOperator(const Ket& k) : op_(k.projector()) {}

  int dim() const { return op_.dim(); }
  const ComplexMatrix& matrix() const { return op_.matrix(); }

 private:
  HermitianOperator op_;
};

/// A structured state identifier. Catalog states keep their (i, j) index so
/// reports can name them psi_ij.
struct StateLabel {
  std::string name;
  std::optional<std::pair<int, int>> index;

  static StateLabel indexed(int i, int j) {
    return {"psi_" + std::to_string(i) + std::to_string(j), std::make_pair(i, j)};
  }
  static StateLabel named(std::string n) { return {std::move(n), std::nullopt}; }

  bool operator==(const StateLabel&) const = default;
};

/// An ensemble member: either a pure state kept as a Ket or a mixed state.
class State {
 public:
  State(Ket k) : v_(std::move(k)) {}                // NOLINT
  State(DensityOperator d) : v_(std::move(d)) {}    // NOLINT

  bool is_pure() const { return std::holds_alternative<Ket>(v_); }
  const Ket& ket() const { return std::get<Ket>(v_); }

  int dim() const {
    return is_pure() ? std::get<Ket>(v_).dim() : std::get<DensityOperator>(v_).dim();
  }

  ComplexMatrix density() const {
    return is_pure() ? std::get<Ket>(v_).projector() : std::get<DensityOperator>(v_).matrix();
  }

 private:
  std::variant<Ket, DensityOperator> v_;
};

/// States with priors over a (possibly multipartite) space.
///
/// `objective_scale` multiplies success probabilities when the ensemble is a
/// normalized stand-in for an unnormalized family of operators (for example
/// effective guess operators), so reported objectives stay in the original
/// units. It is 1 for ordinary ensembles.
class Ensemble {
 public:
  Ensemble(std::vector<int> dims, std::vector<State> states, std::vector<double> priors,
           std::vector<StateLabel> labels = {}, double objective_scale = 1.0)
      : dims_(std::move(dims)),
        states_(std::move(states)),
        priors_(std::move(priors)),
        labels_(std::move(labels)),
        scale_(objective_scale) {
    if (dims_.empty()) throw DimensionError("Ensemble: no subsystem dimensions");
    int d = 1;
    for (int x : dims_) {
      if (x <= 0) throw DimensionError("Ensemble: non-positive subsystem dimension");
      d *= x;
    }
    if (states_.empty()) throw Error("Ensemble: no states");
    if (priors_.size() != states_.size()) {
      throw DimensionError("Ensemble: " + std::to_string(priors_.size()) + " priors for " +
                           std::to_string(states_.size()) + " states");
    }
    double total = 0.0;
    for (double p : priors_) {
      if (!(p >= 0.0)) throw Error("Ensemble: negative prior");
      total += p;
    }
    if (std::abs(total - 1.0) > tol::construction) {
      throw Error("Ensemble: priors sum to " + std::to_string(total));
    }
    for (const auto& s : states_) {
      if (s.dim() != d) throw DimensionError("Ensemble: state dimension does not match dims");
    }
    if (labels_.empty()) {
      for (std::size_t i = 0; i < states_.size(); ++i) {
        labels_.push_back(StateLabel::named("state_" + std::to_string(i)));
      }
    } else if (labels_.size() != states_.size()) {
      throw DimensionError("Ensemble: label count does not match state count");
    }
    if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw Error("Ensemble: bad objective scale");
  }

  /// Equal priors.
  static Ensemble uniform(std::vector<int> dims, std::vector<State> states,
                          std::vector<StateLabel> labels = {}) {
    std::vector<double> priors(states.size(), 1.0 / static_cast<double>(states.size()));
    return Ensemble(std::move(dims), std::move(states), std::move(priors), std::move(labels));
  }

  const std::vector<int>& dims() const { return dims_; }
  int dim() const { return states_.front().dim(); }
  std::size_t size() const { return states_.size(); }
  const std::vector<State>& states() const { return states_; }
  const State& state(std::size_t i) const { return states_.at(i); }
  const std::vector<double>& priors() const { return priors_; }
  double prior(std::size_t i) const { return priors_.at(i); }
  const std::vector<StateLabel>& labels() const { return labels_; }
  double objective_scale() const { return scale_; }

  BipartiteDims bipartite() const {
    if (dims_.size() != 2) throw DimensionError("Ensemble: not bipartite");
    return {dims_[0], dims_[1]};
  }

  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i].name == name) return i;
    }
    return std::nullopt;
  }

  /// p_j ρ_j for every member.
  std::vector<ComplexMatrix> weighted_densities() const {
    std::vector<ComplexMatrix> out;
    out.reserve(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i) out.push_back(priors_[i] * states_[i].density());
    return out;
  }

 private:
  std::vector<int> dims_;
  std::vector<State> states_;
  std::vector<double> priors_;
  std::vector<StateLabel> labels_;
  double scale_ = 1.0;
};

/// Positive effects summing to the identity. Construction only checks shape;
/// use validate_povm() for the positivity and completeness report.
class Povm {
 public:
  explicit Povm(std::vector<HermitianOperator> effects) : effects_(std::move(effects)) {
    if (effects_.empty()) throw Error("Povm: no effects");
    for (const auto& e : effects_) {
      if (e.dim() != effects_.front().dim()) throw DimensionError("Povm: mixed effect dimensions");
    }
  }

  static Povm from_matrices(const std::vector<ComplexMatrix>& ms) {
    std::vector<HermitianOperator> e;
    e.reserve(ms.size());
    for (const auto& m : ms) e.emplace_back(m);
    return Povm(std::move(e));
  }

  /// Rank-one projectors onto the given orthonormal kets.
  static Povm projective(const std::vector<Ket>& basis) {
    std::vector<ComplexMatrix> ms;
    for (const auto& k : basis) ms.push_back(k.projector());
    return from_matrices(ms);
  }

  int dim() const { return effects_.front().dim(); }
  std::size_t size() const { return effects_.size(); }
  const std::vector<HermitianOperator>& effects() const { return effects_; }
  const ComplexMatrix& effect(std::size_t i) const { return effects_.at(i).matrix(); }

 private:
  std::vector<HermitianOperator> effects_;
};

struct PovmReport {
  double completeness_residual = 0.0;  ///< ‖Σπ_j − I‖_F
  double min_effect_eigenvalue = 0.0;
  double tolerance = tol::certification;
  bool pass = false;
};

inline PovmReport validate_povm(const Povm& povm, double tolerance = tol::certification) {
  ComplexMatrix sum = ComplexMatrix::Zero(povm.dim(), povm.dim());
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& e : povm.effects()) {
    sum += e.matrix();
    lo = std::min(lo, min_eigenvalue(e.matrix()));
  }
  PovmReport r;
  r.completeness_residual = (sum - ComplexMatrix::Identity(povm.dim(), povm.dim())).norm();
  r.min_effect_eigenvalue = lo;
  r.tolerance = tolerance;
  r.pass = r.completeness_residual <= tolerance && lo >= -tolerance;
  return r;
}

/// Tr(ρ π), clamped to [0, 1].
inline double born_probability(const ComplexMatrix& rho, const ComplexMatrix& effect) {
  if (rho.rows() != effect.rows() || rho.cols() != effect.cols()) {
    throw DimensionError("born_probability: state is " + std::to_string(rho.rows()) +
                         "-dimensional, effect is " + std::to_string(effect.rows()));
  }
  return std::clamp(trace_product(rho, effect), 0.0, 1.0);
}

inline double born_probability(const DensityOperator& rho, const HermitianOperator& effect) {
  return born_probability(rho.matrix(), effect.matrix());
}

inline std::vector<double> outcome_distribution(const ComplexMatrix& rho, const Povm& povm) {
  std::vector<double> out;
  out.reserve(povm.size());
  for (const auto& e : povm.effects()) out.push_back(born_probability(rho, e.matrix()));
  return out;
}

inline std::vector<double> outcome_distribution(const DensityOperator& rho, const Povm& povm) {
  return outcome_distribution(rho.matrix(), povm);
}

}  // namespace locdisc

#endif  // LOCDISC_QUANTUM_HPP
