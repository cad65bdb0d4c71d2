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

#ifndef LOCDISC_HELSTROM_HPP
#define LOCDISC_HELSTROM_HPP

/**
 * @file helstrom.hpp
 * @brief Success probabilities and minimum-error optimality certificates.
 *
 * For an ensemble {p_j, ρ_j} and a measurement {π_j} guessing j on outcome j,
 * with Γ = Σ_j p_j ρ_j π_j, the measurement is optimal iff
 *
 *     Γ − p_k ρ_k ⪰ 0                 for every k,            (positivity)
 *     π_i (p_i ρ_i − p_j ρ_j) π_j = 0  for every i ≠ j,        (pairwise)
 *
 * and the pairwise condition implies (Γ − p_j ρ_j) π_j = 0 (stationarity).
 */

#include <algorithm>
#include <cmath>
#include <vector>

#include "locdisc/matrix.hpp"
#include "locdisc/quantum.hpp"

namespace locdisc {

/// Default pass tolerance for optimality certificates.
inline constexpr double default_helstrom_tolerance = 1e-9;

/// Σ_m p_{guess(m)} Tr(ρ_{guess(m)} π_m), clamped to [0, 1]. Not scaled by
/// the ensemble's objective scale.
inline double success_probability(const Ensemble& ensemble, const Povm& povm,
                                  const std::vector<std::size_t>& guess) {
  if (povm.dim() != ensemble.dim()) {
    throw DimensionError("success_probability: POVM acts on dimension " +
                         std::to_string(povm.dim()) + ", ensemble on " +
                         std::to_string(ensemble.dim()));
  }
  if (guess.size() != povm.size()) {
    throw DimensionError("success_probability: one guess per outcome required");
  }
  double total = 0.0;
  for (std::size_t m = 0; m < povm.size(); ++m) {
    const std::size_t s = guess[m];
    if (s >= ensemble.size()) throw Error("success_probability: guess out of range");
    total += ensemble.prior(s) * trace_product(ensemble.state(s).density(), povm.effect(m));
  }
  return std::clamp(total, 0.0, 1.0);
}

/// Identity guess: outcome j names state j.
inline double success_probability(const Ensemble& ensemble, const Povm& povm) {
  if (povm.size() != ensemble.size()) {
    throw DimensionError("success_probability: effect count does not match state count");
  }
  std::vector<std::size_t> guess(povm.size());
  for (std::size_t i = 0; i < guess.size(); ++i) guess[i] = i;
  return success_probability(ensemble, povm, guess);
}

/// Success probability times the ensemble's objective scale.
inline double scaled_success(const Ensemble& ensemble, const Povm& povm) {
  return ensemble.objective_scale() * success_probability(ensemble, povm);
}

/// (8/3) Σ_k (1/8) Tr(σ_k π_k): the probability of naming a domino triple that
/// contains the prepared state when π_k names S_k.
inline double subset_success_probability(const std::vector<ComplexMatrix>& sigma,
                                         const Povm& povm) {
  if (sigma.size() != 8 || povm.size() != 8) {
    throw DimensionError("subset_success_probability: needs 8 operators and 8 effects");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < 8; ++k) {
    if (sigma[k].rows() != 3 || povm.dim() != 3) {
      throw DimensionError("subset_success_probability: operators must be 3x3");
    }
    total += trace_product(sigma[k], povm.effect(k)) / 8.0;
  }
  return 8.0 / 3.0 * total;
}

struct GammaOperator {
  ComplexMatrix gamma;
  double antihermitian_residual = 0.0;  ///< ‖Γ − Γ†‖_F
};

inline GammaOperator gamma_operator(const Ensemble& ensemble, const Povm& povm) {
  if (povm.dim() != ensemble.dim() || povm.size() != ensemble.size()) {
    throw DimensionError("gamma_operator: POVM does not match ensemble");
  }
  const int d = ensemble.dim();
  ComplexMatrix g = ComplexMatrix::Zero(d, d);
  for (std::size_t j = 0; j < ensemble.size(); ++j) {
    g += ensemble.prior(j) * ensemble.state(j).density() * povm.effect(j);
  }
  return {g, antihermitian_norm(g)};
}

struct HelstromReport {
  ComplexMatrix gamma;
  double gamma_antihermitian_residual = 0.0;
  std::vector<double> min_eigenvalues;      ///< λ_min(Γ − p_j ρ_j) per state
  double max_stationarity_residual = 0.0;   ///< max_j ‖(Γ − p_j ρ_j) π_j‖_F
  double max_pairwise_residual = 0.0;       ///< max_{i≠j} ‖π_i (p_i ρ_i − p_j ρ_j) π_j‖_F
  double success = 0.0;                     ///< unscaled success probability
  double tolerance = default_helstrom_tolerance;
  bool pass = false;

  double min_eigenvalue() const {
    return min_eigenvalues.empty() ? 0.0
                                   : *std::min_element(min_eigenvalues.begin(), min_eigenvalues.end());
  }
};

/// Evaluates the positivity, pairwise and stationarity conditions for the
/// identity guess. Γ's Hermiticity is checked, not imposed; the positivity
/// test uses its Hermitian part.
inline HelstromReport check_helstrom_conditions(const Ensemble& ensemble, const Povm& povm,
                                                double tolerance = default_helstrom_tolerance) {
  const auto [gamma, ah] = gamma_operator(ensemble, povm);
  const auto weighted = ensemble.weighted_densities();
  const ComplexMatrix gh = hermitian_part(gamma);

  HelstromReport r;
  r.gamma = gamma;
  r.gamma_antihermitian_residual = ah;
  r.tolerance = tolerance;
  for (std::size_t j = 0; j < weighted.size(); ++j) {
    r.min_eigenvalues.push_back(min_eigenvalue(gh - weighted[j]));
    r.max_stationarity_residual =
        std::max(r.max_stationarity_residual, ((gamma - weighted[j]) * povm.effect(j)).norm());
  }
  for (std::size_t i = 0; i < weighted.size(); ++i) {
    for (std::size_t j = 0; j < weighted.size(); ++j) {
      if (i == j) continue;
      r.max_pairwise_residual = std::max(
          r.max_pairwise_residual,
          (povm.effect(i) * (weighted[i] - weighted[j]) * povm.effect(j)).norm());
    }
  }
  r.success = success_probability(ensemble, povm);
  r.pass = r.min_eigenvalue() >= -tolerance && r.max_stationarity_residual <= tolerance &&
           r.max_pairwise_residual <= tolerance && r.gamma_antihermitian_residual <= tolerance;
  return r;
}

/// ½(1 + ‖p₀ρ₀ − p₁ρ₁‖₁): the optimal success probability for two states.
inline double helstrom_two_state_bound(const ComplexMatrix& rho0, const ComplexMatrix& rho1,
                                       double p0) {
  if (rho0.rows() != rho1.rows() || rho0.cols() != rho1.cols()) {
    throw DimensionError("helstrom_two_state_bound: states differ in dimension");
  }
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw Error("helstrom_two_state_bound: prior outside [0,1]");
  return 0.5 * (1.0 + trace_norm(p0 * rho0 - (1.0 - p0) * rho1));
}

inline double helstrom_two_state_bound(const Ensemble& ensemble) {
  if (ensemble.size() != 2) throw Error("helstrom_two_state_bound: ensemble is not binary");
  return helstrom_two_state_bound(ensemble.state(0).density(), ensemble.state(1).density(),
                                  ensemble.prior(0));
}

}  // namespace locdisc

#endif  // LOCDISC_HELSTROM_HPP
