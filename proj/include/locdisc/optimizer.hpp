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

#ifndef LOCDISC_OPTIMIZER_HPP
#define LOCDISC_OPTIMIZER_HPP

/**
 * @file optimizer.hpp
 * @brief Optimal minimum-error measurements.
 *
 * Three routes:
 *  - iterate_min_error(): a general fixed-point iteration for any ensemble;
 *  - qubit_projective_grid_search(): exhaustive scan of real qubit bases,
 *    used as an oracle;
 *  - solve_symmetric_gamma() / build_domino_povm(): the U,V-symmetric
 *    construction of the optimal measurement assigning the domino state to
 *    one of the triples S_0..S_7, certified afterwards against all 27 guess
 *    functions by verify_guess_function_optimality().
 *
 * Two normalizations of the domino subset problem appear. With priors 1/8 on
 * σ_k, Γ = (1/8) Σ σ_k π_k and the success probability is (8/3) Tr Γ. With the
 * effective operators A_g = (1/3) σ_k, Γ' = Σ A_g π_g = (8/3) Γ. Conversions
 * between the two always go through domino_scale.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "locdisc/catalog.hpp"
#include "locdisc/helstrom.hpp"
#include "locdisc/matrix.hpp"
#include "locdisc/quantum.hpp"
#include "locdisc/random.hpp"

namespace locdisc {

/// Factor between the prior-1/8 σ formulation and the A_g formulation.
inline constexpr double domino_scale = 8.0 / 3.0;

// ---------------------------------------------------------------------------
// Iterative solver

struct IterateOptions {
  double tolerance = default_helstrom_tolerance;
  int max_iter = 20000;
  int check_every = 10;
};

struct OptimizerTrace {
  int iterations = 0;
  std::vector<double> success;  ///< unscaled success after each accepted step
  bool converged = false;
  bool stalled = false;         ///< damping underflowed before convergence
  double max_decrease = 0.0;    ///< largest drop between consecutive entries
  HelstromReport final_report;
};

struct IterateResult {
  Povm povm;
  OptimizerTrace trace;
};

/// I/n for each of n outcomes.
inline Povm uniform_povm(int dim, std::size_t n) {
  std::vector<ComplexMatrix> e(n, ComplexMatrix::Identity(dim, dim) / static_cast<double>(n));
  return Povm::from_matrices(e);
}

/// Full-rank random POVM: S^{-1/2} X_j S^{-1/2} with X_j = G_j G_j† Ginibre.
inline Povm random_povm(int dim, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ComplexMatrix> x;
  ComplexMatrix s = ComplexMatrix::Zero(dim, dim);
  for (std::size_t j = 0; j < n; ++j) {
    const ComplexMatrix g = random_ginibre(dim, dim, rng);
    x.push_back(g * g.adjoint());
    s += x.back();
  }
  const ComplexMatrix si = inverse_sqrt(hermitian_part(s));
  for (auto& m : x) m = hermitian_part(si * m * si);
  return Povm::from_matrices(x);
}

/// Fixed-point iteration for minimum-error discrimination.
///
/// Each step replaces π_j by G^{-1/2} M_j π_j M_j G^{-1/2} with
/// M_j = I + t·p_jρ_j/s and G = Σ_j M_j π_j M_j, which keeps Σπ_j = I and
/// π_j ⪰ 0. Large t approaches the undamped update ρ̃_j π_j ρ̃_j; to first
/// order in t the objective never decreases, so t is halved until a step
/// does not lower the success probability and doubled again after each
/// accepted step. Fixed points satisfy the optimality conditions; the loop
/// stops once check_helstrom_conditions() passes at the requested tolerance.
inline IterateResult iterate_min_error(const Ensemble& ensemble, const Povm& init,
                                       const IterateOptions& opt = {}) {
  if (init.dim() != ensemble.dim() || init.size() != ensemble.size()) {
    throw DimensionError("iterate_min_error: initial POVM does not match ensemble");
  }
  const auto weighted = ensemble.weighted_densities();
  const int d = ensemble.dim();
  const std::size_t n = weighted.size();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);

  double scale = 0.0;
  for (const auto& w : weighted) scale = std::max(scale, eigenvalues_hermitian(w).maxCoeff());
  if (!(scale > 0.0)) throw Error("iterate_min_error: all weighted states vanish");

  std::vector<ComplexMatrix> pi;
  for (const auto& e : init.effects()) pi.push_back(e.matrix());

  auto objective = [&](const std::vector<ComplexMatrix>& effects) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += trace_product(weighted[j], effects[j]);
    return s;
  };

  constexpr double t_max = 1e6;
  constexpr double t_min = 1e-12;
  constexpr double slack = 1e-14;

  OptimizerTrace trace;
  double current = objective(pi);
  trace.success.push_back(current);
  double t = t_max;
  std::vector<ComplexMatrix> next(n), x(n);

  auto certified = [&] {
    trace.final_report =
        check_helstrom_conditions(ensemble, Povm::from_matrices(pi), opt.tolerance);
    return trace.final_report.pass;
  };

  if (certified()) {
    trace.converged = true;
    return {Povm::from_matrices(pi), trace};
  }

  for (int it = 1; it <= opt.max_iter; ++it) {
    bool accepted = false;
    while (t >= t_min) {
      ComplexMatrix g = ComplexMatrix::Zero(d, d);
      for (std::size_t j = 0; j < n; ++j) {
        const ComplexMatrix m = id + (t / scale) * weighted[j];
        x[j] = m * pi[j] * m.adjoint();
        g += x[j];
      }
      const ComplexMatrix gi = inverse_sqrt(hermitian_part(g));
      ComplexMatrix sum = ComplexMatrix::Zero(d, d);
      for (std::size_t j = 0; j < n; ++j) {
        next[j] = hermitian_part(gi * x[j] * gi);
        sum += next[j];
      }
      // G is ill-conditioned when t is large and some p_jρ_j is rank
      // deficient; a second normalization by the (near-identity) sum keeps
      // completeness at rounding level.
      if ((sum - id).norm() > 1e-14) {
        const ComplexMatrix si = inverse_sqrt(hermitian_part(sum));
        for (std::size_t j = 0; j < n; ++j) next[j] = hermitian_part(si * next[j] * si);
      }
      const double value = objective(next);
      if (value >= current - slack) {
        trace.max_decrease = std::max(trace.max_decrease, current - value);
        current = value;
        pi.swap(next);
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    trace.iterations = it;
    if (!accepted) {
      trace.stalled = true;
      break;
    }
    trace.success.push_back(current);
    t = std::min(2.0 * t, t_max);
    if (it % opt.check_every == 0 && certified()) {
      trace.converged = true;
      return {Povm::from_matrices(pi), trace};
    }
  }
  trace.converged = certified();
  return {Povm::from_matrices(pi), trace};
}

inline IterateResult iterate_min_error(const Ensemble& ensemble, const IterateOptions& opt = {}) {
  return iterate_min_error(ensemble, uniform_povm(ensemble.dim(), ensemble.size()), opt);
}

// ---------------------------------------------------------------------------
// Qubit grid search

/// Real qubit basis at polar angle θ: cos θ|0⟩ + sin θ|1⟩, sin θ|0⟩ − cos θ|1⟩.
inline Povm qubit_basis_povm(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return Povm::projective({Ket{c, s}, Ket{s, -c}});
}

struct GridPoint {
  double angle = 0.0;
  double value = 0.0;  ///< scaled by the ensemble's objective scale
  std::size_t guess0 = 0;
  std::size_t guess1 = 0;
};

struct GridSearchResult {
  GridPoint best;
  std::vector<GridPoint> per_assignment;  ///< best point for each assignment
};

/// Scans `resolution` equally spaced angles covering [−π/2, π/2] inclusive;
/// outcome 0 names `guess0`, outcome 1 names `guess1`. With no assignments
/// supplied every ordered pair of distinct states is tried.
inline GridSearchResult qubit_projective_grid_search(
    const Ensemble& ensemble, std::vector<std::pair<std::size_t, std::size_t>> assignments,
    int resolution) {
  if (ensemble.dim() != 2) throw DimensionError("qubit_projective_grid_search: not a qubit ensemble");
  if (resolution < 8) throw Error("qubit_projective_grid_search: resolution must be at least 8");
  if (assignments.empty()) {
    for (std::size_t a = 0; a < ensemble.size(); ++a)
      for (std::size_t b = 0; b < ensemble.size(); ++b)
        if (a != b) assignments.emplace_back(a, b);
  }
  const auto weighted = ensemble.weighted_densities();
  GridSearchResult out;
  out.best.value = -1.0;
  for (const auto& [g0, g1] : assignments) {
    if (g0 >= ensemble.size() || g1 >= ensemble.size()) {
      throw Error("qubit_projective_grid_search: assignment out of range");
    }
    GridPoint best{0.0, -1.0, g0, g1};
    for (int k = 0; k < resolution; ++k) {
      const double angle =
          -std::numbers::pi / 2 + std::numbers::pi * static_cast<double>(k) / (resolution - 1);
      const double c = std::cos(angle), s = std::sin(angle);
      ComplexVector e0(2), e1(2);
      e0 << c, s;
      e1 << s, -c;
      const double v = ensemble.objective_scale() *
                       (std::real(e0.dot(weighted[g0] * e0)) + std::real(e1.dot(weighted[g1] * e1)));
      if (v > best.value) best = {angle, v, g0, g1};
    }
    out.per_assignment.push_back(best);
    if (best.value > out.best.value) out.best = best;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symmetric construction for the domino triples

/// Γ = p(|0⟩⟨0| + |2⟩⟨2|) + q|1⟩⟨1|, the general U- and V-invariant operator.
inline ComplexMatrix symmetric_gamma(double p, double q) {
  ComplexMatrix g = ComplexMatrix::Zero(3, 3);
  g(0, 0) = p;
  g(1, 1) = q;
  g(2, 2) = p;
  return g;
}

struct SymmetricGammaSolution {
  double p = 0.0;
  double q = 0.0;
  ComplexMatrix gamma;
  Povm povm = uniform_povm(3, 8);
  std::array<double, 8> weights{};
  std::array<double, 8> min_eigenvalues{};  ///< λ_min(Γ − σ_k/8)
  double completeness_residual = 0.0;
  double success = 0.0;                      ///< (8/3)(2p + q)
  int newton_iterations = 0;
};

/// Zero eigenvector of Γ − σ_k/8 for each k; rank-one effects are weighted
/// projectors onto these, one weight per symmetry orbit {0..3}, {4..7}, fitted
/// by least squares to Σ π_k = I.
inline SymmetricGammaSolution build_domino_povm(double p, double q,
                                                double zero_tol = tol::certification) {
  const auto sigma = catalog::sigma_operators();
  const ComplexMatrix gamma = symmetric_gamma(p, q);
  std::array<ComplexMatrix, 8> proj;
  SymmetricGammaSolution sol;
  sol.p = p;
  sol.q = q;
  sol.gamma = gamma;
  for (std::size_t k = 0; k < 8; ++k) {
    const ComplexMatrix m = gamma - sigma[k] / 8.0;
    sol.min_eigenvalues[k] = min_eigenvalue(m);
    proj[k] = outer(zero_eigenvector(m, zero_tol));
  }
  ComplexMatrix orbit0 = proj[0] + proj[1] + proj[2] + proj[3];
  ComplexMatrix orbit1 = proj[4] + proj[5] + proj[6] + proj[7];

  // 9 real equations: 3 diagonal entries, real and imaginary parts of 3
  // upper off-diagonal entries.
  Eigen::Matrix<double, 9, 2> a;
  Eigen::Matrix<double, 9, 1> b;
  int row = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      a(row, 0) = orbit0(i, j).real();
      a(row, 1) = orbit1(i, j).real();
      b(row) = i == j ? 1.0 : 0.0;
      ++row;
      if (i != j) {
        a(row, 0) = orbit0(i, j).imag();
        a(row, 1) = orbit1(i, j).imag();
        b(row) = 0.0;
        ++row;
      }
    }
  }
  const Eigen::Vector2d w = a.colPivHouseholderQr().solve(b);
  const double residual = (a * w - b).norm();
  if (residual > tol::certification || w(0) < 0.0 || w(1) < 0.0) {
    throw Error("build_domino_povm: weight system infeasible (residual " + std::to_string(residual) +
                ", weights " + std::to_string(w(0)) + ", " + std::to_string(w(1)) + ")");
  }
  std::vector<ComplexMatrix> effects;
  for (std::size_t k = 0; k < 8; ++k) {
    sol.weights[k] = k < 4 ? w(0) : w(1);
    effects.push_back(sol.weights[k] * proj[k]);
  }
  sol.povm = Povm::from_matrices(effects);
  sol.completeness_residual = validate_povm(sol.povm).completeness_residual;
  sol.success = domino_scale * gamma.trace().real();
  return sol;
}

/// Solves λ_min(Γ − σ_0/8) = 0 and λ_min(Γ − σ_4/8) = 0 for (p, q) by damped
/// Newton from (0.11, 0.09), with the Jacobian from first-order eigenvalue
/// perturbation, then builds the measurement. Both operators must come out
/// PSD with a one-dimensional kernel.
inline SymmetricGammaSolution solve_symmetric_gamma(double p0 = 0.11, double q0 = 0.09) {
  const auto sigma = catalog::sigma_operators();
  const ComplexMatrix s0 = sigma[0] / 8.0;
  const ComplexMatrix s4 = sigma[4] / 8.0;

  struct Eval {
    Eigen::Vector2d f;
    Eigen::Matrix2d jac;
  };
  auto eval = [&](double p, double q) {
    Eval e;
    const ComplexMatrix* ops[2] = {&s0, &s4};
    for (int r = 0; r < 2; ++r) {
      const EigenDecomposition ed = eig_hermitian(symmetric_gamma(p, q) - *ops[r]);
      const ComplexVector v = ed.vector(0);
      e.f(r) = ed.values(0);
      e.jac(r, 0) = std::norm(v(0)) + std::norm(v(2));
      e.jac(r, 1) = std::norm(v(1));
    }
    return e;
  };

  double p = p0, q = q0;
  Eval cur = eval(p, q);
  int it = 0;
  for (; it < 100 && cur.f.norm() > 1e-16; ++it) {
    const Eigen::Vector2d step = cur.jac.fullPivLu().solve(-cur.f);
    double lambda = 1.0;
    bool moved = false;
    while (lambda > 1e-8) {
      const Eval trial = eval(p + lambda * step(0), q + lambda * step(1));
      if (trial.f.norm() < cur.f.norm()) {
        p += lambda * step(0);
        q += lambda * step(1);
        cur = trial;
        moved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!moved) break;
  }
  if (cur.f.norm() > 1e-13) {
    throw Error("solve_symmetric_gamma: root finder failed, residual " +
                std::to_string(cur.f.norm()));
  }
  for (const ComplexMatrix* s : {&s0, &s4}) {
    const RealVector ev = eigenvalues_hermitian(symmetric_gamma(p, q) - *s);
    if (ev(0) < -tol::certification || ev(1) <= tol::certification) {
      throw Error("solve_symmetric_gamma: converged off the rank-two PSD branch");
    }
  }
  SymmetricGammaSolution sol = build_domino_povm(p, q);
  sol.newton_iterations = it;
  return sol;
}

/// U- or V-conjugation permutes the effect set: max over effects of the
/// distance to the closest conjugated effect.
inline double covariance_residual(const Povm& povm, const ComplexMatrix& unitary) {
  double worst = 0.0;
  for (const auto& e : povm.effects()) {
    const ComplexMatrix c = conjugate(unitary, e.matrix());
    double best = std::numeric_limits<double>::infinity();
    for (const auto& f : povm.effects()) best = std::min(best, (c - f.matrix()).norm());
    worst = std::max(worst, best);
  }
  return worst;
}

struct GuessCheckEntry {
  catalog::GuessFunction guess;
  double min_eigenvalue = 0.0;  ///< λ_min(Γ' − A_g)
  bool kernel = false;          ///< |λ_min| ≤ kernel_tol
};

struct GuessOptimalityReport {
  std::vector<GuessCheckEntry> entries;
  int psd_failures = 0;
  int kernel_hits = 0;
  double min_non_kernel = std::numeric_limits<double>::infinity();
  double psd_tol = tol::certification;
  double kernel_tol = 1e-8;
  double positive_margin = 1e-6;
  bool pass = false;
};

/// Checks Γ' − A_g ⪰ 0 for every guess function, with Γ' = (8/3)Γ the
/// A_g-normalized multiplier. Passes when nothing fails positivity, exactly
/// `expected_kernels` functions have a kernel, and every other minimum is
/// above `positive_margin`.
inline GuessOptimalityReport verify_guess_function_optimality(
    const ComplexMatrix& gamma, const std::vector<catalog::GuessOperator>& ops,
    int expected_kernels = 8, double psd_tol = tol::certification) {
  const ComplexMatrix scaled = domino_scale * gamma;
  GuessOptimalityReport r;
  r.psd_tol = psd_tol;
  for (const auto& g : ops) {
    const double lo = min_eigenvalue(scaled - g.op);
    GuessCheckEntry e{g.guess, lo, std::abs(lo) <= r.kernel_tol};
    if (lo < -psd_tol) ++r.psd_failures;
    if (e.kernel) {
      ++r.kernel_hits;
    } else {
      r.min_non_kernel = std::min(r.min_non_kernel, lo);
    }
    r.entries.push_back(std::move(e));
  }
  r.pass = r.psd_failures == 0 && r.kernel_hits == expected_kernels &&
           r.min_non_kernel > r.positive_margin;
  return r;
}

// ---------------------------------------------------------------------------
// One-way bounds by reduction

struct ReductionResult {
  std::string name;
  double two_state_bound = 0.0;  ///< Helstrom bound of the binary reduction
  double iterative = 0.0;        ///< iterative optimum of the full reduction
  bool iterative_converged = false;
  int iterations = 0;
};

struct OneWayAnalyses {
  ReductionResult gv_backward;  ///< gv, Bob measures first
  ReductionResult twofour_ab;   ///< 2⊗4, Alice measures first
  ReductionResult twofour_ba;   ///< 2⊗4, Bob measures first
  SymmetricGammaSolution domino;

  double domino_success() const { return domino.success; }
  double domino_error() const { return 1.0 - domino.success; }
};

namespace detail {

/// Binary reduction of a 4-function pair problem: 2A_(0,0) vs 2A_(1,1).
inline double pair_two_state_bound(const std::vector<catalog::GuessOperator>& ops) {
  const catalog::GuessOperator* g00 = nullptr;
  const catalog::GuessOperator* g11 = nullptr;
  for (const auto& g : ops) {
    if (g.guess.values == std::vector<int>{0, 0}) g00 = &g;
    if (g.guess.values == std::vector<int>{1, 1}) g11 = &g;
  }
  if (!g00 || !g11) throw Error("pair_two_state_bound: missing constant guess functions");
  const double t0 = real_trace(g00->op), t1 = real_trace(g11->op);
  return helstrom_two_state_bound(g00->op / t0, g11->op / t1, t0 / (t0 + t1)) * (t0 + t1);
}

/// One subspace class of the 2⊗4 basis as a two-qubit problem: Alice rotated
/// to her computational basis, Bob restricted to the class's subspace.
inline catalog::ProductBasis twofour_class_basis(int cls) {
  const catalog::ProductBasis full = catalog::twofour_basis();
  ComplexMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  h /= std::sqrt(2.0);
  std::vector<catalog::ProductState> states;
  for (int i = 0; i < 2; ++i) {
    for (int j = 2 * cls; j < 2 * cls + 2; ++j) {
      const catalog::ProductState& s = full.at(i, j);
      const Ket alice = cls == 0 ? s.alice : s.alice.transformed(h);
      const Ket bob(s.bob.amplitudes().segment(2 * cls, 2));
      states.push_back({s.label, alice, bob});
    }
  }
  return catalog::ProductBasis("twofour-S_" + std::to_string(cls), {2, 2}, std::move(states));
}

inline std::vector<catalog::GuessOperator> twofour_class_guess_operators(int cls) {
  const catalog::ProductBasis basis = twofour_class_basis(cls);
  const int j0 = 2 * cls;
  return catalog::effective_guess_operators(
      basis.ensemble(), Party::A,
      {{basis.index_of(0, j0), basis.index_of(0, j0 + 1)},
       {basis.index_of(1, j0), basis.index_of(1, j0 + 1)}});
}

inline ReductionResult iterate_reduction(std::string name, const Ensemble& ensemble,
                                         double two_state, const IterateOptions& opt) {
  const IterateResult res = iterate_min_error(ensemble, opt);
  return {std::move(name), two_state, scaled_success(ensemble, res.povm), res.trace.converged,
          res.trace.iterations};
}

}  // namespace detail

/// Upper bounds on one-way success for each problem, via reduction to the
/// simpler subset-assignment problems.
inline OneWayAnalyses oneway_bound_analyses(const IterateOptions& opt = {}) {
  OneWayAnalyses out;

  const auto gv_ops = catalog::gv_bob_guess_operators();
  out.gv_backward = detail::iterate_reduction("gv backward (Bob first)",
                                              catalog::guess_problem_ensemble(gv_ops),
                                              detail::pair_two_state_bound(gv_ops), opt);

  const Ensemble rows = catalog::twofour_alice_rows();
  out.twofour_ab = detail::iterate_reduction("twofour A->B (Alice first)", rows,
                                             helstrom_two_state_bound(rows), opt);

  // Bob's subspace projection tells which class the state is in, each with
  // probability 1/2; within a class the problem is the gv backward one.
  ReductionResult ba{"twofour B->A (Bob first)", 0.0, 0.0, true, 0};
  for (int cls = 0; cls < 2; ++cls) {
    const auto ops = detail::twofour_class_guess_operators(cls);
    const Ensemble e = catalog::guess_problem_ensemble(ops);
    const double bound = detail::pair_two_state_bound(ops);
    const ReductionResult r = detail::iterate_reduction("", e, bound, opt);
    ba.two_state_bound += 0.5 * r.two_state_bound;
    ba.iterative += 0.5 * r.iterative;
    ba.iterative_converged = ba.iterative_converged && r.iterative_converged;
    ba.iterations += r.iterations;
  }
  out.twofour_ba = ba;

  out.domino = solve_symmetric_gamma();
  return out;
}

}  // namespace locdisc

#endif  // LOCDISC_OPTIMIZER_HPP
