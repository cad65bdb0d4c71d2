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

#ifndef LOCDISC_MATRIX_HPP
#define LOCDISC_MATRIX_HPP

/**
 * @file matrix.hpp
 * @brief Dense complex linear algebra for the small operators used throughout
 *        the library: Kronecker products, partial traces, Hermitian
 *        eigendecomposition and positivity tests.
 *
 * Every matrix here is at most a few dozen rows, so everything is dense and
 * dynamically sized. Storage and the self-adjoint eigensolver are Eigen's.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace locdisc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default numerical tolerances.
namespace tol {
/// Exactness expected of constructed states and operators.
inline constexpr double construction = 1e-12;
/// PSD and zero-eigenvalue certification.
inline constexpr double certification = 1e-10;
/// Anti-Hermitian part above which a value is rejected rather than symmetrized.
inline constexpr double hermitian_reject = 1e-8;
/// Anti-Hermitian part accepted by the eigensolver.
inline constexpr double eig_hermitian = 1e-10;
}  // namespace tol

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

class SpectrumError : public Error {
 public:
  using Error::Error;
};

/// The two parties of a bipartite system.
enum class Party { A, B };

inline Party other(Party p) { return p == Party::A ? Party::B : Party::A; }

inline const char* to_string(Party p) { return p == Party::A ? "A" : "B"; }

struct BipartiteDims {
  int a = 1;
  int b = 1;

  int total() const { return a * b; }
  int of(Party p) const { return p == Party::A ? a : b; }
  bool operator==(const BipartiteDims&) const = default;
};

inline bool all_finite(const ComplexMatrix& m) { return m.allFinite(); }

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

/// Reduced operator on `keep`, tracing out the other party. Row-major
/// convention: index = iA * dB + iB.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims,
                                   Party keep) {
  const int n = dims.total();
  if (dims.a <= 0 || dims.b <= 0 || m.rows() != n || m.cols() != n) {
    throw DimensionError("partial_trace: operator is " + std::to_string(m.rows()) +
                         "x" + std::to_string(m.cols()) + ", expected side " +
                         std::to_string(dims.a) + "*" + std::to_string(dims.b));
  }
  if (keep == Party::A) {
    ComplexMatrix out = ComplexMatrix::Zero(dims.a, dims.a);
    for (int i = 0; i < dims.a; ++i)
      for (int j = 0; j < dims.a; ++j)
        for (int k = 0; k < dims.b; ++k) out(i, j) += m(i * dims.b + k, j * dims.b + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dims.b, dims.b);
  for (int i = 0; i < dims.b; ++i)
    for (int j = 0; j < dims.b; ++j)
      for (int k = 0; k < dims.a; ++k) out(i, j) += m(k * dims.b + i, k * dims.b + j);
  return out;
}

/// Lifts a local operator on `party` to the joint space.
inline ComplexMatrix embed(const ComplexMatrix& local, BipartiteDims dims, Party party) {
  if (local.rows() != dims.of(party) || local.cols() != dims.of(party)) {
    throw DimensionError("embed: local operator does not match party dimension");
  }
  return party == Party::A ? kron(local, ComplexMatrix::Identity(dims.b, dims.b))
                           : kron(ComplexMatrix::Identity(dims.a, dims.a), local);
}

/// ‖M − M†‖_F.
inline double antihermitian_norm(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).norm();
}

inline ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return (m + m.adjoint()) / 2.0;
}

/// Rotates `v` so that its first non-negligible component is real positive.
inline void fix_phase(ComplexVector& v) {
  const double scale = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-9 * scale) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      return;
    }
  }
}

struct EigenDecomposition {
  RealVector values;     ///< ascending
  ComplexMatrix vectors; ///< column i pairs with values(i)

  Eigen::Index size() const { return values.size(); }
  ComplexVector vector(Eigen::Index i) const { return vectors.col(i); }

  ComplexMatrix reconstruct() const {
    return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
  }
};

inline void require_hermitian(const ComplexMatrix& m, double threshold, const char* who) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(who) + ": matrix is not square");
  }
  if (!all_finite(m)) throw Error(std::string(who) + ": non-finite entries");
  const double r = antihermitian_norm(m);
  if (r > threshold * std::max(1.0, m.norm())) {
    throw NotHermitianError(std::string(who) + ": anti-Hermitian residual " +
                            std::to_string(r));
  }
}

/// Eigenvalues ascending, eigenvectors orthonormal, each with the
/// first-nonzero-component-positive phase.
inline EigenDecomposition eig_hermitian(const ComplexMatrix& m) {
  require_hermitian(m, tol::eig_hermitian, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) throw SpectrumError("eig_hermitian: no convergence");
  EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index i = 0; i < out.vectors.cols(); ++i) {
    ComplexVector v = out.vectors.col(i);
    fix_phase(v);
    out.vectors.col(i) = v;
  }
  return out;
}

inline RealVector eigenvalues_hermitian(const ComplexMatrix& m) {
  require_hermitian(m, tol::eig_hermitian, "eigenvalues_hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m),
                                                      Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

struct PsdResult {
  bool psd = false;
  double min_eigenvalue = 0.0;

  explicit operator bool() const { return psd; }
};

inline PsdResult is_psd(const ComplexMatrix& m, double tolerance = tol::certification) {
  const RealVector ev = eigenvalues_hermitian(m);
  const double lo = ev.size() ? ev(0) : 0.0;
  return {lo >= -tolerance, lo};
}

inline double min_eigenvalue(const ComplexMatrix& m) { return eigenvalues_hermitian(m)(0); }

/// Unit eigenvector of the single eigenvalue with |λ| ≤ tolerance.
inline ComplexVector zero_eigenvector(const ComplexMatrix& m,
                                      double tolerance = tol::certification) {
  const EigenDecomposition ed = eig_hermitian(m);
  Eigen::Index found = -1;
  int count = 0;
  for (Eigen::Index i = 0; i < ed.size(); ++i) {
    if (std::abs(ed.values(i)) <= tolerance) {
      if (found < 0) found = i;
      ++count;
    }
  }
  if (count == 0) {
    throw SpectrumError("zero_eigenvector: no zero eigenvalue within " +
                        std::to_string(tolerance) + " (smallest |lambda| = " +
                        std::to_string(ed.values.cwiseAbs().minCoeff()) + ")");
  }
  if (count > 1) {
    throw SpectrumError("zero_eigenvector: degenerate zero eigenspace of dimension " +
                        std::to_string(count));
  }
  return ed.vector(found);
}

/// f(M) for Hermitian M via its eigendecomposition; f applied to eigenvalues.
template <typename F>
ComplexMatrix hermitian_function(const ComplexMatrix& m, F&& f) {
  const EigenDecomposition ed = eig_hermitian(m);
  RealVector fv = ed.values.unaryExpr(std::forward<F>(f));
  return ed.vectors * fv.cast<Complex>().asDiagonal() * ed.vectors.adjoint();
}

/// Square root of a PSD matrix; eigenvalues below zero are clipped.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  return hermitian_function(m, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

/// Inverse square root of a positive definite matrix.
inline ComplexMatrix inverse_sqrt(const ComplexMatrix& m) {
  const EigenDecomposition ed = eig_hermitian(m);
  if (ed.values(0) <= 0.0) throw SpectrumError("inverse_sqrt: matrix is not positive definite");
  RealVector fv = ed.values.unaryExpr([](double x) { return 1.0 / std::sqrt(x); });
  return ed.vectors * fv.cast<Complex>().asDiagonal() * ed.vectors.adjoint();
}

/// Σ|λ_i| for Hermitian input.
inline double trace_norm(const ComplexMatrix& m) {
  return eigenvalues_hermitian(m).cwiseAbs().sum();
}

inline double real_trace(const ComplexMatrix& m) { return m.trace().real(); }

/// Re Tr(a b) without forming the product.
inline double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw DimensionError("trace_product: incompatible shapes");
  }
  return (a.transpose().cwiseProduct(b)).sum().real();
}

inline ComplexMatrix outer(const ComplexVector& v) { return v * v.adjoint(); }

inline ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& m) {
  return u * m * u.adjoint();
}

}  // namespace locdisc

#endif  // LOCDISC_MATRIX_HPP
