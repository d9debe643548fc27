// Copyright 2026 The gamebound Authors
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

#ifndef GAMEBOUND_LINALG_HPP
#define GAMEBOUND_LINALG_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "gamebound/errors.hpp"

namespace gamebound {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;

// Max absolute row sum.
inline double norm_inf(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

inline bool all_finite(const Matrix& a) { return a.allFinite(); }
inline bool all_finite(const Vector& v) { return v.allFinite(); }

/// Dense LU factorization with partial pivoting.
///
/// A pivot whose magnitude falls below `1e-12 * ||A||_inf` is treated as
/// exact singularity; the factorization throws SingularJacobianError naming
/// the (0-based) elimination step at which it happened.
class LuFactorization {
 public:
  static constexpr double kPivotThreshold = 1e-12;

  explicit LuFactorization(const Matrix& a) : lu_(a), perm_(a.rows()) {
    if (a.rows() != a.cols()) {
      throw DimensionError("LU factorization needs a square matrix");
    }
    const auto n = static_cast<std::size_t>(a.rows());
    const double tol = kPivotThreshold * norm_inf(a);
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t piv = k;
      double best = std::abs(lu_(k, k));
      for (std::size_t i = k + 1; i < n; ++i) {
        const double v = std::abs(lu_(i, k));
        if (v > best) {
          best = v;
          piv = i;
        }
      }
      if (!(best > tol)) throw SingularJacobianError(k, best);
      if (piv != k) {
        lu_.row(k).swap(lu_.row(piv));
        std::swap(perm_[k], perm_[piv]);
      }
      min_pivot_ = k == 0 ? best : std::min(min_pivot_, best);
      max_pivot_ = std::max(max_pivot_, best);
      const double inv = 1.0 / lu_(k, k);
      for (std::size_t i = k + 1; i < n; ++i) {
        const double f = lu_(i, k) * inv;
        lu_(i, k) = f;
        if (f == 0.0) continue;
        for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
      }
    }
  }

  Vector solve(const Vector& rhs) const {
    const auto n = static_cast<std::size_t>(lu_.rows());
    if (static_cast<std::size_t>(rhs.size()) != n) {
      throw DimensionError("LU solve: right-hand side length mismatch");
    }
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[perm_[i]];
    for (std::size_t i = 0; i < n; ++i) {
      double s = x[i];
      for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
      x[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double s = x[ii];
      for (std::size_t j = ii + 1; j < n; ++j) s -= lu_(ii, j) * x[j];
      x[ii] = s / lu_(ii, ii);
    }
    return x;
  }

  // Ratio of extreme pivot magnitudes; a cheap conditioning proxy.
  double pivot_ratio() const { return min_pivot_ > 0 ? max_pivot_ / min_pivot_ : INFINITY; }

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  double min_pivot_ = 0.0;
  double max_pivot_ = 0.0;
};

/// Solves `a x = rhs` by LU plus one step of iterative refinement.
inline Vector solve_refined(const Matrix& a, const Vector& rhs, double* pivot_ratio = nullptr) {
  LuFactorization lu(a);
  Vector x = lu.solve(rhs);
  const Vector r = rhs - a * x;
  x += lu.solve(r);
  if (pivot_ratio) *pivot_ratio = lu.pivot_ratio();
  return x;
}

// Forward substitution for a lower triangular system with unit diagonal.
inline Matrix solve_unit_lower(const Matrix& lower, const Matrix& rhs) {
  const Eigen::Index n = lower.rows();
  Matrix x = rhs;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      const double l = lower(i, j);
      if (l != 0.0) x.row(i) -= l * x.row(j);
    }
  }
  return x;
}

}  // namespace gamebound

#endif  // GAMEBOUND_LINALG_HPP
