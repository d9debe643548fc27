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

// Worst-case quadratic min-max instances with closed-form solutions.
//
// The "domino" class is
//
//   f(x, y) = mu1/2 |x|^2 + c x^T M y - mu2/2 |y|^2 - d1 x^T e1 + d2 y^T e1
//
// with M upper bidiagonal (a0 on the diagonal, a1 above it), truncated to
// dim x dim. Zero-initialized span methods can only fill one new coordinate
// per step, while the solution decays geometrically like chi^i, which pins
// the distance to the solution below chi^{t+1} |w*|.
//
// With x_n = c1 chi^n, y_n = c2 chi^n every interior stationarity row holds
// exactly; the x_1 row then forces d1 = 0 and the y_1 row gives
// d2 = c a1 c1. We therefore fix d1 = 0, d2 = 1. The only row the truncated
// profile violates is the last x row, which loses its a1 c y_{dim+1} term.

#ifndef GAMEBOUND_HARD_INSTANCES_HPP
#define GAMEBOUND_HARD_INSTANCES_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gamebound/eigen_solver.hpp"
#include "gamebound/errors.hpp"
#include "gamebound/game.hpp"
#include "gamebound/linalg.hpp"
#include "gamebound/spectral.hpp"

namespace gamebound {

/// Banded Jacobian A = [[mu1 I, c M], [-c M^T, mu2 I]] of a truncated domino
/// game, with O(dim) matrix-vector products.
class DominoOperator {
 public:
  DominoOperator(double mu1, double mu2, double c, double a0, double a1, double d1, double d2,
                 std::size_t dim)
      : mu1_(mu1), mu2_(mu2), c_(c), a0_(a0), a1_(a1), layout_({dim, dim}),
        b_(Vector::Zero(static_cast<Eigen::Index>(2 * dim))) {
    b_[0] = -d1;
    b_[static_cast<Eigen::Index>(dim)] = -d2;
  }

  std::size_t size() const { return layout_.total(); }
  std::size_t dim() const { return layout_.dim(0); }
  const PlayerLayout& layout() const { return layout_; }
  const Vector& offset() const { return b_; }

  Vector apply(const Vector& w) const {
    const auto n = static_cast<Eigen::Index>(dim());
    if (w.size() != 2 * n) throw DimensionError("domino operator: vector length mismatch");
    Vector out(2 * n);
    const double ca0 = c_ * a0_, ca1 = c_ * a1_;
    for (Eigen::Index i = 0; i < n; ++i) {
      double my = ca0 * w[n + i];
      if (i + 1 < n) my += ca1 * w[n + i + 1];
      out[i] = mu1_ * w[i] + my;
      double mtx = ca0 * w[i];
      if (i > 0) mtx += ca1 * w[i - 1];
      out[n + i] = mu2_ * w[n + i] - mtx;
    }
    return out;
  }

  // Diagonal and off-diagonal of the tridiagonal M M^T (without c^2).
  std::pair<std::vector<double>, std::vector<double>> gram_tridiagonal() const {
    const std::size_t n = dim();
    std::vector<double> diag(n, a0_ * a0_ + a1_ * a1_), off(n - 1, a0_ * a1_);
    diag.back() = a0_ * a0_;
    return {diag, off};
  }

  Matrix coupling() const {
    const auto n = static_cast<Eigen::Index>(dim());
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      m(i, i) = a0_;
      if (i + 1 < n) m(i, i + 1) = a1_;
    }
    return m;
  }

  QuadraticGame dense() const {
    const auto n = static_cast<Eigen::Index>(dim());
    Matrix a = Matrix::Zero(2 * n, 2 * n);
    const Matrix m = c_ * coupling();
    a.topLeftCorner(n, n).diagonal().setConstant(mu1_);
    a.bottomRightCorner(n, n).diagonal().setConstant(mu2_);
    a.topRightCorner(n, n) = m;
    a.bottomLeftCorner(n, n) = -m.transpose();
    return QuadraticGame(layout_, std::move(a), b_);
  }

  double mu1() const { return mu1_; }
  double mu2() const { return mu2_; }
  double c() const { return c_; }
  double a0() const { return a0_; }
  double a1() const { return a1_; }

 private:
  double mu1_, mu2_, c_, a0_, a1_;
  PlayerLayout layout_;
  Vector b_;
};

enum class DominoKind { kBasic, kImproved };

inline const char* to_string(DominoKind k) {
  return k == DominoKind::kBasic ? "domino-basic" : "domino-improved";
}

struct DominoInstance {
  DominoKind kind = DominoKind::kBasic;
  double a0 = 0, a1 = 0, c = 0, d1_coeff = 0, d2_coeff = 0, mu1 = 0, mu2 = 0;
  // Construction inputs of the improved instance (unused for basic).
  double mu12 = 0, L12 = 0;
  std::size_t dim = 0;
  double chi = 0, kappa = 0, c1 = 0, c2 = 0;
  DominoOperator op{1, 1, 1, 1, 0, 0, 1, 1};
  Vector x_star, y_star;

  Vector w_star() const {
    Vector w(x_star.size() + y_star.size());
    w << x_star, y_star;
    return w;
  }
  QuadraticGame game() const { return op.dense(); }

  // Exact Jacobian spectrum from the singular values of c M.
  std::vector<Complex> spectrum() const {
    auto [diag, off] = op.gram_tridiagonal();
    const std::vector<double> s2 = symmetric_tridiagonal_eigenvalues(std::move(diag), std::move(off));
    std::vector<Complex> out;
    out.reserve(2 * s2.size());
    const double mid = 0.5 * (mu1 + mu2), half = 0.5 * (mu1 - mu2);
    for (double v : s2) {
      const Complex r = std::sqrt(Complex(half * half - c * c * std::max(0.0, v), 0.0));
      out.push_back(mid + r);
      out.push_back(mid - r);
    }
    return out;
  }

  BlockSpectralBounds block_bounds() const {
    auto [diag, off] = op.gram_tridiagonal();
    const std::vector<double> s2 = symmetric_tridiagonal_eigenvalues(std::move(diag), std::move(off));
    BlockSpectralBounds b;
    b.mu1 = b.L1 = mu1;
    b.mu2 = b.L2 = mu2;
    b.mu12 = std::abs(c) * std::sqrt(std::max(0.0, s2.front()));
    b.L12 = std::abs(c) * std::sqrt(std::max(0.0, s2.back()));
    return b;
  }

  // Size of the single stationarity defect of the truncated profile.
  double truncation_defect() const {
    return std::abs(c * a1 * c2) * std::pow(chi, static_cast<double>(dim + 1));
  }
};

namespace detail {

inline DominoInstance finish_domino(DominoInstance inst) {
  constexpr double d1 = 0.0, d2 = 1.0;
  inst.d1_coeff = d1;
  inst.d2_coeff = d2;
  inst.op = DominoOperator(inst.mu1, inst.mu2, inst.c, inst.a0, inst.a1, d1, d2, inst.dim);
  const auto n = static_cast<Eigen::Index>(inst.dim);
  inst.x_star = Vector::Zero(n);
  inst.y_star = Vector::Zero(n);
  const double ca0 = inst.c * inst.a0, ca1 = inst.c * inst.a1;
  Matrix sys(2, 2);
  Vector rhs(2);
  rhs << d1, -d2;
  if (inst.chi == 0.0) {
    // Diagonal coupling: the solution lives on index 1 only.
    sys << inst.mu1, ca0, ca0, -inst.mu2;
    const Vector xy = solve_refined(sys, rhs);
    inst.x_star[0] = xy[0];
    inst.y_star[0] = xy[1];
    inst.c1 = inst.c2 = 0.0;
    return inst;
  }
  // Boundary rows x_1 and y_1 under x_i = c1 chi^i, y_i = c2 chi^i.
  const double chi = inst.chi;
  sys << inst.mu1 * chi, ca0 * chi + ca1 * chi * chi, ca0 * chi, -inst.mu2 * chi;
  const Vector cc = solve_refined(sys, rhs);
  inst.c1 = cc[0];
  inst.c2 = cc[1];
  for (Eigen::Index i = 0; i < n; ++i) {
    const double p = std::pow(chi, static_cast<double>(i + 1));
    inst.x_star[i] = inst.c1 * p;
    inst.y_star[i] = inst.c2 * p;
  }
  return inst;
}

}  // namespace detail

// a0 = 1, a1 = -1; chi = 1 - 2/(sqrt(kappa^2+1)+1) with kappa = 2c/sqrt(mu1 mu2).
inline DominoInstance domino_basic(double mu1, double mu2, double c, std::size_t dim) {
  if (!(mu1 > 0 && mu2 > 0 && c > 0) || !std::isfinite(mu1 * mu2 * c)) {
    throw ValidationError("domino-basic needs finite mu1, mu2, c > 0");
  }
  if (dim < 8) throw ValidationError("domino instances need dim >= 8");
  DominoInstance inst;
  inst.kind = DominoKind::kBasic;
  inst.mu1 = mu1;
  inst.mu2 = mu2;
  inst.c = c;
  inst.a0 = 1.0;
  inst.a1 = -1.0;
  inst.L12 = 2.0 * c;
  inst.dim = dim;
  inst.kappa = 2.0 * c / std::sqrt(mu1 * mu2);
  const double s = std::sqrt(inst.kappa * inst.kappa + 1.0) + 1.0;
  // Cancellation-free form of 1 - 2/s.
  inst.chi = inst.kappa * inst.kappa / (s * s);
  return detail::finish_domino(std::move(inst));
}

// c = 1, a0 = (L12 + mu12)/2, a1 = (mu12 - L12)/2.
inline DominoInstance domino_improved(double mu1, double mu2, double mu12, double L12, std::size_t dim) {
  if (!(mu1 > 0 && mu2 > 0) || !std::isfinite(mu1 * mu2)) {
    throw ValidationError("domino-improved needs finite mu1, mu2 > 0");
  }
  if (!(L12 > 0) || !(mu12 >= 0) || !std::isfinite(L12)) {
    throw ValidationError("domino-improved needs 0 <= mu12 <= L12 with L12 > 0");
  }
  if (mu12 > L12) throw ValidationError("domino-improved needs mu12 <= L12");
  if (dim < 8) throw ValidationError("domino instances need dim >= 8");
  DominoInstance inst;
  inst.kind = DominoKind::kImproved;
  inst.mu1 = mu1;
  inst.mu2 = mu2;
  inst.mu12 = mu12;
  inst.L12 = L12;
  inst.c = 1.0;
  inst.a0 = 0.5 * (L12 + mu12);
  inst.a1 = 0.5 * (mu12 - L12);
  inst.dim = dim;
  const double dmu = mu1 * mu2 + mu12 * mu12, dl = mu1 * mu2 + L12 * L12;
  inst.kappa = std::sqrt(dl / dmu);
  const double s = std::sqrt(dl) + std::sqrt(dmu);
  inst.chi = (L12 - mu12) * (L12 + mu12) / (s * s);
  return detail::finish_domino(std::move(inst));
}

// chi^{t+1} |w0 - w*| for the zero initialization.
inline double distance_lower_bound(const DominoInstance& inst, std::size_t t) {
  return std::pow(inst.chi, static_cast<double>(t + 1)) * inst.w_star().norm();
}

enum class SpanAssumption { kOneStep, kTwoStep };

// Largest coordinate index (1-based) that may be nonzero after t steps.
inline std::size_t domino_sparsity_horizon(SpanAssumption, std::size_t t) { return t + 1; }

struct PSCLI2Instance {
  double mu1 = 0, L1 = 0, mu2 = 0, L2 = 0, mu12 = 0, L12 = 0;
  std::size_t block_dim = 1;
  QuadraticGame game{PlayerLayout({1}), Matrix::Identity(1, 1), Vector::Zero(1)};

  BlockSpectralBounds bounds() const { return {mu1, mu2, mu12, L1, L2, L12}; }
};

/// The 4x4 pattern [[mu1,0,mu12,0],[0,L1,0,L12],[-mu12,0,mu2,0],[0,-L12,0,L2]]
/// repeated block_dim times, laid out as (x coordinates, y coordinates).
inline PSCLI2Instance pscli2_instance(double mu1, double L1, double mu2, double L2, double mu12,
                                      double L12, std::size_t block_dim = 1,
                                      std::optional<std::uint64_t> random_offset_seed = std::nullopt) {
  for (double v : {mu1, L1, mu2, L2, mu12, L12}) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("pscli2 bounds must be finite and >= 0");
  }
  if (block_dim < 1) throw ValidationError("pscli2 block_dim must be >= 1");
  if (!(mu1 * mu2 + mu12 * mu12 > 0.0) || !(L1 * L2 + L12 * L12 > 0.0)) {
    throw ValidationError("pscli2 instance is singular (zero eigenvalue)");
  }
  const auto k = static_cast<Eigen::Index>(block_dim);
  const Eigen::Index n = 2 * k;
  Matrix a = Matrix::Zero(2 * n, 2 * n);
  for (Eigen::Index r = 0; r < k; ++r) {
    const Eigen::Index lo = 2 * r, hi = 2 * r + 1;
    a(lo, lo) = mu1;
    a(hi, hi) = L1;
    a(n + lo, n + lo) = mu2;
    a(n + hi, n + hi) = L2;
    a(lo, n + lo) = mu12;
    a(hi, n + hi) = L12;
    a(n + lo, lo) = -mu12;
    a(n + hi, hi) = -L12;
  }
  Vector b = Vector::Zero(2 * n);
  if (random_offset_seed) {
    std::mt19937_64 rng(*random_offset_seed);
    std::normal_distribution<double> nd;
    for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = nd(rng);
  }
  PSCLI2Instance inst;
  inst.mu1 = mu1;
  inst.L1 = L1;
  inst.mu2 = mu2;
  inst.L2 = L2;
  inst.mu12 = mu12;
  inst.L12 = L12;
  inst.block_dim = block_dim;
  inst.game = QuadraticGame(PlayerLayout({static_cast<std::size_t>(n), static_cast<std::size_t>(n)}),
                            std::move(a), std::move(b));
  return inst;
}

}  // namespace gamebound

#endif  // GAMEBOUND_HARD_INSTANCES_HPP
