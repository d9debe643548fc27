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

// Spectra of game Jacobians, block spectral bounds and condition numbers.

#ifndef GAMEBOUND_SPECTRAL_HPP
#define GAMEBOUND_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gamebound/eigen_solver.hpp"
#include "gamebound/errors.hpp"
#include "gamebound/game.hpp"
#include "gamebound/linalg.hpp"

namespace gamebound {

struct ComplexSpectrum {
  std::vector<Complex> eigenvalues;
  double max_modulus = 0.0;
  double min_modulus = 0.0;

  static ComplexSpectrum from(std::vector<Complex> ev) {
    ComplexSpectrum s;
    s.eigenvalues = std::move(ev);
    if (!s.eigenvalues.empty()) {
      s.max_modulus = 0.0;
      s.min_modulus = INFINITY;
      for (const Complex& z : s.eigenvalues) {
        const double m = std::abs(z);
        s.max_modulus = std::max(s.max_modulus, m);
        s.min_modulus = std::min(s.min_modulus, m);
      }
    }
    return s;
  }
};

inline ComplexSpectrum eigenvalues(const Matrix& a) {
  return ComplexSpectrum::from(hessenberg_qr_eigenvalues(a));
}

// Real eigenvalues of a symmetric matrix in ascending order.
inline std::vector<double> symmetric_eigenvalues(const Matrix& s) {
  return symmetric_eigenvalues_dense(s);
}

struct BlockSpectralBounds {
  double mu1 = 0, mu2 = 0, mu12 = 0, L1 = 0, L2 = 0, L12 = 0;
};

namespace detail {

inline std::pair<double, double> modulus_range(const std::vector<double>& ev) {
  double lo = INFINITY, hi = 0.0;
  for (double v : ev) {
    lo = std::min(lo, std::abs(v));
    hi = std::max(hi, std::abs(v));
  }
  return {lo, hi};
}

}  // namespace detail

/// mu_i, L_i are the extreme moduli of sigma(S_i); mu12, L12 the square roots
/// of the extreme eigenvalues of the Gram matrix of M12, taken on the smaller
/// side so that rank deficiency shows up as mu12 = 0.
inline BlockSpectralBounds block_spectral_bounds(const QuadraticGame& game) {
  if (game.players() != 2) {
    throw UnsupportedArityError("block spectral bounds need a 2-player game, got " +
                                std::to_string(game.players()));
  }
  BlockSpectralBounds b;
  std::tie(b.mu1, b.L1) = detail::modulus_range(symmetric_eigenvalues(game.block(0, 0)));
  std::tie(b.mu2, b.L2) = detail::modulus_range(symmetric_eigenvalues(game.block(1, 1)));
  const Matrix m = game.block(0, 1);
  const Matrix gram = m.rows() <= m.cols() ? Matrix(m * m.transpose()) : Matrix(m.transpose() * m);
  const std::vector<double> g = symmetric_eigenvalues(gram);
  b.mu12 = std::sqrt(std::max(0.0, g.front()));
  b.L12 = std::sqrt(std::max(0.0, g.back()));
  return b;
}

// kappa = max|sigma(A)| / min|sigma(A)|.
inline double kappa_from_spectrum(const ComplexSpectrum& s) {
  if (s.eigenvalues.empty() || !(s.min_modulus > 1e-10 * s.max_modulus)) {
    throw UndefinedKappaError("Jacobian spectrum contains (numerically) zero: min modulus " +
                              std::to_string(s.min_modulus));
  }
  return s.max_modulus / s.min_modulus;
}

inline double kappa_jacobian(const QuadraticGame& game) {
  return kappa_from_spectrum(eigenvalues(game.jacobian()));
}

struct SpectralCase {
  double delta_mu = 0.0;
  double delta_L = 0.0;
  Complex lambda_mu_plus, lambda_mu_minus, lambda_L_plus, lambda_L_minus;
};

// Roots of (mu1 - z)(mu2 - z) + mu12^2 = 0, and the same for L.
inline SpectralCase spectral_case(const BlockSpectralBounds& b) {
  SpectralCase sc;
  sc.delta_mu = (b.mu1 - b.mu2) * (b.mu1 - b.mu2) - 4.0 * b.mu12 * b.mu12;
  sc.delta_L = (b.L1 - b.L2) * (b.L1 - b.L2) - 4.0 * b.L12 * b.L12;
  const double hm = 0.5 * (b.mu1 - b.mu2), hl = 0.5 * (b.L1 - b.L2);
  const Complex rm = std::sqrt(Complex(hm * hm - b.mu12 * b.mu12, 0.0));
  const Complex rl = std::sqrt(Complex(hl * hl - b.L12 * b.L12, 0.0));
  const double cm = 0.5 * (b.mu1 + b.mu2), cl = 0.5 * (b.L1 + b.L2);
  sc.lambda_mu_plus = cm + rm;
  sc.lambda_mu_minus = cm - rm;
  sc.lambda_L_plus = cl + rl;
  sc.lambda_L_minus = cl - rl;
  return sc;
}

enum class Table1Cell {
  kBothNegative,    // exact
  kMuNonNegative,   // lower bound
  kLNonNegative,    // lower bound
  kBothNonNegative  // lower bound
};

inline const char* to_string(Table1Cell c) {
  switch (c) {
    case Table1Cell::kBothNegative: return "both-negative";
    case Table1Cell::kMuNonNegative: return "delta-mu-nonnegative";
    case Table1Cell::kLNonNegative: return "delta-L-nonnegative";
    case Table1Cell::kBothNonNegative: return "both-nonnegative";
  }
  return "?";
}

struct Table1Kappa {
  double kappa = 0.0;
  Table1Cell cell = Table1Cell::kBothNegative;
  // True when the cell gives kappa exactly rather than a lower bound.
  bool exact() const { return cell == Table1Cell::kBothNegative; }
};

inline Table1Kappa kappa_table1(const BlockSpectralBounds& b) {
  const double dmu = (b.mu1 - b.mu2) * (b.mu1 - b.mu2) - 4.0 * b.mu12 * b.mu12;
  const double dl = (b.L1 - b.L2) * (b.L1 - b.L2) - 4.0 * b.L12 * b.L12;
  const double prod_mu = b.mu1 * b.mu2 + b.mu12 * b.mu12;
  const double prod_l = b.L1 * b.L2 + b.L12 * b.L12;
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0)) throw DegenerateBoundsError(std::string("zero denominator: ") + what);
    return v;
  };
  Table1Kappa out;
  if (dmu < 0 && dl < 0) {
    out.cell = Table1Cell::kBothNegative;
    out.kappa = std::sqrt(prod_l / positive(prod_mu, "mu1*mu2 + mu12^2"));
  } else if (dmu >= 0 && dl < 0) {
    out.cell = Table1Cell::kMuNonNegative;
    out.kappa = 2.0 * std::sqrt(prod_l) /
                positive(b.mu1 + b.mu2 - std::sqrt(dmu), "mu1 + mu2 - sqrt(delta_mu)");
  } else if (dmu < 0) {
    out.cell = Table1Cell::kLNonNegative;
    out.kappa = 0.5 * (b.L1 + b.L2 + std::sqrt(dl)) /
                std::sqrt(positive(prod_mu, "mu1*mu2 + mu12^2"));
  } else {
    out.cell = Table1Cell::kBothNonNegative;
    out.kappa = (b.L1 + b.L2 + std::sqrt(dl)) /
                positive(b.mu1 + b.mu2 - std::sqrt(dmu), "mu1 + mu2 - sqrt(delta_mu)");
  }
  return out;
}

// L12 / sqrt(mu1 mu2); may be below 1.
inline double kappa_domino_basic(const BlockSpectralBounds& b) {
  const double prod = b.mu1 * b.mu2;
  if (!(b.mu1 > 0.0 && b.mu2 > 0.0 && prod > 0.0)) {
    throw UndefinedKappaError("domino-basic kappa needs mu1, mu2 > 0");
  }
  return b.L12 / std::sqrt(prod);
}

inline double kappa_domino_improved(const BlockSpectralBounds& b) {
  const double den = b.mu12 * b.mu12 + b.mu1 * b.mu2;
  if (!(den > 0.0)) throw DegenerateBoundsError("domino-improved kappa: mu12^2 + mu1*mu2 = 0");
  return std::sqrt((b.L12 * b.L12 + b.mu1 * b.mu2) / den);
}

// Essential range of 2 a0 a1 cos(theta) + a0^2 + a1^2.
inline std::pair<double, double> toeplitz_symbol_range(double a0, double a1) {
  const double lo = std::abs(a0) - std::abs(a1), hi = std::abs(a0) + std::abs(a1);
  return {lo * lo, hi * hi};
}

}  // namespace gamebound

#endif  // GAMEBOUND_SPECTRAL_HPP
