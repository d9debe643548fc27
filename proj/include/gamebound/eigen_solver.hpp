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

// Eigenvalues of dense real matrices.
//
// General matrices go through Householder reduction to upper Hessenberg form
// followed by the Francis implicit double-shift QR iteration (the EISPACK
// `orthes`/`hqr` pair, eigenvalues only). Symmetric tridiagonal matrices
// have a dedicated implicit QL path that runs in O(n^2).

#ifndef GAMEBOUND_EIGEN_SOLVER_HPP
#define GAMEBOUND_EIGEN_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "gamebound/errors.hpp"
#include "gamebound/linalg.hpp"

namespace gamebound {

namespace detail {

// In-place reduction to upper Hessenberg form by Householder reflections.
inline void reduce_to_hessenberg(Matrix& h) {
  const Eigen::Index n = h.rows();
  std::vector<double> ort(static_cast<std::size_t>(n), 0.0);
  const Eigen::Index high = n - 1;
  for (Eigen::Index m = 1; m <= high - 1; ++m) {
    double scale = 0.0;
    for (Eigen::Index i = m; i <= high; ++i) scale += std::abs(h(i, m - 1));
    if (scale == 0.0) continue;

    double hh = 0.0;
    for (Eigen::Index i = high; i >= m; --i) {
      ort[i] = h(i, m - 1) / scale;
      hh += ort[i] * ort[i];
    }
    double g = std::sqrt(hh);
    if (ort[m] > 0) g = -g;
    hh -= ort[m] * g;
    ort[m] -= g;

    for (Eigen::Index j = m; j < n; ++j) {
      double f = 0.0;
      for (Eigen::Index i = high; i >= m; --i) f += ort[i] * h(i, j);
      f /= hh;
      for (Eigen::Index i = m; i <= high; ++i) h(i, j) -= f * ort[i];
    }
    for (Eigen::Index i = 0; i <= high; ++i) {
      double f = 0.0;
      for (Eigen::Index j = high; j >= m; --j) f += ort[j] * h(i, j);
      f /= hh;
      for (Eigen::Index j = m; j <= high; ++j) h(i, j) -= f * ort[j];
    }
    ort[m] *= scale;
    h(m, m - 1) = scale * g;
    for (Eigen::Index i = m + 1; i <= high; ++i) h(i, m - 1) = 0.0;
  }
}

}  // namespace detail

struct HessenbergQrOptions {
  // Iterations spent on one eigenvalue before an exceptional shift.
  int iterations_per_shift = 10;
  // Exceptional shifts tolerated before giving up.
  int max_exceptional_shifts = 3;
};

/// All eigenvalues of a real square matrix, in the order they deflate.
///
/// Throws SpectralFailure with the index of the eigenvalue that would not
/// converge after `max_exceptional_shifts` exceptional shifts.
inline std::vector<Complex> hessenberg_qr_eigenvalues(const Matrix& a,
                                                      HessenbergQrOptions opts = {}) {
  if (a.rows() != a.cols()) throw DimensionError("eigenvalues: matrix must be square");
  if (!a.allFinite()) throw ValidationError("eigenvalues: non-finite entry");
  const Eigen::Index nn = a.rows();
  std::vector<double> wr(static_cast<std::size_t>(nn), 0.0), wi(static_cast<std::size_t>(nn), 0.0);
  if (nn == 0) return {};

  Matrix h = a;
  detail::reduce_to_hessenberg(h);

  const double eps = std::numeric_limits<double>::epsilon();
  double norm = 0.0;
  for (Eigen::Index i = 0; i < nn; ++i) {
    for (Eigen::Index j = std::max<Eigen::Index>(i - 1, 0); j < nn; ++j) norm += std::abs(h(i, j));
  }

  Eigen::Index n = nn - 1;
  const Eigen::Index low = 0;
  double exshift = 0.0;
  double p = 0, q = 0, r = 0, s = 0, z = 0, w = 0, x = 0, y = 0;
  int iter = 0;
  const int interval = std::max(1, opts.iterations_per_shift);
  const int max_iter = interval * (opts.max_exceptional_shifts + 1);

  while (n >= low) {
    // Look for a single small subdiagonal element.
    Eigen::Index l = n;
    while (l > low) {
      s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (s == 0.0) s = norm;
      if (std::abs(h(l, l - 1)) <= eps * s) break;
      --l;
    }

    if (l == n) {
      // One root found.
      h(n, n) += exshift;
      wr[n] = h(n, n);
      wi[n] = 0.0;
      --n;
      iter = 0;
    } else if (l == n - 1) {
      // Two roots found.
      w = h(n, n - 1) * h(n - 1, n);
      p = (h(n - 1, n - 1) - h(n, n)) / 2.0;
      q = p * p + w;
      z = std::sqrt(std::abs(q));
      h(n, n) += exshift;
      h(n - 1, n - 1) += exshift;
      x = h(n, n);
      if (q >= 0) {
        z = p >= 0 ? p + z : p - z;
        wr[n - 1] = x + z;
        wr[n] = z != 0.0 ? x - w / z : wr[n - 1];
        wi[n - 1] = 0.0;
        wi[n] = 0.0;
      } else {
        wr[n - 1] = x + p;
        wr[n] = x + p;
        wi[n - 1] = z;
        wi[n] = -z;
      }
      n -= 2;
      iter = 0;
    } else {
      x = h(n, n);
      y = 0.0;
      w = 0.0;
      if (l < n) {
        y = h(n - 1, n - 1);
        w = h(n, n - 1) * h(n - 1, n);
      }

      if (iter >= max_iter) throw SpectralFailure(static_cast<std::size_t>(n));
      if (iter > 0 && iter % interval == 0) {
        // Alternate the two classical ad-hoc shifts.
        if ((iter / interval) % 2 == 1) {
          exshift += x;
          for (Eigen::Index i = low; i <= n; ++i) h(i, i) -= x;
          s = std::abs(h(n, n - 1)) + std::abs(h(n - 1, n - 2));
          x = y = 0.75 * s;
          w = -0.4375 * s * s;
        } else {
          s = (y - x) / 2.0;
          s = s * s + w;
          if (s > 0) {
            s = std::sqrt(s);
            if (y < x) s = -s;
            s = x - w / ((y - x) / 2.0 + s);
            for (Eigen::Index i = low; i <= n; ++i) h(i, i) -= s;
            exshift += s;
            x = y = w = 0.964;
          }
        }
      }
      ++iter;

      // Look for two consecutive small subdiagonal elements.
      Eigen::Index m = n - 2;
      while (m >= l) {
        z = h(m, m);
        r = x - z;
        s = y - z;
        p = (r * s - w) / h(m + 1, m) + h(m, m + 1);
        q = h(m + 1, m + 1) - z - r - s;
        r = h(m + 2, m + 1);
        s = std::abs(p) + std::abs(q) + std::abs(r);
        p /= s;
        q /= s;
        r /= s;
        if (m == l) break;
        if (std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r)) <
            eps * (std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(z) + std::abs(h(m + 1, m + 1))))) {
          break;
        }
        --m;
      }

      for (Eigen::Index i = m + 2; i <= n; ++i) {
        h(i, i - 2) = 0.0;
        if (i > m + 2) h(i, i - 3) = 0.0;
      }

      // Double QR step on rows l..n, columns m..n.
      for (Eigen::Index k = m; k <= n - 1; ++k) {
        const bool notlast = (k != n - 1);
        if (k != m) {
          p = h(k, k - 1);
          q = h(k + 1, k - 1);
          r = notlast ? h(k + 2, k - 1) : 0.0;
          x = std::abs(p) + std::abs(q) + std::abs(r);
          if (x == 0.0) continue;
          p /= x;
          q /= x;
          r /= x;
        }
        s = std::sqrt(p * p + q * q + r * r);
        if (p < 0) s = -s;
        if (s == 0.0) continue;
        if (k != m) {
          h(k, k - 1) = -s * x;
        } else if (l != m) {
          h(k, k - 1) = -h(k, k - 1);
        }
        p += s;
        x = p / s;
        y = q / s;
        z = r / s;
        q /= p;
        r /= p;

        for (Eigen::Index j = k; j < nn; ++j) {
          p = h(k, j) + q * h(k + 1, j);
          if (notlast) {
            p += r * h(k + 2, j);
            h(k + 2, j) -= p * z;
          }
          h(k, j) -= p * x;
          h(k + 1, j) -= p * y;
        }
        const Eigen::Index imax = std::min(n, k + 3);
        for (Eigen::Index i = 0; i <= imax; ++i) {
          p = x * h(i, k) + y * h(i, k + 1);
          if (notlast) {
            p += z * h(i, k + 2);
            h(i, k + 2) -= p * r;
          }
          h(i, k) -= p;
          h(i, k + 1) -= p * q;
        }
      }
    }
  }

  std::vector<Complex> out(static_cast<std::size_t>(nn));
  for (Eigen::Index i = 0; i < nn; ++i) out[i] = Complex(wr[i], wi[i]);
  return out;
}

/// Eigenvalues of the symmetric tridiagonal matrix with main diagonal `diag`
/// and off-diagonal `off` (length n-1) by implicit QL with Wilkinson shifts.
/// Returned in ascending order.
inline std::vector<double> symmetric_tridiagonal_eigenvalues(std::vector<double> diag,
                                                             std::vector<double> off) {
  const std::size_t n = diag.size();
  if (n == 0) return {};
  if (off.size() + 1 != n) throw DimensionError("tridiagonal: off-diagonal must have length n-1");
  std::vector<double>& d = diag;
  std::vector<double> e(n, 0.0);
  std::copy(off.begin(), off.end(), e.begin());
  const double eps = std::numeric_limits<double>::epsilon();

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 60) throw SpectralFailure(l);
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

/// Eigenvalues of a dense symmetric matrix, ascending. Householder reduction
/// to tridiagonal form followed by the implicit QL iteration; only the lower
/// triangle is read.
inline std::vector<double> symmetric_eigenvalues_dense(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("eigenvalues: matrix must be square");
  if (!a.allFinite()) throw ValidationError("eigenvalues: non-finite entry");
  const Eigen::Index n = a.rows();
  if (n == 0) return {};
  Matrix t = a.selfadjointView<Eigen::Lower>();
  std::vector<double> diag(static_cast<std::size_t>(n)), off(static_cast<std::size_t>(n - 1));
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    Vector x = t.col(k).tail(n - k - 1);
    const double alpha = x.norm();
    if (alpha == 0.0) continue;
    const double beta = x[0] > 0 ? -alpha : alpha;
    x[0] -= beta;
    const double vnorm2 = x.squaredNorm();
    if (vnorm2 == 0.0) continue;
    auto sub = t.bottomRightCorner(n - k - 1, n - k - 1);
    const Vector p = sub * x * (2.0 / vnorm2);
    const Vector q = p - x * (x.dot(p) / vnorm2);
    sub.noalias() -= x * q.transpose() + q * x.transpose();
    t(k + 1, k) = t(k, k + 1) = beta;
    t.col(k).tail(n - k - 2).setZero();
    t.row(k).tail(n - k - 2).setZero();
  }
  for (Eigen::Index i = 0; i < n; ++i) diag[static_cast<std::size_t>(i)] = t(i, i);
  for (Eigen::Index i = 0; i + 1 < n; ++i) off[static_cast<std::size_t>(i)] = t(i + 1, i);
  return symmetric_tridiagonal_eigenvalues(std::move(diag), std::move(off));
}

}  // namespace gamebound

#endif  // GAMEBOUND_EIGEN_SOLVER_HPP
