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

// Stationary canonical linear iterative methods on quadratic games.
//
// Every method acts on a quadratic game as
//
//   w^t = sum_{i<p} C_i(A) w^{t-p+i} + N(A) b
//
// and is available in two equivalent forms: the literal update (built on
// Jacobian-vector products only, so it runs on structured operators), and
// the explicit coefficient matrices, which feed the consistency test and the
// root-radius rate through the block companion matrix.

#ifndef GAMEBOUND_OPTIMIZERS_HPP
#define GAMEBOUND_OPTIMIZERS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gamebound/errors.hpp"
#include "gamebound/format.hpp"
#include "gamebound/game.hpp"
#include "gamebound/linalg.hpp"
#include "gamebound/spectral.hpp"

namespace gamebound {

enum class Variant {
  kSimultaneousGd,
  kAlternatingGd,
  kMomentumGd,
  kNegativeMomentumGd,
  kExtragradient,
  kStochasticGd,
};

inline const char* to_string(Variant v) {
  switch (v) {
    case Variant::kSimultaneousGd: return "simultaneous-gd";
    case Variant::kAlternatingGd: return "alternating-gd";
    case Variant::kMomentumGd: return "momentum-gd";
    case Variant::kNegativeMomentumGd: return "negative-momentum-gd";
    case Variant::kExtragradient: return "extragradient";
    case Variant::kStochasticGd: return "stochastic-gd";
  }
  return "?";
}

inline Variant parse_variant(const std::string& s) {
  if (s == "gd" || s == "simultaneous-gd") return Variant::kSimultaneousGd;
  if (s == "agd" || s == "alternating-gd") return Variant::kAlternatingGd;
  if (s == "momentum" || s == "momentum-gd") return Variant::kMomentumGd;
  if (s == "negative-momentum" || s == "negative-momentum-gd") return Variant::kNegativeMomentumGd;
  if (s == "eg" || s == "extragradient") return Variant::kExtragradient;
  if (s == "sgd" || s == "stochastic-gd") return Variant::kStochasticGd;
  throw ValidationError("unknown method variant '" + s + "'");
}

// Entrywise U[-scale, scale] perturbations A_w and N_w, fresh every step.
struct NoiseModel {
  double scale = 0.0;
  std::uint64_t seed = 0;
};

struct PSCLIMethod {
  Variant variant = Variant::kSimultaneousGd;
  // One entry (shared) or one per player.
  std::vector<double> eta{0.1};
  double beta = 0.0;
  // Momentum variants only: Gauss-Seidel pass inside the momentum lift.
  bool alternating = false;
  std::optional<NoiseModel> noise;

  static PSCLIMethod gd(double eta) { return {Variant::kSimultaneousGd, {eta}, 0.0, false, std::nullopt}; }
  static PSCLIMethod agd(double eta) { return {Variant::kAlternatingGd, {eta}, 0.0, false, std::nullopt}; }
  static PSCLIMethod extragradient(double eta) { return {Variant::kExtragradient, {eta}, 0.0, false, std::nullopt}; }
  static PSCLIMethod momentum(double eta, double beta) {
    return {Variant::kMomentumGd, {eta}, beta, false, std::nullopt};
  }
  static PSCLIMethod negative_momentum(double eta, double beta) {
    return {Variant::kNegativeMomentumGd, {eta}, beta, false, std::nullopt};
  }
  static PSCLIMethod sgd(double eta, NoiseModel noise) {
    return {Variant::kStochasticGd, {eta}, 0.0, false, noise};
  }

  int p() const {
    return variant == Variant::kMomentumGd || variant == Variant::kNegativeMomentumGd ? 2 : 1;
  }
  bool is_momentum() const { return p() == 2; }
  bool deterministic() const { return variant != Variant::kStochasticGd; }
  bool shared_eta() const {
    return std::all_of(eta.begin(), eta.end(), [&](double e) { return e == eta.front(); });
  }
  // Gauss-Seidel ordering of the player updates.
  bool sequential() const {
    return variant == Variant::kAlternatingGd || (is_momentum() && alternating);
  }

  void validate(std::size_t players) const {
    if (eta.empty()) throw ValidationError("method needs a step size");
    if (eta.size() != 1 && eta.size() != players) {
      throw ValidationError("expected 1 or " + std::to_string(players) + " step sizes, got " +
                            std::to_string(eta.size()));
    }
    for (double e : eta) {
      if (!(e >= 0.0) || !std::isfinite(e)) throw ValidationError("step sizes must be finite and >= 0");
    }
    if (variant == Variant::kMomentumGd && !(beta >= 0.0)) {
      throw ValidationError("momentum-gd needs beta >= 0");
    }
    if (variant == Variant::kNegativeMomentumGd && !(beta < 0.0)) {
      throw ValidationError("negative-momentum-gd needs beta < 0");
    }
    if (alternating && !is_momentum()) {
      throw ValidationError("the alternating flag applies to momentum variants only");
    }
    if (variant == Variant::kStochasticGd) {
      if (!noise) throw ValidationError("stochastic-gd needs a noise model");
      if (!(noise->scale >= 0.0)) throw ValidationError("noise scale must be >= 0");
    }
  }

  std::string descriptor() const {
    std::string s = to_string(variant);
    s += alternating ? "[alt](eta=" : "(eta=";
    for (std::size_t i = 0; i < eta.size(); ++i) s += (i ? "," : "") + format_double(eta[i]);
    if (is_momentum()) s += ";beta=" + format_double(beta);
    if (noise) s += ";noise=" + format_double(noise->scale) + ";seed=" + std::to_string(noise->seed);
    return s + ")";
  }
};

// Per-coordinate step sizes (the diagonal of the step matrix).
inline Vector expand_eta(const PSCLIMethod& m, const PlayerLayout& layout) {
  m.validate(layout.players());
  Vector out(static_cast<Eigen::Index>(layout.total()));
  for (std::size_t i = 0; i < layout.players(); ++i) {
    const double e = m.eta.size() == 1 ? m.eta.front() : m.eta[i];
    out.segment(static_cast<Eigen::Index>(layout.offset(i)), static_cast<Eigen::Index>(layout.dim(i)))
        .setConstant(e);
  }
  return out;
}

struct CoefficientForm {
  // C[i] multiplies w^{t-p+i}.
  std::vector<Matrix> C;
  Matrix N;
};

namespace detail {

// Gauss-Seidel one-pass form: w' = G w + H b with
// G = (I + eta L)^{-1} (I - eta (D + U)), H = -(I + eta L)^{-1} eta.
inline std::pair<Matrix, Matrix> gauss_seidel_form(const QuadraticGame& game, const Vector& eta) {
  const auto d = static_cast<Eigen::Index>(game.dim());
  const PlayerLayout& layout = game.layout();
  Matrix lower = Matrix::Zero(d, d);
  Matrix rest = game.jacobian();
  for (std::size_t i = 0; i < layout.players(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const auto oi = static_cast<Eigen::Index>(layout.offset(i)), oj = static_cast<Eigen::Index>(layout.offset(j));
      const auto di = static_cast<Eigen::Index>(layout.dim(i)), dj = static_cast<Eigen::Index>(layout.dim(j));
      lower.block(oi, oj, di, dj) = rest.block(oi, oj, di, dj);
      rest.block(oi, oj, di, dj).setZero();
    }
  }
  const Matrix eta_l = eta.asDiagonal() * lower;
  const Matrix unit_lower = Matrix::Identity(d, d) + eta_l;
  const Matrix rhs_g = Matrix::Identity(d, d) - eta.asDiagonal() * rest;
  const Matrix rhs_h = -Matrix(eta.asDiagonal());
  return {solve_unit_lower(unit_lower, rhs_g), solve_unit_lower(unit_lower, rhs_h)};
}

}  // namespace detail

/// Explicit coefficient matrices. The stochastic variant reports its
/// expected form, which equals simultaneous GD since E A_w = E N_w = 0.
inline CoefficientForm coefficient_form(const PSCLIMethod& m, const QuadraticGame& game) {
  const Vector eta = expand_eta(m, game.layout());
  const auto d = static_cast<Eigen::Index>(game.dim());
  const Matrix id = Matrix::Identity(d, d);
  const Matrix eta_a = eta.asDiagonal() * game.jacobian();
  const Matrix eta_m = eta.asDiagonal();
  CoefficientForm f;
  switch (m.variant) {
    case Variant::kSimultaneousGd:
    case Variant::kStochasticGd:
      f.C = {id - eta_a};
      f.N = -eta_m;
      break;
    case Variant::kAlternatingGd: {
      auto [g, h] = detail::gauss_seidel_form(game, eta);
      f.C = {std::move(g)};
      f.N = std::move(h);
      break;
    }
    case Variant::kMomentumGd:
    case Variant::kNegativeMomentumGd: {
      Matrix g, h;
      if (m.alternating) {
        std::tie(g, h) = detail::gauss_seidel_form(game, eta);
      } else {
        g = id - eta_a;
        h = -eta_m;
      }
      f.C = {-m.beta * id, g + m.beta * id};
      f.N = std::move(h);
      break;
    }
    case Variant::kExtragradient:
      f.C = {id - eta_a + eta_a * eta_a};
      f.N = -(id - eta_a) * eta_m;
      break;
  }
  return f;
}

// pd x pd block companion matrix with top block row C_{p-1}, ..., C_0.
inline Matrix companion_matrix(const CoefficientForm& f) {
  const auto p = static_cast<Eigen::Index>(f.C.size());
  const Eigen::Index d = f.N.rows();
  Matrix comp = Matrix::Zero(p * d, p * d);
  for (Eigen::Index i = 0; i < p; ++i) comp.block(0, i * d, d, d) = f.C[static_cast<std::size_t>(p - 1 - i)];
  for (Eigen::Index i = 1; i < p; ++i) comp.block(i * d, (i - 1) * d, d, d).setIdentity();
  return comp;
}

// Root radius of the characteristic polynomial via the companion matrix.
inline double asymptotic_rate(const PSCLIMethod& m, const QuadraticGame& game) {
  return eigenvalues(companion_matrix(coefficient_form(m, game))).max_modulus;
}

/// Root radius from the Jacobian spectrum alone. Valid for methods whose
/// coefficients are polynomials in A with a shared scalar step, i.e. not
/// for Gauss-Seidel passes or per-player step sizes.
inline double rate_from_spectrum(const PSCLIMethod& m, const std::vector<Complex>& spectrum) {
  if (m.sequential() || !m.shared_eta()) {
    throw ValidationError("spectral rate needs a shared step size and a simultaneous update");
  }
  const double eta = m.eta.front();
  double rho = 0.0;
  for (const Complex& lambda : spectrum) {
    if (lambda.imag() < 0.0) continue;  // conjugates give equal moduli
    const Complex z = eta * lambda;
    switch (m.variant) {
      case Variant::kSimultaneousGd:
      case Variant::kStochasticGd:
        rho = std::max(rho, std::abs(1.0 - z));
        break;
      case Variant::kExtragradient:
        rho = std::max(rho, std::abs(1.0 - z + z * z));
        break;
      case Variant::kMomentumGd:
      case Variant::kNegativeMomentumGd: {
        // z^2 - (1 - eta lambda + beta) z + beta
        const Complex a = 1.0 - z + m.beta;
        const Complex disc = std::sqrt(a * a - 4.0 * m.beta);
        rho = std::max({rho, std::abs(0.5 * (a + disc)), std::abs(0.5 * (a - disc))});
        break;
      }
      case Variant::kAlternatingGd:
        break;
    }
  }
  return rho;
}

struct ConsistencyResult {
  bool consistent = false;
  // Names the failing condition when not consistent.
  std::string reason;
  double identity_error = 0.0;
  double rho = 0.0;
};

// (i) sum_i C_i = I + N A, (ii) root radius < 1.
inline ConsistencyResult consistency_check(const PSCLIMethod& m, const QuadraticGame& game) {
  [[maybe_unused]] const LuFactorization lu(game.jacobian());
  const CoefficientForm f = coefficient_form(m, game);
  const auto d = static_cast<Eigen::Index>(game.dim());
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& c : f.C) sum += c;
  const Matrix diff = sum - (Matrix::Identity(d, d) + f.N * game.jacobian());
  ConsistencyResult r;
  r.identity_error = diff.cwiseAbs().maxCoeff();
  r.rho = eigenvalues(companion_matrix(f)).max_modulus;
  const double scale = 1.0 + sum.cwiseAbs().maxCoeff();
  if (!(r.identity_error <= 1e-10 * scale)) {
    r.reason = "condition (i) fails: sum of C_i differs from I + N A by " + format_double(r.identity_error);
  } else if (!(r.rho < 1.0)) {
    r.reason = "condition (ii) fails: root radius " + format_double(r.rho) + " >= 1";
  } else {
    r.consistent = true;
  }
  return r;
}

/// Draws the per-step perturbations of the stochastic variant.
class NoiseSampler {
 public:
  explicit NoiseSampler(const NoiseModel& model) : rng_(model.seed), dist_(-model.scale, model.scale) {}
  Matrix draw(Eigen::Index d) {
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) m(i, j) = dist_(rng_);
    }
    return m;
  }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> dist_;
};

/// One update in coefficient form. `history` holds w^{t-p}..w^{t-1}.
inline Vector step(const PSCLIMethod& m, const QuadraticGame& game, const std::vector<Vector>& history,
                   NoiseSampler* noise = nullptr) {
  if (history.size() != static_cast<std::size_t>(m.p())) {
    throw ArityError(std::string(to_string(m.variant)) + " needs " + std::to_string(m.p()) +
                     " history vectors, got " + std::to_string(history.size()));
  }
  for (const Vector& h : history) {
    if (static_cast<std::size_t>(h.size()) != game.dim()) throw DimensionError("history vector length mismatch");
  }
  const CoefficientForm f = coefficient_form(m, game);
  Vector out = f.N * game.offset();
  for (std::size_t i = 0; i < history.size(); ++i) out += f.C[i] * history[i];
  if (m.variant == Variant::kStochasticGd) {
    if (!noise) throw ValidationError("stochastic step needs a noise sampler");
    const auto d = static_cast<Eigen::Index>(game.dim());
    const Vector eta = expand_eta(m, game.layout());
    const Matrix a_w = noise->draw(d);
    const Matrix n_w = noise->draw(d);
    out -= eta.cwiseProduct(a_w * history[0] + n_w * game.offset());
  }
  return out;
}

// A problem exposes size(), layout(), offset() and apply(w) = A w.
template <class Problem>
Vector field_of(const Problem& prob, const Vector& w) {
  return prob.apply(w) + prob.offset();
}

namespace detail {

template <class Problem>
Vector gauss_seidel_pass(const Problem& prob, const Vector& eta, const Vector& w) {
  Vector out = w;
  const PlayerLayout& layout = prob.layout();
  for (std::size_t i = 0; i < layout.players(); ++i) {
    const Vector g = field_of(prob, out);
    const auto o = static_cast<Eigen::Index>(layout.offset(i)), n = static_cast<Eigen::Index>(layout.dim(i));
    out.segment(o, n) -= eta.segment(o, n).cwiseProduct(g.segment(o, n));
  }
  return out;
}

}  // namespace detail

/// One literal update from (prev, cur) = (w^{t-2}, w^{t-1}); prev is ignored
/// for p = 1.
template <class Problem>
Vector literal_step(const PSCLIMethod& m, const Problem& prob, const Vector& eta, const Vector& prev,
                    const Vector& cur, NoiseSampler* noise = nullptr) {
  switch (m.variant) {
    case Variant::kSimultaneousGd:
      return cur - eta.cwiseProduct(field_of(prob, cur));
    case Variant::kAlternatingGd:
      return detail::gauss_seidel_pass(prob, eta, cur);
    case Variant::kMomentumGd:
    case Variant::kNegativeMomentumGd: {
      Vector base = m.alternating ? detail::gauss_seidel_pass(prob, eta, cur)
                                  : Vector(cur - eta.cwiseProduct(field_of(prob, cur)));
      return base + m.beta * (cur - prev);
    }
    case Variant::kExtragradient: {
      const Vector half = cur - eta.cwiseProduct(field_of(prob, cur));
      return cur - eta.cwiseProduct(field_of(prob, half));
    }
    case Variant::kStochasticGd: {
      const auto d = static_cast<Eigen::Index>(prob.size());
      const Matrix a_w = noise->draw(d);
      const Matrix n_w = noise->draw(d);
      const Vector g = field_of(prob, cur) + a_w * cur + n_w * prob.offset();
      return cur - eta.cwiseProduct(g);
    }
  }
  return cur;
}

struct Trajectory {
  std::string method;
  std::vector<Vector> iterates;
  std::vector<double> distances;
  Vector w_star;
  bool diverged = false;
};

struct RunOptions {
  // Second seed for p = 2; defaults to a copy of w0.
  std::optional<Vector> w1;
  // Stationary point; solved from the game when absent.
  std::optional<Vector> w_star;
  // Keep only distances (large instances).
  bool keep_iterates = true;
};

template <class Problem>
Trajectory run(const PSCLIMethod& m, const Problem& prob, const Vector& w0, std::size_t T,
               const RunOptions& opts = {}) {
  if (T < 1) throw ValidationError("run needs T >= 1");
  if (static_cast<std::size_t>(w0.size()) != prob.size()) throw DimensionError("w0 length mismatch");
  const Vector eta = expand_eta(m, prob.layout());
  Trajectory tr;
  tr.method = m.descriptor();
  if (opts.w_star) {
    tr.w_star = *opts.w_star;
  } else if constexpr (requires { stationary_point(prob); }) {
    tr.w_star = stationary_point(prob).w_star;
  } else {
    throw ValidationError("run on a structured operator needs an explicit stationary point");
  }
  std::optional<NoiseSampler> sampler;
  if (m.variant == Variant::kStochasticGd) sampler.emplace(*m.noise);

  const double guard = 1e12 * (1.0 + w0.norm());
  auto record = [&](const Vector& w) {
    tr.distances.push_back((w - tr.w_star).norm());
    if (opts.keep_iterates) tr.iterates.push_back(w);
    if (!w.allFinite() || w.norm() > guard) tr.diverged = true;
  };

  Vector prev = w0, cur = w0;
  record(w0);
  std::size_t t = 1;
  if (m.p() == 2) {
    cur = opts.w1 ? *opts.w1 : w0;
    record(cur);
    t = 2;
  }
  for (; t <= T && !tr.diverged; ++t) {
    Vector next = literal_step(m, prob, eta, prev, cur, sampler ? &*sampler : nullptr);
    prev = std::move(cur);
    cur = std::move(next);
    record(cur);
  }
  return tr;
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  const std::size_t d = tr.iterates.empty() ? 0 : static_cast<std::size_t>(tr.iterates.front().size());
  os << "t,dist";
  for (std::size_t j = 0; j < d; ++j) os << ",w_" << j;
  os << '\n';
  for (std::size_t t = 0; t < tr.distances.size(); ++t) {
    os << t << ',' << format_double(tr.distances[t]);
    if (t < tr.iterates.size()) {
      for (std::size_t j = 0; j < d; ++j) os << ',' << format_double(tr.iterates[t][static_cast<Eigen::Index>(j)]);
    }
    os << '\n';
  }
}

struct TuneResult {
  double eta = 0.0;
  double beta = 0.0;
  double rho = 1.0;
  bool convergent = false;
};

namespace detail {

// Golden-section search for a local minimum of f on [a, b].
template <class F>
std::pair<double, double> golden_section(F&& f, double a, double b, double rel_tol) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > rel_tol * std::max(std::abs(a), std::abs(b)); ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
}

// Grid scan plus golden refinement around the best few local minima.
template <class F>
std::pair<double, double> minimize_on_grid(F&& f, const std::vector<double>& grid, double rel_tol,
                                           std::size_t refine = 3) {
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = f(grid[i]);
  std::vector<std::size_t> minima;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const bool left = i == 0 || vals[i] <= vals[i - 1];
    const bool right = i + 1 == grid.size() || vals[i] <= vals[i + 1];
    if (left && right) minima.push_back(i);
  }
  std::sort(minima.begin(), minima.end(), [&](std::size_t x, std::size_t y) { return vals[x] < vals[y]; });
  if (minima.size() > refine) minima.resize(refine);
  std::size_t best_i = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  std::pair<double, double> best{grid[best_i], vals[best_i]};
  for (std::size_t i : minima) {
    const double lo = grid[i == 0 ? 0 : i - 1];
    const double hi = grid[i + 1 == grid.size() ? i : i + 1];
    if (hi <= lo) continue;
    auto cand = golden_section(f, lo, hi, rel_tol);
    if (cand.second < best.second) best = cand;
  }
  return best;
}

inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  }
  return g;
}

inline std::vector<double> lin_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return g;
}

template <class Rate>
TuneResult tune_with(const PSCLIMethod& base, double max_modulus, int resolution, Rate&& rate) {
  if (resolution < 8) throw ValidationError("tuning grid resolution must be >= 8");
  if (!(max_modulus > 0.0)) throw ValidationError("tuning needs a nonzero spectrum");
  const double rel_tol = 1e-13;
  const double eta_max = std::pow(2.0, base.p()) / max_modulus;
  const std::vector<double> eta_grid = log_grid(eta_max * 1e-4, eta_max, resolution);
  PSCLIMethod m = base;
  m.eta = {eta_max};

  auto best_eta_for = [&](double beta) {
    m.beta = beta;
    return minimize_on_grid(
        [&](double e) {
          m.eta = {e};
          m.beta = beta;
          return rate(m);
        },
        eta_grid, rel_tol, m.is_momentum() ? 2 : 3);
  };

  TuneResult out;
  if (!m.is_momentum()) {
    auto [e, r] = best_eta_for(0.0);
    out.eta = e;
    out.rho = r;
  } else {
    const bool negative = m.variant == Variant::kNegativeMomentumGd;
    const double b_lo = negative ? -0.999 : 0.0;
    const double b_hi = negative ? -1e-6 : 0.999;
    const std::vector<double> beta_grid = lin_grid(b_lo, b_hi, std::max(16, resolution / 2));
    auto outer = [&](double beta) { return best_eta_for(beta).second; };
    auto [b, r] = minimize_on_grid(outer, beta_grid, 1e-10, 2);
    out.beta = b;
    out.eta = best_eta_for(b).first;
    out.rho = r;
  }
  out.convergent = out.rho < 1.0;
  return out;
}

}  // namespace detail

/// Tunes the shared step size (and beta for momentum variants) by a
/// log-spaced grid over (0, 2^p / max|sigma(A)|] with golden-section
/// refinement. `convergent` is false when every candidate has rate >= 1.
inline TuneResult tune_step_size(const PSCLIMethod& base, const std::vector<Complex>& spectrum,
                                 int resolution = 64) {
  const double max_mod = ComplexSpectrum::from(spectrum).max_modulus;
  return detail::tune_with(base, max_mod, resolution,
                           [&](const PSCLIMethod& m) { return rate_from_spectrum(m, spectrum); });
}

inline TuneResult tune_step_size(const PSCLIMethod& base, const QuadraticGame& game, int resolution = 64) {
  const ComplexSpectrum spec = eigenvalues(game.jacobian());
  if (!base.sequential()) return tune_step_size(base, spec.eigenvalues, resolution);
  return detail::tune_with(base, spec.max_modulus, resolution,
                           [&](const PSCLIMethod& m) { return asymptotic_rate(m, game); });
}

inline PSCLIMethod with_tuning(PSCLIMethod m, const TuneResult& t) {
  m.eta = {t.eta};
  if (m.is_momentum()) m.beta = t.beta;
  return m;
}

}  // namespace gamebound

#endif  // GAMEBOUND_OPTIMIZERS_HPP
