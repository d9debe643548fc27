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

// Empirical rates versus lower bounds.

#ifndef GAMEBOUND_RATE_LAB_HPP
#define GAMEBOUND_RATE_LAB_HPP

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "gamebound/errors.hpp"
#include "gamebound/format.hpp"
#include "gamebound/game.hpp"
#include "gamebound/hard_instances.hpp"
#include "gamebound/linalg.hpp"
#include "gamebound/optimizers.hpp"
#include "gamebound/spectral.hpp"

namespace gamebound {

struct RateFit {
  double rho_hat = 0.0;
  double r_squared = 0.0;
  // Half-open range [begin, end) of indices used by the fit.
  std::size_t window_begin = 0;
  std::size_t window_end = 0;
};

/// Least-squares slope of log(distance) against t over the tail half of the
/// usable prefix. The prefix stops at the first entry that is non-positive,
/// non-finite or below 1e2 * eps * distances[0].
inline RateFit estimate_rate(const std::vector<double>& distances) {
  constexpr std::size_t kMinPoints = 16;
  std::size_t usable = 0;
  if (!distances.empty() && distances[0] > 0.0 && std::isfinite(distances[0])) {
    const double floor = 1e2 * std::numeric_limits<double>::epsilon() * distances[0];
    while (usable < distances.size() && std::isfinite(distances[usable]) && distances[usable] > floor) {
      ++usable;
    }
  }
  if (usable < kMinPoints) {
    throw InsufficientDataError("rate fit needs at least " + std::to_string(kMinPoints) +
                                " usable points, got " + std::to_string(usable));
  }
  RateFit fit;
  fit.window_begin = usable / 2;
  fit.window_end = usable;
  const double n = static_cast<double>(fit.window_end - fit.window_begin);
  double st = 0, sy = 0;
  for (std::size_t t = fit.window_begin; t < fit.window_end; ++t) {
    st += static_cast<double>(t);
    sy += std::log(distances[t]);
  }
  const double mt = st / n, my = sy / n;
  double stt = 0, sty = 0, syy = 0;
  for (std::size_t t = fit.window_begin; t < fit.window_end; ++t) {
    const double dt = static_cast<double>(t) - mt, dy = std::log(distances[t]) - my;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  const double slope = sty / stt;
  fit.rho_hat = std::exp(slope);
  const double ss_res = std::max(0.0, syy - slope * sty);
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

// (kappa^{1/p} - 1) / (kappa^{1/p} + 1).
inline double pscli_lower_bound(double kappa, int p) {
  if (!(kappa >= 1.0)) throw ValidationError("p-SCLI bound needs kappa >= 1, got " + format_double(kappa));
  if (p < 1) throw ValidationError("p-SCLI bound needs p >= 1");
  if (std::isinf(kappa)) return 1.0;
  const double r = std::pow(kappa, 1.0 / p);
  return (r - 1.0) / (r + 1.0);
}

// 1 - 2/(sqrt(kappa^2 + 1) + 1).
inline double domino_basic_rate(double kappa) {
  const double s = std::sqrt(kappa * kappa + 1.0) + 1.0;
  return kappa * kappa / (s * s);
}

// 1 - 2/(kappa + 1).
inline double domino_improved_rate(double kappa) { return (kappa - 1.0) / (kappa + 1.0); }

inline constexpr const char* kBoundPscli = "pscli_n";
inline constexpr const char* kBoundDominoBasic = "domino_basic";
inline constexpr const char* kBoundDominoImproved = "domino_improved";
inline constexpr const char* kBoundTable1 = "table1_cell";

// "certified": a theorem for this game; "conjecture": a worst-case class
// bound applied to this particular game.
struct BoundValue {
  std::string name;
  bool applicable = false;
  double kappa = 0.0;
  double value = 0.0;
  std::string mode;
  std::string reason;
  // Which block quantities were substituted (e.g. "mu1->L1"), if any.
  std::string substitution;
};

namespace detail {

template <class F>
BoundValue make_bound(const char* name, const char* mode, F&& compute) {
  BoundValue b;
  b.name = name;
  b.mode = mode;
  try {
    compute(b);
    b.applicable = true;
  } catch (const Error& e) {
    b.applicable = false;
    b.reason = e.what();
  }
  return b;
}

// The domino condition numbers use mu_i only, and their hard instances have
// S_i = mu_i I. A game whose S_i spectrum spans [mu_i, L_i] belongs to the
// class with known mu_i as well as to the class with known L_i, so a per-game
// check may only use the weakest of the four substitutions.
template <class Kappa>
double weakest_kappa(const BlockSpectralBounds& bb, Kappa&& kappa, std::string& substitution) {
  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  std::string last_error;
  for (int mask = 0; mask < 4; ++mask) {
    BlockSpectralBounds s = bb;
    if (mask & 1) s.mu1 = bb.L1;
    if (mask & 2) s.mu2 = bb.L2;
    double k = 0.0;
    try {
      k = kappa(s);
    } catch (const Error& e) {
      last_error = e.what();
      continue;
    }
    if (!found || k < best) {
      best = k;
      found = true;
      substitution.clear();
      if ((mask & 1) && bb.L1 != bb.mu1) substitution += "mu1->L1";
      if ((mask & 2) && bb.L2 != bb.mu2) substitution += substitution.empty() ? "mu2->L2" : ",mu2->L2";
    }
  }
  if (!found) throw UndefinedKappaError(last_error);
  return best;
}

inline bool scalar_diagonal_blocks(const BlockSpectralBounds& bb) {
  const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)); };
  return close(bb.mu1, bb.L1) && close(bb.mu2, bb.L2);
}

inline std::vector<BoundValue> bounds_from(const ComplexSpectrum& spec,
                                           const std::optional<BlockSpectralBounds>& blocks, int p,
                                           bool square_blocks) {
  std::vector<BoundValue> out;
  out.push_back(make_bound(kBoundPscli, "certified", [&](BoundValue& b) {
    b.kappa = kappa_from_spectrum(spec);
    b.value = pscli_lower_bound(b.kappa, p);
  }));
  if (!blocks) return out;
  const BlockSpectralBounds& bb = *blocks;
  out.push_back(make_bound(kBoundDominoBasic, "conjecture", [&](BoundValue& b) {
    // The basic kappa ignores mu12; it is used only where mu12 moves the
    // improved kappa by less than 0.05%.
    if (!(bb.mu12 * bb.mu12 <= 1e-3 * bb.mu1 * bb.mu2)) {
      throw UndefinedKappaError("basic domino bound needs mu12^2 <= 1e-3 mu1 mu2 (mu12 = " +
                                format_double(bb.mu12) + ")");
    }
    b.kappa = weakest_kappa(bb, [](const BlockSpectralBounds& s) { return kappa_domino_basic(s); },
                            b.substitution);
    b.value = domino_basic_rate(b.kappa);
  }));
  out.push_back(make_bound(kBoundDominoImproved, "conjecture", [&](BoundValue& b) {
    b.kappa = weakest_kappa(bb, [](const BlockSpectralBounds& s) { return kappa_domino_improved(s); },
                            b.substitution);
    b.value = domino_improved_rate(b.kappa);
  }));
  out.push_back(make_bound(kBoundTable1, "conjecture", [&](BoundValue& b) {
    if (!square_blocks) throw UnsupportedArityError("table 1 covers d1 = d2 only");
    if (!scalar_diagonal_blocks(bb)) {
      throw UnsupportedArityError("table 1 is a class worst case; per-game check needs S_i = mu_i I");
    }
    b.kappa = kappa_table1(bb).kappa;
    b.value = pscli_lower_bound(std::max(1.0, b.kappa), p);
  }));
  return out;
}

}  // namespace detail

/// Every lower bound the game admits for p-step methods. Inapplicable
/// entries carry the reason instead of a value.
inline std::vector<BoundValue> evaluate_bounds(const QuadraticGame& game, int p) {
  const ComplexSpectrum spec = eigenvalues(game.jacobian());
  std::optional<BlockSpectralBounds> blocks;
  if (game.players() == 2) blocks = block_spectral_bounds(game);
  const bool square = game.players() == 2 && game.layout().dim(0) == game.layout().dim(1);
  return detail::bounds_from(spec, blocks, p, square);
}

enum class Verdict { kRespected, kViolated, kInconclusive, kInapplicable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kRespected: return "respected";
    case Verdict::kViolated: return "violated";
    case Verdict::kInconclusive: return "inconclusive";
    case Verdict::kInapplicable: return "inapplicable";
  }
  return "?";
}

struct BoundVerdict {
  BoundValue bound;
  Verdict verdict = Verdict::kInapplicable;
  // rho_hat - value; negative means faster than the bound.
  double margin = 0.0;
};

struct RateReport {
  std::string method;
  std::string game_hash;
  std::optional<double> rho_hat;
  bool diverged = false;
  double rho_asym = 0.0;
  double r2 = 0.0;
  std::size_t window_begin = 0, window_end = 0;
  std::vector<BoundVerdict> bounds;
  double tolerance = 2e-2;
  std::uint64_t seed = 0;
  bool certifying = true;
  std::string note;
  // |rho_hat - rho_asym| <= tolerance when both are defined and R^2 >= 0.99.
  std::optional<bool> rate_agreement;

  bool any_violated() const {
    return std::any_of(bounds.begin(), bounds.end(),
                       [](const BoundVerdict& b) { return b.verdict == Verdict::kViolated; });
  }
  const BoundVerdict* find(const std::string& name) const {
    for (const BoundVerdict& b : bounds) {
      if (b.bound.name == name) return &b;
    }
    return nullptr;
  }
};

inline std::string game_hash(const QuadraticGame& game) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t d : game.layout().dims()) {
    const std::uint64_t v = d;
    h = fnv1a(&v, sizeof v, h);
  }
  h = fnv1a(game.jacobian().data(), sizeof(double) * static_cast<std::size_t>(game.jacobian().size()), h);
  h = fnv1a(game.offset().data(), sizeof(double) * static_cast<std::size_t>(game.offset().size()), h);
  return hex64(h);
}

inline nlohmann::json to_json(const RateReport& r) {
  nlohmann::json j;
  j["method"] = r.method;
  j["game_hash"] = r.game_hash;
  j["rho_hat"] = r.rho_hat ? nlohmann::json(*r.rho_hat) : nlohmann::json(nullptr);
  j["diverged"] = r.diverged;
  j["rho_asym"] = r.rho_asym;
  j["r2"] = r.r2;
  j["window"] = {r.window_begin, r.window_end};
  j["tolerance"] = r.tolerance;
  j["seed"] = r.seed;
  j["certifying"] = r.certifying;
  if (!r.note.empty()) j["note"] = r.note;
  if (r.rate_agreement) j["rate_agreement"] = *r.rate_agreement;
  nlohmann::json arr = nlohmann::json::array();
  for (const BoundVerdict& b : r.bounds) {
    nlohmann::json e;
    e["name"] = b.bound.name;
    e["mode"] = b.bound.mode;
    e["verdict"] = to_string(b.verdict);
    if (b.bound.applicable) {
      e["kappa"] = b.bound.kappa;
      e["value"] = b.bound.value;
      e["margin"] = b.margin;
      if (!b.bound.substitution.empty()) e["substitution"] = b.bound.substitution;
    } else {
      e["kappa"] = nullptr;
      e["value"] = nullptr;
      e["margin"] = nullptr;
      e["reason"] = b.bound.reason;
    }
    arr.push_back(std::move(e));
  }
  j["bounds"] = std::move(arr);
  return j;
}

struct CertifyOptions {
  std::size_t T = 400;
  double tolerance = 2e-2;
  double r2_gate = 0.99;
  std::uint64_t seed = 0;
  // Initial point; seeded standard normal when absent.
  std::optional<Vector> w0;
};

namespace detail {

inline Vector seeded_normal(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = nd(rng);
  return v;
}

inline void assign_verdicts(RateReport& rep) {
  for (BoundVerdict& bv : rep.bounds) {
    if (!bv.bound.applicable) {
      bv.verdict = Verdict::kInapplicable;
      continue;
    }
    if (rep.diverged || !rep.rho_hat) {
      bv.verdict = Verdict::kRespected;
      bv.margin = INFINITY;
      continue;
    }
    bv.margin = *rep.rho_hat - bv.bound.value;
    if (*rep.rho_hat >= 1.0 || bv.margin >= -rep.tolerance) {
      bv.verdict = Verdict::kRespected;
    } else if (rep.r2 < 0.99) {
      bv.verdict = Verdict::kInconclusive;
    } else {
      bv.verdict = Verdict::kViolated;
    }
  }
}

inline void fill_fit(RateReport& rep, const Trajectory& tr, double r2_gate) {
  rep.diverged = tr.diverged;
  if (tr.diverged) return;
  try {
    const RateFit fit = estimate_rate(tr.distances);
    rep.rho_hat = fit.rho_hat;
    rep.r2 = fit.r_squared;
    rep.window_begin = fit.window_begin;
    rep.window_end = fit.window_end;
    if (fit.r_squared >= r2_gate) rep.rate_agreement = std::abs(fit.rho_hat - rep.rho_asym) <= rep.tolerance;
  } catch (const InsufficientDataError& e) {
    rep.note = e.what();
  }
}

}  // namespace detail

/// Runs the method, fits the empirical rate and checks it against every
/// applicable bound for p = method.p(). A violated verdict is data.
inline RateReport certify(const PSCLIMethod& m, const QuadraticGame& game, const CertifyOptions& opts = {},
                          Trajectory* trajectory_out = nullptr) {
  RateReport rep;
  rep.method = m.descriptor();
  rep.game_hash = game_hash(game);
  rep.tolerance = opts.tolerance;
  rep.seed = opts.seed;
  const ConsistencyResult cons = consistency_check(m, game);
  rep.rho_asym = cons.rho;
  if (!cons.consistent) {
    rep.certifying = false;
    rep.note = cons.reason;
  }
  const Vector w0 = opts.w0 ? *opts.w0 : detail::seeded_normal(game.dim(), opts.seed);
  Trajectory tr = run(m, game, w0, opts.T);
  detail::fill_fit(rep, tr, opts.r2_gate);
  for (BoundValue& b : evaluate_bounds(game, m.p())) {
    // Gauss-Seidel momentum and per-player steps fall outside the spectral theorem.
    if (b.name == kBoundPscli && (!m.shared_eta() || (m.sequential() && m.p() > 1))) b.mode = "conjecture";
    rep.bounds.push_back({std::move(b)});
  }
  detail::assign_verdicts(rep);
  if (trajectory_out) *trajectory_out = std::move(tr);
  return rep;
}

struct DominoCertification {
  RateReport report;
  // Per-iterate check |w_t - w*| >= (1 - chi^{dim/2}) chi^{t+1} |w*|.
  bool per_iterate_ok = true;
  std::size_t checked_steps = 0;
  std::optional<std::size_t> first_failure;
  // Coordinates beyond t+1 are exactly zero at every step.
  bool sparsity_ok = true;
};

/// Certification on a truncated domino instance from zero initialization,
/// using the banded operator, the exact structured spectrum and the
/// instance's closed-form rate constant.
inline DominoCertification certify_domino(const PSCLIMethod& m, const DominoInstance& inst,
                                          const CertifyOptions& opts = {},
                                          Trajectory* trajectory_out = nullptr) {
  DominoCertification out;
  RateReport& rep = out.report;
  rep.method = m.descriptor();
  rep.tolerance = opts.tolerance;
  rep.seed = opts.seed;
  {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const double params[] = {inst.mu1, inst.mu2, inst.c, inst.a0, inst.a1, inst.d1_coeff, inst.d2_coeff,
                             static_cast<double>(inst.dim)};
    rep.game_hash = hex64(fnv1a(params, sizeof params, h));
  }
  const std::vector<Complex> spectrum = inst.spectrum();
  const ComplexSpectrum spec = ComplexSpectrum::from(spectrum);
  if (!m.sequential() && m.shared_eta()) {
    rep.rho_asym = rate_from_spectrum(m, spectrum);
  } else {
    rep.rho_asym = asymptotic_rate(m, inst.game());
  }
  if (!(rep.rho_asym < 1.0)) {
    rep.certifying = false;
    rep.note = "root radius " + format_double(rep.rho_asym) + " >= 1";
  }
  const Vector w_star = inst.w_star();
  const Vector w0 = Vector::Zero(w_star.size());
  RunOptions ro;
  ro.w_star = w_star;
  Trajectory tr = run(m, inst.op, w0, opts.T, ro);
  detail::fill_fit(rep, tr, opts.r2_gate);

  const double slack = 1.0 - std::pow(inst.chi, static_cast<double>(inst.dim) / 2.0);
  const double d0 = w_star.norm();
  const std::size_t horizon = std::min(tr.distances.size() - 1, inst.dim / 4);
  for (std::size_t t = 0; t <= horizon; ++t) {
    const double lb = slack * std::pow(inst.chi, static_cast<double>(t + 1)) * d0;
    if (!(tr.distances[t] >= lb)) {
      out.per_iterate_ok = false;
      if (!out.first_failure) out.first_failure = t;
    }
  }
  out.checked_steps = horizon + 1;
  const auto n = static_cast<Eigen::Index>(inst.dim);
  for (std::size_t t = 0; t < tr.iterates.size(); ++t) {
    const Eigen::Index first_zero = static_cast<Eigen::Index>(t + 1);
    for (Eigen::Index i = first_zero; i < n; ++i) {
      if (tr.iterates[t][i] != 0.0 || tr.iterates[t][n + i] != 0.0) {
        out.sparsity_ok = false;
        break;
      }
    }
  }

  const BlockSpectralBounds bb = inst.block_bounds();
  std::vector<BoundValue> bounds = detail::bounds_from(spec, bb, m.p(), true);
  for (BoundValue& b : bounds) {
    const bool own = (b.name == kBoundDominoBasic && inst.kind == DominoKind::kBasic) ||
                     (b.name == kBoundDominoImproved && inst.kind == DominoKind::kImproved);
    if (own) {
      // The instance's own closed form, certified up to truncation slack.
      b.applicable = true;
      b.reason.clear();
      b.kappa = inst.kappa;
      b.value = inst.chi;
      b.mode = "certified";
    }
    rep.bounds.push_back({std::move(b)});
  }
  detail::assign_verdicts(rep);
  if (trajectory_out) *trajectory_out = std::move(tr);
  return out;
}

struct Violation {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::string method;
  std::string bound;
  std::string mode;
  double rho_hat = 0.0;
  double value = 0.0;
  double margin = 0.0;
  std::string game_hash;
};

struct SearchOptions {
  std::size_t T = 400;
  double tolerance = 2e-2;
  // Clip negative eigenvalues of S_i so instances stay min-max problems.
  bool psd_projection = true;
  // 0: GAMEBOUND_THREADS, else hardware concurrency.
  std::size_t threads = 0;
};

inline std::size_t default_threads() {
  if (const char* env = std::getenv("GAMEBOUND_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Random min-max game: standard normal entries, S_i symmetrized (and PSD
/// projected), coupling antisymmetric.
inline QuadraticGame random_minmax_game(std::size_t d1, std::size_t d2, std::uint64_t seed,
                                        bool psd_projection = true) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  auto draw = [&](std::size_t r, std::size_t c) {
    Matrix m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = nd(rng);
    }
    return m;
  };
  auto sym = [&](std::size_t n) {
    Matrix s = draw(n, n);
    Matrix out = 0.5 * (s + s.transpose());
    if (psd_projection) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(out);
      const Vector clipped = es.eigenvalues().cwiseMax(0.0);
      out = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
      out = 0.5 * (out + out.transpose()).eval();
    }
    return out;
  };
  Matrix s1 = sym(d1), s2 = sym(d2), m = draw(d1, d2);
  Vector b(static_cast<Eigen::Index>(d1 + d2));
  for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = nd(rng);
  return build_game({d1, d2}, {{{0, 0}, s1}, {{0, 1}, m}, {{1, 0}, Matrix(-m.transpose())}, {{1, 1}, s2}},
                    {{0, b.head(static_cast<Eigen::Index>(d1))}, {1, b.tail(static_cast<Eigen::Index>(d2))}});
}

inline std::vector<PSCLIMethod> search_methods(int p) {
  if (p == 1) return {PSCLIMethod::gd(0.1), PSCLIMethod::extragradient(0.1)};
  if (p == 2) return {PSCLIMethod::momentum(0.1, 0.0), PSCLIMethod::negative_momentum(0.1, -0.1)};
  throw ValidationError("violation search supports p = 1 or p = 2");
}

/// Randomized search for runs faster than a bound. Trials are independent
/// (per-trial seed splitmix64(seed + i)) and the result order is the trial
/// order regardless of thread count.
inline std::vector<Violation> search_violations(std::uint64_t seed, std::size_t trials, std::size_t d1,
                                                std::size_t d2, int p, const SearchOptions& opts = {}) {
  const std::vector<PSCLIMethod> methods = search_methods(p);
  std::vector<std::vector<Violation>> per_trial(trials);
  std::vector<std::string> errors(trials);
  auto work = [&](std::size_t i) {
    const std::uint64_t ts = splitmix64(seed + i);
    try {
      const QuadraticGame game = random_minmax_game(d1, d2, ts, opts.psd_projection);
      const ComplexSpectrum spec = eigenvalues(game.jacobian());
      if (!(spec.min_modulus > 1e-10 * spec.max_modulus)) return;
      for (const PSCLIMethod& base : methods) {
        const TuneResult tune = tune_step_size(base, spec.eigenvalues);
        if (!tune.convergent) continue;
        CertifyOptions co;
        co.T = opts.T;
        co.tolerance = opts.tolerance;
        co.seed = ts;
        const RateReport rep = certify(with_tuning(base, tune), game, co);
        for (const BoundVerdict& bv : rep.bounds) {
          if (bv.verdict != Verdict::kViolated) continue;
          per_trial[i].push_back({i, ts, rep.method, bv.bound.name, bv.bound.mode, *rep.rho_hat,
                                  bv.bound.value, bv.margin, rep.game_hash});
        }
      }
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  };
  const std::size_t nthreads = std::min(trials, opts.threads ? opts.threads : default_threads());
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < trials; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < nthreads; ++k) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < trials; i = next++) work(i);
      });
    }
    for (std::thread& th : pool) th.join();
  }
  for (std::size_t i = 0; i < trials; ++i) {
    if (!errors[i].empty()) throw Error("search trial " + std::to_string(i) + ": " + errors[i]);
  }
  std::vector<Violation> out;
  for (auto& v : per_trial) out.insert(out.end(), v.begin(), v.end());
  return out;
}

inline nlohmann::json to_json(const Violation& v) {
  return {{"trial", v.trial},   {"seed", v.seed},         {"method", v.method},
          {"bound", v.bound},   {"mode", v.mode},         {"rho_hat", v.rho_hat},
          {"value", v.value},   {"margin", v.margin},     {"game_hash", v.game_hash}};
}

}  // namespace gamebound

#endif  // GAMEBOUND_RATE_LAB_HPP
