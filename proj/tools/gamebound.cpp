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

// gamebound {gen|run|certify|sweep|search}
//
// Exit codes: 0 all bounds respected, 1 a violation was found, 2 error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gamebound/gamebound.hpp"

namespace gb = gamebound;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFinding = 1;
constexpr int kExitError = 2;

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw gb::ValidationError(std::string("bad number '") + item + "' in " + what);
    }
  }
  return out;
}

std::vector<std::size_t> parse_dims(const std::string& s) {
  std::vector<std::size_t> dims;
  for (double d : parse_list(s, "--dims")) {
    if (!(d >= 1) || d != std::floor(d)) throw gb::DimensionError("--dims entries must be positive integers");
    dims.push_back(static_cast<std::size_t>(d));
  }
  if (dims.empty()) throw gb::DimensionError("--dims is empty");
  return dims;
}

// "a,b,c", "log:lo:hi:n" or "lin:lo:hi:n".
std::vector<double> parse_grid(const std::string& s) {
  for (const char* kind : {"log:", "lin:"}) {
    if (s.rfind(kind, 0) != 0) continue;
    std::string rest = s.substr(4);
    for (char& ch : rest) {
      if (ch == ':') ch = ',';
    }
    const std::vector<double> v = parse_list(rest, "--grid");
    if (v.size() != 3 || !(v[2] >= 1) || v[2] != std::floor(v[2])) {
      throw gb::ValidationError("--grid expects " + std::string(kind) + "lo:hi:n");
    }
    const int n = static_cast<int>(v[2]);
    if (kind[1] == 'o') {
      if (!(v[0] > 0 && v[1] > 0)) throw gb::ValidationError("log grid needs positive bounds");
      return n == 1 ? std::vector<double>{v[0]} : gb::detail::log_grid(v[0], v[1], n);
    }
    return n == 1 ? std::vector<double>{v[0]} : gb::detail::lin_grid(v[0], v[1], n);
  }
  return parse_list(s, "--grid");
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary);
    if (!file_) throw gb::Error("cannot open output file '" + path + "'");
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct MethodFlags {
  std::string method = "gd";
  std::string eta = "tune";
  std::optional<double> beta;
  bool alternating = false;
  double noise = 0.0;
  int resolution = 64;

  void add_to(CLI::App* app) {
    app->add_option("--method", method, "gd | agd | eg | momentum | negative-momentum | sgd")
        ->capture_default_str();
    app->add_option("--eta", eta, "step size, comma list per player, or 'tune'")->capture_default_str();
    app->add_option("--beta", beta, "momentum coefficient (tuned with --eta tune when omitted)");
    app->add_flag("--alternating", alternating, "Gauss-Seidel pass inside the momentum lift");
    app->add_option("--noise", noise, "sgd gradient noise scale")->capture_default_str();
    app->add_option("--resolution", resolution, "tuning grid points")->capture_default_str();
  }

  bool tune() const { return eta == "tune"; }

  gb::PSCLIMethod base(std::uint64_t seed) const {
    gb::PSCLIMethod m;
    m.variant = gb::parse_variant(method);
    m.alternating = alternating;
    if (m.variant == gb::Variant::kStochasticGd) m.noise = gb::NoiseModel{noise, seed};
    if (m.variant == gb::Variant::kMomentumGd) m.beta = beta.value_or(0.5);
    if (m.variant == gb::Variant::kNegativeMomentumGd) m.beta = beta.value_or(-0.5);
    m.eta = tune() ? std::vector<double>{0.1} : parse_list(eta, "--eta");
    if (m.eta.empty()) throw gb::ValidationError("--eta is empty");
    return m;
  }
};

gb::PSCLIMethod apply_tuning(gb::PSCLIMethod m, const gb::TuneResult& t, const MethodFlags& f) {
  const std::optional<double> keep_beta = f.beta;
  m = gb::with_tuning(m, t);
  if (keep_beta && m.is_momentum()) m.beta = *keep_beta;
  return m;
}

// Spectrum-route tuning; a user-fixed beta restricts the search to eta.
gb::TuneResult tune_on_spectrum(const gb::PSCLIMethod& base, const std::vector<gb::Complex>& spectrum,
                                const MethodFlags& f) {
  if (!f.beta || !base.is_momentum()) return gb::tune_step_size(base, spectrum, f.resolution);
  if (f.resolution < 8) throw gb::ValidationError("tuning grid resolution must be >= 8");
  const double eta_max = 4.0 / gb::ComplexSpectrum::from(spectrum).max_modulus;
  gb::PSCLIMethod m = base;
  const auto [eta, rho] = gb::detail::minimize_on_grid(
      [&](double e) {
        m.eta = {e};
        return gb::rate_from_spectrum(m, spectrum);
      },
      gb::detail::log_grid(eta_max * 1e-4, eta_max, f.resolution), 1e-13, 2);
  return {eta, *f.beta, rho, rho < 1.0};
}

gb::PSCLIMethod resolve_method(const MethodFlags& f, const gb::LoadedInstance& inst, std::uint64_t seed) {
  gb::PSCLIMethod m = f.base(seed);
  if (!f.tune()) return m;
  if (inst.domino) {
    if (m.sequential()) {
      if (inst.domino->dim > 256) {
        throw gb::ValidationError("tuning a sequential method on a domino instance with dim > 256 is not "
                                  "supported; pass --eta");
      }
      return apply_tuning(m, gb::tune_step_size(m, inst.domino->game(), f.resolution), f);
    }
    return apply_tuning(m, tune_on_spectrum(m, inst.domino->spectrum(), f), f);
  }
  if (!m.sequential()) {
    return apply_tuning(m, tune_on_spectrum(m, gb::eigenvalues(inst.game->jacobian()).eigenvalues, f), f);
  }
  if (f.beta && m.is_momentum()) {
    throw gb::ValidationError("--eta tune with a fixed --beta is supported for simultaneous methods only");
  }
  return apply_tuning(m, gb::tune_step_size(m, *inst.game, f.resolution), f);
}

// gen --------------------------------------------------------------------

struct GenFlags {
  std::string kind;
  double mu1 = 1, mu2 = 1, c = 1, mu12 = 1, L12 = 2, L1 = 1, L2 = 1;
  std::size_t dim = 64;
  std::size_t block_dim = 1;
  std::string dims = "4,4";
  std::string diag = "1,9";
  std::uint64_t seed = 0;
  bool indefinite = false;
  bool offset = false;
  std::string out;
};

int cmd_gen(const GenFlags& g) {
  std::optional<gb::QuadraticGame> game;
  nlohmann::json a;
  if (g.kind == "domino-basic") {
    const gb::DominoInstance inst = gb::domino_basic(g.mu1, g.mu2, g.c, g.dim);
    game = inst.game();
    a = gb::analysis_json(inst);
  } else if (g.kind == "domino-improved") {
    const gb::DominoInstance inst = gb::domino_improved(g.mu1, g.mu2, g.mu12, g.L12, g.dim);
    game = inst.game();
    a = gb::analysis_json(inst);
  } else if (g.kind == "pscli2") {
    const gb::PSCLI2Instance inst =
        gb::pscli2_instance(g.mu1, g.L1, g.mu2, g.L2, g.mu12, g.L12, g.block_dim,
                            g.offset ? std::optional<std::uint64_t>(g.seed) : std::nullopt);
    const gb::Table1Kappa t1 = gb::kappa_table1(inst.bounds());
    a = {{"kind", "pscli2"},
         {"params",
          {{"mu1", g.mu1}, {"L1", g.L1}, {"mu2", g.mu2}, {"L2", g.L2}, {"mu12", g.mu12}, {"L12", g.L12},
           {"block_dim", g.block_dim}}},
         {"table1_cell", gb::to_string(t1.cell)},
         {"kappa_table1", t1.kappa},
         {"kappa_jacobian", gb::kappa_jacobian(inst.game)}};
    game = inst.game;
  } else if (g.kind == "random") {
    const std::vector<std::size_t> dims = parse_dims(g.dims);
    if (dims.size() != 2) throw gb::UnsupportedArityError("random games are 2-player (--dims d1,d2)");
    game = gb::random_minmax_game(dims[0], dims[1], g.seed, !g.indefinite);
    a = {{"kind", "random"},
         {"params", {{"dims", dims}, {"seed", g.seed}, {"psd_projection", !g.indefinite}}}};
  } else if (g.kind == "diagonal") {
    const std::vector<double> d = parse_list(g.diag, "--diag");
    if (d.empty()) throw gb::DimensionError("--diag is empty");
    gb::Vector v = Eigen::Map<const gb::Vector>(d.data(), static_cast<Eigen::Index>(d.size()));
    gb::Vector b = gb::Vector::Zero(v.size());
    if (g.offset) b = gb::detail::seeded_normal(d.size(), g.seed);
    game.emplace(gb::PlayerLayout({d.size()}), gb::Matrix(v.asDiagonal()), b);
    a = {{"kind", "diagonal"}, {"params", {{"diag", d}}}};
  } else {
    throw gb::ValidationError("unknown instance kind '" + g.kind +
                              "' (domino-basic, domino-improved, pscli2, random, diagonal)");
  }
  Output out(g.out);
  gb::write_game_json(out.stream(), *game, a);
  return kExitOk;
}

// run / certify ------------------------------------------------------------

struct RunFlags {
  std::string game;
  MethodFlags method;
  std::size_t T = 400;
  std::uint64_t seed = 0;
  bool zero_init = false;
  std::string out;
  std::string csv;
  double tolerance = 2e-2;
};

gb::Vector initial_point(const RunFlags& f, std::size_t n) {
  if (f.zero_init) return gb::Vector::Zero(static_cast<Eigen::Index>(n));
  return gb::detail::seeded_normal(n, f.seed);
}

int cmd_run(const RunFlags& f) {
  const gb::LoadedInstance inst = gb::load_instance(f.game);
  const gb::PSCLIMethod m = resolve_method(f.method, inst, f.seed);
  m.validate(inst.domino ? 2 : inst.game->players());
  gb::Trajectory tr;
  if (inst.domino) {
    gb::RunOptions ro;
    ro.w_star = inst.domino->w_star();
    tr = gb::run(m, inst.domino->op, initial_point(f, inst.size()), f.T, ro);
  } else {
    tr = gb::run(m, *inst.game, initial_point(f, inst.size()), f.T);
  }
  Output out(f.out);
  gb::write_trajectory_csv(out.stream(), tr);
  return kExitOk;
}

int cmd_certify(const RunFlags& f) {
  const gb::LoadedInstance inst = gb::load_instance(f.game);
  const gb::PSCLIMethod m = resolve_method(f.method, inst, f.seed);
  m.validate(inst.domino ? 2 : inst.game->players());
  gb::CertifyOptions co;
  co.T = f.T;
  co.seed = f.seed;
  co.tolerance = f.tolerance;
  gb::Trajectory tr;
  nlohmann::json report;
  bool violated = false;
  if (inst.domino) {
    const gb::DominoCertification dc = gb::certify_domino(m, *inst.domino, co, &tr);
    report = gb::to_json(dc.report);
    report["per_iterate"] = {{"ok", dc.per_iterate_ok},
                             {"checked_steps", dc.checked_steps},
                             {"first_failure", dc.first_failure ? nlohmann::json(*dc.first_failure)
                                                                : nlohmann::json(nullptr)}};
    report["sparsity_ok"] = dc.sparsity_ok;
    violated = dc.report.any_violated() || !dc.per_iterate_ok || !dc.sparsity_ok;
  } else {
    if (f.zero_init) co.w0 = gb::Vector::Zero(static_cast<Eigen::Index>(inst.size()));
    const gb::RateReport rep = gb::certify(m, *inst.game, co, &tr);
    report = gb::to_json(rep);
    violated = rep.any_violated();
  }
  {
    Output out(f.out);
    out.stream() << report.dump(1) << '\n';
  }
  if (!f.csv.empty()) {
    Output csv(f.csv);
    gb::write_trajectory_csv(csv.stream(), tr);
  }
  return violated ? kExitFinding : kExitOk;
}

// sweep ----------------------------------------------------------------------

struct SweepFlags {
  std::string game;
  MethodFlags method;
  std::string param = "eta";
  std::string grid;
  std::string out;
};

std::string csv_value(double v) { return gb::format_double(v); }

int cmd_sweep(const SweepFlags& f) {
  const std::vector<double> grid = parse_grid(f.grid);
  if (grid.empty()) throw gb::ValidationError("sweep grid is empty");
  const gb::LoadedInstance inst = gb::load_instance(f.game);
  Output out(f.out);
  std::ostream& os = out.stream();

  if (f.param == "eta" || f.param == "beta") {
    gb::PSCLIMethod m = f.method.base(0);
    if (f.param == "beta" && !m.is_momentum()) throw gb::ValidationError("--param beta needs a momentum method");
    std::vector<gb::Complex> spectrum;
    std::optional<gb::QuadraticGame> dense;
    std::vector<gb::BoundValue> bounds;
    if (inst.domino) {
      spectrum = inst.domino->spectrum();
      bounds = gb::detail::bounds_from(gb::ComplexSpectrum::from(spectrum), inst.domino->block_bounds(), m.p(),
                                       true);
      if (m.sequential()) dense = inst.domino->game();
    } else {
      dense = *inst.game;
      spectrum = gb::eigenvalues(inst.game->jacobian()).eigenvalues;
      bounds = gb::evaluate_bounds(*inst.game, m.p());
    }
    os << f.param << ",rho_asym";
    for (const gb::BoundValue& b : bounds) os << ',' << b.name;
    os << '\n';
    for (double v : grid) {
      if (f.param == "eta") {
        m.eta = {v};
      } else {
        m.beta = v;
      }
      m.validate(inst.domino ? 2 : inst.game->players());
      const double rho = (m.sequential() || !m.shared_eta()) ? gb::asymptotic_rate(m, *dense)
                                                             : gb::rate_from_spectrum(m, spectrum);
      os << csv_value(v) << ',' << csv_value(rho);
      for (const gb::BoundValue& b : bounds) os << ',' << (b.applicable ? csv_value(b.value) : "");
      os << '\n';
    }
    return kExitOk;
  }

  // Instance parameter sweeps rebuild the domino instance at each point.
  if (!inst.domino) throw gb::ValidationError("--param " + f.param + " needs a domino instance file");
  const gb::DominoInstance& base = *inst.domino;
  const bool improved = base.kind == gb::DominoKind::kImproved;
  const std::vector<std::string> allowed =
      improved ? std::vector<std::string>{"mu1", "mu2", "mu12", "L12"} : std::vector<std::string>{"mu1", "mu2", "c"};
  if (std::find(allowed.begin(), allowed.end(), f.param) == allowed.end()) {
    throw gb::ValidationError("--param " + f.param + " does not apply to " + gb::to_string(base.kind));
  }
  gb::PSCLIMethod m = f.method.base(0);
  if (m.sequential()) throw gb::ValidationError("instance sweeps support simultaneous methods only");
  os << f.param << ",kappa,chi,bound,rho_asym,eta\n";
  for (double v : grid) {
    double mu1 = base.mu1, mu2 = base.mu2, c = base.c, mu12 = base.mu12, L12 = base.L12;
    if (f.param == "mu1") mu1 = v;
    if (f.param == "mu2") mu2 = v;
    if (f.param == "c") c = v;
    if (f.param == "mu12") mu12 = v;
    if (f.param == "L12") L12 = v;
    const gb::DominoInstance d =
        improved ? gb::domino_improved(mu1, mu2, mu12, L12, base.dim) : gb::domino_basic(mu1, mu2, c, base.dim);
    const std::vector<gb::Complex> spectrum = d.spectrum();
    double rho = 0.0;
    if (f.method.tune()) {
      const gb::TuneResult t = tune_on_spectrum(m, spectrum, f.method);
      m = apply_tuning(m, t, f.method);
      rho = t.rho;
    } else {
      rho = gb::rate_from_spectrum(m, spectrum);
    }
    const double bound = improved ? gb::domino_improved_rate(d.kappa) : gb::domino_basic_rate(d.kappa);
    os << csv_value(v) << ',' << csv_value(d.kappa) << ',' << csv_value(d.chi) << ',' << csv_value(bound) << ','
       << csv_value(rho) << ',' << csv_value(m.eta.front()) << '\n';
  }
  return kExitOk;
}

// search ---------------------------------------------------------------------

struct SearchFlags {
  std::size_t trials = 100;
  std::string dims = "4,4";
  int p = 1;
  std::uint64_t seed = 1;
  std::size_t T = 400;
  std::size_t threads = 0;
  bool indefinite = false;
  std::string out;
};

int cmd_search(const SearchFlags& f) {
  const std::vector<std::size_t> dims = parse_dims(f.dims);
  if (dims.size() != 2) throw gb::UnsupportedArityError("search covers 2-player games (--dims d1,d2)");
  gb::SearchOptions so;
  so.T = f.T;
  so.threads = f.threads;
  so.psd_projection = !f.indefinite;
  const std::vector<gb::Violation> found = gb::search_violations(f.seed, f.trials, dims[0], dims[1], f.p, so);
  nlohmann::json methods = nlohmann::json::array();
  for (const gb::PSCLIMethod& m : gb::search_methods(f.p)) methods.push_back(gb::to_string(m.variant));
  nlohmann::json arr = nlohmann::json::array();
  for (const gb::Violation& v : found) arr.push_back(gb::to_json(v));
  const nlohmann::json doc = {{"trials", f.trials}, {"dims", dims},     {"p", f.p},
                              {"seed", f.seed},     {"T", f.T},        {"methods", methods},
                              {"psd_projection", !f.indefinite},       {"violations", arr}};
  Output out(f.out);
  out.stream() << doc.dump(1) << '\n';
  return found.empty() ? kExitOk : kExitFinding;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lower-bound certification harness for first-order methods on quadratic games"};
  app.require_subcommand(1);

  GenFlags gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate an instance file");
  gen_cmd->add_option("kind", gen.kind, "domino-basic | domino-improved | pscli2 | random | diagonal")->required();
  gen_cmd->add_option("--mu1", gen.mu1)->capture_default_str();
  gen_cmd->add_option("--mu2", gen.mu2)->capture_default_str();
  gen_cmd->add_option("--c", gen.c, "domino-basic coupling")->capture_default_str();
  gen_cmd->add_option("--mu12", gen.mu12)->capture_default_str();
  gen_cmd->add_option("--L12", gen.L12)->capture_default_str();
  gen_cmd->add_option("--L1", gen.L1)->capture_default_str();
  gen_cmd->add_option("--L2", gen.L2)->capture_default_str();
  gen_cmd->add_option("--dim", gen.dim, "domino truncation dimension")->capture_default_str();
  gen_cmd->add_option("--block-dim", gen.block_dim, "pscli2 replicas")->capture_default_str();
  gen_cmd->add_option("--dims", gen.dims, "random: d1,d2")->capture_default_str();
  gen_cmd->add_option("--diag", gen.diag, "diagonal: entries")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_flag("--indefinite", gen.indefinite, "random: skip the PSD projection of S_i");
  gen_cmd->add_flag("--offset", gen.offset, "pscli2/diagonal: seeded random offset b");
  gen_cmd->add_option("--out", gen.out, "output path (default stdout)");

  RunFlags runf;
  CLI::App* run_cmd = app.add_subcommand("run", "run a method and write the trajectory CSV");
  RunFlags certf;
  CLI::App* cert_cmd = app.add_subcommand("certify", "fit the empirical rate and check every bound");
  for (auto [cmd, flags] : {std::pair{run_cmd, &runf}, std::pair{cert_cmd, &certf}}) {
    cmd->add_option("game", flags->game, "game file or inline JSON")->required();
    flags->method.add_to(cmd);
    cmd->add_option("--T", flags->T, "iterations")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--seed", flags->seed, "initial point and noise seed")->capture_default_str();
    cmd->add_flag("--zero-init", flags->zero_init, "start from w0 = 0");
    cmd->add_option("--out", flags->out, "output path (default stdout)");
  }
  cert_cmd->add_option("--csv", certf.csv, "also write the trajectory CSV");
  cert_cmd->add_option("--tolerance", certf.tolerance, "absolute rate tolerance")->capture_default_str();

  SweepFlags sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "asymptotic rate over a parameter grid (CSV)");
  sweep_cmd->add_option("game", sweep.game, "game file or inline JSON")->required();
  sweep.method.add_to(sweep_cmd);
  sweep_cmd->add_option("--param", sweep.param, "eta | beta | mu1 | mu2 | c | mu12 | L12")->capture_default_str();
  sweep_cmd->add_option("--grid", sweep.grid, "a,b,c | log:lo:hi:n | lin:lo:hi:n")->required();
  sweep_cmd->add_option("--out", sweep.out, "output path (default stdout)");

  SearchFlags search;
  CLI::App* search_cmd = app.add_subcommand("search", "randomized search for bound violations");
  search_cmd->add_option("--trials", search.trials)->capture_default_str();
  search_cmd->add_option("--dims", search.dims, "d1,d2")->capture_default_str();
  search_cmd->add_option("--p", search.p, "1: {gd, eg}; 2: {momentum, negative momentum}")->capture_default_str();
  search_cmd->add_option("--seed", search.seed)->capture_default_str();
  search_cmd->add_option("--T", search.T, "iterations per run")->capture_default_str()->check(CLI::PositiveNumber);
  search_cmd->add_option("--threads", search.threads, "worker threads (default GAMEBOUND_THREADS or all cores)");
  search_cmd->add_flag("--indefinite", search.indefinite, "skip the PSD projection of S_i");
  search_cmd->add_option("--out", search.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen);
    if (*run_cmd) return cmd_run(runf);
    if (*cert_cmd) return cmd_certify(certf);
    if (*sweep_cmd) return cmd_sweep(sweep);
    if (*search_cmd) return cmd_search(search);
  } catch (const gb::Error& e) {
    std::cerr << "gamebound: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "gamebound: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
