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

// Quadratic n-player games: v(w) = A w + b, where A is the Jacobian with
// player blocks and b the affine offset.

#ifndef GAMEBOUND_GAME_HPP
#define GAMEBOUND_GAME_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "gamebound/eigen_solver.hpp"
#include "gamebound/errors.hpp"
#include "gamebound/linalg.hpp"

namespace gamebound {

// Player-block placement inside the joint parameter vector.
class PlayerLayout {
 public:
  PlayerLayout() = default;
  explicit PlayerLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw DimensionError("a game needs at least one player");
    offsets_.reserve(dims_.size());
    std::size_t acc = 0;
    for (std::size_t d : dims_) {
      if (d == 0) throw DimensionError("player dimensions must be positive");
      offsets_.push_back(acc);
      acc += d;
    }
    total_ = acc;
  }

  std::size_t players() const { return dims_.size(); }
  std::size_t total() const { return total_; }
  std::size_t dim(std::size_t i) const { return dims_.at(i); }
  std::size_t offset(std::size_t i) const { return offsets_.at(i); }
  const std::vector<std::size_t>& dims() const { return dims_; }

  friend bool operator==(const PlayerLayout&, const PlayerLayout&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
};

using BlockKey = std::pair<std::size_t, std::size_t>;

/// An n-player quadratic game with vector field v(w) = A w + b.
///
/// Diagonal blocks S_i are replaced by (S_i + S_i^T)/2 on construction, so
/// they are exactly symmetric afterwards. Instances are immutable.
class QuadraticGame {
 public:
  QuadraticGame(PlayerLayout layout, Matrix jacobian, Vector offset)
      : layout_(std::move(layout)), a_(std::move(jacobian)), b_(std::move(offset)) {
    const auto d = static_cast<Eigen::Index>(layout_.total());
    if (a_.rows() != d || a_.cols() != d) {
      throw DimensionError("Jacobian is " + std::to_string(a_.rows()) + "x" +
                           std::to_string(a_.cols()) + " but player dimensions sum to " +
                           std::to_string(d));
    }
    if (b_.size() != d) throw DimensionError("offset length does not match the game dimension");
    if (!a_.allFinite() || !b_.allFinite()) throw ValidationError("game has non-finite entries");
    for (std::size_t i = 0; i < layout_.players(); ++i) {
      const auto o = static_cast<Eigen::Index>(layout_.offset(i));
      const auto n = static_cast<Eigen::Index>(layout_.dim(i));
      Matrix s = a_.block(o, o, n, n);
      a_.block(o, o, n, n) = 0.5 * (s + s.transpose());
    }
  }

  std::size_t players() const { return layout_.players(); }
  std::size_t dim() const { return layout_.total(); }
  const PlayerLayout& layout() const { return layout_; }
  const Matrix& jacobian() const { return a_; }
  const Vector& offset() const { return b_; }

  Matrix block(std::size_t i, std::size_t j) const {
    return a_.block(static_cast<Eigen::Index>(layout_.offset(i)),
                    static_cast<Eigen::Index>(layout_.offset(j)),
                    static_cast<Eigen::Index>(layout_.dim(i)),
                    static_cast<Eigen::Index>(layout_.dim(j)));
  }
  Vector offset_block(std::size_t i) const {
    return b_.segment(static_cast<Eigen::Index>(layout_.offset(i)),
                      static_cast<Eigen::Index>(layout_.dim(i)));
  }

  // Jacobian-operator interface shared with structured operators.
  std::size_t size() const { return dim(); }
  Vector apply(const Vector& w) const { return a_ * w; }

 private:
  PlayerLayout layout_;
  Matrix a_;
  Vector b_;
};

/// Assembles a game from per-player blocks (0-based player indices).
/// Missing blocks and offsets are zero.
inline QuadraticGame build_game(const std::vector<std::size_t>& dims,
                                const std::map<BlockKey, Matrix>& blocks,
                                const std::map<std::size_t, Vector>& offsets = {}) {
  PlayerLayout layout(dims);
  const auto d = static_cast<Eigen::Index>(layout.total());
  Matrix a = Matrix::Zero(d, d);
  Vector b = Vector::Zero(d);
  for (const auto& [key, m] : blocks) {
    const auto [i, j] = key;
    if (i >= layout.players() || j >= layout.players()) {
      throw DimensionError("block (" + std::to_string(i) + "," + std::to_string(j) +
                           ") refers to a missing player");
    }
    if (static_cast<std::size_t>(m.rows()) != layout.dim(i) ||
        static_cast<std::size_t>(m.cols()) != layout.dim(j)) {
      throw DimensionError("block (" + std::to_string(i) + "," + std::to_string(j) +
                           ") has shape " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()));
    }
    if (!m.allFinite()) throw ValidationError("block has non-finite entries");
    a.block(static_cast<Eigen::Index>(layout.offset(i)), static_cast<Eigen::Index>(layout.offset(j)),
            m.rows(), m.cols()) = m;
  }
  for (const auto& [i, v] : offsets) {
    if (i >= layout.players()) throw DimensionError("offset refers to a missing player");
    if (static_cast<std::size_t>(v.size()) != layout.dim(i)) {
      throw DimensionError("offset " + std::to_string(i) + " has length " + std::to_string(v.size()));
    }
    if (!v.allFinite()) throw ValidationError("offset has non-finite entries");
    b.segment(static_cast<Eigen::Index>(layout.offset(i)), v.size()) = v;
  }
  return QuadraticGame(std::move(layout), std::move(a), std::move(b));
}

inline Vector vector_field(const QuadraticGame& game, const Vector& w) {
  if (static_cast<std::size_t>(w.size()) != game.dim()) {
    throw DimensionError("vector_field: point has length " + std::to_string(w.size()) +
                         ", game dimension is " + std::to_string(game.dim()));
  }
  return game.jacobian() * w + game.offset();
}

struct StationaryPoint {
  Vector w_star;
  double residual = 0.0;
  // Ratio of extreme LU pivots.
  double solver_condition_estimate = 0.0;
};

// w* = -A^{-1} b by partial-pivot LU and one refinement step.
inline StationaryPoint stationary_point(const QuadraticGame& game) {
  StationaryPoint sp;
  sp.w_star = solve_refined(game.jacobian(), -game.offset(), &sp.solver_condition_estimate);
  sp.residual = vector_field(game, sp.w_star).norm();
  const double limit = 1e-8 * (1.0 + game.offset().norm());
  if (!(sp.residual <= limit)) {
    throw Error("stationary point residual " + std::to_string(sp.residual) +
                " exceeds tolerance; Jacobian is too ill-conditioned");
  }
  return sp;
}

/// min_x max_y  x^T M y + 1/2 x^T S1 x - 1/2 y^T S2 y + x^T b1 - y^T b2 + c
/// with S1, S2 symmetric positive semi-definite.
class MinMaxProblem {
 public:
  static constexpr double kPsdTolerance = 1e-10;
  static constexpr double kSymmetryTolerance = 1e-12;

  MinMaxProblem(Matrix m, Matrix s1, Matrix s2, Vector b1, Vector b2, double c = 0.0)
      : m_(std::move(m)), s1_(std::move(s1)), s2_(std::move(s2)), b1_(std::move(b1)),
        b2_(std::move(b2)), c_(c) {
    const auto d1 = m_.rows(), d2 = m_.cols();
    if (s1_.rows() != d1 || s1_.cols() != d1 || s2_.rows() != d2 || s2_.cols() != d2 ||
        b1_.size() != d1 || b2_.size() != d2) {
      throw DimensionError("min-max problem blocks have inconsistent shapes");
    }
    if (d1 == 0 || d2 == 0) throw DimensionError("min-max problem needs positive dimensions");
    check_psd(s1_, "S1");
    check_psd(s2_, "S2");
    s1_ = 0.5 * (s1_ + s1_.transpose()).eval();
    s2_ = 0.5 * (s2_ + s2_.transpose()).eval();
  }

  std::size_t d1() const { return static_cast<std::size_t>(m_.rows()); }
  std::size_t d2() const { return static_cast<std::size_t>(m_.cols()); }
  const Matrix& coupling() const { return m_; }
  const Matrix& s1() const { return s1_; }
  const Matrix& s2() const { return s2_; }
  const Vector& b1() const { return b1_; }
  const Vector& b2() const { return b2_; }
  double constant() const { return c_; }

 private:
  static void check_psd(const Matrix& s, const char* name) {
    if (!s.allFinite()) throw ValidationError(std::string(name) + " has non-finite entries");
    if ((s - s.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * (1.0 + s.cwiseAbs().maxCoeff())) {
      throw NotAMinMaxError(std::string(name) + " is not symmetric");
    }
    const Matrix sym = 0.5 * (s + s.transpose());
    for (const double ev : symmetric_eigenvalues_dense(sym)) {
      if (ev < -kPsdTolerance) {
        throw NotAMinMaxError(std::string(name) + " is not positive semi-definite (eigenvalue " +
                              std::to_string(ev) + ")");
      }
    }
  }

  Matrix m_, s1_, s2_;
  Vector b1_, b2_;
  double c_;
};

// A = [[S1, M], [-M^T, S2]], b = (b1, b2). The constant c does not enter v.
inline QuadraticGame minmax_to_game(const MinMaxProblem& p) {
  const auto d1 = static_cast<Eigen::Index>(p.d1()), d2 = static_cast<Eigen::Index>(p.d2());
  Matrix a(d1 + d2, d1 + d2);
  a.topLeftCorner(d1, d1) = p.s1();
  a.topRightCorner(d1, d2) = p.coupling();
  a.bottomLeftCorner(d2, d1) = -p.coupling().transpose();
  a.bottomRightCorner(d2, d2) = p.s2();
  Vector b(d1 + d2);
  b << p.b1(), p.b2();
  return QuadraticGame(PlayerLayout({p.d1(), p.d2()}), std::move(a), std::move(b));
}

inline MinMaxProblem game_to_minmax(const QuadraticGame& game) {
  if (game.players() != 2) throw NotAMinMaxError("only 2-player games have a min-max form");
  const Matrix m12 = game.block(0, 1);
  const Matrix m21 = game.block(1, 0);
  const double scale = 1.0 + m12.cwiseAbs().maxCoeff();
  if ((m21 + m12.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw NotAMinMaxError("coupling blocks are not antisymmetric (M21 != -M12^T)");
  }
  return MinMaxProblem(m12, game.block(0, 0), game.block(1, 1), game.offset_block(0),
                       game.offset_block(1), 0.0);
}

}  // namespace gamebound

#endif  // GAMEBOUND_GAME_HPP
