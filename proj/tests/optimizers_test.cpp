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


#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <random>
#include <sstream>

#include "gamebound/errors.hpp"
#include "gamebound/optimizers.hpp"
#include "test_util.hpp"

namespace gamebound {
namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Matrix rotation() {
  Matrix r(2, 2);
  r << 0, 1, -1, 0;
  return r;
}

QuadraticGame one_player(const Matrix& a, Vector b = Vector()) {
  if (b.size() == 0) b = Vector::Zero(a.rows());
  return QuadraticGame(PlayerLayout({static_cast<std::size_t>(a.rows())}), a, b);
}

QuadraticGame bilinear_game() { return QuadraticGame(PlayerLayout({1, 1}), rotation(), Vector::Zero(2)); }

TEST(ParseVariant, ShortAndLongNames) {
  EXPECT_EQ(parse_variant("gd"), Variant::kSimultaneousGd);
  EXPECT_EQ(parse_variant("alternating-gd"), Variant::kAlternatingGd);
  EXPECT_EQ(parse_variant("momentum"), Variant::kMomentumGd);
  EXPECT_EQ(parse_variant("negative-momentum"), Variant::kNegativeMomentumGd);
  EXPECT_EQ(parse_variant("eg"), Variant::kExtragradient);
  EXPECT_EQ(parse_variant("sgd"), Variant::kStochasticGd);
  EXPECT_THROW(parse_variant("adam"), ValidationError);
}

TEST(Validate, RejectsBadMethods) {
  EXPECT_THROW(PSCLIMethod::gd(-0.1).validate(1), ValidationError);
  EXPECT_THROW(PSCLIMethod::gd(NAN).validate(1), ValidationError);
  EXPECT_THROW(PSCLIMethod::momentum(0.1, -0.2).validate(1), ValidationError);
  EXPECT_THROW(PSCLIMethod::negative_momentum(0.1, 0.2).validate(1), ValidationError);
  PSCLIMethod three = PSCLIMethod::gd(0.1);
  three.eta = {0.1, 0.2, 0.3};
  EXPECT_THROW(three.validate(2), ValidationError);
  PSCLIMethod alt = PSCLIMethod::gd(0.1);
  alt.alternating = true;
  EXPECT_THROW(alt.validate(2), ValidationError);
  PSCLIMethod sgd = PSCLIMethod::sgd(0.1, {0.01, 1});
  sgd.noise.reset();
  EXPECT_THROW(sgd.validate(1), ValidationError);
  EXPECT_NO_THROW(PSCLIMethod::gd(0.0).validate(1));
}

TEST(CoefficientForm, GradientDescent) {
  const CoefficientForm f = coefficient_form(PSCLIMethod::gd(0.5), one_player(diag2(1, 3)));
  ASSERT_EQ(f.C.size(), 1u);
  EXPECT_LT((f.C[0] - diag2(0.5, -0.5)).norm(), 1e-15);
  EXPECT_LT((f.N + 0.5 * Matrix::Identity(2, 2)).norm(), 1e-15);
}

TEST(CoefficientForm, ExtragradientOnRotation) {
  const CoefficientForm f = coefficient_form(PSCLIMethod::extragradient(1.0), bilinear_game());
  ASSERT_EQ(f.C.size(), 1u);
  Matrix c0(2, 2);
  c0 << 0, -1, 1, 0;
  EXPECT_LT((f.C[0] - c0).norm(), 1e-15);
  EXPECT_LT((f.N + (Matrix::Identity(2, 2) - rotation())).norm(), 1e-15);
}

TEST(CoefficientForm, ZeroMomentumIsGradientDescent) {
  std::mt19937_64 rng(3);
  const Matrix a = testing::random_matrix(rng, 4, 4);
  const QuadraticGame g(PlayerLayout({2, 2}), a, Vector::Zero(4));
  const CoefficientForm m = coefficient_form(PSCLIMethod::momentum(0.3, 0.0), g);
  const CoefficientForm gd = coefficient_form(PSCLIMethod::gd(0.3), g);
  ASSERT_EQ(m.C.size(), 2u);
  EXPECT_TRUE(m.C[0].isZero(0.0));
  EXPECT_LT((m.C[1] - gd.C[0]).norm(), 1e-15);
  EXPECT_LT((m.N - gd.N).norm(), 1e-15);
}

TEST(Step, HandExamples) {
  const QuadraticGame id = one_player(Matrix::Identity(2, 2), -Vector::Ones(2));
  const Vector w1 = step(PSCLIMethod::gd(1.0), id, {Vector::Zero(2)});
  EXPECT_LT((w1 - Vector::Ones(2)).norm(), 1e-15);

  Vector w0(2);
  w0 << 1, 0;
  // (I - 0.5 A + 0.25 A^2) w0 with A w0 = (0, -1) and A^2 = -I.
  const Vector e = step(PSCLIMethod::extragradient(0.5), bilinear_game(), {w0});
  EXPECT_NEAR(e[0], 0.75, 1e-15);
  EXPECT_NEAR(e[1], 0.5, 1e-15);
}

TEST(Step, ArityAndDimensionErrors) {
  const QuadraticGame g = one_player(diag2(1, 3));
  EXPECT_THROW(step(PSCLIMethod::gd(0.1), g, {}), ArityError);
  EXPECT_THROW(step(PSCLIMethod::momentum(0.1, 0.5), g, {Vector::Zero(2)}), ArityError);
  EXPECT_THROW(step(PSCLIMethod::gd(0.1), g, {Vector::Zero(3)}), DimensionError);
}

TEST(Step, FixedPointForEveryVariant) {
  std::mt19937_64 rng(5);
  Matrix a = testing::random_matrix(rng, 4, 4);
  a += 5.0 * Matrix::Identity(4, 4);
  const QuadraticGame g(PlayerLayout({2, 2}), a, testing::random_vector(rng, 4));
  const Vector ws = stationary_point(g).w_star;
  for (const PSCLIMethod& m : {PSCLIMethod::gd(0.1), PSCLIMethod::agd(0.1), PSCLIMethod::extragradient(0.1),
                               PSCLIMethod::momentum(0.1, 0.3), PSCLIMethod::negative_momentum(0.1, -0.3)}) {
    std::vector<Vector> hist(static_cast<std::size_t>(m.p()), ws);
    EXPECT_LT((step(m, g, hist) - ws).norm(), 1e-10 * (1 + ws.norm())) << m.descriptor();
  }
}

TEST(Run, GradientDescentIterates) {
  Vector w0(2);
  w0 << 1, 1;
  const Trajectory tr = run(PSCLIMethod::gd(0.5), one_player(diag2(1, 3)), w0, 2);
  ASSERT_EQ(tr.iterates.size(), 3u);
  EXPECT_LT((tr.iterates[1] - Vector(Eigen::Vector2d(0.5, -0.5))).norm(), 1e-15);
  EXPECT_LT((tr.iterates[2] - Vector(Eigen::Vector2d(0.25, 0.25))).norm(), 1e-15);
  EXPECT_FALSE(tr.diverged);
}

TEST(Run, GradientDescentDivergesOnBilinear) {
  Vector w0(2);
  w0 << 1, 0;
  for (double eta : {0.01, 0.1, 1.0}) {
    const Trajectory tr = run(PSCLIMethod::gd(eta), bilinear_game(), w0, 50);
    for (std::size_t t = 1; t < tr.distances.size(); ++t) EXPECT_GT(tr.distances[t], tr.distances[t - 1]);
  }
}

TEST(Run, DivergenceGuardStops) {
  Vector w0(2);
  w0 << 1, 1;
  const Trajectory tr = run(PSCLIMethod::gd(10.0), one_player(diag2(1, 3)), w0, 1000);
  EXPECT_TRUE(tr.diverged);
  EXPECT_LT(tr.distances.size(), 1001u);
}

TEST(Run, StartingAtSolutionStaysThere) {
  std::mt19937_64 rng(9);
  Matrix a = testing::random_matrix(rng, 3, 3) + 4.0 * Matrix::Identity(3, 3);
  const QuadraticGame g(PlayerLayout({1, 2}), a, testing::random_vector(rng, 3));
  const Vector ws = stationary_point(g).w_star;
  const Trajectory tr = run(PSCLIMethod::momentum(0.05, 0.4), g, ws, 30);
  for (double d : tr.distances) EXPECT_LT(d, 1e-12);
}

TEST(Run, DeterministicAcrossRuns) {
  std::mt19937_64 rng(11);
  const Matrix a = testing::random_matrix(rng, 4, 4) + 3.0 * Matrix::Identity(4, 4);
  const QuadraticGame g(PlayerLayout({2, 2}), a, testing::random_vector(rng, 4));
  const Vector w0 = testing::random_vector(rng, 4);
  const PSCLIMethod sgd = PSCLIMethod::sgd(0.05, {0.05, 42});
  const Trajectory a1 = run(sgd, g, w0, 40), a2 = run(sgd, g, w0, 40);
  ASSERT_EQ(a1.distances.size(), a2.distances.size());
  for (std::size_t t = 0; t < a1.distances.size(); ++t) EXPECT_EQ(a1.distances[t], a2.distances[t]);
}

TEST(Run, TrajectoryCsvLayout) {
  Vector w0(2);
  w0 << 1, 1;
  const Trajectory tr = run(PSCLIMethod::gd(0.5), one_player(diag2(1, 3)), w0, 1);
  std::ostringstream os;
  write_trajectory_csv(os, tr);
  const std::string csv = os.str();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,dist,w_0,w_1");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST(Consistency, HandExamples) {
  const QuadraticGame g = one_player(diag2(1, 3));
  const ConsistencyResult ok = consistency_check(PSCLIMethod::gd(0.5), g);
  EXPECT_TRUE(ok.consistent);
  EXPECT_NEAR(ok.rho, 0.5, 1e-14);
  EXPECT_EQ(ok.identity_error, 0.0);

  const ConsistencyResult big = consistency_check(PSCLIMethod::gd(0.7), g);
  EXPECT_FALSE(big.consistent);
  EXPECT_NEAR(big.rho, 1.1, 1e-14);
  EXPECT_NE(big.reason.find("(ii)"), std::string::npos);

  const ConsistencyResult frozen = consistency_check(PSCLIMethod::gd(0.0), g);
  EXPECT_FALSE(frozen.consistent);
  EXPECT_NEAR(frozen.rho, 1.0, 1e-15);
  EXPECT_NE(frozen.reason.find("(ii)"), std::string::npos);
}

TEST(Consistency, SingularJacobianPropagates) {
  EXPECT_THROW(consistency_check(PSCLIMethod::gd(0.5), one_player(diag2(1, 0))), SingularJacobianError);
}

TEST(AsymptoticRate, HandExamples) {
  EXPECT_NEAR(asymptotic_rate(PSCLIMethod::gd(0.5), one_player(diag2(1, 3))), 0.5, 1e-14);
  EXPECT_NEAR(asymptotic_rate(PSCLIMethod::gd(0.1), bilinear_game()), std::sqrt(1.01), 1e-14);
  EXPECT_NEAR(asymptotic_rate(PSCLIMethod::extragradient(0.5), bilinear_game()), std::sqrt(0.8125), 1e-14);
}

TEST(AsymptoticRate, HeavyBallClosedForm) {
  // Optimal heavy ball on [1, 9]: eta = 4/(sqrt(L)+sqrt(mu))^2, beta = ((sqrt k - 1)/(sqrt k + 1))^2.
  const double eta = 4.0 / 16.0, beta = 0.25;
  EXPECT_NEAR(asymptotic_rate(PSCLIMethod::momentum(eta, beta), one_player(diag2(1, 9))), 0.5, 1e-7);
}

TEST(RateFromSpectrum, RejectsSequentialMethods) {
  EXPECT_THROW(rate_from_spectrum(PSCLIMethod::agd(0.1), {Complex(1, 0)}), ValidationError);
  PSCLIMethod per = PSCLIMethod::gd(0.1);
  per.eta = {0.1, 0.2};
  EXPECT_THROW(rate_from_spectrum(per, {Complex(1, 0)}), ValidationError);
}

TEST(Tune, GradientDescentOnDiagonal) {
  const TuneResult t = tune_step_size(PSCLIMethod::gd(0.1), one_player(diag2(1, 3)));
  EXPECT_TRUE(t.convergent);
  EXPECT_NEAR(t.eta, 0.5, 1e-6);
  EXPECT_NEAR(t.rho, 0.5, 1e-10);
}

TEST(Tune, GradientDescentOnBilinearHasNoConvergentStep) {
  const TuneResult t = tune_step_size(PSCLIMethod::gd(0.1), bilinear_game());
  EXPECT_FALSE(t.convergent);
  EXPECT_GE(t.rho, 1.0);
}

TEST(Tune, ExtragradientOnBilinearConverges) {
  const TuneResult t = tune_step_size(PSCLIMethod::extragradient(0.1), bilinear_game());
  EXPECT_TRUE(t.convergent);
  // min over eta of |1 - i eta - eta^2|^2 = (1 - eta^2)^2 + eta^2 is 3/4 at eta^2 = 1/2.
  EXPECT_NEAR(t.rho, std::sqrt(0.75), 1e-8);
  EXPECT_NEAR(t.eta, std::sqrt(0.5), 1e-4);
}

TEST(Tune, HeavyBallOnDiagonal) {
  const TuneResult t = tune_step_size(PSCLIMethod::momentum(0.1, 0.1), one_player(diag2(1, 9)));
  EXPECT_TRUE(t.convergent);
  EXPECT_NEAR(t.rho, 0.5, 1e-3);
  EXPECT_GE(t.rho, 0.5 - 1e-9);
}

TEST(Tune, RejectsCoarseGrid) {
  EXPECT_THROW(tune_step_size(PSCLIMethod::gd(0.1), one_player(diag2(1, 3)), 4), ValidationError);
}

TEST(Tune, AlternatingUsesCompanionRate) {
  const QuadraticGame g = bilinear_game();
  const TuneResult t = tune_step_size(PSCLIMethod::agd(0.1), g);
  EXPECT_NEAR(t.rho, asymptotic_rate(with_tuning(PSCLIMethod::agd(0.1), t), g), 1e-12);
  // Alternating GD on a bilinear game is marginally stable: |z| = 1 for eta < 2.
  EXPECT_NEAR(t.rho, 1.0, 1e-8);
}

}  // namespace
}  // namespace gamebound
