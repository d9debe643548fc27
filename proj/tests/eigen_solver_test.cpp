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
#include <random>

#include "gamebound/eigen_solver.hpp"
#include "gamebound/errors.hpp"
#include "test_util.hpp"

namespace gamebound {
namespace {

TEST(HessenbergQr, RandomMatricesMatchOracle) {
  std::mt19937_64 rng(42);
  for (int n : {1, 2, 3, 4, 7, 12, 25, 60, 120}) {
    for (int rep = 0; rep < 4; ++rep) {
      const Matrix a = testing::random_matrix(rng, n, n);
      const double d = testing::spectrum_distance(hessenberg_qr_eigenvalues(a), testing::oracle_eigenvalues(a));
      EXPECT_LT(d, 1e-9 * (1.0 + a.norm())) << "n=" << n;
    }
  }
}

TEST(HessenbergQr, RotationGeneratorGivesConjugatePair) {
  Matrix a(2, 2);
  a << 0, 1, -1, 0;
  const auto ev = hessenberg_qr_eigenvalues(a);
  EXPECT_LT(testing::spectrum_distance(ev, {Complex(0, 1), Complex(0, -1)}), 1e-14);
}

TEST(HessenbergQr, CyclicPermutationsNeedExceptionalShifts) {
  // Unit-modulus eigenvalues of equal size stall the plain double shift.
  for (int n : {3, 4, 8, 16, 33}) {
    Matrix a = Matrix::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) a(i + 1, i) = 1.0;
    a(0, n - 1) = 1.0;
    std::vector<Complex> roots;
    for (int k = 0; k < n; ++k) roots.push_back(std::polar(1.0, 2.0 * M_PI * k / n));
    EXPECT_LT(testing::spectrum_distance(hessenberg_qr_eigenvalues(a), roots), 1e-10) << "n=" << n;
  }
}

TEST(HessenbergQr, PlusMinusPairsInCompanionForm) {
  // Block companion of the polynomial with roots +-0.98 e^{+-i theta_k}.
  std::mt19937_64 rng(9);
  const int d = 8;
  Matrix s = testing::random_matrix(rng, d, d);
  s = 0.5 * (s + s.transpose()).eval();
  Matrix c = Matrix::Zero(2 * d, 2 * d);
  c.topLeftCorner(d, d) = 0.02 * s;
  c.topRightCorner(d, d) = 0.96 * Matrix::Identity(d, d);
  c.bottomLeftCorner(d, d) = Matrix::Identity(d, d);
  const double dist = testing::spectrum_distance(hessenberg_qr_eigenvalues(c), testing::oracle_eigenvalues(c));
  EXPECT_LT(dist, 1e-10);
}

TEST(HessenbergQr, TriangularAndZeroMatrices) {
  Matrix a(3, 3);
  a << 2, 5, -1, 0, -3, 4, 0, 0, 7;
  EXPECT_LT(testing::spectrum_distance(hessenberg_qr_eigenvalues(a), {2.0, -3.0, 7.0}), 1e-13);
  EXPECT_EQ(testing::spectrum_distance(hessenberg_qr_eigenvalues(Matrix::Zero(4, 4)), std::vector<Complex>(4)), 0.0);
  EXPECT_TRUE(hessenberg_qr_eigenvalues(Matrix(0, 0)).empty());
}

TEST(HessenbergQr, SmallEigenvaluesKeepRelativeAccuracy) {
  // kappa = max|sigma| / min|sigma| depends on the smallest eigenvalue.
  Vector d(4);
  d << 1e-9, 1e-3, 1.0, 1e3;
  std::mt19937_64 rng(1);
  const Matrix q = Eigen::HouseholderQR<Matrix>(testing::random_matrix(rng, 4, 4)).householderQ();
  const Matrix a = q * d.asDiagonal() * q.transpose();
  const auto ev = hessenberg_qr_eigenvalues(a);
  double smallest = INFINITY;
  for (const Complex& z : ev) smallest = std::min(smallest, std::abs(z));
  EXPECT_NEAR(smallest / 1e-9, 1.0, 1e-3);
}

TEST(HessenbergQr, Errors) {
  EXPECT_THROW(hessenberg_qr_eigenvalues(Matrix::Zero(2, 3)), DimensionError);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = NAN;
  EXPECT_THROW(hessenberg_qr_eigenvalues(bad), ValidationError);
  // A zero budget cannot converge on a genuinely coupled block.
  Matrix rot(3, 3);
  rot << 0, 0, 1, 1, 0, 0, 0, 1, 0;
  try {
    hessenberg_qr_eigenvalues(rot, HessenbergQrOptions{1, 0});
    FAIL() << "expected SpectralFailure";
  } catch (const SpectralFailure& e) {
    EXPECT_LE(e.index(), 2u);
  }
}

TEST(SymmetricTridiagonal, MatchesDenseOracle) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  for (int n : {1, 2, 5, 30, 200}) {
    std::vector<double> diag(n), off(n > 0 ? n - 1 : 0);
    for (double& v : diag) v = nd(rng);
    for (double& v : off) v = nd(rng);
    Matrix t = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) t(i, i) = diag[i];
    for (int i = 0; i + 1 < n; ++i) t(i, i + 1) = t(i + 1, i) = off[i];
    const auto ev = symmetric_tridiagonal_eigenvalues(diag, off);
    const auto ref = testing::oracle_symmetric_eigenvalues(t);
    ASSERT_EQ(ev.size(), ref.size());
    for (int i = 0; i < n; ++i) EXPECT_NEAR(ev[i], ref[i], 1e-11 * (1.0 + std::abs(ref[i])));
    EXPECT_TRUE(std::is_sorted(ev.begin(), ev.end()));
  }
  EXPECT_THROW(symmetric_tridiagonal_eigenvalues({1.0, 2.0}, {}), DimensionError);
}

TEST(SymmetricDense, MatchesOracleIncludingRepeatedZeros) {
  std::mt19937_64 rng(13);
  for (int n : {1, 2, 3, 6, 20, 50}) {
    Matrix s = testing::random_matrix(rng, n, n);
    s = 0.5 * (s + s.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(s)};
    const Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
    const Matrix psd = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
    for (const Matrix& m : {s, psd}) {
      const auto ev = symmetric_eigenvalues_dense(m);
      const auto ref = testing::oracle_symmetric_eigenvalues(m);
      for (int i = 0; i < n; ++i) EXPECT_NEAR(ev[i], ref[i], 1e-12 * (1.0 + m.norm()));
    }
  }
}

}  // namespace
}  // namespace gamebound
