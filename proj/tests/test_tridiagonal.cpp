#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "heliq/tridiagonal.hpp"

using namespace heliq;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// Discrete Dirichlet Laplacian eigenvalues are known in closed form:
// lambda_j = (2 - 2 cos(j pi / (n+1))) / h^2.
SymmetricTridiagonal<double> laplacian(int n, double h) {
  SymmetricTridiagonal<double> T;
  T.diag = VectorXd::Constant(n, 2.0 / (h * h));
  T.off = VectorXd::Constant(n - 1, -1.0 / (h * h));
  return T;
}

MatrixXd to_dense(const SymmetricTridiagonal<double>& T) {
  const int n = static_cast<int>(T.size());
  MatrixXd M = MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    M(i, i) = T.diag[i];
    if (i + 1 < n) {
      M(i, i + 1) = T.off[i];
      M(i + 1, i) = T.off[i];
    }
  }
  return M;
}

}  // namespace

TEST_CASE("Sturm count of the discrete Laplacian") {
  const auto T = laplacian(64, 1.0);
  CHECK(eigenvalue_count_below(T, -1e-9) == 0);
  CHECK(eigenvalue_count_below(T, 4.0 + 1e-9) == 64);
  const double lam3 = 2.0 - 2.0 * std::cos(3.0 * M_PI / 65.0);
  CHECK(eigenvalue_count_below(T, lam3 - 1e-12) == 2);
  CHECK(eigenvalue_count_below(T, lam3 + 1e-12) == 3);
}

TEST_CASE("bisection reproduces the Laplacian spectrum to machine precision") {
  // Unit spacing keeps the matrix entries exactly representable, so the
  // closed form 4 sin^2(j pi / (2(n+1))) is the true spectrum of the stored
  // matrix up to rounding in the formula itself.
  const int n = 201;
  const auto T = laplacian(n, 1.0);
  const auto values = smallest_eigenvalues(T, 5);
  for (int j = 0; j < 5; ++j) {
    const double s = std::sin((j + 1) * M_PI / (2.0 * (n + 1)));
    CHECK(values[j] == doctest::Approx(4.0 * s * s).epsilon(1e-12));
  }
}

TEST_CASE("bisection agrees with a dense reference solver") {
  const int n = 120;
  SymmetricTridiagonal<double> T;
  T.diag.resize(n);
  T.off.resize(n - 1);
  for (int i = 0; i < n; ++i) T.diag[i] = 2.0 + std::sin(0.7 * i) + 0.01 * i;
  for (int i = 0; i + 1 < n; ++i) T.off[i] = -1.0 + 0.3 * std::cos(1.3 * i);

  Eigen::SelfAdjointEigenSolver<MatrixXd> dense(to_dense(T));
  const auto values = smallest_eigenvalues(T, 6);
  for (int j = 0; j < 6; ++j)
    CHECK(values[j] == doctest::Approx(dense.eigenvalues()[j]).epsilon(1e-13));

  const auto vectors = eigenvectors_for(T, values);
  for (int j = 0; j < 6; ++j) {
    // Unit norm, small residual, sign fixed by the first sizable component.
    CHECK(vectors.col(j).norm() == doctest::Approx(1.0).epsilon(1e-12));
    const VectorXd res = to_dense(T) * vectors.col(j) - values[j] * vectors.col(j);
    CHECK(res.lpNorm<Eigen::Infinity>() < 1e-10 * to_dense(T).lpNorm<Eigen::Infinity>());
    // Agreement with the dense eigenvector up to the fixed sign convention.
    VectorXd ref = dense.eigenvectors().col(j);
    if (ref.dot(vectors.col(j)) < 0) ref = -ref;
    CHECK((ref - vectors.col(j)).lpNorm<Eigen::Infinity>() < 1e-9);
  }
  // Orthogonality across the computed block.
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      CHECK(std::fabs(vectors.col(a).dot(vectors.col(b))) < 1e-9);
}

TEST_CASE("near-degenerate pairs stay orthogonal") {
  // Two decoupled copies of the same block give exactly degenerate pairs.
  const int half = 40;
  const int n = 2 * half;
  SymmetricTridiagonal<double> T;
  T.diag.resize(n);
  T.off = VectorXd::Constant(n - 1, -1.0);
  T.off[half - 1] = 0.0;  // decouple
  for (int i = 0; i < half; ++i) {
    T.diag[i] = 2.0 + 0.05 * i;
    T.diag[half + i] = 2.0 + 0.05 * i;
  }
  const auto values = smallest_eigenvalues(T, 4);
  const auto vectors = eigenvectors_for(T, values);
  CHECK(std::fabs(values[0] - values[1]) < 1e-12);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      CHECK(std::fabs(vectors.col(a).dot(vectors.col(b))) < 1e-8);
}

TEST_CASE("determinism: identical inputs give bitwise identical output") {
  const auto T = laplacian(300, 0.25);
  const auto v1 = smallest_eigenvalues(T, 4);
  const auto v2 = smallest_eigenvalues(T, 4);
  const auto u1 = eigenvectors_for(T, v1);
  const auto u2 = eigenvectors_for(T, v2);
  CHECK((v1.array() == v2.array()).all());
  CHECK((u1.array() == u2.array()).all());
}

TEST_CASE("k out of range is rejected") {
  const auto T = laplacian(16, 1.0);
  CHECK_THROWS_AS(smallest_eigenvalues(T, 0), std::invalid_argument);
  CHECK_THROWS_AS(smallest_eigenvalues(T, 17), std::invalid_argument);
}
