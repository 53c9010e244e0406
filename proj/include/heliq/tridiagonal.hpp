// Symmetric tridiagonal eigensolver for the k algebraically smallest
// eigenpairs: Sturm-sequence bisection for eigenvalues, inverse iteration
// with partial pivoting for eigenvectors. Deterministic by construction:
// no random starts, fixed tie-breaking, results depend only on the input.
#ifndef HELIQ_TRIDIAGONAL_HPP
#define HELIQ_TRIDIAGONAL_HPP

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace heliq {

// Thrown when the eigenvalue iteration cannot certify its result; carries the
// worst residual so callers can report it.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& msg, double residual)
      : std::runtime_error(msg + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

template <typename Scalar>
struct SymmetricTridiagonal {
  Eigen::Vector<Scalar, Eigen::Dynamic> diag;  // n entries
  Eigen::Vector<Scalar, Eigen::Dynamic> off;   // n-1 entries, shared symmetric

  Eigen::Index size() const { return diag.size(); }
};

// Number of eigenvalues strictly below x (Sturm sequence count).
template <typename Scalar>
int eigenvalue_count_below(const SymmetricTridiagonal<Scalar>& T, Scalar x) {
  const Eigen::Index n = T.size();
  constexpr Scalar tiny = std::numeric_limits<Scalar>::min();
  int count = 0;
  Scalar q = T.diag[0] - x;
  if (q < Scalar(0)) ++count;
  for (Eigen::Index i = 1; i < n; ++i) {
    Scalar denom = q;
    if (denom == Scalar(0)) denom = tiny;
    q = T.diag[i] - x - T.off[i - 1] * T.off[i - 1] / denom;
    if (q < Scalar(0)) ++count;
  }
  return count;
}

// k algebraically smallest eigenvalues, ascending, each bisected down to the
// last representable bracket.
template <typename Scalar>
Eigen::Vector<Scalar, Eigen::Dynamic> smallest_eigenvalues(
    const SymmetricTridiagonal<Scalar>& T, int k) {
  const Eigen::Index n = T.size();
  if (k < 1 || k > n) throw std::invalid_argument("smallest_eigenvalues: k out of range");

  // Gershgorin bounds.
  Scalar lo = T.diag[0], hi = T.diag[0];
  for (Eigen::Index i = 0; i < n; ++i) {
    Scalar radius(0);
    if (i > 0) radius += std::fabs(T.off[i - 1]);
    if (i < n - 1) radius += std::fabs(T.off[i]);
    lo = std::min(lo, T.diag[i] - radius);
    hi = std::max(hi, T.diag[i] + radius);
  }

  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
  Eigen::Vector<Scalar, Eigen::Dynamic> values(k);
  for (int j = 0; j < k; ++j) {
    Scalar a = lo, b = hi;
    for (int iter = 0; iter < 20 * std::numeric_limits<Scalar>::digits; ++iter) {
      const Scalar width = b - a;
      const Scalar tol = Scalar(2) * eps * std::max(std::fabs(a), std::fabs(b));
      if (width <= tol) break;
      const Scalar mid = a + width / Scalar(2);
      if (mid <= a || mid >= b) break;
      if (eigenvalue_count_below(T, mid) >= j + 1)
        b = mid;
      else
        a = mid;
    }
    values[j] = a + (b - a) / Scalar(2);
  }
  return values;
}

namespace detail {

// Error-free transformations for the compensated Rayleigh correction.
template <typename Scalar>
inline void two_sum(Scalar a, Scalar b, Scalar& s, Scalar& e) {
  s = a + b;
  const Scalar bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

template <typename Scalar>
inline void two_prod(Scalar a, Scalar b, Scalar& p, Scalar& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

template <typename Scalar>
struct CompensatedSum {
  Scalar hi = Scalar(0);
  Scalar lo = Scalar(0);
  void add(Scalar x) {
    Scalar s, e;
    two_sum(hi, x, s, e);
    hi = s;
    lo += e;
  }
  Scalar value() const { return hi + lo; }
};

// One inverse-iteration solve of (T - lambda I) x = rhs via Gaussian
// elimination with partial pivoting (fill-in limited to a second
// superdiagonal). rhs is overwritten with the solution.
template <typename Scalar>
void solve_shifted(const SymmetricTridiagonal<Scalar>& T, Scalar lambda,
                   Eigen::Vector<Scalar, Eigen::Dynamic>& rhs) {
  const Eigen::Index n = T.size();
  Eigen::Vector<Scalar, Eigen::Dynamic> d(n), du(n), du2(n), dl(n);
  for (Eigen::Index i = 0; i < n; ++i) d[i] = T.diag[i] - lambda;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    du[i] = T.off[i];
    dl[i] = T.off[i];
  }
  du2.setZero();

  Scalar norm = Scalar(0);
  for (Eigen::Index i = 0; i < n; ++i) {
    Scalar row = std::fabs(d[i]);
    if (i > 0) row += std::fabs(T.off[i - 1]);
    if (i + 1 < n) row += std::fabs(T.off[i]);
    norm = std::max(norm, row);
  }
  // Zero pivots are replaced, as in classic inverse-iteration codes; the
  // resulting growth is exactly what the iteration exploits.
  const Scalar pivot_floor =
      std::numeric_limits<Scalar>::epsilon() * std::max(norm, Scalar(1));

  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (std::fabs(d[i]) >= std::fabs(dl[i])) {
      if (d[i] == Scalar(0)) d[i] = pivot_floor;
      const Scalar m = dl[i] / d[i];
      d[i + 1] -= m * du[i];
      rhs[i + 1] -= m * rhs[i];
    } else {
      const Scalar m = d[i] / dl[i];
      d[i] = dl[i];
      const Scalar old_du_i = du[i];
      du[i] = d[i + 1];
      d[i + 1] = old_du_i - m * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -m * du[i + 1];
      }
      std::swap(rhs[i], rhs[i + 1]);
      rhs[i + 1] -= m * rhs[i];
    }
  }
  if (d[n - 1] == Scalar(0)) d[n - 1] = pivot_floor;

  rhs[n - 1] /= d[n - 1];
  if (n >= 2) {
    const Eigen::Index i = n - 2;
    const Scalar piv = (d[i] == Scalar(0)) ? pivot_floor : d[i];
    rhs[i] = (rhs[i] - du[i] * rhs[i + 1]) / piv;
  }
  for (Eigen::Index i = n - 3; i >= 0; --i) {
    const Scalar piv = (d[i] == Scalar(0)) ? pivot_floor : d[i];
    rhs[i] = (rhs[i] - du[i] * rhs[i + 1] - du2[i] * rhs[i + 2]) / piv;
  }
}

}  // namespace detail

// Rayleigh-quotient polish of a bisected eigenvalue using its eigenvector:
// lambda + v^T(T v - lambda v) / v^T v, with every product split by
// error-free transformations and accumulated in compensated sums. Plain
// bisection cannot resolve an eigenvalue below ~eps*||T|| absolute; this
// recovers it when |lambda| << ||T||, as it is for fine radial grids where
// the stencil scale 2/h^2 dwarfs the low-lying spectrum.
template <typename Scalar, typename Derived>
Scalar rayleigh_refine(const SymmetricTridiagonal<Scalar>& T, Scalar lambda,
                       const Eigen::MatrixBase<Derived>& v) {
  const Eigen::Index n = T.size();
  detail::CompensatedSum<Scalar> numerator;  // v^T T v - lambda v^T v
  detail::CompensatedSum<Scalar> norm2;      // v^T v
  for (Eigen::Index i = 0; i < n; ++i) {
    Scalar sq, sq_err;
    detail::two_prod(v[i], v[i], sq, sq_err);
    norm2.add(sq);
    norm2.add(sq_err);

    // (d_i - lambda) rounds at eps*|d_i|; carry the dropped part explicitly.
    Scalar diff, diff_err;
    detail::two_sum(T.diag[i], -lambda, diff, diff_err);
    Scalar p, e;
    detail::two_prod(diff, sq, p, e);
    numerator.add(p);
    numerator.add(e);
    numerator.add(diff_err * sq);
    numerator.add(diff * sq_err);

    if (i + 1 < n) {
      Scalar cross, cross_err;
      detail::two_prod(v[i], v[i + 1], cross, cross_err);
      Scalar q, f;
      detail::two_prod(Scalar(2) * T.off[i], cross, q, f);
      numerator.add(q);
      numerator.add(f);
      numerator.add(Scalar(2) * T.off[i] * cross_err);
    }
  }
  return lambda + numerator.value() / norm2.value();
}

// Eigenvectors for precomputed eigenvalues via inverse iteration. Vectors in
// near-degenerate clusters (gap below cluster_tol * scale) are
// re-orthogonalized against each other. Columns are unit-2-norm with the
// first above-noise component positive. Throws SolverError if a residual
// ||T v - lambda v||_inf stays above residual_tol * ||T||_inf.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> eigenvectors_for(
    const SymmetricTridiagonal<Scalar>& T,
    const Eigen::Vector<Scalar, Eigen::Dynamic>& values,
    Scalar cluster_tol = Scalar(1e-10), Scalar residual_tol = Scalar(1e-8)) {
  using Vec = Eigen::Vector<Scalar, Eigen::Dynamic>;
  const Eigen::Index n = T.size();
  const int k = static_cast<int>(values.size());

  Scalar tnorm = Scalar(0);
  for (Eigen::Index i = 0; i < n; ++i) {
    Scalar row = std::fabs(T.diag[i]);
    if (i > 0) row += std::fabs(T.off[i - 1]);
    if (i + 1 < n) row += std::fabs(T.off[i]);
    tnorm = std::max(tnorm, row);
  }
  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();

  // Deterministic generic-position start vectors: a fixed-seed LCG stream per
  // eigenvalue index, so exactly degenerate pairs still split cleanly after
  // in-cluster orthogonalization. No platform-dependent randomness.
  const auto seeded_start = [n](int index, int salt) {
    Vec v(n);
    std::uint64_t state = 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(index + 1) +
                          0xBF58476D1CE4E5B9ull * static_cast<std::uint64_t>(salt) + 1;
    for (Eigen::Index i = 0; i < n; ++i) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      v[i] = static_cast<Scalar>((state >> 11) * 0x1.0p-53) - Scalar(0.5);
    }
    v /= v.norm();
    return v;
  };

  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors(n, k);
  int cluster_start = 0;
  for (int j = 0; j < k; ++j) {
    const Scalar scale = std::max({std::fabs(values[j]), tnorm * eps, Scalar(1e-300)});
    if (j > 0 && std::fabs(values[j] - values[j - 1]) > cluster_tol * scale)
      cluster_start = j;
    // Separate numerically coincident shifts inside a cluster.
    const Scalar lambda = values[j] + Scalar(j - cluster_start) * eps * tnorm;

    int salt = 0;
    Vec v = seeded_start(j, salt);
    Scalar residual = std::numeric_limits<Scalar>::infinity();
    for (int iter = 0; iter < 8; ++iter) {
      detail::solve_shifted(T, lambda, v);
      for (int c = cluster_start; c < j; ++c)
        v -= vectors.col(c).dot(v) * vectors.col(c);
      const Scalar vnorm = v.norm();
      if (!(vnorm > Scalar(0)) || !std::isfinite(vnorm)) {
        // Orthogonalization annihilated the iterate; reseed and retry.
        v = seeded_start(j, ++salt);
        continue;
      }
      v /= vnorm;

      residual = Scalar(0);
      for (Eigen::Index i = 0; i < n; ++i) {
        Scalar t = (T.diag[i] - values[j]) * v[i];
        if (i > 0) t += T.off[i - 1] * v[i - 1];
        if (i + 1 < n) t += T.off[i] * v[i + 1];
        residual = std::max(residual, std::fabs(t));
      }
      if (residual <= Scalar(100) * eps * tnorm && iter >= 1) break;
    }
    if (!(residual <= residual_tol * std::max(tnorm, Scalar(1))))
      throw SolverError("inverse iteration failed to converge for eigenvalue index " +
                            std::to_string(j),
                        residual);

    // Deterministic sign: first component above noise level is positive.
    const Scalar noise = Scalar(1e-9) * v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::fabs(v[i]) > noise) {
        if (v[i] < Scalar(0)) v = -v;
        break;
      }
    }
    vectors.col(j) = v;
  }
  return vectors;
}

}  // namespace heliq

#endif  // HELIQ_TRIDIAGONAL_HPP
