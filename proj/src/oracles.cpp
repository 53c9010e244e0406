#include "heliq/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace heliq {

double box_eigenvalue(int n, double L) {
  if (n < 1) throw std::invalid_argument("box_eigenvalue: n must be >= 1");
  if (!(L > 0.0)) throw std::invalid_argument("box_eigenvalue: L must be > 0");
  const double k = n * M_PI / L;
  return k * k;
}

double bessel_j(double nu, double x) {
  if (nu < 0.0) throw std::invalid_argument("bessel_j: nu must be >= 0");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;

  if (x <= 30.0) {
    // Ascending power series; alternating, converges fast for moderate x.
    const double q = 0.25 * x * x;
    double term = std::pow(0.5 * x, nu) / std::tgamma(nu + 1.0);
    double sum = term;
    for (int k = 1; k < 400; ++k) {
      term *= -q / (k * (nu + k));
      sum += term;
      if (std::fabs(term) < 1e-18 * std::max(std::fabs(sum), 1e-30) && k > 4) break;
    }
    return sum;
  }

  // Backward (Miller-type) recurrence from a high order; stable downward for
  // J. The result is an unnormalized positive multiple of J_nu(x), which is
  // all the zero bracketing needs.
  const int extra = static_cast<int>(x + 15.0 * std::sqrt(x) + 40.0);
  double upper = 0.0;
  double mid = std::numeric_limits<double>::min() * 1e10;
  for (int k = extra; k >= 1; --k) {
    const double order = nu + k;
    double lower = (2.0 * order / x) * mid - upper;
    upper = mid;
    mid = lower;
    if (std::fabs(mid) > 1e250) {
      mid *= 1e-250;
      upper *= 1e-250;
    }
  }
  return mid;
}

double bessel_zero(double nu, int n) {
  if (nu < 0.0 || n < 1) throw std::invalid_argument("bessel_zero: need nu >= 0, n >= 1");

  // Scan for n sign changes; consecutive zeros of J_nu are separated by
  // roughly pi, so a 0.45 step cannot skip one.
  const double step = 0.45;
  const double x_limit = nu + (n + 2) * 2.0 * M_PI + 10.0;
  double x0 = std::max(1e-6, nu * 0.5);
  double f0 = bessel_j(nu, x0);
  int found = 0;
  double a = 0.0, b = 0.0;
  for (double x = x0 + step; x <= x_limit; x += step) {
    const double f1 = bessel_j(nu, x);
    if (f0 == 0.0 || f0 * f1 < 0.0) {
      ++found;
      if (found == n) {
        a = x - step;
        b = x;
        break;
      }
    }
    f0 = f1;
  }
  if (found < n)
    throw std::runtime_error("bessel_zero: bracketing failed on [" +
                             std::to_string(x0) + ", " + std::to_string(x_limit) +
                             "] for nu=" + std::to_string(nu));

  double fa = bessel_j(nu, a);
  for (int iter = 0; iter < 200; ++iter) {
    const double m = 0.5 * (a + b);
    if (b - a <= 1e-13 * m || m <= a || m >= b) break;
    const double fm = bessel_j(nu, m);
    if (fa * fm <= 0.0) {
      b = m;
    } else {
      a = m;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

double bessel_dirichlet_eigenvalue(double nu, int n, double r_max) {
  if (!(r_max > 0.0))
    throw std::invalid_argument("bessel_dirichlet_eigenvalue: r_max must be > 0");
  const double k = bessel_zero(nu, n) / r_max;
  return k * k;
}

double landau_level(int n, double m_eff, double B_tesla, const Material& mat) {
  if (n < 0) throw std::invalid_argument("landau_level: n must be >= 0");
  if (B_tesla == 0.0) throw std::invalid_argument("landau_level: B must be nonzero");
  const double b = beta_B(B_tesla, mat);
  const double eps =
      2.0 * std::fabs(b) * (2.0 * n + 1.0 + std::fabs(m_eff)) - 2.0 * b * m_eff;
  return kinetic_coefficient(mat) * eps;
}

namespace {

// Numerov recurrence in the Cooley form: with g_i = (h^2/12)(U_i - eps) and
// y_i = (1 - g_i) u_i it reads
//   y_{i+1} = 2 y_i - y_{i-1} + [12 g_i / (1 - g_i)] y_i .
// The eps dependence enters as a product of small factors instead of hiding
// in the last digits of 1 - g, which would quantize eigenvalues at
// ~eps_mach/h^2 relative. The y recurrence is also symmetric, so the
// Casoratian of two solutions is exactly conserved along the grid.
struct NumerovRun {
  double y_last;     // y at the final node of the sweep
  double y_prev;     // y one node before it (toward the start)
  int sign_changes;  // sign changes of u seen along the sweep
};

NumerovRun sweep_forward(const std::vector<double>& U, double eps, double h,
                         int stop /* last node index reached */) {
  const double h2_12 = h * h / 12.0;
  double y_prev = 0.0;  // node 0 (Dirichlet)
  double y_curr = h;    // node 1, arbitrary scale
  double w_curr = 1.0 - h2_12 * (U[1] - eps);
  double u_sign_curr = w_curr != 0.0 ? y_curr / w_curr : y_curr;
  // Every sign flip counts, including one against the final boundary node:
  // past an eigenvalue the new zero enters the open interval from r_max and
  // first shows up in the (N-2, N-1) pair.
  int changes = 0;
  for (int i = 1; i < stop; ++i) {
    const double twelve_g = h * h * (U[i] - eps);
    double w = 1.0 - twelve_g / 12.0;
    if (w == 0.0) w = std::numeric_limits<double>::min();
    const double y_next = 2.0 * y_curr - y_prev + (twelve_g / w) * y_curr;
    const double w_next = 1.0 - h2_12 * (U[i + 1] - eps);
    const double u_next =
        y_next / (w_next != 0.0 ? w_next : std::numeric_limits<double>::min());
    if (u_next * u_sign_curr < 0.0) ++changes;
    u_sign_curr = u_next;
    y_prev = y_curr;
    y_curr = y_next;
    const double mag = std::fabs(y_curr);
    if (mag > 1e200) {
      y_curr /= mag;
      y_prev /= mag;
    }
  }
  return NumerovRun{y_curr, y_prev, changes};
}

NumerovRun sweep_backward(const std::vector<double>& U, double eps, double h,
                          int stop /* last node index reached */) {
  const double h2_12 = h * h / 12.0;
  const int N = static_cast<int>(U.size());
  double y_prev = 0.0;  // node N-1 (Dirichlet)
  double y_curr = h;    // node N-2
  double w_curr = 1.0 - h2_12 * (U[N - 2] - eps);
  double u_sign_curr = w_curr != 0.0 ? y_curr / w_curr : y_curr;
  int changes = 0;
  for (int i = N - 2; i > stop; --i) {
    const double twelve_g = h * h * (U[i] - eps);
    double w = 1.0 - twelve_g / 12.0;
    if (w == 0.0) w = std::numeric_limits<double>::min();
    const double y_next = 2.0 * y_curr - y_prev + (twelve_g / w) * y_curr;
    const double w_next = 1.0 - h2_12 * (U[i - 1] - eps);
    const double u_next =
        y_next / (w_next != 0.0 ? w_next : std::numeric_limits<double>::min());
    if (u_next * u_sign_curr < 0.0) ++changes;
    u_sign_curr = u_next;
    y_prev = y_curr;
    y_curr = y_next;
    const double mag = std::fabs(y_curr);
    if (mag > 1e200) {
      y_curr /= mag;
      y_prev /= mag;
    }
  }
  return NumerovRun{y_curr, y_prev, changes};
}

int interior_node_count(const std::vector<double>& U, double eps, double h) {
  return sweep_forward(U, eps, h, static_cast<int>(U.size()) - 1).sign_changes;
}

// Conserved-Casoratian matching defect at node m: zero exactly when the
// left and right shots are proportional, i.e. at a Numerov eigenvalue.
double match_defect(const std::vector<double>& U, double eps, double h, int m) {
  const NumerovRun left = sweep_forward(U, eps, h, m + 1);
  const NumerovRun right = sweep_backward(U, eps, h, m);
  // left: y at m+1 (last) and m (prev); right: y at m (last) and m+1 (prev).
  return left.y_last * right.y_last - left.y_prev * right.y_prev;
}

}  // namespace

OracleResult numerov_eigenvalue(const RadialProblem& problem, int n) {
  if (n < 0 || n > 8)
    throw std::invalid_argument("numerov_eigenvalue: supported range is 0 <= n <= 8");

  const Grid& g = problem.grid;
  const int N = g.n_points;
  const double h = g.spacing();
  const Coupling c = problem.coupling();
  std::vector<double> U(N);
  for (int i = 0; i < N; ++i) U[i] = effective_potential(c, g.node(i));

  // Matching index at the interior potential minimum (first occurrence).
  int m = 1;
  for (int i = 1; i <= N - 2; ++i)
    if (U[i] < U[m]) m = i;
  m = std::clamp(m, 2, N - 4);

  double U_min = U[1];
  for (int i = 1; i <= N - 2; ++i) U_min = std::min(U_min, U[i]);

  // Phase 1: isolate the n-th eigenvalue by node count.
  double lo = U_min - 1.0;
  if (interior_node_count(U, lo, h) > n)
    throw std::runtime_error("numerov_eigenvalue: node-count mismatch at lower bound");
  const double L = g.r_max - g.r_min;
  double span = std::max((n + 1) * (n + 1) * M_PI * M_PI / (L * L), 1e-8);
  double hi = U_min + span;
  int guard = 0;
  while (interior_node_count(U, hi, h) < n + 1) {
    span *= 2.0;
    hi = U_min + span;
    if (++guard > 300)
      throw std::runtime_error("numerov_eigenvalue: failed to bracket eigenvalue " +
                               std::to_string(n));
  }
  for (int iter = 0; iter < 200; ++iter) {
    const int c_lo = interior_node_count(U, lo, h);
    const int c_hi = interior_node_count(U, hi, h);
    if (c_lo == n && c_hi == n + 1 &&
        hi - lo <= 1e-3 * std::max({std::fabs(lo), std::fabs(hi), 1e-12}))
      break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (interior_node_count(U, mid, h) >= n + 1)
      hi = mid;
    else
      lo = mid;
  }
  if (interior_node_count(U, lo, h) != n || interior_node_count(U, hi, h) != n + 1)
    throw std::runtime_error("numerov_eigenvalue: node-count mismatch while isolating n=" +
                             std::to_string(n));

  // Phase 2: bisect the matching defect inside the isolated bracket.
  double fa = match_defect(U, lo, h, m);
  double fb = match_defect(U, hi, h, m);
  const bool defect_usable = (fa * fb < 0.0);
  double a = lo, b = hi;
  for (int iter = 0; iter < 300; ++iter) {
    const double scale = std::max(std::fabs(a), std::fabs(b));
    if (b - a <= 1e-10 * std::max(scale, 1e-300)) break;
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    if (defect_usable) {
      const double fm = match_defect(U, mid, h, m);
      if (fa * fm <= 0.0) {
        b = mid;
        fb = fm;
      } else {
        a = mid;
        fa = fm;
      }
    } else {
      // Defect did not change sign (defective weights); fall back to the
      // node count, which still brackets the eigenvalue.
      if (interior_node_count(U, mid, h) >= n + 1)
        b = mid;
      else
        a = mid;
    }
  }

  OracleResult out;
  out.eps = 0.5 * (a + b);
  out.method = OracleMethod::numerov;
  out.residual = (b - a) / std::max(std::fabs(out.eps), 1e-300);
  return out;
}

}  // namespace heliq
