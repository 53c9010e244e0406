#include <doctest.h>

#include <cmath>

#include "heliq/oracles.hpp"
#include "heliq/sweeps.hpp"

using namespace heliq;

namespace {

const Material kBench(0.067, -1);

RadialProblem benchmark_problem(double omega2 = 0.0, double B = 1.0) {
  return RadialProblem{Geometry{50.0, omega2}, Fields{B, 0.0}, Mode{1, 0.01},
                       Grid(1e-3, 500.0, 2000), kBench};
}

RadialProblem envelope_base(double omega1) {
  // Field-free homogeneous case of the AB-envelope protocol; a lighter grid
  // keeps the many-branch scans quick without moving any conclusion.
  return RadialProblem{Geometry{omega1, 0.0}, Fields{0.0, 0.0}, Mode{1, 0.01},
                       Grid(1e-3, 500.0, 1200), kBench};
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace

TEST_CASE("sweep axis parsing") {
  CHECK(sweep_axis_from_string("omega2") == SweepAxis::omega2);
  CHECK(to_string(SweepAxis::kz) == "kz");
  CHECK_THROWS_AS(sweep_axis_from_string("bogus"), std::invalid_argument);
}

TEST_CASE("omega2 sweep is strictly decreasing at B = 1 T") {
  SweepSpec spec{SweepAxis::omega2, {0.0, 0.5, 1.0, 1.5}, benchmark_problem(), 2};
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 4);
  for (size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].energies_meV[0] < rows[i - 1].energies_meV[0]);
    CHECK(rows[i].energies_meV[1] < rows[i - 1].energies_meV[1]);
  }
}

TEST_CASE("spectrum is even in B when omega2 = 0, up to the AB relabeling") {
  // With omega2 = 0 the only surviving odd-in-B term is the constant
  // 2 beta_B (ell - phi - kz w1); flipping B maps the branch onto the one
  // with the negated angular offset. At the benchmark the offset is 0.5, so
  // E_{ell=1}(-B) = E_{ell=0}(B) exactly (identical operators), while the
  // fixed-ell energies differ by the full Zeeman-like shift.
  RadialProblem flipped = benchmark_problem();
  flipped.fields.B = -1.0;
  RadialProblem mirrored = benchmark_problem();
  mirrored.mode.ell = 0;
  const Spectrum a = solve_lowest(flipped, 2);
  const Spectrum b = solve_lowest(mirrored, 2);
  for (int n = 0; n < 2; ++n)
    CHECK(std::fabs(a.eps[n] - b.eps[n]) / std::fabs(b.eps[n]) < 1e-12);

  // Fixed ell = 1: flipping B changes eps by the odd constant 4 beta_B a,
  // which lowers the electron level (beta_B < 0, offset a = 0.5).
  const Spectrum c = solve_lowest(benchmark_problem(), 1);
  const double odd_shift = 4.0 * 0.5 * beta_B(1.0, kBench);
  CHECK(a.eps[0] - c.eps[0] == doctest::Approx(odd_shift).epsilon(1e-3));

  // A zero angular offset removes the odd term: strict evenness at fixed ell.
  RadialProblem neutral{Geometry{0.0, 0.0}, Fields{1.0, 0.0}, Mode{0, 0.01},
                        Grid(1e-3, 500.0, 1200), kBench};
  RadialProblem neutral_flipped = neutral;
  neutral_flipped.fields.B = -1.0;
  const Spectrum n1 = solve_lowest(neutral, 1);
  const Spectrum n2 = solve_lowest(neutral_flipped, 1);
  CHECK(n1.eps[0] == n2.eps[0]);
}

TEST_CASE("kz sweep with geometry off adds the free axial energy") {
  RadialProblem base{Geometry{0.0, 0.0}, Fields{0.0, 0.0}, Mode{1, 0.0},
                     Grid(1e-3, 500.0, 1200), kBench};
  SweepSpec spec{SweepAxis::kz, {0.0, 0.005, 0.01, 0.02}, base, 1};
  const auto rows = run_sweep(spec);
  const double C = kinetic_coefficient(kBench);
  for (const auto& row : rows) {
    const double expected = rows[0].energies_meV[0] + C * row.axis_value * row.axis_value;
    CHECK(row.energies_meV[0] == doctest::Approx(expected).epsilon(1e-12));
    // The radial eigenvalue itself never moves: U is kz-independent here.
    CHECK(row.eps[0] == rows[0].eps[0]);
  }
}

TEST_CASE("sweep rejects bad input and annotates failures") {
  SweepSpec empty{SweepAxis::B, {}, benchmark_problem(), 1};
  CHECK_THROWS_AS(run_sweep(empty), std::invalid_argument);
  SweepSpec unsorted{SweepAxis::B, {1.0, 0.5}, benchmark_problem(), 1};
  CHECK_THROWS_AS(run_sweep(unsorted), std::invalid_argument);
}

TEST_CASE("sweep determinism is bitwise") {
  SweepSpec spec{SweepAxis::omega2, {0.0, 0.7}, benchmark_problem(), 2};
  const auto a = run_sweep(spec);
  const auto b = run_sweep(spec);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK((a[i].energies_meV.array() == b[i].energies_meV.array()).all());
    CHECK((a[i].eps.array() == b[i].eps.array()).all());
  }
}

TEST_CASE("default ell window brackets the flux range") {
  const auto [lo, hi] = default_ell_window(envelope_base(50.0), {0.0, 2.0});
  CHECK(lo == -3);
  CHECK(hi == 6);
}

TEST_CASE("AB envelope: periodicity, cusps and relabeling (omega1 = 50)") {
  const auto phi = linspace(0.0, 2.0, 101);
  const EnvelopeResult env = ab_envelope(envelope_base(50.0), phi, -3, 6, 2);
  CHECK_FALSE(env.edge_attained);

  // Period 1: compare phi and phi + 1 grid points.
  for (int i = 0; i < 50; ++i) {
    const double a = env.env_energies[0][i];
    const double b = env.env_energies[0][i + 50];
    CHECK(std::fabs(a - b) / std::fabs(a) < 1e-8);
  }

  // Cusp minima at phi = integer - kz*omega1 = 0.5 and 1.5; locate the
  // minimum within the period around each target.
  for (double target : {0.5, 1.5}) {
    int local = -1;
    double local_val = 1e300;
    for (size_t i = 0; i < phi.size(); ++i) {
      if (std::fabs(phi[i] - target) <= 0.5 && env.env_energies[0][i] < local_val) {
        local_val = env.env_energies[0][i];
        local = static_cast<int>(i);
      }
    }
    REQUIRE(local >= 0);
    CHECK(std::fabs(phi[local] - target) <= 0.02 + 1e-12);
  }

  // The minimizing ell is monotone with unit steps across the scan.
  for (size_t i = 1; i < phi.size(); ++i) {
    const int step = env.minimizer_ell[0][i] - env.minimizer_ell[0][i - 1];
    CHECK(step >= 0);
    CHECK(step <= 1);
  }
  CHECK(env.minimizer_ell[0].back() - env.minimizer_ell[0].front() == 2);
}

TEST_CASE("AB envelope with omega1 = 0 has integer cusps") {
  const auto phi = linspace(0.0, 2.0, 101);
  const EnvelopeResult env = ab_envelope(envelope_base(0.0), phi, -3, 6, 1);
  // Integer flux values are local minima of the envelope.
  for (int center : {0, 50, 100}) {
    const double here = env.env_energies[0][center];
    if (center > 0) CHECK(env.env_energies[0][center - 1] > here);
    if (center < 100) CHECK(env.env_energies[0][center + 1] > here);
  }
}

TEST_CASE("single-ell window reproduces that branch") {
  const auto phi = linspace(0.0, 0.4, 5);
  const RadialProblem base = envelope_base(50.0);
  const EnvelopeResult env = ab_envelope(base, phi, 1, 1, 1);
  for (size_t i = 0; i < phi.size(); ++i) {
    RadialProblem p = base;
    p.fields.phi = phi[i];
    p.mode.ell = 1;
    const Spectrum s = solve_lowest(p, 1);
    CHECK(env.env_energies[0][i] == s.energies_meV[0]);
    CHECK(env.minimizer_ell[0][i] == 1);
  }
}

TEST_CASE("envelope translates horizontally with omega1") {
  // Envelopes at omega1 and omega1' coincide after shifting phi by
  // kz (omega1' - omega1); kz = 0.01 and a 50 nm step shift by 0.5.
  const auto phi = linspace(0.0, 1.5, 76);  // step 0.02
  const EnvelopeResult a = ab_envelope(envelope_base(0.0), phi, -4, 6, 1);
  const EnvelopeResult b = ab_envelope(envelope_base(50.0), phi, -4, 6, 1);
  // b(phi) should equal a(phi + 0.5): compare with a 25-point offset.
  for (int i = 0; i + 25 < static_cast<int>(phi.size()); ++i) {
    const double lhs = b.env_energies[0][i];
    const double rhs = a.env_energies[0][i + 25];
    CHECK(std::fabs(lhs - rhs) / std::fabs(rhs) < 1e-8);
  }
}

TEST_CASE("edge-attained minimizers widen the window once") {
  const auto phi = linspace(0.0, 0.2, 3);
  // A deliberately cramped window around the wrong ell.
  const EnvelopeResult env = ab_envelope(envelope_base(50.0), phi, -1, 0, 1);
  CHECK(env.widened);
  CHECK(env.ell_min == -4);
  CHECK(env.ell_max == 3);
  CHECK_FALSE(env.edge_attained);
}

TEST_CASE("reindexing symmetry at the operator level") {
  CHECK(reindex_check(benchmark_problem(0.0, 0.0), 2) < 1e-10);
  CHECK(reindex_check(benchmark_problem(1.0, 1.0), 2) < 1e-10);

  // Half-period control: shifting omega1 by 0.5/kz is NOT a symmetry.
  RadialProblem half = benchmark_problem(0.0, 0.0);
  half.geometry.omega1 += 0.5 / half.mode.kz;
  RadialProblem relabeled = benchmark_problem(0.0, 0.0);
  relabeled.mode.ell -= 1;
  const Spectrum a = solve_lowest(half, 1);
  const Spectrum b = solve_lowest(relabeled, 1);
  CHECK(std::fabs(a.eps[0] - b.eps[0]) / b.eps[0] > 0.05);

  RadialProblem no_kz = benchmark_problem();
  no_kz.mode.kz = 0.0;
  CHECK_THROWS_AS(reindex_check(no_kz, 1), std::invalid_argument);
}

TEST_CASE("Landau fan trends") {
  const RadialProblem base = benchmark_problem();
  const auto rows = landau_fan(base, {0.0, 1.0, 2.0, 4.0}, {0.0, 1.0}, 1);
  REQUIRE(rows.size() == 8);

  // omega2 = 0 block, large |B|: the closed-form asymptote for the benchmark
  // branch (offset a = 0.5, electron) is E0 ~ C (2|b|(1+|a|) - 2 b a), i.e. a
  // slope of one full cyclotron quantum per Tesla.
  const double per_tesla =
      landau_level(0, 0.5, 2.0, kBench) - landau_level(0, 0.5, 1.0, kBench);
  CHECK(per_tesla == doctest::Approx(cyclotron_energy(1.0, kBench)).epsilon(1e-12));
  const double slope = (rows[3].energies_meV[0] - rows[2].energies_meV[0]) / 2.0;
  CHECK(std::fabs(slope - per_tesla) / per_tesla < 0.02);

  // At fixed B = 1 T the twisted column is lower.
  CHECK(rows[5].energies_meV[0] < rows[1].energies_meV[0]);

  // B = 0 column equals the field-free solve exactly.
  RadialProblem field_free = base;
  field_free.fields.B = 0.0;
  const Spectrum s = solve_lowest(field_free, 1);
  CHECK(rows[0].energies_meV[0] == s.energies_meV[0]);
}

TEST_CASE("Landau fan slope on an electron LLL branch is half a quantum") {
  // ell = -1 with no screw couplings joins the electron lowest Landau level;
  // there the fan rises at hbar omega_c / 2 per Tesla (0.864 meV/T), with a
  // clean nu = 1 core.
  const RadialProblem base{Geometry{0.0, 0.0}, Fields{1.0, 0.0}, Mode{-1, 0.0},
                           Grid(1e-3, 500.0, 2000), kBench};
  const auto rows = landau_fan(base, {2.0, 4.0}, {0.0}, 1);
  const double slope = (rows[1].energies_meV[0] - rows[0].energies_meV[0]) / 2.0;
  CHECK(std::fabs(slope - 0.86394) / 0.86394 < 0.02);
}

TEST_CASE("small-twist slope grows with kz") {
  double prev_slope_mag = 0.0;
  for (double kz : {0.005, 0.01, 0.02}) {
    RadialProblem p = benchmark_problem();
    p.mode.kz = kz;
    SweepSpec spec{SweepAxis::omega2, {0.0, 0.1}, p, 1};
    const auto rows = run_sweep(spec);
    const double slope = (rows[1].energies_meV[0] - rows[0].energies_meV[0]) / 0.1;
    CHECK(slope < 0.0);
    CHECK(std::fabs(slope) > prev_slope_mag);
    prev_slope_mag = std::fabs(slope);
  }
}

TEST_CASE("flux relabeling rule is covariant") {
  const RadialProblem base = benchmark_problem();
  for (double phi : {0.05, 0.3, 0.75, 0.95}) {
    CHECK(relabeled_ell(base, phi + 1.0) == relabeled_ell(base, phi) + 1);
  }
}

TEST_CASE("annular current trace is periodic in the flux") {
  const RadialProblem base{Geometry{50.0, 0.0}, Fields{1.0, 0.0}, Mode{1, 0.01},
                           Grid(1e-3, 500.0, 1200), kBench};
  std::vector<double> phis;
  for (double phi : {0.05, 0.35, 0.65, 0.95}) {
    phis.push_back(phi);
    phis.push_back(phi + 1.0);
  }
  const auto trace = flux_current_trace(base, phis, 20.0, 5.0);
  double scale = 0.0;
  for (const auto& pt : trace) scale = std::max(scale, std::fabs(pt.ring.I_phi));
  for (size_t i = 0; i < trace.size(); i += 2) {
    CHECK(trace[i + 1].ell == trace[i].ell + 1);
    CHECK(std::fabs(trace[i + 1].ring.I_phi - trace[i].ring.I_phi) < 1e-6 * scale);
  }
}
