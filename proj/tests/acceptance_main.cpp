// Acceptance suite: one line per criterion, pinned tolerances, exit 1 if any
// fails. Runs the randomized constraint sweeps, the exact line-shape and
// coincidence cases, the kernel convergence study, and both lattice oracles.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fanoqed/coupling.hpp"
#include "fanoqed/lattice.hpp"
#include "fanoqed/single_photon.hpp"
#include "fanoqed/two_photon.hpp"

using namespace fanoqed;

namespace {

constexpr cplx I{0.0, 1.0};
int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void line(bool ok, int idx, const std::string& name, const std::string& metric,
          double secs) {
  std::printf("[%s] %d. %s: %s (%.2f s)\n", ok ? "PASS" : "FAIL", idx,
              name.c_str(), metric.c_str(), secs);
  if (!ok) ++failures;
}

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

SystemSpec make_spec(double t, int r_sign = 1, double phi = 0.0,
                     int parity = 1, cplx sigma = {0.2, 0.0}) {
  SystemSpec s;
  s.t_bg = t;
  s.r_sign = r_sign;
  s.phi = phi;
  s.parity = parity;
  s.sigma = sigma;
  return s;
}

// One linear sign change of f on [lo, hi], located to machine-level width.
double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if ((flo <= 0.0) == (fm <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> ut(0.0, 1.0), uphi(-pi, pi),
      us(0.01, 1.0), uxi(0.1, 2.0), uv(-10.0, 10.0);
  double worst = 0.0;
  bool all = true;
  for (int i = 0; i < 1000; ++i) {
    SystemSpec s = make_spec(ut(rng), (rng() & 1) ? 1 : -1, uphi(rng),
                             (rng() & 1) ? 1 : -1, {us(rng), 0.0});
    DirectScattering bg = build_two_port_background(s.t_bg, s.r_sign, s.phi);
    CouplingSet coup = solve_mirror_coupling(s);
    ConstraintReport rep = validate_constraints(bg, coup, s.sigma, 1e-12);
    worst = std::max(worst, rep.max_residual());
    all = all && rep.passed;
  }
  for (int i = 0; i < 1000; ++i) {
    MicroscopicParams m;
    m.xi = Eigen::Vector2d(uxi(rng), uxi(rng));
    m.v = Eigen::Matrix2d::Zero();
    m.v(0, 1) = m.v(1, 0) = uv(rng);
    MicroscopicSolution sol = from_microscopic(m);
    ConstraintReport rep =
        validate_constraints(sol.bg, sol.coup, sol.sigma, 1e-12);
    worst = std::max(worst, rep.max_residual());
    all = all && rep.passed;
  }
  double secs = seconds_since(t0);
  line(all && worst <= 1e-12 && secs < 1.0, 1,
       "coupling constraints on 2000 randomized systems",
       fmt("max residual %.3g", worst), secs);
}

void criterion_2() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> ut(0.0, 1.0), uphi(-pi, pi),
      us(0.01, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    double sr = us(rng);
    SystemSpec s = make_spec(ut(rng), (rng() & 1) ? 1 : -1, uphi(rng),
                             (rng() & 1) ? 1 : -1, {sr, 0.0});
    worst = std::max(worst, unitarity_residual(s, s.omega - 10.0 * sr,
                                               s.omega + 10.0 * sr, 10000));
  }
  double secs = seconds_since(t0);
  line(worst <= 1e-12 && secs < 1.0, 2,
       "single-photon unitarity on 100 x 10^4 grid points",
       fmt("max residual %.3g", worst), secs);
}

void criterion_3() {
  auto t0 = std::chrono::steady_clock::now();
  const double sg = 0.2, om = 1.0;
  double worst_peakval = 0.0, worst_root = 0.0, worst_t11 = 0.0,
         worst_lorentz = 0.0;
  bool ok = true;
  for (double t : {0.3, 0.5, 0.8}) {
    for (int rs : {1, -1}) {
      SystemSpec s = make_spec(t, rs, 0.4, 1, {sg, 0.0});
      worst_peakval =
          std::max(worst_peakval, std::abs(std::norm(s1_amplitude(s, 1, 1, om)) -
                                           (1.0 - t * t)));
      FanoFeatures ff = fano_features(s);
      ok = ok && ff.k_zero.has_value() && ff.k_peak.has_value();

      // measured zero: the rotated forward amplitude crosses zero linearly
      auto im11 = [&](double k) {
        return std::imag(std::exp(-I * s.phi) * s1_amplitude(s, 1, 1, k));
      };
      double zero = bisect(im11, om - 10.0 * sg, om + 10.0 * sg);
      worst_root = std::max(worst_root, std::abs(zero - *ff.k_zero));
      worst_t11 = std::max(worst_t11, std::abs(s1_amplitude(s, 1, 1, zero)));

      auto im21 = [&](double k) {
        return std::imag(-I * std::exp(-I * s.phi) * s1_amplitude(s, 2, 1, k));
      };
      double peak = bisect(im21, om - 10.0 * sg, om + 10.0 * sg);
      worst_root = std::max(worst_root, std::abs(peak - *ff.k_peak));
      ok = ok && std::norm(s1_amplitude(s, 1, 1, peak)) >= 1.0 - 1e-12;
    }
  }
  for (int rs : {1, -1}) {
    SystemSpec s0 = make_spec(0.0, rs, 0.4, 1, {sg, 0.0});
    AmplitudeTable tab =
        transmission_spectrum(s0, om - 10.0 * sg, om + 10.0 * sg, 4001);
    for (const auto& row : tab.rows) {
      double lorentz =
          sg * sg / ((row.k - om) * (row.k - om) + sg * sg);
      worst_lorentz = std::max(worst_lorentz, std::abs(row.p11 - lorentz));
    }
    FanoFeatures f0 = fano_features(s0);
    ok = ok && !f0.k_zero.has_value() && f0.k_peak.has_value();
  }
  FanoFeatures f1 = fano_features(make_spec(1.0, 1, 0.0, 1, {sg, 0.0}));
  ok = ok && f1.k_zero.has_value() && !f1.k_peak.has_value();

  double secs = seconds_since(t0);
  line(ok && worst_peakval <= 1e-12 && worst_root <= 1e-9 &&
           worst_t11 <= 1e-12 && worst_lorentz <= 1e-12,
       3, "line-shape features: peak value, zero/peak locations, Lorentzian",
       fmt("peak value dev %.2g, root dev %.2g, residual |t11| %.2g, "
           "Lorentzian dev %.2g",
           worst_peakval, worst_root, worst_t11, worst_lorentz),
       secs);
}

void criterion_4() {
  auto t0 = std::chrono::steady_clock::now();
  const double sg = 0.2;
  SystemSpec s0 = make_spec(0.0), s1 = make_spec(1.0);
  double worst_null = 0.0, worst_plane = 0.0;
  const double ref = 1.0 / (2.0 * pi * pi);
  for (int j = 0; j <= 60; ++j) {
    double E = 2.0 - 10.0 * sg + j * (20.0 * sg / 60.0);
    worst_null = std::max(worst_null, g2_zero_closed(s0, E));
    worst_null = std::max(
        worst_null,
        std::norm(outgoing_wavefunction(s0, 1, 1, 0.5 * E, 0.5 * E, 0, 0)));
    worst_plane = std::max(worst_plane, std::abs(g2_zero_closed(s1, E) - ref));
    worst_plane = std::max(
        worst_plane,
        std::abs(std::norm(outgoing_wavefunction(s1, 1, 1, 0.5 * E, 0.5 * E, 0,
                                                 0)) -
                 ref));
  }
  double secs = seconds_since(t0);
  line(worst_null <= 1e-25 && worst_plane <= 1e-12 && secs < 1.0, 4,
       "exact coincidence cases: reflection null, transmission plane wave",
       fmt("null %.2g, plane-wave dev %.2g", worst_null, worst_plane), secs);
}

void criterion_5() {
  auto t0 = std::chrono::steady_clock::now();
  const double sg = 0.2;
  double wmin = 1e300, wmax = -1e300;
  for (int j = 0; j <= 20; ++j) {
    double t = j / 20.0;
    double w = fluorescence_weight(make_spec(t), 2.0);
    wmin = std::min(wmin, w);
    wmax = std::max(wmax, w);
  }
  double spread = wmax - wmin;
  double center_dev = std::abs(0.5 * (wmin + wmax) - 1.0 / (2.0 * pi * pi));

  double sym = 0.0;
  SystemSpec half = make_spec(0.5);
  for (double d : {0.4 * sg, sg, 2.0 * sg, 5.0 * sg})
    sym = std::max(sym, std::abs(fluorescence_weight(half, 2.0 + d) -
                                 fluorescence_weight(half, 2.0 - d)));

  double above = g2_zero_closed(half, 2.0 + sg);
  double below = g2_zero_closed(half, 2.0 - sg);
  double asym = std::abs(above - below) / std::max(above, below);

  double secs = seconds_since(t0);
  line(spread <= 1e-15 && center_dev <= 1e-14 && sym <= 1e-15 && asym >= 0.10,
       5, "fluorescence background independence, coincidence asymmetry",
       fmt("weight spread %.2g, symmetry dev %.2g, asymmetry %.3f", spread,
           sym, asym),
       secs);
}

void criterion_6() {
  auto t0 = std::chrono::steady_clock::now();
  const double sg = 0.2, om = 1.0;
  SystemSpec hard = make_spec(0.5);
  std::vector<double> devs;
  bool conv = true;
  for (double ratio : {1e2, 1e3, 1e4}) {
    SystemSpec s = hard;
    s.chi = ratio * sg;
    // certified step: fine enough for the diagonal kink (first term) and the
    // doubly-excited oscillation at rate chi (second term)
    QuadratureParams q;
    q.step = std::min(0.00625, 0.3 / (sg + s.chi));
    double dev = 0.0;
    for (int j = -2; j <= 2; ++j) {
      double p1 = om + j * sg;
      cplx ref = connected_kernel(hard, 1, 1, 1, 1, p1, om, om);
      KernelResult num =
          connected_kernel_numeric(s, 1, 1, 1, 1, p1, om, om, q);
      conv = conv && num.converged;
      dev = std::max(dev, std::abs(num.value - ref) / std::abs(ref));
    }
    devs.push_back(dev);
  }
  SystemSpec lin = hard;
  lin.chi = 0.0;
  double zero_mag =
      std::abs(connected_kernel_numeric(lin, 1, 1, 1, 1, om + 0.37 * sg, om,
                                        om + 0.11 * sg)
                   .value);
  bool monotone = devs[0] > devs[1] && devs[1] > devs[2];
  double secs = seconds_since(t0);
  line(conv && monotone && devs[2] <= 1e-3 && zero_mag <= 1e-6 && secs < 60.0,
       6, "numeric kernel converges to the hard two-level limit",
       fmt("rel dev %.2g -> %.2g -> %.2g, linear-cavity |K| %.2g", devs[0],
           devs[1], devs[2], zero_mag),
       secs);
}

LatticeSpec oracle_base(double t_background, double sigma_re) {
  LatticeSpec s;
  double v = direct_coupling_for_background(t_background);
  double xi1 = std::sqrt(sigma_re * (1.0 + 0.25 * v * v));
  s.micro.xi = Eigen::Vector2d(xi1, xi1);
  s.micro.v = Eigen::Matrix2d::Zero();
  s.micro.v(0, 1) = s.micro.v(1, 0) = v;
  return s;
}

void criterion_7() {
  auto t0 = std::chrono::steady_clock::now();
  LatticeSpec s = oracle_base(0.5, 0.2);
  s.modes_per_channel = 400;
  SingleOracleResult coarse = oracle_single_transmission(s);
  OracleReport rep = compare_with_analytic(coarse, 2e-2);
  // Refine the discretization of the line: dk exactly halves (12/1197 vs
  // 8/399) while the truncation window widens with it. The deviation is
  // dominated by the finite window (it scales as 1/W, flat in M at fixed W,
  // since the mode sum over the resonance converges exponentially), so this
  // is the refinement under which it actually shrinks.
  s.modes_per_channel = 1198;
  s.window = 6.0;
  SingleOracleResult fine = oracle_single_transmission(s);
  bool improves = fine.rms11 < coarse.rms11 && fine.rms21 < coarse.rms21;
  double secs = seconds_since(t0);
  line(rep.passed && improves && secs < 10.0, 7,
       "lattice oracle single-photon amplitudes",
       fmt("rms %.3g at dk=2e-2 (tol 2e-2), %.3g at dk=1e-2", coarse.rms11,
           fine.rms11),
       secs);
}

void criterion_8() {
  auto t0 = std::chrono::steady_clock::now();
  LatticeSpec a = oracle_base(0.0, 0.2);  // full-reflection background
  a.modes_per_channel = 100;
  TwoOracleResult ra = oracle_two_photon_g2(a);
  TwoOracleExpectation ea;
  ea.dip_ratio_tol = 1e-2;
  ea.flat_tol = -1;
  ea.decay_rel_tol = 0.1;
  OracleReport repa = compare_with_analytic(ra, ea);

  LatticeSpec b = oracle_base(1.0, 0.2);  // pure side coupling, detuned
  b.modes_per_channel = 100;
  b.window = 2.4;
  b.packet_center = 3.0;
  b.packet_width = 0.066;
  TwoOracleResult rb = oracle_two_photon_g2(b);
  TwoOracleExpectation eb;
  eb.dip_ratio_tol = -1;
  eb.flat_tol = 5e-2;
  eb.decay_rel_tol = -1;
  OracleReport repb = compare_with_analytic(rb, eb);

  double secs = seconds_since(t0);
  double decay_rel =
      std::abs(ra.decay_rate - 2.0 * ra.sol.sigma.real()) /
      (2.0 * ra.sol.sigma.real());
  line(repa.passed && repb.passed && secs < 300.0, 8,
       "lattice oracle pair correlation: dip, decay, flat trace",
       fmt("dip/plateau %.2g (tol 1e-2), decay rel err %.2g (tol 0.1), "
           "flatness %.2g (tol 5e-2)",
           ra.dip / ra.plateau, decay_rel, rb.flat_dev),
       secs);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures ? 1 : 0;
}
