// Command-line front end: validation, spectra, correlation traces, kernel
// evaluation, reproduction sweeps, and the lattice oracle comparisons.
// Exit codes: 0 success, 1 failed physics check, 2 bad usage or config.
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "fanoqed/coupling.hpp"
#include "fanoqed/csv.hpp"
#include "fanoqed/lattice.hpp"
#include "fanoqed/single_photon.hpp"
#include "fanoqed/two_photon.hpp"

using namespace fanoqed;

namespace {

// FANO_QED_THREADS caps the worker count; each row index writes only its own
// slot, so output is identical for every thread count.
int worker_count() {
  int want = 1;
  if (const char* env = std::getenv("FANO_QED_THREADS")) {
    want = std::atoi(env);
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    want = std::clamp(want, 1, hw);
  }
  return want;
}

void parallel_rows(int n, const std::function<void(int)>& fn) {
  int workers = std::min(worker_count(), n > 0 ? n : 1);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

// System parameters with the precedence defaults < --config file < flags.
struct SpecOpts {
  std::string config_path;
  double t = 0, sigma_re = 0, sigma_im = 0, omega = 0, phi = 0;
  int parity = 0, r_sign = 0;
  std::string chi_str;
  CLI::Option *o_t = nullptr, *o_sr = nullptr, *o_si = nullptr,
              *o_om = nullptr, *o_phi = nullptr, *o_par = nullptr,
              *o_rs = nullptr, *o_chi = nullptr;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "key = value parameter file");
    o_t = app->add_option("--t", t, "background transmission in [0,1]");
    o_sr = app->add_option("--sigma", sigma_re, "Re(sigma), radiative width");
    o_si = app->add_option("--sigma-im", sigma_im, "Im(sigma), line shift");
    o_om = app->add_option("--omega", omega, "resonator frequency");
    o_phi = app->add_option("--phi", phi, "background phase");
    o_par = app->add_option("--parity", parity, "coupling parity, +1 or -1");
    o_rs = app->add_option("--r-sign", r_sign, "sign branch of r, +1 or -1");
    o_chi = app->add_option("--chi", chi_str, "anharmonicity, number or inf");
  }

  SystemSpec resolve() const {
    SystemSpec s;
    if (!config_path.empty()) s = load_config(config_path);
    if (o_t->count()) s.t_bg = t;
    if (o_sr->count()) s.sigma = cplx(sigma_re, s.sigma.imag());
    if (o_si->count()) s.sigma = cplx(s.sigma.real(), sigma_im);
    if (o_om->count()) s.omega = omega;
    if (o_phi->count()) s.phi = phi;
    if (o_par->count()) s.parity = parity;
    if (o_rs->count()) s.r_sign = r_sign;
    if (o_chi->count()) {
      if (chi_str == "inf" || chi_str == "infinity") {
        s.chi = chi_infinite;
      } else {
        std::size_t used = 0;
        s.chi = std::stod(chi_str, &used);
        if (used != chi_str.size())
          throw std::invalid_argument("--chi: expected a number or 'inf'");
      }
    }
    return validated(s);
  }
};

// Lattice oracle parameters. --t/--sigma derive the microscopic couplings on
// the r<0 branch; --v/--xi1 override them directly.
struct OracleOpts {
  double t = 0.5, sigma_re = 0.2, v = 0, xi1 = 0;
  int modes = 0;
  double window = 0, packet_width = 0, k0 = 0, evolve_time = 0, dt = 0,
         tau_max = 0;
  CLI::Option *o_v = nullptr, *o_xi = nullptr, *o_modes = nullptr,
              *o_window = nullptr, *o_pw = nullptr, *o_k0 = nullptr,
              *o_T = nullptr, *o_dt = nullptr, *o_tau = nullptr;

  void attach(CLI::App* app, bool pair) {
    app->add_option("--t", t, "background transmission realized through v");
    app->add_option("--sigma", sigma_re, "target Re(sigma)");
    o_v = app->add_option("--v", v, "channel-channel hopping, overrides --t");
    o_xi = app->add_option("--xi1", xi1,
                           "per-channel coupling, overrides --sigma");
    o_modes = app->add_option("--modes", modes, "modes per channel");
    o_window = app->add_option("--window", window, "k-grid half width");
    o_pw = app->add_option("--packet-width", packet_width, "sigma_k");
    o_k0 = app->add_option("--k0", k0, "packet center frequency");
    o_T = app->add_option("--evolve-time", evolve_time, "readout time");
    o_dt = app->add_option("--dt", dt, "propagator chunk, 0 = single shot");
    if (pair) o_tau = app->add_option("--tau-max", tau_max, "correlation span");
  }

  LatticeSpec resolve() const {
    LatticeSpec s;
    double hop = o_v->count() ? v : direct_coupling_for_background(t);
    double amp = o_xi->count() ? xi1 : std::sqrt(sigma_re * (1.0 + 0.25 * hop * hop));
    s.micro.xi = Eigen::Vector2d(amp, amp);
    s.micro.v = Eigen::Matrix2d::Zero();
    s.micro.v(0, 1) = s.micro.v(1, 0) = hop;
    if (o_modes->count()) s.modes_per_channel = modes;
    if (o_window->count()) s.window = window;
    if (o_pw->count()) s.packet_width = packet_width;
    if (o_k0->count()) s.packet_center = k0;
    if (o_T->count()) s.evolve_time = evolve_time;
    if (o_dt->count()) s.dt = dt;
    if (o_tau && o_tau->count()) s.tau_max = tau_max;
    return s;
  }
};

void save(const CsvWriter& csv, const std::string& path) {
  csv.save(path);
  std::printf("wrote %s\n", path.c_str());
}

CsvWriter spectrum_csv(const SystemSpec& spec, double k_min, double k_max,
                       int points) {
  AmplitudeTable tab = transmission_spectrum(spec, k_min, k_max, points);
  CsvWriter csv(
      "k,re_t11,im_t11,re_t21,im_t21,T11,T21,unitarity_residual");
  for (const auto& r : tab.rows)
    csv.row({r.k, r.t11.real(), r.t11.imag(), r.t21.real(), r.t21.imag(),
             r.p11, r.p21, r.unitarity_residual});
  return csv;
}

int cmd_validate(const SystemSpec& spec, double tol) {
  DirectScattering bg =
      build_two_port_background(spec.t_bg, spec.r_sign, spec.phi);
  CouplingSet coup = solve_mirror_coupling(spec);
  ConstraintReport rep = validate_constraints(bg, coup, spec.sigma, tol);
  for (const auto& [name, value] : rep.residuals)
    std::printf("%-12s %.3e\n", name.c_str(), value);
  std::printf("max residual %.3e (tolerance %.1e): %s\n", rep.max_residual(),
              rep.tolerance, rep.passed ? "PASSED" : "FAILED");
  return rep.passed ? 0 : 1;
}

int cmd_spectrum(const SystemSpec& spec, double k_min, double k_max,
                 int points, const std::string& out) {
  save(spectrum_csv(spec, k_min, k_max, points), out);
  return 0;
}

int cmd_g2(const SystemSpec& spec, double E, double tau_max, int points,
           const std::string& normalize, const std::string& out) {
  CorrelationTrace tr = g2_trace(spec, 0.5 * E, 0.5 * E, tau_max, points);
  bool scaled = normalize == "baseline";
  if (scaled && tr.baseline <= 0.0)
    throw std::invalid_argument(
        "baseline normalization undefined: zero transmitted baseline");
  CsvWriter csv("tau,g2,baseline");
  for (const auto& p : tr.points)
    csv.row({p.tau, scaled ? p.g2 / tr.baseline : p.g2,
             scaled ? 1.0 : p.baseline});
  save(csv, out);
  return 0;
}

int cmd_kernel(const SystemSpec& spec, double k1, double k2, double p1_min,
               double p1_max, int points, QuadratureParams q,
               const std::string& out) {
  CsvWriter csv("p1,k1,k2,re_k,im_k,err_estimate,converged");
  std::vector<KernelResult> results(points);
  parallel_rows(points, [&](int i) {
    double p1 = p1_min + (p1_max - p1_min) * i / (points - 1.0);
    if (spec.two_level()) {
      cplx v = connected_kernel(spec, 1, 1, 1, 1, p1, k1, k2);
      results[i] = {v, 0.0, true};
    } else {
      results[i] = connected_kernel_numeric(spec, 1, 1, 1, 1, p1, k1, k2, q);
    }
  });
  bool all_converged = true;
  for (int i = 0; i < points; ++i) {
    double p1 = p1_min + (p1_max - p1_min) * i / (points - 1.0);
    csv.row({p1, k1, k2, results[i].value.real(), results[i].value.imag(),
             results[i].err_estimate, results[i].converged ? 1.0 : 0.0});
    all_converged = all_converged && results[i].converged;
  }
  save(csv, out);
  return all_converged ? 0 : 1;
}

std::vector<double> sweep_t_values(const CLI::Option* o_t, double t) {
  if (o_t->count()) return {t};
  return {0.0, 0.3, 0.5, 0.8, 1.0};
}

std::string sweep_path(const std::string& dir, const char* stem, double t) {
  char name[64];
  std::snprintf(name, sizeof name, "%s_t%.2f.csv", stem, t);
  return (std::filesystem::path(dir) / name).string();
}

int cmd_sweep_fig2(double t_flag, const CLI::Option* o_t, int points,
                   double omega, const std::string& dir) {
  for (double t : sweep_t_values(o_t, t_flag)) {
    SystemSpec s;
    s.omega = omega;
    s.sigma = cplx(0.2 * omega, 0.0);
    s.t_bg = t;
    s = validated(s);
    save(spectrum_csv(s, 0.0, 2.0 * omega, points), sweep_path(dir, "fig2", t));
  }
  return 0;
}

int cmd_sweep_fig3(double t_flag, const CLI::Option* o_t, double e_half_min,
                   double e_half_max, int points, double omega,
                   const std::string& dir) {
  for (double t : sweep_t_values(o_t, t_flag)) {
    SystemSpec s;
    s.omega = omega;
    s.sigma = cplx(0.2 * omega, 0.0);
    s.t_bg = t;
    s = validated(s);
    std::vector<std::array<double, 4>> rows(points);
    parallel_rows(points, [&](int i) {
      double eh =
          e_half_min + (e_half_max - e_half_min) * i / (points - 1.0);
      double t11sq = std::norm(s1_amplitude(s, 1, 1, eh));
      rows[i] = {eh, t11sq * t11sq / (2.0 * pi * pi),
                 fluorescence_weight(s, 2.0 * eh), g2_zero_closed(s, 2.0 * eh)};
    });
    CsvWriter csv("E_half,T11_sq_product,fluorescence,half_g2");
    for (const auto& r : rows) csv.row({r[0], r[1], r[2], r[3]});
    save(csv, sweep_path(dir, "fig3", t));
  }
  return 0;
}

int write_oracle_report(const OracleReport& rep, const std::string& dir) {
  std::string lines;
  for (const auto& c : rep.checks) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-28s %.6e  tol %.1e  %s\n",
                  c.name.c_str(), c.value, c.tolerance,
                  c.passed ? "pass" : "FAIL");
    lines += buf;
  }
  lines += rep.passed ? "PASSED\n" : "FAILED\n";
  std::ofstream f(std::filesystem::path(dir) / "oracle_report.txt",
                  std::ios::binary);
  f << lines;
  std::fputs(lines.c_str(), stdout);
  return rep.passed ? 0 : 1;
}

int cmd_oracle_single(const LatticeSpec& spec, double rms_tol,
                      const std::string& dir) {
  SingleOracleResult res = oracle_single_transmission(spec);
  CsvWriter csv("k,re_t11,im_t11,re_t21,im_t21,T11,T21,unitarity_residual");
  for (std::size_t i = 0; i < res.k.size(); ++i) {
    double p11 = std::norm(res.t11[i]), p21 = std::norm(res.t21[i]);
    csv.row({res.k[i], res.t11[i].real(), res.t11[i].imag(),
             res.t21[i].real(), res.t21[i].imag(), p11, p21,
             std::abs(p11 + p21 - 1.0)});
  }
  save(csv, (std::filesystem::path(dir) / "oracle_single.csv").string());
  return write_oracle_report(compare_with_analytic(res, rms_tol), dir);
}

int cmd_oracle_two(const LatticeSpec& spec, const std::string& expect,
                   const std::string& dir) {
  TwoOracleResult res = oracle_two_photon_g2(spec);
  CsvWriter csv("tau,g2,baseline");
  for (std::size_t i = 0; i < res.tau.size(); ++i)
    csv.row({res.tau[i], res.trace[i], res.analytic[i]});
  save(csv, (std::filesystem::path(dir) / "oracle_two.csv").string());

  TwoOracleExpectation e;
  if (expect == "antibunch") {
    e.dip_ratio_tol = 1e-2;
    e.flat_tol = -1;
    e.decay_rel_tol = 0.1;
  } else if (expect == "flat") {
    e.dip_ratio_tol = -1;
    e.flat_tol = 5e-2;
    e.decay_rel_tol = -1;
  } else {  // none: bookkeeping checks only
    e.dip_ratio_tol = -1;
    e.flat_tol = -1;
    e.decay_rel_tol = -1;
  }
  return write_oracle_report(compare_with_analytic(res, e), dir);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Few-photon scattering observables for a resonator with a "
               "direct interference pathway"};
  app.require_subcommand(1);

  // validate
  auto* validate = app.add_subcommand(
      "validate", "check the coupling constraint algebra for one system");
  SpecOpts vspec;
  vspec.attach(validate);
  double vtol = 1e-12;
  validate->add_option("--tol", vtol, "residual tolerance");

  // spectrum
  auto* spectrum =
      app.add_subcommand("spectrum", "single-photon amplitudes on a k grid");
  SpecOpts sspec;
  sspec.attach(spectrum);
  double k_min = 0.0, k_max = 0.0;
  int s_points = 2001;
  std::string s_out = "spectrum.csv";
  auto* o_kmin = spectrum->add_option("--k-min", k_min, "grid start");
  auto* o_kmax = spectrum->add_option("--k-max", k_max, "grid end");
  spectrum->add_option("--points", s_points, "grid size");
  spectrum->add_option("--out", s_out, "output CSV path");

  // g2
  auto* g2 = app.add_subcommand(
      "g2", "two-photon correlation trace for a degenerate incident pair");
  SpecOpts gspec;
  gspec.attach(g2);
  double g_E = 0.0, g_tau = 0.0;
  int g_points = 501;
  std::string g_norm = "raw", g_out = "g2.csv";
  auto* o_gE = g2->add_option("--E", g_E, "total pair energy, default 2 omega");
  auto* o_gtau = g2->add_option("--tau-max", g_tau, "trace span");
  g2->add_option("--points", g_points, "trace size");
  g2->add_option("--normalize", g_norm, "raw or baseline")
      ->check(CLI::IsMember({"raw", "baseline"}));
  g2->add_option("--out", g_out, "output CSV path");

  // kernel
  auto* kernel = app.add_subcommand(
      "kernel", "connected two-photon kernel over a p1 grid");
  SpecOpts kspec;
  kspec.attach(kernel);
  double kk1 = 0.0, kk2 = 0.0, p1_min = 0.0, p1_max = 0.0;
  int k_points = 201;
  std::string k_out = "kernel.csv";
  QuadratureParams kq;
  auto* o_kk1 = kernel->add_option("--k1", kk1, "incident frequency 1");
  auto* o_kk2 = kernel->add_option("--k2", kk2, "incident frequency 2");
  auto* o_p1min = kernel->add_option("--k-min", p1_min, "outgoing grid start");
  auto* o_p1max = kernel->add_option("--k-max", p1_max, "outgoing grid end");
  kernel->add_option("--points", k_points, "grid size");
  kernel->add_option("--t-max", kq.t_max, "quadrature span, 0 = default");
  kernel->add_option("--step", kq.step, "quadrature step, 0 = default");
  kernel->add_option("--quad-tol", kq.tol, "convergence certification bound");
  kernel->add_option("--out", k_out, "output CSV path");

  // sweep-fig2
  auto* fig2 = app.add_subcommand(
      "sweep-fig2", "per-background |t11(k)|^2 spectra, k in [0, 2 omega]");
  double f2_t = 0.0, f2_omega = 1.0;
  int f2_points = 2001;
  std::string f2_dir = ".";
  auto* o_f2t = fig2->add_option("--t", f2_t, "restrict to one background");
  fig2->add_option("--omega", f2_omega, "frequency unit");
  fig2->add_option("--points", f2_points, "grid size");
  fig2->add_option("--out", f2_dir, "output directory");

  // sweep-fig3
  auto* fig3 = app.add_subcommand(
      "sweep-fig3",
      "pair-energy sweep: transmitted product, fluorescence, half G2(0)");
  double f3_t = 0.0, f3_omega = 1.0, eh_min = 0.0, eh_max = 0.0;
  int f3_points = 1001;
  std::string f3_dir = ".";
  auto* o_f3t = fig3->add_option("--t", f3_t, "restrict to one background");
  auto* o_ehmin = fig3->add_option("--E-half-min", eh_min, "sweep start, E/2");
  auto* o_ehmax = fig3->add_option("--E-half-max", eh_max, "sweep end, E/2");
  fig3->add_option("--omega", f3_omega, "frequency unit");
  fig3->add_option("--points", f3_points, "grid size");
  fig3->add_option("--out", f3_dir, "output directory");

  // oracle-single
  auto* osingle = app.add_subcommand(
      "oracle-single", "lattice check of the single-photon amplitudes");
  OracleOpts oopts;
  oopts.attach(osingle, false);
  double rms_tol = 2e-2;
  std::string os_dir = ".";
  osingle->add_option("--tol", rms_tol, "rms amplitude tolerance");
  osingle->add_option("--out", os_dir, "output directory");

  // oracle-two
  auto* otwo = app.add_subcommand(
      "oracle-two", "lattice check of the pair correlation trace");
  OracleOpts topts;
  topts.attach(otwo, true);
  std::string expect = "none", ot_dir = ".";
  otwo->add_option("--expect", expect, "antibunch, flat, or none")
      ->check(CLI::IsMember({"antibunch", "flat", "none"}));
  otwo->add_option("--out", ot_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(vspec.resolve(), vtol);
    if (spectrum->parsed()) {
      SystemSpec s = sspec.resolve();
      double lo = o_kmin->count() ? k_min : s.omega - 10.0 * s.sigma.real();
      double hi = o_kmax->count() ? k_max : s.omega + 10.0 * s.sigma.real();
      return cmd_spectrum(s, lo, hi, s_points, s_out);
    }
    if (g2->parsed()) {
      SystemSpec s = gspec.resolve();
      double E = o_gE->count() ? g_E : 2.0 * s.omega;
      double tau = o_gtau->count() ? g_tau : 20.0 / s.sigma.real();
      return cmd_g2(s, E, tau, g_points, g_norm, g_out);
    }
    if (kernel->parsed()) {
      SystemSpec s = kspec.resolve();
      double a1 = o_kk1->count() ? kk1 : s.omega;
      double a2 = o_kk2->count() ? kk2 : s.omega;
      double lo = o_p1min->count() ? p1_min : s.omega - 5.0 * s.sigma.real();
      double hi = o_p1max->count() ? p1_max : s.omega + 5.0 * s.sigma.real();
      return cmd_kernel(s, a1, a2, lo, hi, k_points, kq, k_out);
    }
    if (fig2->parsed())
      return cmd_sweep_fig2(f2_t, o_f2t, f2_points, f2_omega, f2_dir);
    if (fig3->parsed()) {
      double lo = o_ehmin->count() ? eh_min : 0.5 * f3_omega;
      double hi = o_ehmax->count() ? eh_max : 1.5 * f3_omega;
      return cmd_sweep_fig3(f3_t, o_f3t, lo, hi, f3_points, f3_omega, f3_dir);
    }
    if (osingle->parsed())
      return cmd_oracle_single(oopts.resolve(), rms_tol, os_dir);
    if (otwo->parsed()) return cmd_oracle_two(topts.resolve(), expect, ot_dir);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
