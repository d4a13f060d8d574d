#include "fanoqed/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "fanoqed/single_photon.hpp"
#include "fanoqed/two_photon.hpp"
#include "propagator.hpp"

namespace fanoqed {

namespace {

constexpr cplx I(0.0, 1.0);

struct Geometry {
  double dk, lx, sigma_x, x0;
};

Geometry geometry_of(const LatticeSpec& s) {
  Geometry g;
  g.dk = 2.0 * s.window / (s.modes_per_channel - 1);
  g.lx = 2.0 * pi / g.dk;
  g.sigma_x = 0.5 / s.packet_width;
  g.x0 = -3.0 / s.packet_width;
  return g;
}

[[noreturn]] void refuse(const std::string& what) {
  throw std::runtime_error("lattice oracle: " + what);
}

void check_micro(const MicroscopicParams& m) {
  if (m.xi.size() != 2 || m.v.rows() != 2 || m.v.cols() != 2)
    throw std::invalid_argument("lattice oracle: exactly 2 channels supported");
  if (m.v(0, 1) != m.v(1, 0) || m.v(0, 0) != 0.0 || m.v(1, 1) != 0.0)
    throw std::invalid_argument(
        "lattice oracle: v must be symmetric with zero diagonal");
  if (!(m.xi.cwiseAbs().minCoeff() > 0))
    throw std::invalid_argument("lattice oracle: xi entries must be nonzero");
}

// Fills engine defaults and enforces the resolution and containment
// invariants that keep discretization artifacts out of the measurement:
// the window must dominate the linewidth, the packet must fit spectrally
// inside the window, and no wrapped component may return to the scatterer
// or reach a measured region before the readout time.
LatticeSpec resolve(LatticeSpec s, bool pair_run) {
  check_micro(s.micro);
  if (s.modes_per_channel < 8)
    throw std::invalid_argument("lattice oracle: need at least 8 modes");
  if (!(s.omega > 0)) throw std::invalid_argument("lattice oracle: omega > 0");

  MicroscopicSolution sol = from_microscopic(s.micro);
  const double sr = sol.sigma.real();
  if (!(sr > 0)) refuse("effective linewidth is not positive");

  if (s.window <= 0) s.window = (pair_run ? 8.0 : 20.0) * sr;
  if (s.packet_width <= 0) s.packet_width = sr / 5.0;
  if (s.packet_center <= 0) s.packet_center = s.omega + sol.sigma.imag();
  if (s.evolve_time <= 0) s.evolve_time = 8.0 / s.packet_width;
  if (s.dt < 0) throw std::invalid_argument("lattice oracle: dt must be >= 0");

  Geometry g = geometry_of(s);
  std::ostringstream msg;
  if (s.window < 5.0 * sr) {
    msg << "window " << s.window << " too narrow for linewidth " << sr
        << "; need at least 5x";
    refuse(msg.str());
  }
  if (s.packet_width > sr / 3.0) {
    msg << "packet width " << s.packet_width
        << " too broad for linewidth " << sr << "; need sigma_k <= Re(sigma)/3";
    refuse(msg.str());
  }
  double lo_gap = s.packet_center - (s.omega - s.window);
  double hi_gap = (s.omega + s.window) - s.packet_center;
  if (lo_gap < 5.0 * s.packet_width || hi_gap < 5.0 * s.packet_width)
    refuse("packet spectrum not contained in the window; need 5 sigma_k gaps");
  if (s.evolve_time + 3.5 * g.sigma_x > g.lx - g.x0) {
    // the packet starts at x0 < 0, so its leading tail travels lx + |x0|
    // before re-reaching the scatterer on the periodic grid
    msg << "span 2 pi / dk = " << g.lx
        << " too short for evolve time; increase modes per channel";
    refuse(msg.str());
  }
  if (g.x0 + s.evolve_time < 3.5 * g.sigma_x)
    refuse("packet has not fully cleared the scatterer at readout time");

  if (pair_run) {
    double xc = g.x0 + s.evolve_time;
    double tau_safe = g.lx - xc - 3.5 * g.sigma_x;
    if (tau_safe <= 2.5 / sr)
      refuse("correlation span before wraparound is too short");
    if (s.tau_max <= 0) s.tau_max = std::min(10.0 / sr, tau_safe);
    if (s.tau_max > tau_safe) {
      msg << "tau_max " << s.tau_max << " exceeds wrap-safe span " << tau_safe;
      refuse(msg.str());
    }
  }

  // memory refusal with the estimate, so callers can size the run
  const std::size_t m = s.modes_per_channel;
  std::size_t nnz;
  std::size_t dim;
  if (pair_run) {
    const std::size_t mt = 2 * m;
    const std::size_t pairs = mt * (mt + 1) / 2;
    dim = pairs + mt;
    nnz = pairs * (3 + 2 * m) + mt * (1 + mt + m);
  } else {
    dim = 2 * m + 1;
    nnz = dim + 4 * m + 2 * m * m;
  }
  std::size_t bytes = 28 * nnz + 6 * 16 * dim;
  if (bytes > s.memory_cap) {
    msg << "estimated " << bytes << " bytes exceeds cap " << s.memory_cap
        << "; reduce modes_per_channel or raise the cap";
    refuse(msg.str());
  }
  return s;
}

Eigen::VectorXd make_grid(const LatticeSpec& s) {
  const int m = s.modes_per_channel;
  const double dk = 2.0 * s.window / (m - 1);
  Eigen::VectorXd k(m);
  for (int j = 0; j < m; ++j) k[j] = s.omega - s.window + j * dk;
  return k;
}

// Gaussian packet, sigma_k = std of |f|^2, centered at x0 = -3/sigma_k.
Eigen::VectorXcd make_packet(const LatticeSpec& s, const Eigen::VectorXd& k) {
  const double x0 = -3.0 / s.packet_width;
  Eigen::VectorXcd f(k.size());
  for (int j = 0; j < k.size(); ++j) {
    double dkj = k[j] - s.packet_center;
    f[j] = std::exp(-dkj * dkj / (4.0 * s.packet_width * s.packet_width)) *
           std::exp(-I * k[j] * x0);
  }
  f /= f.norm();
  return f;
}

// Spectral enclosures for the Chebyshev propagator: the diagonal range
// widened by an operator-norm bound on the coupling. Row-wise disk bounds
// are far too loose here because the resonator row touches every mode.
struct Bounds {
  double lo, hi;
};

Bounds single_bounds(const LatticeSpec& s) {
  const double m = s.modes_per_channel;
  const double dk = 2.0 * s.window / (m - 1);
  // star coupling has norm ||xi|| sqrt(m dk / 2 pi); the dense cross-channel
  // block is rank one with norm |v| m dk / 2 pi
  const double xin = std::sqrt(dk / (2.0 * pi) * m) * s.micro.xi.norm();
  const double vn = std::abs(s.micro.v(0, 1)) * dk / (2.0 * pi) * m;
  return {s.omega - s.window - (xin + vn), s.omega + s.window + (xin + vn)};
}

Bounds pair_bounds(const LatticeSpec& s) {
  const double m = s.modes_per_channel;
  const double dk = 2.0 * s.window / (m - 1);
  const double xin = std::sqrt(dk / (2.0 * pi) * m) * s.micro.xi.norm();
  const double vn = std::abs(s.micro.v(0, 1)) * dk / (2.0 * pi) * m;
  // bosonic enhancement: sqrt(2) on the absorption block, two hopping photons
  const double b = std::sqrt(2.0) * xin + 2.0 * vn;
  return {2.0 * (s.omega - s.window) - b, 2.0 * (s.omega + s.window) + b};
}

void evolve(const SpMat& h, double t, double dt, Eigen::VectorXcd& psi,
            Bounds bd) {
  if (dt <= 0.0 || dt >= t) {
    detail::propagate(h, t, psi, 1e-12, bd.lo, bd.hi);
    return;
  }
  int steps = static_cast<int>(std::ceil(t / dt));
  double step = t / steps;
  for (int i = 0; i < steps; ++i)
    detail::propagate(h, step, psi, 1e-12, bd.lo, bd.hi);
}

double parabolic_refine(const Eigen::VectorXd& k, const Eigen::VectorXd& y,
                        int i) {
  if (i <= 0 || i + 1 >= k.size()) return k[i];
  double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
  if (denom == 0.0) return k[i];
  double shift = 0.5 * (y[i - 1] - y[i + 1]) / denom;
  return k[i] + shift * (k[i + 1] - k[i]);
}

// Background parameters (t, r_sign, phi) matching a two-port unitary
// symmetric C, so closed forms can be evaluated for a microscopic solution.
SystemSpec spec_for_solution(const MicroscopicSolution& sol, double omega) {
  SystemSpec a;
  a.channels = 2;
  a.omega = omega;
  a.sigma = sol.sigma;
  a.chi = chi_infinite;
  cplx c11 = sol.bg.c(0, 0), c12 = sol.bg.c(0, 1);
  a.t_bg = std::min(1.0, std::abs(c11));
  a.phi = (std::abs(c11) > 1e-13) ? std::arg(c11) : 0.0;
  double r = (c12 * std::exp(-I * a.phi) / I).real();
  a.r_sign = (r >= 0.0) ? +1 : -1;
  a.parity = +1;  // equal xi entries give the even mirror combination
  return a;
}

}  // namespace

SingleSector build_single_sector(const LatticeSpec& spec_in) {
  LatticeSpec s = resolve(spec_in, false);
  const int m = s.modes_per_channel;
  const int dim = 2 * m + 1;
  const int atom = 2 * m;
  Eigen::VectorXd k = make_grid(s);
  const double dk = 2.0 * s.window / (m - 1);
  const double xi_s = std::sqrt(dk / (2.0 * pi));
  const double v_s = s.micro.v(0, 1) * dk / (2.0 * pi);

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(dim) + 4 * m + 2 * m * m);
  for (int ch = 0; ch < 2; ++ch) {
    const double xi = s.micro.xi[ch];
    for (int j = 0; j < m; ++j) {
      int g = ch * m + j;
      trip.emplace_back(g, g, k[j]);
      trip.emplace_back(g, atom, xi * xi_s);
      trip.emplace_back(atom, g, xi * xi_s);
    }
  }
  trip.emplace_back(atom, atom, s.omega);
  if (v_s != 0.0)
    for (int j = 0; j < m; ++j)
      for (int l = 0; l < m; ++l) {
        trip.emplace_back(j, m + l, v_s);
        trip.emplace_back(m + l, j, v_s);
      }

  SingleSector sec;
  sec.h.resize(dim, dim);
  sec.h.setFromTriplets(trip.begin(), trip.end());
  sec.grid = {k, dk, m};
  return sec;
}

TwoSector build_two_sector(const LatticeSpec& spec_in) {
  LatticeSpec s = resolve(spec_in, true);
  const int m = s.modes_per_channel;
  const int mt = 2 * m;
  const int pairs = mt * (mt + 1) / 2;
  const int dim = pairs + mt;
  Eigen::VectorXd k = make_grid(s);
  const double dk = 2.0 * s.window / (m - 1);
  const double xi_s = std::sqrt(dk / (2.0 * pi));
  const double v_s = s.micro.v(0, 1) * dk / (2.0 * pi);
  const double rt2 = std::sqrt(2.0);

  auto kg = [&](int g) { return k[g % m]; };
  auto ch = [&](int g) { return g / m; };
  auto xi_of = [&](int g) { return s.micro.xi[ch(g)]; };
  auto pcol = [&](int a, int b) {
    return a <= b ? pair_index(a, b, mt) : pair_index(b, a, mt);
  };

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(pairs) * (3 + 2 * m) +
               static_cast<std::size_t>(mt) * (1 + mt + m));

  for (int a = 0; a < mt; ++a) {
    for (int b = a; b < mt; ++b) {
      const int row = pair_index(a, b, mt);
      trip.emplace_back(row, row, kg(a) + kg(b));
      if (a == b) {
        // doubly occupied mode: bosonic sqrt(2) on absorption and hopping
        trip.emplace_back(row, pairs + a, rt2 * xi_of(a) * xi_s);
        if (v_s != 0.0) {
          const int oc = (ch(a) == 0) ? m : 0;
          for (int c = oc; c < oc + m; ++c)
            trip.emplace_back(row, pcol(c, a), rt2 * v_s);
        }
      } else {
        trip.emplace_back(row, pairs + a, xi_of(b) * xi_s);
        trip.emplace_back(row, pairs + b, xi_of(a) * xi_s);
        if (v_s != 0.0) {
          const int oa = (ch(a) == 0) ? m : 0;
          for (int c = oa; c < oa + m; ++c)
            trip.emplace_back(row, pcol(c, b), (c == b ? rt2 : 1.0) * v_s);
          const int ob = (ch(b) == 0) ? m : 0;
          for (int c = ob; c < ob + m; ++c)
            trip.emplace_back(row, pcol(a, c), (c == a ? rt2 : 1.0) * v_s);
        }
      }
    }
  }
  for (int g = 0; g < mt; ++g) {
    const int row = pairs + g;
    trip.emplace_back(row, row, s.omega + kg(g));
    for (int b = 0; b < mt; ++b)
      trip.emplace_back(row, pcol(g, b), (b == g ? rt2 : 1.0) * xi_of(b) * xi_s);
    if (v_s != 0.0) {
      const int oc = (ch(g) == 0) ? m : 0;
      for (int c = oc; c < oc + m; ++c) trip.emplace_back(row, pairs + c, v_s);
    }
  }

  TwoSector sec;
  sec.h.resize(dim, dim);
  sec.h.setFromTriplets(trip.begin(), trip.end());
  sec.grid = {k, dk, m};
  sec.pair_count = pairs;
  return sec;
}

SingleOracleResult oracle_single_transmission(LatticeSpec spec_in) {
  LatticeSpec s = resolve(spec_in, false);
  SingleOracleResult res;
  res.spec = s;
  res.sol = from_microscopic(s.micro);

  SingleSector sec = build_single_sector(s);
  const int m = s.modes_per_channel;
  Eigen::VectorXcd f = make_packet(s, sec.grid.k);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(2 * m + 1);
  psi.head(m) = f;
  evolve(sec.h, s.evolve_time, s.dt, psi, single_bounds(s));

  res.norm_drift = std::abs(psi.norm() - 1.0);
  res.atom_residue = std::norm(psi[2 * m]);

  // The support list carries one extra mode past each band edge so the fixed
  // comparison grid below can always interpolate without extrapolating.
  std::vector<int> band, support;
  for (int j = 0; j < m; ++j) {
    const double dist = std::abs(sec.grid.k[j] - s.packet_center);
    if (dist <= 2.0 * s.packet_width) band.push_back(j);
    if (dist <= 2.0 * s.packet_width + sec.grid.dk) support.push_back(j);
  }
  if (band.size() < 5) refuse("fewer than 5 modes in the measurement band");

  std::vector<double> sk(support.size());
  std::vector<cplx> s11(support.size()), s21(support.size());
  Eigen::VectorXd band_k(band.size()), band_p11(band.size());
  std::size_t ib = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const int j = support[i];
    const double kj = sec.grid.k[j];
    const cplx free = std::exp(-I * kj * s.evolve_time) * f[j];
    const cplx t11 = psi[j] / free;
    const cplx t21 = psi[m + j] / free;
    sk[i] = kj;
    s11[i] = t11;
    s21[i] = t21;
    if (ib < band.size() && j == band[ib]) {
      res.k.push_back(kj);
      res.t11.push_back(t11);
      res.t21.push_back(t21);
      res.t11_ref.push_back(s1_amplitude(res.sol.bg, res.sol.coup, s.omega,
                                         res.sol.sigma, 1, 1, kj));
      res.t21_ref.push_back(s1_amplitude(res.sol.bg, res.sol.coup, s.omega,
                                         res.sol.sigma, 2, 1, kj));
      res.max_flux_residual =
          std::max(res.max_flux_residual,
                   std::abs(std::norm(t11) + std::norm(t21) - 1.0));
      band_k[ib] = kj;
      band_p11[ib] = std::norm(t11);
      ++ib;
    }
  }

  // Deviation metric on a fixed band grid, so runs at different resolutions
  // measure the same observable: the mode amplitudes are interpolated
  // linearly in k and compared against the closed form at the grid points.
  // The grid-to-grid part of the deviation is then the reconstruction error,
  // which shrinks as dk^2, rather than an artifact of which modes happened
  // to fall inside the band.
  const int nq = 33;
  double acc11 = 0.0, acc21 = 0.0;
  for (int i = 0; i < nq; ++i) {
    const double kq = s.packet_center +
                      2.0 * s.packet_width * (2.0 * i / (nq - 1) - 1.0);
    auto it = std::upper_bound(sk.begin(), sk.end(), kq);
    std::size_t hi = std::clamp<std::ptrdiff_t>(it - sk.begin(), 1,
                                                (std::ptrdiff_t)sk.size() - 1);
    const std::size_t lo = hi - 1;
    const double w = (kq - sk[lo]) / (sk[hi] - sk[lo]);
    const cplx t11q = (1.0 - w) * s11[lo] + w * s11[hi];
    const cplx t21q = (1.0 - w) * s21[lo] + w * s21[hi];
    acc11 += std::norm(t11q - s1_amplitude(res.sol.bg, res.sol.coup, s.omega,
                                           res.sol.sigma, 1, 1, kq));
    acc21 += std::norm(t21q - s1_amplitude(res.sol.bg, res.sol.coup, s.omega,
                                           res.sol.sigma, 2, 1, kq));
  }
  res.rms11 = std::sqrt(acc11 / nq);
  res.rms21 = std::sqrt(acc21 / nq);

  int imax = 0, imin = 0;
  for (int i = 1; i < band_p11.size(); ++i) {
    if (band_p11[i] > band_p11[imax]) imax = i;
    if (band_p11[i] < band_p11[imin]) imin = i;
  }
  res.k_at_max = parabolic_refine(band_k, band_p11, imax);
  res.k_at_min = parabolic_refine(band_k, band_p11, imin);
  return res;
}

TwoOracleResult oracle_two_photon_g2(LatticeSpec spec_in) {
  LatticeSpec s = resolve(spec_in, true);
  if (s.micro.xi[0] != s.micro.xi[1])
    throw std::invalid_argument(
        "pair oracle: xi must be channel-symmetric for the closed-form "
        "comparison");
  TwoOracleResult res;
  res.spec = s;
  res.sol = from_microscopic(s.micro);
  const double sr = res.sol.sigma.real();

  TwoSector sec = build_two_sector(s);
  const int m = s.modes_per_channel;
  const int mt = 2 * m;
  const int pairs = sec.pair_count;
  Eigen::VectorXcd f = make_packet(s, sec.grid.k);

  // product pair of identical packets in channel 1
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(pairs + mt);
  const double rt2 = std::sqrt(2.0);
  for (int a = 0; a < m; ++a) {
    c[pair_index(a, a, mt)] = f[a] * f[a];
    for (int b = a + 1; b < m; ++b)
      c[pair_index(a, b, mt)] = rt2 * f[a] * f[b];
  }
  evolve(sec.h, s.evolve_time, s.dt, c, pair_bounds(s));
  res.norm_drift = std::abs(c.norm() - 1.0);
  double atom_pop = 0.0;
  for (int g = 0; g < mt; ++g) atom_pop += std::norm(c[pairs + g]);
  res.atom_residue = atom_pop;

  // independent single-photon run on the same lattice for the product part
  SingleSector sec1 = build_single_sector(s);
  Eigen::VectorXcd psi1 = Eigen::VectorXcd::Zero(2 * m + 1);
  psi1.head(m) = f;
  evolve(sec1.h, s.evolve_time, s.dt, psi1, single_bounds(s));

  // channel-1 pair amplitudes, symmetric matrix
  Eigen::MatrixXcd amp(m, m);
  for (int a = 0; a < m; ++a) {
    amp(a, a) = c[pair_index(a, a, mt)];
    for (int b = a + 1; b < m; ++b) {
      cplx val = c[pair_index(a, b, mt)] / rt2;
      amp(a, b) = val;
      amp(b, a) = val;
    }
  }

  const double x0 = -3.0 / s.packet_width;
  const double xc = x0 + s.evolve_time;
  const double dtau = 0.05 / sr;
  const int npts = static_cast<int>(std::floor(s.tau_max / dtau)) + 1;

  auto mode_phase = [&](double x) {
    Eigen::VectorXcd u(m);
    for (int j = 0; j < m; ++j) u[j] = std::exp(I * sec.grid.k[j] * x);
    return u;
  };
  Eigen::VectorXcd u_c = mode_phase(xc);
  Eigen::VectorXcd w = amp * u_c;  // psi2(xc, y) = sum_n w_n u_n(y)
  cplx gpos_c = psi1.head(m).cwiseProduct(u_c).sum();

  SystemSpec an_spec = spec_for_solution(res.sol, s.omega);
  const double tau_span = (npts - 1) * dtau;  // same grid as the measurement
  CorrelationTrace an = g2_trace(an_spec, s.packet_center, s.packet_center,
                                 tau_span, npts);

  std::vector<double> lnb_tau, lnb_val;
  res.tau.resize(npts);
  res.trace.resize(npts);
  res.analytic.resize(npts);
  for (int i = 0; i < npts; ++i) {
    const double tau = i * dtau;
    Eigen::VectorXcd u_t = mode_phase(xc + tau);
    cplx psi2 = w.cwiseProduct(u_t).sum();
    cplx gpos_t = psi1.head(m).cwiseProduct(u_t).sum();
    cplx disc = gpos_c * gpos_t;
    res.tau[i] = tau;
    res.trace[i] = std::norm(psi2) / std::norm(disc);
    res.analytic[i] = an.points[i].g2 / an.baseline;
    if (tau >= 0.5 / sr && tau <= 1.5 / sr) {
      // the pair envelope at the photon midpoint divides out the packet
      // profile, leaving the intrinsic decay with photon separation
      Eigen::VectorXcd u_mid = mode_phase(xc + 0.5 * tau);
      cplx gmid = psi1.head(m).cwiseProduct(u_mid).sum();
      lnb_tau.push_back(tau);
      lnb_val.push_back(std::log(std::norm(psi2 - disc) /
                                 std::norm(gmid * gmid)));
    }
  }

  res.dip = res.trace[0];
  const double p_lo = std::max(4.0 / sr, 0.5 * s.tau_max);
  const double p_hi = 0.9 * s.tau_max;
  double psum = 0.0;
  int pcount = 0;
  for (int i = 0; i < npts; ++i)
    if (res.tau[i] >= p_lo && res.tau[i] <= p_hi) {
      psum += res.trace[i];
      ++pcount;
    }
  if (pcount == 0) refuse("empty plateau band; tau_max too short");
  res.plateau = psum / pcount;

  for (int i = 0; i < npts; ++i) {
    if (res.tau[i] > 2.0 / sr) break;
    res.flat_dev =
        std::max(res.flat_dev, std::abs(res.trace[i] / res.plateau - 1.0));
  }

  // least-squares slope of ln|connected|^2; clean exponential window
  const int nfit = static_cast<int>(lnb_tau.size());
  if (nfit < 4) refuse("decay fit window too short");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < nfit; ++i) {
    sx += lnb_tau[i];
    sy += lnb_val[i];
    sxx += lnb_tau[i] * lnb_tau[i];
    sxy += lnb_tau[i] * lnb_val[i];
  }
  res.decay_rate = -(nfit * sxy - sx * sy) / (nfit * sxx - sx * sx);

  for (int i = 0; i < npts; ++i)
    res.max_shape_dev =
        std::max(res.max_shape_dev, std::abs(res.trace[i] - res.analytic[i]));
  return res;
}

void OracleReport::add(const std::string& name, double value, double tol) {
  bool ok = value <= tol;
  checks.push_back({name, value, tol, ok});
  passed = passed && ok;
}

OracleReport compare_with_analytic(const SingleOracleResult& r,
                                   double rms_tol) {
  OracleReport rep;
  rep.add("rms_t11_vs_closed_form", r.rms11, rms_tol);
  rep.add("rms_t21_vs_closed_form", r.rms21, rms_tol);
  rep.add("flux_residual_band", r.max_flux_residual, 2e-2);
  rep.add("norm_drift", r.norm_drift, 1e-8);
  rep.add("atom_residue", r.atom_residue, 1e-6);
  return rep;
}

OracleReport compare_with_analytic(const TwoOracleResult& r,
                                   TwoOracleExpectation e) {
  OracleReport rep;
  rep.add("norm_drift", r.norm_drift, 1e-8);
  rep.add("atom_residue", r.atom_residue, 1e-6);
  if (e.dip_ratio_tol >= 0)
    rep.add("dip_over_plateau", r.dip / r.plateau, e.dip_ratio_tol);
  if (e.flat_tol >= 0) rep.add("flatness_dev", r.flat_dev, e.flat_tol);
  if (e.decay_rel_tol >= 0) {
    double sr = r.sol.sigma.real();
    rep.add("decay_rate_rel_err",
            std::abs(r.decay_rate - 2.0 * sr) / (2.0 * sr), e.decay_rel_tol);
  }
  return rep;
}

}  // namespace fanoqed
