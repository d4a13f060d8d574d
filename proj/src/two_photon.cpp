#include "fanoqed/two_photon.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fanoqed {

namespace {

constexpr cplx I(0.0, 1.0);

struct ClosedFormInputs {
  SystemSpec spec;
  Eigen::VectorXcd d;
};

ClosedFormInputs prepare(const SystemSpec& spec_in, int max_channel) {
  ClosedFormInputs in{validated(spec_in), {}};
  if (in.spec.channels != 2)
    throw std::invalid_argument("two-photon layer: requires exactly 2 channels");
  if (max_channel > 2)
    throw std::invalid_argument("two-photon layer: channel index out of range");
  in.d = solve_mirror_coupling(in.spec).d;
  return in;
}

// (exp(z m) - 1)/z, series near z = 0
cplx em1(cplx z, double m) {
  cplx zm = z * m;
  if (std::abs(zm) < 1e-4)
    return m * (1.0 + zm * (0.5 + zm * (1.0 / 6.0 + zm / 24.0)));
  return (std::exp(zm) - 1.0) / z;
}

}  // namespace

EffectiveCavity effective_cavity(const SystemSpec& spec_in) {
  SystemSpec spec = validated(spec_in);
  if (spec.two_level())
    throw std::invalid_argument("effective cavity: finite chi required");
  EffectiveCavity ec;
  ec.e0 = 0.0;
  ec.e1 = spec.omega - I * spec.sigma;
  ec.e2 = 2.0 * spec.omega + spec.chi - 2.0 * I * spec.sigma;
  return ec;
}

cplx connected_kernel(const SystemSpec& spec_in, int mu, int nu, int rho,
                      int sg, double p1, double k1, double k2) {
  auto in = prepare(spec_in, std::max({mu, nu, rho, sg}));
  if (std::min({mu, nu, rho, sg}) < 1)
    throw std::invalid_argument("kernel: channel index out of range");
  if (!in.spec.two_level())
    throw std::invalid_argument(
        "kernel: closed form holds in the two-level limit; use "
        "connected_kernel_numeric for finite chi");
  const cplx w = in.spec.omega - I * in.spec.sigma;
  const double E = k1 + k2;
  const double p2 = E - p1;
  cplx d4 = in.d(mu - 1) * in.d(nu - 1) * in.d(rho - 1) * in.d(sg - 1);
  return (I / pi) * d4 * (E - 2.0 * w) /
         ((p1 - w) * (p2 - w) * (k1 - w) * (k2 - w));
}

KernelResult connected_kernel_numeric(const SystemSpec& spec_in, int mu,
                                      int nu, int rho, int sg, double p1,
                                      double k1, double k2,
                                      QuadratureParams q) {
  auto in = prepare(spec_in, std::max({mu, nu, rho, sg}));
  if (std::min({mu, nu, rho, sg}) < 1)
    throw std::invalid_argument("kernel: channel index out of range");
  if (in.spec.two_level())
    throw std::invalid_argument(
        "numeric kernel: finite chi required; the two-level limit has a "
        "closed form");

  EffectiveCavity ec = effective_cavity(in.spec);
  const cplx e1 = ec.e1;
  const double chi = (ec.e2 - 2.0 * ec.e1).real();
  const double re_sigma = in.spec.sigma.real();
  const double t_max = q.t_max > 0 ? q.t_max : 40.0 / re_sigma;
  // the doubly-excited stretch oscillates at rate ~chi, so the default step
  // must resolve both the decay scale and that oscillation
  const double step =
      q.step > 0 ? q.step
                 : std::min(0.01 / re_sigma, 0.3 / (re_sigma + std::abs(chi)));
  int n = static_cast<int>(std::lround(t_max / step));
  n = std::max(4, n + (n % 2));  // composite Simpson needs an even count
  const double h = t_max / n;

  const double E = k1 + k2;
  const double p2 = E - p1;
  const double in_freq[2] = {k1, k2};
  const double out_freq[2] = {p1, p2};

  // The correlator of the cavity ladder is supported on histories that
  // absorb both photons before emitting either; in the two dwell-time
  // variables it factorizes into one-sided exponentials times a window
  // integral over the doubly excited stretch, Q(min(x, y)).
  auto eval = [&](int stride) -> cplx {
    const int nn = n / stride;
    const double hh = h * stride;
    std::vector<double> wgt(nn + 1);
    for (int j = 0; j <= nn; ++j)
      wgt[j] = (j == 0 || j == nn) ? hh / 3.0
                                   : (j % 2 ? 4.0 * hh / 3.0 : 2.0 * hh / 3.0);

    cplx total = 0.0;
    std::vector<cplx> xa(nn + 1), yb(nn + 1), qw(nn + 1), sx(nn + 2),
        sy(nn + 2);
    for (double a : in_freq) {
      for (double b : out_freq) {
        const double om = E - a - b;
        const cplx ia = I * (a - e1);
        const cplx ib = I * (b - e1);
        for (int j = 0; j <= nn; ++j) {
          const double x = j * hh;
          xa[j] = std::exp(ia * x);
          yb[j] = std::exp(ib * x);
          qw[j] = em1(I * (om - chi), x) - em1(I * om, x);
        }
        sx[nn + 1] = sy[nn + 1] = 0.0;
        for (int j = nn; j >= 0; --j) {
          sx[j] = sx[j + 1] + wgt[j] * xa[j];
          sy[j] = sy[j + 1] + wgt[j] * yb[j];
        }
        cplx acc = 0.0;
        for (int j = 0; j <= nn; ++j)
          acc += wgt[j] * qw[j] *
                 (xa[j] * sy[j + 1] + yb[j] * sx[j + 1] +
                  wgt[j] * xa[j] * yb[j]);
        total += acc;
      }
    }
    return total;
  };

  cplx sum_h = eval(1);
  cplx sum_2h = eval(2);

  cplx d4 = in.d(mu - 1) * in.d(nu - 1) * in.d(rho - 1) * in.d(sg - 1);
  KernelResult res;
  res.value = d4 / pi * sum_h;
  // the kink of min(x, y) along the diagonal limits composite Simpson to
  // second order here, so the h -> 2h comparison is divided by 2^2 - 1
  res.err_estimate = std::abs(d4 / pi * (sum_h - sum_2h)) / 3.0;
  res.converged = res.err_estimate <= q.tol;
  return res;
}

cplx bound_state(const SystemSpec& spec_in, int mu, int nu, double k1,
                 double k2, double x1, double x2) {
  auto in = prepare(spec_in, std::max(mu, nu));
  if (std::min(mu, nu) < 1)
    throw std::invalid_argument("bound state: channel index out of range");
  if (!in.spec.two_level())
    throw std::invalid_argument("bound state: two-level limit required");
  const cplx w = in.spec.omega - I * in.spec.sigma;
  const double E = k1 + k2;
  cplx d2m = in.d(mu - 1) * in.d(mu - 1);
  cplx d2n = in.d(nu - 1) * in.d(nu - 1);
  // relative-coordinate pole at E/2 - w; Im > 0, so the pair decays with
  // photon separation
  cplx rel = std::exp(I * (0.5 * E - w) * std::abs(x1 - x2));
  cplx com = std::exp(I * 0.5 * E * (x1 + x2));
  return d2m * d2n / (std::sqrt(2.0) * pi) * com * rel /
         ((k1 - w) * (k2 - w));
}

cplx plane_wave_pair(double k1, double k2, double x1, double x2) {
  return (std::exp(I * (k1 * x1 + k2 * x2)) +
          std::exp(I * (k1 * x2 + k2 * x1))) /
         (std::sqrt(2.0) * 2.0 * pi);
}

cplx outgoing_wavefunction(const SystemSpec& spec_in, int mu, int nu,
                           double k1, double k2, double x1, double x2) {
  cplx t1 = s1_amplitude(spec_in, mu, nu, k1);
  cplx t2 = s1_amplitude(spec_in, mu, nu, k2);
  return t1 * t2 * plane_wave_pair(k1, k2, x1, x2) +
         bound_state(spec_in, mu, nu, k1, k2, x1, x2);
}

CorrelationTrace g2_trace(const SystemSpec& spec_in, double k1, double k2,
                          double tau_max, int points, int mu) {
  if (points < 2) throw std::invalid_argument("g2 trace: points must be >= 2");
  if (!(tau_max > 0))
    throw std::invalid_argument("g2 trace: tau_max must be positive");
  SystemSpec spec = validated(spec_in);
  cplx t1 = s1_amplitude(spec, mu, 1, k1);
  cplx t2 = s1_amplitude(spec, mu, 1, k2);

  CorrelationTrace trace;
  double tt = std::norm(t1 * t2);
  trace.baseline = 2.0 * tt * (k1 == k2 ? 2.0 : 1.0) / (4.0 * pi * pi);
  trace.points.reserve(points);
  double dtau = tau_max / (points - 1);
  for (int i = 0; i < points; ++i) {
    double tau = i * dtau;
    cplx psi = t1 * t2 * plane_wave_pair(k1, k2, tau, 0.0) +
               bound_state(spec, mu, 1, k1, k2, tau, 0.0);
    trace.points.push_back({tau, 2.0 * std::norm(psi), trace.baseline});
  }
  return trace;
}

double g2_zero_closed(const SystemSpec& spec_in, double E) {
  SystemSpec spec = validated(spec_in);
  if (spec.sigma.imag() != 0.0)
    throw std::domain_error("g2 closed form: requires real sigma");
  if (!spec.two_level())
    throw std::domain_error("g2 closed form: two-level limit required");
  double t = spec.t_bg;
  double r = spec.parity * spec.r();  // parity rides along with the reflection
  double s = spec.sigma.real();
  double x = (0.5 * E - spec.omega) / s;
  cplx a = cplx(t * x + r, 0.0) * (t * x + r) + (t + I * r) * (t + I * r);
  double den = (x * x + 1.0) * (x * x + 1.0);
  return std::norm(a) / (2.0 * pi * pi * den);
}

double fluorescence_weight(const SystemSpec& spec, double E) {
  return std::norm(bound_state(spec, 1, 1, 0.5 * E, 0.5 * E, 0.0, 0.0));
}

}  // namespace fanoqed
