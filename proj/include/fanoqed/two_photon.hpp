#pragma once

#include <vector>

#include "fanoqed/single_photon.hpp"

namespace fanoqed {

// Complex-energy ladder of the resonator once the channels are traced out:
// ground, single, and double occupation. Defined for finite chi only.
struct EffectiveCavity {
  cplx e0;  // 0
  cplx e1;  // omega - i sigma
  cplx e2;  // 2 omega + chi - 2 i sigma
};

EffectiveCavity effective_cavity(const SystemSpec& spec);

// Connected (energy-entangled) part of the two-photon scattering kernel in
// the two-level limit, with the overall energy delta factored out:
//   K = (i/pi) d_mu d_nu d_rho d_sg (E - 2 omega + 2 i sigma)
//       / [(p1 - w)(p2 - w)(k1 - w)(k2 - w)],  w = omega - i sigma,
// where E = k1 + k2 and p2 = E - p1. Requires chi = infinity.
cplx connected_kernel(const SystemSpec& spec, int mu, int nu, int rho, int sg,
                      double p1, double k1, double k2);

struct QuadratureParams {
  double t_max = 0.0;  // dwell-time span; 0 selects 40 / Re(sigma)
  double step = 0.0;   // Simpson step; 0 selects 0.01 / Re(sigma)
  double tol = 1e-6;   // absolute error target for the converged flag
};

struct KernelResult {
  cplx value;
  double err_estimate;  // Richardson estimate from step doubling
  bool converged;
};

// Same kernel from the time-ordered four-point function of the effective
// cavity at finite chi, integrated over the two photon dwell times with
// composite Simpson. chi = 0 gives exactly zero (linear cavity).
KernelResult connected_kernel_numeric(const SystemSpec& spec, int mu, int nu,
                                      int rho, int sg, double p1, double k1,
                                      double k2, QuadratureParams q = {});

// Spatially decaying two-photon bound piece of the outgoing wavefunction:
//   H_{mu nu}(x1,x2) = d_mu^2 d_nu^2 / (sqrt(2) pi) * e^{iE(x1+x2)/2}
//     * e^{i(E/2 - omega + i sigma)|x1-x2|} / [(k1 - w)(k2 - w)].
// Two-level limit only.
cplx bound_state(const SystemSpec& spec, int mu, int nu, double k1, double k2,
                 double x1, double x2);

// Symmetrized free pair, normalized as (e^{i(k1 x1 + k2 x2)} + (x1<->x2)) / (sqrt(2) 2 pi).
cplx plane_wave_pair(double k1, double k2, double x1, double x2);

// Outgoing two-photon wavefunction with both photons in channel mu, both
// incident in channel nu: t_{mu nu}(k1) t_{mu nu}(k2) P + H_{mu nu}.
cplx outgoing_wavefunction(const SystemSpec& spec, int mu, int nu, double k1,
                           double k2, double x1, double x2);

struct CorrelationPoint {
  double tau;
  double g2;        // second-order correlation at separation tau
  double baseline;  // large-separation asymptote
};

struct CorrelationTrace {
  std::vector<CorrelationPoint> points;
  double baseline;
};

// G2(tau) = 2 |t_{mu 1}(k1) t_{mu 1}(k2) P(tau, 0) + H_{mu 1}(tau, 0)|^2 for a
// plane-wave pair incident in channel 1. Uniform tau grid on [0, tau_max].
CorrelationTrace g2_trace(const SystemSpec& spec, double k1, double k2,
                          double tau_max, int points, int mu = 1);

// (1/2) G2(0) for a degenerate pair k1 = k2 = E/2, flux-conserving case:
//   [ (t x + r)^2 + (t + i r)^2 ]^2-modulus / (2 pi^2 (x^2+1)^2 ),
// x = (E/2 - omega)/sigma. Transmitted channel, mu = 1.
double g2_zero_closed(const SystemSpec& spec, double E);

// |H_11(0,0)|^2 for k1 = k2 = E/2. Independent of the background t.
double fluorescence_weight(const SystemSpec& spec, double E);

}  // namespace fanoqed
