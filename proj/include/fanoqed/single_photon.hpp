#pragma once

#include <optional>
#include <vector>

#include "fanoqed/coupling.hpp"

namespace fanoqed {

// One-photon scattering amplitude
//   t_{mu nu}(k) = C_{mu nu} + i d_mu d_nu / (k - omega + i sigma).
// Channel indices are 1-based.
cplx s1_amplitude(const DirectScattering& bg, const CouplingSet& coup,
                  double omega, cplx sigma, int mu, int nu, double k);
cplx s1_amplitude(const SystemSpec& spec, int mu, int nu, double k);

struct AmplitudeRow {
  double k;
  cplx t11, t21;
  double p11, p21;            // outgoing probabilities for channel-1 input
  double unitarity_residual;  // |p11 + p21 - 1|
};

struct AmplitudeTable {
  std::vector<AmplitudeRow> rows;
  bool flux_conserving = true;  // Im(sigma) == 0
  double max_unitarity_residual = 0.0;
};

// Uniform k grid, endpoints included. points >= 2.
AmplitudeTable transmission_spectrum(const SystemSpec& spec, double k_min,
                                     double k_max, int points);

// Interference features of |t11|^2, flux-conserving (real sigma) case:
// an exact transmission zero at omega - r*sigma/t (absent at t = 0) and a
// unit-transmission peak at omega + t*sigma/r (absent at r = 0).
struct FanoFeatures {
  std::optional<double> k_zero;
  std::optional<double> k_peak;
};

FanoFeatures fano_features(const SystemSpec& spec);

// max over the grid of | sum_mu |t_{mu 1}|^2 - 1 |.
double unitarity_residual(const SystemSpec& spec, double k_min, double k_max,
                          int points);

}  // namespace fanoqed
