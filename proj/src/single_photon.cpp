#include "fanoqed/single_photon.hpp"

#include <stdexcept>

namespace fanoqed {

namespace {

void check_channel(const Eigen::MatrixXcd& c, int mu, int nu) {
  if (mu < 1 || nu < 1 || mu > c.rows() || nu > c.rows())
    throw std::invalid_argument("amplitude: channel index out of range");
}

}  // namespace

cplx s1_amplitude(const DirectScattering& bg, const CouplingSet& coup,
                  double omega, cplx sigma, int mu, int nu, double k) {
  check_channel(bg.c, mu, nu);
  cplx den = k - omega + cplx(0.0, 1.0) * sigma;
  return bg.c(mu - 1, nu - 1) +
         cplx(0.0, 1.0) * coup.d(mu - 1) * coup.kappa(nu - 1) / den;
}

cplx s1_amplitude(const SystemSpec& spec_in, int mu, int nu, double k) {
  SystemSpec spec = validated(spec_in);
  DirectScattering bg = build_two_port_background(spec.t_bg, spec.r_sign, spec.phi);
  CouplingSet coup = solve_mirror_coupling(spec);
  return s1_amplitude(bg, coup, spec.omega, spec.sigma, mu, nu, k);
}

AmplitudeTable transmission_spectrum(const SystemSpec& spec_in, double k_min,
                                     double k_max, int points) {
  if (points < 2) throw std::invalid_argument("spectrum: points must be >= 2");
  if (!(k_max > k_min))
    throw std::invalid_argument("spectrum: k_max must exceed k_min");
  SystemSpec spec = validated(spec_in);
  DirectScattering bg = build_two_port_background(spec.t_bg, spec.r_sign, spec.phi);
  CouplingSet coup = solve_mirror_coupling(spec);

  AmplitudeTable table;
  table.flux_conserving = spec.sigma.imag() == 0.0;
  table.rows.reserve(points);
  double dk = (k_max - k_min) / (points - 1);
  for (int i = 0; i < points; ++i) {
    AmplitudeRow row;
    row.k = k_min + i * dk;
    row.t11 = s1_amplitude(bg, coup, spec.omega, spec.sigma, 1, 1, row.k);
    row.t21 = s1_amplitude(bg, coup, spec.omega, spec.sigma, 2, 1, row.k);
    row.p11 = std::norm(row.t11);
    row.p21 = std::norm(row.t21);
    row.unitarity_residual = std::abs(row.p11 + row.p21 - 1.0);
    table.max_unitarity_residual =
        std::max(table.max_unitarity_residual, row.unitarity_residual);
    table.rows.push_back(row);
  }
  return table;
}

FanoFeatures fano_features(const SystemSpec& spec_in) {
  SystemSpec spec = validated(spec_in);
  if (spec.sigma.imag() != 0.0)
    throw std::domain_error(
        "fano features: defined for flux-conserving (real) sigma only");
  double t = spec.t_bg;
  // Channel-1 observables feel the reflection with the parity sign attached:
  // t11 = e^{i phi} (t (k - Omega) + p r Sigma) / (k - Omega + i Sigma).
  double r = spec.parity * spec.r();
  double s = spec.sigma.real();
  FanoFeatures f;
  if (t > 0.0) f.k_zero = spec.omega - r * s / t;
  if (r != 0.0) f.k_peak = spec.omega + t * s / r;
  return f;
}

double unitarity_residual(const SystemSpec& spec, double k_min, double k_max,
                          int points) {
  return transmission_spectrum(spec, k_min, k_max, points)
      .max_unitarity_residual;
}

}  // namespace fanoqed
