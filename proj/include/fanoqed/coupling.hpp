#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>

#include "fanoqed/system.hpp"

namespace fanoqed {

// Direct (background) scattering matrix. Unitary and symmetric by
// construction; validate_constraints re-checks both from scratch.
struct DirectScattering {
  Eigen::MatrixXcd c;
};

// Resonator-channel coupling vectors. For a symmetric background the
// time-reversed vector kappa coincides with d.
struct CouplingSet {
  Eigen::VectorXcd d;
  Eigen::VectorXcd kappa;
};

// Couplings of the underlying frequency-local waveguide model:
// xi = resonator-channel amplitudes, v = direct channel-channel hopping.
// v must be symmetric with zero diagonal.
struct MicroscopicParams {
  Eigen::VectorXd xi;
  Eigen::MatrixXd v;
};

struct ConstraintReport {
  // keyed residuals, all max-abs: unitarity |CC^dag - I|, symmetry |C - C^T|,
  // cd_star |C d* + d|, flux |d^dag d - (sigma + sigma*)|, kappa_eq_d,
  // causality |sigma + sigma* + (k^T C^dag d + d^dag C k*)/2|
  std::map<std::string, double> residuals;
  double tolerance = 1e-12;
  bool passed = false;

  double max_residual() const;
};

// Two-port background e^{i phi} [[t, i r], [i r, t]], r = r_sign*sqrt(1-t^2).
DirectScattering build_two_port_background(double t, int r_sign, double phi);

// Mirror-symmetric coupling solving the constraint algebra for the two-port
// background: d = e^{i phi/2} sqrt(Re sigma) (i(1+t) - r)/sqrt(2(1+t)) [1; parity].
// The modulus uses Re(sigma) so that |d|^2 = sigma + sigma* holds for
// complex sigma as well. kappa = d.
CouplingSet solve_mirror_coupling(const SystemSpec& spec);

ConstraintReport validate_constraints(const DirectScattering& bg,
                                      const CouplingSet& coup, cplx sigma,
                                      double tol = 1e-12);

struct MicroscopicSolution {
  DirectScattering bg;
  CouplingSet coup;
  cplx sigma;
};

// Cayley map from the waveguide-level couplings to the scattering data:
//   C = (I - iV/2)(I + iV/2)^{-1},  d = -i (I + iV/2)^{-1} xi,
//   kappa = -i (I + iV^T/2)^{-1} xi,  sigma = xi^T (I + iV/2)^{-1} xi / 2.
// sigma acquires an imaginary part (a resonance shift) whenever v != 0.
MicroscopicSolution from_microscopic(const MicroscopicParams& m);

// Two-port hopping amplitude realizing background transmission t on the
// r < 0 branch: v = 2 sqrt((1-t)/(1+t)).
double direct_coupling_for_background(double t);

}  // namespace fanoqed
