#include "fanoqed/coupling.hpp"

#include <algorithm>
#include <stdexcept>

namespace fanoqed {

double ConstraintReport::max_residual() const {
  double m = 0.0;
  for (const auto& [name, r] : residuals) m = std::max(m, r);
  return m;
}

DirectScattering build_two_port_background(double t, int r_sign, double phi) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("background: t must lie in [0, 1]");
  if (r_sign != 1 && r_sign != -1)
    throw std::invalid_argument("background: r_sign must be +1 or -1");
  double r = r_sign * std::sqrt(std::max(0.0, 1.0 - t * t));
  cplx ph = std::exp(cplx(0.0, phi));
  Eigen::MatrixXcd c(2, 2);
  c << ph * t, ph * cplx(0.0, r), ph * cplx(0.0, r), ph * t;
  return {c};
}

CouplingSet solve_mirror_coupling(const SystemSpec& spec_in) {
  SystemSpec spec = validated(spec_in);
  if (spec.channels != 2)
    throw std::invalid_argument("mirror coupling: requires exactly 2 channels");
  double t = spec.t_bg;
  double p = spec.parity;
  double r = spec.r();
  // w = i(1+t) - pr satisfies w^2 = -2(1+t)(t+ipr) and |w|^2 = 2(1+t), which
  // is what makes C d* = -d and |d|^2 = 2 Re(sigma) hold simultaneously for
  // d = d1 (1, p). The odd combination feels the reflection with the
  // opposite sign, so the parity enters the quadratic, not just the vector.
  cplx w(-p * r, 1.0 + t);
  cplx d1 = std::exp(cplx(0.0, spec.phi / 2.0)) * std::sqrt(spec.sigma.real()) *
            w / std::sqrt(2.0 * (1.0 + t));
  Eigen::VectorXcd d(2);
  d << d1, double(spec.parity) * d1;
  return {d, d};
}

ConstraintReport validate_constraints(const DirectScattering& bg,
                                      const CouplingSet& coup, cplx sigma,
                                      double tol) {
  const Eigen::MatrixXcd& c = bg.c;
  const auto n = c.rows();
  if (c.cols() != n) throw std::invalid_argument("validate: C must be square");
  if (coup.d.size() != n || coup.kappa.size() != n)
    throw std::invalid_argument("validate: coupling size mismatch with C");

  ConstraintReport rep;
  rep.tolerance = tol;
  auto maxabs = [](const Eigen::MatrixXcd& m) {
    return m.cwiseAbs().maxCoeff();
  };

  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  rep.residuals["unitarity"] = maxabs(c * c.adjoint() - id);
  rep.residuals["symmetry"] = maxabs(c - c.transpose());
  rep.residuals["cd_star"] = maxabs(c * coup.d.conjugate() + coup.d);
  rep.residuals["kappa_eq_d"] = maxabs(coup.kappa - coup.d);
  rep.residuals["flux"] =
      std::abs(coup.d.squaredNorm() - 2.0 * sigma.real());
  cplx kc = (coup.kappa.transpose() * c.adjoint() * coup.d)(0, 0);
  cplx dk = (coup.d.adjoint() * c * coup.kappa.conjugate())(0, 0);
  rep.residuals["causality"] = std::abs(2.0 * sigma.real() + 0.5 * (kc + dk));

  rep.passed = rep.max_residual() <= tol;
  return rep;
}

MicroscopicSolution from_microscopic(const MicroscopicParams& m) {
  const auto n = m.xi.size();
  if (n < 1) throw std::invalid_argument("microscopic: xi must be non-empty");
  if (m.v.rows() != n || m.v.cols() != n)
    throw std::invalid_argument("microscopic: v must be n x n");
  if ((m.v - m.v.transpose()).cwiseAbs().maxCoeff() > 0)
    throw std::invalid_argument("microscopic: v must be symmetric");
  if (m.v.diagonal().cwiseAbs().maxCoeff() > 0)
    throw std::invalid_argument("microscopic: v must have zero diagonal");

  Eigen::MatrixXcd a =
      Eigen::MatrixXcd::Identity(n, n) + cplx(0.0, 0.5) * m.v.cast<cplx>();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  Eigen::MatrixXcd am =
      Eigen::MatrixXcd::Identity(n, n) - cplx(0.0, 0.5) * m.v.cast<cplx>();

  MicroscopicSolution sol;
  sol.bg.c = lu.solve(am);  // a^{-1} am = am a^{-1}, both polynomials in v
  Eigen::VectorXcd ainv_xi = lu.solve(m.xi.cast<cplx>());
  sol.coup.d = cplx(0.0, -1.0) * ainv_xi;
  sol.coup.kappa = sol.coup.d;  // v symmetric
  sol.sigma = 0.5 * (m.xi.cast<cplx>().transpose() * ainv_xi)(0, 0);
  return sol;
}

double direct_coupling_for_background(double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("background: t must lie in [0, 1]");
  return 2.0 * std::sqrt((1.0 - t) / (1.0 + t));
}

}  // namespace fanoqed
