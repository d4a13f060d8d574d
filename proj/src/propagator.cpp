#include "propagator.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fanoqed::detail {

namespace {

using Eigen::VectorXcd;
using cplx = std::complex<double>;

void spmv(const SpMat& h, const VectorXcd& x, VectorXcd& y) {
  const int n = static_cast<int>(h.rows());
  for (int i = 0; i < n; ++i) {
    cplx acc = 0.0;
    for (SpMat::InnerIterator it(h, i); it; ++it)
      acc += it.value() * x[it.col()];
    y[i] = acc;
  }
}

void gershgorin(const SpMat& h, double& lo, double& hi) {
  lo = std::numeric_limits<double>::max();
  hi = std::numeric_limits<double>::lowest();
  for (int i = 0; i < h.rows(); ++i) {
    double diag = 0.0, radius = 0.0;
    for (SpMat::InnerIterator it(h, i); it; ++it) {
      if (it.col() == i)
        diag = it.value();
      else
        radius += std::abs(it.value());
    }
    lo = std::min(lo, diag - radius);
    hi = std::max(hi, diag + radius);
  }
}

}  // namespace

std::vector<double> bessel_j_row(int n, double z) {
  assert(z > 0 && n >= 0);
  // overshoot past the turning point so the seed error has decayed by the
  // time the recurrence reaches the orders we keep
  int start = n + 80 + static_cast<int>(10.0 * std::cbrt(z + 1.0));
  std::vector<double> j(start + 2, 0.0);
  j[start + 1] = 0.0;
  j[start] = 1e-280;
  for (int m = start; m >= 1; --m) {
    j[m - 1] = (2.0 * m / z) * j[m] - j[m + 1];
    if (std::abs(j[m - 1]) > 1e250)  // rescale; the recurrence is linear
      for (int q = m - 1; q <= start + 1; ++q) j[q] *= 1e-250;
  }
  double norm = j[0];
  for (int m = 2; m <= start; m += 2) norm += 2.0 * j[m];
  j.resize(n + 1);
  for (double& v : j) v /= norm;
  return j;
}

void propagate(const SpMat& h, double t, VectorXcd& psi, double tol,
               double lambda_lo, double lambda_hi) {
  if (h.rows() != h.cols()) throw std::invalid_argument("propagate: h not square");
  if (psi.size() != h.rows())
    throw std::invalid_argument("propagate: state size mismatch");
  if (t < 0) throw std::invalid_argument("propagate: t must be >= 0");
  if (t == 0) return;

  double lo = lambda_lo, hi = lambda_hi;
  if (!(lo < hi)) gershgorin(h, lo, hi);
  const double a = 0.5 * (hi - lo);
  const double b = 0.5 * (hi + lo);
  const cplx phase = std::exp(cplx(0.0, -b * t));
  if (a <= 0.0) {  // h is a multiple of the identity
    psi *= phase;
    return;
  }

  const double z = a * t;
  int order = static_cast<int>(z + 12.0 * std::cbrt(z) + 40.0);
  std::vector<double> jn = bessel_j_row(order, z);
  while (order > 1 && std::abs(2.0 * jn[order]) < tol * 1e-3 &&
         std::abs(2.0 * jn[order - 1]) < tol * 1e-3)
    --order;
  if (std::abs(2.0 * jn[order]) > tol)
    throw std::runtime_error("propagate: Chebyshev series did not converge");

  // T_{m+1} = 2 X T_m - T_{m-1}, X = (h - b)/a
  VectorXcd tm_prev = psi;
  VectorXcd tm(psi.size());
  spmv(h, tm_prev, tm);
  tm = (tm - b * tm_prev) / a;

  const cplx mi(0.0, -1.0);
  cplx coeff = 1.0;  // (-i)^m, updated per order
  VectorXcd acc = jn[0] * tm_prev;
  coeff *= mi;
  acc += 2.0 * jn[1] * coeff * tm;

  VectorXcd work(psi.size());
  for (int m = 2; m <= order; ++m) {
    spmv(h, tm, work);
    work = 2.0 * (work - b * tm) / a - tm_prev;
    tm_prev.swap(tm);
    tm.swap(work);
    coeff *= mi;
    acc += 2.0 * jn[m] * coeff * tm;
  }
  psi = phase * acc;
}

}  // namespace fanoqed::detail
