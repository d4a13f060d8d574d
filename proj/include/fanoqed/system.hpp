#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string>

namespace fanoqed {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double chi_infinite = std::numeric_limits<double>::infinity();

// One resonator coupled to N waveguide channels, with a direct background
// pathway that interferes with the resonant one. The background is
// parametrized by (t_bg, r_sign, phi), the resonator by (omega, sigma, chi).
// Frequencies are in whatever unit omega is given in; nothing assumes omega=1.
struct SystemSpec {
  int channels = 2;           // closed-form layer requires 2
  double omega = 1.0;
  cplx sigma{0.2, 0.0};       // radiative width, Re(sigma) > 0
  double chi = chi_infinite;  // anharmonicity; infinity = hard two-level limit
  double t_bg = 0.0;          // background transmission, in [0, 1]
  int r_sign = +1;            // branch of r = r_sign*sqrt(1 - t_bg^2)
  double phi = 0.0;           // background phase, wrapped to [-pi, pi)
  int parity = +1;            // relative sign of the two coupling amplitudes

  bool two_level() const { return std::isinf(chi); }
  double r() const { return r_sign * std::sqrt(std::max(0.0, 1.0 - t_bg * t_bg)); }
};

// Checks field domains and wraps phi into [-pi, pi).
// Throws std::invalid_argument on any violation.
SystemSpec validated(SystemSpec s);

// Reads a "key = value" file. '#' starts a comment, blank lines are skipped.
// Keys: channels, omega, sigma_re, sigma_im, chi (number or "inf"), t,
// r_sign, phi, parity. Unknown keys and malformed lines throw.
SystemSpec load_config(const std::string& path);

}  // namespace fanoqed
