#include "fanoqed/system.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fanoqed {

namespace {

double wrap_phase(double phi) {
  double w = std::fmod(phi + pi, 2.0 * pi);
  if (w < 0) w += 2.0 * pi;
  return w - pi;
}

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("system spec: " + what);
}

}  // namespace

SystemSpec validated(SystemSpec s) {
  if (s.channels < 1) bad("channels must be positive");
  if (!(s.omega > 0) || !std::isfinite(s.omega)) bad("omega must be positive and finite");
  if (!(s.sigma.real() > 0) || !std::isfinite(s.sigma.real()) ||
      !std::isfinite(s.sigma.imag()))
    bad("sigma must have positive finite real part");
  if (std::isnan(s.chi) || (!std::isinf(s.chi) && !std::isfinite(s.chi)))
    bad("chi must be finite or infinity");
  if (std::isinf(s.chi) && s.chi < 0) bad("chi must be finite or +infinity");
  if (!(s.t_bg >= 0.0 && s.t_bg <= 1.0)) bad("t must lie in [0, 1]");
  if (s.r_sign != 1 && s.r_sign != -1) bad("r_sign must be +1 or -1");
  if (!std::isfinite(s.phi)) bad("phi must be finite");
  if (s.parity != 1 && s.parity != -1) bad("parity must be +1 or -1");
  s.phi = wrap_phase(s.phi);
  return s;
}

SystemSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);

  SystemSpec s;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string key, eq, value;
    std::istringstream ls(line);
    if (!(ls >> key)) continue;  // blank
    if (!(ls >> eq >> value) || eq != "=")
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
    std::string extra;
    if (ls >> extra)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": trailing content after value");

    auto num = [&]() {
      try {
        size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return v;
      } catch (const std::exception&) {
        throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                    ": bad numeric value '" + value + "'");
      }
    };

    if (key == "channels")
      s.channels = static_cast<int>(num());
    else if (key == "omega")
      s.omega = num();
    else if (key == "sigma_re")
      s.sigma = cplx(num(), s.sigma.imag());
    else if (key == "sigma_im")
      s.sigma = cplx(s.sigma.real(), num());
    else if (key == "chi")
      s.chi = (value == "inf") ? chi_infinite : num();
    else if (key == "t")
      s.t_bg = num();
    else if (key == "r_sign")
      s.r_sign = static_cast<int>(num());
    else if (key == "phi")
      s.phi = num();
    else if (key == "parity")
      s.parity = static_cast<int>(num());
    else
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
  }
  return validated(s);
}

}  // namespace fanoqed
