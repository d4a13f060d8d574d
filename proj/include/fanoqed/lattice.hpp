#pragma once

#include <Eigen/Sparse>
#include <cstddef>
#include <string>
#include <vector>

#include "fanoqed/coupling.hpp"

namespace fanoqed {

// Discretized two-channel waveguide: M modes per channel on a uniform grid
// of half-width `window` around omega, plus the resonator. Zero fields pick
// engine defaults. The mode spacing dk implies a finite position span
// L = 2 pi / dk; geometry checks below keep wrapped components away from
// every measured region.
struct LatticeSpec {
  MicroscopicParams micro;
  double omega = 1.0;
  int modes_per_channel = 400;
  double window = 0.0;        // half-width W; default 20 Re(sigma) (single),
                              // 8 Re(sigma) (pair runs)
  double packet_center = 0.0; // k0; default omega + Im(sigma_eff)
  double packet_width = 0.0;  // sigma_k, std of |f|^2 in k; default Re(sigma)/5
  double evolve_time = 0.0;   // T; default 8 / sigma_k
  double dt = 0.0;            // propagator chunk; 0 = single shot
  double tau_max = 0.0;       // pair runs: correlation span; default
                              // min(10/Re(sigma), geometric bound)
  std::size_t memory_cap = std::size_t(6) << 30;  // bytes, refuse above
};

using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct LatticeGrid {
  Eigen::VectorXd k;  // per-channel mode frequencies
  double dk;
  int m;
};

// One-photon sector: channel-1 modes, channel-2 modes, resonator (last).
struct SingleSector {
  SpMat h;  // real symmetric
  LatticeGrid grid;
};

SingleSector build_single_sector(const LatticeSpec& spec);

// Two-photon sector in the two-level limit: symmetrized photon pairs over
// both channels (upper-triangle packing), then resonator x photon states.
struct TwoSector {
  SpMat h;
  LatticeGrid grid;
  int pair_count;  // mt(mt+1)/2, mt = 2m
};

TwoSector build_two_sector(const LatticeSpec& spec);

// Packing of the unordered pair (a, b), a <= b, a,b in [0, mt).
inline int pair_index(int a, int b, int mt) {
  return a * mt - a * (a + 1) / 2 + b;
}

struct SingleOracleResult {
  LatticeSpec spec;        // with defaults resolved
  MicroscopicSolution sol; // reference scattering data
  std::vector<double> k;   // measurement band |k - k0| <= 2 sigma_k
  std::vector<cplx> t11, t21;          // lattice measurement
  std::vector<cplx> t11_ref, t21_ref;  // closed form at the same k
  double rms11 = 0, rms21 = 0;
  double max_flux_residual = 0;  // max | |t11|^2 + |t21|^2 - 1 | over band
  double norm_drift = 0;         // | ||psi(T)|| - 1 |
  double atom_residue = 0;       // resonator population left at T
  double k_at_max = 0, k_at_min = 0;  // refined extrema of |t11|^2 in band
};

// Scatters a Gaussian packet incident in channel 1 off the lattice
// Hamiltonian and reads transmission amplitudes per mode against the free
// phase e^{-i k T}. Deterministic: fixed summation order throughout.
SingleOracleResult oracle_single_transmission(LatticeSpec spec);

struct TwoOracleResult {
  LatticeSpec spec;
  MicroscopicSolution sol;
  std::vector<double> tau;
  std::vector<double> trace;     // |psi2(xc, xc+tau)|^2 / |psi_disc|^2
  std::vector<double> analytic;  // closed-form counterpart, baseline = 1
  double dip = 0;        // trace at tau = 0
  double plateau = 0;    // mean over the late-tau band
  double flat_dev = 0;   // max |trace/plateau - 1| for tau <= 2/Re(sigma)
  double decay_rate = 0; // slope of -ln|psi2 - psi_disc|^2, expect 2 Re(sigma)
  double max_shape_dev = 0;  // max |trace - analytic|
  double norm_drift = 0, atom_residue = 0;
};

// Evolves a product pair incident in channel 1 and compares the transmitted
// pair amplitude against the product of two independent single-photon runs;
// the ratio isolates the connected part without any envelope model.
TwoOracleResult oracle_two_photon_g2(LatticeSpec spec);

struct OracleCheck {
  std::string name;
  double value;
  double tolerance;
  bool passed;
};

struct OracleReport {
  std::vector<OracleCheck> checks;
  bool passed = true;

  void add(const std::string& name, double value, double tol);
};

OracleReport compare_with_analytic(const SingleOracleResult& r,
                                   double rms_tol = 2e-2);

// Expectations for a pair run; NaN skips a check.
struct TwoOracleExpectation {
  double dip_ratio_tol = -1;   // require dip/plateau <= tol, <0 skips
  double flat_tol = -1;        // require flat_dev <= tol, <0 skips
  double decay_rel_tol = 0.1;  // |decay_rate - 2 Re(sigma)| / (2 Re(sigma))
};

OracleReport compare_with_analytic(const TwoOracleResult& r,
                                   TwoOracleExpectation e = {});

}  // namespace fanoqed
