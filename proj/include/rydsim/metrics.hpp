#pragma once

#include <Eigen/Dense>
#include <array>

#include "rydsim/model.hpp"
#include "rydsim/pulses.hpp"

namespace rydsim {

// Ideal controlled-phase target diag(1, e^{-i dphi}, e^{-i dphi}, e^{-i dphi})
// over {00, 01, 10, 11}; dphi = pi is the C_Z gate up to the sign convention
// of the acquired phase.
Eigen::Matrix4cd cz_target(double dphi_rad);

// |tr(U_a U_t^+)|^2 / 16. The squared form makes a perfect gate score 1
// (the unsquared trace formula tops out at 1/4); the raw |tr|/16 value is
// reported alongside in GateResult.
double gate_fidelity(const Eigen::Matrix4cd& u_actual, const Eigen::Matrix4cd& u_target);

// sqrt(tr(rho_ideal rho)); the exact Uhlmann fidelity when rho_ideal is pure.
double state_fidelity(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& rho_ideal);

// Arg<psi_final|psi_initial> in (-pi, pi]. Throws when the overlap magnitude
// is below 1e-6 and the phase is meaningless.
double relative_phase(const Eigen::VectorXcd& psi_final, const Eigen::VectorXcd& psi_initial);

// Final propagator restricted to the computational subspace plus the derived
// gate quality numbers. u_comp columns are evolved basis states projected
// back onto {00, 01, 10, 11} with no re-unitarization, so leakage stays
// visible in the fidelity.
struct GateResult {
  Eigen::Matrix4cd u_comp;
  double fidelity = 0.0;
  double fidelity_raw_trace = 0.0;  // |tr| / 16 as printed in the definition
  double phi_01 = 0.0;
  double phi_10 = 0.0;
  double phi_11 = 0.0;
  std::array<double, 4> populations{};  // return populations of 00, 01, 10, 11
  double leakage = 0.0;                 // 1 - min column norm^2
  // phi_11 - phi_10 - phi_01 wrapped into (-pi, pi]; +-pi for a C_Z gate.
  double cz_condition_residual_rad = 0.0;
};

// Extracts u_comp and phases from a full-basis propagator and scores it
// against the target.
GateResult analyze_gate(const Eigen::MatrixXcd& u_full, const Eigen::Matrix4cd& u_target);

// The two-segment bookkeeping of the geometric construction: per segment
// geometric phases delta_+- = +-(a pi)/2 and dynamical phases
// beta_-+ = -+ integral of E_+ dt with E_+ from direct diagonalization. The
// flip swaps which dynamical phase each path accumulates, so per-path totals
// over both segments are +-a pi with the dynamical parts cancelled.
struct PhaseDecomposition {
  int eta = 0;
  std::array<double, 2> delta_plus{};   // per segment, rad
  std::array<double, 2> delta_minus{};
  std::array<double, 2> beta_plus{};
  std::array<double, 2> beta_minus{};
  double path_plus_total = 0.0;   // = +a pi
  double path_minus_total = 0.0;  // = -a pi
};

PhaseDecomposition phase_decomposition(const PhysicalParams& params, const NcgcParams& p, int eta);

}  // namespace rydsim
