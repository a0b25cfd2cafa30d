#pragma once

#include <Eigen/Dense>

#include "rydsim/basis.hpp"
#include "rydsim/units.hpp"

namespace rydsim {

// Static system constants. Frequencies in 2pi x MHz, duration in ns.
struct PhysicalParams {
  double omega_2pi_mhz = 4.0;
  double delta_2pi_mhz = 0.0;
  double v_2pi_mhz = 500.0;
  double duration_ns = 500.0;

  double blockade_ratio() const { return v_2pi_mhz / omega_2pi_mhz; }
  // Soft blockade: |rr> is no longer well separated and the reduced model
  // becomes questionable.
  bool soft_blockade() const { return blockade_ratio() < 10.0; }
  void validate() const;
};

// Instantaneous control field values.
struct Controls {
  double omega_2pi_mhz = 0.0;
  double delta_2pi_mhz = 0.0;
  double phi_rad = 0.0;
};

// Assembles the two-atom Hamiltonian over the basis of `mode`, in rad/ns.
//
// The couplings carry exp(i phi) on the raising part, e.g.
// <r0|H|10> = (Omega/2) e^{i phi}, so that the dressed states below are the
// exact instantaneous eigenvectors and the two-segment evolution composes to
// diag(1, e^{-i dphi}, e^{-i dphi}, e^{-i dphi}) on the computational
// subspace. |00> is decoupled (zero row/column) and |W> carries no
// Hamiltonian matrix elements.
Eigen::MatrixXcd hamiltonian(const PhysicalParams& params, const Controls& controls, Mode mode);

// Instantaneous eigenpair of one driven two-level subsystem, expressed over
// the bare pair (mu_+, mu_-) = (upper, lower). Mixing angle
// theta = atan2(factor * Omega, Delta), so theta = pi/2 at Delta = 0.
struct DressedFrame {
  Eigen::Vector2cd lambda_plus;   // components on (mu_+, mu_-)
  Eigen::Vector2cd lambda_minus;
  double energy_plus_2pi_mhz = 0.0;   // larger eigenvalue of the 2x2 block
  double energy_minus_2pi_mhz = 0.0;
  double theta_rad = 0.0;
};

DressedFrame dressed_frame(const PhysicalParams& params, const Controls& controls, int eta);

// Exact counter-diabatic term for pure phase motion at theta = pi/2,
// diagonal in the bare (mu_+, mu_-) basis: diag(-phi_dot/2, +phi_dot/2).
// The sign was fixed against the adiabatic-tracking check (propagating with
// H + CD keeps the state on the instantaneous eigenvector) and is the same
// for eta = 1, 2, 3; it does not depend on phi. Entries in rad/ns.
Eigen::Matrix2cd counterdiabatic_term(double phi_dot_rad_per_ns, int eta, double phi_rad);

}  // namespace rydsim
