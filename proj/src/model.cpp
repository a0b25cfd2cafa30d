#include "rydsim/model.hpp"

#include <cmath>
#include <stdexcept>

namespace rydsim {

void PhysicalParams::validate() const {
  if (!(omega_2pi_mhz > 0.0) || !std::isfinite(omega_2pi_mhz))
    throw std::invalid_argument("omega must be positive and finite");
  if (!(v_2pi_mhz >= 0.0) || !std::isfinite(v_2pi_mhz))
    throw std::invalid_argument("blockade strength V must be >= 0 and finite");
  if (!(duration_ns > 0.0) || !std::isfinite(duration_ns))
    throw std::invalid_argument("duration T must be positive and finite");
  if (!std::isfinite(delta_2pi_mhz))
    throw std::invalid_argument("delta must be finite");
}

Eigen::MatrixXcd hamiltonian(const PhysicalParams& params, const Controls& controls, Mode mode) {
  if (!std::isfinite(controls.omega_2pi_mhz) || !std::isfinite(controls.delta_2pi_mhz) ||
      !std::isfinite(controls.phi_rad))
    throw std::invalid_argument("non-finite control values");

  const int dim = basis_dim(mode);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);

  const double omega = rad_per_ns(controls.omega_2pi_mhz);
  const double delta = rad_per_ns(controls.delta_2pi_mhz);
  const Complex up = 0.5 * omega * std::exp(kI * controls.phi_rad);

  for (const Subspace& s : kSubspaces) {
    h(s.upper, s.lower) = s.rabi_factor * up;
    h(s.lower, s.upper) = std::conj(s.rabi_factor * up);
    h(s.upper, s.upper) = delta;
  }

  if (mode != Mode::Reduced) {
    const double v = rad_per_ns(params.v_2pi_mhz);
    const Subspace& s3 = subspace(3);
    h(kIdxRR, kIdxR) = s3.rabi_factor * up;
    h(kIdxR, kIdxRR) = std::conj(s3.rabi_factor * up);
    h(kIdxRR, kIdxRR) = v + 2.0 * delta;
  }

  return h;
}

DressedFrame dressed_frame(const PhysicalParams& params, const Controls& controls, int eta) {
  const Subspace& s = subspace(eta);
  const double omega_eff = s.rabi_factor * rad_per_ns(controls.omega_2pi_mhz);
  const double delta = rad_per_ns(controls.delta_2pi_mhz);
  if (omega_eff == 0.0 && delta == 0.0)
    throw std::invalid_argument("dressed frame undefined for zero field");

  DressedFrame f;
  f.theta_rad = std::atan2(omega_eff, delta);

  const Complex phase = std::exp(kI * controls.phi_rad);
  const double sn = std::sin(0.5 * f.theta_rad);
  const double cs = std::cos(0.5 * f.theta_rad);
  f.lambda_plus << sn * phase, cs;
  f.lambda_minus << cs, -sn * std::conj(phase);

  const double radius = std::hypot(omega_eff, delta);
  f.energy_plus_2pi_mhz = to_2pi_mhz(0.5 * (delta + radius));
  f.energy_minus_2pi_mhz = to_2pi_mhz(0.5 * (delta - radius));
  (void)params;
  return f;
}

Eigen::Matrix2cd counterdiabatic_term(double phi_dot_rad_per_ns, int eta, double phi_rad) {
  subspace(eta);  // range check
  if (!std::isfinite(phi_dot_rad_per_ns) || !std::isfinite(phi_rad))
    throw std::invalid_argument("non-finite counter-diabatic input");
  Eigen::Matrix2cd cd = Eigen::Matrix2cd::Zero();
  cd(0, 0) = -0.5 * phi_dot_rad_per_ns;
  cd(1, 1) = 0.5 * phi_dot_rad_per_ns;
  return cd;
}

}  // namespace rydsim
