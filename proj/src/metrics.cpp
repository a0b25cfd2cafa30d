#include "rydsim/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace rydsim {

Eigen::Matrix4cd cz_target(double dphi_rad) {
  if (!(dphi_rad > 0.0 && dphi_rad <= kPi + 1e-12))
    throw std::invalid_argument("controlled phase must be in (0, pi]");
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
  const Complex phase = std::exp(-kI * dphi_rad);
  u(1, 1) = phase;
  u(2, 2) = phase;
  u(3, 3) = phase;
  return u;
}

double gate_fidelity(const Eigen::Matrix4cd& u_actual, const Eigen::Matrix4cd& u_target) {
  const double t = std::abs((u_actual * u_target.adjoint()).trace());
  return t * t / 16.0;
}

double state_fidelity(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& rho_ideal) {
  if (rho.rows() != rho_ideal.rows() || rho.cols() != rho_ideal.cols())
    throw std::invalid_argument("density matrix dimensions do not match");
  const double val = (rho_ideal * rho).trace().real();
  return std::sqrt(std::max(0.0, val));
}

double relative_phase(const Eigen::VectorXcd& psi_final, const Eigen::VectorXcd& psi_initial) {
  if (psi_final.size() != psi_initial.size())
    throw std::invalid_argument("state dimensions do not match");
  const Complex overlap = psi_final.dot(psi_initial);  // <psi_f|psi_0>
  if (std::abs(overlap) < 1e-6)
    throw std::runtime_error("relative phase undefined: overlap below 1e-6");
  return std::arg(overlap);
}

GateResult analyze_gate(const Eigen::MatrixXcd& u_full, const Eigen::Matrix4cd& u_target) {
  GateResult r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      r.u_comp(i, j) = u_full(kComputationalIndices[static_cast<std::size_t>(i)],
                              kComputationalIndices[static_cast<std::size_t>(j)]);

  const double t = std::abs((r.u_comp * u_target.adjoint()).trace());
  r.fidelity = t * t / 16.0;
  r.fidelity_raw_trace = t / 16.0;

  // Acquired phase of basis state j is Arg<psi_f|psi_0> = -Arg(U_jj).
  r.phi_01 = principal_angle(-std::arg(r.u_comp(1, 1)));
  r.phi_10 = principal_angle(-std::arg(r.u_comp(2, 2)));
  r.phi_11 = principal_angle(-std::arg(r.u_comp(3, 3)));
  r.cz_condition_residual_rad = principal_angle(r.phi_11 - r.phi_10 - r.phi_01);

  double min_col = 1.0;
  for (int j = 0; j < 4; ++j) {
    r.populations[static_cast<std::size_t>(j)] = std::norm(r.u_comp(j, j));
    min_col = std::min(min_col, r.u_comp.col(j).squaredNorm());
  }
  r.leakage = std::max(0.0, 1.0 - min_col);
  return r;
}

PhaseDecomposition phase_decomposition(const PhysicalParams& params, const NcgcParams& p, int eta) {
  if (params.delta_2pi_mhz != 0.0)
    throw std::invalid_argument("phase decomposition requires Delta = 0");
  p.validate(params.duration_ns);
  const Subspace& s = subspace(eta);

  PhaseDecomposition d;
  d.eta = eta;
  const double dphi = p.a * kPi;
  const double tau = p.tau_ns;
  // E_+ from direct diagonalization at Delta = 0 is +factor*Omega/2; both
  // segments have the same length tau in the waveform family used here.
  const double e_plus = 0.5 * s.rabi_factor * rad_per_ns(params.omega_2pi_mhz);
  for (int seg = 0; seg < 2; ++seg) {
    const auto k = static_cast<std::size_t>(seg);
    d.delta_plus[k] = 0.5 * dphi;
    d.delta_minus[k] = -0.5 * dphi;
    d.beta_plus[k] = -e_plus * tau;
    d.beta_minus[k] = e_plus * tau;
  }
  // Segment 1 pairs delta_+ with beta_+; after the flip the same path pairs
  // delta_+ with beta_-, so the dynamical parts cancel exactly.
  d.path_plus_total = d.delta_plus[0] + d.beta_plus[0] + d.delta_plus[1] + d.beta_minus[1];
  d.path_minus_total = d.delta_minus[0] + d.beta_minus[0] + d.delta_minus[1] + d.beta_plus[1];
  return d;
}

}  // namespace rydsim
