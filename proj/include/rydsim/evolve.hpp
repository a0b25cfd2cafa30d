#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rydsim/pulses.hpp"

namespace rydsim {

// Fixed-step integrator options. order selects the stepper: 4 is a two-node
// Gauss Magnus scheme, 2 is the exponential midpoint rule; both advance by
// exact exponentials of Hermitian generators, so the propagator is unitary to
// rounding regardless of step size. include_cd injects the counter-diabatic
// diagonal for NCGC schedules with the STA channel.
struct PropagatorOptions {
  double step_ns = 0.1;
  int order = 4;
  double tolerance = 1e-8;
  bool include_cd = true;
  bool check_convergence = false;  // compare against a half-step run
  bool lindblad_half_convention = false;
  void validate() const;
};

// Time-ordered propagator of the schedule over the mode's basis.
Eigen::MatrixXcd propagate_unitary(const PhysicalParams& params, const PulseSchedule& schedule,
                                   Mode mode, const PropagatorOptions& opts);

struct StateTrajectory {
  std::vector<double> times_ns;
  std::vector<Eigen::VectorXcd> states;
};

// Propagates a state vector, recording ~n_samples snapshots on the step grid
// (always including t = 0 and t = T).
StateTrajectory propagate_state(const PhysicalParams& params, const PulseSchedule& schedule,
                                Mode mode, const Eigen::VectorXcd& psi0,
                                const PropagatorOptions& opts, int n_samples = 2);

// Max-norm difference between the propagator at step_ns and at step_ns/2;
// used as the convergence self-check.
double propagation_step_error(const PhysicalParams& params, const PulseSchedule& schedule,
                              Mode mode, const PropagatorOptions& opts);

// Collapse operators of the master equation over the open basis:
//   L1: decay from each upper level to its lower partner,
//   L2: decay from the upper levels to the sink |W>,
//   L3: dephasing (upper minus lower projector difference).
// Rates gamma_n = Gamma_n^2 / sqrt(Gamma_1^2 + Gamma_2^2 + Gamma_3^2), kHz.
struct CollapseSet {
  double gamma1_khz = 0.0;
  double gamma2_khz = 0.0;
  double gamma3_khz = 0.0;
  Eigen::MatrixXcd l1, l2, l3;  // entries in sqrt(1/ns)

  CollapseSet();
  bool empty() const { return gamma1_khz == 0.0 && gamma2_khz == 0.0 && gamma3_khz == 0.0; }
};

CollapseSet make_collapse_set(double gamma1_khz, double gamma2_khz, double gamma3_khz);

// Integrates the master equation in the verbatim form
//   drho/dt = -i[H, rho] + sum_n (2 L rho L+ - L+L rho - rho L+L),
// or the standard 1/2 convention when opts.lindblad_half_convention is set.
// The Hamiltonian factor advances by the unitary stepper; the dissipator,
// which is time independent, advances by its exact superoperator exponential
// in a symmetric Strang split, so the trace is preserved to rounding and the
// map stays completely positive. rho is re-Hermitized every step.
Eigen::MatrixXcd lindblad_evolve(const PhysicalParams& params, const PulseSchedule& schedule,
                                 const CollapseSet& collapse, const Eigen::MatrixXcd& rho0,
                                 const PropagatorOptions& opts);

}  // namespace rydsim
