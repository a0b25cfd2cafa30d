#include "rydsim/evolve.hpp"

#include <cmath>
#include <stdexcept>

namespace rydsim {

namespace {

constexpr double kGaussOffset = 0.28867513459481288225;  // sqrt(3)/6

struct TimeGrid {
  // Uniform steps within each smooth segment; boundaries (the NCGC phase
  // flip) always coincide with step edges, so the jump is never straddled.
  std::vector<std::pair<double, double>> segments;  // (start, h) pairs
  std::vector<int> counts;
};

TimeGrid build_grid(const PulseSchedule& schedule, double step_ns) {
  TimeGrid grid;
  std::vector<double> edges = {0.0};
  for (double b : schedule.segment_boundaries())
    if (b > 0.0 && b < schedule.duration_ns()) edges.push_back(b);
  edges.push_back(schedule.duration_ns());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double len = edges[i + 1] - edges[i];
    if (len <= 0.0) continue;
    const int n = std::max(1, static_cast<int>(std::llround(len / step_ns)));
    grid.segments.emplace_back(edges[i], len / n);
    grid.counts.push_back(n);
  }
  return grid;
}

// exp(-i M) for Hermitian M via eigendecomposition; exactly unitary.
Eigen::MatrixXcd expi(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  const auto& v = es.eigenvectors();
  Eigen::VectorXcd phases(m.rows());
  for (Eigen::Index k = 0; k < m.rows(); ++k) phases(k) = std::exp(-kI * es.eigenvalues()(k));
  return v * phases.asDiagonal() * v.adjoint();
}

class HamiltonianAssembler {
 public:
  HamiltonianAssembler(const PhysicalParams& params, const PulseSchedule& schedule, Mode mode,
                       bool include_cd)
      : params_(params), schedule_(schedule), mode_(mode),
        cd_active_(include_cd && schedule.cd_channel()) {}

  Eigen::MatrixXcd at(double t_ns) const {
    Controls c = schedule_.at(t_ns);
    double delta_cd = 0.0;
    if (cd_active_) {
      // The whole delta column is the STA channel for this schedule; it
      // enters as the traceless counter-diabatic diagonal, not as an
      // ordinary detuning (a bare level shift would cancel the geometric
      // phase against the decoupled |00>).
      delta_cd = c.delta_2pi_mhz;
      c.delta_2pi_mhz = 0.0;
    }
    Eigen::MatrixXcd h = hamiltonian(params_, c, mode_);
    if (delta_cd != 0.0) {
      const double phi_dot = rad_per_ns(delta_cd);
      for (const Subspace& s : kSubspaces) {
        const Eigen::Matrix2cd cd = counterdiabatic_term(phi_dot, s.eta, c.phi_rad);
        h(s.upper, s.upper) += cd(0, 0);
        h(s.lower, s.lower) += cd(1, 1);
      }
    }
    return h;
  }

 private:
  const PhysicalParams& params_;
  const PulseSchedule& schedule_;
  Mode mode_;
  bool cd_active_;
};

// One unitary step over [t, t + h].
Eigen::MatrixXcd step_unitary(const HamiltonianAssembler& assemble, double t, double h, int order) {
  if (order == 2) return expi(h * assemble.at(t + 0.5 * h));
  // Fourth-order Magnus on two Gauss nodes; the commutator correction keeps
  // the generator Hermitian.
  const Eigen::MatrixXcd h1 = assemble.at(t + (0.5 - kGaussOffset) * h);
  const Eigen::MatrixXcd h2 = assemble.at(t + (0.5 + kGaussOffset) * h);
  const Eigen::MatrixXcd m =
      0.5 * h * (h1 + h2) - kI * (std::sqrt(3.0) / 12.0) * h * h * (h2 * h1 - h1 * h2);
  return expi(m);
}

template <typename Body>
void for_each_step(const TimeGrid& grid, const Body& body) {
  for (std::size_t s = 0; s < grid.segments.size(); ++s) {
    const auto [start, h] = grid.segments[s];
    for (int k = 0; k < grid.counts[s]; ++k) body(start + k * h, h);
  }
}

Eigen::MatrixXcd propagate_impl(const PhysicalParams& params, const PulseSchedule& schedule,
                                Mode mode, const PropagatorOptions& opts, double step_ns) {
  const HamiltonianAssembler assemble(params, schedule, mode, opts.include_cd);
  const TimeGrid grid = build_grid(schedule, step_ns);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(basis_dim(mode), basis_dim(mode));
  for_each_step(grid, [&](double t, double h) { u = step_unitary(assemble, t, h, opts.order) * u; });
  return u;
}

void check_unitary(const Eigen::MatrixXcd& u, double tolerance) {
  const double defect =
      (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  if (!(defect <= 10.0 * tolerance))
    throw std::runtime_error("propagator lost unitarity beyond tolerance");
}

}  // namespace

void PropagatorOptions::validate() const {
  if (!(step_ns > 0.0)) throw std::invalid_argument("step_ns must be positive");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (order != 2 && order != 4) throw std::invalid_argument("integrator order must be 2 or 4");
}

Eigen::MatrixXcd propagate_unitary(const PhysicalParams& params, const PulseSchedule& schedule,
                                   Mode mode, const PropagatorOptions& opts) {
  opts.validate();
  if (mode == Mode::Open)
    throw std::invalid_argument("unitary propagation is not defined for the open basis");
  Eigen::MatrixXcd u = propagate_impl(params, schedule, mode, opts, opts.step_ns);
  if (!u.allFinite()) throw std::runtime_error("propagation produced non-finite values");
  check_unitary(u, opts.tolerance);
  if (opts.check_convergence) {
    const Eigen::MatrixXcd u2 = propagate_impl(params, schedule, mode, opts, 0.5 * opts.step_ns);
    if ((u - u2).cwiseAbs().maxCoeff() > opts.tolerance)
      throw std::runtime_error("step too large to meet tolerance");
  }
  return u;
}

double propagation_step_error(const PhysicalParams& params, const PulseSchedule& schedule,
                              Mode mode, const PropagatorOptions& opts) {
  opts.validate();
  const Eigen::MatrixXcd u = propagate_impl(params, schedule, mode, opts, opts.step_ns);
  const Eigen::MatrixXcd u2 = propagate_impl(params, schedule, mode, opts, 0.5 * opts.step_ns);
  return (u - u2).cwiseAbs().maxCoeff();
}

StateTrajectory propagate_state(const PhysicalParams& params, const PulseSchedule& schedule,
                                Mode mode, const Eigen::VectorXcd& psi0,
                                const PropagatorOptions& opts, int n_samples) {
  opts.validate();
  if (mode == Mode::Open)
    throw std::invalid_argument("state propagation is not defined for the open basis");
  const int dim = basis_dim(mode);
  if (psi0.size() != dim) throw std::invalid_argument("state dimension does not match mode");

  const HamiltonianAssembler assemble(params, schedule, mode, opts.include_cd);
  const TimeGrid grid = build_grid(schedule, opts.step_ns);
  int total_steps = 0;
  for (int n : grid.counts) total_steps += n;
  const int stride = std::max(1, total_steps / std::max(1, n_samples - 1));

  StateTrajectory traj;
  Eigen::VectorXcd psi = psi0;
  traj.times_ns.push_back(0.0);
  traj.states.push_back(psi);
  int step_index = 0;
  for_each_step(grid, [&](double t, double h) {
    psi = step_unitary(assemble, t, h, opts.order) * psi;
    ++step_index;
    if (step_index % stride == 0 && step_index != total_steps) {
      traj.times_ns.push_back(t + h);
      traj.states.push_back(psi);
    }
  });
  traj.times_ns.push_back(schedule.duration_ns());
  traj.states.push_back(psi);

  const double norm_drift = std::abs(traj.states.back().norm() - psi0.norm());
  if (norm_drift > 1e-8) throw std::runtime_error("state norm drifted beyond 1e-8");
  return traj;
}

CollapseSet::CollapseSet()
    : l1(Eigen::MatrixXcd::Zero(9, 9)), l2(Eigen::MatrixXcd::Zero(9, 9)),
      l3(Eigen::MatrixXcd::Zero(9, 9)) {}

CollapseSet make_collapse_set(double gamma1_khz, double gamma2_khz, double gamma3_khz) {
  if (gamma1_khz < 0.0 || gamma2_khz < 0.0 || gamma3_khz < 0.0)
    throw std::invalid_argument("decoherence rates must be >= 0");
  const double quad = std::sqrt(gamma1_khz * gamma1_khz + gamma2_khz * gamma2_khz +
                                gamma3_khz * gamma3_khz);
  if (quad == 0.0) throw std::invalid_argument("all decoherence rates are zero");

  CollapseSet set;
  set.gamma1_khz = gamma1_khz * gamma1_khz / quad;
  set.gamma2_khz = gamma2_khz * gamma2_khz / quad;
  set.gamma3_khz = gamma3_khz * gamma3_khz / quad;

  const double s1 = std::sqrt(khz_to_per_ns(set.gamma1_khz));
  const double s2 = std::sqrt(khz_to_per_ns(set.gamma2_khz));
  const double s3 = std::sqrt(khz_to_per_ns(set.gamma3_khz));
  for (const Subspace& s : kSubspaces) {
    set.l1(s.lower, s.upper) = s1;
    set.l2(kIdxW, s.upper) = s2;
    set.l3(s.upper, s.upper) = s3;
    set.l3(s.lower, s.lower) = -s3;
  }
  return set;
}

namespace {

// vec(A rho B) = (B^T kron A) vec(rho), column-major vec.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXcd dissipator_superoperator(const CollapseSet& collapse, bool half_convention) {
  const Eigen::Index n = collapse.l1.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n * n, n * n);
  const double jump = half_convention ? 1.0 : 2.0;
  const double anti = half_convention ? 0.5 : 1.0;
  for (const Eigen::MatrixXcd* l : {&collapse.l1, &collapse.l2, &collapse.l3}) {
    const Eigen::MatrixXcd ldl = l->adjoint() * (*l);
    d += jump * kron(l->conjugate(), *l);
    d -= anti * (kron(id, ldl) + kron(ldl.transpose(), id));
  }
  return d;
}

// Plain scaling-and-squaring Taylor exponential; the dissipator generator is
// tiny (rates are kHz), so a handful of terms reaches machine precision.
Eigen::MatrixXcd expm_taylor(const Eigen::MatrixXcd& a) {
  const double norm = a.cwiseAbs().maxCoeff() * static_cast<double>(a.rows());
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.5 && squarings < 40) {
    scale *= 0.5;
    ++squarings;
  }
  const Eigen::MatrixXcd x = a * scale;
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k <= 16; ++k) {
    term = (x * term) / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

}  // namespace

Eigen::MatrixXcd lindblad_evolve(const PhysicalParams& params, const PulseSchedule& schedule,
                                 const CollapseSet& collapse, const Eigen::MatrixXcd& rho0,
                                 const PropagatorOptions& opts) {
  opts.validate();
  const int dim = basis_dim(Mode::Open);
  if (rho0.rows() != dim || rho0.cols() != dim)
    throw std::invalid_argument("rho0 must be 9x9 over the open basis");
  if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("rho0 must be Hermitian");
  if (std::abs(rho0.trace().real() - 1.0) > 1e-9)
    throw std::invalid_argument("rho0 must have unit trace");

  const HamiltonianAssembler assemble(params, schedule, Mode::Open, opts.include_cd);
  const TimeGrid grid = build_grid(schedule, opts.step_ns);

  // One dissipator half-step exponential per distinct step size.
  const bool dissipative = !collapse.empty();
  Eigen::MatrixXcd d;
  std::vector<std::pair<double, Eigen::MatrixXcd>> half_steps;
  if (dissipative) {
    d = dissipator_superoperator(collapse, opts.lindblad_half_convention);
    for (const auto& [start, h] : grid.segments) {
      (void)start;
      bool found = false;
      for (const auto& [hh, m] : half_steps) found = found || std::abs(hh - h) < 1e-15;
      if (!found) half_steps.emplace_back(h, expm_taylor(0.5 * h * d));
    }
  }
  const auto half_step_for = [&](double h) -> const Eigen::MatrixXcd& {
    for (const auto& [hh, m] : half_steps)
      if (std::abs(hh - h) < 1e-15) return m;
    throw std::logic_error("missing dissipator half step");
  };

  Eigen::MatrixXcd rho = rho0;
  for_each_step(grid, [&](double t, double h) {
    if (dissipative) {
      Eigen::Map<Eigen::VectorXcd> v(rho.data(), dim * dim);
      v = half_step_for(h) * v;
    }
    const Eigen::MatrixXcd u = step_unitary(assemble, t, h, opts.order);
    rho = u * rho * u.adjoint();
    if (dissipative) {
      Eigen::Map<Eigen::VectorXcd> v(rho.data(), dim * dim);
      v = half_step_for(h) * v;
    }
    rho = 0.5 * (rho + rho.adjoint());
  });

  if (!rho.allFinite()) throw std::runtime_error("master equation produced non-finite values");
  if (std::abs(rho.trace().real() - 1.0) > 1e-6)
    throw std::runtime_error("master equation trace drifted beyond 1e-6");
  return rho;
}

}  // namespace rydsim
