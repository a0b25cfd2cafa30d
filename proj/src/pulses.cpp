#include "rydsim/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rydsim {

std::string_view protocol_name(Protocol p) {
  switch (p) {
    case Protocol::Ncgc: return "ncgc";
    case Protocol::Rm: return "rm";
    case Protocol::Pm: return "pm";
  }
  return "?";
}

Protocol protocol_from_name(std::string_view name) {
  if (name == "ncgc") return Protocol::Ncgc;
  if (name == "rm") return Protocol::Rm;
  if (name == "pm") return Protocol::Pm;
  throw std::invalid_argument("unknown protocol '" + std::string(name) + "'");
}

void NcgcParams::validate(double duration_ns) const {
  if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("ncgc a must be in (0, 1]");
  if (!(tau_ns > 0.0 && tau_ns < duration_ns))
    throw std::invalid_argument("ncgc tau must be in (0, T)");
  if (!std::isfinite(phi0_rad)) throw std::invalid_argument("ncgc phi0 must be finite");
}

void PerturbationSpec::validate() const {
  if (!(noise_segment_ns > 0.0)) throw std::invalid_argument("noise_segment_ns must be positive");
  if (noise_amp1 < 0.0 || noise_amp2 < 0.0)
    throw std::invalid_argument("noise amplitudes must be >= 0");
}

static void check_time(double t, double duration) {
  if (!(t >= 0.0 && t <= duration)) throw std::invalid_argument("t outside [0, T]");
}

double ncgc_phase(double t_ns, const NcgcParams& p, double duration_ns) {
  check_time(t_ns, duration_ns);
  const double half = 0.5 * p.a * kPi;
  if (t_ns <= p.tau_ns)
    return p.phi0_rad + half * (1.0 - std::cos(kPi * t_ns / p.tau_ns));
  return p.phi0_rad + kPi + half * (3.0 - std::cos(kPi * (t_ns - p.tau_ns) / p.tau_ns));
}

double sta_detuning(double t_ns, const NcgcParams& p, double duration_ns) {
  check_time(t_ns, duration_ns);
  const double scale = 0.5 * p.a * kPi * (kPi / p.tau_ns);  // rad/ns
  const double arg = (t_ns <= p.tau_ns) ? kPi * t_ns / p.tau_ns : kPi * (t_ns - p.tau_ns) / p.tau_ns;
  return to_2pi_mhz(scale * std::sin(arg));
}

double bernstein(int v, int n, double x) {
  if (v < 0 || v > n) throw std::invalid_argument("bernstein: v out of range");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("bernstein: x outside [0, 1]");
  double binom = 1.0;
  for (int k = 1; k <= v; ++k) binom *= static_cast<double>(n - v + k) / k;
  return binom * std::pow(x, v) * std::pow(1.0 - x, n - v);
}

Controls rm_waveform(double t_ns, const RmParams& p, double duration_ns) {
  check_time(t_ns, duration_ns);
  const double x = t_ns / duration_ns;
  double omega = 0.0;
  for (int nu = 1; nu <= 4; ++nu)
    omega += p.beta_2pi_mhz[static_cast<std::size_t>(nu - 1)] *
             (bernstein(nu, p.degree, x) + bernstein(p.degree - nu, p.degree, x));
  return {omega, p.delta_2pi_mhz, 0.0};
}

Controls pm_waveform(double t_ns, const PmParams& p, double duration_ns) {
  check_time(t_ns, duration_ns);
  const double omega_mod = p.omega_ratio * rad_per_ns(p.omega_2pi_mhz);  // rad/ns
  const double phi = p.amp_rad * std::cos(omega_mod * t_ns - p.phi0_rad);
  return {p.omega_2pi_mhz, 0.0, phi};
}

PulseSchedule PulseSchedule::ncgc(const PhysicalParams& params, const NcgcParams& p) {
  params.validate();
  p.validate(params.duration_ns);
  PulseSchedule s;
  s.protocol_ = Protocol::Ncgc;
  s.duration_ns_ = params.duration_ns;
  s.base_omega_2pi_mhz_ = params.omega_2pi_mhz;
  s.base_delta_2pi_mhz_ = params.delta_2pi_mhz;
  s.ncgc_ = p;
  return s;
}

PulseSchedule PulseSchedule::rm(const PhysicalParams& params, const RmParams& p) {
  params.validate();
  PulseSchedule s;
  s.protocol_ = Protocol::Rm;
  s.duration_ns_ = params.duration_ns;
  s.base_omega_2pi_mhz_ = params.omega_2pi_mhz;
  s.base_delta_2pi_mhz_ = p.delta_2pi_mhz;
  s.rm_ = p;
  return s;
}

PulseSchedule PulseSchedule::pm(const PhysicalParams& params, const PmParams& p) {
  params.validate();
  PulseSchedule s;
  s.protocol_ = Protocol::Pm;
  s.duration_ns_ = params.duration_ns;
  s.base_omega_2pi_mhz_ = p.omega_2pi_mhz;
  s.base_delta_2pi_mhz_ = params.delta_2pi_mhz;
  s.pm_ = p;
  return s;
}

std::vector<double> PulseSchedule::segment_boundaries() const {
  if (protocol_ == Protocol::Ncgc) return {ncgc_.tau_ns};
  return {};
}

Controls PulseSchedule::base_at(double t_ns) const {
  switch (protocol_) {
    case Protocol::Ncgc: {
      Controls c;
      c.omega_2pi_mhz = base_omega_2pi_mhz_;
      c.delta_2pi_mhz = base_delta_2pi_mhz_ +
                        (ncgc_.sta ? sta_detuning(t_ns, ncgc_, duration_ns_) : 0.0);
      c.phi_rad = ncgc_phase(t_ns, ncgc_, duration_ns_);
      return c;
    }
    case Protocol::Rm:
      return rm_waveform(t_ns, rm_, duration_ns_);
    case Protocol::Pm: {
      Controls c = pm_waveform(t_ns, pm_, duration_ns_);
      c.delta_2pi_mhz += base_delta_2pi_mhz_;
      return c;
    }
  }
  throw std::logic_error("unreachable");
}

Controls PulseSchedule::at(double t_ns) const {
  Controls c = base_at(t_ns);
  const double omega0 = c.omega_2pi_mhz;
  double k1 = perturbation_.kappa1;
  double k2 = perturbation_.kappa2;
  if (!noise1_.empty() || !noise2_.empty()) {
    const auto seg = static_cast<std::size_t>(
        std::min(t_ns / perturbation_.noise_segment_ns,
                 static_cast<double>(std::max(noise1_.size(), noise2_.size()) - 1)));
    if (!noise1_.empty()) k1 += noise1_[seg];
    if (!noise2_.empty()) k2 += noise2_[seg];
  }
  c.omega_2pi_mhz = (1.0 + k1) * omega0;
  c.delta_2pi_mhz += k2 * omega0;
  return c;
}

std::vector<ScheduleSample> PulseSchedule::sample(double step_ns) const {
  if (!(step_ns > 0.0)) throw std::invalid_argument("sample step must be positive");
  std::vector<ScheduleSample> out;
  const auto n = static_cast<std::size_t>(std::llround(duration_ns_ / step_ns));
  out.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = std::min(static_cast<double>(k) * step_ns, duration_ns_);
    const Controls c = at(t);
    out.push_back({t, c.omega_2pi_mhz, c.delta_2pi_mhz, c.phi_rad});
  }
  if (out.back().t_ns < duration_ns_) {
    const Controls c = at(duration_ns_);
    out.push_back({duration_ns_, c.omega_2pi_mhz, c.delta_2pi_mhz, c.phi_rad});
  }
  return out;
}

// splitmix64, the usual finalizer-style mixer.
static std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double noise_u01(std::uint64_t seed, std::uint64_t trial, std::uint64_t channel, std::uint64_t segment) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ trial);
  h = mix64(h ^ channel);
  h = mix64(h ^ segment);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

PulseSchedule perturb(const PulseSchedule& schedule, const PerturbationSpec& spec) {
  spec.validate();
  PulseSchedule out = schedule;
  out.perturbation_ = spec;
  out.noise1_.clear();
  out.noise2_.clear();
  if (spec.has_noise()) {
    const auto segments = static_cast<std::size_t>(
        std::ceil(schedule.duration_ns() / spec.noise_segment_ns));
    auto draw = [&](double amp, std::uint64_t channel, std::vector<double>& dest) {
      if (amp <= 0.0) return;
      dest.resize(segments);
      for (std::size_t k = 0; k < segments; ++k) {
        const double u = noise_u01(spec.seed, spec.trial, channel, k);
        dest[k] = spec.symmetric ? (2.0 * u - 1.0) * amp : u * amp;
      }
    };
    draw(spec.noise_amp1, 1, out.noise1_);
    draw(spec.noise_amp2, 2, out.noise2_);
  }
  return out;
}

}  // namespace rydsim
