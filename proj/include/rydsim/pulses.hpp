#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "rydsim/model.hpp"

namespace rydsim {

enum class Protocol { Ncgc, Rm, Pm };

std::string_view protocol_name(Protocol p);
Protocol protocol_from_name(std::string_view name);

// Noncyclic geometric control: constant Rabi, two cosine phase ramps of a*pi
// each with a pi flip of the control field at t = tau, plus the
// shortcut-to-adiabaticity detuning Delta_a = dphi/dt when sta is on.
struct NcgcParams {
  double a = 1.0;          // rotation scale, controlled phase is a*pi
  double tau_ns = 250.0;   // segment boundary, normally T/2
  double phi0_rad = 0.0;   // initial control phase
  bool sta = true;
  void validate(double duration_ns) const;
};

// Rabi-modulated comparison protocol: Bernstein-polynomial envelope with a
// constant detuning, phi = 0.
struct RmParams {
  std::array<double, 4> beta_2pi_mhz = {1.419, 0.0, 5.076, 13.425};
  int degree = 8;
  double delta_2pi_mhz = 3.512;
};

// Phase-modulated comparison protocol: constant Rabi, cosine phase.
struct PmParams {
  double omega_2pi_mhz = 4.6;
  double amp_rad = kTwoPi * 0.1122;
  double omega_ratio = 0.1431;  // modulation frequency as a fraction of Omega_2
  double phi0_rad = -0.7318;
};

// Systematic offsets and piecewise-constant random noise. kappa values are
// relative to the instantaneous unperturbed Rabi frequency; noise amplitudes
// bound one-sided uniform draws kappa'(t) in [0, amp] (or [-amp, amp] with
// symmetric = true), resampled every noise_segment_ns.
struct PerturbationSpec {
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double noise_amp1 = 0.0;
  double noise_amp2 = 0.0;
  double noise_segment_ns = 0.1;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;  // trial index for independent Monte Carlo draws
  bool symmetric = false;
  void validate() const;
  bool has_noise() const { return noise_amp1 > 0.0 || noise_amp2 > 0.0; }
};

// Eq.-of-motion waveform primitives. All take t in ns over [0, T].
double ncgc_phase(double t_ns, const NcgcParams& p, double duration_ns);
// Closed-form dphi/dt in 2pi x MHz; the pi flip at tau is a frame change and
// contributes nothing.
double sta_detuning(double t_ns, const NcgcParams& p, double duration_ns);
double bernstein(int v, int n, double x);
Controls rm_waveform(double t_ns, const RmParams& p, double duration_ns);
Controls pm_waveform(double t_ns, const PmParams& p, double duration_ns);

struct ScheduleSample {
  double t_ns;
  double omega_2pi_mhz;
  double delta_2pi_mhz;
  double phi_rad;
};

// A time-parameterized control record. Waveforms are analytic and evaluated
// exactly at any t; sample() materializes the (t, Omega, Delta, phi) table on
// a uniform grid for CSV output. For NCGC with STA the delta column holds the
// auxiliary detuning Delta_a (plus any perturbation), which the propagator
// injects as the traceless counter-diabatic diagonal rather than as an
// ordinary detuning.
class PulseSchedule {
 public:
  static PulseSchedule ncgc(const PhysicalParams& params, const NcgcParams& p);
  static PulseSchedule rm(const PhysicalParams& params, const RmParams& p);
  static PulseSchedule pm(const PhysicalParams& params, const PmParams& p);

  Protocol protocol() const { return protocol_; }
  double duration_ns() const { return duration_ns_; }
  const NcgcParams& ncgc_params() const { return ncgc_; }
  const PerturbationSpec& perturbation() const { return perturbation_; }

  // True when the delta column is the STA channel (NCGC with STA enabled).
  bool cd_channel() const { return protocol_ == Protocol::Ncgc && ncgc_.sta; }

  // Interior boundaries of smooth waveform segments (the NCGC phase flip).
  std::vector<double> segment_boundaries() const;

  Controls at(double t_ns) const;
  std::vector<ScheduleSample> sample(double step_ns) const;

  friend PulseSchedule perturb(const PulseSchedule& schedule, const PerturbationSpec& spec);

 private:
  Protocol protocol_ = Protocol::Ncgc;
  double duration_ns_ = 0.0;
  double base_omega_2pi_mhz_ = 0.0;
  double base_delta_2pi_mhz_ = 0.0;
  NcgcParams ncgc_{};
  RmParams rm_{};
  PmParams pm_{};

  PerturbationSpec perturbation_{};
  std::vector<double> noise1_;  // per-segment kappa'_1 draws
  std::vector<double> noise2_;

  Controls base_at(double t_ns) const;
};

PulseSchedule perturb(const PulseSchedule& schedule, const PerturbationSpec& spec);

// Counter-based generator: one uniform double in [0, 1) per
// (seed, trial, channel, segment) key. Parallel trials draw independent,
// reproducible streams.
double noise_u01(std::uint64_t seed, std::uint64_t trial, std::uint64_t channel, std::uint64_t segment);

}  // namespace rydsim
