#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "chirptf/core.hpp"

namespace chirptf {

struct Envelope {
  enum class Kind { constant, sinusoidal, random_abs_gaussian };
  Kind kind = Kind::constant;
  double c0 = 1.0;     // amplitude, or offset of the sinusoidal envelope
  double c1 = 0.0;     // sinusoidal: c0 + c1 cos(omega t)
  double omega = 0.0;  // rad/s
  std::uint64_t seed = 0;
};

struct PhaseTerm {
  enum class Kind { sine, cosine };
  Kind kind = Kind::sine;
  double c = 0.0;      // rad
  double omega = 0.0;  // rad/s
};

/// A(t) exp(j phi(t)) with phi(t) = sum_k poly[k] t^k + sum of c sin/cos(omega t).
struct Component {
  Envelope envelope;
  std::vector<double> poly;  // rad / s^k, degree <= 5
  std::vector<PhaseTerm> terms;
};

struct SignalSpec {
  std::vector<Component> components;
  bool real = false;  // keep only the real part

  void validate() const;
};

struct NoiseSpec {
  double snr_db = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
};

struct InstantaneousFrequency {
  double f_inst = 0.0;   // Hz
  double f_prime = 0.0;  // Hz/s
};

ComplexSignal synthesize(const SignalSpec& spec, const SampleGrid& grid);

/// Analytic IF and chirp rate of every component at time t.
std::vector<InstantaneousFrequency> analytic_if(const SignalSpec& spec, double t);

/// Adds white Gaussian noise at the requested SNR relative to the total signal
/// power.  Complex noise is circular; real_valued selects real noise.  An
/// infinite SNR returns the signal unchanged.
ComplexSignal add_awgn(const ComplexSignal& signal, const NoiseSpec& noise,
                       bool real_valued = false);

/// Ready-made test signals with their analysis grids.
struct Preset {
  std::string name;
  SignalSpec spec;
  SampleGrid grid;
  double xi = 0.0;  // quasi-stationary threshold used with this signal (0: none)
};

/// Names: lfm-sfm, two-lfm, quintic, cubic-quadratic, general, sfm.
Preset preset(const std::string& name);
std::vector<std::string> preset_names();

/// Single linear chirp with IF b + a t.
SignalSpec lfm_spec(double a, double b, double amplitude = 1.0);

}  // namespace chirptf
