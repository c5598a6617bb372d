#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chirptf/core.hpp"
#include "chirptf/pipeline.hpp"
#include "chirptf/signals.hpp"

namespace chirptf {

/// |ASTFT| of exp(j 2 pi (b t + a t^2 / 2)) under a Gaussian window of
/// standard deviation sigma, in closed form.
double analytic_lfm_envelope(double a, double b, double sigma, double t, double f);

/// Variance (Hz^2) of the Gaussian frequency profile of that envelope.
double envelope_variance(double sigma_sq, double a);

/// Sum of |X|^beta after normalizing |X| to unit sum over the whole plane.
double concentration_score(const TfrMatrix& tfr, double beta = 5.0);

/// Mean squared difference of two per-sample sequences.
double if_mse(std::span<const double> estimated, std::span<const double> truth);

enum class Method { astft_tf, astft_tf_fast, astft_t, astft_f, stft, s_transform };

std::string method_name(Method m);
Method parse_method(const std::string& name);

/// Runs one analysis method end to end.  `sigma` is used by stft (0 selects the
/// CM5 pilot sigma), `xi` by astft_t, `p` by s_transform.
struct MethodParams {
  double sigma = 0.0;
  double xi = 0.0;
  double p = 1.0;
};
PipelineResult run_method(Method method, const ComplexSignal& signal, const PipelineConfig& cfg,
                          const MethodParams& params = {});

/// Per-column IF estimates (Hz) for each component of the spec: the TFR
/// maximum nearest to the component's analytic IF.
std::vector<std::vector<double>> estimate_if(const TfrMatrix& tfr, const SignalSpec& spec,
                                             std::size_t components);

enum class MseTarget { instantaneous_frequency, chirp_rate };

struct MseConfig {
  SignalSpec spec;
  SampleGrid grid;
  std::vector<double> snr_db;
  std::size_t trials = 1;
  std::uint64_t seed_base = 0;
  std::vector<Method> methods;
  MethodParams params;
  MseTarget target = MseTarget::instantaneous_frequency;
};

struct MseReport {
  std::vector<double> snr_db;
  std::vector<Method> methods;
  std::vector<std::vector<double>> mse;  // [method][snr]
  std::size_t trials = 0;
  std::vector<std::uint64_t> seeds;      // noise seed of each trial (shared across SNRs)
};

/// Monte-Carlo IF (or chirp-rate) MSE per method and SNR.
MseReport run_mse_bench(const MseConfig& cfg);

}  // namespace chirptf
