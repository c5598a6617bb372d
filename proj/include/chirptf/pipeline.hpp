#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chirptf/chirprate.hpp"
#include "chirptf/concentration.hpp"
#include "chirptf/ridge.hpp"
#include "chirptf/sigmafield.hpp"
#include "chirptf/transforms.hpp"

namespace chirptf {

struct PipelineConfig {
  CMConfig cm;
  PeakConfig peaks;
  PcaConfig pca;
  SigmaBounds bounds;
  QuasiStationaryConfig quasi;  // only used by run_astft_t
  FastPath fast_path = FastPath::automatic;
  Interpolation interpolation = Interpolation::linear;

  void validate() const;

  /// Default bounds for the grid, 64 log-spaced candidates over them.
  static PipelineConfig defaults(const SampleGrid& grid);
};

struct PipelineResult {
  TfrMatrix tfr;
  TfrMatrix pilot;  // constant-sigma transform used for ridge detection
  double pilot_sigma = 0.0;
  std::vector<RidgeCurve> curves;  // with chirp rates filled
  SigmaField sigma;                // field used for the final transform
  std::optional<ChirpField> chirp_field;
  std::optional<AverageAxis> axis;
  bool fallback = false;  // no usable curves: tfr is the pilot transform
  std::vector<std::string> warnings;
};

/// Pilot transform and chirp-annotated ridge curves (the shared front end).
/// Curve points in pilot columns flagged as boundary take the chirp of the
/// nearest unflagged point on the same curve.
PipelineResult estimate_ridges(const ComplexSignal& signal, const PipelineConfig& cfg);

/// Time-frequency-varying window from the interpolated chirp field, evaluated
/// by direct summation.
PipelineResult run_astft_tf(const ComplexSignal& signal, const PipelineConfig& cfg);

/// Axis-averaged chirp rates so one FFT path applies.  `axis` forces the
/// averaging axis; otherwise it is chosen from the curves.
PipelineResult run_astft_tf_fast(const ComplexSignal& signal, const PipelineConfig& cfg,
                                 std::optional<AverageAxis> axis = std::nullopt);

/// Time-varying window from the quasi-stationary rule on the mean |f'| per time.
PipelineResult run_astft_t(const ComplexSignal& signal, const PipelineConfig& cfg);

/// Frequency-varying window chosen row by row with the CM2 search.
PipelineResult run_astft_f(const ComplexSignal& signal, const PipelineConfig& cfg);

}  // namespace chirptf
