#pragma once

#include <cstddef>
#include <vector>

#include "chirptf/core.hpp"

namespace chirptf {

struct RidgePoint {
  std::size_t m = 0;
  std::size_t n = 0;
  double mag = 0.0;
  double freq = 0.0;  // Hz, refined between bins by a log-parabola fit
};

struct RidgeCurve {
  std::vector<RidgePoint> points;  // strictly increasing m
  std::vector<double> chirp;       // Hz/s per point; empty until estimated
};

struct PeakConfig {
  std::size_t max_components = 4;
  double min_rel_height = 0.1;
  std::size_t min_curve_len = 8;
  double min_curve_energy = 0.01;
  std::size_t max_jump_bins = 3;

  void validate() const;
};

using RidgeColumns = std::vector<std::vector<RidgePoint>>;

/// Local maxima of |X| along frequency for each time column, strongest first.
/// The outermost rows only count when the frequency axis covers a full period.
RidgeColumns detect_ridge_points(const TfrMatrix& tfr, const PeakConfig& cfg);

/// Greedy nearest-frequency linking of column maxima into curves.
std::vector<RidgeCurve> trace_curves(const RidgeColumns& points, const PeakConfig& cfg);

std::vector<RidgeCurve> prune_curves(std::vector<RidgeCurve> curves, const PeakConfig& cfg);

/// Convenience: detect, trace and prune.
std::vector<RidgeCurve> extract_ridges(const TfrMatrix& tfr, const PeakConfig& cfg);

}  // namespace chirptf
