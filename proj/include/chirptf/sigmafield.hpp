#pragma once

#include <cstddef>
#include <vector>

#include "chirptf/core.hpp"
#include "chirptf/ridge.hpp"
#include "chirptf/transforms.hpp"

namespace chirptf {

enum class Interpolation { nearest, linear };
enum class AverageAxis { time, freq };

struct ChirpSite {
  std::size_t m = 0;
  std::size_t n = 0;
  double chirp = 0.0;  // Hz/s
};

struct ChirpField {
  std::vector<ChirpSite> on_ridge;  // one entry per occupied cell
  RealMatrix filled;                // n_time x n_freq, empty until interpolated
};

/// Dense chirp-rate field from the estimated chirp along every curve.  Sites
/// shared by several curves carry their mean.  Linear mode interpolates over a
/// Delaunay triangulation of the sites and gives points outside the hull the
/// value of the nearest site; nearest mode uses the nearest site everywhere.
/// Collinear sites fall back to 1D interpolation along the line, replicated
/// across the other axis.
ChirpField interpolate_chirp_field(const std::vector<RidgeCurve>& curves, const SampleGrid& grid,
                                   Interpolation method = Interpolation::linear);

/// Element-wise sigma_from_chirp over the dense field.
SigmaField sigma_field_full(const ChirpField& field, const SigmaBounds& bounds);

/// Mean |f'| of the curve points at each time (axis = time) or frequency
/// (axis = freq) index.  Indices without points take the nearest filled index.
std::vector<double> average_chirp(const std::vector<RidgeCurve>& curves, const SampleGrid& grid,
                                  AverageAxis axis);

/// Picks the axis along which the components' |f'| agree best (smaller median
/// coefficient of variation across components).  Ties go to time.
AverageAxis choose_average_axis(const std::vector<RidgeCurve>& curves, const SampleGrid& grid);

/// per_time or per_freq sigma from the averaged chirp rates.
SigmaField averaged_sigma(const std::vector<RidgeCurve>& curves, const SampleGrid& grid,
                          AverageAxis axis, const SigmaBounds& bounds);

}  // namespace chirptf
