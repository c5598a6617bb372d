#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chirptf/core.hpp"
#include "chirptf/ridge.hpp"
#include "chirptf/transforms.hpp"

namespace chirptf {

struct PcaConfig {
  std::size_t K = 8;  // half-window: the estimate at m uses curve points m-K .. m+K
  void validate() const;
};

struct QuasiStationaryConfig {
  double xi = 0.0;  // Hz
  void validate() const;
};

/// One (time, frequency) measurement of an instantaneous frequency.
struct TfPoint {
  double t = 0.0;  // s
  double f = 0.0;  // Hz
};

/// Largest eigenvalue of the symmetric matrix [[ctt, ctf], [ctf, cff]].
double principal_eigenvalue(double ctt, double cff, double ctf);

/// Slope dF/dT (Hz/s) of the principal axis of the point cloud.  Returns
/// +infinity when the principal axis is vertical.
double pca_slope(std::span<const TfPoint> points);

/// Fills curve.chirp with a PCA slope over a sliding window of 2K+1 points
/// (shrunk at the curve ends).  The fit runs on lattice coordinates (time in
/// samples, frequency in bins) and is scaled back to Hz/s.  A two-point curve
/// gets the difference quotient.
RidgeCurve chirp_along_curve(RidgeCurve curve, const SampleGrid& grid, const PcaConfig& cfg);

/// Forward difference quotient of the refined IF; the last point repeats its
/// predecessor.
std::vector<double> diff_chirp(const RidgeCurve& curve, const SampleGrid& grid);

/// sigma = sqrt(1 / (2 pi |f'|)), clamped to bounds.  f' = 0 gives sigma_max and
/// an infinite f' gives sigma_min.
double sigma_from_chirp(double f_prime, const SigmaBounds& bounds);

/// Time-varying window from the running integral of |f'|: the widest symmetric
/// span 2l dt whose summed |f'| dt stays within xi, converted from FWHM to
/// sigma.  `chirp` holds one value per time index.
SigmaField quasi_stationary_sigma(std::span<const double> chirp, const SampleGrid& grid,
                                  const QuasiStationaryConfig& qcfg, const SigmaBounds& bounds);

}  // namespace chirptf
