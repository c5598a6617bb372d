#include "chirptf/chirprate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chirptf/kernels.hpp"
#include "chirptf/parallel.hpp"

namespace chirptf {

void PcaConfig::validate() const {
  if (K < 1) throw ConfigError("PcaConfig: K must be >= 1");
}

void QuasiStationaryConfig::validate() const {
  if (!(xi > 0.0) || !std::isfinite(xi)) throw ConfigError("QuasiStationaryConfig: xi must be positive");
}

double principal_eigenvalue(double ctt, double cff, double ctf) {
  const double d = ctt - cff;
  return 0.5 * (ctt + cff + std::sqrt(d * d + 4.0 * ctf * ctf));
}

double pca_slope(std::span<const TfPoint> points) {
  if (points.size() < 2) throw DegenerateInput("pca_slope: need at least two measurements");
  const double count = static_cast<double>(points.size());
  double mt = 0.0, mf = 0.0;
  for (const auto& p : points) {
    mt += p.t;
    mf += p.f;
  }
  mt /= count;
  mf /= count;
  double a = 0.0, b = 0.0, c = 0.0;
  for (const auto& p : points) {
    const double dt = p.t - mt, df = p.f - mf;
    a += dt * dt;
    b += df * df;
    c += dt * df;
  }
  if (a == 0.0 && b == 0.0) throw DegenerateInput("pca_slope: all measurements coincide");
  if (std::abs(c) < 1e-12 * std::max(a, b)) {
    return a >= b ? 0.0 : std::numeric_limits<double>::infinity();
  }
  // (lambda1 - a) / c written without the cancellation of either branch.
  const double root = std::sqrt((a - b) * (a - b) + 4.0 * c * c);
  if (b < a) return 2.0 * c / ((a - b) + root);
  return ((b - a) + root) / (2.0 * c);
}

RidgeCurve chirp_along_curve(RidgeCurve curve, const SampleGrid& grid, const PcaConfig& cfg) {
  cfg.validate();
  const std::size_t len = curve.points.size();
  if (len < 2) throw DegenerateInput("chirp_along_curve: curve needs at least two points");
  if (len == 2) {
    curve.chirp = diff_chirp(curve, grid);
    return curve;
  }
  // Measurements in lattice units (samples, bins): the principal axis of a
  // cloud measured in seconds and hertz depends on the choice of units.
  std::vector<TfPoint> tf(len);
  for (std::size_t i = 0; i < len; ++i) {
    tf[i] = {static_cast<double>(curve.points[i].m), (curve.points[i].freq - grid.f0) / grid.df};
  }
  const double scale = grid.df / grid.dt;
  curve.chirp.assign(len, 0.0);
  parallel_for(len, [&](std::size_t i) {
    std::size_t lo = i >= cfg.K ? i - cfg.K : 0;
    std::size_t hi = std::min(len - 1, i + cfg.K);
    // Shrunk windows keep at least three measurements.
    while (hi - lo + 1 < 3) {
      if (lo > 0) --lo;
      else ++hi;
    }
    curve.chirp[i] = scale * pca_slope(std::span<const TfPoint>(tf.data() + lo, hi - lo + 1));
  });
  return curve;
}

std::vector<double> diff_chirp(const RidgeCurve& curve, const SampleGrid& grid) {
  const std::size_t len = curve.points.size();
  if (len < 2) throw DegenerateInput("diff_chirp: curve needs at least two points");
  std::vector<double> out(len);
  for (std::size_t i = 0; i + 1 < len; ++i) {
    const auto& p = curve.points[i];
    const auto& q = curve.points[i + 1];
    out[i] = (q.freq - p.freq) / (grid.time_at(q.m) - grid.time_at(p.m));
  }
  out[len - 1] = out[len - 2];
  return out;
}

double sigma_from_chirp(double f_prime, const SigmaBounds& bounds) {
  const double a = std::abs(f_prime);
  if (a == 0.0) return bounds.sigma_max;
  if (std::isinf(a)) return bounds.sigma_min;
  return bounds.clamp(std::sqrt(1.0 / (2.0 * kPi * a)));
}

SigmaField quasi_stationary_sigma(std::span<const double> chirp, const SampleGrid& grid,
                                  const QuasiStationaryConfig& qcfg, const SigmaBounds& bounds) {
  qcfg.validate();
  bounds.validate();
  const std::size_t n = grid.n_time;
  if (chirp.size() != n) throw GridMismatch("quasi_stationary_sigma: one chirp value per time index");
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t m = 0; m < n; ++m) prefix[m + 1] = prefix[m] + std::abs(chirp[m]) * grid.dt;
  const auto span_sum = [&](std::size_t k, std::size_t l) {
    const std::size_t lo = k >= l ? k - l : 0;
    const std::size_t hi = std::min(n - 1, k + l);
    return prefix[hi + 1] - prefix[lo];
  };

  const double duration = grid.duration();
  std::vector<double> sigma(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t l = 0;
    double width = 0.0;
    if (span_sum(k, 0) <= qcfg.xi) {
      while (l < n && span_sum(k, l + 1) <= qcfg.xi) ++l;
      width = std::min(2.0 * static_cast<double>(l) * grid.dt, duration);
    }
    sigma[k] = width > 0.0 ? bounds.clamp(width / kFwhmFactor) : bounds.sigma_min;
  }
  return SigmaField::per_time(std::move(sigma), bounds);
}

}  // namespace chirptf
