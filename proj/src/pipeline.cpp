#include "chirptf/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace chirptf {

void PipelineConfig::validate() const {
  cm.validate();
  peaks.validate();
  pca.validate();
  bounds.validate();
}

PipelineConfig PipelineConfig::defaults(const SampleGrid& grid) {
  PipelineConfig cfg;
  cfg.bounds = default_bounds(grid);
  cfg.cm = CMConfig::defaults(cfg.bounds);
  return cfg;
}

namespace {

bool all_zero(const ComplexSignal& signal) {
  for (const auto& v : signal.samples) {
    if (v != cplx{}) return false;
  }
  return true;
}

void finish_fallback(PipelineResult& r, const std::string& why) {
  r.fallback = true;
  r.warnings.push_back(why + "; returning the constant-sigma pilot transform");
  r.sigma = SigmaField::constant(r.pilot_sigma);
  r.tfr = r.pilot;
}

// Columns whose pilot window was cut by the record ends give biased ridge
// frequencies; their points take the chirp of the nearest unaffected point.
RidgeCurve chirp_from_interior(RidgeCurve curve, const std::vector<std::uint8_t>& boundary,
                               const SampleGrid& grid, const PcaConfig& pca) {
  std::size_t lo = 0, hi = curve.points.size();
  while (lo < hi && boundary[curve.points[lo].m]) ++lo;
  while (hi > lo && boundary[curve.points[hi - 1].m]) --hi;
  if (hi - lo < 2 || (lo == 0 && hi == curve.points.size())) {
    return chirp_along_curve(std::move(curve), grid, pca);
  }
  RidgeCurve inner;
  inner.points.assign(curve.points.begin() + static_cast<std::ptrdiff_t>(lo),
                      curve.points.begin() + static_cast<std::ptrdiff_t>(hi));
  inner = chirp_along_curve(std::move(inner), grid, pca);
  curve.chirp.resize(curve.points.size());
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    curve.chirp[i] = inner.chirp[std::clamp(i, lo, hi - 1) - lo];
  }
  return curve;
}

}  // namespace

PipelineResult estimate_ridges(const ComplexSignal& signal, const PipelineConfig& cfg) {
  cfg.validate();
  PipelineResult r;
  if (signal.samples.empty()) throw DegenerateInput("pipeline: empty signal");
  if (all_zero(signal)) {
    r.pilot_sigma = std::sqrt(cfg.bounds.sigma_min * cfg.bounds.sigma_max);
    r.pilot = stft(signal, r.pilot_sigma, cfg.cm.truncation);
    r.warnings.push_back("signal is identically zero");
    return r;
  }
  GlobalSelection sel = best_sigma_global(signal, cfg.cm, Measure::cm5);
  r.pilot_sigma = sel.sigma;
  r.pilot = std::move(sel.tfr);
  for (auto& curve : extract_ridges(r.pilot, cfg.peaks)) {
    if (curve.points.size() < 2) continue;
    r.curves.push_back(chirp_from_interior(std::move(curve), r.pilot.boundary, signal.grid, cfg.pca));
  }
  return r;
}

PipelineResult run_astft_tf(const ComplexSignal& signal, const PipelineConfig& cfg) {
  PipelineResult r = estimate_ridges(signal, cfg);
  if (r.curves.empty()) {
    finish_fallback(r, "no ridge curves survived");
    return r;
  }
  r.chirp_field = interpolate_chirp_field(r.curves, signal.grid, cfg.interpolation);
  r.sigma = sigma_field_full(*r.chirp_field, cfg.bounds);
  r.tfr = astft_direct(signal, r.sigma, cfg.cm.truncation);
  return r;
}

PipelineResult run_astft_tf_fast(const ComplexSignal& signal, const PipelineConfig& cfg,
                                 std::optional<AverageAxis> axis) {
  PipelineResult r = estimate_ridges(signal, cfg);
  if (r.curves.empty()) {
    finish_fallback(r, "no ridge curves survived");
    return r;
  }
  r.axis = axis ? *axis : choose_average_axis(r.curves, signal.grid);
  r.sigma = averaged_sigma(r.curves, signal.grid, *r.axis, cfg.bounds);
  r.tfr = astft(signal, r.sigma, cfg.fast_path, cfg.cm.truncation);
  return r;
}

PipelineResult run_astft_t(const ComplexSignal& signal, const PipelineConfig& cfg) {
  cfg.quasi.validate();
  PipelineResult r = estimate_ridges(signal, cfg);
  if (r.curves.empty()) {
    finish_fallback(r, "no ridge curves survived");
    return r;
  }
  r.axis = AverageAxis::time;
  const auto chirp = average_chirp(r.curves, signal.grid, AverageAxis::time);
  r.sigma = quasi_stationary_sigma(chirp, signal.grid, cfg.quasi, cfg.bounds);
  r.tfr = astft(signal, r.sigma, cfg.fast_path, cfg.cm.truncation);
  return r;
}

PipelineResult run_astft_f(const ComplexSignal& signal, const PipelineConfig& cfg) {
  cfg.validate();
  PipelineResult r;
  if (signal.samples.empty()) throw DegenerateInput("pipeline: empty signal");
  if (all_zero(signal)) {
    r.pilot_sigma = std::sqrt(cfg.bounds.sigma_min * cfg.bounds.sigma_max);
    r.pilot = stft(signal, r.pilot_sigma, cfg.cm.truncation);
    finish_fallback(r, "signal is identically zero");
    return r;
  }
  PerFreqSelection sel = best_sigma_per_freq(signal, cfg.cm);
  r.sigma = std::move(sel.field);
  r.tfr = astft(signal, r.sigma, cfg.fast_path, cfg.cm.truncation);
  return r;
}

}  // namespace chirptf
