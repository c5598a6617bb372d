#include "chirptf/ridge.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "chirptf/parallel.hpp"

namespace chirptf {

void PeakConfig::validate() const {
  if (max_components < 1) throw ConfigError("PeakConfig: max_components must be >= 1");
  if (!(min_rel_height > 0.0 && min_rel_height <= 1.0)) {
    throw ConfigError("PeakConfig: min_rel_height must lie in (0, 1]");
  }
  if (min_curve_len < 1) throw ConfigError("PeakConfig: min_curve_len must be >= 1");
  if (!(min_curve_energy > 0.0)) throw ConfigError("PeakConfig: min_curve_energy must be positive");
  if (max_jump_bins < 1) throw ConfigError("PeakConfig: max_jump_bins must be >= 1");
}

namespace {

// Offset in (-0.5, 0.5) bins of the vertex of the parabola through ln y.
double log_parabola_offset(double ym, double y0, double yp) {
  if (!(ym > 0.0 && y0 > 0.0 && yp > 0.0)) return 0.0;
  const double lm = std::log(ym), l0 = std::log(y0), lp = std::log(yp);
  const double den = lm - 2.0 * l0 + lp;
  if (!(den < 0.0)) return 0.0;
  return std::clamp(0.5 * (lm - lp) / den, -0.5, 0.5);
}

std::vector<RidgePoint> column_maxima(const TfrMatrix& tfr, std::size_t m, const PeakConfig& cfg,
                                      std::vector<double>& mag) {
  const SampleGrid& g = tfr.grid();
  const std::size_t nf = g.n_freq;
  const bool wrap = nf == g.fft_len;
  double peak = 0.0;
  for (std::size_t n = 0; n < nf; ++n) {
    mag[n] = std::abs(tfr(m, n));
    peak = std::max(peak, mag[n]);
  }
  std::vector<RidgePoint> out;
  if (!(peak > 0.0) || nf < 2) return out;
  const double floor = cfg.min_rel_height * peak;

  // Runs of equal magnitude; a run is a maximum when both neighbours are lower.
  std::size_t start = 0;
  if (wrap) {
    while (start < nf && mag[start] == mag[(start + nf - 1) % nf]) ++start;
    if (start == nf) return out;  // flat column
  }
  std::size_t i = 0;
  while (i < nf) {
    const std::size_t a = start + i;
    std::size_t len = 1;
    while (i + len < nf && mag[(a + len) % nf] == mag[a % nf]) ++len;
    const double v = mag[a % nf];
    bool is_peak = v >= floor;
    if (is_peak) {
      if (wrap) {
        is_peak = mag[(a + nf - 1) % nf] < v && mag[(a + len) % nf] < v;
      } else {
        is_peak = a > 0 && a + len < nf && mag[a - 1] < v && mag[a + len] < v;
      }
    }
    if (is_peak) {
      const std::size_t n = (a + (len - 1) / 2) % nf;
      double offset = 0.0;
      if (len == 1) offset = log_parabola_offset(mag[(n + nf - 1) % nf], v, mag[(n + 1) % nf]);
      else if (len % 2 == 0) offset = 0.5;  // even plateau: the centre lies between two bins
      out.push_back({m, n, v, g.freq_at(n) + offset * g.df});
    }
    i += len;
  }
  std::stable_sort(out.begin(), out.end(), [](const RidgePoint& x, const RidgePoint& y) {
    return x.mag > y.mag || (x.mag == y.mag && x.n < y.n);
  });
  if (out.size() > cfg.max_components) out.resize(cfg.max_components);
  return out;
}

std::size_t bin_distance(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

}  // namespace

RidgeColumns detect_ridge_points(const TfrMatrix& tfr, const PeakConfig& cfg) {
  cfg.validate();
  const SampleGrid& g = tfr.grid();
  RidgeColumns cols(g.n_time);
  parallel_for(g.n_time, [&](std::size_t m) {
    std::vector<double> mag(g.n_freq);
    cols[m] = column_maxima(tfr, m, cfg, mag);
  });
  return cols;
}

std::vector<RidgeCurve> trace_curves(const RidgeColumns& points, const PeakConfig& cfg) {
  cfg.validate();
  std::vector<RidgeCurve> curves;
  std::vector<std::size_t> active;  // curves whose last point is in the previous column

  for (std::size_t m = 0; m < points.size(); ++m) {
    const auto& col = points[m];
    struct Link {
      std::size_t jump;
      double mag;
      std::size_t curve;
      std::size_t point;
    };
    std::vector<Link> links;
    for (std::size_t c : active) {
      const RidgePoint& last = curves[c].points.back();
      for (std::size_t j = 0; j < col.size(); ++j) {
        const std::size_t d = bin_distance(last.n, col[j].n);
        if (d <= cfg.max_jump_bins) links.push_back({d, col[j].mag, c, j});
      }
    }
    std::stable_sort(links.begin(), links.end(), [](const Link& a, const Link& b) {
      return std::tie(a.jump, b.mag, a.curve, a.point) < std::tie(b.jump, a.mag, b.curve, b.point);
    });
    std::vector<std::uint8_t> curve_done(curves.size(), 0), point_used(col.size(), 0);
    std::vector<std::size_t> next_active;
    for (const Link& l : links) {
      if (curve_done[l.curve] || point_used[l.point]) continue;
      curve_done[l.curve] = 1;
      point_used[l.point] = 1;
      curves[l.curve].points.push_back(col[l.point]);
      next_active.push_back(l.curve);
    }
    for (std::size_t j = 0; j < col.size(); ++j) {
      if (point_used[j]) continue;
      curves.push_back({{col[j]}, {}});
      next_active.push_back(curves.size() - 1);
    }
    std::sort(next_active.begin(), next_active.end());
    active = std::move(next_active);
  }
  return curves;
}

std::vector<RidgeCurve> prune_curves(std::vector<RidgeCurve> curves, const PeakConfig& cfg) {
  cfg.validate();
  double total = 0.0;
  std::vector<double> energy(curves.size(), 0.0);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (const auto& p : curves[i].points) energy[i] += p.mag;
    total += energy[i];
  }
  std::vector<RidgeCurve> kept;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (curves[i].points.size() < cfg.min_curve_len) continue;
    if (energy[i] < cfg.min_curve_energy * total) continue;
    kept.push_back(std::move(curves[i]));
  }
  return kept;
}

std::vector<RidgeCurve> extract_ridges(const TfrMatrix& tfr, const PeakConfig& cfg) {
  return prune_curves(trace_curves(detect_ridge_points(tfr, cfg), cfg), cfg);
}

}  // namespace chirptf
