#include "chirptf/sigmafield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "chirptf/chirprate.hpp"
#include "chirptf/delaunay.hpp"
#include "chirptf/parallel.hpp"

namespace chirptf {

namespace {

void check_curves(const std::vector<RidgeCurve>& curves, const SampleGrid& grid) {
  if (curves.empty()) throw DegenerateInput("chirp field: no curves");
  for (const auto& c : curves) {
    if (c.chirp.size() != c.points.size()) {
      throw ConfigError("chirp field: curve has no chirp estimates");
    }
    for (const auto& p : c.points) {
      if (p.m >= grid.n_time || p.n >= grid.n_freq) {
        throw GridMismatch("chirp field: curve point outside the grid");
      }
    }
  }
}

// Infinite chirp rates (vertical ridge) are replaced by the steepest slope the
// grid can represent so the dense field stays finite.
std::vector<ChirpSite> collect_sites(const std::vector<RidgeCurve>& curves,
                                     const SampleGrid& grid) {
  const double cap = static_cast<double>(grid.n_freq) * grid.df / grid.dt;
  std::map<std::pair<std::size_t, std::size_t>, std::pair<double, std::size_t>> acc;
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      auto& slot = acc[{c.points[i].m, c.points[i].n}];
      slot.first += std::clamp(c.chirp[i], -cap, cap);
      ++slot.second;
    }
  }
  std::vector<ChirpSite> sites;
  sites.reserve(acc.size());
  for (const auto& [key, v] : acc) {
    sites.push_back({key.first, key.second, v.first / static_cast<double>(v.second)});
  }
  return sites;
}

// Nearest site in index units.  Sites are sorted by (m, n); ties go to the
// lower site index.
class NearestSite {
 public:
  explicit NearestSite(const std::vector<ChirpSite>& sites) : sites_(sites) {
    for (std::size_t i = 0; i < sites.size(); ++i) {
      if (cols_.empty() || cols_.back() != sites[i].m) {
        cols_.push_back(sites[i].m);
        start_.push_back(i);
      }
    }
    start_.push_back(sites.size());
  }

  std::size_t find(std::size_t m, std::size_t n) const {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    const auto visit = [&](std::size_t c) {
      const double dm = static_cast<double>(cols_[c]) - static_cast<double>(m);
      if (dm * dm > best_d) return false;
      const auto first = sites_.begin() + static_cast<std::ptrdiff_t>(start_[c]);
      const auto last = sites_.begin() + static_cast<std::ptrdiff_t>(start_[c + 1]);
      auto it = std::lower_bound(first, last, n,
                                 [](const ChirpSite& s, std::size_t v) { return s.n < v; });
      for (auto cand : {it, it == first ? last : it - 1}) {
        if (cand == last) continue;
        const double dn = static_cast<double>(cand->n) - static_cast<double>(n);
        const double d = dm * dm + dn * dn;
        const auto idx = static_cast<std::size_t>(cand - sites_.begin());
        if (d < best_d || (d == best_d && idx < best)) {
          best_d = d;
          best = idx;
        }
      }
      return true;
    };
    const auto pivot = static_cast<std::size_t>(
        std::lower_bound(cols_.begin(), cols_.end(), m) - cols_.begin());
    bool go_up = true, go_down = true;
    for (std::size_t k = 0; go_up || go_down; ++k) {
      if (go_up) go_up = pivot + k < cols_.size() && visit(pivot + k);
      if (go_down) go_down = pivot >= k + 1 && visit(pivot - k - 1);
    }
    return best;
  }

 private:
  const std::vector<ChirpSite>& sites_;
  std::vector<std::size_t> cols_;   // distinct m values, ascending
  std::vector<std::size_t> start_;  // first site of each column
};

// Piecewise-linear interpolation through (x_i, y_i), x strictly increasing,
// held constant beyond the ends.
double interp1(const std::vector<double>& x, const std::vector<double>& y, double q) {
  if (q <= x.front()) return y.front();
  if (q >= x.back()) return y.back();
  const auto hi = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), q) - x.begin());
  const std::size_t lo = hi - 1;
  const double w = (q - x[lo]) / (x[hi] - x[lo]);
  return y[lo] + w * (y[hi] - y[lo]);
}

void fill_collinear(const std::vector<ChirpSite>& sites, RealMatrix& out) {
  const bool vertical = std::all_of(sites.begin(), sites.end(),
                                    [&](const ChirpSite& s) { return s.m == sites.front().m; });
  std::vector<std::pair<double, double>> line;
  for (const auto& s : sites) {
    line.emplace_back(static_cast<double>(vertical ? s.n : s.m), s.chirp);
  }
  std::sort(line.begin(), line.end());
  std::vector<double> x, y;
  for (const auto& [a, b] : line) {
    x.push_back(a);
    y.push_back(b);
  }
  for (std::size_t m = 0; m < out.rows; ++m) {
    for (std::size_t n = 0; n < out.cols; ++n) {
      out(m, n) = interp1(x, y, static_cast<double>(vertical ? n : m));
    }
  }
}

// Linear interpolation inside every triangle using exact integer barycentric
// weights; returns the coverage mask.
std::vector<std::uint8_t> fill_triangles(const std::vector<ChirpSite>& sites,
                                         const std::vector<LatticeSite>& pts,
                                         const std::vector<Triangle>& tris, RealMatrix& out) {
  std::vector<std::uint8_t> covered(out.rows * out.cols, 0);
  for (const Triangle& t : tris) {
    const LatticeSite &a = pts[t[0]], &b = pts[t[1]], &c = pts[t[2]];
    const std::int64_t area = orient(a, b, c);
    const std::int64_t x0 = std::min({a.x, b.x, c.x}), x1 = std::max({a.x, b.x, c.x});
    const std::int64_t y0 = std::min({a.y, b.y, c.y}), y1 = std::max({a.y, b.y, c.y});
    for (std::int64_t x = x0; x <= x1; ++x) {
      for (std::int64_t y = y0; y <= y1; ++y) {
        const LatticeSite q{x, y};
        const std::int64_t wa = orient(b, c, q), wb = orient(c, a, q), wc = orient(a, b, q);
        if (wa < 0 || wb < 0 || wc < 0) continue;
        const auto m = static_cast<std::size_t>(x), n = static_cast<std::size_t>(y);
        out(m, n) = (static_cast<double>(wa) * sites[t[0]].chirp +
                     static_cast<double>(wb) * sites[t[1]].chirp +
                     static_cast<double>(wc) * sites[t[2]].chirp) /
                    static_cast<double>(area);
        covered[m * out.cols + n] = 1;
      }
    }
  }
  return covered;
}

}  // namespace

ChirpField interpolate_chirp_field(const std::vector<RidgeCurve>& curves, const SampleGrid& grid,
                                   Interpolation method) {
  check_curves(curves, grid);
  ChirpField field;
  field.on_ridge = collect_sites(curves, grid);
  const auto& sites = field.on_ridge;
  if (sites.empty()) throw DegenerateInput("chirp field: curves hold no points");
  RealMatrix& out = field.filled;
  out.rows = grid.n_time;
  out.cols = grid.n_freq;
  out.data.assign(out.rows * out.cols, 0.0);

  std::vector<std::uint8_t> covered(out.data.size(), 0);
  if (method == Interpolation::linear) {
    std::vector<LatticeSite> pts;
    pts.reserve(sites.size());
    for (const auto& s : sites) {
      pts.push_back({static_cast<std::int64_t>(s.m), static_cast<std::int64_t>(s.n)});
    }
    const auto tris = delaunay_triangulate(pts);
    if (tris.empty()) {
      fill_collinear(sites, out);
      covered.assign(covered.size(), 1);
    } else {
      covered = fill_triangles(sites, pts, tris, out);
    }
  }

  const NearestSite nearest(sites);
  parallel_for(out.rows, [&](std::size_t m) {
    for (std::size_t n = 0; n < out.cols; ++n) {
      if (!covered[m * out.cols + n]) out(m, n) = sites[nearest.find(m, n)].chirp;
    }
  });
  for (const auto& s : sites) out(s.m, s.n) = s.chirp;
  return field;
}

SigmaField sigma_field_full(const ChirpField& field, const SigmaBounds& bounds) {
  bounds.validate();
  const RealMatrix& f = field.filled;
  if (f.data.empty()) throw ConfigError("sigma_field_full: chirp field has not been interpolated");
  std::vector<double> sigma(f.data.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) sigma[i] = sigma_from_chirp(f.data[i], bounds);
  return SigmaField::full(f.rows, f.cols, std::move(sigma), bounds);
}

std::vector<double> average_chirp(const std::vector<RidgeCurve>& curves, const SampleGrid& grid,
                                  AverageAxis axis) {
  check_curves(curves, grid);
  const std::size_t len = axis == AverageAxis::time ? grid.n_time : grid.n_freq;
  std::vector<double> sum(len, 0.0);
  std::vector<std::size_t> count(len, 0);
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      const std::size_t k = axis == AverageAxis::time ? c.points[i].m : c.points[i].n;
      sum[k] += std::abs(c.chirp[i]);
      ++count[k];
    }
  }
  std::vector<std::size_t> filled;
  for (std::size_t k = 0; k < len; ++k) {
    if (count[k] > 0) filled.push_back(k);
  }
  if (filled.empty()) throw DegenerateInput("average_chirp: curves hold no points");
  std::vector<double> out(len);
  for (std::size_t k = 0; k < len; ++k) {
    if (count[k] > 0) {
      out[k] = sum[k] / static_cast<double>(count[k]);
      continue;
    }
    const auto it = std::lower_bound(filled.begin(), filled.end(), k);
    std::size_t src;
    if (it == filled.end()) src = filled.back();
    else if (it == filled.begin()) src = *it;
    else src = (k - *(it - 1) <= *it - k) ? *(it - 1) : *it;
    out[k] = sum[src] / static_cast<double>(count[src]);
  }
  return out;
}

AverageAxis choose_average_axis(const std::vector<RidgeCurve>& curves, const SampleGrid& grid) {
  check_curves(curves, grid);
  const auto median_cv = [&](AverageAxis axis) {
    // index -> per-curve (sum |f'|, count)
    std::map<std::size_t, std::map<std::size_t, std::pair<double, std::size_t>>> by_index;
    for (std::size_t ci = 0; ci < curves.size(); ++ci) {
      const auto& c = curves[ci];
      for (std::size_t i = 0; i < c.points.size(); ++i) {
        const std::size_t k = axis == AverageAxis::time ? c.points[i].m : c.points[i].n;
        auto& slot = by_index[k][ci];
        slot.first += std::abs(c.chirp[i]);
        ++slot.second;
      }
    }
    std::vector<double> cvs;
    for (const auto& [k, per_curve] : by_index) {
      if (per_curve.size() < 2) continue;
      std::vector<double> v;
      for (const auto& [ci, s] : per_curve) v.push_back(s.first / static_cast<double>(s.second));
      double mean = 0.0;
      for (double x : v) mean += x;
      mean /= static_cast<double>(v.size());
      double var = 0.0;
      for (double x : v) var += (x - mean) * (x - mean);
      var /= static_cast<double>(v.size());
      cvs.push_back(mean > 0.0 ? std::sqrt(var) / mean : 0.0);
    }
    if (cvs.empty()) return 0.0;
    std::sort(cvs.begin(), cvs.end());
    const std::size_t h = cvs.size() / 2;
    return cvs.size() % 2 ? cvs[h] : 0.5 * (cvs[h - 1] + cvs[h]);
  };
  return median_cv(AverageAxis::freq) < median_cv(AverageAxis::time) ? AverageAxis::freq
                                                                     : AverageAxis::time;
}

SigmaField averaged_sigma(const std::vector<RidgeCurve>& curves, const SampleGrid& grid,
                          AverageAxis axis, const SigmaBounds& bounds) {
  bounds.validate();
  const auto chirp = average_chirp(curves, grid, axis);
  std::vector<double> sigma(chirp.size());
  for (std::size_t k = 0; k < chirp.size(); ++k) sigma[k] = sigma_from_chirp(chirp[k], bounds);
  return axis == AverageAxis::time ? SigmaField::per_time(std::move(sigma), bounds)
                                   : SigmaField::per_freq(std::move(sigma), bounds);
}

}  // namespace chirptf
