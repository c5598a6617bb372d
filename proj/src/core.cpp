#include "chirptf/core.hpp"

#include <algorithm>
#include <cmath>

namespace chirptf {

long long SampleGrid::time_index(double t) const {
  return std::llround((t - t0) / dt);
}

long long SampleGrid::freq_index(double f) const {
  return std::llround((f - f0) / df);
}

bool SampleGrid::bin_aligned() const {
  const double bins = f0 / df;
  return std::abs(bins - std::round(bins)) <= 1e-9 * std::max(1.0, std::abs(bins));
}

std::size_t SampleGrid::dft_bin(std::size_t n) const {
  const long long len = static_cast<long long>(fft_len);
  long long k = std::llround(f0 / df) + static_cast<long long>(n);
  k %= len;
  if (k < 0) k += len;
  return static_cast<std::size_t>(k);
}

SampleGrid make_grid(std::size_t n_time, double dt, double df, double t0, double f0,
                     std::size_t n_freq) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("make_grid: dt must be positive");
  if (!(df > 0.0) || !std::isfinite(df)) throw DomainError("make_grid: df must be positive");
  if (n_time < 1) throw DomainError("make_grid: n_time must be at least 1");
  const double prod = 1.0 / (dt * df);
  const double len = std::round(prod);
  if (len < 1.0 || std::abs(len * dt * df - 1.0) > 1e-9) {
    throw ConfigError("make_grid: 1/(dt*df) = " + std::to_string(prod) +
                      " is not an integer DFT length");
  }
  SampleGrid g;
  g.n_time = n_time;
  g.dt = dt;
  g.df = df;
  g.t0 = t0;
  g.f0 = f0;
  g.fft_len = static_cast<std::size_t>(len);
  g.n_freq = n_freq == 0 ? g.fft_len : n_freq;
  return g;
}

ComplexSignal::ComplexSignal(std::vector<cplx> s, const SampleGrid& g)
    : samples(std::move(s)), grid(g) {
  if (samples.size() != grid.n_time) {
    throw GridMismatch("signal length " + std::to_string(samples.size()) +
                       " does not match grid n_time " + std::to_string(grid.n_time));
  }
}

TfrMatrix::TfrMatrix(const SampleGrid& grid)
    : boundary(grid.n_time, 0), grid_(grid), values_(grid.n_time * grid.n_freq) {}

TfrMatrix::TfrMatrix(const SampleGrid& grid, std::vector<cplx> values)
    : boundary(grid.n_time, 0), grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n_time * grid_.n_freq) {
    throw GridMismatch("TFR payload size does not match grid dimensions");
  }
}

double TfrMatrix::max_abs() const {
  double peak = 0.0;
  for (const auto& v : values_) peak = std::max(peak, std::abs(v));
  return peak;
}

RealMatrix magnitude_db(const TfrMatrix& tfr, double floor_db) {
  if (!(floor_db < 0.0)) throw DomainError("magnitude_db: floor_db must be negative");
  RealMatrix out{tfr.n_time(), tfr.n_freq(),
                 std::vector<double>(tfr.values().size(), floor_db)};
  const double peak = tfr.max_abs();
  if (peak == 0.0) return out;
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    const double mag = std::abs(tfr.values()[i]);
    if (mag > 0.0) out.data[i] = std::max(floor_db, 20.0 * std::log10(mag / peak));
  }
  return out;
}

double max_relative_error(const TfrMatrix& a, const TfrMatrix& b) {
  if (!(a.grid() == b.grid())) throw GridMismatch("max_relative_error: grids differ");
  double err = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    err = std::max(err, std::abs(a.values()[i] - b.values()[i]));
  }
  const double ref = b.max_abs();
  return ref > 0.0 ? err / ref : err;
}

}  // namespace chirptf
