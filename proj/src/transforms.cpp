#include "chirptf/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "chirptf/fft.hpp"
#include "chirptf/parallel.hpp"

namespace chirptf {

// ---------------------------------------------------------------- bounds

void SigmaBounds::validate() const {
  if (!(sigma_min > 0.0) || !(sigma_max >= sigma_min) || !std::isfinite(sigma_max)) {
    throw ConfigError("SigmaBounds: need 0 < sigma_min <= sigma_max < inf");
  }
}

double SigmaBounds::clamp(double sigma) const {
  return std::clamp(sigma, sigma_min, sigma_max);
}

SigmaBounds default_bounds(const SampleGrid& grid) {
  SigmaBounds b{2.0 * grid.dt / kFwhmFactor, grid.duration() / kFwhmFactor};
  if (b.sigma_max < b.sigma_min) b.sigma_max = b.sigma_min;
  return b;
}

// ---------------------------------------------------------------- SigmaField

namespace {

SigmaBounds bounds_of(const std::vector<double>& v) {
  if (v.empty()) throw ConfigError("SigmaField: no values");
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return {*lo, *hi};
}

}  // namespace

SigmaField::SigmaField(Kind kind, std::vector<double> values, SigmaBounds bounds,
                       std::size_t n_freq)
    : kind_(kind), values_(std::move(values)), bounds_(bounds), n_freq_(n_freq) {
  bounds_.validate();
  const double slack = 1e-12 * bounds_.sigma_max;
  for (double s : values_) {
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("SigmaField: sigma must be positive");
    if (s < bounds_.sigma_min - slack || s > bounds_.sigma_max + slack) {
      throw DomainError("SigmaField: value " + std::to_string(s) + " outside bounds");
    }
  }
}

SigmaField SigmaField::constant(double sigma) { return constant(sigma, {sigma, sigma}); }
SigmaField SigmaField::constant(double sigma, SigmaBounds bounds) {
  return SigmaField(Kind::constant, {sigma}, bounds, 0);
}
SigmaField SigmaField::per_time(std::vector<double> sigma) {
  auto b = bounds_of(sigma);
  return per_time(std::move(sigma), b);
}
SigmaField SigmaField::per_time(std::vector<double> sigma, SigmaBounds bounds) {
  return SigmaField(Kind::per_time, std::move(sigma), bounds, 0);
}
SigmaField SigmaField::per_freq(std::vector<double> sigma) {
  auto b = bounds_of(sigma);
  return per_freq(std::move(sigma), b);
}
SigmaField SigmaField::per_freq(std::vector<double> sigma, SigmaBounds bounds) {
  return SigmaField(Kind::per_freq, std::move(sigma), bounds, 0);
}
SigmaField SigmaField::full(std::size_t n_time, std::size_t n_freq, std::vector<double> sigma) {
  auto b = bounds_of(sigma);
  return full(n_time, n_freq, std::move(sigma), b);
}
SigmaField SigmaField::full(std::size_t n_time, std::size_t n_freq, std::vector<double> sigma,
                            SigmaBounds bounds) {
  if (sigma.size() != n_time * n_freq) throw GridMismatch("SigmaField::full: size mismatch");
  return SigmaField(Kind::full, std::move(sigma), bounds, n_freq);
}

double SigmaField::at(std::size_t m, std::size_t n) const {
  switch (kind_) {
    case Kind::constant:
      return values_[0];
    case Kind::per_time:
      return values_[m];
    case Kind::per_freq:
      return values_[n];
    case Kind::full:
      return values_[m * n_freq_ + n];
  }
  return values_[0];
}

double SigmaField::max_value() const { return *std::max_element(values_.begin(), values_.end()); }
double SigmaField::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

void SigmaField::check_conforms(const SampleGrid& grid) const {
  const std::size_t expected = [&]() -> std::size_t {
    switch (kind_) {
      case Kind::constant:
        return 1;
      case Kind::per_time:
        return grid.n_time;
      case Kind::per_freq:
        return grid.n_freq;
      case Kind::full:
        return grid.n_time * grid.n_freq;
    }
    return 0;
  }();
  if (values_.size() != expected || (kind_ == Kind::full && n_freq_ != grid.n_freq)) {
    throw GridMismatch("SigmaField does not conform to grid");
  }
}

// ---------------------------------------------------------------- helpers

namespace {

void check_signal(const ComplexSignal& signal) {
  if (signal.samples.size() != signal.grid.n_time) {
    throw GridMismatch("signal length does not match its grid");
  }
}

void require_bin_aligned(const SampleGrid& g, const char* who) {
  if (!g.bin_aligned()) {
    throw ConfigError(std::string(who) + ": f0 must be an integer multiple of df");
  }
}

// Per-row phasors exp(-j 2 pi f_n l dt) for l in [0, n_time).
class RowPhasors {
 public:
  explicit RowPhasors(const SampleGrid& g) : grid_(g) {
    if (g.bin_aligned()) {
      twiddle_.resize(g.fft_len);
      for (std::size_t j = 0; j < g.fft_len; ++j) {
        twiddle_[j] = std::polar(1.0, -2.0 * kPi * static_cast<double>(j) /
                                          static_cast<double>(g.fft_len));
      }
    }
  }

  void fill(std::size_t n, std::vector<cplx>& out) const {
    out.resize(grid_.n_time);
    if (!twiddle_.empty()) {
      const std::size_t k = grid_.dft_bin(n);
      const std::size_t len = grid_.fft_len;
      std::size_t idx = 0;
      for (std::size_t l = 0; l < grid_.n_time; ++l) {
        out[l] = twiddle_[idx];
        idx += k;
        if (idx >= len) idx %= len;
      }
      return;
    }
    const double f = grid_.freq_at(n);
    for (std::size_t l = 0; l < grid_.n_time; ++l) {
      double cycles = f * static_cast<double>(l) * grid_.dt;
      cycles -= std::floor(cycles);
      out[l] = std::polar(1.0, -2.0 * kPi * cycles);
    }
  }

 private:
  SampleGrid grid_;
  std::vector<cplx> twiddle_;
};

// w(q dt) dt for q = 0..Q
std::vector<double> half_window(double sigma, double dt, std::size_t q_max) {
  std::vector<double> w(q_max + 1);
  for (std::size_t q = 0; q <= q_max; ++q) {
    w[q] = window_value(sigma, static_cast<double>(q) * dt) * dt;
  }
  return w;
}

bool column_is_boundary(std::size_t m, std::size_t q, std::size_t n_time) {
  return m < q || m + q > n_time - 1;
}

}  // namespace

// ---------------------------------------------------------------- direct

TfrMatrix astft_direct(const ComplexSignal& signal, const SigmaField& sigma,
                       const TruncationConfig& cfg) {
  check_signal(signal);
  cfg.validate();
  const SampleGrid& g = signal.grid;
  sigma.check_conforms(g);
  TfrMatrix out(g);

  std::vector<std::vector<cplx>> phasors(g.n_freq);
  {
    RowPhasors rows(g);
    parallel_for(g.n_freq, [&](std::size_t n) { rows.fill(n, phasors[n]); });
  }

  const auto& x = signal.samples;
  const long long last = static_cast<long long>(g.n_time) - 1;
  parallel_for(g.n_time, [&](std::size_t m) {
    double cached_sigma = -1.0;
    std::size_t q = 0;
    std::size_t widest = 0;
    std::vector<double> w;
    for (std::size_t n = 0; n < g.n_freq; ++n) {
      const double s = sigma.at(m, n);
      if (s != cached_sigma) {
        cached_sigma = s;
        q = truncation_radius(s, g.dt, cfg);
        w = half_window(s, g.dt, std::min<std::size_t>(q, g.n_time));
        widest = std::max(widest, q);
      }
      const long long mm = static_cast<long long>(m);
      const long long lo = std::max<long long>(0, mm - static_cast<long long>(q));
      const long long hi = std::min<long long>(last, mm + static_cast<long long>(q));
      const auto& ph = phasors[n];
      cplx acc{0.0, 0.0};
      for (long long l = lo; l <= hi; ++l) {
        const auto d = static_cast<std::size_t>(std::llabs(mm - l));
        acc += x[static_cast<std::size_t>(l)] * ph[static_cast<std::size_t>(l)] * w[d];
      }
      out(m, n) = acc;
    }
    out.boundary[m] = column_is_boundary(m, widest, g.n_time) ? 1 : 0;
  });
  return out;
}

// ---------------------------------------------------------------- time path

namespace {

// Windowed segment for time index m folded into a length-N buffer and
// transformed.  buf[k] then holds X[m, bin k] for every DFT bin k.
void time_column(const ComplexSignal& signal, double sigma, std::size_t m,
                 const TruncationConfig& cfg, const Fft& fft, std::vector<cplx>& buf,
                 std::size_t& radius) {
  const SampleGrid& g = signal.grid;
  const std::size_t len = g.fft_len;
  const std::size_t q = truncation_radius(sigma, g.dt, cfg);
  radius = q;
  const std::size_t lo = m > q ? m - q : 0;
  const std::size_t hi = std::min(g.n_time - 1, m + q);
  if (hi - lo + 1 > len) {
    throw ConfigError("astft_fft_time: window support at m=" + std::to_string(m) + " spans " +
                      std::to_string(hi - lo + 1) + " samples, more than N=" +
                      std::to_string(len));
  }
  std::fill(buf.begin(), buf.end(), cplx{0.0, 0.0});
  const auto w = half_window(sigma, g.dt, std::max(m - lo, hi - m));
  for (std::size_t l = lo; l <= hi; ++l) {
    const std::size_t d = l > m ? l - m : m - l;
    buf[l % len] += signal.samples[l] * w[d];
  }
  fft.forward(buf);
}

bool fits_time_path(const SampleGrid& g, double sigma_max, const TruncationConfig& cfg) {
  const std::size_t q = truncation_radius(sigma_max, g.dt, cfg);
  return std::min(2 * q + 1, g.n_time) <= g.fft_len;
}

}  // namespace

TfrMatrix astft_fft_time(const ComplexSignal& signal, const SigmaField& sigma,
                         const TruncationConfig& cfg) {
  check_signal(signal);
  cfg.validate();
  const SampleGrid& g = signal.grid;
  sigma.check_conforms(g);
  if (sigma.kind() != SigmaField::Kind::constant && sigma.kind() != SigmaField::Kind::per_time) {
    throw ConfigError("astft_fft_time: sigma must not vary with frequency");
  }
  require_bin_aligned(g, "astft_fft_time");
  TfrMatrix out(g);
  const Fft fft(g.fft_len);
  std::vector<std::size_t> bins(g.n_freq);
  for (std::size_t n = 0; n < g.n_freq; ++n) bins[n] = g.dft_bin(n);

  parallel_for(g.n_time, [&](std::size_t m) {
    std::vector<cplx> buf(g.fft_len);
    std::size_t q = 0;
    time_column(signal, sigma.at(m, 0), m, cfg, fft, buf, q);
    for (std::size_t n = 0; n < g.n_freq; ++n) out(m, n) = buf[bins[n]];
    out.boundary[m] = column_is_boundary(m, q, g.n_time) ? 1 : 0;
  });
  return out;
}

// ---------------------------------------------------------------- frequency path

namespace {

// Oversampling factor R so that the circular window implied by sampling the
// spectrum at df/R has period R*N >= n_time + Q(sigma_max): images of the
// window then carry less than eps of the peak over the record.
std::size_t oversampling(const SampleGrid& g, double sigma_max, const TruncationConfig& cfg) {
  const std::size_t q = truncation_radius(sigma_max, g.dt, cfg);
  const std::size_t need = g.n_time + q + 1;
  std::size_t r = 1;
  while (r * g.fft_len < need) r *= 2;
  return r;
}

// Spectral window exp(-2 pi^2 sigma^2 (k d)^2) for the offsets actually used.
// When the support would exceed one period the Gaussian is periodized so the
// sum over one period equals the sum over all integers.
struct SpectralTaps {
  std::vector<long long> offset;
  std::vector<double> weight;
};

SpectralTaps spectral_taps(double sigma, double d, std::size_t period,
                           const TruncationConfig& cfg) {
  SpectralTaps taps;
  const std::size_t q = spectral_truncation_radius(sigma, d, cfg);
  const auto gauss = [&](double k) {
    const double f = k * d;
    return std::exp(-2.0 * kPi * kPi * sigma * sigma * f * f);
  };
  if (2 * q + 1 <= period) {
    const auto qq = static_cast<long long>(q);
    for (long long k = -qq; k <= qq; ++k) {
      taps.offset.push_back(k);
      taps.weight.push_back(gauss(static_cast<double>(k)));
    }
    return taps;
  }
  const auto p = static_cast<long long>(period);
  const long long images = static_cast<long long>(q / period) + 2;
  for (long long k = -(p / 2); k < p - p / 2; ++k) {
    double acc = 0.0;
    for (long long r = -images; r <= images; ++r) acc += gauss(static_cast<double>(k + r * p));
    taps.offset.push_back(k);
    taps.weight.push_back(acc);
  }
  return taps;
}

}  // namespace

TfrMatrix astft_fft_freq(const ComplexSignal& signal, const SigmaField& sigma,
                         const TruncationConfig& cfg) {
  check_signal(signal);
  cfg.validate();
  const SampleGrid& g = signal.grid;
  sigma.check_conforms(g);
  if (sigma.kind() != SigmaField::Kind::constant && sigma.kind() != SigmaField::Kind::per_freq) {
    throw ConfigError("astft_fft_freq: sigma must not vary with time");
  }
  require_bin_aligned(g, "astft_fft_freq");

  const std::size_t r = oversampling(g, sigma.max_value(), cfg);
  const std::size_t len = r * g.fft_len;
  const auto plen = static_cast<long long>(len);
  const double d = g.df / static_cast<double>(r);
  const Fft fft(len);

  std::vector<cplx> spectrum(len, cplx{0.0, 0.0});
  for (std::size_t l = 0; l < g.n_time; ++l) spectrum[l] = signal.samples[l] * g.dt;
  fft.forward(spectrum);

  TfrMatrix out(g);
  std::vector<std::size_t> col_radius(g.n_freq);
  parallel_for(g.n_freq, [&](std::size_t n) {
    const double s = sigma.at(0, n);
    const SpectralTaps taps = spectral_taps(s, d, len, cfg);
    std::vector<cplx> buf(len, cplx{0.0, 0.0});
    const auto shift = static_cast<long long>(g.dft_bin(n) * r);
    for (std::size_t i = 0; i < taps.offset.size(); ++i) {
      const long long k = taps.offset[i];
      const auto src = static_cast<std::size_t>(((k + shift) % plen + plen) % plen);
      const auto dst = static_cast<std::size_t>((k % plen + plen) % plen);
      buf[dst] += spectrum[src] * taps.weight[i];
    }
    fft.inverse(buf);
    for (std::size_t m = 0; m < g.n_time; ++m) out(m, n) = buf[m] * d;
    col_radius[n] = truncation_radius(s, g.dt, cfg);
  });
  const std::size_t widest = *std::max_element(col_radius.begin(), col_radius.end());
  for (std::size_t m = 0; m < g.n_time; ++m) {
    out.boundary[m] = column_is_boundary(m, widest, g.n_time) ? 1 : 0;
  }
  return out;
}

// ---------------------------------------------------------------- conveniences

TfrMatrix astft(const ComplexSignal& signal, const SigmaField& sigma, FastPath path,
                const TruncationConfig& cfg) {
  using Kind = SigmaField::Kind;
  switch (path) {
    case FastPath::direct:
      return astft_direct(signal, sigma, cfg);
    case FastPath::fft_time:
      return astft_fft_time(signal, sigma, cfg);
    case FastPath::fft_freq:
      return astft_fft_freq(signal, sigma, cfg);
    case FastPath::automatic:
      break;
  }
  if (!signal.grid.bin_aligned() || sigma.kind() == Kind::full) {
    return astft_direct(signal, sigma, cfg);
  }
  if (sigma.kind() != Kind::per_freq && fits_time_path(signal.grid, sigma.max_value(), cfg)) {
    return astft_fft_time(signal, sigma, cfg);
  }
  if (sigma.kind() != Kind::per_time) return astft_fft_freq(signal, sigma, cfg);
  return astft_direct(signal, sigma, cfg);
}

TfrMatrix stft(const ComplexSignal& signal, double sigma, const TruncationConfig& cfg) {
  return astft(signal, SigmaField::constant(sigma), FastPath::automatic, cfg);
}

RealMatrix stft_lattice_magnitude(const ComplexSignal& signal, double sigma, std::size_t stride,
                                  const TruncationConfig& cfg) {
  check_signal(signal);
  if (stride == 0) throw ConfigError("stft_lattice_magnitude: stride must be >= 1");
  const SampleGrid& g = signal.grid;
  const std::size_t rows = (g.n_time + stride - 1) / stride;
  const std::size_t cols = (g.n_freq + stride - 1) / stride;
  RealMatrix out{rows, cols, std::vector<double>(rows * cols, 0.0)};

  if (g.bin_aligned() && fits_time_path(g, sigma, cfg)) {
    const Fft fft(g.fft_len);
    parallel_for(rows, [&](std::size_t i) {
      std::vector<cplx> buf(g.fft_len);
      std::size_t q = 0;
      time_column(signal, sigma, i * stride, cfg, fft, buf, q);
      for (std::size_t k = 0; k < cols; ++k) out(i, k) = std::abs(buf[g.dft_bin(k * stride)]);
    });
    return out;
  }
  // Window longer than the DFT: fall back to the full transform and subsample.
  const TfrMatrix full = stft(signal, sigma, cfg);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < cols; ++k) out(i, k) = std::abs(full(i * stride, k * stride));
  }
  return out;
}

TfrMatrix s_transform(const ComplexSignal& signal, double p, const TruncationConfig& cfg) {
  check_signal(signal);
  if (!(p > 0.0)) throw DomainError("s_transform: p must be positive");
  const SampleGrid& g = signal.grid;
  std::vector<double> sig(g.n_freq, 0.0);
  std::vector<std::size_t> dc_rows;
  double largest = 0.0;
  for (std::size_t n = 0; n < g.n_freq; ++n) {
    const double f = std::abs(g.freq_at(n));
    if (f < 1e-9 * g.df) {
      dc_rows.push_back(n);
      continue;
    }
    sig[n] = 1.0 / std::pow(f, p);
    largest = std::max(largest, sig[n]);
  }
  if (largest == 0.0) largest = 1.0;
  for (std::size_t n : dc_rows) sig[n] = largest;  // placeholder, overwritten below
  TfrMatrix out = astft_fft_freq(signal, SigmaField::per_freq(std::move(sig)), cfg);

  cplx mean{0.0, 0.0};
  for (const auto& v : signal.samples) mean += v;
  if (!signal.samples.empty()) mean /= static_cast<double>(signal.samples.size());
  for (std::size_t n : dc_rows) {
    for (std::size_t m = 0; m < g.n_time; ++m) out(m, n) = mean;
  }
  return out;
}

}  // namespace chirptf
