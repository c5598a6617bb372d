#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace chirptf {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Error hierarchy. Everything thrown by the library derives from Error so the
// CLI can map failures onto exit codes in one place.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// A mathematical precondition was violated (sigma <= 0, ...).
struct DomainError : Error {
  using Error::Error;
};
// Inconsistent configuration (grid constraint, fast-path support, ...).
struct ConfigError : Error {
  using Error::Error;
};
// Input carries no usable information (all-zero plane, identical points, ...).
struct DegenerateInput : Error {
  using Error::Error;
};
// Signal, sigma field, or matrix does not conform to the grid it is used with.
struct GridMismatch : Error {
  using Error::Error;
};

/// Uniform time/frequency lattice shared by every transform.
///
/// Time sample m sits at t0 + m*dt, frequency row n at f0 + n*df.  The DFT
/// length used by the FFT paths is fft_len = round(1/(dt*df)).  Transform
/// phases are referenced to the first sample, so t0 only labels the axis.
struct SampleGrid {
  std::size_t n_time = 0;
  std::size_t n_freq = 0;
  double dt = 0.0;
  double df = 0.0;
  double t0 = 0.0;
  double f0 = 0.0;
  std::size_t fft_len = 0;

  double time_at(std::size_t m) const { return t0 + static_cast<double>(m) * dt; }
  double freq_at(std::size_t n) const { return f0 + static_cast<double>(n) * df; }
  // Nearest lattice index; may fall outside [0, n) for out-of-range inputs.
  long long time_index(double t) const;
  long long freq_index(double f) const;
  double duration() const { return static_cast<double>(n_time) * dt; }

  // True when f0 is an integer number of bins, i.e. rows map onto DFT bins.
  bool bin_aligned() const;
  // DFT bin (mod fft_len) of frequency row n.  Requires bin_aligned().
  std::size_t dft_bin(std::size_t n) const;

  bool operator==(const SampleGrid&) const = default;
};

/// Builds a grid and enforces |N*dt*df - 1| <= 1e-9 with N = round(1/(dt*df)).
/// n_freq = 0 selects the full DFT length.
SampleGrid make_grid(std::size_t n_time, double dt, double df, double t0 = 0.0,
                     double f0 = 0.0, std::size_t n_freq = 0);

struct ComplexSignal {
  std::vector<cplx> samples;
  SampleGrid grid;

  ComplexSignal() = default;
  ComplexSignal(std::vector<cplx> s, const SampleGrid& g);

  std::size_t size() const { return samples.size(); }
};

/// Complex time-frequency matrix, row-major by time: value(m, n) is stored at
/// m*n_freq + n so a time column is contiguous.
class TfrMatrix {
 public:
  TfrMatrix() = default;
  explicit TfrMatrix(const SampleGrid& grid);
  TfrMatrix(const SampleGrid& grid, std::vector<cplx> values);

  const SampleGrid& grid() const { return grid_; }
  std::size_t n_time() const { return grid_.n_time; }
  std::size_t n_freq() const { return grid_.n_freq; }

  cplx& operator()(std::size_t m, std::size_t n) { return values_[m * grid_.n_freq + n]; }
  const cplx& operator()(std::size_t m, std::size_t n) const {
    return values_[m * grid_.n_freq + n];
  }

  std::vector<cplx>& values() { return values_; }
  const std::vector<cplx>& values() const { return values_; }

  double max_abs() const;

  // One flag per time column: 1 when the analysis window reached past the
  // ends of the record (zero-extension was used there).
  std::vector<std::uint8_t> boundary;

 private:
  SampleGrid grid_;
  std::vector<cplx> values_;
};

/// Row-major (time-major) real matrix, same layout as TfrMatrix.
struct RealMatrix {
  std::size_t rows = 0;  // time
  std::size_t cols = 0;  // frequency
  std::vector<double> data;

  double& operator()(std::size_t m, std::size_t n) { return data[m * cols + n]; }
  double operator()(std::size_t m, std::size_t n) const { return data[m * cols + n]; }
};

/// 20*log10(|X|/max|X|) clamped below at floor_db (floor_db < 0).
RealMatrix magnitude_db(const TfrMatrix& tfr, double floor_db);

/// Largest |a - b| over all cells divided by max|b|; grids must agree.
double max_relative_error(const TfrMatrix& a, const TfrMatrix& b);

}  // namespace chirptf
