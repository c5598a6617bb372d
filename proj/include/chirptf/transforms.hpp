#pragma once

#include <cstddef>
#include <vector>

#include "chirptf/core.hpp"
#include "chirptf/kernels.hpp"

namespace chirptf {

/// Lower and upper limits on the window standard deviation (seconds).
struct SigmaBounds {
  double sigma_min = 0.0;
  double sigma_max = 0.0;

  void validate() const;
  double clamp(double sigma) const;
};

/// Default bounds for a grid: the FWHM of sigma_max spans the record and the
/// FWHM of sigma_min spans two samples.
SigmaBounds default_bounds(const SampleGrid& grid);

/// Gaussian standard deviation over the time-frequency lattice.
///
/// Four shapes are supported.  The FFT fast paths require the field to be
/// independent of frequency (constant / per_time) or of time (constant /
/// per_freq); the direct summation accepts any kind.
class SigmaField {
 public:
  enum class Kind { constant, per_time, per_freq, full };

  SigmaField() = default;  // empty placeholder; assign before use

  static SigmaField constant(double sigma);
  static SigmaField constant(double sigma, SigmaBounds bounds);
  static SigmaField per_time(std::vector<double> sigma);
  static SigmaField per_time(std::vector<double> sigma, SigmaBounds bounds);
  static SigmaField per_freq(std::vector<double> sigma);
  static SigmaField per_freq(std::vector<double> sigma, SigmaBounds bounds);
  // values row-major by time (m * n_freq + n)
  static SigmaField full(std::size_t n_time, std::size_t n_freq, std::vector<double> sigma);
  static SigmaField full(std::size_t n_time, std::size_t n_freq, std::vector<double> sigma,
                         SigmaBounds bounds);

  Kind kind() const { return kind_; }
  const std::vector<double>& values() const { return values_; }
  const SigmaBounds& bounds() const { return bounds_; }
  double at(std::size_t m, std::size_t n) const;
  double max_value() const;
  double min_value() const;

  /// Throws GridMismatch unless the field's dimensions fit the grid.
  void check_conforms(const SampleGrid& grid) const;

 private:
  SigmaField(Kind kind, std::vector<double> values, SigmaBounds bounds, std::size_t n_freq);

  Kind kind_ = Kind::constant;
  std::vector<double> values_;
  SigmaBounds bounds_;
  std::size_t n_freq_ = 0;  // only meaningful for Kind::full
};

/// Reference implementation: explicit truncated summation at every (m, n),
///   X[m,n] = sum_l x[l] w_{sigma[m,n]}((m-l) dt) exp(-j 2 pi f_n l dt) dt,
/// with the record zero-extended outside [0, n_time).  Cost O(n_time n_freq Q).
TfrMatrix astft_direct(const ComplexSignal& signal, const SigmaField& sigma,
                       const TruncationConfig& cfg = {});

/// Time-domain fast path: one length-N DFT per time index.  sigma must be
/// constant or per_time.  The grid must be bin aligned and the clipped window
/// support at every m must fit in N samples (ConfigError names the first m
/// that does not).
TfrMatrix astft_fft_time(const ComplexSignal& signal, const SigmaField& sigma,
                         const TruncationConfig& cfg = {});

/// Frequency-domain fast path: Gaussian-weighted spectrum shift and one
/// inverse DFT per frequency row.  sigma must be constant or per_freq.  The
/// spectrum is computed on a zero-padded length R*N so the implied circular
/// window never wraps onto the record; results match astft_direct.
TfrMatrix astft_fft_freq(const ComplexSignal& signal, const SigmaField& sigma,
                         const TruncationConfig& cfg = {});

enum class FastPath { direct, fft_time, fft_freq, automatic };

/// Dispatches on the field shape.  `automatic` takes the time path for
/// constant/per_time fields whose windows fit the DFT, the frequency path for
/// per_freq (and the remaining constant) fields, and the direct summation for
/// full fields or unaligned grids.
TfrMatrix astft(const ComplexSignal& signal, const SigmaField& sigma, FastPath path,
                const TruncationConfig& cfg = {});

/// Constant-sigma STFT through whichever fast path applies.
TfrMatrix stft(const ComplexSignal& signal, double sigma, const TruncationConfig& cfg = {});

/// |X| of the constant-sigma STFT at lattice points (p*i, p*k) only, returned as
/// a ceil(n_time/p) x ceil(n_freq/p) matrix.  Used by the concentration search.
RealMatrix stft_lattice_magnitude(const ComplexSignal& signal, double sigma, std::size_t stride,
                                  const TruncationConfig& cfg = {});

/// Modified S-transform with sigma(f) = 1/|f|^p.  The f = 0 row holds the
/// signal mean at every time.
TfrMatrix s_transform(const ComplexSignal& signal, double p, const TruncationConfig& cfg = {});

}  // namespace chirptf
