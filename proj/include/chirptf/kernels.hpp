#pragma once

#include <cstddef>

namespace chirptf {

/// Unit-area Gaussian analysis window of standard deviation sigma (seconds).
struct GaussianWindow {
  double sigma;

  explicit GaussianWindow(double s);
  double operator()(double t) const;
};

/// Tail threshold used to truncate window sums.
struct TruncationConfig {
  double eps = 1e-12;

  void validate() const;
};

// 2*sqrt(2 ln 2): FWHM of a unit-sigma Gaussian.
inline constexpr double kFwhmFactor = 2.3548200450309493;

/// (1/(sqrt(2 pi) sigma)) exp(-t^2 / (2 sigma^2)).  Throws DomainError for sigma <= 0.
double window_value(double sigma, double t);

double fwhm(double sigma);

struct Spreads {
  double delta_t_sq;  // s^2
  double delta_f_sq;  // Hz^2
  double gamma;       // height-to-width ratio of the Heisenberg box, Hz/s
};

/// Temporal/spectral spreads of the |w|^2 energy density and their ratio.
Spreads spreads(double sigma);

/// Smallest Q >= 0 with exp(-(Q dt)^2 / (2 sigma^2)) <= eps, capped at
/// n_fft/2 when n_fft > 0.
std::size_t truncation_radius(double sigma, double dt, const TruncationConfig& cfg,
                              std::size_t n_fft = 0);

/// Frequency-domain counterpart: smallest Q with exp(-2 pi^2 sigma^2 (Q df)^2) <= eps.
std::size_t spectral_truncation_radius(double sigma, double df, const TruncationConfig& cfg,
                                       std::size_t n_fft = 0);

}  // namespace chirptf
