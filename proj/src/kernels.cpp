#include "chirptf/kernels.hpp"

#include <cmath>
#include <limits>

#include "chirptf/core.hpp"

namespace chirptf {

namespace {

void require_sigma(double sigma, const char* who) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError(std::string(who) + ": sigma must be positive and finite");
  }
}

// Smallest integer Q >= 0 with exp(-(Q*scale)^2) <= eps.
std::size_t smallest_radius(double scale, double eps, std::size_t n_fft) {
  const std::size_t cap =
      n_fft > 0 ? n_fft / 2 : std::numeric_limits<std::size_t>::max();
  if (eps >= 1.0) return 0;
  const double bound = std::sqrt(-std::log(eps)) / scale;
  if (!std::isfinite(bound) || bound >= static_cast<double>(cap)) return cap;
  auto q = static_cast<std::size_t>(std::ceil(bound));
  // ceil() of a value that is an exact integer up to roundoff can overshoot by one.
  if (q > 0) {
    const double x = static_cast<double>(q - 1) * scale;
    if (std::exp(-x * x) <= eps) --q;
  }
  return q < cap ? q : cap;
}

}  // namespace

GaussianWindow::GaussianWindow(double s) : sigma(s) { require_sigma(s, "GaussianWindow"); }

double GaussianWindow::operator()(double t) const { return window_value(sigma, t); }

void TruncationConfig::validate() const {
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("TruncationConfig: eps must lie in (0, 1)");
}

double window_value(double sigma, double t) {
  require_sigma(sigma, "window_value");
  return std::exp(-t * t / (2.0 * sigma * sigma)) / (std::sqrt(2.0 * kPi) * sigma);
}

double fwhm(double sigma) {
  require_sigma(sigma, "fwhm");
  return kFwhmFactor * sigma;
}

Spreads spreads(double sigma) {
  require_sigma(sigma, "spreads");
  const double s2 = sigma * sigma;
  return {s2 / 2.0, 1.0 / (8.0 * kPi * kPi * s2), 1.0 / (2.0 * kPi * s2)};
}

std::size_t truncation_radius(double sigma, double dt, const TruncationConfig& cfg,
                              std::size_t n_fft) {
  require_sigma(sigma, "truncation_radius");
  if (!(dt > 0.0)) throw DomainError("truncation_radius: dt must be positive");
  // exp(-(Q dt)^2/(2 sigma^2)) = exp(-(Q * dt/(sqrt2 sigma))^2)
  return smallest_radius(dt / (std::sqrt(2.0) * sigma), cfg.eps, n_fft);
}

std::size_t spectral_truncation_radius(double sigma, double df, const TruncationConfig& cfg,
                                       std::size_t n_fft) {
  require_sigma(sigma, "spectral_truncation_radius");
  if (!(df > 0.0)) throw DomainError("spectral_truncation_radius: df must be positive");
  return smallest_radius(std::sqrt(2.0) * kPi * sigma * df, cfg.eps, n_fft);
}

}  // namespace chirptf
