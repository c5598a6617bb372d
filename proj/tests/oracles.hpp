#pragma once

// Test-side reference computations, written independently of the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "chirptf/core.hpp"
#include "chirptf/transforms.hpp"

namespace oracle {

using chirptf::cplx;

inline constexpr double pi = 3.14159265358979323846;

inline std::vector<cplx> random_samples(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cplx> x(n);
  for (auto& v : x) v = {g(rng), g(rng)};
  return x;
}

inline double gauss(double sigma, double t) {
  return std::exp(-t * t / (2.0 * sigma * sigma)) / (std::sqrt(2.0 * pi) * sigma);
}

// Untruncated windowed sum over the whole record at one cell.
inline cplx cell(const chirptf::ComplexSignal& x, double sigma, std::size_t m, std::size_t n) {
  const auto& g = x.grid;
  const double f = g.f0 + static_cast<double>(n) * g.df;
  cplx acc{0.0, 0.0};
  for (std::size_t l = 0; l < x.size(); ++l) {
    const double tl = static_cast<double>(l) * g.dt;
    const double tau = (static_cast<double>(m) - static_cast<double>(l)) * g.dt;
    acc += x.samples[l] * gauss(sigma, tau) * std::polar(1.0, -2.0 * pi * f * tl);
  }
  return acc * g.dt;
}

// Full-plane reference for any sigma field.
inline chirptf::TfrMatrix plane(const chirptf::ComplexSignal& x, const chirptf::SigmaField& s) {
  chirptf::TfrMatrix out(x.grid);
  for (std::size_t m = 0; m < x.grid.n_time; ++m) {
    for (std::size_t n = 0; n < x.grid.n_freq; ++n) out(m, n) = cell(x, s.at(m, n), m, n);
  }
  return out;
}

inline double max_rel(const chirptf::TfrMatrix& a, const chirptf::TfrMatrix& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    num = std::max(num, std::abs(a.values()[i] - b.values()[i]));
    den = std::max(den, std::abs(b.values()[i]));
  }
  return num / den;
}

}  // namespace oracle
