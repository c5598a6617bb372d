#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "chirptf/core.hpp"
#include "chirptf/transforms.hpp"

namespace chirptf {

/// Parameters of the concentration-measure window search.
struct CMConfig {
  double alpha = 0.1;
  double beta = 5.0;
  std::size_t p_sub = 4;          // lattice stride for the whole-plane search
  std::vector<double> candidates;  // strictly increasing sigma values (s)
  TruncationConfig truncation;

  void validate() const;

  /// alpha=0.1, beta=5, p=4 and `count` log-spaced candidates over `bounds`.
  static CMConfig defaults(const SigmaBounds& bounds, std::size_t count = 64);
};

/// `count` values log-spaced over [lo, hi], endpoints included.
std::vector<double> log_spaced(double lo, double hi, std::size_t count);

enum class Measure { cm3, cm4, cm5 };

/// |X| / sum |X| over the given set.  Throws DegenerateInput when all are zero.
std::vector<double> normalize_plane(std::span<const double> magnitudes);
std::vector<double> normalize_plane(std::span<const cplx> values);

// Row measures (input normalized over the row; throws DomainError otherwise).
double cm1(std::span<const double> row, double alpha);
double cm2(std::span<const double> row, double beta);

// Lattice measures (input normalized over the sampled lattice).
double cm3(std::span<const double> samples, const CMConfig& cfg);
double cm4(std::span<const double> samples, const CMConfig& cfg);
double cm5(std::span<const double> samples, const CMConfig& cfg);
double evaluate(Measure measure, std::span<const double> samples, const CMConfig& cfg);

struct GlobalSelection {
  std::size_t index = 0;       // into cfg.candidates
  double sigma = 0.0;
  std::vector<double> scores;  // measure per candidate
  TfrMatrix tfr;               // full-plane STFT at the selected sigma
};

/// Whole-plane window search: the constant-sigma STFT is evaluated only on
/// the stride-p lattice for every candidate and the measure maximized.  Ties
/// go to the smaller sigma.
GlobalSelection best_sigma_global(const ComplexSignal& signal, const CMConfig& cfg,
                                  Measure measure = Measure::cm5);

struct PerFreqSelection {
  SigmaField field;                  // per_freq
  std::vector<std::size_t> index;    // selected candidate per row
  std::vector<std::uint8_t> zero_row;  // 1 where the row had no energy (sigma_max assigned)
};

/// Per-row search: each frequency row takes the candidate maximizing CM2
/// over that row.
PerFreqSelection best_sigma_per_freq(const ComplexSignal& signal, const CMConfig& cfg);

}  // namespace chirptf
