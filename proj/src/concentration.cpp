#include "chirptf/concentration.hpp"

#include <cmath>
#include <string>

#include "chirptf/parallel.hpp"

namespace chirptf {

void CMConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("CMConfig: alpha must lie in (0, 1)");
  if (!(beta > 1.0)) throw ConfigError("CMConfig: beta must exceed 1");
  if (p_sub < 1) throw ConfigError("CMConfig: p_sub must be >= 1");
  if (candidates.empty()) throw ConfigError("CMConfig: no candidate sigmas");
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!(candidates[i] > 0.0)) throw ConfigError("CMConfig: candidates must be positive");
    if (i > 0 && !(candidates[i] > candidates[i - 1])) {
      throw ConfigError("CMConfig: candidates must be strictly increasing");
    }
  }
  truncation.validate();
}

CMConfig CMConfig::defaults(const SigmaBounds& bounds, std::size_t count) {
  bounds.validate();
  CMConfig cfg;
  cfg.candidates = log_spaced(bounds.sigma_min, bounds.sigma_max, count);
  return cfg;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0) {
    throw ConfigError("log_spaced: need 0 < lo <= hi and count >= 1");
  }
  if (count == 1 || hi == lo) return {lo};
  std::vector<double> out(count);
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo * std::exp(step * static_cast<double>(i));
  out.back() = hi;
  return out;
}

// ---------------------------------------------------------------- normalization

std::vector<double> normalize_plane(std::span<const double> magnitudes) {
  double total = 0.0;
  for (double v : magnitudes) total += std::abs(v);
  if (!(total > 0.0)) throw DegenerateInput("normalize_plane: all samples are zero");
  std::vector<double> out(magnitudes.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::abs(magnitudes[i]) / total;
  return out;
}

std::vector<double> normalize_plane(std::span<const cplx> values) {
  std::vector<double> mags(values.size());
  for (std::size_t i = 0; i < mags.size(); ++i) mags[i] = std::abs(values[i]);
  return normalize_plane(std::span<const double>(mags));
}

namespace {

void require_normalized(std::span<const double> v, const char* who) {
  if (v.empty()) throw DegenerateInput(std::string(who) + ": empty input");
  double total = 0.0;
  for (double x : v) total += x;
  if (std::abs(total - 1.0) > 1e-9) {
    throw DomainError(std::string(who) + ": input is not normalized (sum = " +
                      std::to_string(total) + ")");
  }
}

double power_sum(std::span<const double> v, double e) {
  double acc = 0.0;
  for (double x : v) {
    if (x > 0.0) acc += std::pow(x, e);
  }
  return acc;
}

}  // namespace

double cm1(std::span<const double> row, double alpha) {
  require_normalized(row, "cm1");
  return 1.0 / power_sum(row, alpha);
}

double cm2(std::span<const double> row, double beta) {
  require_normalized(row, "cm2");
  return power_sum(row, beta);
}

double cm3(std::span<const double> samples, const CMConfig& cfg) {
  require_normalized(samples, "cm3");
  return 1.0 / power_sum(samples, cfg.alpha);
}

double cm4(std::span<const double> samples, const CMConfig& cfg) {
  require_normalized(samples, "cm4");
  return power_sum(samples, cfg.beta);
}

double cm5(std::span<const double> samples, const CMConfig& cfg) {
  require_normalized(samples, "cm5");
  // Evaluated in the log domain: the alpha sum raised to 1/alpha overflows
  // quickly for large planes.
  const double log_beta = std::log(power_sum(samples, cfg.beta)) / cfg.beta;
  const double log_alpha = std::log(power_sum(samples, cfg.alpha)) / cfg.alpha;
  return std::exp(log_beta - log_alpha);
}

double evaluate(Measure measure, std::span<const double> samples, const CMConfig& cfg) {
  switch (measure) {
    case Measure::cm3:
      return cm3(samples, cfg);
    case Measure::cm4:
      return cm4(samples, cfg);
    case Measure::cm5:
      return cm5(samples, cfg);
  }
  return 0.0;
}

// ---------------------------------------------------------------- searches

GlobalSelection best_sigma_global(const ComplexSignal& signal, const CMConfig& cfg,
                                  Measure measure) {
  cfg.validate();
  GlobalSelection sel;
  sel.scores.assign(cfg.candidates.size(), 0.0);
  parallel_for(cfg.candidates.size(), [&](std::size_t i) {
    const RealMatrix lattice =
        stft_lattice_magnitude(signal, cfg.candidates[i], cfg.p_sub, cfg.truncation);
    const auto normalized = normalize_plane(std::span<const double>(lattice.data));
    sel.scores[i] = evaluate(measure, normalized, cfg);
  });
  // Index-ordered reduction; strict comparison keeps the smaller sigma on ties.
  sel.index = 0;
  for (std::size_t i = 1; i < sel.scores.size(); ++i) {
    if (sel.scores[i] > sel.scores[sel.index]) sel.index = i;
  }
  sel.sigma = cfg.candidates[sel.index];
  sel.tfr = stft(signal, sel.sigma, cfg.truncation);
  return sel;
}

PerFreqSelection best_sigma_per_freq(const ComplexSignal& signal, const CMConfig& cfg) {
  cfg.validate();
  const SampleGrid& g = signal.grid;
  const std::size_t rows = g.n_freq;
  std::vector<double> best_score(rows, -1.0);
  std::vector<std::size_t> best_index(rows, 0);
  std::vector<std::uint8_t> zero_row(rows, 1);

  std::vector<double> row(g.n_time);
  for (std::size_t i = 0; i < cfg.candidates.size(); ++i) {
    const TfrMatrix tfr = stft(signal, cfg.candidates[i], cfg.truncation);
    for (std::size_t n = 0; n < rows; ++n) {
      double total = 0.0;
      for (std::size_t m = 0; m < g.n_time; ++m) {
        row[m] = std::abs(tfr(m, n));
        total += row[m];
      }
      if (!(total > 0.0)) continue;
      zero_row[n] = 0;
      const double score = cm2(normalize_plane(std::span<const double>(row)), cfg.beta);
      if (score > best_score[n]) {
        best_score[n] = score;
        best_index[n] = i;
      }
    }
  }

  const SigmaBounds bounds{cfg.candidates.front(), cfg.candidates.back()};
  std::vector<double> sigma(rows);
  for (std::size_t n = 0; n < rows; ++n) {
    if (zero_row[n]) best_index[n] = cfg.candidates.size() - 1;
    sigma[n] = cfg.candidates[best_index[n]];
  }
  return {SigmaField::per_freq(std::move(sigma), bounds), std::move(best_index),
          std::move(zero_row)};
}

}  // namespace chirptf
