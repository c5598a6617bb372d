#include "chirptf/eval.hpp"

#include <cmath>
#include <limits>

#include "chirptf/concentration.hpp"

namespace chirptf {

double analytic_lfm_envelope(double a, double b, double sigma, double t, double f) {
  if (!(sigma > 0.0)) throw DomainError("analytic_lfm_envelope: sigma must be positive");
  const double s2 = sigma * sigma;
  const double k = 1.0 + 4.0 * kPi * kPi * s2 * s2 * a * a;
  const double df = f - b - a * t;
  return std::pow(k, -0.25) * std::exp(-2.0 * kPi * kPi * s2 * df * df / k);
}

double envelope_variance(double sigma_sq, double a) {
  if (!(sigma_sq > 0.0)) throw DomainError("envelope_variance: sigma^2 must be positive");
  return (1.0 + 4.0 * kPi * kPi * a * a * sigma_sq * sigma_sq) / (4.0 * kPi * kPi * sigma_sq);
}

double concentration_score(const TfrMatrix& tfr, double beta) {
  const auto normalized = normalize_plane(std::span<const cplx>(tfr.values()));
  double acc = 0.0;
  for (double v : normalized) {
    if (v > 0.0) acc += std::pow(v, beta);
  }
  return acc;
}

double if_mse(std::span<const double> estimated, std::span<const double> truth) {
  if (estimated.size() != truth.size()) throw GridMismatch("if_mse: length mismatch");
  if (estimated.empty()) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < estimated.size(); ++i) {
    const double d = estimated[i] - truth[i];
    acc += d * d;
  }
  return acc / static_cast<double>(estimated.size());
}

std::string method_name(Method m) {
  switch (m) {
    case Method::astft_tf:
      return "astft-tf";
    case Method::astft_tf_fast:
      return "astft-tf-fast";
    case Method::astft_t:
      return "astft-t";
    case Method::astft_f:
      return "astft-f";
    case Method::stft:
      return "stft";
    case Method::s_transform:
      return "s-transform";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::astft_tf, Method::astft_tf_fast, Method::astft_t, Method::astft_f,
                   Method::stft, Method::s_transform}) {
    if (method_name(m) == name) return m;
  }
  throw ConfigError("unknown method '" + name + "'");
}

PipelineResult run_method(Method method, const ComplexSignal& signal, const PipelineConfig& cfg,
                          const MethodParams& params) {
  switch (method) {
    case Method::astft_tf:
      return run_astft_tf(signal, cfg);
    case Method::astft_tf_fast:
      return run_astft_tf_fast(signal, cfg);
    case Method::astft_t: {
      PipelineConfig c = cfg;
      c.quasi.xi = params.xi;
      return run_astft_t(signal, c);
    }
    case Method::astft_f:
      return run_astft_f(signal, cfg);
    case Method::stft: {
      PipelineResult r;
      if (params.sigma > 0.0) {
        r.pilot_sigma = params.sigma;
      } else {
        cfg.validate();
        r.pilot_sigma = best_sigma_global(signal, cfg.cm, Measure::cm5).sigma;
      }
      r.sigma = SigmaField::constant(r.pilot_sigma);
      r.tfr = stft(signal, r.pilot_sigma, cfg.cm.truncation);
      return r;
    }
    case Method::s_transform: {
      PipelineResult r;
      r.tfr = s_transform(signal, params.p, cfg.cm.truncation);
      return r;
    }
  }
  throw ConfigError("run_method: unknown method");
}

std::vector<std::vector<double>> estimate_if(const TfrMatrix& tfr, const SignalSpec& spec,
                                             std::size_t components) {
  const SampleGrid& g = tfr.grid();
  PeakConfig peaks;
  peaks.max_components = components;
  const RidgeColumns cols = detect_ridge_points(tfr, peaks);
  std::vector<std::vector<double>> out(components, std::vector<double>(g.n_time, 0.0));
  for (std::size_t m = 0; m < g.n_time; ++m) {
    std::size_t arg = 0;
    for (std::size_t n = 1; n < g.n_freq; ++n) {
      if (std::abs(tfr(m, n)) > std::abs(tfr(m, arg))) arg = n;
    }
    const auto truth = analytic_if(spec, g.time_at(m));
    for (std::size_t k = 0; k < components; ++k) {
      double est = g.freq_at(arg);
      if (components > 1 && !cols[m].empty()) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : cols[m]) {
          const double d = std::abs(g.freq_at(p.n) - truth[k].f_inst);
          if (d < best) {
            best = d;
            est = g.freq_at(p.n);
          }
        }
      }
      out[k][m] = est;
    }
  }
  return out;
}

namespace {

// Per-column chirp estimate for each component: the chirp of the curve point
// nearest the analytic IF in that column (0 where no curve covers it).
std::vector<std::vector<double>> estimate_chirp(const TfrMatrix& tfr, const SignalSpec& spec,
                                                const PipelineConfig& cfg) {
  const SampleGrid& g = tfr.grid();
  const std::size_t K = spec.components.size();
  std::vector<RidgeCurve> curves;
  for (auto& c : extract_ridges(tfr, cfg.peaks)) {
    if (c.points.size() >= 2) curves.push_back(chirp_along_curve(std::move(c), g, cfg.pca));
  }
  std::vector<std::vector<double>> out(K, std::vector<double>(g.n_time, 0.0));
  std::vector<std::vector<double>> dist(K, std::vector<double>(
                                               g.n_time, std::numeric_limits<double>::infinity()));
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      const auto& p = c.points[i];
      const auto truth = analytic_if(spec, g.time_at(p.m));
      for (std::size_t k = 0; k < K; ++k) {
        const double d = std::abs(p.freq - truth[k].f_inst);
        if (d < dist[k][p.m]) {
          dist[k][p.m] = d;
          out[k][p.m] = c.chirp[i];
        }
      }
    }
  }
  return out;
}

}  // namespace

MseReport run_mse_bench(const MseConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("mse bench: trials must be >= 1");
  if (cfg.methods.empty()) throw ConfigError("mse bench: no methods");
  cfg.spec.validate();
  const SampleGrid& g = cfg.grid;
  const std::size_t K = cfg.spec.components.size();

  MseReport rep;
  rep.snr_db = cfg.snr_db;
  rep.methods = cfg.methods;
  rep.trials = cfg.trials;
  for (std::size_t t = 0; t < cfg.trials; ++t) rep.seeds.push_back(cfg.seed_base + t);
  rep.mse.assign(cfg.methods.size(), std::vector<double>(cfg.snr_db.size(), 0.0));

  std::vector<std::vector<double>> truth(K, std::vector<double>(g.n_time));
  for (std::size_t m = 0; m < g.n_time; ++m) {
    const auto fi = analytic_if(cfg.spec, g.time_at(m));
    for (std::size_t k = 0; k < K; ++k) {
      truth[k][m] = cfg.target == MseTarget::chirp_rate ? fi[k].f_prime : fi[k].f_inst;
    }
  }

  PipelineConfig pcfg = PipelineConfig::defaults(g);
  pcfg.peaks.max_components = K;
  const ComplexSignal clean = synthesize(cfg.spec, g);

  for (std::size_t s = 0; s < cfg.snr_db.size(); ++s) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const ComplexSignal noisy = add_awgn(clean, {cfg.snr_db[s], rep.seeds[t]}, cfg.spec.real);
      for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
        const PipelineResult r = run_method(cfg.methods[i], noisy, pcfg, cfg.params);
        const auto est = cfg.target == MseTarget::chirp_rate ? estimate_chirp(r.tfr, cfg.spec, pcfg)
                                                             : estimate_if(r.tfr, cfg.spec, K);
        double acc = 0.0;
        for (std::size_t k = 0; k < K; ++k) acc += if_mse(est[k], truth[k]);
        rep.mse[i][s] += acc / static_cast<double>(K);
      }
    }
    for (auto& row : rep.mse) row[s] /= static_cast<double>(cfg.trials);
  }
  return rep;
}

}  // namespace chirptf
