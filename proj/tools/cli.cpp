#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chirptf/eval.hpp"
#include "chirptf/io.hpp"
#include "chirptf/pipeline.hpp"
#include "chirptf/signals.hpp"

namespace chirptf::cli {

namespace {

// Thrown for argument combinations CLI11 cannot express (exit code 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_file(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw UsageError("no such file: " + path);
}

std::vector<double> parse_snr_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "inf" || item == "+inf") {
      out.push_back(std::numeric_limits<double>::infinity());
      continue;
    }
    std::vector<double> parts;
    std::stringstream is(item);
    std::string p;
    try {
      while (std::getline(is, p, ':')) parts.push_back(parse_number(p));
    } catch (const ConfigError&) {
      throw UsageError("invalid --snr item '" + item + "'");
    }
    if (parts.size() == 1) {
      out.push_back(parts[0]);
    } else if (parts.size() == 3 && parts[1] > 0.0 && parts[2] >= parts[0]) {
      const auto steps = static_cast<std::size_t>(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9));
      for (std::size_t k = 0; k <= steps; ++k) out.push_back(parts[0] + static_cast<double>(k) * parts[1]);
    } else {
      throw UsageError("invalid --snr range '" + item + "' (expected lo:step:hi)");
    }
  }
  if (out.empty()) throw UsageError("--snr is empty");
  return out;
}

struct GridFlags {
  std::optional<double> dt, df, t0, f0;
  std::optional<std::size_t> samples, freq_bins;

  void add_to(CLI::App* app, bool with_time) {
    if (with_time) {
      app->add_option("--dt", dt, "sampling interval (s)");
      app->add_option("--samples", samples, "number of samples");
      app->add_option("--t0", t0, "time of the first sample (s)");
    }
    app->add_option("--df", df, "frequency spacing (Hz); default 1/(samples*dt)");
    app->add_option("--f0", f0, "lowest analysed frequency (Hz)");
    app->add_option("--freq-bins", freq_bins, "number of frequency rows (default: full DFT)");
  }
};

SampleGrid grid_from(std::size_t n, double dt, std::optional<double> df, double t0,
                     std::optional<double> f0, std::optional<std::size_t> bins) {
  if (!(dt > 0.0)) throw UsageError("sampling interval must be positive (use --dt)");
  if (n == 0) throw UsageError("number of samples must be positive");
  const double spacing = df ? *df : 1.0 / (static_cast<double>(n) * dt);
  return make_grid(n, dt, spacing, t0, f0.value_or(0.0), bins.value_or(0));
}

void print_if_summary(const SignalSpec& spec, const SampleGrid& g, std::ostream& out) {
  const double ts[3] = {g.time_at(0), g.time_at(g.n_time / 2), g.time_at(g.n_time - 1)};
  out << std::setprecision(6);
  for (std::size_t k = 0; k < spec.components.size(); ++k) {
    out << "component " << k << ":";
    for (double t : ts) {
      const auto fi = analytic_if(spec, t)[k];
      out << "  t=" << t << " f=" << fi.f_inst << " Hz f'=" << fi.f_prime << " Hz/s";
    }
    out << "\n";
  }
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
  std::string spec;
  std::string out;
  GridFlags grid;
  std::optional<double> snr;
  std::uint64_t seed = 0;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
  require_file(a.spec);
  const SpecFile sf = read_spec(a.spec);
  const double dt = a.grid.dt ? *a.grid.dt : sf.dt.value_or(0.0);
  const std::size_t n = a.grid.samples ? *a.grid.samples : sf.samples.value_or(0);
  const SampleGrid g = grid_from(n, dt, a.grid.df ? a.grid.df : sf.df,
                                 a.grid.t0.value_or(sf.t0.value_or(0.0)),
                                 a.grid.f0 ? a.grid.f0 : sf.f0, std::nullopt);
  ComplexSignal x = synthesize(sf.spec, g);
  if (a.snr) x = add_awgn(x, {*a.snr, a.seed}, sf.spec.real);
  write_file_atomic(a.out, encode_signal_csv(x));
  out << "wrote " << g.n_time << " samples to " << a.out << "\n";
  print_if_summary(sf.spec, g, out);
  return kOk;
}

// ---------------------------------------------------------------- analyze / ifest

struct AnalysisArgs {
  std::string in;
  GridFlags grid;
  std::optional<std::size_t> components;
  std::size_t K = 8;
};

ComplexSignal load_signal(const AnalysisArgs& a) {
  require_file(a.in);
  SampledSignal s = read_signal_csv(a.in);
  const std::size_t n = s.samples.size();
  if (n < 2 && !a.grid.dt) throw UsageError("need at least two samples or --dt");
  const double dt = s.dt > 0.0 ? s.dt : *a.grid.dt;
  const SampleGrid g = grid_from(n, dt, a.grid.df, s.t0, a.grid.f0, a.grid.freq_bins);
  return ComplexSignal(std::move(s.samples), g);
}

PipelineConfig pipeline_config(const AnalysisArgs& a, const SampleGrid& g) {
  PipelineConfig cfg = PipelineConfig::defaults(g);
  if (a.components) cfg.peaks.max_components = *a.components;
  cfg.pca.K = a.K;
  return cfg;
}

struct AnalyzeArgs : AnalysisArgs {
  std::string method;
  std::optional<double> sigma, xi, p;
  std::string axis;
  std::string tfr_out, pgm_out;
  double floor_db = -60.0;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  Method method;
  try {
    method = parse_method(a.method);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  if (method == Method::astft_t && !a.xi) throw UsageError("--xi is required for astft-t");
  if (method == Method::stft && !a.sigma) throw UsageError("--sigma is required for stft");
  if (method == Method::s_transform && !a.p) throw UsageError("--p is required for s-transform");
  if (!a.axis.empty() && method != Method::astft_tf_fast) {
    throw UsageError("--axis only applies to astft-tf-fast");
  }
  if (!(a.floor_db < 0.0)) throw UsageError("--floor-db must be negative");

  const ComplexSignal x = load_signal(a);
  const PipelineConfig cfg = pipeline_config(a, x.grid);
  PipelineResult r;
  if (method == Method::astft_tf_fast && !a.axis.empty()) {
    r = run_astft_tf_fast(x, cfg, a.axis == "time" ? AverageAxis::time : AverageAxis::freq);
  } else {
    r = run_method(method, x, cfg, {a.sigma.value_or(0.0), a.xi.value_or(0.0), a.p.value_or(1.0)});
  }
  if (!a.tfr_out.empty()) write_tfr1(a.tfr_out, r.tfr);
  if (!a.pgm_out.empty()) write_pgm(a.pgm_out, r.tfr, a.floor_db);

  out << std::setprecision(6);
  out << "method " << method_name(method) << ": " << x.grid.n_time << " x " << x.grid.n_freq
      << " plane\n";
  if (!r.sigma.values().empty()) {
    out << "sigma range " << r.sigma.min_value() << " .. " << r.sigma.max_value() << " s\n";
  }
  if (r.axis) out << "averaging axis " << (*r.axis == AverageAxis::time ? "time" : "freq") << "\n";
  out << "curves " << r.curves.size() << "\n";
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  return kOk;
}

struct IfestArgs : AnalysisArgs {
  std::string out;
};

int cmd_ifest(const IfestArgs& a, std::ostream& out) {
  require_file(a.in);
  SampledSignal s = read_signal_csv(a.in);
  if (s.samples.empty()) {
    write_file_atomic(a.out, encode_ifest_csv({}, SampleGrid{}));
    out << "empty signal; no components\n";
    return kOk;
  }
  const ComplexSignal x = load_signal(a);
  const PipelineResult r = estimate_ridges(x, pipeline_config(a, x.grid));
  write_file_atomic(a.out, encode_ifest_csv(r.curves, x.grid));
  out << "components " << r.curves.size() << "\n";
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  return kOk;
}

// ---------------------------------------------------------------- bench-mse

struct BenchArgs {
  std::string spec;
  std::string snr;
  std::size_t trials = 0;
  std::uint64_t seed_base = 0;
  std::vector<std::string> methods{"astft-tf", "astft-t", "stft"};
  std::optional<double> xi;
  std::string target = "if";
  std::string out;
  GridFlags grid;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  if (a.trials < 1) throw UsageError("--trials must be >= 1");
  if (a.target != "if" && a.target != "chirp") throw UsageError("--target must be if or chirp");
  const auto snr = parse_snr_list(a.snr);
  std::vector<Method> methods;
  for (const auto& m : a.methods) {
    try {
      methods.push_back(parse_method(m));
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
  }
  require_file(a.spec);
  const SpecFile sf = read_spec(a.spec);
  MseConfig cfg;
  cfg.spec = sf.spec;
  const double dt = a.grid.dt ? *a.grid.dt : sf.dt.value_or(0.0);
  const std::size_t n = a.grid.samples ? *a.grid.samples : sf.samples.value_or(0);
  cfg.grid = grid_from(n, dt, a.grid.df ? a.grid.df : sf.df, a.grid.t0.value_or(sf.t0.value_or(0.0)),
                       a.grid.f0 ? a.grid.f0 : sf.f0,
                       a.grid.freq_bins ? a.grid.freq_bins : sf.freq_bins);
  cfg.snr_db = snr;
  cfg.trials = a.trials;
  cfg.seed_base = a.seed_base;
  cfg.methods = methods;
  cfg.params.xi = a.xi ? *a.xi : sf.xi.value_or(0.0);
  cfg.target = a.target == "chirp" ? MseTarget::chirp_rate : MseTarget::instantaneous_frequency;
  for (Method m : methods) {
    if (m == Method::astft_t && !(cfg.params.xi > 0.0)) {
      throw UsageError("astft-t needs --xi (or xi in the spec file)");
    }
  }
  const MseReport rep = run_mse_bench(cfg);
  write_file_atomic(a.out, encode_mse_csv(rep));
  out << "wrote " << rep.snr_db.size() * rep.methods.size() << " rows to " << a.out << "\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adaptive time-frequency analysis with chirp-rate driven Gaussian windows"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "synthesize a signal from a spec file into a CSV");
  s->add_option("spec", synth.spec, "signal spec file")->required();
  s->add_option("-o,--out", synth.out, "output CSV")->required();
  synth.grid.add_to(s, true);
  s->add_option("--snr", synth.snr, "add white Gaussian noise at this SNR (dB)");
  s->add_option("--seed", synth.seed, "noise seed");

  AnalyzeArgs an;
  auto* a = app.add_subcommand("analyze", "compute a time-frequency representation");
  a->add_option("input", an.in, "signal CSV (t,re,im)")->required();
  a->add_option("-m,--method", an.method,
                "astft-tf | astft-tf-fast | astft-t | astft-f | stft | s-transform")
      ->required();
  an.grid.add_to(a, false);
  a->add_option("--sigma", an.sigma, "window sigma for stft (s)");
  a->add_option("--xi", an.xi, "quasi-stationary threshold for astft-t (Hz)");
  a->add_option("--p", an.p, "exponent of the S-transform window law");
  a->add_option("--axis", an.axis, "force the averaging axis of astft-tf-fast")
      ->check(CLI::IsMember({"time", "freq"}));
  a->add_option("--components", an.components, "maximum ridge components per column");
  a->add_option("--K", an.K, "PCA half-window (points)");
  a->add_option("--tfr", an.tfr_out, "write the matrix as TFR1");
  a->add_option("--pgm", an.pgm_out, "write a dB magnitude image (PGM)");
  a->add_option("--floor-db", an.floor_db, "image floor in dB (default -60)");

  IfestArgs ie;
  auto* i = app.add_subcommand("ifest", "estimate instantaneous frequency and chirp rate");
  i->add_option("input", ie.in, "signal CSV (t,re,im)")->required();
  i->add_option("-o,--out", ie.out, "output CSV")->required();
  ie.grid.add_to(i, false);
  i->add_option("--components", ie.components, "maximum ridge components per column");
  i->add_option("--K", ie.K, "PCA half-window (points)");

  BenchArgs be;
  auto* b = app.add_subcommand("bench-mse", "Monte-Carlo IF estimation error versus SNR");
  b->add_option("spec", be.spec, "signal spec file")->required();
  b->add_option("--snr", be.snr, "lo:step:hi[,inf] in dB")->required();
  b->add_option("--trials", be.trials, "trials per SNR")->required();
  b->add_option("--seed-base", be.seed_base, "seed of the first trial");
  b->add_option("--methods", be.methods, "comma-separated methods")->delimiter(',');
  b->add_option("--xi", be.xi, "threshold for astft-t (Hz)");
  b->add_option("--target", be.target, "if (default) or chirp");
  b->add_option("-o,--out", be.out, "output CSV")->required();
  be.grid.add_to(b, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    app.exit(e, msg, msg);
    err << msg.str();
    return kUsage;
  }

  try {
    if (s->parsed()) return cmd_synth(synth, out);
    if (a->parsed()) return cmd_analyze(an, out);
    if (i->parsed()) return cmd_ifest(ie, out);
    if (b->parsed()) return cmd_bench(be, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace chirptf::cli
