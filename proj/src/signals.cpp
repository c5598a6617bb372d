#include "chirptf/signals.hpp"

#include <cmath>
#include <random>

namespace chirptf {

void SignalSpec::validate() const {
  if (components.empty()) throw ConfigError("signal spec: at least one component is required");
  for (const auto& c : components) {
    if (c.poly.size() > 6) throw ConfigError("signal spec: phase polynomial degree exceeds 5");
    for (double v : c.poly) {
      if (!std::isfinite(v)) throw ConfigError("signal spec: non-finite phase coefficient");
    }
    for (const auto& term : c.terms) {
      if (!std::isfinite(term.c) || !std::isfinite(term.omega)) {
        throw ConfigError("signal spec: non-finite phase term");
      }
    }
    const auto& e = c.envelope;
    if (!std::isfinite(e.c0) || !std::isfinite(e.c1) || !std::isfinite(e.omega)) {
      throw ConfigError("signal spec: non-finite envelope parameter");
    }
  }
}

namespace {

// phi and its first two derivatives.
struct PhaseDerivs {
  double p0 = 0.0, p1 = 0.0, p2 = 0.0;
};

PhaseDerivs phase_at(const Component& c, double t) {
  PhaseDerivs d;
  // Horner for the polynomial and both derivatives.
  for (std::size_t k = c.poly.size(); k-- > 0;) {
    d.p2 = d.p2 * t + 2.0 * d.p1;
    d.p1 = d.p1 * t + d.p0;
    d.p0 = d.p0 * t + c.poly[k];
  }
  for (const auto& term : c.terms) {
    const double w = term.omega;
    const double s = std::sin(w * t), co = std::cos(w * t);
    if (term.kind == PhaseTerm::Kind::sine) {
      d.p0 += term.c * s;
      d.p1 += term.c * w * co;
      d.p2 -= term.c * w * w * s;
    } else {
      d.p0 += term.c * co;
      d.p1 -= term.c * w * s;
      d.p2 -= term.c * w * w * co;
    }
  }
  return d;
}

}  // namespace

ComplexSignal synthesize(const SignalSpec& spec, const SampleGrid& grid) {
  spec.validate();
  std::vector<cplx> x(grid.n_time, cplx{});
  for (const auto& c : spec.components) {
    std::mt19937_64 rng(c.envelope.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t l = 0; l < grid.n_time; ++l) {
      const double t = grid.time_at(l);
      double amp = c.envelope.c0;
      switch (c.envelope.kind) {
        case Envelope::Kind::constant:
          break;
        case Envelope::Kind::sinusoidal:
          amp = c.envelope.c0 + c.envelope.c1 * std::cos(c.envelope.omega * t);
          break;
        case Envelope::Kind::random_abs_gaussian:
          amp = std::abs(gauss(rng));
          break;
      }
      x[l] += amp * std::polar(1.0, phase_at(c, t).p0);
    }
  }
  if (spec.real) {
    for (auto& v : x) v = {v.real(), 0.0};
  }
  return ComplexSignal(std::move(x), grid);
}

std::vector<InstantaneousFrequency> analytic_if(const SignalSpec& spec, double t) {
  std::vector<InstantaneousFrequency> out;
  out.reserve(spec.components.size());
  for (const auto& c : spec.components) {
    const PhaseDerivs d = phase_at(c, t);
    out.push_back({d.p1 / (2.0 * kPi), d.p2 / (2.0 * kPi)});
  }
  return out;
}

ComplexSignal add_awgn(const ComplexSignal& signal, const NoiseSpec& noise, bool real_valued) {
  if (std::isinf(noise.snr_db) && noise.snr_db > 0.0) return signal;
  if (!std::isfinite(noise.snr_db)) throw DomainError("add_awgn: SNR must be finite or +inf");
  double power = 0.0;
  for (const auto& v : signal.samples) power += std::norm(v);
  if (signal.samples.empty() || !(power > 0.0)) {
    throw DegenerateInput("add_awgn: signal has zero power");
  }
  power /= static_cast<double>(signal.samples.size());
  const double noise_power = power * std::pow(10.0, -noise.snr_db / 10.0);
  std::mt19937_64 rng(noise.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexSignal out = signal;
  if (real_valued) {
    const double s = std::sqrt(noise_power);
    for (auto& v : out.samples) v += gauss(rng) * s;
  } else {
    const double s = std::sqrt(noise_power / 2.0);
    for (auto& v : out.samples) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      v += cplx{re * s, im * s};
    }
  }
  return out;
}

SignalSpec lfm_spec(double a, double b, double amplitude) {
  Component c;
  c.envelope.c0 = amplitude;
  c.poly = {0.0, 2.0 * kPi * b, kPi * a};
  return {{c}, false};
}

namespace {

Component tone_poly(std::vector<double> cycles) {
  Component c;
  for (double& v : cycles) v *= 2.0 * kPi;
  c.poly = std::move(cycles);
  return c;
}

}  // namespace

Preset preset(const std::string& name) {
  Preset p;
  p.name = name;
  if (name == "lfm-sfm") {
    // cos(200 pi t - 20 pi t^2) + cos(4 pi sin(5 pi t) + 80 pi t), real valued
    Component a;
    a.poly = {0.0, 200.0 * kPi, -20.0 * kPi};
    Component b;
    b.poly = {0.0, 80.0 * kPi};
    b.terms = {{PhaseTerm::Kind::sine, 4.0 * kPi, 5.0 * kPi}};
    p.spec = {{a, b}, true};
    p.grid = make_grid(256, 1.0 / 256.0, 1.0, 0.0, -128.0);
  } else if (name == "two-lfm") {
    const double f1 = 0.05, f2 = 0.5, f3 = 0.15, f4 = 2.0;
    p.spec = {{tone_poly({0.0, f1, (f2 - f1) / 512.0}), tone_poly({0.0, f3, (f4 - f3) / 512.0})},
              false};
    p.grid = make_grid(240, 0.5, 1.0 / 256.0, 0.0, 0.0);
    p.xi = 0.07;
  } else if (name == "quintic") {
    p.spec = {{tone_poly({0.0, -62.0, 8.0, -85.0, -25.0, 100.0})}, false};
    p.grid = make_grid(256, 1.0 / 256.0, 1.0, 0.0, -128.0);
    p.xi = 25.0;
  } else if (name == "cubic-quadratic") {
    // 90 (t - 0.3)^3 - 32 t expanded, and -45 t^2 + 64 t (cycles)
    p.spec = {{tone_poly({-2.43, -7.7, -81.0, 90.0}), tone_poly({0.0, 64.0, -45.0})}, false};
    p.grid = make_grid(256, 1.0 / 256.0, 1.0, 0.0, -128.0);
  } else if (name == "general") {
    Component a = tone_poly({0.0, 2.0, -0.3125});
    a.envelope = {Envelope::Kind::sinusoidal, 3.0, -1.0, 0.2 * kPi, 0};
    Component b;
    b.envelope = {Envelope::Kind::random_abs_gaussian, 1.0, 0.0, 0.0, 1};
    b.terms = {{PhaseTerm::Kind::cosine, 2.0 * kPi * 13.0, 0.1 * kPi},
               {PhaseTerm::Kind::cosine, 2.0 * kPi * 5.0, 0.2 * kPi}};
    p.spec = {{a, b}, false};
    // 20 s at 16 Hz; the frequency axis covers -8 .. 8 Hz.
    p.grid = make_grid(320, 1.0 / 16.0, 1.0 / 16.0, 0.0, -8.0);
  } else if (name == "sfm") {
    // exp(j 60 pi t + 3 pi cos(4 pi t))
    Component c;
    c.poly = {0.0, 60.0 * kPi};
    c.terms = {{PhaseTerm::Kind::cosine, 3.0 * kPi, 4.0 * kPi}};
    p.spec = {{c}, false};
    p.grid = make_grid(128, 1.0 / 128.0, 1.0);
    p.xi = 14.0;
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  return p;
}

std::vector<std::string> preset_names() {
  return {"lfm-sfm", "two-lfm", "quintic", "cubic-quadratic", "general", "sfm"};
}

}  // namespace chirptf
