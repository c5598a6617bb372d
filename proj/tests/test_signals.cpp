#include <doctest.h>

#include <cmath>
#include <limits>

#include "chirptf/signals.hpp"

using namespace chirptf;

namespace {

double power(const std::vector<cplx>& v) {
  double p = 0.0;
  for (const auto& x : v) p += std::norm(x);
  return p / static_cast<double>(v.size());
}

double phase_at(const SignalSpec& spec, std::size_t k, double t) {
  const auto& c = spec.components[k];
  double phi = 0.0, tp = 1.0;
  for (double a : c.poly) {
    phi += a * tp;
    tp *= t;
  }
  for (const auto& term : c.terms) {
    phi += term.c * (term.kind == PhaseTerm::Kind::sine ? std::sin(term.omega * t) : std::cos(term.omega * t));
  }
  return phi;
}

}  // namespace

TEST_CASE("LFM starts at unit amplitude and zero phase") {
  const auto g = make_grid(64, 1.0 / 64.0, 1.0);
  const auto x = synthesize(lfm_spec(-20.0, 100.0), g);
  CHECK(x.samples[0] == cplx{1.0, 0.0});
  for (const auto& v : x.samples) CHECK(std::abs(v) == doctest::Approx(1.0).epsilon(1e-14));
  const auto y = synthesize(lfm_spec(3.0, 5.0, 2.5), g);
  CHECK(std::abs(y.samples[17]) == doctest::Approx(2.5));
}

TEST_CASE("two-LFM preset follows the written formula") {
  const auto p = preset("two-lfm");
  const auto x = synthesize(p.spec, p.grid);
  const double f1 = 0.05, f2 = 0.5, f3 = 0.15, f4 = 2.0;
  double worst = 0.0;
  for (std::size_t l = 0; l < p.grid.n_time; ++l) {
    const double t = p.grid.time_at(l);
    const cplx expect = std::polar(1.0, 2.0 * kPi * (f1 + (f2 - f1) * t / 512.0) * t) +
                        std::polar(1.0, 2.0 * kPi * (f3 + (f4 - f3) * t / 512.0) * t);
    worst = std::max(worst, std::abs(x.samples[l] - expect));
  }
  CHECK(worst <= 1e-12);
  CHECK(p.grid.n_time == 240);
  CHECK(p.grid.dt == 0.5);
  CHECK(p.xi == 0.07);
}

TEST_CASE("real flag keeps the real part") {
  auto spec = lfm_spec(10.0, 30.0);
  const auto g = make_grid(64, 1.0 / 64.0, 1.0);
  const auto c = synthesize(spec, g);
  spec.real = true;
  const auto r = synthesize(spec, g);
  for (std::size_t l = 0; l < 64; ++l) {
    CHECK(r.samples[l].imag() == 0.0);
    CHECK(r.samples[l].real() == c.samples[l].real());
  }
}

TEST_CASE("random envelopes are seeded") {
  SignalSpec spec = lfm_spec(0.0, 10.0);
  spec.components[0].envelope = {Envelope::Kind::random_abs_gaussian, 1.0, 0.0, 0.0, 42};
  const auto g = make_grid(128, 1.0 / 128.0, 1.0);
  const auto a = synthesize(spec, g), b = synthesize(spec, g);
  CHECK(a.samples == b.samples);
  spec.components[0].envelope.seed = 43;
  CHECK(synthesize(spec, g).samples != a.samples);
  for (const auto& v : a.samples) CHECK(std::abs(v) >= 0.0);
}

TEST_CASE("sinusoidal envelope") {
  SignalSpec spec = lfm_spec(0.0, 0.0);
  spec.components[0].envelope = {Envelope::Kind::sinusoidal, 3.0, -1.0, 0.2 * kPi, 0};
  const auto g = make_grid(50, 0.1, 0.2);
  const auto x = synthesize(spec, g);
  for (std::size_t l = 0; l < 50; ++l) {
    CHECK(x.samples[l].real() == doctest::Approx(3.0 - std::cos(0.2 * kPi * g.time_at(l))).epsilon(1e-13));
  }
}

TEST_CASE("analytic IF examples") {
  SignalSpec s;
  Component c;
  c.poly = {0.0, 2.0 * kPi * 100.0, -2.0 * kPi * 10.0};
  s.components.push_back(c);
  for (double t : {0.0, 0.3, 1.7}) {
    const auto iff = analytic_if(s, t)[0];
    CHECK(iff.f_inst == doctest::Approx(100.0 - 20.0 * t).epsilon(1e-14));
    CHECK(iff.f_prime == doctest::Approx(-20.0).epsilon(1e-14));
  }
  const auto sfm = preset("sfm").spec;
  for (double t : {0.0, 0.1, 0.37}) {
    CHECK(analytic_if(sfm, t)[0].f_inst == doctest::Approx(30.0 - 6.0 * kPi * std::sin(4.0 * kPi * t)).epsilon(1e-13));
  }
  SignalSpec flat;
  Component k;
  k.poly = {1.3};
  flat.components.push_back(k);
  CHECK(analytic_if(flat, 0.4)[0].f_inst == 0.0);
  CHECK(analytic_if(flat, 0.4)[0].f_prime == 0.0);
}

TEST_CASE("analytic IF matches finite differences of the phase") {
  for (const auto& name : preset_names()) {
    const auto p = preset(name);
    for (std::size_t k = 0; k < p.spec.components.size(); ++k) {
      for (double frac : {0.1, 0.35, 0.5, 0.8}) {
        const double t = p.grid.t0 + frac * p.grid.duration();
        const double h = 1e-4 * std::max(1.0, p.grid.duration());
        const double d1 = (phase_at(p.spec, k, t + h) - phase_at(p.spec, k, t - h)) / (2.0 * h) / (2.0 * kPi);
        const double d2 = (phase_at(p.spec, k, t + h) - 2.0 * phase_at(p.spec, k, t) + phase_at(p.spec, k, t - h)) /
                          (h * h) / (2.0 * kPi);
        const auto iff = analytic_if(p.spec, t)[k];
        CHECK(std::abs(iff.f_inst - d1) <= 1e-6 * std::max(1.0, std::abs(d1)));
        CHECK(std::abs(iff.f_prime - d2) <= 1e-4 * std::max(1.0, std::abs(d2)));
      }
    }
  }
}

TEST_CASE("noise is calibrated to the requested SNR") {
  const auto g = make_grid(4096, 1.0 / 4096.0, 1.0);
  const auto x = synthesize(lfm_spec(300.0, 200.0, 2.0), g);
  for (double snr : {-5.0, 0.0, 10.0, 25.0}) {
    for (std::uint64_t seed : {1u, 2u}) {
      const auto y = add_awgn(x, {snr, seed});
      std::vector<cplx> noise(4096);
      for (std::size_t l = 0; l < 4096; ++l) noise[l] = y.samples[l] - x.samples[l];
      const double measured = 10.0 * std::log10(power(x.samples) / power(noise));
      CHECK(std::abs(measured - snr) <= 0.5);
    }
  }
  CHECK(add_awgn(x, {5.0, 1}).samples == add_awgn(x, {5.0, 1}).samples);
  CHECK(add_awgn(x, {5.0, 1}).samples != add_awgn(x, {5.0, 2}).samples);
  CHECK(add_awgn(x, {std::numeric_limits<double>::infinity(), 1}).samples == x.samples);
  const auto real_noise = add_awgn(x, {0.0, 3}, true);
  for (std::size_t l = 0; l < 4096; ++l) CHECK(real_noise.samples[l].imag() == x.samples[l].imag());
  CHECK_THROWS(add_awgn(ComplexSignal(std::vector<cplx>(16), make_grid(16, 1.0, 1.0 / 16.0)), {0.0, 1}));
}

TEST_CASE("spec validation and presets") {
  CHECK_THROWS(SignalSpec{}.validate());
  SignalSpec deg = lfm_spec(1.0, 1.0);
  deg.components[0].poly.assign(7, 1.0);
  CHECK_THROWS(deg.validate());
  CHECK(preset_names().size() == 6);
  for (const auto& n : preset_names()) CHECK_NOTHROW(preset(n).spec.validate());
  CHECK_THROWS_AS(preset("nope"), ConfigError);
  const auto p = preset("lfm-sfm");
  CHECK(p.grid.n_time == 256);
  CHECK(p.grid.dt == 1.0 / 256.0);
  CHECK(p.grid.df == 1.0);
  CHECK(p.spec.real);
}
