#include <doctest.h>

#include <cmath>
#include <random>

#include "chirptf/eval.hpp"
#include "chirptf/signals.hpp"
#include "chirptf/transforms.hpp"
#include "oracles.hpp"

using namespace chirptf;

namespace {

std::vector<double> random_sigmas(std::size_t n, double lo, double hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  std::vector<double> s(n);
  for (auto& v : s) v = std::exp(u(rng));
  return s;
}

}  // namespace

TEST_CASE("direct summation agrees with the untruncated sum") {
  const auto g = make_grid(48, 1.0 / 48.0, 1.0, 0.0, -24.0);
  const ComplexSignal x(oracle::random_samples(48, 7), g);
  const auto field = SigmaField::full(48, 48, random_sigmas(48 * 48, 0.01, 0.2, 8));
  CHECK(oracle::max_rel(astft_direct(x, field), oracle::plane(x, field)) <= 1e-10);
}

TEST_CASE("zero signal gives a zero plane on every path") {
  const auto g = make_grid(32, 1.0 / 32.0, 1.0);
  const ComplexSignal x(std::vector<cplx>(32), g);
  for (const auto& t : {astft_direct(x, SigmaField::constant(0.05)),
                        astft_fft_time(x, SigmaField::constant(0.05)),
                        astft_fft_freq(x, SigmaField::constant(0.05))}) {
    CHECK(t.max_abs() == 0.0);
  }
}

TEST_CASE("impulse response is the sampled window") {
  const auto g = make_grid(64, 1.0 / 64.0, 1.0, 0.0, -32.0);
  std::vector<cplx> s(64);
  s[20] = 1.0;
  const ComplexSignal x(s, g);
  const double sigma = 0.04;
  const double peak = g.dt * window_value(sigma, 0.0);
  for (const auto& t : {astft_direct(x, SigmaField::constant(sigma)),
                        astft_fft_time(x, SigmaField::constant(sigma)),
                        astft_fft_freq(x, SigmaField::constant(sigma))}) {
    for (std::size_t m = 0; m < 64; m += 3) {
      const double expect = g.dt * window_value(sigma, (static_cast<double>(m) - 20.0) * g.dt);
      for (std::size_t n = 0; n < 64; n += 5) {
        CHECK(std::abs(std::abs(t(m, n)) - expect) <= 1e-12 * peak);
      }
    }
  }
}

TEST_CASE("LFM column profile follows the closed-form envelope") {
  const auto g = make_grid(256, 1.0 / 256.0, 1.0);
  const double a = -20.0, b = 100.0, sigma = 0.05;
  const auto x = synthesize(lfm_spec(a, b), g);
  const auto t = astft_direct(x, SigmaField::constant(sigma));
  const auto guard = static_cast<std::size_t>(std::ceil(6.0 * sigma / g.dt));
  double worst = 0.0;
  for (std::size_t m = guard; m + guard < g.n_time; ++m) {
    for (std::size_t n = 0; n < g.n_freq; ++n) {
      const double env = analytic_lfm_envelope(a, b, sigma, g.time_at(m), g.freq_at(n));
      worst = std::max(worst, std::abs(std::abs(t(m, n)) - env));
    }
  }
  // relative to the ridge peak (1 + 4 pi^2 sigma^4 a^2)^(-1/4)
  CHECK(worst / analytic_lfm_envelope(a, b, sigma, 0.0, b) <= 1e-3);
}

TEST_CASE("fast paths reproduce the direct summation") {
  std::uint64_t seed = 100;
  for (std::size_t n : {64u, 128u, 256u}) {
    const auto g = make_grid(n, 1.0 / static_cast<double>(n), 1.0, 0.0, -static_cast<double>(n / 2));
    const ComplexSignal x(oracle::random_samples(n, ++seed), g);
    const auto bounds = default_bounds(g);
    const auto pt = SigmaField::per_time(random_sigmas(n, bounds.sigma_min, 0.12, ++seed));
    const auto pf = SigmaField::per_freq(random_sigmas(n, bounds.sigma_min, bounds.sigma_max, ++seed));
    CHECK(max_relative_error(astft_fft_time(x, pt), astft_direct(x, pt)) <= 1e-9);
    CHECK(max_relative_error(astft_fft_freq(x, pf), astft_direct(x, pf)) <= 1e-9);
    const auto c = SigmaField::constant(0.03);
    CHECK(max_relative_error(astft_fft_time(x, c), astft_direct(x, c)) <= 1e-9);
    CHECK(max_relative_error(astft_fft_freq(x, c), astft_direct(x, c)) <= 1e-9);
  }
}

TEST_CASE("partial frequency axis matches the full-axis rows") {
  const auto full = make_grid(64, 1.0 / 64.0, 1.0);
  const auto part = make_grid(64, 1.0 / 64.0, 1.0, 0.0, 10.0, 20);
  const auto s = oracle::random_samples(64, 3);
  const auto sigma = SigmaField::constant(0.05);
  const auto a = astft_fft_time(ComplexSignal(s, full), sigma);
  const auto b = astft_fft_time(ComplexSignal(s, part), sigma);
  const auto c = astft_fft_freq(ComplexSignal(s, part), sigma);
  for (std::size_t m = 0; m < 64; ++m) {
    for (std::size_t n = 0; n < 20; ++n) {
      CHECK(std::abs(b(m, n) - a(m, n + 10)) <= 1e-12);
      CHECK(std::abs(c(m, n) - a(m, n + 10)) <= 1e-12);
    }
  }
}

TEST_CASE("fast paths reject fields of the wrong shape") {
  const auto g = make_grid(32, 1.0 / 32.0, 1.0);
  const ComplexSignal x(oracle::random_samples(32, 1), g);
  CHECK_THROWS_AS(astft_fft_time(x, SigmaField::per_freq(std::vector<double>(32, 0.05))), ConfigError);
  CHECK_THROWS_AS(astft_fft_freq(x, SigmaField::per_time(std::vector<double>(32, 0.05))), ConfigError);
  CHECK_THROWS_AS(astft_fft_time(x, SigmaField::full(32, 32, std::vector<double>(1024, 0.05))), ConfigError);
  CHECK_THROWS_AS(astft_fft_time(x, SigmaField::per_time(std::vector<double>(31, 0.05))), GridMismatch);
}

TEST_CASE("time path refuses windows longer than the DFT") {
  // N = 16 samples of DFT length with a 64-sample record: a wide window
  // cannot be folded without aliasing.
  const auto g = make_grid(64, 1.0, 1.0 / 16.0);
  const ComplexSignal x(oracle::random_samples(64, 2), g);
  CHECK_THROWS_AS(astft_fft_time(x, SigmaField::constant(10.0)), ConfigError);
  CHECK_NOTHROW(astft_fft_time(x, SigmaField::constant(0.8)));
}

TEST_CASE("automatic dispatch equals the direct summation") {
  const auto g = make_grid(64, 1.0 / 64.0, 1.0, 0.0, -32.0);
  const ComplexSignal x(oracle::random_samples(64, 4), g);
  for (const auto& f : {SigmaField::constant(0.02), SigmaField::per_time(random_sigmas(64, 0.01, 0.1, 5)),
                        SigmaField::per_freq(random_sigmas(64, 0.01, 0.3, 6))}) {
    CHECK(max_relative_error(astft(x, f, FastPath::automatic), astft_direct(x, f)) <= 1e-9);
  }
  const auto off = make_grid(64, 1.0 / 64.0, 1.0, 0.0, -31.5);
  const ComplexSignal y(oracle::random_samples(64, 4), off);
  CHECK(max_relative_error(stft(y, 0.05), astft_direct(y, SigmaField::constant(0.05))) <= 1e-12);
}

TEST_CASE("transforms are linear") {
  const auto g = make_grid(64, 1.0 / 64.0, 1.0);
  const auto xs = oracle::random_samples(64, 11), ys = oracle::random_samples(64, 12);
  const cplx a{2.0, -1.0}, b{-0.5, 3.0};
  std::vector<cplx> zs(64);
  for (std::size_t i = 0; i < 64; ++i) zs[i] = a * xs[i] + b * ys[i];
  const ComplexSignal x(xs, g), y(ys, g), z(zs, g);
  const auto full = SigmaField::full(64, 64, random_sigmas(64 * 64, 0.01, 0.2, 13));
  const auto pt = SigmaField::per_time(random_sigmas(64, 0.01, 0.2, 14));
  const auto pf = SigmaField::per_freq(random_sigmas(64, 0.01, 0.2, 15));
  auto check = [&](auto&& op) {
    const auto tx = op(x), ty = op(y), tz = op(z);
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < tz.values().size(); ++i) {
      err = std::max(err, std::abs(tz.values()[i] - (a * tx.values()[i] + b * ty.values()[i])));
      ref = std::max(ref, std::abs(tz.values()[i]));
    }
    CHECK(err <= 1e-12 * ref);
  };
  check([&](const ComplexSignal& s) { return astft_direct(s, full); });
  check([&](const ComplexSignal& s) { return astft_fft_time(s, pt); });
  check([&](const ComplexSignal& s) { return astft_fft_freq(s, pf); });
  check([&](const ComplexSignal& s) { return s_transform(s, 0.8); });
}

TEST_CASE("constant-sigma magnitude is covariant under time shifts") {
  const std::size_t n = 128, shift = 9;
  const auto g = make_grid(n, 1.0 / 128.0, 1.0);
  const double sigma = 0.02;
  const auto q = truncation_radius(sigma, g.dt, {});
  auto base = oracle::random_samples(n, 21);
  // support away from the ends so both records hold the whole signal
  for (std::size_t i = 0; i < n; ++i) {
    if (i < q + shift + 2 || i + q + shift + 2 >= n) base[i] = 0.0;
  }
  std::vector<cplx> moved(n);
  for (std::size_t i = 0; i + shift < n; ++i) moved[i + shift] = base[i];
  const auto a = stft(ComplexSignal(base, g), sigma);
  const auto b = stft(ComplexSignal(moved, g), sigma);
  const double peak = a.max_abs();
  for (std::size_t m = 0; m + shift < n; ++m) {
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::abs(std::abs(b(m + shift, k)) - std::abs(a(m, k))) <= 1e-9 * peak);
    }
  }
}

TEST_CASE("S-transform rows equal the direct sum with sigma = 1/|f|^p") {
  const auto g = make_grid(64, 1.0 / 64.0, 1.0, 0.0, -32.0);
  const ComplexSignal x(oracle::random_samples(64, 31), g);
  for (double p : {1.0, 0.7}) {
    const auto st = s_transform(x, p);
    std::vector<double> sig(64);
    for (std::size_t n = 0; n < 64; ++n) {
      const double f = std::abs(g.freq_at(n));
      sig[n] = f > 0.0 ? 1.0 / std::pow(f, p) : 1.0;
    }
    const auto ref = astft_direct(x, SigmaField::per_freq(sig));
    double err = 0.0;
    for (std::size_t m = 0; m < 64; ++m) {
      for (std::size_t n = 0; n < 64; ++n) {
        if (n != 32) err = std::max(err, std::abs(st(m, n) - ref(m, n)));
      }
    }
    CHECK(err <= 1e-9 * ref.max_abs());
  }
}

TEST_CASE("S-transform zero-frequency row holds the mean") {
  const auto g = make_grid(64, 1.0 / 64.0, 1.0, 0.0, -32.0);
  const auto s = oracle::random_samples(64, 41);
  cplx mean{0.0, 0.0};
  for (const auto& v : s) mean += v;
  mean /= 64.0;
  const auto st = s_transform(ComplexSignal(s, g), 1.0);
  for (std::size_t m = 0; m < 64; ++m) CHECK(std::abs(st(m, 32) - mean) <= 1e-12);
}

TEST_CASE("S-transform of a constant concentrates in the zero row") {
  const auto g = make_grid(64, 1.0 / 64.0, 1.0, 0.0, -32.0);
  const auto st = s_transform(ComplexSignal(std::vector<cplx>(64, cplx{1.0, 0.0}), g), 1.0);
  // interior columns; zero extension leaks a little into the lowest rows
  double row0 = 0.0, total = 0.0;
  for (std::size_t m = 16; m < 48; ++m) {
    for (std::size_t n = 0; n < 64; ++n) {
      total += std::norm(st(m, n));
      if (n == 32) row0 += std::norm(st(m, n));
    }
  }
  CHECK(row0 / total >= 0.99);
}

TEST_CASE("S-transform of a tone peaks at the tone frequency") {
  const auto g = make_grid(128, 1.0 / 128.0, 1.0, 0.0, -64.0);
  const auto x = synthesize(lfm_spec(0.0, 17.0), g);
  const auto st = s_transform(x, 1.0);
  for (std::size_t m = 32; m < 96; ++m) {
    std::size_t best = 0;
    for (std::size_t n = 1; n < 128; ++n) {
      if (std::abs(st(m, n)) > std::abs(st(m, best))) best = n;
    }
    CHECK(g.freq_at(best) == 17.0);
  }
}

TEST_CASE("boundary columns are flagged") {
  const auto g = make_grid(64, 1.0 / 64.0, 1.0);
  const ComplexSignal x(oracle::random_samples(64, 5), g);
  const auto t = stft(x, 0.02);
  const auto q = truncation_radius(0.02, g.dt, {});
  REQUIRE(t.boundary.size() == 64);
  CHECK(t.boundary[0] == 1);
  CHECK(t.boundary[63] == 1);
  CHECK(t.boundary[32] == 0);
  CHECK(t.boundary[q] == 0);
  CHECK(t.boundary[q - 1] == 1);
}
