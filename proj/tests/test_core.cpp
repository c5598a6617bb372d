#include <doctest.h>

#include <cmath>

#include "chirptf/core.hpp"
#include "chirptf/kernels.hpp"
#include "chirptf/transforms.hpp"

using namespace chirptf;

TEST_CASE("make_grid records the DFT length") {
  CHECK(make_grid(256, 1.0 / 256.0, 1.0).fft_len == 256);
  const auto g = make_grid(240, 0.5, 1.0 / 256.0);
  CHECK(g.fft_len == 512);
  CHECK(g.n_freq == 512);
  CHECK(make_grid(10, 0.1, 1.0, 0.0, -3.0, 7).n_freq == 7);
}

TEST_CASE("make_grid rejects inconsistent spacing") {
  CHECK_THROWS_AS(make_grid(64, 1.0 / 16.0, 0.3), ConfigError);
  CHECK_THROWS_AS(make_grid(64, 1.0 / 16.0, 1.0 / 13.5 + 1e-6), ConfigError);
  // 16 * 13 is an integer, so this pair is consistent
  CHECK(make_grid(64, 1.0 / 16.0, 1.0 / 13.0).fft_len == 208);
  CHECK_THROWS_AS(make_grid(64, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(make_grid(64, 1.0, -1.0), DomainError);
  CHECK_THROWS_AS(make_grid(0, 1.0, 1.0), DomainError);
}

TEST_CASE("grid index round trip") {
  const auto g = make_grid(100, 1.0 / 50.0, 0.5, 3.25, -12.5);
  for (std::size_t m = 0; m < g.n_time; ++m) CHECK(g.time_index(g.time_at(m)) == static_cast<long long>(m));
  for (std::size_t n = 0; n < g.n_freq; ++n) CHECK(g.freq_index(g.freq_at(n)) == static_cast<long long>(n));
}

TEST_CASE("dft bins wrap for a signed axis") {
  const auto g = make_grid(8, 1.0 / 8.0, 1.0, 0.0, -4.0);
  CHECK(g.bin_aligned());
  CHECK(g.dft_bin(0) == 4);
  CHECK(g.dft_bin(4) == 0);
  CHECK(g.dft_bin(7) == 3);
  CHECK_FALSE(make_grid(8, 1.0 / 8.0, 1.0, 0.0, 0.5).bin_aligned());
}

TEST_CASE("magnitude_db") {
  const auto g = make_grid(1, 1.0, 1.0, 0.0, 0.0, 3);
  TfrMatrix t(g, {cplx{0.0, 2.0}, cplx{1.0, 0.0}, cplx{0.0, 0.0}});
  const auto db = magnitude_db(t, -80.0);
  CHECK(db.data[0] == doctest::Approx(0.0));
  CHECK(db.data[1] == doctest::Approx(-6.0205999133).epsilon(1e-10));
  CHECK(db.data[2] == -80.0);

  TfrMatrix zero(g);
  for (double v : magnitude_db(zero, -80.0).data) CHECK(v == -80.0);
  CHECK_THROWS_AS(magnitude_db(t, 0.0), DomainError);
}

TEST_CASE("magnitude_db ignores global complex scaling") {
  const auto g = make_grid(2, 1.0, 0.5, 0.0, 0.0, 2);
  TfrMatrix a(g, {cplx{1, 2}, cplx{-3, 0.5}, cplx{0.1, 0}, cplx{2, 2}});
  TfrMatrix b = a;
  for (auto& v : b.values()) v *= cplx{-40.0, 7.0};
  const auto da = magnitude_db(a, -120.0), dbm = magnitude_db(b, -120.0);
  for (std::size_t i = 0; i < da.data.size(); ++i) CHECK(da.data[i] == doctest::Approx(dbm.data[i]).epsilon(1e-12));
}

TEST_CASE("window value, fwhm and spreads") {
  CHECK(window_value(1.0, 0.0) == doctest::Approx(0.3989422804).epsilon(1e-10));
  CHECK(window_value(1.0, std::sqrt(2.0 * std::log(2.0))) == doctest::Approx(0.1994711402).epsilon(1e-10));
  CHECK(window_value(0.3, 0.17) == window_value(0.3, -0.17));
  CHECK_THROWS_AS(window_value(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(window_value(-1.0, 1.0), DomainError);

  CHECK(fwhm(1.0) == doctest::Approx(2.354820045).epsilon(1e-10));
  CHECK(fwhm(2.0 * 0.37) == 2.0 * fwhm(0.37));
  CHECK_THROWS_AS(fwhm(0.0), DomainError);

  const auto s1 = spreads(1.0);
  CHECK(s1.delta_t_sq == doctest::Approx(0.5));
  CHECK(s1.delta_f_sq == doctest::Approx(0.012665).epsilon(1e-4));
  CHECK(spreads(std::sqrt(1.0 / (2.0 * kPi))).gamma == doctest::Approx(1.0).epsilon(1e-14));
  for (double s : {0.01, 0.3, 7.0}) {
    const auto sp = spreads(s);
    CHECK(sp.delta_t_sq * sp.delta_f_sq == doctest::Approx(1.0 / (16.0 * kPi * kPi)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(spreads(0.0), DomainError);
}

TEST_CASE("window sums to unit area on fine grids") {
  for (double sigma : {0.05, 1.0, 3.0}) {
    for (double ratio : {8.0, 16.0}) {
      const double dt = sigma / ratio;
      double acc = 0.0;
      for (int m = -4000; m <= 4000; ++m) acc += window_value(sigma, m * dt) * dt;
      CHECK(std::abs(acc - 1.0) <= 1e-6);
    }
  }
}

TEST_CASE("truncation radius") {
  CHECK(truncation_radius(1.0, 1.0, {1.0}) == 0);
  CHECK_THROWS_AS(TruncationConfig{1.0}.validate(), ConfigError);
  CHECK(truncation_radius(1.0, 1.0, {1e-12}) == 8);
  CHECK(truncation_radius(1.0, 1.0, {1e-12}, 10) == 5);
  for (double sigma : {0.7, 2.0, 5.5}) {
    const auto q1 = truncation_radius(sigma, 0.1, {});
    const auto q2 = truncation_radius(2.0 * sigma, 0.1, {});
    CHECK(std::abs(static_cast<long long>(q2) - 2 * static_cast<long long>(q1)) <= 1);
  }
  CHECK(spectral_truncation_radius(1.0, 1.0, {1e-12}) ==
        static_cast<std::size_t>(std::ceil(std::sqrt(std::log(1e12) / (2.0 * kPi * kPi)))));
}

TEST_CASE("truncated tail mass is bounded by eps") {
  const TruncationConfig cfg{1e-9};
  for (double sigma : {0.2, 1.0, 4.0}) {
    const double dt = 0.05;
    const auto q = static_cast<long long>(truncation_radius(sigma, dt, cfg));
    double tail = 0.0;
    for (long long m = q + 1; m < q + 100000; ++m) tail += 2.0 * window_value(sigma, m * dt);
    CHECK(tail <= cfg.eps * (2.0 * q + 1.0) * window_value(sigma, 0.0));
  }
}

TEST_CASE("sigma bounds") {
  const auto b = default_bounds(make_grid(256, 1.0 / 256.0, 1.0));
  CHECK(fwhm(b.sigma_max) == doctest::Approx(1.0));
  CHECK(fwhm(b.sigma_min) == doctest::Approx(2.0 / 256.0));
  CHECK(b.clamp(100.0) == b.sigma_max);
  CHECK(b.clamp(1e-9) == b.sigma_min);
  CHECK_THROWS_AS((SigmaBounds{0.0, 1.0}.validate()), ConfigError);
  CHECK_THROWS_AS((SigmaBounds{2.0, 1.0}.validate()), ConfigError);
}

TEST_CASE("sigma field shapes") {
  const auto g = make_grid(3, 1.0, 0.5, 0.0, 0.0, 2);
  const auto t = SigmaField::per_time({1.0, 2.0, 3.0});
  CHECK(t.at(2, 1) == 3.0);
  const auto f = SigmaField::per_freq({1.0, 2.0});
  CHECK(f.at(2, 1) == 2.0);
  const auto full = SigmaField::full(3, 2, {1, 2, 3, 4, 5, 6});
  CHECK(full.at(1, 1) == 4.0);
  CHECK(full.max_value() == 6.0);
  CHECK(full.min_value() == 1.0);
  t.check_conforms(g);
  CHECK_THROWS_AS(f.check_conforms(make_grid(3, 1.0, 1.0 / 3.0)), GridMismatch);
  CHECK_THROWS(SigmaField::constant(-1.0));
  CHECK_THROWS(SigmaField::per_time({1.0, std::nan("")}));
  CHECK_THROWS(SigmaField::constant(5.0, SigmaBounds{1.0, 2.0}));
}
