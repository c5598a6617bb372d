#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "chirptf/sigmafield.hpp"
#include "chirptf/signals.hpp"

using namespace chirptf;

namespace {

RidgeCurve make_curve(std::size_t m0, std::size_t m1, const std::function<std::size_t(std::size_t)>& row,
                      const std::function<double(std::size_t)>& chirp) {
  RidgeCurve c;
  for (std::size_t m = m0; m < m1; ++m) {
    c.points.push_back({m, row(m), 1.0, static_cast<double>(row(m))});
    c.chirp.push_back(chirp(m));
  }
  return c;
}

}  // namespace

TEST_CASE("single constant-chirp curve fills the plane") {
  const auto g = make_grid(64, 1.0 / 64.0, 1.0);
  const auto c = make_curve(0, 64, [](std::size_t m) { return 10 + m / 2; }, [](std::size_t) { return -7.0; });
  for (auto method : {Interpolation::linear, Interpolation::nearest}) {
    const auto f = interpolate_chirp_field({c}, g, method);
    for (double v : f.filled.data) CHECK(v == -7.0);
  }
}

TEST_CASE("interpolation reproduces its sites") {
  const auto g = make_grid(96, 1.0 / 96.0, 1.0);
  const auto a = make_curve(5, 90, [](std::size_t m) { return 20 + (m * m) / 200; },
                            [](std::size_t m) { return 3.0 + std::sin(0.1 * static_cast<double>(m)); });
  const auto b = make_curve(0, 96, [](std::size_t m) { return 80 - m / 3; },
                            [](std::size_t m) { return -2.0 - 0.01 * static_cast<double>(m); });
  for (auto method : {Interpolation::linear, Interpolation::nearest}) {
    const auto f = interpolate_chirp_field({a, b}, g, method);
    for (const auto& s : f.on_ridge) CHECK(f.filled(s.m, s.n) == doctest::Approx(s.chirp).epsilon(1e-12));
  }
}

TEST_CASE("linear interpolation between parallel ridges") {
  const auto g = make_grid(64, 1.0 / 64.0, 1.0);
  const auto lo = make_curve(0, 64, [](std::size_t) { return 10; }, [](std::size_t) { return 4.0; });
  const auto hi = make_curve(0, 64, [](std::size_t) { return 30; }, [](std::size_t) { return 10.0; });
  const auto f = interpolate_chirp_field({lo, hi}, g);
  for (std::size_t m = 0; m < 64; ++m) {
    CHECK(f.filled(m, 20) == doctest::Approx(7.0).epsilon(1e-12));
    CHECK(f.filled(m, 15) == doctest::Approx(5.5).epsilon(1e-12));
    CHECK(f.filled(m, 2) == 4.0);
    CHECK(f.filled(m, 50) == 10.0);
  }
}

TEST_CASE("off-ridge values lie between the surrounding site values") {
  const auto g = make_grid(128, 1.0 / 128.0, 1.0);
  const auto a = make_curve(0, 128, [](std::size_t m) { return 40 + static_cast<std::size_t>(20.0 * std::sin(0.05 * m) + 20.0); },
                            [](std::size_t m) { return 20.0 * std::cos(0.05 * static_cast<double>(m)); });
  const auto b = make_curve(10, 120, [](std::size_t m) { return 10 + m / 8; },
                            [](std::size_t m) { return 1.0 + 0.02 * static_cast<double>(m); });
  const auto f = interpolate_chirp_field({a, b}, g);
  double lo = 1e300, hi = -1e300;
  for (const auto& s : f.on_ridge) {
    lo = std::min(lo, s.chirp);
    hi = std::max(hi, s.chirp);
  }
  for (double v : f.filled.data) {
    CHECK(v >= lo - 1e-12);
    CHECK(v <= hi + 1e-12);
  }
}

TEST_CASE("nearest site outside the hull") {
  const auto g = make_grid(64, 1.0 / 64.0, 1.0);
  const auto lo = make_curve(20, 40, [](std::size_t) { return 10; }, [](std::size_t) { return 1.0; });
  const auto hi = make_curve(20, 40, [](std::size_t) { return 30; }, [](std::size_t) { return 2.0; });
  const auto f = interpolate_chirp_field({lo, hi}, g);
  CHECK(f.filled(0, 12) == 1.0);
  CHECK(f.filled(63, 28) == 2.0);
  CHECK(f.filled(5, 0) == 1.0);
  CHECK(f.filled(30, 63) == 2.0);
}

TEST_CASE("collinear sites interpolate along time") {
  const auto g = make_grid(64, 1.0 / 64.0, 1.0);
  const auto c = make_curve(8, 56, [](std::size_t m) { return m; }, [](std::size_t m) { return static_cast<double>(m); });
  const auto f = interpolate_chirp_field({c}, g);
  for (std::size_t m = 8; m < 56; ++m) {
    for (std::size_t n : {0u, 17u, 63u}) CHECK(f.filled(m, n) == doctest::Approx(static_cast<double>(m)));
  }
  CHECK(f.filled(0, 5) == 8.0);
  CHECK(f.filled(63, 5) == 55.0);
}

TEST_CASE("shared cells carry the mean") {
  const auto g = make_grid(32, 1.0 / 32.0, 1.0);
  const auto a = make_curve(0, 32, [](std::size_t m) { return m / 2; }, [](std::size_t) { return 2.0; });
  const auto b = make_curve(0, 32, [](std::size_t m) { return 16 - m / 2; }, [](std::size_t) { return 6.0; });
  const auto f = interpolate_chirp_field({a, b}, g);
  bool found = false;
  for (const auto& s : f.on_ridge) {
    if (s.m == 16 && s.n == 8) {
      CHECK(s.chirp == 4.0);
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("interpolation input errors") {
  const auto g = make_grid(16, 1.0 / 16.0, 1.0);
  CHECK_THROWS_AS(interpolate_chirp_field({}, g), DegenerateInput);
  RidgeCurve no_chirp;
  no_chirp.points.push_back({0, 0, 1.0, 0.0});
  CHECK_THROWS_AS(interpolate_chirp_field({no_chirp}, g), ConfigError);
  const auto outside = make_curve(0, 4, [](std::size_t) { return 99; }, [](std::size_t) { return 1.0; });
  CHECK_THROWS_AS(interpolate_chirp_field({outside}, g), GridMismatch);
}

TEST_CASE("sigma field from the chirp field") {
  const SigmaBounds b{0.01, 2.0};
  ChirpField f;
  f.filled.rows = 2;
  f.filled.cols = 2;
  f.filled.data = {1.0 / (2.0 * kPi), 0.0, 20.0, -1e9};
  const auto s = sigma_field_full(f, b);
  CHECK(s.at(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.at(0, 1) == 2.0);
  CHECK(s.at(1, 0) * s.at(1, 0) * 2.0 * kPi * 20.0 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.at(1, 1) == 0.01);
  CHECK_THROWS_AS(sigma_field_full(ChirpField{}, b), ConfigError);
}

TEST_CASE("axis averages") {
  const auto g = make_grid(64, 1.0 / 64.0, 1.0);
  const auto up = make_curve(10, 50, [](std::size_t m) { return m; }, [](std::size_t m) { return 1.0 + 0.1 * static_cast<double>(m); });
  const auto avg = average_chirp({up}, g, AverageAxis::time);
  for (std::size_t m = 10; m < 50; ++m) CHECK(avg[m] == doctest::Approx(1.0 + 0.1 * static_cast<double>(m)));
  CHECK(avg[0] == avg[10]);
  CHECK(avg[63] == avg[49]);

  const auto plus = make_curve(0, 64, [](std::size_t) { return 10; }, [](std::size_t) { return 5.0; });
  const auto minus = make_curve(0, 64, [](std::size_t) { return 40; }, [](std::size_t) { return -5.0; });
  for (double v : average_chirp({plus, minus}, g, AverageAxis::time)) CHECK(v == 5.0);
  const auto per_f = average_chirp({plus, minus}, g, AverageAxis::freq);
  CHECK(per_f[10] == 5.0);
  CHECK(per_f[40] == 5.0);
}

TEST_CASE("averaging axis selection") {
  const auto g = make_grid(128, 1.0 / 128.0, 1.0);
  const auto single = make_curve(0, 64, [](std::size_t m) { return m; }, [](std::size_t) { return 3.0; });
  CHECK(choose_average_axis({single}, g) == AverageAxis::time);

  // Equal |f'| at every time, different per frequency.
  const auto rate_t = [](std::size_t m) { return 1.0 + 0.1 * static_cast<double>(m); };
  const auto a = make_curve(0, 60, [](std::size_t m) { return 10 + m; }, rate_t);
  const auto b = make_curve(0, 60, [](std::size_t m) { return 80 - m; }, [&](std::size_t m) { return -rate_t(m); });
  CHECK(choose_average_axis({a, b}, g) == AverageAxis::time);

  // Equal |f'| at every frequency, different per time.
  const auto rate_f = [](std::size_t n) { return 1.0 + 0.1 * static_cast<double>(n); };
  const auto c = make_curve(0, 60, [](std::size_t m) { return 10 + m; }, [&](std::size_t m) { return rate_f(10 + m); });
  const auto d = make_curve(0, 60, [](std::size_t m) { return 80 - m; }, [&](std::size_t m) { return rate_f(80 - m); });
  CHECK(choose_average_axis({c, d}, g) == AverageAxis::freq);

  const auto st = averaged_sigma({a, b}, g, AverageAxis::time, default_bounds(g));
  CHECK(st.kind() == SigmaField::Kind::per_time);
  const auto sf = averaged_sigma({c, d}, g, AverageAxis::freq, default_bounds(g));
  CHECK(sf.kind() == SigmaField::Kind::per_freq);
}
