#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bcqec/fitting.hpp"

using namespace bcqec;

TEST_CASE("power-law fit recovers exact synthetic parameters") {
  std::vector<double> n = {1, 2, 5, 10, 20, 50, 100, 200};
  std::vector<double> f;
  for (double x : n) f.push_back(1.0 - 0.3 * std::pow(x, -0.7));
  FitResult r = fit_power_law(n, f);
  CHECK(r.A == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(r.alpha == doctest::Approx(0.7).epsilon(1e-6));
  CHECK(r.r_squared == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.converged);
  CHECK_FALSE(r.alpha_unidentifiable);
  CHECK(r.alpha_stderr() < 1e-4);
}

TEST_CASE("power-law fit input validation") {
  CHECK_THROWS_AS(fit_power_law({1, 2}, {0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(fit_power_law({1, 2, 3}, {0.5, 1.2, 0.6}),
                  std::invalid_argument);
}

TEST_CASE("saturated data flags alpha as unidentifiable") {
  FitResult r = fit_power_law({1, 2, 5, 10}, {1.0, 1.0, 1.0, 1.0});
  CHECK(r.A == doctest::Approx(0.0));
  CHECK(r.alpha_unidentifiable);
  CHECK(r.converged);
}

TEST_CASE("noisy power-law data still yields a reasonable exponent") {
  std::vector<double> n = {1, 2, 5, 10, 20, 50, 100, 200};
  std::vector<double> f;
  // deterministic small wiggle
  for (size_t i = 0; i < n.size(); ++i)
    f.push_back(1.0 - 0.4 * std::pow(n[i], -1.1) *
                          (1.0 + 0.05 * std::sin(static_cast<double>(i))));
  FitResult r = fit_power_law(n, f);
  CHECK(r.alpha == doctest::Approx(1.1).epsilon(0.15));
  CHECK(r.r_squared > 0.99);
}

TEST_CASE("linear fit and pearson correlation") {
  std::vector<double> x = {0, 1, 2, 3, 4};
  std::vector<double> y;
  for (double v : x) y.push_back(2.5 * v - 1.0);
  LinearFit lf = fit_linear(x, y);
  CHECK(lf.slope == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(lf.intercept == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(lf.pearson_r == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lf.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_linear({1}, {1}), std::invalid_argument);
}

TEST_CASE("crossover quadratic: real-root regime") {
  // 2 * 0.1 * d^2 - d + 2 * 0.2 = 0 -> d = (1 +- sqrt(1 - 0.32)) / 0.4
  CrossoverResult cr = crossover_fixed_point(0.2, 0.1);
  REQUIRE(cr.roots.size() == 2);
  double disc = std::sqrt(1.0 - 4.0 * 0.2 * 0.4);
  CHECK(cr.roots[0] == doctest::Approx((1.0 - disc) / 0.4).epsilon(1e-12));
  CHECK(cr.roots[1] == doctest::Approx((1.0 + disc) / 0.4).epsilon(1e-12));
  CHECK(cr.physical[1]);
}

TEST_CASE("crossover quadratic: no real roots at the default parameters") {
  CrossoverResult cr = crossover_fixed_point(1.0, 0.1);
  CHECK(cr.roots.empty());
  CHECK(cr.diagnostic.find("no real roots") != std::string::npos);
}

TEST_CASE("crossover degenerates to a linear relation without damping") {
  CrossoverResult cr = crossover_fixed_point(0.8, 0.0);
  REQUIRE(cr.roots.size() == 1);
  CHECK(cr.roots[0] == doctest::Approx(1.6).epsilon(1e-12));
  CHECK(cr.physical[0]);
}
