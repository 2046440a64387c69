#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "spde/analysis.hpp"
#include "spde/grid_transform.hpp"

using namespace spde;

TEST_CASE("pairwise_sum and summarize") {
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  std::vector<double> v(1000, 0.1);
  CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-14));
  std::vector<double> ints;
  for (int i = 1; i <= 100; ++i) ints.push_back(i);
  CHECK(pairwise_sum(ints) == 5050.0);

  const auto s = summarize(std::vector<double>{1.0, 2.0, 3.0, 4.0});
  CHECK(s.mean == 2.5);
  CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  CHECK(s.count == 4);
  CHECK(summarize(std::vector<double>{7.0}).std_error == 0.0);
}

TEST_CASE("l2 norms") {
  auto lat = ModeLattice::make(4);
  const auto f = SpectralField::single_mode(lat, {1, 2}, Complex(0.3, 0.4));
  CHECK(l2_norm(f) == doctest::Approx(std::sqrt(2.0) * 0.5));

  SUBCASE("grid quadrature oracle") {
    const auto g = testing::random_field(lat, 12);
    const int r = 32;
    double acc = 0.0;
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) {
        const double v = testing::eval_point(g, double(a) / r, double(b) / r);
        acc += v * v;
      }
    CHECK(l2_norm(g) == doctest::Approx(std::sqrt(acc / (r * r))).epsilon(1e-12));
  }
  SUBCASE("distance across lattices zero-extends") {
    auto big = ModeLattice::make(8);
    const auto a = testing::random_field(big, 2);
    const auto b = project(a, 4);
    const auto tail = a - zero_extend(b, big);
    CHECK(l2_distance(a, b) == doctest::Approx(l2_norm(tail)).epsilon(1e-14));
    CHECK(l2_distance(b, a) == l2_distance(a, b));
    CHECK(l2_distance(a, a) == 0.0);
  }
}

TEST_CASE("dyadic blocks") {
  CHECK(dyadic_index({1, 0}) == 0);
  CHECK(dyadic_index({1, 1}) == 1);
  CHECK(dyadic_index({2, 0}) == 1);
  CHECK(dyadic_index({2, 1}) == 2);
  CHECK(dyadic_index({4, 0}) == 2);
  CHECK(dyadic_index({3, 3}) == 3);
  CHECK(dyadic_index({-8, 0}) == 3);
  CHECK(dyadic_index({8, 1}) == 4);

  auto lat = ModeLattice::make(10);
  const auto part = DyadicPartition::of(*lat);
  CHECK(part.max_block == 4);
  CHECK(part.members(-1).empty());
  std::size_t total = 0;
  for (int j = -1; j <= part.max_block; ++j) total += part.members(j).size();
  CHECK(total == lat->size());

  const auto f = testing::random_field(lat, 4);
  auto sum = SpectralField::zero(lat);
  for (int j = -1; j <= part.max_block; ++j) sum += dyadic_block(f, j);
  CHECK(l2_distance(sum, f) == 0.0);
}

TEST_CASE("Besov norms") {
  auto lat = ModeLattice::make(12);
  const auto f = testing::random_field(lat, 6);
  const auto g = testing::random_field(lat, 7);

  CHECK(besov_norm(f, 0.0, 2.0, 2.0) == doctest::Approx(l2_norm(f)).epsilon(1e-10));

  SUBCASE("single block field") {
    // 2 Re(c e_k) with |c| = 1 on block j = 2 has sup 2.
    const auto s = SpectralField::single_mode(lat, {3, 0}, Complex(1.0, 0.0));
    CHECK(besov_norm(s, 0.5, kInf, kInf) == doctest::Approx(2.0 * std::pow(4.0, 0.5)).epsilon(1e-12));
    CHECK(holder_norm(s, 1.0) == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(besov_norm(s, 1.0, 2.0, 1.0) == doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-12));
  }
  SUBCASE("norm axioms") {
    for (double alpha : {-0.5, 0.0, 1.0}) {
      for (double p : {1.0, 2.0, kInf}) {
        CHECK(besov_norm(-3.0 * f, alpha, p, 2.0) == doctest::Approx(3.0 * besov_norm(f, alpha, p, 2.0)));
        CHECK(besov_norm(f + g, alpha, p, kInf) <=
              besov_norm(f, alpha, p, kInf) + besov_norm(g, alpha, p, kInf) + 1e-12);
      }
    }
  }
  CHECK(grid_lp_norm(PhysicalGrid{2, {1.0, -1.0, 3.0, 0.0}}, kInf) == 3.0);
  CHECK(grid_lp_norm(PhysicalGrid{2, {1.0, -1.0, 3.0, 0.0}}, 1.0) == 1.25);
  CHECK_THROWS_AS(besov_norm(f, 0.0, 0.5, 2.0), std::invalid_argument);
}

TEST_CASE("sup_error") {
  SchemeConfig cfg;
  cfg.cutoff = 2;
  cfg.steps = 2;
  cfg.horizon = 1.0;
  auto lat = ModeLattice::make(2);
  Trajectory a{cfg, {SpectralField::zero(lat), SpectralField::zero(lat), SpectralField::zero(lat)}};
  auto fine_cfg = cfg;
  fine_cfg.steps = 4;
  auto big = ModeLattice::make(3);
  std::vector<SpectralField> states;
  for (int j = 0; j <= 4; ++j) {
    // Odd indices are not coarse grid times and must be ignored.
    const double amp = j % 2 ? 100.0 : 0.1 * j;
    states.push_back(SpectralField::single_mode(big, {3, 0}, Complex(amp, 0.0)));
  }
  Trajectory b{fine_cfg, states};
  CHECK(sup_error(a, b) == doctest::Approx(0.4 * std::sqrt(2.0)));
  CHECK(sup_error(b, a) == sup_error(a, b));

  auto odd_cfg = cfg;
  odd_cfg.steps = 3;
  Trajectory c{odd_cfg, std::vector<SpectralField>(4, SpectralField::zero(lat))};
  CHECK_THROWS_AS(sup_error(b, c), std::invalid_argument);
  auto long_cfg = cfg;
  long_cfg.horizon = 2.0;
  Trajectory d{long_cfg, a.states};
  CHECK_THROWS_AS(sup_error(a, d), std::invalid_argument);
}

TEST_CASE("fit_rate") {
  const std::vector<double> levels{8, 16, 32, 64};
  std::vector<double> errors;
  for (double n : levels) errors.push_back(3.0 * std::pow(n, -1.5));
  auto fit = fit_rate(levels, errors);
  CHECK(fit.slope == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(fit.r2 == doctest::Approx(1.0));

  // Rescaling errors moves only the intercept.
  std::vector<double> scaled;
  for (double e : errors) scaled.push_back(10.0 * e);
  CHECK(fit_rate(levels, scaled).slope == doctest::Approx(fit.slope).epsilon(1e-12));

  SUBCASE("noisy synthetic data") {
    const std::vector<double> noisy{1.05 / 8, 0.97 / 16, 1.02 / 32, 0.99 / 64};
    const auto f = fit_rate(levels, noisy);
    CHECK(f.slope == doctest::Approx(-1.0).epsilon(0.05));
    CHECK(f.r2 > 0.99);
    CHECK(f.r2 < 1.0);
  }
  CHECK(fit_rate(levels, std::vector<double>(4, 2.0)).r2 == 1.0);
  CHECK_THROWS_AS(fit_rate(std::vector<double>{1, 2}, std::vector<double>{1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(fit_rate(levels, std::vector<double>{1, 0, 1, 1}), std::invalid_argument);
}

TEST_CASE("time_holder_fit") {
  auto lat = ModeLattice::make(2);
  const int steps = 64;
  const double horizon = 1.0;
  std::vector<TimePair> pairs;
  for (int lag : {1, 2, 4, 8, 16}) pairs.push_back({steps - lag, steps});

  SUBCASE("deterministic sqrt(t) path") {
    // U(t) = sqrt(t) 2cos(2 pi x1); pairs start at 0, so ||U_t - U_0||_{C^0} = 2 sqrt(t).
    std::vector<Complex> values;
    const auto idx = static_cast<std::size_t>(lat->index_of({1, 0}));
    const auto neg = static_cast<std::size_t>(lat->index_of({-1, 0}));
    for (int j = 0; j <= steps; ++j) {
      std::vector<Complex> slice(lat->size());
      slice[idx] = slice[neg] = std::sqrt(double(j) / steps);
      values.insert(values.end(), slice.begin(), slice.end());
    }
    const NoisePath path(lat, steps, horizon, 1.0, 0, values);
    std::vector<NoisePath> ensemble(100, path);
    std::vector<TimePair> from_zero;
    for (int lag : {1, 2, 4, 8, 16}) from_zero.push_back({0, lag});
    const auto fit = time_holder_fit(ensemble, 0.0, 1.0, from_zero);
    CHECK(fit.exponent == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(fit.lags.size() == 5);
    CHECK(fit.moments[0] == doctest::Approx(2.0 * std::sqrt(1.0 / steps)).epsilon(1e-12));
  }
  SUBCASE("invalid inputs") {
    std::vector<NoisePath> zeros(100, sample_ou_path(1, lat, steps, horizon, 0.0));
    CHECK_THROWS_AS(time_holder_fit(zeros, 0.0, 2.0, pairs), std::invalid_argument);
    std::vector<NoisePath> few(10, sample_ou_path(1, lat, steps, horizon, 1.0));
    CHECK_THROWS_AS(time_holder_fit(few, 0.0, 2.0, pairs), std::invalid_argument);
    std::vector<NoisePath> many(100, sample_ou_path(1, lat, steps, horizon, 1.0));
    CHECK_THROWS_AS(time_holder_fit(many, 0.0, 2.0, std::span(pairs).first(3)), std::invalid_argument);
  }
}

TEST_CASE("semigroup smoothing") {
  auto lat = ModeLattice::make(64);
  const auto f = equal_block_energy_field(lat, 1);
  const auto part = DyadicPartition::of(*lat);
  for (int j = 0; j <= part.max_block; ++j) CHECK(l2_norm(dyadic_block(f, j)) == doctest::Approx(1.0));

  // Before the lowest modes start to decay, ||P_t f||_{C^1} ~ t^{-1/4}.
  std::vector<double> times;
  for (int i = 0; i < 7; ++i) times.push_back(1e-10 * std::pow(1000.0, i / 6.0));
  const auto fit = smoothing_slope(f, 1.0, times);
  CHECK(fit.slope >= -0.35);
  CHECK(fit.slope <= -0.15);

  // The norm is non-increasing in t.
  double previous = kInf;
  for (double t : times) {
    const double v = holder_norm(semigroup_apply(f, t), 1.0);
    CHECK(v <= previous);
    previous = v;
  }
}
