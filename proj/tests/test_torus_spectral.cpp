#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "spde/analysis.hpp"
#include "spde/grid_transform.hpp"
#include "spde/snapshot_io.hpp"
#include "spde/torus_spectral.hpp"

using namespace spde;
using spde::testing::random_field;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("make_lattice enumerates the closed disk without the origin") {
  SUBCASE("N = 1") {
    auto lat = ModeLattice::make(1);
    REQUIRE(lat->size() == 4);
    CHECK(lat->mode(0) == Mode{-1, 0});
    CHECK(lat->mode(1) == Mode{0, -1});
    CHECK(lat->mode(2) == Mode{0, 1});
    CHECK(lat->mode(3) == Mode{1, 0});
  }
  SUBCASE("N = 2 has 4 + 4 + 4 modes by |k|^2 in {1, 2, 4}") {
    auto lat = ModeLattice::make(2);
    REQUIRE(lat->size() == 12);
    int by_norm[5] = {0, 0, 0, 0, 0};
    for (const Mode &k : lat->modes()) ++by_norm[k.norm2()];
    CHECK(by_norm[1] == 4);
    CHECK(by_norm[2] == 4);
    CHECK(by_norm[3] == 0);
    CHECK(by_norm[4] == 4);
  }
  SUBCASE("N = 0 is rejected") { CHECK_THROWS_AS(ModeLattice::make(0), std::invalid_argument); }
}

TEST_CASE("lattice invariants hold for a range of cutoffs") {
  for (int n : {1, 2, 3, 5, 8, 13, 32}) {
    auto lat = ModeLattice::make(n);
    // Independent count over the bounding square.
    std::size_t count = 0;
    for (int a = -n; a <= n; ++a)
      for (int b = -n; b <= n; ++b)
        if ((a || b) && a * a + b * b <= n * n) ++count;
    CHECK(lat->size() == count);
    CHECK(lat->index_of(Mode{0, 0}) == -1);
    for (std::size_t i = 0; i < lat->size(); ++i) {
      const Mode k = lat->mode(i);
      CHECK(k.norm2() <= n * n);
      CHECK(lat->mode(lat->negated(i)) == -k);
      if (i > 0) CHECK(lat->mode(i - 1) < k);
    }
    CHECK(lat->grid_size() % 2 == 0);
    CHECK(lat->grid_size() >= 2 * (2 * n + 2));
  }
}

TEST_CASE("grid size is the smallest even integer above oversample * (2N + 2)") {
  CHECK(ModeLattice::make(4, 1.0)->grid_size() == 10);
  CHECK(ModeLattice::make(4, 2.0)->grid_size() == 20);
  CHECK(ModeLattice::make(4, 1.5)->grid_size() == 16);  // 15 -> 16
  CHECK(ModeLattice::make(3, 1.1)->grid_size() == 10);  // 8.8 -> 9 -> 10
  CHECK_THROWS_AS(ModeLattice::make(4, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ModeLattice::with_grid(4, 9), std::invalid_argument);
}

TEST_CASE("eigenvalue") {
  CHECK(eigenvalue(Mode{1, 0}) == doctest::Approx(4 * kPi * kPi).epsilon(1e-15));
  CHECK(eigenvalue(Mode{1, 0}) == doctest::Approx(39.4784).epsilon(1e-6));
  CHECK(eigenvalue(Mode{1, 1}) == doctest::Approx(78.9568).epsilon(1e-6));
  CHECK_THROWS_AS(eigenvalue(Mode{0, 0}), std::invalid_argument);
}

TEST_CASE("project") {
  auto lat = ModeLattice::make(5);
  const auto f = random_field(lat, 3);
  CHECK(project(f, 5).coeffs().size() == f.coeffs().size());
  CHECK(l2_distance(project(f, 5), f) == 0.0);

  SUBCASE("single mode above the cutoff projects to zero") {
    const auto g = SpectralField::single_mode(lat, Mode{3, 0}, 1.0);
    CHECK(l2_norm(project(g, 2)) == 0.0);
  }
  SUBCASE("idempotent and contracting") {
    for (int n = 1; n <= 5; ++n) {
      const auto p = project(f, n);
      CHECK(p.lattice().cutoff() == n);
      CHECK(l2_distance(project(p, n), p) == 0.0);
      CHECK(l2_norm(p) <= l2_norm(f));
      CHECK(p.hermitian_defect() == 0.0);
    }
  }
  CHECK_THROWS_AS(project(f, 6), std::invalid_argument);
}

TEST_CASE("semigroup_apply") {
  auto lat = ModeLattice::make(6);
  const auto f = random_field(lat, 11);

  CHECK(l2_distance(semigroup_apply(f, 0.0), f) == 0.0);

  SUBCASE("one mode decays by e^-1 at t = 1 / mu^2") {
    const double mu = eigenvalue(Mode{1, 0});
    const auto g = SpectralField::single_mode(lat, Mode{1, 0}, 2.0);
    const auto out = semigroup_apply(g, 1.0 / (mu * mu));
    CHECK(out.at(Mode{1, 0}).real() == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-15));
  }
  SUBCASE("semigroup law") {
    for (double s : {1e-6, 3e-5, 2e-4}) {
      for (double t : {2e-6, 5e-5}) {
        const auto lhs = semigroup_apply(semigroup_apply(f, s), t);
        const auto rhs = semigroup_apply(f, s + t);
        CHECK(l2_distance(lhs, rhs) <= 1e-14 * l2_norm(rhs));
      }
    }
  }
  SUBCASE("strict contraction, Hermitian symmetry, commutes with projection") {
    for (double t : {1e-7, 1e-5, 1e-3}) {
      const auto out = semigroup_apply(f, t);
      CHECK(l2_norm(out) < l2_norm(f));
      CHECK(out.hermitian_defect() == 0.0);
      const auto a = project(semigroup_apply(f, t), 3);
      const auto b = semigroup_apply(project(f, 3), t);
      CHECK(l2_distance(a, b) == 0.0);
    }
  }
  CHECK_THROWS_AS(semigroup_apply(f, -1e-9), std::invalid_argument);
}

TEST_CASE("heat kernel coefficients reproduce the semigroup") {
  auto lat = ModeLattice::make(7);
  const auto f = random_field(lat, 5);
  for (double t : {1e-6, 1e-4}) {
    const auto direct = semigroup_apply(f, t);
    const auto via_kernel = convolve(heat_kernel_coeffs(t, lat), f);
    CHECK(l2_distance(direct, via_kernel) <= 1e-14 * l2_norm(direct));
  }
  SUBCASE("large t: every coefficient dominated by the slowest mode") {
    const double mu1 = eigenvalue(Mode{1, 0});
    for (double t : {1e-3, 1e-2}) {
      const double bound = std::exp(-t * mu1 * mu1) * std::sqrt(static_cast<double>(lat->size()));
      CHECK(l2_norm(heat_kernel_coeffs(t, lat)) <= bound);
    }
  }
  CHECK_THROWS_AS(heat_kernel_coeffs(0.0, lat), std::invalid_argument);
  CHECK_THROWS_AS(heat_kernel_coeffs(-1.0, lat), std::invalid_argument);
}

TEST_CASE("scalar smoothing bound e^{-t mu^2} mu^{g/2} <= (g / 4e)^{g/4} t^{-g/4}") {
  auto lat = ModeLattice::make(64);
  for (double gamma : {1.0, 2.0, 3.0}) {
    for (double t : {1e-6, 1e-4, 1e-2}) {
      const double bound = std::pow(gamma / (4.0 * std::numbers::e), gamma / 4.0) *
                           std::pow(t, -gamma / 4.0);
      double worst = 0.0;
      for (std::size_t i = 0; i < lat->size(); ++i) {
        const double mu = lat->mu(i);
        worst = std::max(worst, std::exp(-t * mu * mu) * std::pow(mu, gamma / 2.0) / bound);
      }
      CHECK(worst <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("physical transforms") {
  SUBCASE("zero field <-> zero grid") {
    auto lat = ModeLattice::make(3);
    const auto g = to_physical(SpectralField::zero(lat));
    for (double v : g.values) CHECK(v == 0.0);
    CHECK(l2_norm(from_physical(g, lat)) == 0.0);
  }
  SUBCASE("unit coefficient at (1,0) is 2 cos(2 pi x1) on the grid") {
    auto lat = ModeLattice::make(2);
    const auto g = to_physical(SpectralField::single_mode(lat, Mode{1, 0}, 1.0));
    const int m = lat->grid_size();
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        CHECK(std::abs(g(a, b) - 2.0 * std::cos(2.0 * kPi * a / m)) <= 1e-12);
      }
    }
  }
  SUBCASE("random fields: direct evaluation, round trip, Parseval") {
    for (int n : {1, 4, 9}) {
      auto lat = ModeLattice::make(n);
      const auto f = random_field(lat, 17 + n);
      GridTransform t(lat);
      const auto g = t.to_physical(f);
      const int m = lat->grid_size();
      double worst = 0.0;
      for (int a = 0; a < m; a += 3) {
        for (int b = 0; b < m; b += 5) {
          worst = std::max(worst, std::abs(g(a, b) - testing::eval_point(f, double(a) / m, double(b) / m)));
        }
      }
      CHECK(worst <= 1e-12);

      const auto back = t.from_physical(g);
      CHECK(l2_distance(back, f) <= 1e-12 * l2_norm(f));
      const auto again = t.to_physical(back);
      double round = 0.0;
      for (std::size_t i = 0; i < g.values.size(); ++i) {
        round = std::max(round, std::abs(again.values[i] - g.values[i]));
      }
      CHECK(round <= 1e-12);

      double mean_sq = 0.0;
      for (double v : g.values) mean_sq += v * v;
      mean_sq /= static_cast<double>(g.values.size());
      const double energy = l2_norm(f) * l2_norm(f);
      CHECK(std::abs(mean_sq - energy) <= 1e-12 * energy);
    }
  }
  SUBCASE("from_physical removes the grid mean and is exactly Hermitian") {
    auto lat = ModeLattice::make(3);
    GridTransform t(lat);
    auto g = t.to_physical(random_field(lat, 2));
    const auto without = t.from_physical(g);
    for (double &v : g.values) v += 0.75;
    const auto with = t.from_physical(g);
    CHECK(l2_distance(with, without) <= 1e-14);
    CHECK(with.hermitian_defect() == 0.0);
  }
  SUBCASE("size mismatch is rejected") {
    auto lat = ModeLattice::make(3);
    PhysicalGrid wrong{4, std::vector<double>(16, 0.0)};
    CHECK_THROWS_AS(from_physical(wrong, lat), std::invalid_argument);
    GridTransform t(ModeLattice::make(2));
    CHECK_THROWS_AS(t.to_physical(SpectralField::zero(lat)), std::invalid_argument);
  }
}

TEST_CASE("SpectralField rejects non-Hermitian coefficients") {
  auto lat = ModeLattice::make(1);
  std::vector<Complex> c(lat->size(), Complex{});
  c[static_cast<std::size_t>(lat->index_of(Mode{1, 0}))] = Complex(1.0, 1.0);
  CHECK_THROWS_AS(SpectralField(lat, c), std::invalid_argument);
  c[static_cast<std::size_t>(lat->index_of(Mode{-1, 0}))] = Complex(1.0, -1.0);
  CHECK_NOTHROW(SpectralField(lat, c));
}

TEST_CASE("snapshot format") {
  auto lat = ModeLattice::make(2);
  const auto f = SpectralField::single_mode(lat, Mode{1, 0}, Complex(0.5, -0.25));
  std::stringstream buf;
  write_snapshot(buf, f);
  const std::string bytes = buf.str();
  REQUIRE(bytes.size() == 5 + 4 + 4 + 8 + 16 * lat->size());
  CHECK(bytes.substr(0, 5) == "SPDE1");
  CHECK(static_cast<unsigned char>(bytes[5]) == 2);   // N, little-endian
  CHECK(static_cast<unsigned char>(bytes[9]) == 12);  // M = 2 * (2*2+2)
  CHECK(static_cast<unsigned char>(bytes[13]) == 12); // mode count
  // Mode (1,0) is index 9 in lexicographic order; 0.5 = 0x3FE0000000000000.
  const std::size_t at = 21 + 16 * 9;
  CHECK(static_cast<unsigned char>(bytes[at + 7]) == 0x3F);
  CHECK(static_cast<unsigned char>(bytes[at + 6]) == 0xE0);

  const auto back = read_snapshot(buf);
  CHECK(back.lattice().same_as(f.lattice()));
  for (std::size_t i = 0; i < lat->size(); ++i) CHECK(back[i] == f[i]);

  SUBCASE("random field round trips bit-exactly") {
    auto big = ModeLattice::make(9, 1.5);
    const auto r = random_field(big, 8);
    std::stringstream s;
    write_snapshot(s, r);
    const auto rr = read_snapshot(s);
    CHECK(rr.lattice().grid_size() == big->grid_size());
    for (std::size_t i = 0; i < big->size(); ++i) CHECK(rr[i] == r[i]);
  }
  SUBCASE("corrupt input is rejected") {
    std::stringstream bad("SPDE2xxxxxxxxxxxxxxxx");
    CHECK_THROWS_AS(read_snapshot(bad), std::runtime_error);
    std::stringstream truncated(bytes.substr(0, 30));
    CHECK_THROWS_AS(read_snapshot(truncated), std::runtime_error);
  }
}
