#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "ahdacs/field.hpp"
#include "ahdacs/rng.hpp"

using namespace ahdacs;

TEST_CASE("single bump: exact value at the center and exponential falloff") {
  auto f = ScalarField::gaussian_bumps(4000.0, 1, 10.0, 0.01, 7);
  Point c = f.bumps().front().center;
  CHECK(f.sample(c) == doctest::Approx(10.0).epsilon(1e-12));
  for (double d : {10.0, 100.0, 460.0}) {
    Point p{c.x + (c.x > 2000 ? -d : d), c.y};
    CHECK(f.sample(p) == doctest::Approx(10.0 * std::exp(-0.01 * d)).epsilon(1e-12));
  }
}

TEST_CASE("bump field determinism: same seed, same centers and samples") {
  auto a = ScalarField::gaussian_bumps(4000.0, 10, 10.0, 0.01, 99);
  auto b = ScalarField::gaussian_bumps(4000.0, 10, 10.0, 0.01, 99);
  REQUIRE(a.bumps().size() == b.bumps().size());
  for (std::size_t i = 0; i < a.bumps().size(); ++i) {
    CHECK(a.bumps()[i].center.x == b.bumps()[i].center.x);
    CHECK(a.bumps()[i].center.y == b.bumps()[i].center.y);
  }
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    Point p{rng.uniform(0, 4000), rng.uniform(0, 4000)};
    CHECK(a.sample(p) == b.sample(p));
  }
}

TEST_CASE("empty bump set reads zero everywhere") {
  auto f = ScalarField::from_bumps(4000.0, {});
  CHECK(f.sample({0.0, 0.0}) == 0.0);
  CHECK(f.sample({1234.5, 2000.0}) == 0.0);
}

TEST_CASE("bump field values stay within [base, base + sum of heights]") {
  auto f = ScalarField::gaussian_bumps(4000.0, 10, 10.0, 0.01, 3, 8.0);
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    double v = f.sample({rng.uniform(0, 4000), rng.uniform(0, 4000)});
    CHECK(v >= 8.0);
    CHECK(v <= 8.0 + 10.0 * 10.0);
  }
}

TEST_CASE("bump field is Lipschitz with constant sum(height * decay)") {
  auto f = ScalarField::gaussian_bumps(4000.0, 10, 10.0, 0.01, 17);
  const double lip = 10.0 * 10.0 * 0.01;
  Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    Point p{rng.uniform(0, 4000), rng.uniform(0, 4000)};
    Point q{rng.uniform(0, 4000), rng.uniform(0, 4000)};
    CHECK(std::abs(f.sample(p) - f.sample(q)) <= lip * distance(p, q) + 1e-12);
  }
}

TEST_CASE("piecewise noiseless: region rule along x = y") {
  auto f = ScalarField::piecewise(4000.0, 10.0, 20.0, 0.0, 1);
  CHECK(f.sample({100.0, 3000.0}) == 10.0);  // x < y
  CHECK(f.sample({3000.0, 100.0}) == 20.0);  // x > y
  CHECK(f.sample({500.0, 500.0 + 1e-9}) == 10.0);

  std::set<double> values;
  Rng rng(31);
  for (int i = 0; i < 500; ++i) values.insert(f.sample({rng.uniform(0, 4000), rng.uniform(0, 4000)}));
  CHECK(values.size() == 2);
}

TEST_CASE("piecewise noise: repeatable per position, variance near nominal") {
  auto f = ScalarField::piecewise(4000.0, 10.0, 20.0, 0.01, 77);
  CHECK(f.sample({3000.0, 100.0}) == f.sample({3000.0, 100.0}));

  // 10^4 distinct 1 m cells inside the x > y region
  double sum = 0.0, sum2 = 0.0;
  int count = 0;
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      double v = f.sample({2000.5 + i, 100.5 + j}) - 20.0;
      sum += v;
      sum2 += v * v;
      ++count;
    }
  }
  double var = (sum2 - sum * sum / count) / (count - 1);
  CHECK(var >= 0.008);
  CHECK(var <= 0.012);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(ScalarField::gaussian_bumps(0.0, 1, 10.0, 0.01, 1), std::invalid_argument);
  CHECK_THROWS_AS(ScalarField::gaussian_bumps(10.0, 0, 10.0, 0.01, 1), std::invalid_argument);
  CHECK_THROWS_AS(ScalarField::gaussian_bumps(10.0, 1, -1.0, 0.01, 1), std::invalid_argument);
  CHECK_THROWS_AS(ScalarField::gaussian_bumps(10.0, 1, 10.0, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(ScalarField::piecewise(10.0, 1.0, 2.0, -0.5, 1), std::invalid_argument);

  auto f = ScalarField::piecewise(4000.0, 10.0, 20.0, 0.0, 1);
  CHECK_THROWS_AS(f.sample({-1.0, 0.0}), std::out_of_range);
  CHECK_THROWS_AS(f.sample({0.0, 4000.1}), std::out_of_range);
}
