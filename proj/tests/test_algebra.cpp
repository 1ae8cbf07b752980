#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "reebinv/linalg.hpp"
#include "reebinv/profile.hpp"
#include "reebinv/random_graph.hpp"
#include "reebinv/reeb.hpp"

using namespace reebinv;

TEST_CASE("rational text round trip", "[rational]") {
  CHECK(parse_rational("3/6") == ratio(1, 2));
  CHECK(parse_rational("-7") == -7);
  CHECK(parse_rational("1.25") == ratio(5, 4));
  CHECK(parse_rational("-0.5") == ratio(-1, 2));
  CHECK(format_rational(ratio(-2, 4)) == "-1/2");
  CHECK(format_rational(ratio(6, 2)) == "3");
  for (const char* bad : {"", "1/0", "abc", "1/2/3", ".", "--1", "1e3"}) CHECK_THROWS_AS(parse_rational(bad), InputError);
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Rational r = rng.uniform_rational(-1000, 1000, 40);
    CHECK(parse_rational(format_rational(r)) == r);
  }
}

TEST_CASE("seeded draws are reproducible", "[rational]") {
  Rng a(5), b(5);
  for (int i = 0; i < 50; ++i) CHECK(a.uniform_rational(-1, 1) == b.uniform_rational(-1, 1));
  Rng c(9);
  for (int i = 0; i < 200; ++i) {
    const Rational r = c.uniform_rational(ratio(1, 3), ratio(1, 2), 6);
    CHECK(r > ratio(1, 3));
    CHECK(r < ratio(1, 2));
  }
}

TEST_CASE("affine solve agrees with substitution", "[linalg]") {
  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = rng.uniform_int(1, 6), cols = rng.uniform_int(1, 6);
    RationalMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.uniform_int(-2, 2);
    // consistent right-hand side from a known solution
    std::vector<Rational> x(cols), rhs(rows, 0);
    for (auto& v : x) v = rng.uniform_int(-3, 3);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) rhs[r] += m(r, c) * x[c];
    const auto sol = solve_affine(m, rhs);
    REQUIRE(sol);
    auto apply = [&](const std::vector<Rational>& v) {
      std::vector<Rational> out(rows, 0);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) out[r] += m(r, c) * v[c];
      return out;
    };
    CHECK(apply(sol->particular) == rhs);
    CHECK(sol->homogeneous.size() == cols - rank(m));
    for (const auto& h : sol->homogeneous) CHECK(apply(h) == std::vector<Rational>(rows, 0));
  }
  RationalMatrix m(2, 1);
  m(0, 0) = 1;
  m(1, 0) = 1;
  CHECK_FALSE(solve_affine(m, {1, 2}));
}

TEST_CASE("triangle sublevel area matches polygon clipping", "[profile]") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    std::array<Rational, 3> v;
    for (auto& x : v) x = rng.uniform_rational(-5, 5, 10);
    if (v[0] == v[1] || v[1] == v[2] || v[0] == v[2]) continue;
    const Rational area = rng.uniform_rational(ratio(1, 10), 3, 8);
    for (int k = 0; k < 7; ++k) {
      const Rational t = rng.uniform_rational(-6, 6, 10);
      CHECK(triangle_sublevel_area(v, area, t) == oracle::clipped_area(v, area, t));
    }
  }
}

TEST_CASE("half of a triangle lies below its middle value", "[profile]") {
  // values 0, 1, 2 on a unit-area triangle: the level 1 chord cuts it in half
  CHECK(triangle_sublevel_area({0, 1, 2}, 1, 1) == ratio(1, 2));
  CHECK(triangle_sublevel_area({0, 1, 2}, 1, ratio(1, 2)) == ratio(1, 8));
}

TEST_CASE("profile moments in closed form", "[profile]") {
  const auto p = EdgeMeasureProfile::uniform(-1, 1, 4);
  CHECK(p.mass() == 4);
  CHECK(p.moment(0) == 4);
  CHECK(p.moment(1) == 0);
  CHECK(p.moment(2) == ratio(4, 3));
  CHECK(p(0) == 2);
  CHECK(p(-5) == 0);
  CHECK(p(5) == 4);
  // density t + 2 on [0, 1]: mass 5/2, first moment 1/3 + 1 = 4/3
  const auto q = linear_density_profile({0, 1}, {2, 3});
  CHECK(q.mass() == ratio(5, 2));
  CHECK(q.moment(1) == ratio(4, 3));
  CHECK(q.partial_moment(1, ratio(1, 2)) == ratio(1, 24) + ratio(1, 4));
}

TEST_CASE("mirror is an involution and reflects moments", "[profile]") {
  Rng rng(23);
  for (int i = 0; i < 30; ++i) {
    const auto g = random_reeb_graph(rng);
    for (const auto& e : g.edges) {
      const auto& p = e.profile;
      CHECK(p.violations().empty());
      const auto m = p.mirrored();
      CHECK(same_measure(m.mirrored(), p));
      CHECK(m.mass() == p.mass());
      CHECK(m.moment(1) == -p.moment(1));
      CHECK(m.moment(2) == p.moment(2));
    }
  }
}

TEST_CASE("sup distance is attained at knots or parabola vertices", "[profile]") {
  const auto a = EdgeMeasureProfile::uniform(0, 2, 2);
  const auto b = linear_density_profile({0, 1, 2}, {ratio(1, 2), ratio(3, 2), ratio(1, 2)});
  // brute force over a fine grid bounds the exact value from below
  Rational grid_max = 0;
  for (int k = 0; k <= 400; ++k) grid_max = std::max(grid_max, Rational(abs(a(ratio(k, 200)) - b(ratio(k, 200)))));
  const Rational exact = sup_distance(a, b);
  CHECK(exact >= grid_max);
  CHECK(exact - grid_max < ratio(1, 1000));
  CHECK(sup_distance(a, a) == 0);
}

TEST_CASE("invalid profiles are reported", "[profile]") {
  EdgeMeasureProfile p = EdgeMeasureProfile::uniform(0, 1, 1);
  p.pieces[0].b = -1;  // decreasing
  CHECK_FALSE(p.violations().empty());
  EdgeMeasureProfile q = EdgeMeasureProfile::uniform(0, 1, 1);
  q.pieces[0].c = 1;  // m(lo) != 0
  CHECK_FALSE(q.violations().empty());
}
