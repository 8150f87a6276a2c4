#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "zonopref/error.hpp"
#include "zonopref/lp.hpp"
#include "zonopref/zonotope.hpp"

using namespace zonopref;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Zonotope box(Rational x0, Rational x1, Rational y0, Rational y1) {
  return Zonotope({x0, y0}, {{{1, 0}, {0, x1 - x0}}, {{0, 1}, {0, y1 - y0}}});
}

// U(A) and U(B) from the separated example.
Zonotope rect_a() {
  std::vector<IntervalValue> iv{{0, 1}, {0, q(1, 2)}};
  std::vector<Vec> basis{{1, 0}, {0, 1}};
  return from_intervals(iv, basis);
}

Zonotope hexagon_b() {
  std::vector<IntervalValue> iv{{0, 1}, {0, 1}, {0, 1}};
  std::vector<Vec> basis{{1, 0}, {q(1, 2), q(1, 2)}, {0, 1}};
  return from_intervals(iv, basis, {2, 2});
}

// The overlapping pair.
Zonotope square() { return box(0, 1, 0, 1); }
Zonotope parallelogram() {
  return Zonotope({q(1, 2), q(1, 2)}, {{{1, q(1, 5)}, {0, 1}}, {{q(1, 5), 1}, {0, 1}}});
}

bool same_support(const Zonotope& a, const Zonotope& b) {
  for (const auto& w : unit_directions(a.dim(), 100))
    if (support(a, w) != support(b, w)) return false;
  return true;
}

}  // namespace

TEST_CASE("simplex: small programs") {
  // max x + y, x + 2y <= 4, 3x + y <= 6
  lp::LinearProgram p{2, {1, 1}, {{{1, 2}, lp::Sense::LessEq, 4}, {{3, 1}, lp::Sense::LessEq, 6}}};
  lp::Result r = lp::solve(p);
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.value == q(14, 5));
  CHECK(r.x == Vec{q(8, 5), q(6, 5)});

  lp::LinearProgram infeasible{1, {1}, {{{1}, lp::Sense::GreaterEq, 2}, {{1}, lp::Sense::LessEq, 1}}};
  CHECK(lp::solve(infeasible).status == lp::Status::Infeasible);
  lp::LinearProgram unbounded{1, {1}, {{{1}, lp::Sense::GreaterEq, 2}}};
  CHECK(lp::solve(unbounded).status == lp::Status::Unbounded);
  lp::LinearProgram eq{2, {-1, -1}, {{{1, 1}, lp::Sense::Equal, 3}, {{1, -1}, lp::Sense::Equal, 1}}};
  lp::Result re = lp::solve(eq);
  REQUIRE(re.status == lp::Status::Optimal);
  CHECK(re.x == Vec{2, 1});
}

TEST_CASE("simplex: degenerate cycling example terminates") {
  // Beale's example, which cycles under the textbook pivot rule.
  lp::LinearProgram p{4, {q(3, 4), -150, q(1, 50), -6},
                      {{{q(1, 4), -60, q(-1, 25), 9}, lp::Sense::LessEq, 0},
                       {{q(1, 2), -90, q(-1, 50), 3}, lp::Sense::LessEq, 0},
                       {{0, 0, 1, 0}, lp::Sense::LessEq, 1}}};
  lp::Result r = lp::solve(p);
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.value == q(1, 20));
}

TEST_CASE("from_intervals examples") {
  CHECK(vertices_2d(rect_a()) == std::vector<Vec>{{0, 0}, {1, 0}, {1, q(1, 2)}, {0, q(1, 2)}});
  auto hex = vertices_2d(hexagon_b());
  CHECK(hex.size() == 6);
  CHECK(hex.front() == Vec{2, 2});
  std::vector<IntervalValue> iv{{3, 3}};
  std::vector<Vec> basis{{1, 2}};
  Zonotope pt = from_intervals(iv, basis);
  CHECK(vertices_2d(pt) == std::vector<Vec>{{3, 6}});
  std::vector<Vec> negative{{-1, 2}};
  try {
    from_intervals(iv, negative);
    FAIL("expected NegativeBasisComponent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NegativeBasisComponent);
  }
  CHECK_THROWS_AS(IntervalValue::make(2, 1), Error);
}

TEST_CASE("minkowski sum and reflection") {
  Zonotope z = rect_a();
  CHECK(same_support(minkowski_sum(z, Zonotope::point({0, 0})), z));
  Zonotope seg({0}, {{{1}, {0, 1}}});
  Zonotope twice = minkowski_sum(seg, seg);
  CHECK(support(twice, {1}) == 2);
  CHECK(support(twice, {-1}) == 0);
  CHECK(reflect(Zonotope::point({1, -2})).base() == Vec{-1, 2});
  CHECK(same_support(reflect(reflect(hexagon_b())), hexagon_b()));
  CHECK(support(reflect(seg), {1}) == 0);
  CHECK(support(reflect(seg), {-1}) == 1);

  std::mt19937 rng(17);
  for (int t = 0; t < 30; ++t) {
    Zonotope a = oracle::random_zonotope_2d(rng, 3), b = oracle::random_zonotope_2d(rng, 3),
             c = oracle::random_zonotope_2d(rng, 3);
    CHECK(same_support(minkowski_sum(a, minkowski_sum(b, c)), minkowski_sum(minkowski_sum(a, b), c)));
  }
  CHECK_THROWS_AS(minkowski_sum(seg, z), Error);
}

TEST_CASE("extended set difference") {
  Zonotope unit = box(0, 1, 0, 1);
  Zonotope d = extended_set_difference(unit, unit);
  CHECK(vertices_2d(d) == std::vector<Vec>{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  Zonotope e = extended_set_difference(box(2, 3, 2, 3), unit);
  CHECK(vertices_2d(e) == std::vector<Vec>{{1, 1}, {3, 1}, {3, 3}, {1, 3}});
  CHECK(orthant_position(e).position == OrthantPosition::ContainedStrictPos);
  CHECK(orthant_position(extended_set_difference(square(), parallelogram())).position ==
        OrthantPosition::Straddles);
  CHECK(orthant_position(extended_set_difference(parallelogram(), square())).position ==
        OrthantPosition::Straddles);
}

TEST_CASE("support function examples") {
  CHECK(support(rect_a(), {1, 1}) == q(3, 2));
  CHECK(-support(hexagon_b(), {-1, -1}) == 4);
  CHECK(support(Zonotope::point({2, 5}), {3, -1}) == 1);
  std::mt19937 rng(23);
  for (int t = 0; t < 100; ++t) {
    Zonotope z = oracle::random_zonotope_2d(rng, 4);
    Vec w{oracle::random_rational(rng, -3, 3, 3), oracle::random_rational(rng, -3, 3, 3)};
    CHECK(support(z, w) == oracle::brute_support(z, w));
  }
}

TEST_CASE("orthant classification") {
  auto c = orthant_position(box(1, 2, 0, 3));
  CHECK(c.position == OrthantPosition::ContainedNonneg);
  CHECK(c.nonneg);
  CHECK_FALSE(c.strict_pos);
  CHECK(c.min == Vec{1, 0});
  CHECK(c.max == Vec{2, 3});
  CHECK(orthant_position(box(1, 3, 1, 3)).position == OrthantPosition::ContainedStrictPos);
  CHECK(orthant_position(box(-1, 1, -1, 1)).position == OrthantPosition::Straddles);
  CHECK(orthant_position(box(-2, -1, -3, 0)).position == OrthantPosition::ContainedNonpos);
  CHECK(orthant_position(box(-2, -1, -3, -1)).position == OrthantPosition::ContainedStrictNeg);
  // Tolerance admits a slightly negative minimum as nonnegative.
  CHECK(orthant_position(box(q(-1, 100), 1, 0, 1), q(1, 50)).nonneg);
}

TEST_CASE("separation: separated example") {
  auto cert = separating_hyperplane(hexagon_b(), rect_a(), q(1, 1000));
  REQUIRE(cert);
  for (const auto& w : cert->normal) CHECK(w > 0);
  CHECK(cert->normal == Vec{1, 1});
  CHECK(cert->sup_below == q(3, 2));
  CHECK(cert->inf_above == 4);
  CHECK(cert->margin == q(5, 2));
  CHECK(cert->threshold == q(11, 4));
  CHECK(certificate_valid(*cert, hexagon_b(), rect_a()));

  SeparationCertificate fixed = evaluate_separation(hexagon_b(), rect_a(), {1, 1});
  CHECK(fixed.sup_below < q(5, 2));
  CHECK(fixed.inf_above > q(5, 2));

  auto simplex = separating_hyperplane(hexagon_b(), rect_a(), q(1, 1000), NormalScaling::Simplex);
  REQUIRE(simplex);
  // Margin 3/2 - w1/2 on the simplex peaks at the smallest admissible w1.
  CHECK(simplex->normal == Vec{q(1, 1000), q(999, 1000)});
  CHECK(simplex->margin == q(2999, 2000));
  CHECK(certificate_valid(*simplex, hexagon_b(), rect_a()));

  CHECK_FALSE(separating_hyperplane(rect_a(), hexagon_b(), q(1, 1000)));
}

TEST_CASE("separation: overlapping example and identical bodies") {
  CHECK_FALSE(separating_hyperplane(square(), parallelogram(), q(1, 1000)));
  CHECK_FALSE(separating_hyperplane(parallelogram(), square(), q(1, 1000)));
  CHECK_FALSE(separating_hyperplane(hexagon_b(), hexagon_b(), q(1, 1000)));
}

TEST_CASE("separation is complete against a grid of positive normals") {
  std::mt19937 rng(31);
  for (int t = 0; t < 60; ++t) {
    Zonotope a = oracle::random_zonotope_2d(rng, 2), b = oracle::random_zonotope_2d(rng, 2);
    a = Zonotope(add(a.base(), {oracle::random_rational(rng, 0, 4, 1), oracle::random_rational(rng, 0, 4, 1)}),
                 a.generators());
    bool grid_found = false;
    for (int i = 1; i <= 20 && !grid_found; ++i) {
      Vec w{q(i, 20), q(21 - i, 20)};
      if (evaluate_separation(a, b, w).margin > 0) grid_found = true;
    }
    auto cert = separating_hyperplane(a, b, q(1, 1000));
    // A grid normal is admissible, so the optimizer cannot miss it.
    if (grid_found) CHECK(cert.has_value());
    if (cert) {
      CHECK(cert->margin > 0);
      CHECK(certificate_valid(*cert, a, b));
      CHECK_FALSE(intersects(a, b));
    }
  }
}

TEST_CASE("vertices agree with the convex hull of corner points") {
  std::mt19937 rng(37);
  for (int t = 0; t < 100; ++t) {
    Zonotope z = oracle::random_zonotope_2d(rng, 4);
    CHECK(vertices_2d(z) == oracle::convex_hull(oracle::corner_points(z)));
  }
  CHECK(vertices_2d(Zonotope({1, 1}, {{{1, 1}, {0, 2}}})).size() == 2);
  CHECK_THROWS_AS(vertices_2d(Zonotope::point({1, 2, 3})), Error);
}

TEST_CASE("Hausdorff distance") {
  Zonotope unit = box(0, 1, 0, 1);
  CHECK(hausdorff_distance(unit, unit, HausdorffMethod::Exact2d).squared == 0);
  auto dp = hausdorff_distance(Zonotope::point({0, 0}), Zonotope::point({3, 4}), HausdorffMethod::Exact2d);
  CHECK(dp.squared == 25);
  CHECK(dp.exact);
  CHECK(dp.value() == doctest::Approx(5.0));
  auto ds = hausdorff_distance(unit, box(q(1, 3), q(4, 3), 0, 1), HausdorffMethod::Exact2d);
  CHECK(ds.squared == q(1, 9));
  // Point to segment: the far endpoint governs.
  auto dseg = hausdorff_distance(Zonotope::point({0, 0}), Zonotope({0, 0}, {{{1, 0}, {0, 2}}}),
                                 HausdorffMethod::Exact2d);
  CHECK(dseg.squared == 4);

  std::mt19937 rng(41);
  for (int t = 0; t < 30; ++t) {
    Zonotope a = oracle::random_zonotope_2d(rng, 3), b = oracle::random_zonotope_2d(rng, 3);
    auto exact = hausdorff_distance(a, b, HausdorffMethod::Exact2d);
    auto sampled = hausdorff_distance(a, b, HausdorffMethod::SupportSampled, 64);
    CHECK_FALSE(sampled.exact);
    CHECK(sampled.squared <= exact.squared);
    CHECK(exact.squared == hausdorff_distance(b, a, HausdorffMethod::Exact2d).squared);
  }
}

TEST_CASE("unit directions are exact unit vectors") {
  for (size_t dim : {1u, 2u, 3u, 4u})
    for (const auto& w : unit_directions(dim, 40)) CHECK(squared_norm(w) == 1);
}

TEST_CASE("intersection and containment") {
  CHECK(intersects(square(), parallelogram()));
  CHECK_FALSE(intersects(rect_a(), hexagon_b()));
  CHECK(intersects(hexagon_b(), hexagon_b()));
  CHECK(contains_point(square(), {q(1, 2), 1}));
  CHECK_FALSE(contains_point(square(), {q(1, 2), q(11, 10)}));
  CHECK(intersects(box(0, 1, 0, 1), box(1, 2, 1, 2)));  // touching corner
}

TEST_CASE("northeast dominance") {
  auto ne = northeast_of(hexagon_b(), rect_a());
  CHECK(ne.weak);
  CHECK(ne.strict);
  auto self = northeast_of(square(), square());
  CHECK(self.weak);
  CHECK_FALSE(northeast_of(rect_a(), hexagon_b()).weak);
  Zonotope many({0, 0}, std::vector<Generator>(9, Generator{{1, 0}, {0, 1}}));
  CHECK_THROWS_AS(northeast_of(many, many), Error);
}
