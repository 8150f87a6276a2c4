#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <random>

#include "oracles.hpp"
#include "zonopref/error.hpp"
#include "zonopref/preference.hpp"

using namespace zonopref;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Preorder pre(std::vector<std::string> elements,
             std::vector<std::pair<std::string, std::string>> pairs) {
  return validate_preorder({std::move(elements), std::move(pairs)}, ClosureMode::Close);
}

std::shared_ptr<const Decomposition> decompose(const Preorder& p, SearchMode mode = SearchMode::Exact) {
  return std::make_shared<const Decomposition>(interval_dimension(quotient(p), 8, mode));
}

Preorder two_plus_two() { return pre({"a1", "a2", "b1", "b2"}, {{"a1", "a2"}, {"b1", "b2"}}); }

UtilityMap separated_pair() {
  std::vector<IntervalValue> ia{{0, 1}, {0, q(1, 2)}};
  std::vector<Vec> std2{{1, 0}, {0, 1}};
  std::vector<IntervalValue> ib{{0, 1}, {0, 1}, {0, 1}};
  std::vector<Vec> hex{{1, 0}, {q(1, 2), q(1, 2)}, {0, 1}};
  return UtilityMap({"A", "B"}, {from_intervals(ia, std2), from_intervals(ib, hex, {2, 2})});
}

UtilityMap overlapping_pair() {
  Zonotope sq({0, 0}, {{{1, 0}, {0, 1}}, {{0, 1}, {0, 1}}});
  Zonotope par({q(1, 2), q(1, 2)}, {{{1, q(1, 5)}, {0, 1}}, {{q(1, 5), 1}, {0, 1}}});
  return UtilityMap({"A", "B"}, {sq, par});
}

}  // namespace

TEST_CASE("basis validation and decoupling") {
  CHECK_NOTHROW(validate_basis(Basis::standard(3)));
  CHECK(has_decoupling_pattern(Basis::standard(3)));
  Basis skew{{{1, 1}, {1, 2}}, {}};
  CHECK_NOTHROW(validate_basis(skew));
  CHECK_FALSE(has_decoupling_pattern(skew));
  CHECK(has_decoupling_pattern(Basis{{{1, 0, 1}, {0, 1, 1}}, {}}));
  try {
    validate_basis(Basis{{{1, -1}}, {}});
    FAIL("expected NegativeBasisComponent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NegativeBasisComponent);
  }
  try {
    validate_basis(Basis{{{1, 0}, {1}}, {}});
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("utility shapes under different bases") {
  Preorder anti = pre({"x", "y"}, {});
  auto d = decompose(anti);
  REQUIRE(d->m() == 1);
  // Two unit intervals, hand-built, to look at the shapes alone.
  Decomposition two{anti, {d->components[0], d->components[0]}};
  two.components[0].endpoints = {{0, 0}, {1, 1}};
  two.components[1].endpoints = {{0, 0}, {1, 1}};
  auto shared = std::make_shared<const Decomposition>(two);

  UtilityMap rect = build_utility_map(shared, Basis::standard(2));
  CHECK(vertices_2d(rect.utility("x")) == std::vector<Vec>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  UtilityMap par = build_utility_map(shared, Basis{{{1, 1}, {1, 2}}, {}});
  CHECK(vertices_2d(par.utility("x")) == std::vector<Vec>{{0, 0}, {1, 1}, {2, 3}, {1, 2}});

  Decomposition three{anti, {two.components[0], two.components[0], two.components[0]}};
  Basis rhombic{{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}, {}};
  UtilityMap rd = build_utility_map(std::make_shared<const Decomposition>(three), rhombic);
  Zonotope direct({0, 0, 0}, {{{1, 1, 0}, {0, 1}}, {{0, 1, 1}, {0, 1}}, {{1, 0, 1}, {0, 1}}});
  for (const auto& w : unit_directions(3, 100)) {
    CHECK(support(rd.utility("x"), w) == support(direct, w));
    CHECK(support(rd.utility("x"), w) == oracle::brute_support(direct, w));
  }
  CHECK(rd.dim() == 3);

  CHECK_THROWS_AS(build_utility_map(shared, Basis::standard(3)), Error);
}

TEST_CASE("compare on the geometry-first examples") {
  UtilityMap sep = separated_pair();
  ComparisonVerdict ba = compare(sep, "B", "A");
  CHECK(ba.verdict == Verdict::StrictlyBetter);
  CHECK(ba.forward_contained);
  CHECK_FALSE(ba.backward_contained);
  CHECK(compare(sep, "A", "B").verdict == Verdict::StrictlyWorse);

  UtilityMap ov = overlapping_pair();
  CHECK(compare(ov, "A", "B").verdict == Verdict::Incomparable);
  VerdictMatrix m = classify_all(ov);
  CHECK(m.cells[0][1].verdict == Verdict::Incomparable);
  CHECK(m.cells[1][0].verdict == Verdict::Incomparable);

  ComparisonVerdict self = compare(ov, "A", "A");
  CHECK(self.verdict == Verdict::Indifferent);
  CHECK(self.reflexive);

  try {
    compare(sep, "A", "Z");
    FAIL("expected UnknownAlternative");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownAlternative);
  }
  CHECK_THROWS_AS(verify_representation(sep), Error);
}

TEST_CASE("classify_all on small relations") {
  Preorder c2 = pre({"a", "b"}, {{"a", "b"}});
  VerdictMatrix m = classify_all(build_utility_map(decompose(c2), Basis::standard(1)));
  CHECK(m.cells[0][1].verdict == Verdict::StrictlyBetter);
  CHECK(m.cells[1][0].verdict == Verdict::StrictlyWorse);
  CHECK(m.cells[0][0].verdict == Verdict::Indifferent);
  CHECK(m.cells[1][1].verdict == Verdict::Indifferent);

  Preorder anti = pre(oracle::names(4), {});
  VerdictMatrix ma = classify_all(build_utility_map(decompose(anti), Basis::standard(1)));
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j)
      if (i != j) CHECK(ma.cells[i][j].verdict == Verdict::Incomparable);
}

TEST_CASE("indifferent alternatives compare as reflexive") {
  Preorder p = pre({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}, {"a", "c"}});
  UtilityMap u = build_utility_map(decompose(p), Basis::standard(1));
  CHECK(u.same_class(0, 1));
  ComparisonVerdict v = compare(u, "a", "b");
  CHECK(v.verdict == Verdict::Indifferent);
  CHECK(v.reflexive);
  CHECK(compare(u, "b", "c").verdict == Verdict::StrictlyBetter);
  FidelityReport r = verify_representation(u);
  CHECK(r.faithful());
  CHECK(r.total_pairs == 4);
}

TEST_CASE("standard basis is faithful on every poset up to 5 classes") {
  for (size_t n = 1; n <= 5; ++n)
    for (const auto& m : oracle::all_posets(n)) {
      Preorder p = QuotientPoset::from_matrix(oracle::names(n), m).inflate();
      auto d = decompose(p);
      FidelityReport r = verify_representation(build_utility_map(d, Basis::standard(d->m())));
      CHECK(r.faithful());
      CHECK(r.total_pairs == n * (n - 1));
      CHECK_FALSE(basis_faithfulness_search(d, Basis::standard(d->m())));
    }
}

TEST_CASE("greedy decompositions are faithful too") {
  std::mt19937 rng(43);
  for (int t = 0; t < 20; ++t) {
    Preorder p = oracle::random_poset(6 + rng() % 5, rng).inflate();
    auto d = decompose(p, SearchMode::Greedy);
    CHECK(verify_representation(build_utility_map(d, Basis::standard(d->m()))).faithful());
  }
}

TEST_CASE("a skewed basis can lose faithfulness on the 2+2") {
  auto d = decompose(two_plus_two());
  REQUIRE(d->m() == 2);
  Basis skew{{{1, 1}, {1, 2}}, {}};
  auto counter = basis_faithfulness_search(d, skew);
  REQUIRE(counter);
  FidelityReport r = verify_representation(build_utility_map(d, skew));
  CHECK_FALSE(r.faithful());
  CHECK(r.mismatches.front().x == counter->first);
  CHECK(r.mismatches.front().y == counter->second);
  // The relation says incomparable; the geometry orders the pair.
  CHECK(r.mismatches.front().relation_says == Verdict::Incomparable);
}

TEST_CASE("one component with any positive vector stays faithful") {
  std::mt19937 rng(47);
  for (int t = 0; t < 20; ++t) {
    // 2+2-free orders have m = 1.
    QuotientPoset qp = oracle::random_poset(1 + rng() % 6, rng);
    if (find_two_plus_two(qp)) continue;
    auto d = decompose(qp.inflate());
    REQUIRE(d->m() == 1);
    Vec v{oracle::random_rational(rng, 1, 5, 3), oracle::random_rational(rng, 0, 5, 3)};
    CHECK_FALSE(basis_faithfulness_search(d, Basis{{v}, {}}));
  }
}

TEST_CASE("affine rescaling of endpoints preserves every verdict") {
  std::mt19937 rng(53);
  for (int t = 0; t < 40; ++t) {
    Preorder p = oracle::random_poset(2 + rng() % 5, rng).inflate();
    auto d = decompose(p);
    UtilityMap plain = build_utility_map(d, Basis::standard(d->m()));
    Basis scaled = Basis::standard(d->m());
    for (size_t k = 0; k < d->m(); ++k) {
      Rational lo = oracle::random_rational(rng, -3, 3, 4);
      scaled.scaling.push_back({lo, lo + oracle::random_rational(rng, 1, 4, 4)});
    }
    UtilityMap u = build_utility_map(d, scaled);
    CHECK(verify_representation(u).faithful());
    VerdictMatrix a = classify_all(plain), b = classify_all(u);
    for (size_t i = 0; i < p.size(); ++i)
      for (size_t j = 0; j < p.size(); ++j) CHECK(a.cells[i][j].verdict == b.cells[i][j].verdict);
  }
  Basis bad = Basis::standard(1);
  bad.scaling.push_back({1, 1});
  CHECK_THROWS_AS(validate_basis(bad), Error);
}

TEST_CASE("single alternative") {
  Preorder p = pre({"solo"}, {});
  FidelityReport r = verify_representation(build_utility_map(decompose(p), Basis::standard(1)));
  CHECK(r.faithful());
  CHECK(r.total_pairs == 0);
}

TEST_CASE("verdicts are antisymmetric and strict disjoint pairs have certificates") {
  std::mt19937 rng(59);
  size_t strict_disjoint = 0;
  for (int t = 0; t < 60; ++t) {
    Preorder p = oracle::random_poset(2 + rng() % 6, rng).inflate();
    auto d = decompose(p);
    UtilityMap u = build_utility_map(d, Basis::standard(d->m()));
    VerdictMatrix m = classify_all(u);
    const size_t n = p.size();
    for (size_t x = 0; x < n; ++x)
      for (size_t y = 0; y < n; ++y) {
        const Verdict a = m.cells[x][y].verdict, b = m.cells[y][x].verdict;
        CHECK((a == Verdict::StrictlyBetter) == (b == Verdict::StrictlyWorse));
        CHECK((a == Verdict::Incomparable) == (b == Verdict::Incomparable));
        if (a == Verdict::StrictlyBetter && !intersects(u.utilities()[x], u.utilities()[y])) {
          ++strict_disjoint;
          auto cert = separating_hyperplane(u.utilities()[x], u.utilities()[y], Rational(1, 1000));
          REQUIRE(cert);
          CHECK(certificate_valid(*cert, u.utilities()[x], u.utilities()[y]));
        }
      }
  }
  CHECK(strict_disjoint > 0);
}

TEST_CASE("positive scaling of decoupled basis vectors keeps every verdict") {
  std::mt19937 rng(61);
  for (int t = 0; t < 30; ++t) {
    Preorder p = oracle::random_poset(3 + rng() % 5, rng).inflate();
    auto d = decompose(p);
    Basis scaled = Basis::standard(d->m());
    for (auto& v : scaled.vectors) v = scale(v, oracle::random_rational(rng, 1, 6, 5));
    REQUIRE(has_decoupling_pattern(scaled));
    VerdictMatrix a = classify_all(build_utility_map(d, Basis::standard(d->m())));
    VerdictMatrix b = classify_all(build_utility_map(d, scaled));
    for (size_t i = 0; i < p.size(); ++i)
      for (size_t j = 0; j < p.size(); ++j) CHECK(a.cells[i][j].verdict == b.cells[i][j].verdict);
  }
}
