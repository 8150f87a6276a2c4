// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "oracles.hpp"
#include "zonopref/error.hpp"
#include "zonopref/preference.hpp"

using namespace zonopref;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream why;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

int failures = 0;

void run(const char* id, const char* title, double limit_seconds, const std::function<std::string(Check&)>& body) {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  try {
    detail = body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0)
    c.expect(secs < limit_seconds, "runtime " + std::to_string(secs) + " s over the limit");
  std::printf("%s %s: %s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", id, title, secs,
              detail.empty() ? "" : " ", detail.c_str());
  if (!c.ok) {
    std::printf("    reason: %s\n", c.why.str().c_str());
    ++failures;
  }
  std::fflush(stdout);
}

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

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

QuotientPoset poset(std::vector<std::string> elements,
                    std::vector<std::pair<std::string, std::string>> pairs) {
  return quotient(validate_preorder({std::move(elements), std::move(pairs)}, ClosureMode::Close));
}

std::string size_mix(const std::vector<size_t>& counts) {
  std::string s = "sizes";
  for (size_t i = 0; i < counts.size(); ++i)
    if (counts[i]) s += " " + std::to_string(i) + ":" + std::to_string(counts[i]);
  return s;
}

// stdout+stderr and exit status of a shell command.
std::pair<std::string, int> capture(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) return {"", -1};
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

}  // namespace

int main() {
  run("AC1", "separated example (support values, certificate, verdict)", 1.0, [](Check& c) {
    const Zonotope a = rect_a(), b = hexagon_b();
    const Rational sup_a = support(a, {1, 1});
    const Rational inf_b = -support(b, {-1, -1});
    c.expect(sup_a == q(3, 2), "sup over U(A) is " + format_rational(sup_a));
    c.expect(inf_b == 4, "inf over U(B) is " + format_rational(inf_b));
    auto cert = separating_hyperplane(b, a, q(1, 1000));
    c.expect(cert.has_value(), "no certificate");
    if (cert) {
      for (const auto& w : cert->normal) c.expect(w > 0, "normal not strictly positive");
      c.expect(cert->margin == q(5, 2), "margin " + format_rational(cert->margin));
      c.expect(certificate_valid(*cert, b, a), "certificate does not re-check");
    }
    UtilityMap u({"A", "B"}, {a, b});
    c.expect(compare(u, "B", "A").verdict == Verdict::StrictlyBetter, "B is not StrictlyBetter A");
    return "sup=" + format_rational(sup_a) + " inf=" + format_rational(inf_b) +
           (cert ? " margin=" + format_rational(cert->margin) : "");
  });

  run("AC2", "overlapping example (intersection, no separation, Straddles, Incomparable)", 1.0, [](Check& c) {
    Zonotope sq({0, 0}, {{{1, 0}, {0, 1}}, {{0, 1}, {0, 1}}});
    Zonotope par({q(1, 2), q(1, 2)}, {{{1, q(1, 5)}, {0, 1}}, {{q(1, 5), 1}, {0, 1}}});
    c.expect(intersects(sq, par), "bodies reported disjoint");
    c.expect(!separating_hyperplane(sq, par, q(1, 1000)), "certificate A over B");
    c.expect(!separating_hyperplane(par, sq, q(1, 1000)), "certificate B over A");
    c.expect(orthant_position(extended_set_difference(sq, par)).position == OrthantPosition::Straddles,
             "U(A) - U(B) not Straddles");
    c.expect(orthant_position(extended_set_difference(par, sq)).position == OrthantPosition::Straddles,
             "U(B) - U(A) not Straddles");
    UtilityMap u({"A", "B"}, {sq, par});
    c.expect(compare(u, "A", "B").verdict == Verdict::Incomparable, "verdict not Incomparable");
    return std::string();
  });

  run("AC3", "order examples (width 2 cover, 3-cycle quotient, 2+2 witness)", 0, [](Check& c) {
    QuotientPoset w = poset({"1", "2", "3", "4"}, {{"1", "2"}, {"3", "4"}});
    WidthResult r = width(w);
    c.expect(r.width == 2 && r.chain_cover.size() == 2, "width is not 2");
    std::vector<int> seen(4, 0);
    for (const auto& chain : r.chain_cover) {
      for (size_t i = 0; i + 1 < chain.size(); ++i)
        c.expect(w.strictly(chain[i], chain[i + 1]), "cover contains a non-chain");
      for (size_t x : chain) ++seen[x];
    }
    c.expect(seen == std::vector<int>{1, 1, 1, 1}, "cover is not a partition");
    c.expect(oracle::is_antichain(w, r.max_antichain) && r.max_antichain.size() == 2, "bad antichain");

    QuotientPoset cyc = poset({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
    c.expect(cyc.size() == 1, "3-cycle does not condense to one class");

    QuotientPoset tpt = poset({"a1", "a2", "b1", "b2"}, {{"a1", "a2"}, {"b1", "b2"}});
    auto wit = find_two_plus_two(tpt);
    c.expect(wit.has_value(), "no 2+2 witness");
    if (wit)
      c.expect(tpt.strictly(wit->a1, wit->a2) && tpt.strictly(wit->b1, wit->b2) &&
                   tpt.incomparable(wit->a1, wit->b1) && tpt.incomparable(wit->a1, wit->b2) &&
                   tpt.incomparable(wit->a2, wit->b1) && tpt.incomparable(wit->a2, wit->b2),
               "witness is not a 2+2");
    return std::string();
  });

  run("AC4", "Dilworth: 1000 random posets up to 9 classes vs brute-force antichains", 60.0, [](Check& c) {
    std::mt19937 rng(20240601);
    std::vector<size_t> sizes(10, 0);
    size_t mismatches = 0;
    for (int t = 0; t < 1000; ++t) {
      const size_t n = 1 + rng() % 9;
      ++sizes[n];
      QuotientPoset p = oracle::random_poset(n, rng);
      WidthResult r = width(p);
      const size_t brute = oracle::max_antichain_size(p);
      bool ok = r.width == brute && r.chain_cover.size() == brute && r.max_antichain.size() == brute &&
                oracle::is_antichain(p, r.max_antichain);
      std::vector<int> seen(n, 0);
      for (const auto& chain : r.chain_cover) {
        for (size_t i = 0; i + 1 < chain.size(); ++i) ok = ok && p.strictly(chain[i], chain[i + 1]);
        for (size_t x : chain) ++seen[x];
      }
      ok = ok && std::all_of(seen.begin(), seen.end(), [](int k) { return k == 1; });
      if (!ok) ++mismatches;
    }
    c.expect(mismatches == 0, std::to_string(mismatches) + " mismatches");
    return "mismatches=" + std::to_string(mismatches) + " " + size_mix(sizes);
  });

  run("AC5", "Dushnik-Miller: extension intersection equals the order", 0, [](Check& c) {
    size_t count = 0, bad = 0;
    auto check = [&](const QuotientPoset& p) {
      ++count;
      ExtensionList all = enumerate_linear_extensions(p, 1000000);
      std::vector<std::vector<size_t>> orders;
      for (const auto& e : all.extensions) orders.push_back(e.order);
      if (all.truncated || !(oracle::intersect_orders(p.size(), orders) == p.order())) ++bad;
    };
    for (size_t n = 1; n <= 5; ++n)
      for (const auto& m : oracle::all_posets(n)) check(QuotientPoset::from_matrix(oracle::names(n), m));
    const size_t exhaustive = count;
    std::mt19937 rng(777);
    for (int t = 0; t < 200; ++t) check(oracle::random_poset(1 + rng() % 7, rng));
    c.expect(bad == 0, std::to_string(bad) + " posets not reconstructed");
    return "exhaustive=" + std::to_string(exhaustive) + " random=200 failures=" + std::to_string(bad);
  });

  run("AC6", "interval-order recognition vs O(n^4) brute force, 1000 random orders", 0, [](Check& c) {
    std::mt19937 rng(4242);
    size_t disagree = 0, endpoint_fail = 0, interval = 0;
    for (int t = 0; t < 1000; ++t) {
      QuotientPoset p = oracle::random_poset(1 + rng() % 8, rng);
      const bool brute = oracle::has_two_plus_two(p);
      auto wit = find_two_plus_two(p);
      if (wit.has_value() != brute) ++disagree;
      bool built = false;
      try {
        EndpointAssignment e = build_endpoints(p);
        built = oracle::endpoints_ok(p, e);
        if (!built) ++endpoint_fail;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotIntervalOrder) throw;
      }
      if (built != !brute) ++disagree;
      if (!brute) ++interval;
    }
    c.expect(disagree == 0, std::to_string(disagree) + " disagreements");
    c.expect(endpoint_fail == 0, std::to_string(endpoint_fail) + " endpoint witnesses failed");
    return "interval_orders=" + std::to_string(interval) + " disagreements=" + std::to_string(disagree);
  });

  run("AC7", "representation round-trip on 1000 random posets up to 7 classes", 300.0, [](Check& c) {
    std::mt19937 rng(99);
    size_t unfaithful = 0, pairs = 0;
    std::vector<size_t> ms(9, 0);
    for (int t = 0; t < 1000; ++t) {
      QuotientPoset p = oracle::random_poset(1 + rng() % 7, rng);
      auto d = std::make_shared<const Decomposition>(interval_dimension(p, 8, SearchMode::Exact));
      ++ms[d->m()];
      FidelityReport r = verify_representation(build_utility_map(d, Basis::standard(d->m())));
      pairs += r.total_pairs;
      if (!r.faithful() || r.total_pairs != p.size() * (p.size() - 1)) ++unfaithful;
    }
    c.expect(unfaithful == 0, std::to_string(unfaithful) + " unfaithful maps");
    std::string mix = "m";
    for (size_t m = 1; m < ms.size(); ++m)
      if (ms[m]) mix += " " + std::to_string(m) + ":" + std::to_string(ms[m]);
    return "pairs=" + std::to_string(pairs) + " failures=" + std::to_string(unfaithful) + " " + mix;
  });

  run("AC8", "minimality of the exact interval dimension on all posets up to 6 classes", 0, [](Check& c) {
    const size_t expected[] = {0, 1, 2, 5, 16, 63, 318};
    size_t bad = 0;
    std::string counts;
    for (size_t n = 1; n <= 6; ++n) {
      auto all = oracle::all_posets(n);
      counts += (counts.empty() ? "" : ",") + std::to_string(all.size());
      c.expect(all.size() == expected[n], "generator produced " + std::to_string(all.size()) +
                                              " posets on " + std::to_string(n) + " points");
      for (const auto& m : all) {
        QuotientPoset p = QuotientPoset::from_matrix(oracle::names(n), m);
        Decomposition d = interval_dimension(p, 8, SearchMode::Exact);
        bool ok = d.m() >= 1 && check_axiom_A1(d).passed();
        if (d.m() > 1) {
          try {
            interval_dimension(p, d.m() - 1, SearchMode::Exact);
            ok = false;
          } catch (const Error& e) {
            ok = ok && e.code() == ErrorCode::NoDecompositionWithinBound;
          }
        }
        ok = ok && ((d.m() == 1) == !oracle::has_two_plus_two(p));
        if (!ok) ++bad;
      }
    }
    QuotientPoset tpt = poset({"a1", "a2", "b1", "b2"}, {{"a1", "a2"}, {"b1", "b2"}});
    c.expect(interval_dimension(tpt, 8, SearchMode::Exact).m() == 2, "2+2 does not have m = 2");
    c.expect(bad == 0, std::to_string(bad) + " posets failed");
    return "counts=" + counts + " failures=" + std::to_string(bad);
  });

  run("AC9", "Lipschitz bound for exact Hausdorff distance, 500 perturbations", 0, [](Check& c) {
    std::mt19937 rng(2718);
    size_t violations = 0;
    for (int t = 0; t < 500; ++t) {
      const size_t m = 1 + rng() % 3;
      std::vector<Vec> basis;
      while (basis.size() < m) {
        Vec v{oracle::random_rational(rng, 0, 3, 2), oracle::random_rational(rng, 0, 3, 2)};
        if (!is_zero(v)) basis.push_back(v);
      }
      std::vector<IntervalValue> a, b;
      std::vector<std::pair<Rational, Rational>> bound;
      for (size_t k = 0; k < m; ++k) {
        Rational lo = oracle::random_rational(rng, -2, 2, 4), hi = lo + oracle::random_rational(rng, 0, 2, 4);
        Rational lo2 = lo + oracle::random_rational(rng, -1, 1, 8);
        Rational hi2 = std::max(lo2, Rational(hi + oracle::random_rational(rng, -1, 1, 8)));
        a.push_back({lo, hi});
        b.push_back({lo2, hi2});
        bound.emplace_back(abs(lo2 - lo) + abs(hi2 - hi), squared_norm(basis[k]));
      }
      const Vec base{oracle::random_rational(rng, -2, 2, 2), oracle::random_rational(rng, -2, 2, 2)};
      auto dh = hausdorff_distance(from_intervals(a, basis, base), from_intervals(b, basis, base),
                                   HausdorffMethod::Exact2d);
      if (!dh.exact || !sqrt_le_sqrt_sum(dh.squared, bound)) ++violations;
    }
    c.expect(violations == 0, std::to_string(violations) + " violations");
    return "violations=" + std::to_string(violations);
  });

  run("AC10", "extended difference vs vertex-sum hull, support additivity", 0, [](Check& c) {
    std::mt19937 rng(31415);
    size_t hull_bad = 0, support_bad = 0;
    for (int t = 0; t < 500; ++t) {
      Zonotope a = oracle::random_zonotope_2d(rng, 3), b = oracle::random_zonotope_2d(rng, 3);
      Zonotope d = extended_set_difference(a, b);
      std::vector<Vec> sums;
      for (const auto& p : oracle::corner_points(a))
        for (const auto& r : oracle::corner_points(b)) sums.push_back(sub(p, r));
      if (vertices_2d(d) != oracle::convex_hull(sums)) ++hull_bad;
      for (int k = 0; k < 100; ++k) {
        Vec w{oracle::random_rational(rng, -5, 5, 7), oracle::random_rational(rng, -5, 5, 7)};
        if (support(d, w) != support(a, w) + support(b, negate(w))) ++support_bad;
      }
    }
    c.expect(hull_bad == 0, std::to_string(hull_bad) + " hull mismatches");
    c.expect(support_bad == 0, std::to_string(support_bad) + " support mismatches");
    return "hull_mismatches=" + std::to_string(hull_bad) + " support_mismatches=" + std::to_string(support_bad);
  });

  run("AC11", "report and render are byte-identical across 3 runs on every sample", 0, [](Check& c) {
    const std::string cli = ZP_CLI_PATH, dir = ZP_SAMPLES_DIR;
    auto [listing, status] = capture("ls " + dir);
    c.expect(status == 0, "cannot list samples");
    std::istringstream names(listing);
    std::string name;
    size_t runs = 0;
    while (std::getline(names, name)) {
      if (name.size() < 5 || name.substr(name.size() - 5) != ".json") continue;
      for (const char* cmd : {"report", "render"}) {
        const std::string line = "'" + cli + "' " + cmd + " '" + dir + "/" + name + "'";
        auto first = capture(line);
        for (int k = 0; k < 2; ++k) {
          auto again = capture(line);
          ++runs;
          c.expect(again == first, std::string(cmd) + " differs on " + name);
        }
      }
    }
    return "samples compared, reruns=" + std::to_string(runs);
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
