#include "zonopref/interval_orders.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "zonopref/error.hpp"

namespace zonopref {

namespace {

using Bits = std::vector<char>;

Bits strict_down_set(const QuotientPoset& q, size_t c) {
  Bits d(q.size(), 0);
  for (size_t b = 0; b < q.size(); ++b) d[b] = q.strictly(c, b) ? 1 : 0;
  return d;
}

bool subset(const Bits& a, const Bits& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

size_t popcount(const Bits& a) { return static_cast<size_t>(std::count(a.begin(), a.end(), 1)); }

}  // namespace

std::optional<TwoPlusTwo> find_two_plus_two(const QuotientPoset& q) {
  const size_t n = q.size();
  std::vector<Bits> down(n);
  for (size_t c = 0; c < n; ++c) down[c] = strict_down_set(q, c);
  for (size_t x = 0; x < n; ++x)
    for (size_t y = x + 1; y < n; ++y) {
      if (subset(down[x], down[y]) || subset(down[y], down[x])) continue;
      size_t a2 = n, b2 = n;
      for (size_t z = 0; z < n; ++z) {
        if (a2 == n && down[x][z] && !down[y][z]) a2 = z;
        if (b2 == n && down[y][z] && !down[x][z]) b2 = z;
      }
      return TwoPlusTwo{x, a2, y, b2};
    }
  return std::nullopt;
}

namespace {

[[noreturn]] void throw_not_interval(const QuotientPoset& q, const TwoPlusTwo& w) {
  throw Error(ErrorCode::NotIntervalOrder,
              "order contains a 2+2: " + q.label(w.a1) + " > " + q.label(w.a2) + ", " +
                  q.label(w.b1) + " > " + q.label(w.b2),
              {q.label(w.a1), q.label(w.a2), q.label(w.b1), q.label(w.b2)});
}

// Per-class witness check on the poset level.
bool class_endpoints_represent(const QuotientPoset& q, const std::vector<long>& lower,
                               const std::vector<long>& upper) {
  for (size_t a = 0; a < q.size(); ++a) {
    if (lower[a] > upper[a]) return false;
    for (size_t b = 0; b < q.size(); ++b)
      if (a != b && q.strictly(a, b) != (lower[a] >= upper[b])) return false;
  }
  return true;
}

EndpointAssignment expand(const QuotientPoset& q, const std::vector<long>& lower,
                          const std::vector<long>& upper) {
  EndpointAssignment e;
  for (size_t i = 0; i < q.elements().size(); ++i) {
    const size_t c = q.class_of_element(i);
    e.lower.emplace_back(lower[c]);
    e.upper.emplace_back(upper[c]);
  }
  return e;
}

}  // namespace

EndpointAssignment build_endpoints(const QuotientPoset& q) {
  if (auto w = find_two_plus_two(q)) throw_not_interval(q, *w);
  const size_t n = q.size();
  std::vector<Bits> down(n);
  for (size_t c = 0; c < n; ++c) down[c] = strict_down_set(q, c);

  // Distinct strict down-sets form a chain under inclusion; rank by size.
  std::vector<Bits> ranks;
  for (const auto& d : down)
    if (std::find(ranks.begin(), ranks.end(), d) == ranks.end()) ranks.push_back(d);
  std::sort(ranks.begin(), ranks.end(),
            [](const Bits& a, const Bits& b) { return popcount(a) < popcount(b); });
  const long top = static_cast<long>(ranks.size());

  std::vector<long> lower(n), upper(n);
  for (size_t c = 0; c < n; ++c) {
    lower[c] = std::find(ranks.begin(), ranks.end(), down[c]) - ranks.begin();
    upper[c] = top;
    for (long r = 0; r < top; ++r)
      if (ranks[static_cast<size_t>(r)][c]) {
        upper[c] = r;
        break;
      }
  }
  if (!class_endpoints_represent(q, lower, upper))
    throw Error(ErrorCode::Internal, "endpoint construction failed its witness check");
  return expand(q, lower, upper);
}

bool endpoints_represent(const Preorder& order, const EndpointAssignment& e) {
  const size_t n = order.size();
  if (e.lower.size() != n || e.upper.size() != n) return false;
  for (size_t x = 0; x < n; ++x) {
    if (e.lower[x] > e.upper[x]) return false;
    for (size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      if (order.indifferent(x, y)) {
        if (e.lower[x] != e.lower[y] || e.upper[x] != e.upper[y]) return false;
      } else if (order.geq(x, y) != (e.lower[x] >= e.upper[y])) {
        return false;
      }
    }
  }
  return true;
}

namespace {

// Feasibility of one interval-order component as a system of difference
// constraints over integer endpoints l(c), u(c):
//   u(c) - l(c) >= 0,  l(x) - u(y) >= 1 for x above y in the poset,
//   u(y) - l(x) >= 0 for every forbidden (x, y), i.e. x must not beat y.
class ComponentSystem {
 public:
  explicit ComponentSystem(const QuotientPoset& q) : n_(q.size()) {
    for (size_t c = 0; c < n_; ++c) base_.push_back({upper_var(c), lower_var(c), 0});
    for (size_t x = 0; x < n_; ++x)
      for (size_t y = 0; y < n_; ++y)
        if (q.strictly(x, y)) base_.push_back({lower_var(x), upper_var(y), -1});
  }

  // Returns endpoint potentials, or nullopt on a negative cycle.
  std::optional<std::vector<long>> solve(const std::vector<std::pair<size_t, size_t>>& forbidden) const {
    std::vector<Edge> edges = base_;
    for (auto [x, y] : forbidden) edges.push_back({upper_var(y), lower_var(x), 0});
    const size_t vars = 2 * n_;
    std::vector<long> dist(vars, 0);
    for (size_t round = 0; round <= vars; ++round) {
      bool changed = false;
      for (const auto& e : edges)
        if (dist[e.from] + e.weight < dist[e.to]) {
          dist[e.to] = dist[e.from] + e.weight;
          changed = true;
        }
      if (!changed) return dist;
    }
    return std::nullopt;
  }

  static size_t lower_var(size_t c) { return 2 * c; }
  static size_t upper_var(size_t c) { return 2 * c + 1; }

 private:
  struct Edge {
    size_t from, to;
    long weight;  // dist[to] <= dist[from] + weight
  };
  size_t n_;
  std::vector<Edge> base_;
};

// Ordered incomparable pairs (x, y) that must each be "x not above y" in
// some component; all other incomparable pairs follow from these.
std::vector<std::pair<size_t, size_t>> interval_critical_pairs(const QuotientPoset& q) {
  std::vector<std::pair<size_t, size_t>> pairs;
  const size_t n = q.size();
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      if (x == y || !q.incomparable(x, y)) continue;
      bool critical = true;
      for (size_t z = 0; z < n && critical; ++z) {
        if (q.strictly(z, x) && !q.strictly(z, y)) critical = false;
        if (q.strictly(y, z) && !q.strictly(x, z)) critical = false;
      }
      if (critical) pairs.emplace_back(x, y);
    }
  return pairs;
}

using PairGroup = std::vector<std::pair<size_t, size_t>>;

// Assigns every group of forbidden pairs to one of k components.
class ComponentColoring {
 public:
  ComponentColoring(const ComponentSystem& system, std::vector<PairGroup> groups, size_t k,
                    size_t node_budget)
      : system_(system), groups_(std::move(groups)), k_(k), budget_(node_budget),
        forbidden_(k) {}

  // nullopt when the budget ran out before a decision.
  std::optional<bool> run() {
    bool found = search(0, 0);
    if (exhausted_) return std::nullopt;
    return found;
  }

  const std::vector<PairGroup>& forbidden() const { return forbidden_; }

 private:
  bool search(size_t next, size_t used) {
    if (next == groups_.size()) return true;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    const size_t limit = std::min(used + 1, k_);
    for (size_t c = 0; c < limit; ++c) {
      auto& f = forbidden_[c];
      const size_t before = f.size();
      f.insert(f.end(), groups_[next].begin(), groups_[next].end());
      if (system_.solve(f) && search(next + 1, std::max(used, c + 1))) return true;
      f.resize(before);
      if (exhausted_) return false;
    }
    return false;
  }

  const ComponentSystem& system_;
  std::vector<PairGroup> groups_;
  size_t k_;
  size_t budget_;
  size_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<PairGroup> forbidden_;
};

IntervalOrderComponent make_component(const QuotientPoset& q, const ComponentSystem& system,
                                      const PairGroup& forbidden) {
  auto dist = system.solve(forbidden);
  if (!dist) throw Error(ErrorCode::Internal, "component system became infeasible");
  const size_t n = q.size();
  BoolMatrix order(n);
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y)
      if (x == y || (*dist)[ComponentSystem::lower_var(x)] > (*dist)[ComponentSystem::upper_var(y)])
        order.set(x, y);
  QuotientPoset component = QuotientPoset::from_classes(q.classes(), std::move(order));
  // Re-express on the source element order.
  const auto& elements = q.elements();
  BoolMatrix reach(elements.size());
  for (size_t i = 0; i < elements.size(); ++i)
    for (size_t j = 0; j < elements.size(); ++j)
      if (component.geq(q.class_of_element(i), q.class_of_element(j))) reach.set(i, j);
  IntervalOrderComponent result{Preorder::from_closed(elements, std::move(reach)), {}};
  QuotientPoset on_source = quotient(result.order);
  result.endpoints = build_endpoints(on_source);
  return result;
}

std::vector<PairGroup> unordered_incomparable_groups(const QuotientPoset& q) {
  std::vector<PairGroup> groups;
  for (size_t x = 0; x < q.size(); ++x)
    for (size_t y = x + 1; y < q.size(); ++y)
      if (q.incomparable(x, y)) groups.push_back({{x, y}, {y, x}});
  return groups;
}

constexpr size_t kPreferredSearchBudget = 200000;

}  // namespace

Decomposition interval_dimension(const QuotientPoset& q, size_t max_m, SearchMode mode,
                                 size_t guard) {
  if (max_m == 0) throw Error(ErrorCode::InvalidArgument, "max_m must be positive");
  const ComponentSystem system(q);
  Decomposition d{q.inflate(), {}};
  std::vector<PairGroup> forbidden;

  if (mode == SearchMode::Exact) {
    if (q.size() > guard)
      throw Error(ErrorCode::InstanceTooLarge,
                  "exact interval-dimension search refuses " + std::to_string(q.size()) +
                      " classes (guard " + std::to_string(guard) + "); use greedy mode");
    std::vector<PairGroup> critical;
    for (auto p : interval_critical_pairs(q)) critical.push_back({p});

    size_t m = 0;
    for (size_t k = 1; k <= max_m && m == 0; ++k) {
      ComponentColoring coloring(system, critical, k, std::numeric_limits<size_t>::max());
      if (*coloring.run()) {
        m = k;
        forbidden = coloring.forbidden();
      }
    }
    if (m == 0)
      throw Error(ErrorCode::NoDecompositionWithinBound,
                  "no decomposition into at most " + std::to_string(max_m) +
                      " interval orders");

    ComponentColoring preferred(system, unordered_incomparable_groups(q), m,
                                kPreferredSearchBudget);
    if (auto ok = preferred.run(); ok && *ok) forbidden = preferred.forbidden();
  } else {
    // First-fit: each component absorbs every still-uncovered incomparable
    // pair it can keep incomparable.
    auto groups = unordered_incomparable_groups(q);
    std::vector<char> covered(groups.size(), 0);
    size_t remaining = groups.size();
    do {
      PairGroup f;
      for (size_t g = 0; g < groups.size(); ++g) {
        if (covered[g]) continue;
        const size_t before = f.size();
        f.insert(f.end(), groups[g].begin(), groups[g].end());
        if (system.solve(f)) {
          covered[g] = 1;
          --remaining;
        } else {
          f.resize(before);
        }
      }
      forbidden.push_back(std::move(f));
    } while (remaining > 0);
    if (forbidden.size() > max_m)
      throw Error(ErrorCode::NoDecompositionWithinBound,
                  "greedy decomposition needs " + std::to_string(forbidden.size()) +
                      " components, above the bound " + std::to_string(max_m));
  }

  for (const auto& f : forbidden) d.components.push_back(make_component(q, system, f));
  if (auto report = check_axiom_A1(d); !report.passed())
    throw Error(ErrorCode::Internal,
                "decomposition failed its own validation: " + report.violations.front().detail);
  return d;
}

namespace {

std::string pair_text(const std::string& a, const char* rel, const std::string& b) {
  return a + " " + rel + " " + b;
}

}  // namespace

AxiomReport check_axiom_A1(const Decomposition& d) {
  AxiomReport report{"A1", {}, {}};
  const auto& src = d.source;
  const auto& el = src.elements();
  const size_t n = src.size();
  if (d.components.empty()) {
    report.violations.push_back({{}, "decomposition has no components"});
    return report;
  }
  for (size_t k = 0; k < d.components.size(); ++k) {
    const auto& comp = d.components[k];
    const std::string tag = "component " + std::to_string(k + 1) + ": ";
    if (comp.order.elements() != el) {
      report.violations.push_back({{}, tag + "element list differs from the source"});
      continue;
    }
    for (size_t x = 0; x < n; ++x)
      for (size_t y = 0; y < n; ++y)
        if (src.geq(x, y) && !comp.order.geq(x, y))
          report.violations.push_back(
              {{el[x], el[y]}, tag + "does not extend the source at " + pair_text(el[x], ">=", el[y])});
    QuotientPoset cq = quotient(comp.order);
    if (auto w = find_two_plus_two(cq))
      report.violations.push_back({{cq.label(w->a1), cq.label(w->a2), cq.label(w->b1), cq.label(w->b2)},
                                   tag + "is not an interval order (contains a 2+2)"});
    if (!endpoints_represent(comp.order, comp.endpoints))
      report.violations.push_back({{}, tag + "endpoints do not represent the component order"});
  }
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      bool all = true;
      for (const auto& comp : d.components)
        if (comp.order.elements() == el && !comp.order.geq(x, y)) all = false;
      if (all != src.geq(x, y))
        report.violations.push_back(
            {{el[x], el[y]}, "intersection disagrees with the source at " + pair_text(el[x], ">=", el[y])});
    }
  return report;
}

AxiomReport check_axiom_A2(const Decomposition& d) {
  AxiomReport report{"A2", {}, {}};
  const auto& src = d.source;
  const auto& el = src.elements();
  for (size_t x = 0; x < src.size(); ++x)
    for (size_t y = x + 1; y < src.size(); ++y) {
      if (!src.incomparable(x, y)) continue;
      bool somewhere_incomparable = false, forward = false, backward = false;
      for (const auto& comp : d.components) {
        if (comp.order.incomparable(x, y)) somewhere_incomparable = true;
        if (comp.order.strictly(x, y)) forward = true;
        if (comp.order.strictly(y, x)) backward = true;
      }
      if (somewhere_incomparable) continue;
      report.violations.push_back({{el[x], el[y]}, "comparable in every component"});
      if (forward && backward)
        report.notes.push_back({{el[x], el[y]}, "recovered by opposite orientation"});
    }
  return report;
}

AxiomReport check_axiom_A3(const Decomposition& d) {
  AxiomReport report{"A3", {}, {}};
  const auto& src = d.source;
  const auto& el = src.elements();
  for (size_t x = 0; x < src.size(); ++x)
    for (size_t y = 0; y < src.size(); ++y) {
      if (!src.strictly(x, y)) continue;
      bool found = false;
      for (const auto& comp : d.components)
        if (comp.order.strictly(x, y)) found = true;
      if (!found)
        report.violations.push_back({{el[x], el[y]}, "strict pair is strict in no component"});
    }
  return report;
}

AxiomReport check_axiom_A4(const Preorder& p, const VectorAlternativeTable& table,
                           SureThingGuard guard) {
  AxiomReport report{"A4", {}, {}};
  const size_t n = p.size();
  const size_t d = table.states;
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "vector table has zero states");
  if (n > guard.max_elements || d > guard.max_states)
    throw Error(ErrorCode::InstanceTooLarge,
                "sure-thing enumeration refuses " + std::to_string(n) + " elements / " +
                    std::to_string(d) + " states");
  std::vector<const std::vector<std::string>*> coords(n);
  for (size_t i = 0; i < n; ++i) {
    auto it = table.coordinates.find(p.elements()[i]);
    if (it == table.coordinates.end())
      throw Error(ErrorCode::MissingCoordinates,
                  "no coordinates for '" + p.elements()[i] + "'", {p.elements()[i]});
    if (it->second.size() != d)
      throw Error(ErrorCode::MissingCoordinates,
                  "coordinates of '" + p.elements()[i] + "' have length " +
                      std::to_string(it->second.size()) + ", expected " + std::to_string(d),
                  {p.elements()[i]});
    coords[i] = &it->second;
  }

  auto agree = [&](size_t a, size_t b, unsigned mask, bool inside) {
    for (size_t s = 0; s < d; ++s) {
      bool in_s = (mask >> s) & 1U;
      if (in_s == inside && (*coords[a])[s] != (*coords[b])[s]) return false;
    }
    return true;
  };

  const auto& el = p.elements();
  for (unsigned mask = 1; mask < (1U << d); ++mask) {
    std::string states = "{";
    for (size_t s = 0; s < d; ++s)
      if ((mask >> s) & 1U) states += (states.size() > 1 ? "," : "") + std::to_string(s + 1);
    states += "}";
    for (size_t x = 0; x < n; ++x)
      for (size_t y = 0; y < n; ++y) {
        if (!agree(x, y, mask, false)) continue;
        for (size_t z = 0; z < n; ++z) {
          if (!agree(x, z, mask, true)) continue;
          for (size_t t = 0; t < n; ++t) {
            if (!agree(y, t, mask, true) || !agree(z, t, mask, false)) continue;
            if (p.geq(x, y) && !p.geq(z, t))
              report.violations.push_back(
                  {{el[x], el[y], el[z], el[t]},
                   "S=" + states + ": " + el[x] + " >= " + el[y] + " but not " + el[z] + " >= " +
                       el[t]});
          }
        }
      }
  }
  return report;
}

AxiomReport check_axiom_A5(const Preorder& p, bool strict_betweenness) {
  AxiomReport report{strict_betweenness ? "A5-strict" : "A5", {}, {}};
  const auto& el = p.elements();
  for (size_t x = 0; x < p.size(); ++x)
    for (size_t y = 0; y < p.size(); ++y) {
      if (!p.strictly(x, y)) continue;
      bool found = false;
      for (size_t z = 0; z < p.size() && !found; ++z) {
        if (strict_betweenness)
          found = z != x && z != y && p.strictly(x, z) && p.strictly(z, y);
        else
          found = p.geq(x, z) && p.geq(z, y);
      }
      if (!found) report.violations.push_back({{el[x], el[y]}, "no element between the pair"});
    }
  return report;
}

}  // namespace zonopref
