#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zonopref/order_core.hpp"
#include "zonopref/rational.hpp"

namespace zonopref {

// a1 above a2, b1 above b2, every cross pair incomparable. Class indices.
struct TwoPlusTwo {
  size_t a1, a2, b1, b2;
};

// Scans strict down-sets for a pair not nested by inclusion; the witness is
// read off the two set differences.
std::optional<TwoPlusTwo> find_two_plus_two(const QuotientPoset& q);

// Closed intervals [lower, upper] per source element (indexed like the
// element list of the order they describe).
struct EndpointAssignment {
  Vec lower;
  Vec upper;
};

// Interval witness of a Fishburn-style rank construction: lower is the rank
// of the strict down-set, upper the rank of the first down-set containing
// the class. Throws Error(NotIntervalOrder) with the 2+2 witness labels.
EndpointAssignment build_endpoints(const QuotientPoset& q);

// True when lower <= upper everywhere, mutually related elements share an
// interval, and for all other pairs x >= y iff lower(x) >= upper(y).
bool endpoints_represent(const Preorder& order, const EndpointAssignment& endpoints);

struct IntervalOrderComponent {
  Preorder order;
  EndpointAssignment endpoints;
};

struct Decomposition {
  Preorder source;
  std::vector<IntervalOrderComponent> components;

  size_t m() const noexcept { return components.size(); }
};

enum class SearchMode { Exact, Greedy };

inline constexpr size_t kDefaultIntervalGuard = 8;

// Exact mode returns a decomposition with the minimum number of interval
// order components (throws NoDecompositionWithinBound / InstanceTooLarge).
// Among minimum decompositions, one where every incomparable pair stays
// incomparable in some component is preferred when the search finds it.
// Greedy mode packs incomparable pairs first-fit into components.
Decomposition interval_dimension(const QuotientPoset& q, size_t max_m, SearchMode mode,
                                 size_t guard = kDefaultIntervalGuard);

struct Violation {
  std::vector<std::string> elements;
  std::string detail;
};

struct AxiomReport {
  std::string axiom;
  std::vector<Violation> violations;
  // Informational findings that do not fail the check.
  std::vector<Violation> notes;

  bool passed() const noexcept { return violations.empty(); }
};

// Decomposition invariants: components extend the source, are interval
// orders with representing endpoints, and intersect to the source.
AxiomReport check_axiom_A1(const Decomposition& d);
// Incomparable pairs must be incomparable in some component. Pairs that are
// only recovered through opposite orientations are listed as notes.
AxiomReport check_axiom_A2(const Decomposition& d);
AxiomReport check_axiom_A3(const Decomposition& d);

struct VectorAlternativeTable {
  size_t states = 0;
  std::map<std::string, std::vector<std::string>> coordinates;
};

struct SureThingGuard {
  size_t max_elements = 8;
  size_t max_states = 6;
};

AxiomReport check_axiom_A4(const Preorder& p, const VectorAlternativeTable& table,
                           SureThingGuard guard = {});
AxiomReport check_axiom_A5(const Preorder& p, bool strict_betweenness);

}  // namespace zonopref
