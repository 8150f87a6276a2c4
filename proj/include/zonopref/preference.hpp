#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zonopref/interval_orders.hpp"
#include "zonopref/zonotope.hpp"

namespace zonopref {

struct Basis {
  std::vector<Vec> vectors;
  // Optional per-component affine rescale of integer ranks onto [lo, hi].
  std::vector<IntervalValue> scaling;

  static Basis standard(size_t m);
};

// Throws NegativeBasisComponent / DimensionMismatch / InvalidArgument.
void validate_basis(const Basis& b);

// For every component k some coordinate is touched by v_k alone.
bool has_decoupling_pattern(const Basis& b);

class UtilityMap {
 public:
  // Geometry-first construction: explicit zonotopes, no source relation.
  UtilityMap(std::vector<std::string> alternatives, std::vector<Zonotope> utilities);

  const std::vector<std::string>& alternatives() const noexcept { return alternatives_; }
  const std::vector<Zonotope>& utilities() const noexcept { return utilities_; }
  const Zonotope& utility(std::string_view id) const;
  size_t index_of(std::string_view id) const;  // throws UnknownAlternative
  size_t dim() const;

  const Basis* basis() const noexcept { return basis_ ? &*basis_ : nullptr; }
  const Decomposition* decomposition() const noexcept { return decomposition_.get(); }

  // Alternatives sharing one indifference class of the source.
  bool same_class(size_t a, size_t b) const;

 private:
  friend UtilityMap build_utility_map(std::shared_ptr<const Decomposition> d, const Basis& b);
  UtilityMap() = default;

  std::vector<std::string> alternatives_;
  std::vector<Zonotope> utilities_;
  std::optional<Basis> basis_;
  std::shared_ptr<const Decomposition> decomposition_;
};

// U(x) = sum_k I_k(x) v_k with I_k taken from component k's endpoints.
UtilityMap build_utility_map(std::shared_ptr<const Decomposition> d, const Basis& b);

enum class Verdict { StrictlyBetter, StrictlyWorse, Indifferent, Incomparable };

const char* verdict_name(Verdict v) noexcept;

struct ComparisonVerdict {
  bool forward_contained = false;   // U(x) - U(y) within the closed nonnegative orthant
  bool backward_contained = false;  // U(y) - U(x) likewise
  Verdict verdict = Verdict::Incomparable;
  // Set when the verdict comes from reflexivity rather than geometry
  // (x == y, or x and y indifferent in the source).
  bool reflexive = false;
};

ComparisonVerdict compare(const UtilityMap& u, std::string_view x, std::string_view y);
ComparisonVerdict compare_indices(const UtilityMap& u, size_t x, size_t y);

struct VerdictMatrix {
  std::vector<std::string> alternatives;
  std::vector<std::vector<ComparisonVerdict>> cells;  // cells[x][y] compares x to y
};

VerdictMatrix classify_all(const UtilityMap& u);

struct Mismatch {
  std::string x;
  std::string y;
  Verdict relation_says;
  Verdict geometry_says;
};

struct FidelityReport {
  size_t total_pairs = 0;  // off-diagonal ordered pairs compared
  std::vector<Mismatch> mismatches;
  // Reflexive pairs whose geometric self-difference is not in the orthant.
  size_t nondegenerate_reflexive_pairs = 0;

  bool faithful() const noexcept { return mismatches.empty(); }
};

Verdict relation_verdict(const Preorder& p, size_t x, size_t y);

// Compares the source relation (ground truth) with the geometry over every
// ordered pair of distinct indifference classes. Throws InvalidArgument for
// geometry-first maps.
FidelityReport verify_representation(const UtilityMap& u);

// First pair (lexicographic by element position) where geometry and relation
// disagree under basis b.
std::optional<std::pair<std::string, std::string>> basis_faithfulness_search(
    std::shared_ptr<const Decomposition> d, const Basis& b);

}  // namespace zonopref
