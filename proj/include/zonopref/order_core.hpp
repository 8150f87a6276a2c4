#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace zonopref {

// Dense square boolean matrix; entry (i, j) true means i is at least as good as j.
class BoolMatrix {
 public:
  BoolMatrix() = default;
  explicit BoolMatrix(size_t n) : n_(n), bits_(n * n, 0) {}

  size_t size() const noexcept { return n_; }
  bool operator()(size_t i, size_t j) const { return bits_[i * n_ + j] != 0; }
  void set(size_t i, size_t j, bool value = true) { bits_[i * n_ + j] = value ? 1 : 0; }

  // Reflexive-transitive closure in place (Warshall).
  void close();

  friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;

 private:
  size_t n_ = 0;
  std::vector<std::uint8_t> bits_;
};

// Raw, unvalidated carrier of a binary relation over named alternatives.
struct Relation {
  std::vector<std::string> elements;
  // (a, b) means a is at least as good as b.
  std::vector<std::pair<std::string, std::string>> pairs;
};

enum class ClosureMode { Strict, Close };

class Preorder {
 public:
  Preorder() = default;

  // Builds from an already closed matrix; throws Error(Internal) when the
  // matrix is not reflexive and transitive.
  static Preorder from_closed(std::vector<std::string> elements, BoolMatrix reach);

  size_t size() const noexcept { return elements_.size(); }
  const std::vector<std::string>& elements() const noexcept { return elements_; }
  const BoolMatrix& reachability() const noexcept { return reach_; }

  std::optional<size_t> index_of(std::string_view id) const;
  // Throws Error(UnknownElement).
  size_t require_index(std::string_view id) const;

  bool geq(size_t i, size_t j) const { return reach_(i, j); }
  bool strictly(size_t i, size_t j) const { return reach_(i, j) && !reach_(j, i); }
  bool indifferent(size_t i, size_t j) const { return reach_(i, j) && reach_(j, i); }
  bool incomparable(size_t i, size_t j) const { return !reach_(i, j) && !reach_(j, i); }

  // Every related pair of the closure, reflexive loops included.
  Relation relation() const;

  friend bool operator==(const Preorder& a, const Preorder& b) {
    return a.elements_ == b.elements_ && a.reach_ == b.reach_;
  }

 private:
  std::vector<std::string> elements_;
  std::unordered_map<std::string, size_t> index_;
  BoolMatrix reach_;
};

// Strict mode rejects relations that are not already reflexive and
// transitive (NotReflexive / NotTransitive with witnesses); Close mode
// returns the reflexive-transitive closure.
Preorder validate_preorder(const Relation& relation, ClosureMode mode);

// Poset over the indifference classes of a preorder. Classes are ordered by
// the position of their first member in the source element list.
class QuotientPoset {
 public:
  QuotientPoset() = default;

  // Singleton classes named by `labels`; `order` must be a partial order.
  static QuotientPoset from_matrix(std::vector<std::string> labels, BoolMatrix order);
  static QuotientPoset from_classes(std::vector<std::vector<std::string>> classes,
                                    BoolMatrix order);

  size_t size() const noexcept { return classes_.size(); }
  const std::vector<std::vector<std::string>>& classes() const noexcept { return classes_; }
  const std::string& label(size_t c) const { return classes_[c].front(); }
  const BoolMatrix& order() const noexcept { return order_; }

  // Source elements in their original order, and the class of each.
  const std::vector<std::string>& elements() const noexcept { return elements_; }
  size_t class_of_element(size_t element_index) const { return class_of_[element_index]; }
  std::optional<size_t> class_of(std::string_view id) const;

  bool geq(size_t a, size_t b) const { return order_(a, b); }
  bool strictly(size_t a, size_t b) const { return a != b && order_(a, b); }
  bool incomparable(size_t a, size_t b) const { return !order_(a, b) && !order_(b, a); }

  // The preorder on source elements induced by this poset.
  Preorder inflate() const;

 private:
  friend QuotientPoset quotient(const Preorder& p);
  void index_elements();

  std::vector<std::vector<std::string>> classes_;
  BoolMatrix order_;
  std::vector<std::string> elements_;
  std::vector<size_t> class_of_;
  std::unordered_map<std::string, size_t> class_index_;
};

QuotientPoset quotient(const Preorder& p);

struct WidthResult {
  size_t width = 0;
  std::vector<size_t> max_antichain;             // class indices
  std::vector<std::vector<size_t>> chain_cover;  // each chain listed best first
};

// Minimum chain cover via maximum bipartite matching; antichain from the
// Konig cover. Throws Error(Internal) if the two sizes disagree.
WidthResult width(const QuotientPoset& q);

enum class Tiebreak { Lexicographic, InputOrder };

struct LinearExtension {
  std::vector<size_t> order;  // class indices, best first
  friend bool operator==(const LinearExtension&, const LinearExtension&) = default;
};

LinearExtension linear_extension(const QuotientPoset& q, Tiebreak tiebreak);
// Same, for an arbitrary partial order matrix over class indices.
LinearExtension linear_extension_of(const BoolMatrix& order);

bool is_linear_extension(const QuotientPoset& q, const LinearExtension& ext);

// Visits linear extensions in lexicographic order of class index sequences.
// The visitor returns false to stop early.
void for_each_linear_extension(const QuotientPoset& q,
                               const std::function<bool(const LinearExtension&)>& visit);

struct ExtensionList {
  std::vector<LinearExtension> extensions;
  bool truncated = false;
};

ExtensionList enumerate_linear_extensions(const QuotientPoset& q, size_t cap);

inline constexpr size_t kDefaultDimensionGuard = 10;

// Smallest realizer with at most max_k linear extensions, or nullopt.
// Throws Error(InstanceTooLarge) above `guard` classes.
std::optional<std::vector<LinearExtension>> order_dimension(const QuotientPoset& q, size_t max_k,
                                                            size_t guard = kDefaultDimensionGuard);

// True when the intersection of the extensions equals the order exactly.
bool is_realizer(const QuotientPoset& q, std::span<const LinearExtension> realizer);

inline constexpr size_t kDefaultProductBound = 4096;

// Componentwise order on the Cartesian product of class sets. Element labels
// are "(l1,l2,...)" built from class labels.
QuotientPoset product_order(std::span<const QuotientPoset> factors,
                            size_t max_elements = kDefaultProductBound);

bool is_chain(const QuotientPoset& q);

}  // namespace zonopref
