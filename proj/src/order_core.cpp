#include "zonopref/order_core.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "zonopref/error.hpp"

namespace zonopref {

void BoolMatrix::close() {
  for (size_t i = 0; i < n_; ++i) set(i, i);
  for (size_t k = 0; k < n_; ++k)
    for (size_t i = 0; i < n_; ++i) {
      if (!(*this)(i, k)) continue;
      for (size_t j = 0; j < n_; ++j)
        if ((*this)(k, j)) set(i, j);
    }
}

namespace {

bool is_reflexive_transitive(const BoolMatrix& m) {
  const size_t n = m.size();
  for (size_t i = 0; i < n; ++i)
    if (!m(i, i)) return false;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (!m(i, j)) continue;
      for (size_t k = 0; k < n; ++k)
        if (m(j, k) && !m(i, k)) return false;
    }
  return true;
}

bool is_antisymmetric(const BoolMatrix& m) {
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = i + 1; j < m.size(); ++j)
      if (m(i, j) && m(j, i)) return false;
  return true;
}

}  // namespace

Preorder Preorder::from_closed(std::vector<std::string> elements, BoolMatrix reach) {
  if (reach.size() != elements.size())
    throw Error(ErrorCode::Internal, "reachability matrix size does not match element count");
  if (!is_reflexive_transitive(reach))
    throw Error(ErrorCode::Internal, "matrix is not a reflexive-transitive relation");
  Preorder p;
  p.elements_ = std::move(elements);
  for (size_t i = 0; i < p.elements_.size(); ++i) {
    if (!p.index_.emplace(p.elements_[i], i).second)
      throw Error(ErrorCode::DuplicateElement, "duplicate element '" + p.elements_[i] + "'",
                  {p.elements_[i]});
  }
  p.reach_ = std::move(reach);
  return p;
}

std::optional<size_t> Preorder::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

size_t Preorder::require_index(std::string_view id) const {
  if (auto i = index_of(id)) return *i;
  throw Error(ErrorCode::UnknownElement, "unknown element '" + std::string(id) + "'",
              {std::string(id)});
}

Relation Preorder::relation() const {
  Relation r;
  r.elements = elements_;
  for (size_t i = 0; i < size(); ++i)
    for (size_t j = 0; j < size(); ++j)
      if (reach_(i, j)) r.pairs.emplace_back(elements_[i], elements_[j]);
  return r;
}

Preorder validate_preorder(const Relation& relation, ClosureMode mode) {
  const size_t n = relation.elements.size();
  if (n == 0) throw Error(ErrorCode::Schema, "relation has no elements");
  std::unordered_map<std::string, size_t> index;
  for (size_t i = 0; i < n; ++i)
    if (!index.emplace(relation.elements[i], i).second)
      throw Error(ErrorCode::DuplicateElement,
                  "duplicate element '" + relation.elements[i] + "'", {relation.elements[i]});

  BoolMatrix m(n);
  for (const auto& [a, b] : relation.pairs) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end())
      throw Error(ErrorCode::UnknownElement, "pair references unknown element '" + a + "'", {a});
    if (ib == index.end())
      throw Error(ErrorCode::UnknownElement, "pair references unknown element '" + b + "'", {b});
    m.set(ia->second, ib->second);
  }

  if (mode == ClosureMode::Close) {
    m.close();
  } else {
    for (size_t i = 0; i < n; ++i)
      if (!m(i, i))
        throw Error(ErrorCode::NotReflexive,
                    "relation is not reflexive: missing (" + relation.elements[i] + ", " +
                        relation.elements[i] + ")",
                    {relation.elements[i]});
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        if (!m(i, j)) continue;
        for (size_t k = 0; k < n; ++k)
          if (m(j, k) && !m(i, k)) {
            const auto& e = relation.elements;
            throw Error(ErrorCode::NotTransitive,
                        "relation is not transitive: " + e[i] + " >= " + e[j] + " and " + e[j] +
                            " >= " + e[k] + " but not " + e[i] + " >= " + e[k],
                        {e[i], e[j], e[k]});
          }
      }
  }
  return Preorder::from_closed(relation.elements, std::move(m));
}

void QuotientPoset::index_elements() {
  class_index_.clear();
  for (size_t c = 0; c < classes_.size(); ++c)
    for (const auto& id : classes_[c])
      if (!class_index_.emplace(id, c).second)
        throw Error(ErrorCode::DuplicateElement, "element '" + id + "' appears in two classes",
                    {id});
  class_of_.clear();
  for (const auto& id : elements_) class_of_.push_back(class_index_.at(id));
}

QuotientPoset QuotientPoset::from_matrix(std::vector<std::string> labels, BoolMatrix order) {
  std::vector<std::vector<std::string>> classes;
  classes.reserve(labels.size());
  for (auto& l : labels) classes.push_back({std::move(l)});
  return from_classes(std::move(classes), std::move(order));
}

QuotientPoset QuotientPoset::from_classes(std::vector<std::vector<std::string>> classes,
                                          BoolMatrix order) {
  if (order.size() != classes.size())
    throw Error(ErrorCode::Internal, "order matrix size does not match class count");
  for (const auto& c : classes)
    if (c.empty()) throw Error(ErrorCode::Internal, "empty class");
  if (!is_reflexive_transitive(order) || !is_antisymmetric(order))
    throw Error(ErrorCode::Internal, "class order is not a partial order");
  QuotientPoset q;
  q.classes_ = std::move(classes);
  q.order_ = std::move(order);
  for (const auto& c : q.classes_)
    for (const auto& id : c) q.elements_.push_back(id);
  q.index_elements();
  return q;
}

std::optional<size_t> QuotientPoset::class_of(std::string_view id) const {
  auto it = class_index_.find(std::string(id));
  if (it == class_index_.end()) return std::nullopt;
  return it->second;
}

Preorder QuotientPoset::inflate() const {
  const size_t n = elements_.size();
  BoolMatrix m(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (order_(class_of_[i], class_of_[j])) m.set(i, j);
  return Preorder::from_closed(elements_, std::move(m));
}

QuotientPoset quotient(const Preorder& p) {
  const size_t n = p.size();
  std::vector<size_t> class_of(n, n);
  std::vector<std::vector<std::string>> classes;
  std::vector<size_t> representative;
  for (size_t i = 0; i < n; ++i) {
    if (class_of[i] != n) continue;
    const size_t c = classes.size();
    classes.emplace_back();
    representative.push_back(i);
    for (size_t j = i; j < n; ++j)
      if (p.indifferent(i, j)) {
        class_of[j] = c;
        classes[c].push_back(p.elements()[j]);
      }
  }
  BoolMatrix order(classes.size());
  for (size_t a = 0; a < classes.size(); ++a)
    for (size_t b = 0; b < classes.size(); ++b)
      if (p.geq(representative[a], representative[b])) order.set(a, b);

  QuotientPoset q;
  q.classes_ = std::move(classes);
  q.order_ = std::move(order);
  q.elements_ = p.elements();
  q.index_elements();
  return q;
}

WidthResult width(const QuotientPoset& q) {
  const size_t n = q.size();
  constexpr size_t kNone = static_cast<size_t>(-1);
  // Split graph: left copy of a, right copy of b, edge when a is strictly above b.
  std::vector<size_t> match_left(n, kNone), match_right(n, kNone);

  std::vector<char> seen;
  std::function<bool(size_t)> augment = [&](size_t a) -> bool {
    for (size_t b = 0; b < n; ++b) {
      if (!q.strictly(a, b) || seen[b]) continue;
      seen[b] = 1;
      if (match_right[b] == kNone || augment(match_right[b])) {
        match_left[a] = b;
        match_right[b] = a;
        return true;
      }
    }
    return false;
  };
  size_t matching = 0;
  for (size_t a = 0; a < n; ++a) {
    seen.assign(n, 0);
    if (augment(a)) ++matching;
  }

  WidthResult result;
  for (size_t a = 0; a < n; ++a) {
    if (match_right[a] != kNone) continue;  // has a predecessor in its chain
    std::vector<size_t> chain;
    for (size_t cur = a; cur != kNone; cur = match_left[cur]) chain.push_back(cur);
    result.chain_cover.push_back(std::move(chain));
  }

  // Konig: alternating reachability from unmatched left vertices.
  std::vector<char> z_left(n, 0), z_right(n, 0);
  std::vector<size_t> stack;
  for (size_t a = 0; a < n; ++a)
    if (match_left[a] == kNone) {
      z_left[a] = 1;
      stack.push_back(a);
    }
  while (!stack.empty()) {
    size_t a = stack.back();
    stack.pop_back();
    for (size_t b = 0; b < n; ++b) {
      if (!q.strictly(a, b) || z_right[b] || match_left[a] == b) continue;
      z_right[b] = 1;
      size_t next = match_right[b];
      if (next != kNone && !z_left[next]) {
        z_left[next] = 1;
        stack.push_back(next);
      }
    }
  }
  for (size_t a = 0; a < n; ++a)
    if (z_left[a] && !z_right[a]) result.max_antichain.push_back(a);

  result.width = n - matching;
  if (result.chain_cover.size() != result.width || result.max_antichain.size() != result.width)
    throw Error(ErrorCode::Internal, "Dilworth equality failed: chain cover " +
                                         std::to_string(result.chain_cover.size()) +
                                         " vs antichain " +
                                         std::to_string(result.max_antichain.size()));
  for (size_t i = 0; i < result.max_antichain.size(); ++i)
    for (size_t j = i + 1; j < result.max_antichain.size(); ++j)
      if (!q.incomparable(result.max_antichain[i], result.max_antichain[j]))
        throw Error(ErrorCode::Internal, "recovered antichain has a comparable pair");
  return result;
}

namespace {

LinearExtension topological(const BoolMatrix& order,
                            const std::function<bool(size_t, size_t)>& before) {
  const size_t n = order.size();
  std::vector<size_t> above(n, 0);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      if (a != b && order(a, b)) ++above[b];
  std::vector<char> placed(n, 0);
  LinearExtension ext;
  ext.order.reserve(n);
  for (size_t step = 0; step < n; ++step) {
    size_t pick = n;
    for (size_t c = 0; c < n; ++c)
      if (!placed[c] && above[c] == 0 && (pick == n || before(c, pick))) pick = c;
    if (pick == n) throw Error(ErrorCode::Internal, "order has a cycle");
    placed[pick] = 1;
    ext.order.push_back(pick);
    for (size_t b = 0; b < n; ++b)
      if (b != pick && order(pick, b)) --above[b];
  }
  return ext;
}

}  // namespace

LinearExtension linear_extension(const QuotientPoset& q, Tiebreak tiebreak) {
  if (tiebreak == Tiebreak::InputOrder)
    return topological(q.order(), [](size_t a, size_t b) { return a < b; });
  return topological(q.order(), [&q](size_t a, size_t b) {
    return q.label(a) != q.label(b) ? q.label(a) < q.label(b) : a < b;
  });
}

LinearExtension linear_extension_of(const BoolMatrix& order) {
  return topological(order, [](size_t a, size_t b) { return a < b; });
}

bool is_linear_extension(const QuotientPoset& q, const LinearExtension& ext) {
  const size_t n = q.size();
  if (ext.order.size() != n) return false;
  std::vector<size_t> position(n, n);
  for (size_t i = 0; i < n; ++i) {
    if (ext.order[i] >= n || position[ext.order[i]] != n) return false;
    position[ext.order[i]] = i;
  }
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      if (q.strictly(a, b) && position[a] > position[b]) return false;
  return true;
}

void for_each_linear_extension(const QuotientPoset& q,
                               const std::function<bool(const LinearExtension&)>& visit) {
  const size_t n = q.size();
  std::vector<size_t> above(n, 0);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      if (q.strictly(a, b)) ++above[b];
  std::vector<char> placed(n, 0);
  LinearExtension current;
  bool stop = false;

  std::function<void()> recurse = [&]() {
    if (stop) return;
    if (current.order.size() == n) {
      if (!visit(current)) stop = true;
      return;
    }
    for (size_t c = 0; c < n && !stop; ++c) {
      if (placed[c] || above[c] != 0) continue;
      placed[c] = 1;
      current.order.push_back(c);
      for (size_t b = 0; b < n; ++b)
        if (q.strictly(c, b)) --above[b];
      recurse();
      for (size_t b = 0; b < n; ++b)
        if (q.strictly(c, b)) ++above[b];
      current.order.pop_back();
      placed[c] = 0;
    }
  };
  recurse();
}

ExtensionList enumerate_linear_extensions(const QuotientPoset& q, size_t cap) {
  if (cap == 0) throw Error(ErrorCode::InvalidArgument, "extension cap must be positive");
  ExtensionList list;
  for_each_linear_extension(q, [&](const LinearExtension& ext) {
    if (list.extensions.size() == cap) {
      list.truncated = true;
      return false;
    }
    list.extensions.push_back(ext);
    return true;
  });
  return list;
}

bool is_realizer(const QuotientPoset& q, std::span<const LinearExtension> realizer) {
  const size_t n = q.size();
  if (realizer.empty()) return false;
  BoolMatrix meet(n);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) meet.set(a, b);
  for (const auto& ext : realizer) {
    if (!is_linear_extension(q, ext)) return false;
    std::vector<size_t> position(n);
    for (size_t i = 0; i < n; ++i) position[ext.order[i]] = i;
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b)
        if (position[a] > position[b]) meet.set(a, b, false);
  }
  return meet == q.order();
}

bool is_chain(const QuotientPoset& q) {
  for (size_t a = 0; a < q.size(); ++a)
    for (size_t b = a + 1; b < q.size(); ++b)
      if (q.incomparable(a, b)) return false;
  return true;
}

namespace {

// Adds "x above y" to a closed partial order; false if that creates a cycle.
bool add_above(BoolMatrix& m, size_t x, size_t y) {
  if (m(y, x)) return false;
  if (m(x, y)) return true;
  const size_t n = m.size();
  for (size_t u = 0; u < n; ++u) {
    if (!m(u, x)) continue;
    for (size_t v = 0; v < n; ++v)
      if (m(y, v)) m.set(u, v);
  }
  return true;
}

// Incomparable (x, y) such that every realizer placing x above y in some
// extension also handles all pairs it dominates.
std::vector<std::pair<size_t, size_t>> dimension_critical_pairs(const QuotientPoset& q) {
  std::vector<std::pair<size_t, size_t>> pairs;
  const size_t n = q.size();
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      if (x == y || !q.incomparable(x, y)) continue;
      bool critical = true;
      for (size_t z = 0; z < n && critical; ++z) {
        if (q.strictly(x, z) && !q.strictly(y, z)) critical = false;  // D(x) within D(y)
        if (q.strictly(z, y) && !q.strictly(z, x)) critical = false;  // U(y) within U(x)
      }
      if (critical) pairs.emplace_back(x, y);
    }
  return pairs;
}

bool color_pairs(const std::vector<std::pair<size_t, size_t>>& pairs, size_t next,
                 std::vector<BoolMatrix>& colors, size_t used, size_t k) {
  if (next == pairs.size()) return true;
  auto [x, y] = pairs[next];
  for (size_t c = 0; c < used; ++c)
    if (colors[c](x, y)) return color_pairs(pairs, next + 1, colors, used, k);
  const size_t limit = std::min(used + 1, k);
  for (size_t c = 0; c < limit; ++c) {
    BoolMatrix saved = colors[c];
    if (add_above(colors[c], x, y) &&
        color_pairs(pairs, next + 1, colors, std::max(used, c + 1), k))
      return true;
    colors[c] = std::move(saved);
  }
  return false;
}

}  // namespace

std::optional<std::vector<LinearExtension>> order_dimension(const QuotientPoset& q, size_t max_k,
                                                            size_t guard) {
  if (q.size() > guard)
    throw Error(ErrorCode::InstanceTooLarge,
                "dimension search refuses " + std::to_string(q.size()) +
                    " classes (guard " + std::to_string(guard) + ")");
  if (max_k == 0) throw Error(ErrorCode::InvalidArgument, "max_k must be positive");
  const auto pairs = dimension_critical_pairs(q);
  for (size_t k = 1; k <= max_k; ++k) {
    std::vector<BoolMatrix> colors(k, q.order());
    if (!color_pairs(pairs, 0, colors, 0, k)) continue;
    std::vector<LinearExtension> realizer;
    for (const auto& c : colors) {
      LinearExtension ext = linear_extension_of(c);
      if (std::find(realizer.begin(), realizer.end(), ext) == realizer.end())
        realizer.push_back(std::move(ext));
    }
    if (!is_realizer(q, realizer))
      throw Error(ErrorCode::Internal, "dimension search produced an invalid realizer");
    if (realizer.size() < k)
      throw Error(ErrorCode::Internal, "dimension search found duplicate extensions at minimum");
    return realizer;
  }
  return std::nullopt;
}

QuotientPoset product_order(std::span<const QuotientPoset> factors, size_t max_elements) {
  if (factors.empty()) throw Error(ErrorCode::InvalidArgument, "product of zero posets");
  size_t total = 1;
  for (const auto& f : factors) {
    if (f.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty factor");
    if (total > max_elements / f.size())
      throw Error(ErrorCode::ProductTooLarge,
                  "product exceeds " + std::to_string(max_elements) + " elements");
    total *= f.size();
  }
  std::vector<std::vector<size_t>> tuples(total, std::vector<size_t>(factors.size()));
  for (size_t t = 0; t < total; ++t) {
    size_t rest = t;
    for (size_t f = factors.size(); f-- > 0;) {
      tuples[t][f] = rest % factors[f].size();
      rest /= factors[f].size();
    }
  }
  std::vector<std::string> labels;
  labels.reserve(total);
  for (const auto& tup : tuples) {
    std::string label = "(";
    for (size_t f = 0; f < tup.size(); ++f) {
      if (f) label += ",";
      label += factors[f].label(tup[f]);
    }
    labels.push_back(label + ")");
  }
  BoolMatrix order(total);
  for (size_t a = 0; a < total; ++a)
    for (size_t b = 0; b < total; ++b) {
      bool geq = true;
      for (size_t f = 0; f < factors.size() && geq; ++f)
        geq = factors[f].geq(tuples[a][f], tuples[b][f]);
      if (geq) order.set(a, b);
    }
  return QuotientPoset::from_matrix(std::move(labels), std::move(order));
}

}  // namespace zonopref
