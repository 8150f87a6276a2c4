#include "zonopref/preference.hpp"

#include <algorithm>

#include "zonopref/error.hpp"

namespace zonopref {

Basis Basis::standard(size_t m) {
  Basis b;
  for (size_t k = 0; k < m; ++k) {
    Vec v(m, 0);
    v[k] = 1;
    b.vectors.push_back(std::move(v));
  }
  return b;
}

void validate_basis(const Basis& b) {
  if (b.vectors.empty()) throw Error(ErrorCode::InvalidArgument, "basis is empty");
  const size_t dim = b.vectors.front().size();
  if (dim == 0) throw Error(ErrorCode::DimensionMismatch, "basis vectors are empty");
  bool any_nonzero = false;
  for (size_t k = 0; k < b.vectors.size(); ++k) {
    if (b.vectors[k].size() != dim)
      throw Error(ErrorCode::DimensionMismatch, "basis vectors differ in length");
    for (const auto& c : b.vectors[k])
      if (c < 0)
        throw Error(ErrorCode::NegativeBasisComponent,
                    "basis vector " + std::to_string(k + 1) + " has a negative component");
    if (!is_zero(b.vectors[k])) any_nonzero = true;
  }
  if (!any_nonzero) throw Error(ErrorCode::InvalidArgument, "every basis vector is zero");
  if (!b.scaling.empty()) {
    if (b.scaling.size() != b.vectors.size())
      throw Error(ErrorCode::ArityMismatch, "scaling has " + std::to_string(b.scaling.size()) +
                                                " ranges for " + std::to_string(b.vectors.size()) +
                                                " basis vectors");
    for (const auto& s : b.scaling)
      if (!(s.lo < s.hi))
        throw Error(ErrorCode::InvalidArgument, "scaling range must have lo < hi");
  }
}

bool has_decoupling_pattern(const Basis& b) {
  for (size_t k = 0; k < b.vectors.size(); ++k) {
    bool found = false;
    for (size_t i = 0; i < b.vectors[k].size() && !found; ++i) {
      if (b.vectors[k][i] == 0) continue;
      bool alone = true;
      for (size_t j = 0; j < b.vectors.size(); ++j)
        if (j != k && b.vectors[j][i] != 0) alone = false;
      found = alone;
    }
    if (!found) return false;
  }
  return true;
}

UtilityMap::UtilityMap(std::vector<std::string> alternatives, std::vector<Zonotope> utilities)
    : alternatives_(std::move(alternatives)), utilities_(std::move(utilities)) {
  if (alternatives_.size() != utilities_.size())
    throw Error(ErrorCode::ArityMismatch, "one zonotope per alternative is required");
  if (alternatives_.empty()) throw Error(ErrorCode::InvalidArgument, "no alternatives");
  for (size_t i = 0; i < alternatives_.size(); ++i)
    for (size_t j = i + 1; j < alternatives_.size(); ++j)
      if (alternatives_[i] == alternatives_[j])
        throw Error(ErrorCode::DuplicateElement, "duplicate alternative '" + alternatives_[i] + "'",
                    {alternatives_[i]});
  for (const auto& z : utilities_)
    if (z.dim() != utilities_.front().dim())
      throw Error(ErrorCode::DimensionMismatch, "utilities differ in ambient dimension");
}

size_t UtilityMap::index_of(std::string_view id) const {
  for (size_t i = 0; i < alternatives_.size(); ++i)
    if (alternatives_[i] == id) return i;
  throw Error(ErrorCode::UnknownAlternative, "unknown alternative '" + std::string(id) + "'",
              {std::string(id)});
}

const Zonotope& UtilityMap::utility(std::string_view id) const { return utilities_[index_of(id)]; }

size_t UtilityMap::dim() const { return utilities_.front().dim(); }

bool UtilityMap::same_class(size_t a, size_t b) const {
  if (a == b) return true;
  return decomposition_ && decomposition_->source.indifferent(a, b);
}

namespace {

Rational rescale(const Rational& rank, const Rational& min_rank, const Rational& max_rank,
                 const IntervalValue& target) {
  if (max_rank == min_rank) return target.lo;
  return target.lo + (target.hi - target.lo) * (rank - min_rank) / (max_rank - min_rank);
}

}  // namespace

UtilityMap build_utility_map(std::shared_ptr<const Decomposition> d, const Basis& b) {
  if (!d) throw Error(ErrorCode::InvalidArgument, "no decomposition");
  if (b.vectors.size() != d->m())
    throw Error(ErrorCode::ArityMismatch, "basis has " + std::to_string(b.vectors.size()) +
                                              " vectors for " + std::to_string(d->m()) +
                                              " components");
  validate_basis(b);
  const size_t n = d->source.size();
  std::vector<std::pair<Rational, Rational>> rank_range;
  for (const auto& comp : d->components) {
    if (comp.endpoints.lower.size() != n || comp.endpoints.upper.size() != n)
      throw Error(ErrorCode::ArityMismatch, "component endpoints do not cover the source");
    Rational lo = *std::min_element(comp.endpoints.lower.begin(), comp.endpoints.lower.end());
    Rational hi = *std::max_element(comp.endpoints.upper.begin(), comp.endpoints.upper.end());
    rank_range.emplace_back(lo, hi);
  }

  UtilityMap u;
  u.alternatives_ = d->source.elements();
  for (size_t x = 0; x < n; ++x) {
    std::vector<IntervalValue> intervals;
    for (size_t k = 0; k < d->m(); ++k) {
      Rational lo = d->components[k].endpoints.lower[x];
      Rational hi = d->components[k].endpoints.upper[x];
      if (!b.scaling.empty()) {
        lo = rescale(lo, rank_range[k].first, rank_range[k].second, b.scaling[k]);
        hi = rescale(hi, rank_range[k].first, rank_range[k].second, b.scaling[k]);
      }
      intervals.push_back(IntervalValue::make(lo, hi));
    }
    u.utilities_.push_back(from_intervals(intervals, b.vectors));
  }
  u.basis_ = b;
  u.decomposition_ = std::move(d);
  return u;
}

const char* verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::StrictlyBetter: return "StrictlyBetter";
    case Verdict::StrictlyWorse: return "StrictlyWorse";
    case Verdict::Indifferent: return "Indifferent";
    case Verdict::Incomparable: return "Incomparable";
  }
  return "Incomparable";
}

namespace {

Verdict verdict_from(bool forward, bool backward) {
  if (forward && backward) return Verdict::Indifferent;
  if (forward) return Verdict::StrictlyBetter;
  if (backward) return Verdict::StrictlyWorse;
  return Verdict::Incomparable;
}

bool difference_nonneg(const Zonotope& a, const Zonotope& b) {
  return orthant_position(extended_set_difference(a, b)).nonneg;
}

}  // namespace

ComparisonVerdict compare_indices(const UtilityMap& u, size_t x, size_t y) {
  ComparisonVerdict v;
  if (u.same_class(x, y)) {
    v.forward_contained = v.backward_contained = true;
    v.verdict = Verdict::Indifferent;
    v.reflexive = true;
    return v;
  }
  v.forward_contained = difference_nonneg(u.utilities()[x], u.utilities()[y]);
  v.backward_contained = difference_nonneg(u.utilities()[y], u.utilities()[x]);
  v.verdict = verdict_from(v.forward_contained, v.backward_contained);
  return v;
}

ComparisonVerdict compare(const UtilityMap& u, std::string_view x, std::string_view y) {
  return compare_indices(u, u.index_of(x), u.index_of(y));
}

VerdictMatrix classify_all(const UtilityMap& u) {
  VerdictMatrix m;
  m.alternatives = u.alternatives();
  const size_t n = m.alternatives.size();
  m.cells.assign(n, std::vector<ComparisonVerdict>(n));
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) m.cells[x][y] = compare_indices(u, x, y);
  return m;
}

Verdict relation_verdict(const Preorder& p, size_t x, size_t y) {
  return verdict_from(p.geq(x, y), p.geq(y, x));
}

FidelityReport verify_representation(const UtilityMap& u) {
  const Decomposition* d = u.decomposition();
  if (!d) throw Error(ErrorCode::InvalidArgument, "utility map has no source relation");
  FidelityReport report;
  const auto& p = d->source;
  const size_t n = p.size();
  for (size_t x = 0; x < n; ++x) {
    if (!difference_nonneg(u.utilities()[x], u.utilities()[x])) ++report.nondegenerate_reflexive_pairs;
    for (size_t y = 0; y < n; ++y) {
      if (u.same_class(x, y)) continue;
      ++report.total_pairs;
      const Verdict truth = relation_verdict(p, x, y);
      const Verdict geometry = compare_indices(u, x, y).verdict;
      if (truth != geometry)
        report.mismatches.push_back({p.elements()[x], p.elements()[y], truth, geometry});
    }
  }
  return report;
}

std::optional<std::pair<std::string, std::string>> basis_faithfulness_search(
    std::shared_ptr<const Decomposition> d, const Basis& b) {
  const UtilityMap u = build_utility_map(std::move(d), b);
  const auto& p = u.decomposition()->source;
  for (size_t x = 0; x < p.size(); ++x)
    for (size_t y = 0; y < p.size(); ++y) {
      if (u.same_class(x, y)) continue;
      if (relation_verdict(p, x, y) != compare_indices(u, x, y).verdict)
        return std::make_pair(p.elements()[x], p.elements()[y]);
    }
  return std::nullopt;
}

}  // namespace zonopref
