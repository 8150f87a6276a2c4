#pragma once

#include <optional>
#include <span>
#include <vector>

#include "zonopref/rational.hpp"

namespace zonopref {

struct IntervalValue {
  Rational lo;
  Rational hi;

  // Throws Error(InvalidArgument) when lo > hi.
  static IntervalValue make(Rational lo, Rational hi);
  static IntervalValue point(const Rational& v) { return {v, v}; }
};

struct Generator {
  Vec direction;
  IntervalValue coefficient;
};

// { base + sum_k t_k v_k : t_k in [lo_k, hi_k] }. The generator count may
// exceed the ambient dimension.
class Zonotope {
 public:
  Zonotope() = default;
  // Throws DimensionMismatch on inconsistent lengths and InvalidArgument on
  // a zero direction paired with a non-degenerate coefficient.
  Zonotope(Vec base, std::vector<Generator> generators);

  static Zonotope point(Vec p) { return Zonotope(std::move(p), {}); }

  size_t dim() const noexcept { return base_.size(); }
  const Vec& base() const noexcept { return base_; }
  const std::vector<Generator>& generators() const noexcept { return generators_; }

 private:
  Vec base_;
  std::vector<Generator> generators_;
};

// One generator per (interval, basis vector) pair, offset by `base` (zero
// when empty). Basis components must be nonnegative.
Zonotope from_intervals(std::span<const IntervalValue> intervals, std::span<const Vec> basis,
                        Vec base = {});

Zonotope minkowski_sum(const Zonotope& a, const Zonotope& b);
Zonotope reflect(const Zonotope& z);
// The set of all pairwise differences a - b, realized as x + (-y).
Zonotope extended_set_difference(const Zonotope& x, const Zonotope& y);

// max over z of <w, z>.
Rational support(const Zonotope& z, const Vec& w);
Vec coordinate_min(const Zonotope& z);
Vec coordinate_max(const Zonotope& z);

enum class OrthantPosition {
  ContainedStrictPos,
  ContainedNonneg,
  ContainedStrictNeg,
  ContainedNonpos,
  Straddles,
};

const char* orthant_position_name(OrthantPosition p) noexcept;

struct OrthantClassification {
  OrthantPosition position = OrthantPosition::Straddles;
  bool nonneg = false;
  bool strict_pos = false;
  bool nonpos = false;
  bool strict_neg = false;
  Vec min;
  Vec max;
};

// Per-coordinate extremes decide containment in the closed/open orthants.
// Position reports the strongest of: strict positive, nonnegative, strict
// negative, nonpositive; Straddles otherwise.
OrthantClassification orthant_position(const Zonotope& z, const Rational& tolerance = 0);

struct SeparationCertificate {
  Vec normal;
  Rational threshold;
  Rational margin;     // inf_above - sup_below
  Rational sup_below;  // max over the lower body of <normal, .>
  Rational inf_above;  // min over the upper body of <normal, .>
};

// How the normal is scaled inside the margin program: Box keeps every
// component in [eps, 1]; Simplex fixes the component sum to 1.
enum class NormalScaling { Box, Simplex };

// Maximizes inf_above <w,.> - sup_below <w,.> over admissible normals with
// every component >= eps. Returns a certificate iff the optimum is positive.
std::optional<SeparationCertificate> separating_hyperplane(const Zonotope& above,
                                                           const Zonotope& below,
                                                           const Rational& eps,
                                                           NormalScaling scaling = NormalScaling::Box);

// Sup/inf/margin for a fixed normal; the threshold is the midpoint.
SeparationCertificate evaluate_separation(const Zonotope& above, const Zonotope& below,
                                          const Vec& normal);

// Re-checks a certificate exactly against the two bodies.
bool certificate_valid(const SeparationCertificate& cert, const Zonotope& above,
                       const Zonotope& below);

// Counterclockwise vertex list starting at the lowest (then leftmost)
// vertex. Segments yield 2 points and points 1. Throws NotTwoDimensional.
std::vector<Vec> vertices_2d(const Zonotope& z);

enum class HausdorffMethod { Exact2d, SupportSampled };

struct HausdorffDistance {
  Rational squared;
  // True for Exact2d; SupportSampled is a lower bound.
  bool exact = false;
  double value() const;
};

HausdorffDistance hausdorff_distance(const Zonotope& a, const Zonotope& b,
                                     HausdorffMethod method, size_t samples = 64);

// Deterministic directions of exact unit length (rational points on the
// sphere via inverse stereographic projection).
std::vector<Vec> unit_directions(size_t dim, size_t count);

bool contains_point(const Zonotope& z, const Vec& p);
bool intersects(const Zonotope& a, const Zonotope& b);

struct NortheastResult {
  bool weak = false;    // every u in y has some v in x with v >= u
  bool strict = false;  // ... and v != u
};

inline constexpr size_t kDefaultNortheastGeneratorGuard = 8;

// Pointwise dominance of y by x. Exhaustive over vertices and Pareto faces;
// throws InstanceTooLarge above the generator guard.
NortheastResult northeast_of(const Zonotope& x, const Zonotope& y,
                             size_t generator_guard = kDefaultNortheastGeneratorGuard);

}  // namespace zonopref
