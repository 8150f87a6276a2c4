#include "zonopref/zonotope.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zonopref/error.hpp"
#include "zonopref/lp.hpp"

namespace zonopref {

IntervalValue IntervalValue::make(Rational lo, Rational hi) {
  if (lo > hi)
    throw Error(ErrorCode::InvalidArgument,
                "interval [" + format_rational(lo) + ", " + format_rational(hi) + "] is empty");
  return {std::move(lo), std::move(hi)};
}

Zonotope::Zonotope(Vec base, std::vector<Generator> generators)
    : base_(std::move(base)), generators_(std::move(generators)) {
  for (const auto& g : generators_) {
    if (g.direction.size() != base_.size())
      throw Error(ErrorCode::DimensionMismatch,
                  "generator of length " + std::to_string(g.direction.size()) +
                      " in a zonotope of dimension " + std::to_string(base_.size()));
    if (g.coefficient.lo > g.coefficient.hi)
      throw Error(ErrorCode::InvalidArgument, "generator coefficient interval is empty");
    if (is_zero(g.direction) && g.coefficient.lo != g.coefficient.hi)
      throw Error(ErrorCode::InvalidArgument,
                  "zero direction requires a degenerate coefficient interval");
  }
}

Zonotope from_intervals(std::span<const IntervalValue> intervals, std::span<const Vec> basis,
                        Vec base) {
  if (intervals.size() != basis.size())
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(intervals.size()) + " intervals for " +
                    std::to_string(basis.size()) + " basis vectors");
  if (basis.empty() && base.empty())
    throw Error(ErrorCode::DimensionMismatch, "cannot infer dimension from an empty basis");
  const size_t dim = basis.empty() ? base.size() : basis.front().size();
  if (base.empty()) base.assign(dim, 0);
  std::vector<Generator> gens;
  for (size_t k = 0; k < basis.size(); ++k) {
    if (basis[k].size() != dim)
      throw Error(ErrorCode::DimensionMismatch, "basis vectors differ in length");
    for (const auto& c : basis[k])
      if (c < 0)
        throw Error(ErrorCode::NegativeBasisComponent,
                    "basis vector " + std::to_string(k + 1) + " has a negative component");
    const auto& iv = intervals[k];
    if (iv.lo > iv.hi) throw Error(ErrorCode::InvalidArgument, "interval is empty");
    if (is_zero(basis[k]))
      gens.push_back({basis[k], IntervalValue::point(0)});
    else
      gens.push_back({basis[k], iv});
  }
  return Zonotope(std::move(base), std::move(gens));
}

Zonotope minkowski_sum(const Zonotope& a, const Zonotope& b) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::DimensionMismatch, "Minkowski sum of different dimensions");
  std::vector<Generator> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Zonotope(add(a.base(), b.base()), std::move(gens));
}

Zonotope reflect(const Zonotope& z) {
  std::vector<Generator> gens;
  gens.reserve(z.generators().size());
  for (const auto& g : z.generators()) gens.push_back({negate(g.direction), g.coefficient});
  return Zonotope(negate(z.base()), std::move(gens));
}

Zonotope extended_set_difference(const Zonotope& x, const Zonotope& y) {
  if (x.dim() != y.dim())
    throw Error(ErrorCode::DimensionMismatch, "extended difference of different dimensions");
  return minkowski_sum(x, reflect(y));
}

Rational support(const Zonotope& z, const Vec& w) {
  if (w.size() != z.dim())
    throw Error(ErrorCode::DimensionMismatch, "support direction has the wrong length");
  Rational h = dot(z.base(), w);
  for (const auto& g : z.generators()) {
    const Rational d = dot(g.direction, w);
    h += d >= 0 ? g.coefficient.hi * d : g.coefficient.lo * d;
  }
  return h;
}

Vec coordinate_min(const Zonotope& z) {
  Vec m = z.base();
  for (const auto& g : z.generators())
    for (size_t i = 0; i < m.size(); ++i) {
      const Rational& v = g.direction[i];
      m[i] += v >= 0 ? g.coefficient.lo * v : g.coefficient.hi * v;
    }
  return m;
}

Vec coordinate_max(const Zonotope& z) {
  Vec m = z.base();
  for (const auto& g : z.generators())
    for (size_t i = 0; i < m.size(); ++i) {
      const Rational& v = g.direction[i];
      m[i] += v >= 0 ? g.coefficient.hi * v : g.coefficient.lo * v;
    }
  return m;
}

const char* orthant_position_name(OrthantPosition p) noexcept {
  switch (p) {
    case OrthantPosition::ContainedStrictPos: return "ContainedStrictPos";
    case OrthantPosition::ContainedNonneg: return "ContainedNonneg";
    case OrthantPosition::ContainedStrictNeg: return "ContainedStrictNeg";
    case OrthantPosition::ContainedNonpos: return "ContainedNonpos";
    case OrthantPosition::Straddles: return "Straddles";
  }
  return "Straddles";
}

OrthantClassification orthant_position(const Zonotope& z, const Rational& tolerance) {
  if (tolerance < 0) throw Error(ErrorCode::InvalidArgument, "tolerance must be nonnegative");
  OrthantClassification c;
  c.min = coordinate_min(z);
  c.max = coordinate_max(z);
  c.nonneg = c.strict_pos = c.nonpos = c.strict_neg = true;
  for (size_t i = 0; i < z.dim(); ++i) {
    if (c.min[i] < -tolerance) c.nonneg = false;
    if (!(c.min[i] > tolerance)) c.strict_pos = false;
    if (c.max[i] > tolerance) c.nonpos = false;
    if (!(c.max[i] < -tolerance)) c.strict_neg = false;
  }
  if (c.strict_pos)
    c.position = OrthantPosition::ContainedStrictPos;
  else if (c.nonneg)
    c.position = OrthantPosition::ContainedNonneg;
  else if (c.strict_neg)
    c.position = OrthantPosition::ContainedStrictNeg;
  else if (c.nonpos)
    c.position = OrthantPosition::ContainedNonpos;
  else
    c.position = OrthantPosition::Straddles;
  return c;
}

SeparationCertificate evaluate_separation(const Zonotope& above, const Zonotope& below,
                                          const Vec& normal) {
  if (above.dim() != below.dim() || normal.size() != above.dim())
    throw Error(ErrorCode::DimensionMismatch, "separation operands differ in dimension");
  SeparationCertificate cert;
  cert.normal = normal;
  cert.sup_below = support(below, normal);
  cert.inf_above = -support(above, negate(normal));
  cert.margin = cert.inf_above - cert.sup_below;
  cert.threshold = (cert.sup_below + cert.inf_above) / 2;
  return cert;
}

std::optional<SeparationCertificate> separating_hyperplane(const Zonotope& above,
                                                           const Zonotope& below,
                                                           const Rational& eps,
                                                           NormalScaling scaling) {
  if (above.dim() != below.dim())
    throw Error(ErrorCode::DimensionMismatch, "separation operands differ in dimension");
  const size_t m = above.dim();
  if (eps <= 0) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
  if (scaling == NormalScaling::Box ? eps > 1 : eps * m > 1)
    throw Error(ErrorCode::EpsTooLarge, "no admissible normal with every component >= " +
                                            format_rational(eps));

  // Margin g(w) = min over the difference body of <w, .>
  //            = <base, w> + sum_k min(lo_k <v_k, w>, hi_k <v_k, w>).
  // Variables: w' = w - eps (m), then z_k = zp_k - zn_k per generator.
  const Zonotope diff = extended_set_difference(above, below);
  const size_t gens = diff.generators().size();
  const size_t vars = m + 2 * gens;
  lp::LinearProgram program;
  program.num_vars = vars;
  program.objective.assign(vars, 0);
  for (size_t i = 0; i < m; ++i) program.objective[i] = diff.base()[i];
  for (size_t k = 0; k < gens; ++k) {
    program.objective[m + 2 * k] = 1;
    program.objective[m + 2 * k + 1] = -1;
  }
  for (size_t k = 0; k < gens; ++k) {
    const auto& g = diff.generators()[k];
    Rational direction_sum = 0;
    for (const auto& c : g.direction) direction_sum += c;
    for (const Rational* coeff : {&g.coefficient.lo, &g.coefficient.hi}) {
      lp::Constraint row;
      row.coeffs.assign(vars, 0);
      for (size_t i = 0; i < m; ++i) row.coeffs[i] = -(*coeff) * g.direction[i];
      row.coeffs[m + 2 * k] = 1;
      row.coeffs[m + 2 * k + 1] = -1;
      row.sense = lp::Sense::LessEq;
      row.rhs = (*coeff) * eps * direction_sum;
      program.constraints.push_back(std::move(row));
    }
  }
  if (scaling == NormalScaling::Box) {
    for (size_t i = 0; i < m; ++i) {
      lp::Constraint row;
      row.coeffs.assign(vars, 0);
      row.coeffs[i] = 1;
      row.rhs = 1 - eps;
      program.constraints.push_back(std::move(row));
    }
  } else {
    lp::Constraint row;
    row.coeffs.assign(vars, 0);
    for (size_t i = 0; i < m; ++i) row.coeffs[i] = 1;
    row.sense = lp::Sense::Equal;
    row.rhs = 1 - eps * m;
    program.constraints.push_back(std::move(row));
  }

  const lp::Result result = lp::solve(program);
  if (result.status != lp::Status::Optimal)
    throw Error(ErrorCode::Internal, "separation program is not bounded and feasible");
  Vec normal(m);
  for (size_t i = 0; i < m; ++i) normal[i] = eps + result.x[i];
  SeparationCertificate cert = evaluate_separation(above, below, normal);
  if (cert.margin <= 0) return std::nullopt;
  return cert;
}

bool certificate_valid(const SeparationCertificate& cert, const Zonotope& above,
                       const Zonotope& below) {
  if (cert.normal.size() != above.dim() || above.dim() != below.dim()) return false;
  for (const auto& c : cert.normal)
    if (c <= 0) return false;
  const Rational sup_below = support(below, cert.normal);
  const Rational inf_above = -support(above, negate(cert.normal));
  return sup_below == cert.sup_below && inf_above == cert.inf_above &&
         cert.margin == inf_above - sup_below && sup_below <= cert.threshold &&
         cert.threshold <= inf_above && cert.margin >= 0;
}

namespace {

Rational cross(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

}  // namespace

std::vector<Vec> vertices_2d(const Zonotope& z) {
  if (z.dim() != 2) throw Error(ErrorCode::NotTwoDimensional, "zonotope is not two-dimensional");
  // Rewrite every segment as start + [0, 1] * edge with the edge pointing
  // into the upper half-plane (angle in [0, pi)).
  Vec start = z.base();
  std::vector<Vec> edges;
  for (const auto& g : z.generators()) {
    start = add(start, scale(g.direction, g.coefficient.lo));
    Vec e = scale(g.direction, g.coefficient.hi - g.coefficient.lo);
    if (is_zero(e)) continue;
    if (e[1] < 0 || (e[1] == 0 && e[0] < 0)) {
      start = add(start, e);
      e = negate(e);
    }
    edges.push_back(std::move(e));
  }
  std::stable_sort(edges.begin(), edges.end(),
                   [](const Vec& a, const Vec& b) { return cross(a, b) > 0; });
  std::vector<Vec> merged;
  for (auto& e : edges) {
    if (!merged.empty() && cross(merged.back(), e) == 0)
      merged.back() = add(merged.back(), e);
    else
      merged.push_back(std::move(e));
  }
  std::vector<Vec> vertices{start};
  if (merged.empty()) return vertices;
  Vec cur = start;
  for (const auto& e : merged) {
    cur = add(cur, e);
    vertices.push_back(cur);
  }
  if (merged.size() == 1) return vertices;
  for (size_t k = 0; k + 1 < merged.size(); ++k) {
    cur = sub(cur, merged[k]);
    vertices.push_back(cur);
  }
  return vertices;
}

namespace {

Rational point_segment_sq(const Vec& p, const Vec& a, const Vec& b) {
  const Vec ab = sub(b, a);
  const Rational len = squared_norm(ab);
  if (len == 0) return squared_norm(sub(p, a));
  Rational t = dot(sub(p, a), ab) / len;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  return squared_norm(sub(p, add(a, scale(ab, t))));
}

Rational point_polygon_sq(const Vec& p, const std::vector<Vec>& poly) {
  if (poly.size() == 1) return squared_norm(sub(p, poly[0]));
  if (poly.size() == 2) return point_segment_sq(p, poly[0], poly[1]);
  bool inside = true;
  for (size_t i = 0; i < poly.size() && inside; ++i) {
    const Vec& a = poly[i];
    const Vec& b = poly[(i + 1) % poly.size()];
    if (cross(sub(b, a), sub(p, a)) < 0) inside = false;
  }
  if (inside) return 0;
  Rational best = -1;
  for (size_t i = 0; i < poly.size(); ++i) {
    Rational d = point_segment_sq(p, poly[i], poly[(i + 1) % poly.size()]);
    if (best < 0 || d < best) best = d;
  }
  return best;
}

}  // namespace

double HausdorffDistance::value() const { return std::sqrt(squared.get_d()); }

std::vector<Vec> unit_directions(size_t dim, size_t count) {
  std::vector<Vec> dirs;
  if (dim == 0 || count == 0) return dirs;
  if (dim == 1) {
    for (size_t j = 0; j < count; ++j) dirs.push_back({Rational(j % 2 == 0 ? 1 : -1)});
    return dirs;
  }
  if (dim == 2) {
    for (size_t j = 0; j < count; ++j) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count);
      if (std::abs(theta - std::numbers::pi) < 1e-12) {
        dirs.push_back({Rational(-1), Rational(0)});
        continue;
      }
      // t = tan(theta/2) on a fixed 1e-6 grid; (1-t^2, 2t)/(1+t^2) is unit.
      const double t_approx = std::tan(theta / 2.0);
      Rational t(static_cast<long>(std::llround(t_approx * 1e6)), 1000000L);
      t.canonicalize();
      const Rational den = 1 + t * t;
      dirs.push_back({(1 - t * t) / den, 2 * t / den});
    }
    return dirs;
  }
  // Inverse stereographic projection of deterministic parameter points.
  unsigned long state = 0x9E3779B9UL;
  for (size_t j = 0; j < count; ++j) {
    Vec s(dim - 1);
    Rational norm_sq = 0;
    for (auto& si : s) {
      state = (state * 1103515245UL + 12345UL) & 0x7fffffffUL;
      si = Rational(static_cast<long>(state % 4001) - 2000, 1000L);
      si.canonicalize();
      norm_sq += si * si;
    }
    const Rational den = 1 + norm_sq;
    Vec u(dim);
    for (size_t i = 0; i + 1 < dim; ++i) u[i] = 2 * s[i] / den;
    u[dim - 1] = (norm_sq - 1) / den;
    dirs.push_back(std::move(u));
  }
  return dirs;
}

HausdorffDistance hausdorff_distance(const Zonotope& a, const Zonotope& b, HausdorffMethod method,
                                     size_t samples) {
  if (a.dim() != b.dim())
    throw Error(ErrorCode::DimensionMismatch, "Hausdorff distance of different dimensions");
  HausdorffDistance d;
  if (method == HausdorffMethod::Exact2d) {
    if (a.dim() != 2)
      throw Error(ErrorCode::NotTwoDimensional, "exact Hausdorff distance needs dimension 2");
    const auto pa = vertices_2d(a);
    const auto pb = vertices_2d(b);
    Rational worst = 0;
    for (const auto& p : pa) worst = std::max(worst, point_polygon_sq(p, pb));
    for (const auto& p : pb) worst = std::max(worst, point_polygon_sq(p, pa));
    d.squared = worst;
    d.exact = true;
    return d;
  }
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "sample count must be positive");
  Rational worst = 0;
  for (const auto& w : unit_directions(a.dim(), samples)) {
    Rational gap = support(a, w) - support(b, w);
    if (gap < 0) gap = -gap;
    worst = std::max(worst, gap);
  }
  d.squared = worst * worst;
  d.exact = false;
  return d;
}

bool contains_point(const Zonotope& z, const Vec& p) {
  if (p.size() != z.dim()) throw Error(ErrorCode::DimensionMismatch, "point has the wrong length");
  // Find t_k in [lo_k, hi_k] with base + sum t_k v_k = p; shift t = lo + s.
  const size_t gens = z.generators().size();
  Vec target = sub(p, z.base());
  for (const auto& g : z.generators()) target = sub(target, scale(g.direction, g.coefficient.lo));
  lp::LinearProgram program;
  program.num_vars = gens;
  program.objective.assign(gens, 0);
  for (size_t i = 0; i < z.dim(); ++i) {
    lp::Constraint row;
    row.coeffs.assign(gens, 0);
    for (size_t k = 0; k < gens; ++k) row.coeffs[k] = z.generators()[k].direction[i];
    row.sense = lp::Sense::Equal;
    row.rhs = target[i];
    program.constraints.push_back(std::move(row));
  }
  for (size_t k = 0; k < gens; ++k) {
    lp::Constraint row;
    row.coeffs.assign(gens, 0);
    row.coeffs[k] = 1;
    row.rhs = z.generators()[k].coefficient.hi - z.generators()[k].coefficient.lo;
    program.constraints.push_back(std::move(row));
  }
  return lp::solve(program).status == lp::Status::Optimal;
}

bool intersects(const Zonotope& a, const Zonotope& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "intersection of different dimensions");
  return contains_point(extended_set_difference(a, b), Vec(a.dim(), 0));
}

namespace {

// max sum_i (v_i - u_i) over v in z with v >= u; nullopt if no such v.
std::optional<Rational> dominating_slack(const Zonotope& z, const Vec& u) {
  const size_t gens = z.generators().size();
  const size_t m = z.dim();
  Vec offset = z.base();
  for (const auto& g : z.generators()) offset = add(offset, scale(g.direction, g.coefficient.lo));
  lp::LinearProgram program;
  program.num_vars = gens;
  program.objective.assign(gens, 0);
  for (size_t k = 0; k < gens; ++k)
    for (size_t i = 0; i < m; ++i) program.objective[k] += z.generators()[k].direction[i];
  for (size_t i = 0; i < m; ++i) {
    lp::Constraint row;
    row.coeffs.assign(gens, 0);
    for (size_t k = 0; k < gens; ++k) row.coeffs[k] = z.generators()[k].direction[i];
    row.sense = lp::Sense::GreaterEq;
    row.rhs = u[i] - offset[i];
    program.constraints.push_back(std::move(row));
  }
  for (size_t k = 0; k < gens; ++k) {
    lp::Constraint row;
    row.coeffs.assign(gens, 0);
    row.coeffs[k] = 1;
    row.rhs = z.generators()[k].coefficient.hi - z.generators()[k].coefficient.lo;
    program.constraints.push_back(std::move(row));
  }
  const auto r = lp::solve(program);
  if (r.status != lp::Status::Optimal) return std::nullopt;
  Rational slack = r.value;
  for (size_t i = 0; i < m; ++i) slack += offset[i] - u[i];
  return slack;
}

// Some w > 0 realizes the sign pattern <v_k, w> (signs in {-1, 0, 1}).
bool positive_normal_realizes(const std::vector<const Vec*>& dirs, const std::vector<int>& signs,
                              size_t m) {
  lp::LinearProgram program;
  program.num_vars = m;
  program.objective.assign(m, 0);
  for (size_t i = 0; i < m; ++i) {
    lp::Constraint row;
    row.coeffs.assign(m, 0);
    row.coeffs[i] = 1;
    row.sense = lp::Sense::GreaterEq;
    row.rhs = 1;
    program.constraints.push_back(std::move(row));
  }
  for (size_t k = 0; k < dirs.size(); ++k) {
    lp::Constraint row;
    row.coeffs = *dirs[k];
    if (signs[k] > 0) {
      row.sense = lp::Sense::GreaterEq;
      row.rhs = 1;
    } else if (signs[k] < 0) {
      row.sense = lp::Sense::LessEq;
      row.rhs = -1;
    } else {
      row.sense = lp::Sense::Equal;
      row.rhs = 0;
    }
    program.constraints.push_back(std::move(row));
  }
  return lp::solve(program).status == lp::Status::Optimal;
}

}  // namespace

NortheastResult northeast_of(const Zonotope& x, const Zonotope& y, size_t generator_guard) {
  if (x.dim() != y.dim()) throw Error(ErrorCode::DimensionMismatch, "dominance of different dimensions");
  if (x.generators().size() > generator_guard || y.generators().size() > generator_guard)
    throw Error(ErrorCode::InstanceTooLarge, "northeast check refuses more than " +
                                                 std::to_string(generator_guard) + " generators");
  NortheastResult result;
  // x - R^m_{>=0} is convex, so checking the corners of y decides the weak part.
  const size_t gy = y.generators().size();
  for (unsigned long corner = 0; corner < (1UL << gy); ++corner) {
    Vec u = y.base();
    for (size_t k = 0; k < gy; ++k) {
      const auto& g = y.generators()[k];
      u = add(u, scale(g.direction, ((corner >> k) & 1UL) ? g.coefficient.hi : g.coefficient.lo));
    }
    if (!dominating_slack(x, u)) return result;
  }
  result.weak = true;

  // Strictness fails exactly when y meets a Pareto-maximal face of x, i.e. a
  // face maximizing some strictly positive normal.
  std::vector<const Vec*> dirs;
  std::vector<const Generator*> gens;
  for (const auto& g : x.generators())
    if (!is_zero(g.direction) && g.coefficient.lo != g.coefficient.hi) {
      dirs.push_back(&g.direction);
      gens.push_back(&g);
    }
  std::vector<int> signs(dirs.size(), -1);
  for (;;) {
    if (positive_normal_realizes(dirs, signs, x.dim())) {
      Vec base = x.base();
      std::vector<Generator> free;
      for (const auto& g : x.generators())
        if (is_zero(g.direction) || g.coefficient.lo == g.coefficient.hi)
          base = add(base, scale(g.direction, g.coefficient.lo));
      for (size_t k = 0; k < dirs.size(); ++k) {
        const auto& g = *gens[k];
        if (signs[k] > 0)
          base = add(base, scale(g.direction, g.coefficient.hi));
        else if (signs[k] < 0)
          base = add(base, scale(g.direction, g.coefficient.lo));
        else
          free.push_back(g);
      }
      if (intersects(Zonotope(std::move(base), std::move(free)), y)) return result;
    }
    size_t k = 0;
    while (k < signs.size() && signs[k] == 1) signs[k++] = -1;
    if (k == signs.size()) break;
    ++signs[k];
  }
  result.strict = true;
  return result;
}

}  // namespace zonopref
