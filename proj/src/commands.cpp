#include "zonopref/commands.hpp"

#include <algorithm>

#include "zonopref/error.hpp"

namespace zonopref::commands {

using io::Json;
using io::rational_to_json;
using io::vec_to_json;

namespace {

Json header() { return Json{{"format", io::kFormatVersion}}; }

Json labels(const QuotientPoset& q, const std::vector<size_t>& classes) {
  Json a = Json::array();
  for (size_t c : classes) a.push_back(q.label(c));
  return a;
}

Json quotient_json(const QuotientPoset& q) {
  Json classes = Json::array(), order = Json::array(), covers = Json::array();
  for (const auto& c : q.classes()) classes.push_back(c);
  for (size_t a = 0; a < q.size(); ++a)
    for (size_t b = 0; b < q.size(); ++b) {
      if (!q.strictly(a, b)) continue;
      order.push_back(Json::array({q.label(a), q.label(b)}));
      bool cover = true;
      for (size_t c = 0; c < q.size() && cover; ++c)
        if (q.strictly(a, c) && q.strictly(c, b)) cover = false;
      if (cover) covers.push_back(Json::array({q.label(a), q.label(b)}));
    }
  return Json{{"classes", classes}, {"order", order}, {"covers", covers}};
}

Json width_json(const QuotientPoset& q, const WidthResult& w) {
  Json chains = Json::array();
  for (const auto& c : w.chain_cover) chains.push_back(labels(q, c));
  return Json{{"width", w.width}, {"antichain", labels(q, w.max_antichain)}, {"chain_cover", chains}};
}

Json certificate_json(std::string_view above, std::string_view below,
                      const SeparationCertificate& c, bool valid) {
  Rational sum = 0;
  for (const auto& w : c.normal) sum += w;
  return Json{{"above", above},
              {"below", below},
              {"normal", vec_to_json(c.normal)},
              {"normalized_normal", vec_to_json(scale(c.normal, 1 / sum))},
              {"threshold", rational_to_json(c.threshold)},
              {"margin", rational_to_json(c.margin)},
              {"sup_below", rational_to_json(c.sup_below)},
              {"inf_above", rational_to_json(c.inf_above)},
              {"valid", valid}};
}

std::optional<SeparationCertificate> try_separate(const Zonotope& above, const Zonotope& below,
                                                  const io::Options& o) {
  return separating_hyperplane(above, below, o.eps, o.scaling);
}

Json fidelity_json(const FidelityReport& f) {
  Json mismatches = Json::array();
  for (const auto& m : f.mismatches)
    mismatches.push_back(Json{{"x", m.x},
                              {"y", m.y},
                              {"relation", verdict_name(m.relation_says)},
                              {"geometry", verdict_name(m.geometry_says)}});
  Json j{{"faithful", f.faithful()},
         {"total_pairs", f.total_pairs},
         {"mismatches", mismatches},
         {"nondegenerate_reflexive_pairs", f.nondegenerate_reflexive_pairs}};
  if (f.nondegenerate_reflexive_pairs > 0)
    j["note"] =
        "self-differences of nondegenerate utilities leave the orthant; diagonal and same-class "
        "pairs are decided by reflexivity";
  return j;
}

Json utilities_json(const UtilityMap& u) {
  Json a = Json::array();
  for (size_t i = 0; i < u.alternatives().size(); ++i) {
    Json entry{{"id", u.alternatives()[i]}};
    entry.update(io::zonotope_to_json(u.utilities()[i]));
    a.push_back(entry);
  }
  return a;
}

void put_basis(Json& j, const Basis& b) {
  Json vs = Json::array();
  for (const auto& v : b.vectors) vs.push_back(vec_to_json(v));
  j["basis"] = vs;
  if (!b.scaling.empty()) {
    Json s = Json::array();
    for (const auto& r : b.scaling)
      s.push_back(Json::array({rational_to_json(r.lo), rational_to_json(r.hi)}));
    j["scaling"] = s;
  }
  j["decoupling"] = has_decoupling_pattern(b);
}

Json verdicts_json(const VerdictMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m.cells) {
    Json r = Json::array();
    for (const auto& c : row) r.push_back(verdict_name(c.verdict));
    rows.push_back(r);
  }
  return Json{{"alternatives", m.alternatives}, {"matrix", rows}};
}

std::string hyperplane_summary(const Vec& w, const Rational& c) {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) continue;
    Rational a = w[i];
    if (!s.empty()) {
      s += a < 0 ? " - " : " + ";
      a = abs(a);
    } else if (a < 0) {
      s += "-";
      a = -a;
    }
    if (a != 1) s += format_rational(a) + "*";
    s += "u" + std::to_string(i + 1);
  }
  return (s.empty() ? "0" : s) + " = " + format_rational(c);
}

}  // namespace

Preorder Session::preorder() const {
  if (!problem_.relation)
    throw Error(ErrorCode::Schema, "this command needs a relation; the problem has only utilities");
  Relation r = problem_.reflexive_implicit ? io::with_loops(*problem_.relation) : *problem_.relation;
  return validate_preorder(r, problem_.options.close ? ClosureMode::Close : ClosureMode::Strict);
}

std::shared_ptr<const Decomposition> Session::decomposition(const Preorder& p) const {
  if (problem_.decomposition)
    return std::make_shared<const Decomposition>(io::decomposition_from_json(*problem_.decomposition, p));
  const auto& o = problem_.options;
  return std::make_shared<const Decomposition>(
      interval_dimension(zonopref::quotient(p), o.max_m, o.mode, o.guards.interval));
}

Basis Session::basis_for(const Decomposition& d) const {
  if (!problem_.basis) return Basis::standard(d.m());
  if (problem_.basis->vectors.size() != d.m())
    throw Error(ErrorCode::ArityMismatch, "basis has " + std::to_string(problem_.basis->vectors.size()) +
                                              " vectors for " + std::to_string(d.m()) + " components");
  return *problem_.basis;
}

UtilityMap Session::utility_map() const {
  if (!problem_.utilities.empty()) {
    std::vector<std::string> ids;
    std::vector<Zonotope> zs;
    for (const auto& u : problem_.utilities) {
      ids.push_back(u.id);
      zs.push_back(u.zonotope);
    }
    return UtilityMap(std::move(ids), std::move(zs));
  }
  const Preorder p = preorder();
  auto d = decomposition(p);
  return build_utility_map(d, basis_for(*d));
}

CommandOutput Session::validate() const {
  Json j = header();
  try {
    const Preorder p = preorder();
    j["valid"] = true;
    j["closure"] = problem_.options.close ? "close" : "strict";
    j["elements"] = p.size();
    j["classes"] = zonopref::quotient(p).size();
    j["relation"] = io::preorder_to_json(p);
    return {io::dump(j), Outcome::Ok};
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::NotReflexive:
      case ErrorCode::NotTransitive:
      case ErrorCode::DuplicateElement:
      case ErrorCode::UnknownElement:
        j["valid"] = false;
        j["error"] = error_code_name(e.code());
        j["message"] = e.what();
        j["witness"] = e.witness();
        return {io::dump(j), Outcome::Violations};
      default:
        throw;
    }
  }
}

CommandOutput Session::quotient() const {
  const QuotientPoset q = zonopref::quotient(preorder());
  Json j = header();
  j.update(quotient_json(q));
  return {io::dump(j)};
}

CommandOutput Session::width() const {
  const QuotientPoset q = zonopref::quotient(preorder());
  Json j = header();
  j.update(width_json(q, zonopref::width(q)));
  return {io::dump(j)};
}

CommandOutput Session::extend() const {
  const QuotientPoset q = zonopref::quotient(preorder());
  const auto& o = problem_.options;
  const LinearExtension first = linear_extension(q, o.tiebreak);
  Json members = Json::array();
  for (size_t c : first.order) members.push_back(q.classes()[c]);
  const ExtensionList all = enumerate_linear_extensions(q, o.cap);
  Json list = Json::array();
  for (const auto& e : all.extensions) list.push_back(labels(q, e.order));
  Json j = header();
  j["tiebreak"] = o.tiebreak == Tiebreak::Lexicographic ? "lexicographic" : "input";
  j["extension"] = labels(q, first.order);
  j["extension_classes"] = members;
  j["extensions"] = list;
  j["count"] = all.extensions.size();
  j["truncated"] = all.truncated;
  return {io::dump(j)};
}

CommandOutput Session::dimension() const {
  const QuotientPoset q = zonopref::quotient(preorder());
  const auto& o = problem_.options;
  const size_t w = zonopref::width(q).width;
  const size_t bound = o.max_k ? o.max_k : std::max<size_t>(w, 1);
  auto realizer = order_dimension(q, bound, o.guards.dimension);
  if (!realizer)
    throw Error(ErrorCode::NoDecompositionWithinBound,
                "no realizer with at most " + std::to_string(bound) + " linear extensions");
  Json r = Json::array();
  for (const auto& e : *realizer) r.push_back(labels(q, e.order));
  Json j = header();
  j["dimension"] = realizer->size();
  j["width"] = w;
  j["realizer"] = r;
  return {io::dump(j)};
}

CommandOutput Session::interval_check() const {
  const Preorder p = preorder();
  const QuotientPoset q = zonopref::quotient(p);
  Json j = header();
  if (auto w = find_two_plus_two(q)) {
    j["interval_order"] = false;
    j["witness"] = Json{{"a1", q.label(w->a1)}, {"a2", q.label(w->a2)},
                        {"b1", q.label(w->b1)}, {"b2", q.label(w->b2)}};
    j["detail"] = q.label(w->a1) + " > " + q.label(w->a2) + " and " + q.label(w->b1) + " > " +
                  q.label(w->b2) + " with every cross pair incomparable";
    return {io::dump(j), Outcome::Violations};
  }
  const EndpointAssignment e = build_endpoints(q);
  Json lower = Json::object(), upper = Json::object();
  for (size_t i = 0; i < p.size(); ++i) {
    lower[p.elements()[i]] = rational_to_json(e.lower[i]);
    upper[p.elements()[i]] = rational_to_json(e.upper[i]);
  }
  j["interval_order"] = true;
  j["lower"] = lower;
  j["upper"] = upper;
  j["verified"] = endpoints_represent(p, e);
  return {io::dump(j)};
}

CommandOutput Session::decompose() const {
  const Preorder p = preorder();
  auto d = decomposition(p);
  Json j = header();
  j["relation"] = io::preorder_to_json(p);
  Json dj = io::decomposition_to_json(*d);
  dj["mode"] = problem_.decomposition ? "given"
               : problem_.options.mode == SearchMode::Exact ? "exact"
                                                            : "greedy";
  j["decomposition"] = dj;
  const AxiomReport a1 = check_axiom_A1(*d);
  j["valid"] = a1.passed();
  if (!a1.passed()) {
    j["violations"] = io::axiom_report_to_json(a1)["violations"];
    return {io::dump(j), Outcome::Violations};
  }
  return {io::dump(j)};
}

CommandOutput Session::represent() const {
  const Preorder p = preorder();
  auto d = decomposition(p);
  const Basis b = basis_for(*d);
  const UtilityMap u = build_utility_map(d, b);
  Json j = header();
  put_basis(j, b);
  j["utilities"] = utilities_json(u);
  const FidelityReport f = verify_representation(u);
  j["fidelity"] = fidelity_json(f);
  return {io::dump(j), f.faithful() ? Outcome::Ok : Outcome::Unfaithful};
}

CommandOutput Session::compare(std::string_view x, std::string_view y, bool certificate) const {
  const UtilityMap u = utility_map();
  const size_t ix = u.index_of(x), iy = u.index_of(y);
  const ComparisonVerdict v = compare_indices(u, ix, iy);
  Json j = header();
  j["x"] = x;
  j["y"] = y;
  j["verdict"] = verdict_name(v.verdict);
  j["reflexive"] = v.reflexive;
  j["forward_contained"] = v.forward_contained;
  j["backward_contained"] = v.backward_contained;
  if (!v.reflexive) {
    j["forward_position"] = orthant_position_name(
        orthant_position(extended_set_difference(u.utilities()[ix], u.utilities()[iy])).position);
    j["backward_position"] = orthant_position_name(
        orthant_position(extended_set_difference(u.utilities()[iy], u.utilities()[ix])).position);
  }
  std::string summary = std::string(x) + " " + verdict_name(v.verdict) + " " + std::string(y);
  if (v.reflexive) summary += " (reflexive)";
  j["summary"] = summary;
  if (certificate && !v.reflexive) {
    // Try the direction the verdict suggests first, then the other.
    std::vector<std::pair<size_t, size_t>> order{{ix, iy}, {iy, ix}};
    if (v.verdict == Verdict::StrictlyWorse) std::swap(order[0], order[1]);
    j["certificate"] = nullptr;
    for (auto [a, b] : order) {
      if (auto c = try_separate(u.utilities()[a], u.utilities()[b], problem_.options)) {
        j["certificate"] = certificate_json(u.alternatives()[a], u.alternatives()[b], *c,
                                            certificate_valid(*c, u.utilities()[a], u.utilities()[b]));
        break;
      }
    }
  }
  return {io::dump(j)};
}

CommandOutput Session::separate(std::string_view above, std::string_view below,
                                const std::optional<io::Hyperplane>& given) const {
  const UtilityMap u = utility_map();
  const Zonotope& za = u.utility(above);
  const Zonotope& zb = u.utility(below);
  Json j = header();
  j["above"] = above;
  j["below"] = below;
  j["intersects"] = intersects(za, zb);
  if (given) {
    if (given->normal.size() != za.dim())
      throw Error(ErrorCode::DimensionMismatch, "normal length differs from the utility dimension");
    const SeparationCertificate c = evaluate_separation(za, zb, given->normal);
    const Rational& t = given->threshold;
    const bool separates = c.sup_below <= t && t <= c.inf_above && (c.sup_below < t || t < c.inf_above);
    bool positive = true;
    for (const auto& w : given->normal) positive = positive && w > 0;
    j["given"] = Json{{"normal", vec_to_json(given->normal)},
                      {"threshold", rational_to_json(t)},
                      {"sup_below", rational_to_json(c.sup_below)},
                      {"inf_above", rational_to_json(c.inf_above)},
                      {"positive_normal", positive},
                      {"separates", separates && positive},
                      {"equation", hyperplane_summary(given->normal, t)}};
    return {io::dump(j)};
  }
  j["eps"] = rational_to_json(problem_.options.eps);
  j["scaling"] = problem_.options.scaling == NormalScaling::Box ? "box" : "simplex";
  auto c = try_separate(za, zb, problem_.options);
  j["separable"] = c.has_value();
  j["certificate"] = c ? certificate_json(above, below, *c, certificate_valid(*c, za, zb)) : Json();
  if (c) j["equation"] = hyperplane_summary(c->normal, c->threshold);
  try {
    const NortheastResult ne = northeast_of(za, zb, problem_.options.guards.northeast);
    j["northeast"] = Json{{"weak", ne.weak}, {"strict", ne.strict}};
    // The two notions differ in general; disagreement is reported as is.
    j["northeast_agrees"] = ne.strict == c.has_value();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InstanceTooLarge) throw;
    j["northeast"] = nullptr;
  }
  return {io::dump(j)};
}

CommandOutput Session::render() const {
  const UtilityMap u = utility_map();
  const io::RenderSpec& spec = problem_.render;
  std::vector<io::Utility> shown;
  if (spec.alternatives.empty()) {
    for (size_t i = 0; i < u.alternatives().size(); ++i)
      shown.push_back({u.alternatives()[i], u.utilities()[i]});
  } else {
    for (const auto& id : spec.alternatives) shown.push_back({id, u.utility(id)});
  }
  std::optional<io::Hyperplane> line = spec.hyperplane;
  if (spec.auto_hyperplane && shown.size() >= 2) {
    for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 0}}) {
      if (auto c = try_separate(shown[a].zonotope, shown[b].zonotope, problem_.options)) {
        line = io::Hyperplane{c->normal, c->threshold};
        break;
      }
    }
  }
  return {render_svg(shown, spec, line)};
}

CommandOutput Session::report() const {
  Json j = header();
  std::vector<std::string> warnings;
  Outcome outcome = Outcome::Ok;
  std::optional<UtilityMap> map;

  if (problem_.relation) {
    j["input"] = "relation";
    const Preorder p = preorder();
    const QuotientPoset q = zonopref::quotient(p);
    j["relation"] = io::preorder_to_json(p);
    j["quotient"] = quotient_json(q);
    j["width"] = width_json(q, zonopref::width(q));
    auto d = decomposition(p);
    Json dj = io::decomposition_to_json(*d);
    dj["mode"] = problem_.decomposition ? "given"
                 : problem_.options.mode == SearchMode::Exact ? "exact"
                                                              : "greedy";
    j["decomposition"] = dj;

    std::vector<std::string> axioms = problem_.options.axioms;
    if (axioms.empty()) {
      axioms = {"A1", "A2", "A3"};
      if (problem_.vector_table) axioms.push_back("A4");
    }
    Json reports = Json::array();
    bool decomposition_ok = true;
    for (const auto& a : axioms) {
      AxiomReport r;
      if (a == "A1") {
        r = check_axiom_A1(*d);
        decomposition_ok = r.passed();
      } else if (a == "A2") {
        r = check_axiom_A2(*d);
      } else if (a == "A3") {
        r = check_axiom_A3(*d);
      } else if (a == "A4") {
        if (!problem_.vector_table)
          throw Error(ErrorCode::MissingCoordinates, "axiom A4 needs a vector_table");
        r = check_axiom_A4(p, *problem_.vector_table,
                           {problem_.options.guards.sure_thing_elements,
                            problem_.options.guards.sure_thing_states});
      } else {
        r = check_axiom_A5(p, problem_.options.strict_betweenness);
      }
      if (!r.passed()) outcome = Outcome::AxiomFailure;
      reports.push_back(io::axiom_report_to_json(r));
    }
    j["axioms"] = reports;

    const Basis b = basis_for(*d);
    if (!decomposition_ok)
      warnings.push_back("the decomposition fails A1; the representation below is built from it anyway");
    map = build_utility_map(d, b);
    put_basis(j, b);
    j["utilities"] = utilities_json(*map);
    j["verdicts"] = verdicts_json(classify_all(*map));
    const FidelityReport f = verify_representation(*map);
    j["fidelity"] = fidelity_json(f);
    if (!has_decoupling_pattern(b)) {
      warnings.push_back("basis lacks the decoupling pattern; faithfulness is checked empirically");
      auto cex = basis_faithfulness_search(d, b);
      j["basis_counterexample"] = cex ? Json::array({cex->first, cex->second}) : Json();
    }
    if (!f.faithful() && outcome == Outcome::Ok) outcome = Outcome::Unfaithful;
  } else {
    j["input"] = "geometry";
    map = utility_map();
    j["utilities"] = utilities_json(*map);
    j["verdicts"] = verdicts_json(classify_all(*map));
  }

  Json separations = Json::array();
  const VerdictMatrix m = classify_all(*map);
  for (size_t x = 0; x < m.alternatives.size(); ++x)
    for (size_t y = 0; y < m.alternatives.size(); ++y) {
      if (m.cells[x][y].verdict != Verdict::StrictlyBetter) continue;
      const auto& zx = map->utilities()[x];
      const auto& zy = map->utilities()[y];
      auto c = try_separate(zx, zy, problem_.options);
      separations.push_back(
          Json{{"above", m.alternatives[x]},
               {"below", m.alternatives[y]},
               {"certificate", c ? certificate_json(m.alternatives[x], m.alternatives[y], *c,
                                                    certificate_valid(*c, zx, zy))
                                 : Json()}});
    }
  j["separations"] = separations;
  j["warnings"] = warnings;
  j["status"] = outcome == Outcome::Ok             ? "ok"
                : outcome == Outcome::AxiomFailure ? "axiom_failure"
                                                   : "unfaithful";
  return {io::dump(j), outcome};
}

}  // namespace zonopref::commands
