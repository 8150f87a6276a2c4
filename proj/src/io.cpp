#include "zonopref/io.hpp"

#include <algorithm>
#include <charconv>
#include <climits>

#include "zonopref/error.hpp"

namespace zonopref::io {

namespace {

[[noreturn]] void schema(const std::string& message) { throw Error(ErrorCode::Schema, message); }

const Json& field(const Json& j, const char* key, std::string_view where) {
  auto it = j.find(key);
  if (it == j.end()) schema(std::string(where) + ": missing \"" + key + "\"");
  return *it;
}

std::string string_of(const Json& j, std::string_view where) {
  if (!j.is_string()) schema(std::string(where) + ": expected a string");
  return j.get<std::string>();
}

std::vector<std::string> strings_of(const Json& j, std::string_view where) {
  if (!j.is_array()) schema(std::string(where) + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(string_of(e, where));
  return out;
}

size_t size_of(const Json& j, std::string_view where) {
  if (j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0))
    return j.get<size_t>();
  schema(std::string(where) + ": expected a nonnegative integer");
}

bool bool_of(const Json& j, std::string_view where) {
  if (!j.is_boolean()) schema(std::string(where) + ": expected a boolean");
  return j.get<bool>();
}

size_t parse_size(std::string_view text, std::string_view key) {
  size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error(ErrorCode::InvalidArgument,
                "option " + std::string(key) + ": expected a nonnegative integer, got '" +
                    std::string(text) + "'");
  return v;
}

bool parse_bool(std::string_view text, std::string_view key) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw Error(ErrorCode::InvalidArgument,
              "option " + std::string(key) + ": expected true or false, got '" +
                  std::string(text) + "'");
}

// Options from JSON are funnelled through the same string setter the CLI
// uses, so both paths validate identically.
std::string option_text(const Json& v, std::string_view key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) return format_rational(rational_from_double(v.get<double>()));
  schema("options." + std::string(key) + ": unsupported value");
}

}  // namespace

Json rational_to_json(const Rational& v) {
  if (v.get_den() == 1 && v.get_num().fits_slong_p()) return v.get_num().get_si();
  return format_rational(v);
}

Rational rational_from_json(const Json& j, std::string_view where) {
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return Rational(std::to_string(j.get<unsigned long long>()));
  if (j.is_number_float()) return rational_from_double(j.get<double>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      schema(std::string(where) + ": " + e.what());
    }
  }
  if (j.is_object() && j.contains("num") && j.contains("den")) {
    Rational num = rational_from_json(j["num"], where);
    Rational den = rational_from_json(j["den"], where);
    if (num.get_den() != 1 || den.get_den() != 1 || den == 0)
      schema(std::string(where) + ": num/den must be integers with den != 0");
    Rational r = num / den;
    r.canonicalize();
    return r;
  }
  schema(std::string(where) + ": expected a number or rational string");
}

Json vec_to_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rational_to_json(x));
  return a;
}

Vec vec_from_json(const Json& j, std::string_view where) {
  if (!j.is_array()) schema(std::string(where) + ": expected an array");
  Vec v;
  for (const auto& e : j) v.push_back(rational_from_json(e, where));
  return v;
}

Json relation_to_json(const Relation& r, bool reflexive_implicit) {
  Json pairs = Json::array();
  for (const auto& [a, b] : r.pairs) pairs.push_back(Json::array({a, b}));
  return Json{{"elements", r.elements}, {"pairs", pairs}, {"reflexive_implicit", reflexive_implicit}};
}

Json preorder_to_json(const Preorder& p) {
  Relation r;
  r.elements = p.elements();
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = 0; j < p.size(); ++j)
      if (i != j && p.geq(i, j)) r.pairs.emplace_back(p.elements()[i], p.elements()[j]);
  return relation_to_json(r, true);
}

Relation relation_from_json(const Json& j, bool& reflexive_implicit) {
  if (!j.is_object()) schema("relation: expected an object");
  Relation r;
  r.elements = strings_of(field(j, "elements", "relation"), "relation.elements");
  if (auto it = j.find("pairs"); it != j.end()) {
    if (!it->is_array()) schema("relation.pairs: expected an array");
    for (const auto& p : *it) {
      if (!p.is_array() || p.size() != 2) schema("relation.pairs: each pair must be [a, b]");
      r.pairs.emplace_back(string_of(p[0], "relation.pairs"), string_of(p[1], "relation.pairs"));
    }
  }
  reflexive_implicit = true;
  if (auto it = j.find("reflexive_implicit"); it != j.end())
    reflexive_implicit = bool_of(*it, "relation.reflexive_implicit");
  return r;
}

Relation with_loops(Relation r) {
  for (const auto& e : r.elements) r.pairs.emplace_back(e, e);
  return r;
}

Json zonotope_to_json(const Zonotope& z) {
  Json gens = Json::array();
  for (const auto& g : z.generators())
    gens.push_back(Json{{"v", vec_to_json(g.direction)},
                        {"lo", rational_to_json(g.coefficient.lo)},
                        {"hi", rational_to_json(g.coefficient.hi)}});
  return Json{{"dim", z.dim()}, {"base", vec_to_json(z.base())}, {"generators", gens}};
}

Zonotope zonotope_from_json(const Json& j, std::string_view where) {
  if (!j.is_object()) schema(std::string(where) + ": expected a zonotope object");
  const std::string w(where);
  Vec base = vec_from_json(field(j, "base", where), w + ".base");
  std::vector<Generator> gens;
  if (auto it = j.find("generators"); it != j.end()) {
    if (!it->is_array()) schema(w + ".generators: expected an array");
    for (const auto& g : *it) {
      if (!g.is_object()) schema(w + ".generators: expected objects");
      Generator gen;
      gen.direction = vec_from_json(field(g, "v", w + ".generators"), w + ".generators.v");
      Rational lo = g.contains("lo") ? rational_from_json(g["lo"], w + ".lo") : Rational(0);
      Rational hi = g.contains("hi") ? rational_from_json(g["hi"], w + ".hi") : Rational(1);
      gen.coefficient = IntervalValue::make(lo, hi);
      gens.push_back(std::move(gen));
    }
  }
  if (auto it = j.find("dim"); it != j.end() && size_of(*it, w + ".dim") != base.size())
    throw Error(ErrorCode::DimensionMismatch, w + ": dim disagrees with the base point");
  return Zonotope(std::move(base), std::move(gens));
}

Json decomposition_to_json(const Decomposition& d) {
  Json comps = Json::array();
  const auto& el = d.source.elements();
  for (const auto& c : d.components) {
    Json lower = Json::object(), upper = Json::object();
    for (size_t i = 0; i < el.size(); ++i) {
      lower[el[i]] = rational_to_json(c.endpoints.lower[i]);
      upper[el[i]] = rational_to_json(c.endpoints.upper[i]);
    }
    comps.push_back(Json{{"pairs", preorder_to_json(c.order)["pairs"]},
                         {"lower", lower},
                         {"upper", upper}});
  }
  return Json{{"m", d.m()}, {"components", comps}};
}

Decomposition decomposition_from_json(const Json& j, const Preorder& source) {
  if (!j.is_object()) schema("decomposition: expected an object");
  const Json& comps = field(j, "components", "decomposition");
  if (!comps.is_array() || comps.empty()) schema("decomposition.components: expected a non-empty array");
  if (auto it = j.find("m"); it != j.end() && size_of(*it, "decomposition.m") != comps.size())
    schema("decomposition.m disagrees with the number of components");

  Decomposition d{source, {}};
  const auto& el = source.elements();
  for (size_t k = 0; k < comps.size(); ++k) {
    const std::string where = "decomposition.components[" + std::to_string(k) + "]";
    const Json& c = comps[k];
    if (!c.is_object()) schema(where + ": expected an object");
    Json rel{{"elements", el}, {"pairs", c.contains("pairs") ? c["pairs"] : Json::array()}};
    bool implicit = true;
    Relation r = with_loops(relation_from_json(rel, implicit));
    IntervalOrderComponent comp{validate_preorder(r, ClosureMode::Close), {}};
    const Json& lower = field(c, "lower", where);
    const Json& upper = field(c, "upper", where);
    if (!lower.is_object() || !upper.is_object()) schema(where + ": endpoints must be objects");
    for (const auto& e : el) {
      if (!lower.contains(e) || !upper.contains(e))
        throw Error(ErrorCode::MissingCoordinates, where + ": no endpoints for '" + e + "'", {e});
      comp.endpoints.lower.push_back(rational_from_json(lower[e], where + ".lower"));
      comp.endpoints.upper.push_back(rational_from_json(upper[e], where + ".upper"));
    }
    for (const auto& [name, _] : lower.items())
      if (!source.index_of(name))
        throw Error(ErrorCode::UnknownElement, where + ": endpoint for unknown element '" + name + "'",
                    {name});
    d.components.push_back(std::move(comp));
  }
  return d;
}

Json vector_table_to_json(const VectorAlternativeTable& t) {
  Json coords = Json::object();
  for (const auto& [k, v] : t.coordinates) coords[k] = v;
  return Json{{"states", t.states}, {"coordinates", coords}};
}

VectorAlternativeTable vector_table_from_json(const Json& j) {
  if (!j.is_object()) schema("vector_table: expected an object");
  VectorAlternativeTable t;
  t.states = size_of(field(j, "states", "vector_table"), "vector_table.states");
  const Json& coords = field(j, "coordinates", "vector_table");
  if (!coords.is_object()) schema("vector_table.coordinates: expected an object");
  for (const auto& [k, v] : coords.items()) {
    std::vector<std::string> values;
    if (!v.is_array()) schema("vector_table.coordinates: expected arrays");
    // Outcomes are compared for equality only; numbers are kept as written.
    for (const auto& e : v) values.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    t.coordinates[k] = std::move(values);
  }
  return t;
}

Json axiom_report_to_json(const AxiomReport& r) {
  auto list = [](const std::vector<Violation>& vs) {
    Json a = Json::array();
    for (const auto& v : vs) a.push_back(Json{{"elements", v.elements}, {"detail", v.detail}});
    return a;
  };
  return Json{{"axiom", r.axiom},
              {"passed", r.passed()},
              {"violations", list(r.violations)},
              {"notes", list(r.notes)}};
}

void Guards::raise_to(size_t floor) {
  for (size_t* g : {&dimension, &interval, &sure_thing_elements, &sure_thing_states, &northeast})
    *g = std::max(*g, floor);
  product = std::max(product, floor);
}

void Options::set(std::string_view key, std::string_view value) {
  const std::string k(key);
  if (k == "close") {
    close = parse_bool(value, key);
  } else if (k == "mode") {
    if (value == "exact")
      mode = SearchMode::Exact;
    else if (value == "greedy")
      mode = SearchMode::Greedy;
    else
      throw Error(ErrorCode::InvalidArgument, "option mode: expected exact or greedy");
  } else if (k == "max_m") {
    max_m = parse_size(value, key);
  } else if (k == "tiebreak") {
    if (value == "lexicographic")
      tiebreak = Tiebreak::Lexicographic;
    else if (value == "input")
      tiebreak = Tiebreak::InputOrder;
    else
      throw Error(ErrorCode::InvalidArgument, "option tiebreak: expected lexicographic or input");
  } else if (k == "cap") {
    cap = parse_size(value, key);
  } else if (k == "max_k") {
    max_k = parse_size(value, key);
  } else if (k == "eps") {
    try {
      eps = parse_rational(value);
    } catch (const Error&) {
      throw Error(ErrorCode::InvalidArgument, "option eps: expected a rational");
    }
    if (eps <= 0) throw Error(ErrorCode::InvalidArgument, "option eps must be positive");
  } else if (k == "scaling") {
    if (value == "box")
      scaling = NormalScaling::Box;
    else if (value == "simplex")
      scaling = NormalScaling::Simplex;
    else
      throw Error(ErrorCode::InvalidArgument, "option scaling: expected box or simplex");
  } else if (k == "guard_dimension") {
    guards.dimension = parse_size(value, key);
  } else if (k == "guard_interval") {
    guards.interval = parse_size(value, key);
  } else if (k == "guard_sure_thing_elements") {
    guards.sure_thing_elements = parse_size(value, key);
  } else if (k == "guard_sure_thing_states") {
    guards.sure_thing_states = parse_size(value, key);
  } else if (k == "guard_northeast") {
    guards.northeast = parse_size(value, key);
  } else if (k == "guard_product") {
    guards.product = parse_size(value, key);
  } else if (k == "guard_override") {
    guards.raise_to(parse_size(value, key));
  } else if (k == "axioms") {
    axioms.clear();
    std::string_view rest = value;
    while (!rest.empty()) {
      auto comma = rest.find(',');
      std::string item(rest.substr(0, comma));
      if (item != "A1" && item != "A2" && item != "A3" && item != "A4" && item != "A5")
        throw Error(ErrorCode::InvalidArgument, "option axioms: unknown axiom '" + item + "'");
      if (std::find(axioms.begin(), axioms.end(), item) == axioms.end()) axioms.push_back(item);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  } else if (k == "strict_betweenness") {
    strict_betweenness = parse_bool(value, key);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown option '" + k + "'");
  }
}

Json options_to_json(const Options& o) {
  std::string axioms;
  for (const auto& a : o.axioms) axioms += (axioms.empty() ? "" : ",") + a;
  Json j{{"close", o.close},
         {"mode", o.mode == SearchMode::Exact ? "exact" : "greedy"},
         {"max_m", o.max_m},
         {"tiebreak", o.tiebreak == Tiebreak::Lexicographic ? "lexicographic" : "input"},
         {"cap", o.cap},
         {"max_k", o.max_k},
         {"eps", rational_to_json(o.eps)},
         {"scaling", o.scaling == NormalScaling::Box ? "box" : "simplex"},
         {"guard_dimension", o.guards.dimension},
         {"guard_interval", o.guards.interval},
         {"guard_sure_thing_elements", o.guards.sure_thing_elements},
         {"guard_sure_thing_states", o.guards.sure_thing_states},
         {"guard_northeast", o.guards.northeast},
         {"guard_product", o.guards.product},
         {"strict_betweenness", o.strict_betweenness}};
  if (!o.axioms.empty()) j["axioms"] = axioms;
  return j;
}

Json render_spec_to_json(const RenderSpec& r) {
  Json j{{"width", r.width}, {"height", r.height}, {"margin", r.margin}};
  if (!r.styles.empty()) {
    Json styles = Json::object();
    for (const auto& [id, s] : r.styles) {
      Json sj = Json::object();
      if (!s.fill.empty()) sj["fill"] = s.fill;
      if (!s.stroke.empty()) sj["stroke"] = s.stroke;
      styles[id] = sj;
    }
    j["styles"] = styles;
  }
  if (r.auto_hyperplane)
    j["hyperplane"] = "auto";
  else if (r.hyperplane)
    j["hyperplane"] = Json{{"normal", vec_to_json(r.hyperplane->normal)},
                           {"threshold", rational_to_json(r.hyperplane->threshold)}};
  j["axis_labels"] = r.axis_labels;
  if (!r.alternatives.empty()) j["alternatives"] = r.alternatives;
  return j;
}

namespace {

RenderSpec render_spec_from_json(const Json& j) {
  if (!j.is_object()) schema("render: expected an object");
  RenderSpec r;
  auto dim = [&](const char* key, int& out) {
    if (auto it = j.find(key); it != j.end()) {
      size_t v = size_of(*it, std::string("render.") + key);
      if (v > 100000) schema(std::string("render.") + key + " is unreasonably large");
      out = static_cast<int>(v);
    }
  };
  dim("width", r.width);
  dim("height", r.height);
  dim("margin", r.margin);
  if (r.width <= 0 || r.height <= 0) schema("render: canvas dimensions must be positive");
  if (2 * r.margin >= std::min(r.width, r.height)) schema("render: margin leaves no drawing area");
  if (auto it = j.find("styles"); it != j.end()) {
    if (!it->is_object()) schema("render.styles: expected an object");
    for (const auto& [id, s] : it->items()) {
      Style st;
      if (s.contains("fill")) st.fill = string_of(s["fill"], "render.styles.fill");
      if (s.contains("stroke")) st.stroke = string_of(s["stroke"], "render.styles.stroke");
      r.styles[id] = st;
    }
  }
  if (auto it = j.find("hyperplane"); it != j.end() && !it->is_null()) {
    if (it->is_string() && it->get<std::string>() == "auto") {
      r.auto_hyperplane = true;
    } else {
      Hyperplane h{vec_from_json(field(*it, "normal", "render.hyperplane"), "render.hyperplane.normal"),
                   rational_from_json(field(*it, "threshold", "render.hyperplane"),
                                      "render.hyperplane.threshold")};
      if (h.normal.size() != 2)
        throw Error(ErrorCode::NotTwoDimensional, "render.hyperplane.normal must have 2 components");
      if (is_zero(h.normal)) schema("render.hyperplane.normal must be nonzero");
      r.hyperplane = std::move(h);
    }
  }
  if (auto it = j.find("axis_labels"); it != j.end()) {
    r.axis_labels = strings_of(*it, "render.axis_labels");
    if (r.axis_labels.size() != 2) schema("render.axis_labels: expected two labels");
  }
  if (auto it = j.find("alternatives"); it != j.end())
    r.alternatives = strings_of(*it, "render.alternatives");
  return r;
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) schema("top level: expected an object");
  if (auto it = j.find("format"); it != j.end()) {
    if (!it->is_number_integer() || it->get<long long>() != kFormatVersion)
      schema("unsupported format version (expected 1)");
  }

  ProblemFile p;
  if (j.contains("relation")) {
    p.relation = relation_from_json(j["relation"], p.reflexive_implicit);
  } else if (j.contains("elements")) {
    p.relation = relation_from_json(j, p.reflexive_implicit);
  }
  if (auto it = j.find("vector_table"); it != j.end())
    p.vector_table = vector_table_from_json(*it);
  if (auto it = j.find("decomposition"); it != j.end()) {
    if (!p.relation) schema("decomposition given without a relation");
    p.decomposition = *it;
  }
  if (auto it = j.find("basis"); it != j.end()) {
    Basis b;
    if (!it->is_array()) schema("basis: expected a list of vectors");
    for (const auto& v : *it) b.vectors.push_back(vec_from_json(v, "basis"));
    if (auto s = j.find("scaling"); s != j.end()) {
      if (!s->is_array()) schema("scaling: expected a list of [lo, hi] ranges");
      for (const auto& r : *s) {
        if (!r.is_array() || r.size() != 2) schema("scaling: each range must be [lo, hi]");
        b.scaling.push_back(IntervalValue::make(rational_from_json(r[0], "scaling"),
                                                rational_from_json(r[1], "scaling")));
      }
    }
    validate_basis(b);
    p.basis = std::move(b);
  } else if (j.contains("scaling")) {
    schema("scaling given without a basis");
  }
  if (auto it = j.find("utilities"); it != j.end()) {
    if (!it->is_array()) schema("utilities: expected an array");
    for (const auto& u : *it) {
      if (!u.is_object()) schema("utilities: expected objects");
      const std::string id = string_of(field(u, "id", "utilities"), "utilities.id");
      p.utilities.push_back({id, zonotope_from_json(u, "utilities[" + id + "]")});
    }
    if (p.utilities.empty()) schema("utilities: at least one alternative is required");
  }
  if (!p.relation && p.utilities.empty()) schema("problem has neither a relation nor utilities");
  if (auto it = j.find("options"); it != j.end()) {
    if (!it->is_object()) schema("options: expected an object");
    for (const auto& [k, v] : it->items()) {
      if (k == "axioms" && v.is_array()) {
        std::string joined;
        for (const auto& a : v) joined += (joined.empty() ? "" : ",") + string_of(a, "options.axioms");
        p.options.set(k, joined);
      } else {
        p.options.set(k, option_text(v, k));
      }
    }
  }
  if (auto it = j.find("render"); it != j.end()) {
    p.render = render_spec_from_json(*it);
    p.has_render = true;
  }

  // Cross references that can be checked without running the pipeline.
  if (p.relation && p.vector_table)
    for (const auto& [k, _] : p.vector_table->coordinates)
      if (std::find(p.relation->elements.begin(), p.relation->elements.end(), k) ==
          p.relation->elements.end())
        throw Error(ErrorCode::UnknownElement, "vector_table names unknown element '" + k + "'", {k});
  if (p.basis && p.decomposition && p.decomposition->contains("components") &&
      (*p.decomposition)["components"].is_array() &&
      (*p.decomposition)["components"].size() != p.basis->vectors.size())
    throw Error(ErrorCode::ArityMismatch, "basis arity differs from the decomposition arity");
  if (!p.utilities.empty()) {
    for (size_t i = 0; i < p.utilities.size(); ++i)
      for (size_t k = i + 1; k < p.utilities.size(); ++k)
        if (p.utilities[i].id == p.utilities[k].id)
          throw Error(ErrorCode::DuplicateElement, "duplicate utility '" + p.utilities[i].id + "'",
                      {p.utilities[i].id});
  }
  return p;
}

Json problem_to_json(const ProblemFile& p) {
  Json j{{"format", kFormatVersion}};
  if (p.relation) j["relation"] = relation_to_json(*p.relation, p.reflexive_implicit);
  if (p.vector_table) j["vector_table"] = vector_table_to_json(*p.vector_table);
  if (p.decomposition) j["decomposition"] = *p.decomposition;
  if (p.basis) {
    Json vs = Json::array();
    for (const auto& v : p.basis->vectors) vs.push_back(vec_to_json(v));
    j["basis"] = vs;
    if (!p.basis->scaling.empty()) {
      Json s = Json::array();
      for (const auto& r : p.basis->scaling)
        s.push_back(Json::array({rational_to_json(r.lo), rational_to_json(r.hi)}));
      j["scaling"] = s;
    }
  }
  if (!p.utilities.empty()) {
    Json us = Json::array();
    for (const auto& u : p.utilities) {
      Json z = zonotope_to_json(u.zonotope);
      Json entry{{"id", u.id}};
      entry.update(z);
      us.push_back(entry);
    }
    j["utilities"] = us;
  }
  j["options"] = options_to_json(p.options);
  if (p.has_render) j["render"] = render_spec_to_json(p.render);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace zonopref::io
