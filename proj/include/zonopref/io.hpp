#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "zonopref/interval_orders.hpp"
#include "zonopref/preference.hpp"
#include "zonopref/zonotope.hpp"

namespace zonopref::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

// Integers become JSON numbers, everything else an exact string ("0.5",
// "1/3"). Reading also accepts JSON floats (shortest round-trip decimal)
// and {"num": .., "den": ..} objects.
Json rational_to_json(const Rational& v);
Rational rational_from_json(const Json& j, std::string_view where);
Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j, std::string_view where);

Json relation_to_json(const Relation& r, bool reflexive_implicit);
// Non-loop pairs of the closure, with reflexive_implicit set.
Json preorder_to_json(const Preorder& p);
// The relation as written; the flag defaults to true when absent.
Relation relation_from_json(const Json& j, bool& reflexive_implicit);
// Adds (a, a) for every element.
Relation with_loops(Relation r);

Json zonotope_to_json(const Zonotope& z);
Zonotope zonotope_from_json(const Json& j, std::string_view where);

Json decomposition_to_json(const Decomposition& d);
// Components are re-closed over the source elements; endpoint maps must
// cover every element.
Decomposition decomposition_from_json(const Json& j, const Preorder& source);

Json vector_table_to_json(const VectorAlternativeTable& t);
VectorAlternativeTable vector_table_from_json(const Json& j);

Json axiom_report_to_json(const AxiomReport& r);

struct Guards {
  size_t dimension = kDefaultDimensionGuard;
  size_t interval = kDefaultIntervalGuard;
  size_t sure_thing_elements = SureThingGuard{}.max_elements;
  size_t sure_thing_states = SureThingGuard{}.max_states;
  size_t northeast = kDefaultNortheastGeneratorGuard;
  size_t product = kDefaultProductBound;

  // Lifts every exhaustive-search guard to at least `floor`.
  void raise_to(size_t floor);
};

struct Options {
  bool close = false;
  SearchMode mode = SearchMode::Exact;
  size_t max_m = 8;
  Tiebreak tiebreak = Tiebreak::Lexicographic;
  size_t cap = 1000;
  size_t max_k = 0;  // 0: bounded by the width
  Rational eps{1, 1000};
  NormalScaling scaling = NormalScaling::Box;
  Guards guards;
  std::vector<std::string> axioms;  // empty: A1-A3, plus A4 with a table
  bool strict_betweenness = false;

  // Accepts the keys used in the "options" object; values are strings as
  // given on a command line. Throws InvalidArgument.
  void set(std::string_view key, std::string_view value);
};

struct Style {
  std::string fill;
  std::string stroke;
};

struct Hyperplane {
  Vec normal;
  Rational threshold;
};

struct RenderSpec {
  int width = 480;
  int height = 480;
  int margin = 40;
  std::map<std::string, Style> styles;
  std::optional<Hyperplane> hyperplane;
  // Draw the separation certificate between the first two alternatives.
  bool auto_hyperplane = false;
  std::vector<std::string> axis_labels{"u1", "u2"};
  std::vector<std::string> alternatives;  // empty: all
};

struct Utility {
  std::string id;
  Zonotope zonotope;
};

struct ProblemFile {
  std::optional<Relation> relation;
  bool reflexive_implicit = true;
  std::optional<VectorAlternativeTable> vector_table;
  std::optional<Json> decomposition;  // resolved against the validated relation
  std::optional<Basis> basis;
  std::vector<Utility> utilities;  // geometry-first input
  Options options;
  RenderSpec render;
  bool has_render = false;
};

// Throws Parse on malformed JSON and Schema on shape errors. A bare
// relation object is accepted as a problem with only a relation.
ProblemFile parse_problem(std::string_view text);
Json problem_to_json(const ProblemFile& p);

Json options_to_json(const Options& o);
Json render_spec_to_json(const RenderSpec& r);

std::string dump(const Json& j);

}  // namespace zonopref::io
