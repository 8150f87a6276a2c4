// zonopref command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "zonopref/zonopref.h"

namespace {

const char* const kExitCodes = R"(Exit codes:
  0  success
  1  input error: I/O, malformed JSON, schema, duplicate/unknown element,
     dimension or arity mismatch, negative basis component, bad option
  2  violations: relation not reflexive/transitive (validate), not an
     interval order (interval-check), invalid given decomposition,
     unknown alternative, utility not two-dimensional (render)
  3  no decomposition or realizer within the requested bound
  4  instance too large for an exhaustive search (see ZONOPREF_GUARD_OVERRIDE)
  5  axiom check failed (report)
  6  representation not faithful (represent, report)
  7  internal error

Environment:
  ZONOPREF_GUARD_OVERRIDE=N  raise every exhaustive-search guard to at least N.
                             Searches are exponential; large N can be very slow.)";

int exit_for_status(zp_status s) {
  switch (s) {
    case ZP_OK: return 0;
    case ZP_ERR_NOT_REFLEXIVE:
    case ZP_ERR_NOT_TRANSITIVE:
    case ZP_ERR_NOT_INTERVAL_ORDER:
    case ZP_ERR_NOT_TWO_DIMENSIONAL:
    case ZP_ERR_UNKNOWN_ALTERNATIVE:
      return 2;
    case ZP_ERR_NO_DECOMPOSITION_WITHIN_BOUND: return 3;
    case ZP_ERR_INSTANCE_TOO_LARGE:
    case ZP_ERR_PRODUCT_TOO_LARGE:
      return 4;
    case ZP_ERR_INTERNAL: return 7;
    default: return 1;
  }
}

int exit_for_outcome(zp_outcome o) {
  switch (o) {
    case ZP_OUTCOME_OK: return 0;
    case ZP_OUTCOME_VIOLATIONS: return 2;
    case ZP_OUTCOME_AXIOM_FAILURE: return 5;
    case ZP_OUTCOME_UNFAITHFUL: return 6;
  }
  return 7;
}

int report_error(zp_status s) {
  std::cerr << "zonopref: " << zp_status_name(s) << ": " << zp_last_error() << "\n";
  const size_t n = zp_last_error_witness_count();
  if (n > 0) {
    std::cerr << "witness:";
    for (size_t i = 0; i < n; ++i) std::cerr << (i ? ", " : " ") << zp_last_error_witness(i);
    std::cerr << "\n";
  }
  if (s == ZP_ERR_INSTANCE_TOO_LARGE)
    std::cerr << "hint: use --mode greedy, or raise guards with ZONOPREF_GUARD_OVERRIDE\n";
  return exit_for_status(s);
}

struct ProblemDeleter {
  void operator()(zp_problem* p) const { zp_problem_free(p); }
};
using Problem = std::unique_ptr<zp_problem, ProblemDeleter>;

struct StringDeleter {
  void operator()(char* s) const { zp_string_free(s); }
};
using Owned = std::unique_ptr<char, StringDeleter>;

struct Common {
  std::string file;
  std::string out;
  bool close = false;
  std::string mode, tiebreak, scaling, eps, axioms;
  size_t max_m = 0, cap = 0, max_k = 0;
  std::vector<std::string> options;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("file", c.file, "Problem JSON file ('-' for stdin)")->required();
  cmd->add_option("-o,--out", c.out, "Write output to this file instead of stdout");
  cmd->add_flag("--close", c.close, "Take the reflexive-transitive closure instead of rejecting");
  cmd->add_option("--mode", c.mode, "Decomposition search: exact or greedy")
      ->check(CLI::IsMember({"exact", "greedy"}));
  cmd->add_option("--max-m", c.max_m, "Upper bound on the number of interval-order components");
  cmd->add_option("--tiebreak", c.tiebreak, "Linear extension tiebreak: lexicographic or input")
      ->check(CLI::IsMember({"lexicographic", "input"}));
  cmd->add_option("--cap", c.cap, "Maximum number of linear extensions to enumerate");
  cmd->add_option("--max-k", c.max_k, "Upper bound for the order dimension search");
  cmd->add_option("--eps", c.eps, "Lower bound on normal components for separation");
  cmd->add_option("--scaling", c.scaling, "Normal scaling for separation: box or simplex")
      ->check(CLI::IsMember({"box", "simplex"}));
  cmd->add_option("--axioms", c.axioms, "Comma-separated axioms to check, e.g. A1,A2,A4");
  cmd->add_option("--option", c.options, "Raw option key=value (repeatable)");
}

zp_status load(const Common& c, Problem& problem) {
  zp_problem* raw = nullptr;
  zp_status s;
  if (c.file == "-") {
    std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    s = zp_problem_from_json(text.c_str(), &raw);
  } else {
    s = zp_problem_from_file(c.file.c_str(), &raw);
  }
  if (s != ZP_OK) return s;
  problem.reset(raw);

  std::vector<std::pair<std::string, std::string>> opts;
  if (const char* g = std::getenv("ZONOPREF_GUARD_OVERRIDE"); g && *g) opts.emplace_back("guard_override", g);
  if (c.close) opts.emplace_back("close", "true");
  if (!c.mode.empty()) opts.emplace_back("mode", c.mode);
  if (c.max_m) opts.emplace_back("max_m", std::to_string(c.max_m));
  if (!c.tiebreak.empty()) opts.emplace_back("tiebreak", c.tiebreak);
  if (c.cap) opts.emplace_back("cap", std::to_string(c.cap));
  if (c.max_k) opts.emplace_back("max_k", std::to_string(c.max_k));
  if (!c.eps.empty()) opts.emplace_back("eps", c.eps);
  if (!c.scaling.empty()) opts.emplace_back("scaling", c.scaling);
  if (!c.axioms.empty()) opts.emplace_back("axioms", c.axioms);
  for (const auto& kv : c.options) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "zonopref: --option expects key=value, got '" << kv << "'\n";
      return ZP_ERR_INVALID_ARGUMENT;
    }
    opts.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }
  for (const auto& [k, v] : opts)
    if ((s = zp_problem_set_option(problem.get(), k.c_str(), v.c_str())) != ZP_OK) return s;
  return ZP_OK;
}

int emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return 0;
  }
  std::ofstream f(c.out, std::ios::binary);
  f << text;
  if (!f) {
    std::cerr << "zonopref: Io: cannot write '" << c.out << "'\n";
    return 1;
  }
  return 0;
}

using Runner = zp_status (*)(const zp_problem*, char**, zp_outcome*);

int run_simple(const Common& c, Runner fn) {
  Problem p;
  if (zp_status s = load(c, p); s != ZP_OK) return report_error(s);
  char* out = nullptr;
  zp_outcome outcome = ZP_OUTCOME_OK;
  if (zp_status s = fn(p.get(), &out, &outcome); s != ZP_OK) return report_error(s);
  Owned owned(out);
  if (int rc = emit(c, out)) return rc;
  return exit_for_outcome(outcome);
}

// Text form of a compare result: the verdict line, then the certificate.
std::string compare_text(const std::string& json_text) {
  auto j = nlohmann::ordered_json::parse(json_text);
  std::string text = j["summary"].get<std::string>() + "\n";
  if (!j.contains("certificate")) return text;
  const auto& c = j["certificate"];
  if (c.is_null()) return text + "no separating hyperplane in either direction\n";
  auto vec = [](const nlohmann::ordered_json& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + (v[i].is_string() ? v[i].get<std::string>() : v[i].dump());
    return s + ")";
  };
  auto val = [](const nlohmann::ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  text += "certificate: " + c["above"].get<std::string>() + " above " + c["below"].get<std::string>() + "\n";
  text += "  w = " + vec(c["normal"]) + "  normalized " + vec(c["normalized_normal"]) + "\n";
  text += "  c = " + val(c["threshold"]) + "\n";
  text += "  margin = " + val(c["margin"]) + "  (sup below " + val(c["sup_below"]) + ", inf above " +
          val(c["inf_above"]) + ")\n";
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zonopref: zonotope-valued utilities for incomplete preferences"};
  app.footer(kExitCodes);
  app.require_subcommand(1);

  struct Entry {
    const char* name;
    const char* help;
    Runner fn;
  };
  const Entry simple[] = {
      {"validate", "Check that the relation is a preorder", zp_validate},
      {"quotient", "Condense indifference classes into a poset", zp_quotient},
      {"width", "Maximum antichain and minimum chain cover", zp_width},
      {"extend", "Linear extensions of the quotient poset", zp_extend},
      {"dimension", "Order dimension with a realizer", zp_dimension},
      {"interval-check", "Interval-order test with endpoints or a 2+2 witness", zp_interval_check},
      {"decompose", "Decompose into interval orders", zp_decompose},
      {"represent", "Build zonotope utilities and check fidelity", zp_represent},
      {"render", "SVG of two-dimensional utilities", zp_render},
      {"report", "Full pipeline report", zp_report},
  };

  std::map<std::string, Common> commons;
  std::map<std::string, Runner> runners;
  for (const auto& e : simple) {
    auto* cmd = app.add_subcommand(e.name, e.help);
    add_common(cmd, commons[e.name]);
    runners[e.name] = e.fn;
  }

  Common compare_c;
  std::string cx, cy;
  bool certificate = false, compare_json = false;
  auto* compare = app.add_subcommand("compare", "Verdict between two alternatives");
  add_common(compare, compare_c);
  compare->add_option("x", cx, "First alternative")->required();
  compare->add_option("y", cy, "Second alternative")->required();
  compare->add_flag("--certificate", certificate, "Search for a separating hyperplane");
  compare->add_flag("--json", compare_json, "Print the JSON result");

  Common separate_c;
  std::string above, below, normal, threshold;
  auto* separate = app.add_subcommand("separate", "Separating hyperplane between two utilities");
  add_common(separate, separate_c);
  separate->add_option("above", above, "Alternative expected above the hyperplane")->required();
  separate->add_option("below", below, "Alternative expected below")->required();
  auto* n_opt = separate->add_option("--normal", normal, "Evaluate this normal, e.g. 1,1");
  auto* t_opt = separate->add_option("--threshold", threshold, "Threshold for --normal");
  n_opt->needs(t_opt);
  t_opt->needs(n_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  for (const auto& e : simple)
    if (app.got_subcommand(e.name)) return run_simple(commons[e.name], runners[e.name]);

  if (compare->parsed()) {
    Problem p;
    if (zp_status s = load(compare_c, p); s != ZP_OK) return report_error(s);
    char* out = nullptr;
    if (zp_status s = zp_compare(p.get(), cx.c_str(), cy.c_str(), certificate, &out, nullptr); s != ZP_OK)
      return report_error(s);
    Owned owned(out);
    return emit(compare_c, compare_json ? std::string(out) : compare_text(out));
  }

  if (separate->parsed()) {
    Problem p;
    if (zp_status s = load(separate_c, p); s != ZP_OK) return report_error(s);
    char* out = nullptr;
    const char* nrm = normal.empty() ? nullptr : normal.c_str();
    const char* thr = threshold.empty() ? nullptr : threshold.c_str();
    if (zp_status s = zp_separate(p.get(), above.c_str(), below.c_str(), nrm, thr, &out, nullptr); s != ZP_OK)
      return report_error(s);
    Owned owned(out);
    return emit(separate_c, out);
  }
  return 1;
}
