#define ZONOPREF_BUILDING
#include "zonopref/zonopref.h"

#include <cstring>
#include <fstream>
#include <functional>
#include <new>
#include <sstream>

#include "zonopref/commands.hpp"
#include "zonopref/error.hpp"

struct zp_problem {
  zonopref::commands::Session session;
};

struct zp_zonotope {
  zonopref::Zonotope z;
};

namespace {

using zonopref::Error;
using zonopref::ErrorCode;

thread_local std::string last_error;
thread_local std::vector<std::string> last_witness;

void clear_error() {
  last_error.clear();
  last_witness.clear();
}

zp_status fail(ErrorCode code, std::string message, std::vector<std::string> witness = {}) {
  last_error = std::move(message);
  last_witness = std::move(witness);
  return static_cast<zp_status>(code);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs fn with every exception mapped onto a status code.
zp_status guarded(const std::function<void()>& fn) {
  clear_error();
  try {
    fn();
    return ZP_OK;
  } catch (const Error& e) {
    return fail(e.code(), e.what(), e.witness());
  } catch (const std::bad_alloc&) {
    return fail(ErrorCode::Internal, "out of memory");
  } catch (const std::exception& e) {
    return fail(ErrorCode::Internal, e.what());
  }
}

zp_status run(const zp_problem* p, char** out, zp_outcome* outcome,
              const std::function<zonopref::commands::CommandOutput(
                  const zonopref::commands::Session&)>& cmd) {
  if (!p || !out) return fail(ErrorCode::InvalidArgument, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto result = cmd(p->session);
    *out = copy_string(result.text);
    if (outcome) *outcome = static_cast<zp_outcome>(result.outcome);
  });
}

zonopref::Vec parse_csv(const char* text) {
  zonopref::Vec v;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(zonopref::parse_rational(item));
  if (v.empty()) throw Error(ErrorCode::InvalidArgument, "empty vector");
  return v;
}

}  // namespace

extern "C" {

int zp_abi_version(void) { return ZP_ABI_VERSION; }

const char* zp_status_name(zp_status status) {
  return zonopref::error_code_name(static_cast<ErrorCode>(status));
}

const char* zp_last_error(void) { return last_error.c_str(); }

size_t zp_last_error_witness_count(void) { return last_witness.size(); }

const char* zp_last_error_witness(size_t index) {
  return index < last_witness.size() ? last_witness[index].c_str() : nullptr;
}

zp_status zp_problem_from_json(const char* text, zp_problem** out) {
  if (!text || !out) return fail(ErrorCode::InvalidArgument, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new zp_problem{zonopref::commands::Session(zonopref::io::parse_problem(text))};
  });
}

zp_status zp_problem_from_file(const char* path, zp_problem** out) {
  if (!path || !out) return fail(ErrorCode::InvalidArgument, "null argument");
  *out = nullptr;
  std::ifstream in(path, std::ios::binary);
  if (!in) return fail(ErrorCode::Io, std::string("cannot open '") + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return fail(ErrorCode::Io, std::string("cannot read '") + path + "'");
  return zp_problem_from_json(buf.str().c_str(), out);
}

void zp_problem_free(zp_problem* problem) { delete problem; }

zp_status zp_problem_set_option(zp_problem* problem, const char* key, const char* value) {
  if (!problem || !key || !value) return fail(ErrorCode::InvalidArgument, "null argument");
  return guarded([&] { problem->session.problem().options.set(key, value); });
}

zp_status zp_problem_to_json(const zp_problem* problem, char** out) {
  if (!problem || !out) return fail(ErrorCode::InvalidArgument, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = copy_string(zonopref::io::dump(zonopref::io::problem_to_json(problem->session.problem())));
  });
}

#define ZP_COMMAND(name, method)                                              \
  zp_status name(const zp_problem* p, char** out, zp_outcome* outcome) {      \
    return run(p, out, outcome, [](const auto& s) { return s.method(); });    \
  }

ZP_COMMAND(zp_validate, validate)
ZP_COMMAND(zp_quotient, quotient)
ZP_COMMAND(zp_width, width)
ZP_COMMAND(zp_extend, extend)
ZP_COMMAND(zp_dimension, dimension)
ZP_COMMAND(zp_interval_check, interval_check)
ZP_COMMAND(zp_decompose, decompose)
ZP_COMMAND(zp_represent, represent)
ZP_COMMAND(zp_render, render)
ZP_COMMAND(zp_report, report)

#undef ZP_COMMAND

zp_status zp_compare(const zp_problem* p, const char* x, const char* y, int certificate, char** out,
                     zp_outcome* outcome) {
  if (!x || !y) return fail(ErrorCode::InvalidArgument, "null alternative");
  return run(p, out, outcome,
             [&](const auto& s) { return s.compare(x, y, certificate != 0); });
}

zp_status zp_separate(const zp_problem* p, const char* above, const char* below,
                      const char* normal_csv, const char* threshold, char** out,
                      zp_outcome* outcome) {
  if (!above || !below) return fail(ErrorCode::InvalidArgument, "null alternative");
  if ((normal_csv == nullptr) != (threshold == nullptr))
    return fail(ErrorCode::InvalidArgument, "normal and threshold must be given together");
  return run(p, out, outcome, [&](const auto& s) {
    std::optional<zonopref::io::Hyperplane> given;
    if (normal_csv) given = zonopref::io::Hyperplane{parse_csv(normal_csv), zonopref::parse_rational(threshold)};
    return s.separate(above, below, given);
  });
}

void zp_string_free(char* s) { std::free(s); }

zp_status zp_zonotope_from_json(const char* text, zp_zonotope** out) {
  if (!text || !out) return fail(ErrorCode::InvalidArgument, "null argument");
  *out = nullptr;
  return guarded([&] {
    zonopref::io::Json j;
    try {
      j = zonopref::io::Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
    }
    *out = new zp_zonotope{zonopref::io::zonotope_from_json(j, "zonotope")};
  });
}

void zp_zonotope_free(zp_zonotope* z) { delete z; }

size_t zp_zonotope_dim(const zp_zonotope* z) { return z ? z->z.dim() : 0; }

zp_status zp_zonotope_to_json(const zp_zonotope* z, char** out) {
  if (!z || !out) return fail(ErrorCode::InvalidArgument, "null argument");
  return guarded([&] { *out = copy_string(zonopref::io::dump(zonopref::io::zonotope_to_json(z->z))); });
}

zp_status zp_zonotope_minkowski_sum(const zp_zonotope* a, const zp_zonotope* b, zp_zonotope** out) {
  if (!a || !b || !out) return fail(ErrorCode::InvalidArgument, "null argument");
  return guarded([&] { *out = new zp_zonotope{zonopref::minkowski_sum(a->z, b->z)}; });
}

zp_status zp_zonotope_difference(const zp_zonotope* a, const zp_zonotope* b, zp_zonotope** out) {
  if (!a || !b || !out) return fail(ErrorCode::InvalidArgument, "null argument");
  return guarded([&] { *out = new zp_zonotope{zonopref::extended_set_difference(a->z, b->z)}; });
}

zp_status zp_zonotope_support(const zp_zonotope* z, const char* direction_csv, char** out) {
  if (!z || !direction_csv || !out) return fail(ErrorCode::InvalidArgument, "null argument");
  return guarded([&] {
    zonopref::Vec w = parse_csv(direction_csv);
    if (w.size() != z->z.dim()) throw Error(ErrorCode::DimensionMismatch, "direction length differs");
    *out = copy_string(zonopref::format_rational(zonopref::support(z->z, w)));
  });
}

zp_status zp_zonotope_vertices_2d(const zp_zonotope* z, char** out) {
  if (!z || !out) return fail(ErrorCode::InvalidArgument, "null argument");
  return guarded([&] {
    zonopref::io::Json a = zonopref::io::Json::array();
    for (const auto& v : zonopref::vertices_2d(z->z)) a.push_back(zonopref::io::vec_to_json(v));
    *out = copy_string(a.dump());
  });
}

}  // extern "C"
