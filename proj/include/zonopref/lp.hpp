#pragma once

#include <vector>

#include "zonopref/rational.hpp"

namespace zonopref::lp {

enum class Sense { LessEq, Equal, GreaterEq };

struct Constraint {
  Vec coeffs;
  Sense sense = Sense::LessEq;
  Rational rhs;
};

// maximize objective . x  subject to constraints, x >= 0.
struct LinearProgram {
  size_t num_vars = 0;
  Vec objective;
  std::vector<Constraint> constraints;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  Rational value;
  Vec x;
};

// Dense two-phase simplex in exact rational arithmetic with Bland's rule.
Result solve(const LinearProgram& program);

}  // namespace zonopref::lp
