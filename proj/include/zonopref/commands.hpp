#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zonopref/io.hpp"

namespace zonopref::commands {

// Non-error results that still fail the command (exit codes 2, 5, 6).
enum class Outcome { Ok = 0, Violations = 1, AxiomFailure = 2, Unfaithful = 3 };

struct CommandOutput {
  std::string text;
  Outcome outcome = Outcome::Ok;
};

class Session {
 public:
  explicit Session(io::ProblemFile problem) : problem_(std::move(problem)) {}

  io::ProblemFile& problem() noexcept { return problem_; }
  const io::ProblemFile& problem() const noexcept { return problem_; }

  CommandOutput validate() const;
  CommandOutput quotient() const;
  CommandOutput width() const;
  CommandOutput extend() const;
  CommandOutput dimension() const;
  CommandOutput interval_check() const;
  CommandOutput decompose() const;
  CommandOutput represent() const;
  CommandOutput compare(std::string_view x, std::string_view y, bool certificate) const;
  // With `given`, evaluates that hyperplane instead of solving for one.
  CommandOutput separate(std::string_view above, std::string_view below,
                         const std::optional<io::Hyperplane>& given) const;
  CommandOutput render() const;
  CommandOutput report() const;

  // Pipeline stages.
  Preorder preorder() const;
  std::shared_ptr<const Decomposition> decomposition(const Preorder& p) const;
  Basis basis_for(const Decomposition& d) const;
  // Geometry-first utilities when given, otherwise built from the relation.
  UtilityMap utility_map() const;

 private:
  io::ProblemFile problem_;
};

// Deterministic SVG of 2D utilities; throws NotTwoDimensional.
std::string render_svg(const std::vector<io::Utility>& utilities, const io::RenderSpec& spec,
                       const std::optional<io::Hyperplane>& line);

}  // namespace zonopref::commands
