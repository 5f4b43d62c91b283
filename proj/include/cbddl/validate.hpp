#pragma once

#include <string>
#include <vector>

#include "cbddl/ast.hpp"

namespace cbddl {

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string message;
  SourcePos pos;
};

// "file:line:col: severity: message"
std::string render_diagnostic(const Diagnostic& d, const std::string& file);

// Checks every TaskSpec invariant, predicate arities against the schema
// table, part-index bounds, motion parameters and visual ranges.
// Deterministic and independent of block order. Empty result means valid.
std::vector<Diagnostic> validate(const TaskSpec& spec);

bool has_errors(const std::vector<Diagnostic>& diags);

}  // namespace cbddl
