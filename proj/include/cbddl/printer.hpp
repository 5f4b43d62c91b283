#pragma once

#include <string>

#include "cbddl/ast.hpp"

namespace cbddl {

// Shortest decimal text that parses back to exactly the same double.
// Never uses scientific notation (the CBDDL grammar has none).
std::string format_number(double v);

std::string print_expr(const Expr& e);

// Canonical text form. parse_problem(pretty_print(s)) is structurally
// equal to s; empty optional blocks are omitted.
std::string pretty_print(const TaskSpec& spec);

}  // namespace cbddl
