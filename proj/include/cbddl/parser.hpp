#pragma once

#include <stdexcept>
#include <string>

#include "cbddl/ast.hpp"

namespace cbddl {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, SourcePos pos)
      : std::runtime_error(message + " at " + std::to_string(pos.line) + ":" +
                           std::to_string(pos.col)),
        message_(std::move(message)),
        pos_(pos) {}
  const std::string& message() const { return message_; }
  SourcePos pos() const { return pos_; }

 private:
  std::string message_;
  SourcePos pos_;
};

// Parses a CBDDL problem file:
//   (define (problem NAME) (:domain D) <blocks...>)
// Block order is free; unknown :keywords are a hard error. Comments are
// stripped by the lexer. Throws LexError / ParseError.
TaskSpec parse_problem(const std::string& source);

}  // namespace cbddl
