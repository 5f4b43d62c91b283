#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cbddl/ast.hpp"

namespace cbddl {

struct Token {
  enum class Kind { LParen, RParen, Symbol, Number, String };
  Kind kind;
  std::string text;    // symbol name, string contents, or raw number text
  double number = 0.0; // Number only
  SourcePos pos;
};

class LexError : public std::runtime_error {
 public:
  LexError(std::string message, SourcePos pos)
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

// Tokenizes CBDDL source. Strips `;` comments, tracks line/column, and
// checks parenthesis balance. Throws LexError.
std::vector<Token> lex(const std::string& source);

}  // namespace cbddl
