#include "cbddl/lexer.hpp"

#include <cctype>
#include <charconv>

namespace cbddl {

namespace {

bool is_symbol_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == ':' || c == '?' || c == '.' || c == '+';
}

bool is_number_start(const std::string& s, size_t i) {
  char c = s[i];
  if (std::isdigit(static_cast<unsigned char>(c))) return true;
  if ((c == '+' || c == '-' || c == '.') && i + 1 < s.size()) {
    char n = s[i + 1];
    return std::isdigit(static_cast<unsigned char>(n)) ||
           (c != '.' && n == '.');
  }
  return false;
}

}  // namespace

std::vector<Token> lex(const std::string& source) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::vector<SourcePos> open_stack;
  size_t i = 0;
  const size_t n = source.size();

  auto advance = [&](size_t count) {
    for (size_t k = 0; k < count; ++k) {
      if (source[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += count;
  };

  while (i < n) {
    char c = source[i];
    SourcePos pos{line, col};
    if (c == ';') {
      while (i < n && source[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '(') {
      out.push_back({Token::Kind::LParen, "(", 0.0, pos});
      open_stack.push_back(pos);
      advance(1);
      continue;
    }
    if (c == ')') {
      if (open_stack.empty()) throw LexError("unbalanced ')'", pos);
      open_stack.pop_back();
      out.push_back({Token::Kind::RParen, ")", 0.0, pos});
      advance(1);
      continue;
    }
    if (c == '"') {
      size_t j = i + 1;
      while (j < n && source[j] != '"' && source[j] != '\n') ++j;
      if (j >= n || source[j] != '"')
        throw LexError("unterminated string", pos);
      out.push_back(
          {Token::Kind::String, source.substr(i + 1, j - i - 1), 0.0, pos});
      advance(j - i + 1);
      continue;
    }
    if (is_number_start(source, i)) {
      size_t j = i;
      if (source[j] == '+' || source[j] == '-') ++j;
      size_t digits = 0;
      while (j < n && std::isdigit(static_cast<unsigned char>(source[j]))) {
        ++j;
        ++digits;
      }
      if (j < n && source[j] == '.') {
        ++j;
        while (j < n && std::isdigit(static_cast<unsigned char>(source[j]))) {
          ++j;
          ++digits;
        }
      }
      std::string text = source.substr(i, j - i);
      if (digits == 0 || (j < n && is_symbol_char(source[j])))
        throw LexError("bad token '" + source.substr(i, j - i + 1) + "'", pos);
      double value = 0.0;
      auto res = std::from_chars(text.data(), text.data() + text.size(), value);
      if (res.ec != std::errc{})
        throw LexError("bad numeric literal '" + text + "'", pos);
      out.push_back({Token::Kind::Number, text, value, pos});
      advance(j - i);
      continue;
    }
    if (is_symbol_char(c) && c != '.' && c != '+') {
      size_t j = i;
      while (j < n && is_symbol_char(source[j])) ++j;
      out.push_back({Token::Kind::Symbol, source.substr(i, j - i), 0.0, pos});
      advance(j - i);
      continue;
    }
    throw LexError(std::string("bad token '") + c + "'", pos);
  }
  if (!open_stack.empty()) throw LexError("unbalanced '('", open_stack.back());
  return out;
}

}  // namespace cbddl
