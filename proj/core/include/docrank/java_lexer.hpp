#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace docrank::java {

enum class TokenKind { Identifier, Keyword, Literal, Operator, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string_view text;
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t offset = 0;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_op(std::string_view t) const { return is(TokenKind::Operator, t); }
  bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
  bool is_identifier() const { return kind == TokenKind::Identifier; }
};

bool is_java_keyword(std::string_view word);

// Tokenizes Java source. Comments and whitespace are dropped. `>` is always a
// single-character token; the parser glues shift and comparison operators
// from adjacent `>` tokens so nested generic closers need no special casing.
// The returned tokens view into `source`, which must outlive them.
// Throws ParseError on unterminated literals/comments or stray characters.
std::vector<Token> tokenize(std::string_view source, const std::string& source_name = {});

}  // namespace docrank::java
