#include "docrank/java_lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "docrank/errors.hpp"

namespace docrank::java {

namespace {

constexpr std::array<std::string_view, 53> kKeywords = {
    "abstract", "assert",     "boolean",   "break",      "byte",     "case",      "catch",
    "char",     "class",      "const",     "continue",   "default",  "do",        "double",
    "else",     "enum",       "extends",   "final",      "finally",  "float",     "for",
    "goto",     "if",         "implements", "import",    "instanceof", "int",     "interface",
    "long",     "native",     "new",       "package",    "private",  "protected", "public",
    "return",   "short",      "static",    "strictfp",   "super",    "switch",    "synchronized",
    "this",     "throw",      "throws",    "transient",  "try",      "void",      "volatile",
    "while",    "true",       "false",     "null"};

// Longest first; `>`-prefixed operators are deliberately absent.
constexpr std::array<std::string_view, 20> kMultiCharOps = {
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=",
    "<=",  "+=",  "-=", "*=", "/=", "&=", "|=", "^=", "%=", "<<"};

constexpr std::string_view kSingleCharOps = "(){}[];,.@=><!~?:+-*/&|^%";

bool is_ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  Lexer(std::string_view src, const std::string& name) : src_(src), name_(name) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    Token end;
    end.kind = TokenKind::End;
    end.line = line_;
    end.column = column();
    end.offset = src_.size();
    out.push_back(end);
    return out;
  }

 private:
  std::size_t column() const { return pos_ - line_start_ + 1; }

  [[noreturn]] void fail(const std::string& msg, std::size_t line, std::size_t col) const {
    throw ParseError(name_, line, col, msg);
  }

  void advance_newlines(std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i) {
      if (src_[i] == '\n') {
        ++line_;
        line_start_ = i + 1;
      }
    }
  }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\n') {
        ++pos_;
        ++line_;
        line_start_ = pos_;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
        ++pos_;
      } else if (pos_ == 0 && src_.substr(0, 3) == "\xEF\xBB\xBF") {
        pos_ += 3;
        line_start_ = pos_;
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (src_.substr(pos_, 2) == "/*") {
        const std::size_t line = line_;
        const std::size_t col = column();
        auto end = src_.find("*/", pos_ + 2);
        if (end == std::string_view::npos) fail("unterminated block comment", line, col);
        advance_newlines(pos_, end + 2);
        pos_ = end + 2;
      } else {
        break;
      }
    }
  }

  Token make(TokenKind kind, std::size_t start, std::size_t line, std::size_t col) const {
    Token t;
    t.kind = kind;
    t.text = src_.substr(start, pos_ - start);
    t.line = line;
    t.column = col;
    t.offset = start;
    return t;
  }

  Token next() {
    const std::size_t start = pos_;
    const std::size_t line = line_;
    const std::size_t col = column();
    const auto c = static_cast<unsigned char>(src_[pos_]);

    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_part(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      const auto word = src_.substr(start, pos_ - start);
      return make(is_java_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, start, line,
                  col);
    }
    if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() &&
                        is_digit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      lex_number();
      return make(TokenKind::Literal, start, line, col);
    }
    if (src_.substr(pos_, 3) == "\"\"\"") {
      auto end = src_.find("\"\"\"", pos_ + 3);
      while (end != std::string_view::npos && src_[end - 1] == '\\') {
        end = src_.find("\"\"\"", end + 1);
      }
      if (end == std::string_view::npos) fail("unterminated text block", line, col);
      advance_newlines(pos_, end + 3);
      pos_ = end + 3;
      auto t = make(TokenKind::Literal, start, line, col);
      return t;
    }
    if (c == '"' || c == '\'') {
      lex_quoted(static_cast<char>(c), line, col);
      return make(TokenKind::Literal, start, line, col);
    }
    for (auto op : kMultiCharOps) {
      if (src_.substr(pos_, op.size()) == op) {
        pos_ += op.size();
        return make(TokenKind::Operator, start, line, col);
      }
    }
    if (kSingleCharOps.find(static_cast<char>(c)) != std::string_view::npos) {
      ++pos_;
      return make(TokenKind::Operator, start, line, col);
    }
    fail(std::string("unexpected character '") + static_cast<char>(c) + "'", line, col);
  }

  void lex_quoted(char quote, std::size_t line, std::size_t col) {
    ++pos_;
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') {
        fail(quote == '"' ? "unterminated string literal" : "unterminated character literal", line,
             col);
      }
      const char ch = src_[pos_];
      if (ch == '\\') {
        pos_ += 2;
        continue;
      }
      ++pos_;
      if (ch == quote) return;
    }
  }

  void lex_number() {
    auto at = [&](std::size_t i) -> unsigned char {
      return i < src_.size() ? static_cast<unsigned char>(src_[i]) : 0;
    };
    if (at(pos_) == '0' && (at(pos_ + 1) == 'x' || at(pos_ + 1) == 'X' || at(pos_ + 1) == 'b' ||
                            at(pos_ + 1) == 'B')) {
      pos_ += 2;
      while (std::isxdigit(at(pos_)) || at(pos_) == '_') ++pos_;
      // hex floats: 0x1.8p3
      if (at(pos_) == '.') {
        ++pos_;
        while (std::isxdigit(at(pos_)) || at(pos_) == '_') ++pos_;
      }
      if (at(pos_) == 'p' || at(pos_) == 'P') {
        ++pos_;
        if (at(pos_) == '+' || at(pos_) == '-') ++pos_;
        while (is_digit(at(pos_))) ++pos_;
      }
    } else {
      while (is_digit(at(pos_)) || at(pos_) == '_') ++pos_;
      if (at(pos_) == '.' && is_digit(at(pos_ + 1))) {
        ++pos_;
        while (is_digit(at(pos_)) || at(pos_) == '_') ++pos_;
      } else if (at(pos_) == '.' && !is_ident_start(at(pos_ + 1)) && at(pos_ + 1) != '.') {
        ++pos_;  // `1.` is a valid double literal
      }
      if (at(pos_) == 'e' || at(pos_) == 'E') {
        ++pos_;
        if (at(pos_) == '+' || at(pos_) == '-') ++pos_;
        while (is_digit(at(pos_))) ++pos_;
      }
    }
    const auto suffix = at(pos_);
    if (suffix == 'l' || suffix == 'L' || suffix == 'f' || suffix == 'F' || suffix == 'd' ||
        suffix == 'D') {
      ++pos_;
    }
  }

  std::string_view src_;
  const std::string& name_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

}  // namespace

bool is_java_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<Token> tokenize(std::string_view source, const std::string& source_name) {
  return Lexer(source, source_name).run();
}

}  // namespace docrank::java
