#include "docrank/java_parser.hpp"

#include <array>
#include <optional>

#include "docrank/errors.hpp"
#include "docrank/java_lexer.hpp"

namespace docrank::java {

namespace {

constexpr std::array<std::string_view, 9> kPrimitiveTypes = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "void"};

bool is_primitive_keyword(const Token& t) {
  if (t.kind != TokenKind::Keyword) return false;
  for (auto p : kPrimitiveTypes) {
    if (t.text == p) return true;
  }
  return false;
}

constexpr std::array<std::string_view, 11> kModifierKeywords = {
    "public", "protected", "private", "static",    "abstract", "final",
    "native", "synchronized", "transient", "volatile", "strictfp"};

bool is_modifier_keyword(const Token& t) {
  if (t.kind != TokenKind::Keyword) return false;
  for (auto m : kModifierKeywords) {
    if (t.text == m) return true;
  }
  return false;
}

// Binary operator precedence; higher binds tighter.
int binary_precedence(std::string_view op) {
  if (op == "||") return 1;
  if (op == "&&") return 2;
  if (op == "|") return 3;
  if (op == "^") return 4;
  if (op == "&") return 5;
  if (op == "==" || op == "!=") return 6;
  if (op == "<" || op == ">" || op == "<=" || op == ">=" || op == "instanceof") return 7;
  if (op == "<<" || op == ">>" || op == ">>>") return 8;
  if (op == "+" || op == "-") return 9;
  if (op == "*" || op == "/" || op == "%") return 10;
  return 0;
}

bool is_assignment_op(std::string_view op) {
  return op == "=" || op == "+=" || op == "-=" || op == "*=" || op == "/=" || op == "%=" ||
         op == "&=" || op == "|=" || op == "^=" || op == "<<=" || op == ">>=" || op == ">>>=";
}

class Parser {
 public:
  Parser(std::string_view source, const std::string& path)
      : path_(path), tokens_(tokenize(source, path)) {}

  SourceUnit parse() {
    SourceUnit unit;
    unit.path = path_;

    const auto start = pos_;
    skip_annotations();
    if (at_keyword("package")) {
      advance();
      unit.package_name = parse_qualified_name();
      expect_op(";");
    } else {
      pos_ = start;
    }

    while (at_keyword("import")) {
      advance();
      Import imp;
      if (at_keyword("static")) {
        advance();
        imp.is_static = true;
      }
      imp.name = expect_identifier();
      while (at_op(".")) {
        advance();
        if (at_op("*")) {
          advance();
          imp.on_demand = true;
          break;
        }
        imp.name += "." + expect_identifier();
      }
      expect_op(";");
      unit.imports.push_back(std::move(imp));
    }

    while (!at_end()) {
      if (at_op(";")) {
        advance();
        continue;
      }
      skip_modifiers();
      auto decl = parse_type_declaration();
      if (!decl) fail("expected a class, interface, enum or record declaration");
      unit.types.push_back(std::move(*decl));
    }
    return unit;
  }

 private:
  // ---- token helpers --------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    const auto idx = pos_ + ahead;
    return idx < tokens_.size() ? tokens_[idx] : tokens_.back();
  }
  const Token& advance() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == TokenKind::End; }
  bool at_op(std::string_view op, std::size_t ahead = 0) const { return peek(ahead).is_op(op); }
  bool at_keyword(std::string_view kw, std::size_t ahead = 0) const {
    return peek(ahead).is_keyword(kw);
  }
  bool at_identifier(std::size_t ahead = 0) const { return peek(ahead).is_identifier(); }
  bool at_contextual(std::string_view word, std::size_t ahead = 0) const {
    return peek(ahead).is(TokenKind::Identifier, word);
  }

  // True when tokens[i] and tokens[i+1] touch, e.g. the two halves of `>>`.
  bool adjacent(std::size_t ahead) const {
    const auto& a = peek(ahead);
    const auto& b = peek(ahead + 1);
    return b.kind != TokenKind::End && b.offset == a.offset + a.text.size();
  }

  SourceLocation loc() const { return {peek().line, peek().column}; }

  [[noreturn]] void fail(const std::string& message) const {
    const auto& t = peek();
    std::string near = t.kind == TokenKind::End ? "end of input" : "'" + std::string(t.text) + "'";
    throw ParseError(path_, t.line, t.column, message + " near " + near);
  }

  void expect_op(std::string_view op) {
    if (!at_op(op)) fail("expected '" + std::string(op) + "'");
    advance();
  }
  void expect_keyword(std::string_view kw) {
    if (!at_keyword(kw)) fail("expected '" + std::string(kw) + "'");
    advance();
  }
  std::string expect_identifier() {
    if (!at_identifier()) fail("expected an identifier");
    return std::string(advance().text);
  }

  template <typename F>
  auto attempt(F&& f) -> std::optional<decltype(f())> {
    const auto saved = pos_;
    try {
      return f();
    } catch (const ParseError&) {
      pos_ = saved;
      return std::nullopt;
    }
  }

  std::string parse_qualified_name() {
    std::string name = expect_identifier();
    while (at_op(".") && at_identifier(1)) {
      advance();
      name += "." + expect_identifier();
    }
    return name;
  }

  // ---- modifiers and annotations -------------------------------------------

  void skip_balanced(std::string_view open, std::string_view close) {
    expect_op(open);
    int depth = 1;
    while (depth > 0) {
      if (at_end()) fail("unbalanced '" + std::string(open) + "'");
      if (at_op(open)) ++depth;
      if (at_op(close)) --depth;
      advance();
    }
  }

  bool at_annotation() const { return at_op("@") && !at_keyword("interface", 1); }

  void skip_annotation() {
    expect_op("@");
    parse_qualified_name();
    if (at_op("(")) skip_balanced("(", ")");
  }

  void skip_annotations() {
    while (at_annotation()) skip_annotation();
  }

  void skip_modifiers() {
    while (true) {
      if (at_annotation()) {
        skip_annotation();
      } else if (is_modifier_keyword(peek())) {
        advance();
      } else if (at_contextual("sealed") && starts_declaration(1)) {
        advance();
      } else if (at_contextual("non") && at_op("-", 1) && at_contextual("sealed", 2)) {
        advance();
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  // Member-level modifiers additionally admit `default` on interface methods.
  void skip_member_modifiers() {
    while (true) {
      skip_modifiers();
      if (at_keyword("default") && !at_op(":", 1) && !at_op("->", 1)) {
        advance();
        continue;
      }
      return;
    }
  }

  bool starts_declaration(std::size_t ahead) const {
    const auto& t = peek(ahead);
    return t.is_keyword("class") || t.is_keyword("interface") || t.is_keyword("enum") ||
           is_modifier_keyword(t) || t.is_op("@") || t.is(TokenKind::Identifier, "record") ||
           t.is(TokenKind::Identifier, "sealed") || t.is(TokenKind::Identifier, "non");
  }

  // ---- types ----------------------------------------------------------------

  std::vector<std::string> parse_type_parameters() {
    std::vector<std::string> names;
    expect_op("<");
    while (true) {
      skip_annotations();
      names.push_back(expect_identifier());
      if (at_keyword("extends")) {
        advance();
        parse_type();
        while (at_op("&")) {
          advance();
          parse_type();
        }
      }
      if (at_op(",")) {
        advance();
        continue;
      }
      break;
    }
    expect_op(">");
    return names;
  }

  void parse_type_arguments(std::vector<TypeRef>& into) {
    expect_op("<");
    if (at_op(">")) {  // diamond
      advance();
      return;
    }
    while (true) {
      skip_annotations();
      if (at_op("?")) {
        TypeRef wildcard;
        wildcard.loc = loc();
        wildcard.wildcard = true;
        wildcard.name = "?";
        advance();
        if (at_keyword("extends") || at_keyword("super")) {
          advance();
          wildcard.arguments.push_back(parse_type());
        }
        into.push_back(std::move(wildcard));
      } else {
        into.push_back(parse_type());
      }
      if (at_op(",")) {
        advance();
        continue;
      }
      break;
    }
    expect_op(">");
  }

  void parse_dims(TypeRef& type) {
    while (true) {
      const auto saved = pos_;
      skip_annotations();
      if (at_op("[") && at_op("]", 1)) {
        advance();
        advance();
        ++type.array_dims;
      } else {
        pos_ = saved;
        return;
      }
    }
  }

  // A type without trailing array dimensions.
  TypeRef parse_base_type() {
    skip_annotations();
    TypeRef type;
    type.loc = loc();
    if (is_primitive_keyword(peek())) {
      type.name = std::string(advance().text);
      type.primitive = true;
      return type;
    }
    type.name = expect_identifier();
    if (at_op("<")) parse_type_arguments(type.arguments);
    while (at_op(".") && (at_identifier(1) || at_op("@", 1))) {
      advance();
      skip_annotations();
      type.name += "." + expect_identifier();
      if (at_op("<")) parse_type_arguments(type.arguments);
    }
    return type;
  }

  TypeRef parse_type() {
    TypeRef type = parse_base_type();
    parse_dims(type);
    return type;
  }

  std::vector<TypeRef> parse_type_list() {
    std::vector<TypeRef> types;
    types.push_back(parse_type());
    while (at_op(",")) {
      advance();
      types.push_back(parse_type());
    }
    return types;
  }

  // ---- declarations ---------------------------------------------------------

  bool at_record_declaration() const {
    return at_contextual("record") && at_identifier(1) && (at_op("(", 2) || at_op("<", 2));
  }

  // Expects modifiers to have been consumed already.
  std::optional<TypeDecl> parse_type_declaration() {
    TypeDecl decl;
    decl.loc = loc();
    if (at_keyword("class")) {
      advance();
      decl.kind = TypeDecl::Kind::Class;
      decl.name = expect_identifier();
      if (at_op("<")) decl.type_parameters = parse_type_parameters();
      if (at_keyword("extends")) {
        advance();
        decl.extends.push_back(parse_type());
      }
      if (at_keyword("implements")) {
        advance();
        decl.implements = parse_type_list();
      }
      skip_permits();
      parse_class_body(decl);
    } else if (at_keyword("interface")) {
      advance();
      decl.kind = TypeDecl::Kind::Interface;
      decl.name = expect_identifier();
      if (at_op("<")) decl.type_parameters = parse_type_parameters();
      if (at_keyword("extends")) {
        advance();
        decl.extends = parse_type_list();
      }
      skip_permits();
      parse_class_body(decl);
    } else if (at_keyword("enum")) {
      advance();
      decl.kind = TypeDecl::Kind::Enum;
      decl.name = expect_identifier();
      if (at_keyword("implements")) {
        advance();
        decl.implements = parse_type_list();
      }
      parse_enum_body(decl);
    } else if (at_op("@") && at_keyword("interface", 1)) {
      advance();
      advance();
      decl.kind = TypeDecl::Kind::Annotation;
      decl.name = expect_identifier();
      parse_class_body(decl);
    } else if (at_record_declaration()) {
      advance();
      decl.kind = TypeDecl::Kind::Record;
      decl.name = expect_identifier();
      if (at_op("<")) decl.type_parameters = parse_type_parameters();
      expect_op("(");
      if (!at_op(")")) {
        while (true) {
          decl.fields.push_back(parse_formal_parameter());
          if (!at_op(",")) break;
          advance();
        }
      }
      expect_op(")");
      if (at_keyword("implements")) {
        advance();
        decl.implements = parse_type_list();
      }
      parse_class_body(decl);
    } else {
      return std::nullopt;
    }
    return decl;
  }

  void skip_permits() {
    if (at_contextual("permits")) {
      advance();
      parse_type_list();
    }
  }

  void parse_enum_body(TypeDecl& decl) {
    expect_op("{");
    while (!at_op(";") && !at_op("}")) {
      skip_annotations();
      EnumConstant constant;
      constant.loc = loc();
      constant.name = expect_identifier();
      if (at_op("(")) constant.arguments = parse_arguments();
      if (at_op("{")) {
        auto body = std::make_unique<TypeDecl>();
        body->kind = TypeDecl::Kind::Class;
        body->loc = loc();
        parse_class_body(*body);
        constant.body = std::move(body);
      }
      decl.enum_constants.push_back(std::move(constant));
      if (at_op(",")) {
        advance();
        continue;
      }
      break;
    }
    if (at_op(";")) {
      advance();
      parse_members(decl);
    }
    expect_op("}");
  }

  void parse_class_body(TypeDecl& decl) {
    expect_op("{");
    parse_members(decl);
    expect_op("}");
  }

  void parse_members(TypeDecl& decl) {
    while (!at_op("}")) {
      if (at_end()) fail("unterminated type body");
      parse_member(decl);
    }
  }

  void parse_member(TypeDecl& decl) {
    if (at_op(";")) {
      advance();
      return;
    }
    const bool is_static_block = at_keyword("static") && at_op("{", 1);
    if (is_static_block) advance();
    if (at_op("{")) {
      decl.initializers.push_back(parse_block());
      return;
    }

    skip_member_modifiers();

    if (auto nested = parse_type_declaration()) {
      decl.nested.push_back(std::make_unique<TypeDecl>(std::move(*nested)));
      return;
    }

    Method method;
    method.loc = loc();
    if (at_op("<")) method.type_parameters = parse_type_parameters();

    // Constructor: Name '(' ; compact record constructor: Name '{'.
    if (at_identifier() && (at_op("(", 1) || (decl.kind == TypeDecl::Kind::Record &&
                                              peek().text == decl.name && at_op("{", 1)))) {
      method.constructor = true;
      method.name = expect_identifier();
      if (at_op("(")) method.parameters = parse_formal_parameters();
      skip_throws();
      method.body = parse_block();
      decl.methods.push_back(std::move(method));
      return;
    }

    TypeRef type = parse_type();
    const auto name_loc = loc();
    std::string name = expect_identifier();

    if (at_op("(")) {
      method.name = std::move(name);
      method.parameters = parse_formal_parameters();
      parse_dims(type);  // legacy `int f()[]`
      method.return_type = std::move(type);
      skip_throws();
      if (at_keyword("default")) {  // annotation element default
        advance();
        parse_element_value();
        expect_op(";");
      } else if (at_op(";")) {
        advance();
      } else {
        method.body = parse_block();
      }
      decl.methods.push_back(std::move(method));
      return;
    }

    // Field declarators.
    while (true) {
      Variable field;
      field.loc = name_loc;
      field.name = std::move(name);
      TypeRef field_type = type;
      parse_dims(field_type);
      field.type = std::move(field_type);
      if (at_op("=")) {
        advance();
        field.init = parse_variable_initializer();
      }
      decl.fields.push_back(std::move(field));
      if (!at_op(",")) break;
      advance();
      name = expect_identifier();
    }
    expect_op(";");
  }

  void parse_element_value() {
    if (at_annotation()) {
      skip_annotation();
    } else if (at_op("{")) {
      skip_balanced("{", "}");
    } else {
      parse_conditional();
    }
  }

  void skip_throws() {
    if (at_keyword("throws")) {
      advance();
      parse_type_list();
    }
  }

  std::vector<Variable> parse_formal_parameters() {
    std::vector<Variable> params;
    expect_op("(");
    if (!at_op(")")) {
      while (true) {
        auto param = parse_formal_parameter();
        if (!param.name.empty()) params.push_back(std::move(param));
        if (!at_op(",")) break;
        advance();
      }
    }
    expect_op(")");
    return params;
  }

  // Returns a parameter with an empty name for receiver parameters (`Foo this`).
  Variable parse_formal_parameter() {
    skip_modifiers();
    Variable param;
    param.loc = loc();
    TypeRef type = parse_type();
    skip_annotations();
    if (at_op("...")) {
      advance();
      type.varargs = true;
    }
    if (at_keyword("this")) {
      advance();
      return Variable{};
    }
    if (at_identifier() && at_op(".", 1) && at_keyword("this", 2)) {
      advance();
      advance();
      advance();
      return Variable{};
    }
    param.name = expect_identifier();
    parse_dims(type);
    param.type = std::move(type);
    return param;
  }

  // ---- statements -----------------------------------------------------------

  StmtPtr make_stmt(Stmt::Kind kind, SourceLocation where) {
    auto s = std::make_unique<Stmt>();
    s->kind = kind;
    s->loc = where;
    return s;
  }

  StmtPtr parse_block() {
    auto block = make_stmt(Stmt::Kind::Block, loc());
    expect_op("{");
    while (!at_op("}")) {
      if (at_end()) fail("unterminated block");
      block->children.push_back(parse_block_statement());
    }
    expect_op("}");
    return block;
  }

  // Local variable declaration head: modifiers, then `var` or a type, then a
  // name followed by something a declarator can continue with.
  std::optional<TypeRef> try_local_variable_head(bool allow_colon) {
    return attempt([&]() -> TypeRef {
      skip_modifiers();
      TypeRef type;
      if (at_contextual("var") && at_identifier(1)) {
        advance();
        type.name = "var";
      } else {
        type = parse_type();
      }
      if (!at_identifier()) fail("not a declaration");
      const bool continues = at_op("=", 1) || at_op(",", 1) || at_op(";", 1) || at_op("[", 1) ||
                             (allow_colon && at_op(":", 1));
      if (!continues) fail("not a declaration");
      return type;
    });
  }

  std::vector<Variable> parse_declarators(const TypeRef& type) {
    std::vector<Variable> vars;
    while (true) {
      Variable v;
      v.loc = loc();
      v.name = expect_identifier();
      TypeRef declared = type;
      parse_dims(declared);
      if (declared.name != "var") v.type = std::move(declared);
      if (at_op("=")) {
        advance();
        v.init = parse_variable_initializer();
      }
      vars.push_back(std::move(v));
      if (!at_op(",")) break;
      advance();
    }
    return vars;
  }

  bool at_local_class_declaration() {
    const auto saved = pos_;
    skip_modifiers();
    const bool yes = at_keyword("class") || at_keyword("interface") || at_keyword("enum") ||
                     at_record_declaration();
    pos_ = saved;
    return yes;
  }

  StmtPtr parse_block_statement() {
    const auto where = loc();
    if (at_local_class_declaration()) {
      skip_modifiers();
      auto decl = parse_type_declaration();
      auto s = make_stmt(Stmt::Kind::LocalClass, where);
      s->local_class = std::make_unique<TypeDecl>(std::move(*decl));
      return s;
    }
    // `yield` is never a type name, so `yield x;` is a yield statement.
    if (!at_keyword("this") && !at_keyword("super") && !at_keyword("new") &&
        !at_contextual("yield")) {
      if (auto type = try_local_variable_head(false)) {
        auto s = make_stmt(Stmt::Kind::LocalVar, where);
        s->variables = parse_declarators(*type);
        expect_op(";");
        return s;
      }
    }
    return parse_statement();
  }

  StmtPtr parse_statement() {
    const auto where = loc();
    const Token& t = peek();

    if (t.is_op("{")) return parse_block();
    if (t.is_op(";")) {
      advance();
      return make_stmt(Stmt::Kind::Empty, where);
    }
    if (t.is_keyword("if")) {
      advance();
      auto s = make_stmt(Stmt::Kind::If, where);
      s->exprs.push_back(parse_par_expression());
      s->children.push_back(parse_statement());
      if (at_keyword("else")) {
        advance();
        s->children.push_back(parse_statement());
      }
      return s;
    }
    if (t.is_keyword("while")) {
      advance();
      auto s = make_stmt(Stmt::Kind::While, where);
      s->exprs.push_back(parse_par_expression());
      s->children.push_back(parse_statement());
      return s;
    }
    if (t.is_keyword("do")) {
      advance();
      auto s = make_stmt(Stmt::Kind::DoWhile, where);
      s->children.push_back(parse_statement());
      expect_keyword("while");
      s->exprs.push_back(parse_par_expression());
      expect_op(";");
      return s;
    }
    if (t.is_keyword("for")) return parse_for();
    if (t.is_keyword("try")) return parse_try();
    if (t.is_keyword("switch")) {
      advance();
      auto s = make_stmt(Stmt::Kind::Switch, where);
      s->exprs.push_back(parse_par_expression());
      parse_switch_block(s->children);
      return s;
    }
    if (t.is_keyword("synchronized")) {
      advance();
      auto s = make_stmt(Stmt::Kind::Synchronized, where);
      s->exprs.push_back(parse_par_expression());
      s->children.push_back(parse_block());
      return s;
    }
    if (t.is_keyword("return") || t.is_keyword("throw")) {
      advance();
      auto s = make_stmt(t.is_keyword("return") ? Stmt::Kind::Return : Stmt::Kind::Throw, where);
      if (!at_op(";")) s->exprs.push_back(parse_expression());
      expect_op(";");
      return s;
    }
    if (t.is_keyword("break") || t.is_keyword("continue")) {
      advance();
      auto s = make_stmt(t.is_keyword("break") ? Stmt::Kind::Break : Stmt::Kind::Continue, where);
      if (at_identifier()) s->text = expect_identifier();
      expect_op(";");
      return s;
    }
    if (t.is_keyword("assert")) {
      advance();
      auto s = make_stmt(Stmt::Kind::Assert, where);
      s->exprs.push_back(parse_expression());
      if (at_op(":")) {
        advance();
        s->exprs.push_back(parse_expression());
      }
      expect_op(";");
      return s;
    }
    if (t.is(TokenKind::Identifier, "yield") && !at_op("=", 1) && !at_op(".", 1) &&
        !at_op("[", 1) && !at_op("(", 1) && !at_op("++", 1) && !at_op("--", 1) &&
        !at_op(";", 1)) {
      advance();
      auto s = make_stmt(Stmt::Kind::Yield, where);
      s->exprs.push_back(parse_expression());
      expect_op(";");
      return s;
    }
    if (t.is_identifier() && at_op(":", 1)) {
      auto s = make_stmt(Stmt::Kind::Labeled, where);
      s->text = expect_identifier();
      advance();
      s->children.push_back(parse_statement());
      return s;
    }
    if ((t.is_keyword("this") || t.is_keyword("super")) && at_op("(", 1)) {
      auto call = make_expr(Expr::Kind::ConstructorCall, where);
      call->text = std::string(advance().text);
      call->operands = parse_arguments();
      expect_op(";");
      auto s = make_stmt(Stmt::Kind::Expression, where);
      s->exprs.push_back(std::move(call));
      return s;
    }

    auto s = make_stmt(Stmt::Kind::Expression, where);
    s->exprs.push_back(parse_expression());
    expect_op(";");
    return s;
  }

  ExprPtr parse_par_expression() {
    expect_op("(");
    auto e = parse_expression();
    expect_op(")");
    return e;
  }

  StmtPtr parse_for() {
    const auto where = loc();
    expect_keyword("for");
    expect_op("(");

    if (!at_op(";")) {
      if (auto type = try_local_variable_head(true)) {
        if (at_op(":", 1)) {
          auto s = make_stmt(Stmt::Kind::ForEach, where);
          Variable v;
          v.loc = loc();
          v.name = expect_identifier();
          if (type->name != "var") v.type = std::move(*type);
          s->variables.push_back(std::move(v));
          expect_op(":");
          s->exprs.push_back(parse_expression());
          expect_op(")");
          s->children.push_back(parse_statement());
          return s;
        }
        auto s = make_stmt(Stmt::Kind::For, where);
        s->variables = parse_declarators(*type);
        return finish_classic_for(std::move(s));
      }
    }
    auto s = make_stmt(Stmt::Kind::For, where);
    if (!at_op(";")) {
      s->exprs.push_back(parse_expression());
      while (at_op(",")) {
        advance();
        s->exprs.push_back(parse_expression());
      }
    }
    return finish_classic_for(std::move(s));
  }

  StmtPtr finish_classic_for(StmtPtr s) {
    expect_op(";");
    if (!at_op(";")) s->exprs.push_back(parse_expression());
    expect_op(";");
    if (!at_op(")")) {
      s->exprs.push_back(parse_expression());
      while (at_op(",")) {
        advance();
        s->exprs.push_back(parse_expression());
      }
    }
    expect_op(")");
    s->children.push_back(parse_statement());
    return s;
  }

  StmtPtr parse_try() {
    auto s = make_stmt(Stmt::Kind::Try, loc());
    expect_keyword("try");
    if (at_op("(")) {
      advance();
      while (!at_op(")")) {
        if (auto type = try_local_variable_head(false)) {
          Variable v;
          v.loc = loc();
          v.name = expect_identifier();
          if (type->name != "var") v.type = std::move(*type);
          expect_op("=");
          v.init = parse_expression();
          s->variables.push_back(std::move(v));
        } else {
          auto e = make_stmt(Stmt::Kind::Expression, loc());
          e->exprs.push_back(parse_expression());
          s->children.push_back(std::move(e));
        }
        if (at_op(";")) advance();
      }
      expect_op(")");
    }
    // The try block goes first among children except resource expressions,
    // which are ordinary expression statements walked in the same scope.
    s->children.push_back(parse_block());
    bool has_handler = false;
    while (at_keyword("catch")) {
      auto c = make_stmt(Stmt::Kind::Catch, loc());
      advance();
      expect_op("(");
      skip_modifiers();
      Variable param;
      param.loc = loc();
      TypeRef first = parse_type();
      bool multi = false;
      while (at_op("|")) {
        advance();
        parse_type();
        multi = true;
      }
      param.name = expect_identifier();
      if (!multi) param.type = std::move(first);
      expect_op(")");
      c->variables.push_back(std::move(param));
      c->children.push_back(parse_block());
      s->children.push_back(std::move(c));
      has_handler = true;
    }
    if (at_keyword("finally")) {
      auto f = make_stmt(Stmt::Kind::Finally, loc());
      advance();
      f->children.push_back(parse_block());
      s->children.push_back(std::move(f));
      has_handler = true;
    }
    if (!has_handler && s->variables.empty()) fail("'try' without 'catch' or 'finally'");
    return s;
  }

  // `{ case ... }` for both switch statements and switch expressions.
  void parse_switch_block(std::vector<StmtPtr>& cases) {
    expect_op("{");
    while (!at_op("}")) {
      if (at_end()) fail("unterminated switch block");
      auto c = make_stmt(Stmt::Kind::Case, loc());
      if (at_keyword("default")) {
        advance();
      } else {
        expect_keyword("case");
        parse_case_labels(*c);
      }
      if (at_op("->")) {
        advance();
        if (at_op("{")) {
          c->children.push_back(parse_block());
        } else if (at_keyword("throw")) {
          c->children.push_back(parse_statement());
        } else {
          auto e = make_stmt(Stmt::Kind::Expression, loc());
          e->exprs.push_back(parse_expression());
          expect_op(";");
          c->children.push_back(std::move(e));
        }
      } else {
        expect_op(":");
        while (!at_keyword("case") && !at_keyword("default") && !at_op("}")) {
          if (at_end()) fail("unterminated switch block");
          c->children.push_back(parse_block_statement());
        }
      }
      cases.push_back(std::move(c));
    }
    expect_op("}");
  }

  void parse_case_labels(Stmt& c) {
    while (true) {
      if (at_keyword("default")) {
        advance();
      } else {
        // Type pattern `case Foo f ->`.
        auto pattern = attempt([&]() -> Variable {
          skip_modifiers();
          Variable v;
          v.loc = loc();
          TypeRef type = parse_type();
          v.name = expect_identifier();
          if (!at_op("->") && !at_op(":") && !at_op(",") && !at_contextual("when")) {
            fail("not a pattern");
          }
          v.type = std::move(type);
          return v;
        });
        if (pattern) {
          c.variables.push_back(std::move(*pattern));
        } else {
          c.exprs.push_back(parse_conditional());
        }
      }
      if (at_contextual("when")) {
        advance();
        c.exprs.push_back(parse_conditional());
      }
      if (!at_op(",")) break;
      advance();
    }
  }

  // ---- expressions ----------------------------------------------------------

  ExprPtr make_expr(Expr::Kind kind, SourceLocation where) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->loc = where;
    return e;
  }

  std::vector<ExprPtr> parse_arguments() {
    std::vector<ExprPtr> args;
    expect_op("(");
    if (!at_op(")")) {
      while (true) {
        args.push_back(parse_expression());
        if (!at_op(",")) break;
        advance();
      }
    }
    expect_op(")");
    return args;
  }

  ExprPtr parse_variable_initializer() {
    if (at_op("{")) return parse_array_initializer();
    return parse_expression();
  }

  ExprPtr parse_array_initializer() {
    auto e = make_expr(Expr::Kind::ArrayInit, loc());
    expect_op("{");
    while (!at_op("}")) {
      e->operands.push_back(parse_variable_initializer());
      if (!at_op(",")) break;
      advance();
    }
    expect_op("}");
    return e;
  }

  std::size_t matching_paren(std::size_t ahead) const {
    int depth = 0;
    for (std::size_t i = ahead;; ++i) {
      const auto& t = peek(i);
      if (t.kind == TokenKind::End) return i;
      if (t.is_op("(")) ++depth;
      if (t.is_op(")") && --depth == 0) return i;
    }
  }

  bool at_lambda() const {
    if (at_identifier() && at_op("->", 1)) return true;
    if (at_op("(")) return at_op("->", matching_paren(0) + 1);
    return false;
  }

  ExprPtr parse_expression() {
    if (at_lambda()) return parse_lambda();
    const auto where = loc();
    auto lhs = parse_conditional();
    std::string op;
    std::size_t width = 0;
    if (peek_operator(op, width) && is_assignment_op(op)) {
      for (std::size_t i = 0; i < width; ++i) advance();
      auto e = make_expr(Expr::Kind::Assign, where);
      e->text = op;
      e->operands.push_back(std::move(lhs));
      e->operands.push_back(parse_expression());
      return e;
    }
    return lhs;
  }

  ExprPtr parse_lambda() {
    auto e = make_expr(Expr::Kind::Lambda, loc());
    if (at_identifier()) {
      Variable p;
      p.loc = loc();
      p.name = expect_identifier();
      e->lambda_params.push_back(std::move(p));
    } else {
      expect_op("(");
      while (!at_op(")")) {
        if (at_identifier() && (at_op(",", 1) || at_op(")", 1))) {
          Variable p;
          p.loc = loc();
          p.name = expect_identifier();
          e->lambda_params.push_back(std::move(p));
        } else {
          auto p = parse_formal_parameter();
          if (p.type && p.type->name == "var") p.type.reset();
          e->lambda_params.push_back(std::move(p));
        }
        if (!at_op(",")) break;
        advance();
      }
      expect_op(")");
    }
    expect_op("->");
    if (at_op("{")) {
      e->body = parse_block();
    } else {
      e->operands.push_back(parse_expression());
    }
    return e;
  }

  ExprPtr parse_conditional() {
    const auto where = loc();
    auto cond = parse_binary(1);
    if (!at_op("?")) return cond;
    advance();
    auto e = make_expr(Expr::Kind::Conditional, where);
    e->operands.push_back(std::move(cond));
    e->operands.push_back(parse_expression());
    expect_op(":");
    e->operands.push_back(at_lambda() ? parse_lambda() : parse_conditional());
    return e;
  }

  // Reads the operator at the cursor, gluing adjacent `>` / `=` tokens into
  // `>>`, `>>>`, `>=`, `>>=` and `>>>=`.
  bool peek_operator(std::string& op, std::size_t& width) const {
    const Token& t = peek();
    if (t.is_keyword("instanceof")) {
      op = "instanceof";
      width = 1;
      return true;
    }
    if (t.kind != TokenKind::Operator) return false;
    if (t.text != ">") {
      op = std::string(t.text);
      width = 1;
      return true;
    }
    op = ">";
    width = 1;
    while (op.size() < 3 && at_op(">", width) && adjacent(width - 1)) {
      op += ">";
      ++width;
    }
    if (at_op("=", width) && adjacent(width - 1)) {
      op += "=";
      ++width;
    }
    return true;
  }

  ExprPtr parse_binary(int min_precedence) {
    auto lhs = parse_unary();
    while (true) {
      std::string op;
      std::size_t width = 0;
      if (!peek_operator(op, width)) break;
      const int prec = binary_precedence(op);
      if (prec == 0 || prec < min_precedence) break;
      const auto where = loc();
      for (std::size_t i = 0; i < width; ++i) advance();

      if (op == "instanceof") {
        auto e = make_expr(Expr::Kind::InstanceOf, where);
        e->target = std::move(lhs);
        if (at_keyword("final")) advance();
        e->type = parse_type();
        if (at_op("(")) {
          skip_balanced("(", ")");  // record deconstruction pattern
        }
        if (at_identifier()) {
          Variable binding;
          binding.loc = loc();
          binding.name = expect_identifier();
          binding.type = e->type;
          e->binding = std::move(binding);
        }
        lhs = std::move(e);
        continue;
      }

      auto rhs = parse_binary(prec + 1);
      auto e = make_expr(Expr::Kind::Binary, where);
      e->text = op;
      e->operands.push_back(std::move(lhs));
      e->operands.push_back(std::move(rhs));
      lhs = std::move(e);
    }
    return lhs;
  }

  bool starts_cast_operand(const Token& t) const {
    switch (t.kind) {
      case TokenKind::Identifier:
      case TokenKind::Literal:
        return true;
      case TokenKind::Keyword:
        return t.text == "this" || t.text == "super" || t.text == "new" || t.text == "true" ||
               t.text == "false" || t.text == "null" || t.text == "switch" ||
               is_primitive_keyword(t);
      case TokenKind::Operator:
        return t.text == "(" || t.text == "!" || t.text == "~";
      case TokenKind::End:
        return false;
    }
    return false;
  }

  std::optional<ExprPtr> try_cast() {
    const auto where = loc();
    const auto saved = pos_;
    auto type = attempt([&]() -> TypeRef {
      expect_op("(");
      TypeRef t = parse_type();
      while (at_op("&")) {  // intersection cast
        advance();
        parse_type();
      }
      expect_op(")");
      return t;
    });
    if (!type) return std::nullopt;
    const bool primitive_cast = type->primitive && type->array_dims == 0;
    if (!primitive_cast && !starts_cast_operand(peek()) && !at_lambda()) {
      pos_ = saved;
      return std::nullopt;
    }
    auto e = make_expr(Expr::Kind::Cast, where);
    e->type = std::move(*type);
    e->target = at_lambda() ? parse_lambda() : parse_unary();
    return e;
  }

  ExprPtr parse_unary() {
    const auto where = loc();
    const Token& t = peek();
    if (t.is_op("+") || t.is_op("-") || t.is_op("++") || t.is_op("--") || t.is_op("!") ||
        t.is_op("~")) {
      auto e = make_expr(Expr::Kind::Unary, where);
      e->text = std::string(advance().text);
      e->target = parse_unary();
      return e;
    }
    if (t.is_op("(") && !at_lambda()) {
      if (auto cast = try_cast()) return std::move(*cast);
    }
    auto e = parse_primary();
    e = parse_selectors(std::move(e));
    while (at_op("++") || at_op("--")) {
      auto post = make_expr(Expr::Kind::Unary, loc());
      post->text = std::string(advance().text) + "post";
      post->target = std::move(e);
      e = std::move(post);
    }
    return e;
  }

  ExprPtr parse_primary() {
    const auto where = loc();
    const Token& t = peek();

    if (t.kind == TokenKind::Literal || t.is_keyword("true") || t.is_keyword("false") ||
        t.is_keyword("null")) {
      auto e = make_expr(Expr::Kind::Literal, where);
      e->text = std::string(advance().text);
      return e;
    }
    if (t.is_keyword("this")) {
      advance();
      if (at_op("(")) {
        auto e = make_expr(Expr::Kind::ConstructorCall, where);
        e->text = "this";
        e->operands = parse_arguments();
        return e;
      }
      return make_expr(Expr::Kind::This, where);
    }
    if (t.is_keyword("super")) {
      advance();
      if (at_op("(")) {
        auto e = make_expr(Expr::Kind::ConstructorCall, where);
        e->text = "super";
        e->operands = parse_arguments();
        return e;
      }
      return make_expr(Expr::Kind::Super, where);
    }
    if (t.is_keyword("new")) return parse_creator(nullptr);
    if (t.is_keyword("switch")) {
      advance();
      auto e = make_expr(Expr::Kind::Switch, where);
      e->target = parse_par_expression();
      e->body = make_stmt(Stmt::Kind::Block, where);
      parse_switch_block(e->body->children);
      return e;
    }
    if (t.is_op("(")) {
      advance();
      auto inner = parse_expression();
      expect_op(")");
      return inner;
    }
    if (is_primitive_keyword(t)) {
      TypeRef type = parse_type();
      return finish_type_expression(std::move(type), where);
    }
    if (t.is_identifier()) {
      std::string name = expect_identifier();
      if (at_op("(")) {
        auto e = make_expr(Expr::Kind::Call, where);
        e->text = std::move(name);
        e->operands = parse_arguments();
        return e;
      }
      auto e = make_expr(Expr::Kind::Name, where);
      e->text = std::move(name);
      return e;
    }
    if (t.is_op("@")) {  // annotated type in expression position
      skip_annotations();
      return parse_primary();
    }
    fail("expected an expression");
  }

  // `int.class`, `int[]::new`, `String[].class`.
  ExprPtr finish_type_expression(TypeRef type, SourceLocation where) {
    if (at_op(".") && at_keyword("class", 1)) {
      advance();
      advance();
      auto e = make_expr(Expr::Kind::ClassLiteral, where);
      e->type = std::move(type);
      return e;
    }
    if (at_op("::")) {
      advance();
      auto e = make_expr(Expr::Kind::MethodRef, where);
      e->type = std::move(type);
      e->text = at_keyword("new") ? std::string(advance().text) : expect_identifier();
      return e;
    }
    fail("expected '.class' or '::' after type");
  }

  // `outer` is the qualifying instance for `outer.new Inner()`.
  ExprPtr parse_creator(ExprPtr outer) {
    const auto where = loc();
    expect_keyword("new");
    if (at_op("<")) {
      std::vector<TypeRef> ignored;
      parse_type_arguments(ignored);
    }
    TypeRef type = parse_base_type();

    if (at_op("[") || at_op("@")) {
      auto e = make_expr(Expr::Kind::NewArray, where);
      while (true) {
        const auto saved = pos_;
        skip_annotations();
        if (!at_op("[")) {
          pos_ = saved;
          break;
        }
        advance();
        if (at_op("]")) {
          advance();
        } else {
          e->operands.push_back(parse_expression());
          expect_op("]");
        }
        ++type.array_dims;
      }
      if (at_op("{")) e->operands.push_back(parse_array_initializer());
      e->type = std::move(type);
      return e;
    }

    auto e = make_expr(Expr::Kind::New, where);
    e->target = std::move(outer);
    e->operands = parse_arguments();
    if (at_op("{")) {
      auto body = std::make_unique<TypeDecl>();
      body->kind = TypeDecl::Kind::Class;
      body->loc = loc();
      parse_class_body(*body);
      e->anonymous_class = std::move(body);
    }
    e->type = std::move(type);
    return e;
  }

  // Flattens a chain of Name / FieldAccess nodes into a dotted name.
  static std::optional<std::string> dotted_name(const Expr& e) {
    if (e.kind == Expr::Kind::Name) return e.text;
    if (e.kind == Expr::Kind::FieldAccess && e.target) {
      auto head = dotted_name(*e.target);
      if (head) return *head + "." + e.text;
    }
    return std::nullopt;
  }

  ExprPtr parse_selectors(ExprPtr e) {
    while (true) {
      const auto where = loc();
      if (at_op(".")) {
        advance();
        if (at_keyword("new")) {
          e = parse_creator(std::move(e));
          continue;
        }
        if (at_op("<")) {
          std::vector<TypeRef> ignored;
          parse_type_arguments(ignored);
        }
        if (at_keyword("this") || at_keyword("super") || at_keyword("class")) {
          const auto word = advance().text;
          if (word == "class") {
            auto name = dotted_name(*e);
            if (!name) fail("'.class' on a non-type expression");
            auto lit = make_expr(Expr::Kind::ClassLiteral, where);
            TypeRef type;
            type.name = *name;
            type.loc = e->loc;
            lit->type = std::move(type);
            e = std::move(lit);
          } else {
            auto q = make_expr(word == "this" ? Expr::Kind::This : Expr::Kind::Super, where);
            q->target = std::move(e);
            e = std::move(q);
          }
          continue;
        }
        std::string name = expect_identifier();
        if (at_op("(")) {
          auto call = make_expr(Expr::Kind::Call, where);
          call->target = std::move(e);
          call->text = std::move(name);
          call->operands = parse_arguments();
          e = std::move(call);
        } else {
          auto field = make_expr(Expr::Kind::FieldAccess, where);
          field->target = std::move(e);
          field->text = std::move(name);
          e = std::move(field);
        }
        continue;
      }
      if (at_op("[")) {
        if (at_op("]", 1)) {  // array type: Foo[].class or Foo[]::new
          auto name = dotted_name(*e);
          if (!name) fail("unexpected '[]'");
          TypeRef type;
          type.name = *name;
          type.loc = e->loc;
          parse_dims(type);
          return finish_type_expression(std::move(type), e->loc);
        }
        advance();
        auto index = make_expr(Expr::Kind::Index, where);
        index->target = std::move(e);
        index->operands.push_back(parse_expression());
        expect_op("]");
        e = std::move(index);
        continue;
      }
      if (at_op("::")) {
        advance();
        auto ref = make_expr(Expr::Kind::MethodRef, where);
        ref->target = std::move(e);
        ref->text = at_keyword("new") ? std::string(advance().text) : expect_identifier();
        e = std::move(ref);
        continue;
      }
      return e;
    }
  }

  std::string path_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

SourceUnit parse_unit(std::string_view source, const std::string& path) {
  return Parser(source, path).parse();
}

}  // namespace docrank::java
