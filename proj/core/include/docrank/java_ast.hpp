#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace docrank::java {

struct SourceLocation {
  std::size_t line = 0;
  std::size_t column = 0;
};

// A type as written. Type arguments are kept but never resolved on their own.
struct TypeRef {
  std::string name;  // dotted, without type arguments, e.g. "java.util.List" or "int"
  std::vector<TypeRef> arguments;
  int array_dims = 0;
  bool primitive = false;  // includes void
  bool varargs = false;
  bool wildcard = false;  // `?`, possibly bounded; the bound is arguments[0]
  SourceLocation loc;

  bool is_void() const { return primitive && name == "void" && array_dims == 0; }
};

struct Expr;
struct Stmt;
struct TypeDecl;
using ExprPtr = std::unique_ptr<Expr>;
using StmtPtr = std::unique_ptr<Stmt>;

// A field, local, parameter, resource, catch parameter or lambda parameter.
// `type` is empty for `var`, untyped lambda parameters and multi-catch.
struct Variable {
  std::string name;
  std::optional<TypeRef> type;
  ExprPtr init;
  SourceLocation loc;
};

struct Expr {
  enum class Kind {
    Name,              // text = identifier
    This,              // target = optional qualifier
    Super,             // target = optional qualifier
    Literal,           // text = literal spelling
    New,               // type, operands = args, anonymous_class optional, target = outer instance
    NewArray,          // type (element), operands = dimension exprs, body init via operands tail
    ArrayInit,         // operands = elements
    Call,              // target = optional receiver, text = method name, operands = args
    ConstructorCall,   // this(...) / super(...); text = "this" | "super", operands = args
    FieldAccess,       // target . text
    Index,             // target [ operands[0] ]
    Cast,              // (type) target
    Unary,             // text = operator, target = operand
    Binary,            // text = operator, operands = {lhs, rhs}
    Assign,            // text = operator, operands = {lhs, rhs}
    Conditional,       // operands = {cond, then, else}
    InstanceOf,        // target instanceof type [binding]
    Lambda,            // lambda_params, operands[0] (expression body) or body (block)
    MethodRef,         // target (expr) or type, text = method name or "new"
    ClassLiteral,      // type.class
    Switch,            // target = selector, body = block of Case statements
  };

  Kind kind = Kind::Literal;
  SourceLocation loc;
  std::string text;
  std::optional<TypeRef> type;
  ExprPtr target;
  std::vector<ExprPtr> operands;
  std::vector<Variable> lambda_params;
  std::optional<Variable> binding;  // instanceof pattern variable
  StmtPtr body;
  std::unique_ptr<TypeDecl> anonymous_class;
};

struct Stmt {
  enum class Kind {
    Block,          // children
    LocalVar,       // variables, declared into the enclosing scope
    LocalClass,     // local_class
    Expression,     // exprs[0]
    If,             // exprs[0], children = {then, else?}
    While,          // exprs[0], children[0]
    DoWhile,        // children[0], exprs[0]
    For,            // variables (init decls), exprs (init exprs, cond, updates), children[0]
    ForEach,        // variables[0], exprs[0] (iterable), children[0]
    Return,         // exprs[0]?
    Throw,          // exprs[0]
    Yield,          // exprs[0]
    Assert,         // exprs
    Try,            // variables (resources), children = {block, Catch..., finally?}
    Catch,          // variables[0] (parameter), children[0]
    Finally,        // children[0]
    Switch,         // exprs[0] selector, children = Case statements
    Case,           // exprs = labels, children = statements (share the switch scope)
    Synchronized,   // exprs[0], children[0]
    Labeled,        // text = label, children[0]
    Break,
    Continue,
    Empty,
  };

  Kind kind = Kind::Empty;
  SourceLocation loc;
  std::string text;
  std::vector<StmtPtr> children;
  std::vector<ExprPtr> exprs;
  std::vector<Variable> variables;
  std::unique_ptr<TypeDecl> local_class;
};

struct Method {
  std::string name;
  bool constructor = false;
  std::optional<TypeRef> return_type;  // empty for constructors
  std::vector<Variable> parameters;
  std::vector<std::string> type_parameters;
  StmtPtr body;  // null for abstract / interface methods
  SourceLocation loc;
};

struct EnumConstant {
  std::string name;
  std::vector<ExprPtr> arguments;
  std::unique_ptr<TypeDecl> body;
  SourceLocation loc;
};

struct TypeDecl {
  enum class Kind { Class, Interface, Enum, Annotation, Record };

  Kind kind = Kind::Class;
  std::string name;
  SourceLocation loc;
  std::vector<std::string> type_parameters;
  std::vector<TypeRef> extends;
  std::vector<TypeRef> implements;
  std::vector<Variable> fields;  // includes record components
  std::vector<EnumConstant> enum_constants;
  std::vector<Method> methods;
  std::vector<StmtPtr> initializers;
  std::vector<std::unique_ptr<TypeDecl>> nested;

  bool is_interface_like() const { return kind == Kind::Interface || kind == Kind::Annotation; }
};

struct Import {
  std::string name;  // dotted, without the trailing `.*`
  bool is_static = false;
  bool on_demand = false;
};

// One parsed source file. Only `types` (the top-level declarations) become modules.
struct SourceUnit {
  std::string path;
  std::string package_name;
  std::vector<Import> imports;
  std::vector<TypeDecl> types;
};

}  // namespace docrank::java
