#include "docrank/java_extractor.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <set>
#include <thread>

#include "docrank/errors.hpp"
#include "docrank/java_parser.hpp"
#include "text_util.hpp"

namespace docrank::java {

namespace {

ModuleKind module_kind(const TypeDecl& decl) {
  return decl.is_interface_like() ? ModuleKind::Interface : ModuleKind::Class;
}

std::string_view last_segment(std::string_view dotted) {
  const auto dot = dotted.rfind('.');
  return dot == std::string_view::npos ? dotted : dotted.substr(dot + 1);
}

void register_member_types(const TypeDecl& decl, const std::string& qualified,
                           const std::string& owner,
                           std::map<std::string, std::string, std::less<>>& out) {
  for (const auto& nested : decl.nested) {
    const auto name = qualified + "." + nested->name;
    out.emplace(name, owner);
    register_member_types(*nested, name, owner, out);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// ResolutionTable

std::string ResolutionTable::qualify(std::string_view package_name, std::string_view name) {
  if (package_name.empty()) return std::string(name);
  return std::string(package_name) + "." + std::string(name);
}

ResolutionTable ResolutionTable::build(std::span<const SourceUnit> units,
                                       std::vector<std::string>* diagnostics) {
  ResolutionTable table;

  std::vector<const SourceUnit*> ordered;
  ordered.reserve(units.size());
  for (const auto& u : units) ordered.push_back(&u);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const SourceUnit* a, const SourceUnit* b) { return a->path < b->path; });

  struct Owned {
    const SourceUnit* unit;
    const TypeDecl* decl;
    std::string qualified;
  };
  std::vector<Owned> owned;

  for (const auto* unit : ordered) {
    for (const auto& decl : unit->types) {
      auto qualified = qualify(unit->package_name, decl.name);
      if (table.modules_.count(qualified)) {
        if (diagnostics) {
          diagnostics->push_back(unit->path + ": duplicate declaration of '" + qualified +
                                 "' ignored (first declared in " +
                                 table.modules_.at(qualified).declaring_path + ")");
        }
        continue;
      }
      ModuleInfo info;
      info.id = ModuleId{qualified, module_kind(decl)};
      info.package_name = unit->package_name;
      info.simple_name = decl.name;
      info.declaring_path = unit->path;
      table.modules_.emplace(qualified, std::move(info));
      table.qualified_.emplace(qualified, qualified);
      table.simple_[decl.name].push_back(qualified);
      register_member_types(decl, qualified, qualified, table.qualified_);
      owned.push_back({unit, &decl, qualified});
    }
  }

  // Member signatures need the complete name index.
  for (const auto& [unit, decl, qualified] : owned) {
    NameContext ctx{unit, qualified, decl->type_parameters};
    auto resolve_type = [&](const TypeRef& ref,
                            const NameContext& where) -> std::optional<StaticType> {
      if (ref.primitive || ref.wildcard) return std::nullopt;
      auto id = table.resolve(ref.name, where);
      if (!id) return std::nullopt;
      return StaticType{id->name, ref.array_dims + (ref.varargs ? 1 : 0), false};
    };

    auto& info = table.modules_.at(qualified);
    for (const auto& ext : decl->extends) {
      if (auto id = table.resolve(ext.name, ctx); id && id->name != qualified) {
        info.supertypes.push_back(id->name);
        if (decl->kind == TypeDecl::Kind::Class && !info.superclass) info.superclass = id->name;
      }
    }
    for (const auto& impl : decl->implements) {
      if (auto id = table.resolve(impl.name, ctx); id && id->name != qualified) {
        info.supertypes.push_back(id->name);
      }
    }
    for (const auto& field : decl->fields) {
      info.fields.push_back({field.name, field.type ? resolve_type(*field.type, ctx) : std::nullopt});
    }
    for (const auto& method : decl->methods) {
      if (method.constructor) continue;
      NameContext mctx = ctx;
      mctx.shadowing.insert(mctx.shadowing.end(), method.type_parameters.begin(),
                            method.type_parameters.end());
      info.methods.push_back(
          {method.name, method.return_type ? resolve_type(*method.return_type, mctx) : std::nullopt});
    }
  }
  return table;
}

std::optional<ModuleId> ResolutionTable::find(std::string_view qualified) const {
  auto it = qualified_.find(qualified);
  if (it == qualified_.end()) return std::nullopt;
  return modules_.at(it->second).id;
}

const ResolutionTable::ModuleInfo* ResolutionTable::module(std::string_view qualified) const {
  auto it = modules_.find(qualified);
  return it == modules_.end() ? nullptr : &it->second;
}

std::vector<ModuleId> ResolutionTable::modules() const {
  std::vector<ModuleId> out;
  out.reserve(modules_.size());
  for (const auto& [name, info] : modules_) out.push_back(info.id);
  return out;
}

bool ResolutionTable::owns(const SourceUnit& unit, const TypeDecl& decl) const {
  const auto* info = module(qualify(unit.package_name, decl.name));
  return info && info->declaring_path == unit.path;
}

std::optional<ModuleId> ResolutionTable::resolve_simple(std::string_view name,
                                                        const NameContext& ctx) const {
  if (std::find(ctx.shadowing.begin(), ctx.shadowing.end(), name) != ctx.shadowing.end()) {
    return std::nullopt;
  }

  // Member types of the enclosing module, at any depth.
  if (!ctx.module.empty()) {
    const std::string prefix = ctx.module + ".";
    for (auto it = qualified_.lower_bound(prefix);
         it != qualified_.end() && it->first.compare(0, prefix.size(), prefix) == 0; ++it) {
      if (last_segment(it->first) == name) return modules_.at(it->second).id;
    }
  }

  if (ctx.unit) {
    for (const auto& imp : ctx.unit->imports) {
      if (imp.is_static || imp.on_demand) continue;
      if (last_segment(imp.name) == name) return find(imp.name);  // external import: unresolved
    }

    const auto same_package = qualify(ctx.unit->package_name, name);
    if (auto it = modules_.find(same_package); it != modules_.end()) return it->second.id;

    std::optional<ModuleId> on_demand;
    int matches = 0;
    for (const auto& imp : ctx.unit->imports) {
      if (imp.is_static || !imp.on_demand) continue;
      if (auto id = find(imp.name + "." + std::string(name))) {
        if (!on_demand || on_demand->name != id->name) ++matches;
        on_demand = id;
      }
    }
    if (matches == 1) return on_demand;
    if (matches > 1) return std::nullopt;
  }

  auto it = simple_.find(name);
  if (it != simple_.end() && it->second.size() == 1) return modules_.at(it->second.front()).id;
  return std::nullopt;
}

std::optional<ModuleId> ResolutionTable::resolve(std::string_view written,
                                                 const NameContext& ctx) const {
  if (written.empty()) return std::nullopt;
  const auto dot = written.find('.');
  if (dot == std::string_view::npos) return resolve_simple(written, ctx);

  if (auto exact = find(written)) return exact;

  // `Outer.Inner` where Outer is itself found through the simple-name rules.
  const auto head = written.substr(0, dot);
  if (auto owner = resolve_simple(head, ctx)) {
    if (last_segment(owner->name) == head) {
      if (auto nested = find(owner->name + std::string(written.substr(dot)))) return nested;
    }
  }
  return std::nullopt;
}

std::vector<std::string> ResolutionTable::ancestry(std::string_view module) const {
  std::vector<std::string> order;
  std::set<std::string, std::less<>> seen;
  order.emplace_back(module);
  seen.emplace(module);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto* info = this->module(order[i]);
    if (!info) continue;
    for (const auto& super : info->supertypes) {
      if (seen.insert(super).second) order.push_back(super);
    }
  }
  return order;
}

std::optional<StaticType> ResolutionTable::field_type(std::string_view module,
                                                      std::string_view field, bool* found) const {
  if (found) *found = false;
  for (const auto& name : ancestry(module)) {
    const auto* info = this->module(name);
    if (!info) continue;
    for (const auto& f : info->fields) {
      if (f.name == field) {
        if (found) *found = true;
        return f.type;
      }
    }
  }
  return std::nullopt;
}

std::optional<StaticType> ResolutionTable::method_return(std::string_view module,
                                                         std::string_view method) const {
  for (const auto& name : ancestry(module)) {
    const auto* info = this->module(name);
    if (!info) continue;
    std::optional<StaticType> agreed;
    bool any = false;
    for (const auto& m : info->methods) {
      if (m.name != method) continue;
      if (!m.return_type) return std::nullopt;
      if (any && !(agreed == m.return_type)) return std::nullopt;
      agreed = m.return_type;
      any = true;
    }
    if (any) return agreed;
  }
  return std::nullopt;
}

std::optional<std::string> ResolutionTable::method_owner(std::string_view module,
                                                         std::string_view method) const {
  for (const auto& name : ancestry(module)) {
    const auto* info = this->module(name);
    if (!info) continue;
    for (const auto& m : info->methods) {
      if (m.name == method) return name;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Counting

namespace {

struct UnitCounts {
  std::vector<DependencePair> ci;
  std::vector<DependencePair> ca;
  std::vector<DependencePair> cm;
  std::vector<DependencePair> mm;
};

std::optional<std::string> dotted_name(const Expr& e) {
  if (e.kind == Expr::Kind::Name) return e.text;
  if (e.kind == Expr::Kind::FieldAccess && e.target) {
    if (auto head = dotted_name(*e.target)) return *head + "." + e.text;
  }
  return std::nullopt;
}

// Walks one top-level declaration and everything lexically inside it,
// attributing every dependence to that top-level module.
class ModuleWalker {
 public:
  ModuleWalker(const ResolutionTable& table, const SourceUnit& unit, const TypeDecl& decl,
               UnitCounts& out)
      : table_(table), unit_(unit), out_(out) {
    const auto* info = table.module(ResolutionTable::qualify(unit.package_name, decl.name));
    self_ = info->id;
    ctx_.unit = &unit;
    ctx_.module = self_.name;
  }

  void run(const TypeDecl& decl) {
    for (const auto& super_name : table_.module(self_.name)->supertypes) {
      emit(out_.ci, super_name);
    }
    walk_class(decl, resolved_superclass_of(decl), resolved_supertypes_of(decl));
  }

 private:
  struct ClassFrame {
    std::set<std::string> methods;
    std::optional<std::string> superclass;
    std::vector<std::string> supertypes;
  };

  using Scope = std::map<std::string, std::optional<StaticType>, std::less<>>;

  struct ScopeMark {
    std::size_t scopes;
    std::size_t shadowing;
  };

  // ---- helpers --------------------------------------------------------------

  void emit(std::vector<DependencePair>& into, const std::string& target) {
    if (target == self_.name) return;
    const auto* info = table_.module(target);
    if (!info) return;
    into.push_back({self_, info->id});
  }

  std::optional<StaticType> resolve_type(const TypeRef& ref) const {
    if (ref.primitive || ref.wildcard || ref.name == "var") return std::nullopt;
    auto id = table_.resolve(ref.name, ctx_);
    if (!id) return std::nullopt;
    return StaticType{id->name, ref.array_dims + (ref.varargs ? 1 : 0), false};
  }

  void count_type_use(std::vector<DependencePair>& into, const TypeRef& ref) {
    if (auto t = resolve_type(ref)) emit(into, t->module);
  }

  std::optional<std::string> resolved_superclass_of(const TypeDecl& decl) const {
    if (decl.kind != TypeDecl::Kind::Class || decl.extends.empty()) return std::nullopt;
    if (auto t = resolve_type(decl.extends.front())) return t->module;
    return std::nullopt;
  }

  std::vector<std::string> resolved_supertypes_of(const TypeDecl& decl) const {
    std::vector<std::string> out;
    for (const auto* list : {&decl.extends, &decl.implements}) {
      for (const auto& ref : *list) {
        if (auto t = resolve_type(ref)) out.push_back(t->module);
      }
    }
    return out;
  }

  ScopeMark mark() const { return {scopes_.size(), ctx_.shadowing.size()}; }
  void push_scope() { scopes_.emplace_back(); }
  void restore(ScopeMark m) {
    scopes_.resize(m.scopes);
    ctx_.shadowing.resize(m.shadowing);
  }

  void declare(const Variable& v, std::optional<StaticType> type) {
    if (scopes_.empty()) push_scope();
    scopes_.back()[v.name] = std::move(type);
  }

  void declare_with_init(const Variable& v) {
    if (v.init) walk_expr(*v.init);
    if (v.type) {
      declare(v, resolve_type(*v.type));
    } else {
      declare(v, v.init ? infer(*v.init) : std::nullopt);
    }
  }

  // Looks a simple name up as a variable: locals, then fields of enclosing
  // classes, then inherited project fields. `found` tells shadowing apart from
  // absence.
  std::optional<StaticType> lookup_variable(std::string_view name, bool& found) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto v = it->find(name);
      if (v != it->end()) {
        found = true;
        return v->second;
      }
    }
    for (auto f = frames_.rbegin(); f != frames_.rend(); ++f) {
      for (const auto& super : f->supertypes) {
        bool field_found = false;
        auto t = table_.field_type(super, name, &field_found);
        if (field_found) {
          found = true;
          return t;
        }
      }
    }
    found = false;
    return std::nullopt;
  }

  // Owner of an unqualified call: the innermost class declaring it is self,
  // otherwise the first project supertype declaring it.
  std::optional<std::string> unqualified_call_owner(std::string_view method) const {
    for (auto f = frames_.rbegin(); f != frames_.rend(); ++f) {
      if (f->methods.count(std::string(method))) return self_.name;
      for (const auto& super : f->supertypes) {
        if (auto owner = table_.method_owner(super, method)) return owner;
      }
    }
    return std::nullopt;
  }

  // ---- declarations ---------------------------------------------------------

  void walk_class(const TypeDecl& decl, std::optional<std::string> superclass,
                  std::vector<std::string> supertypes) {
    const auto outer = mark();
    ctx_.shadowing.insert(ctx_.shadowing.end(), decl.type_parameters.begin(),
                          decl.type_parameters.end());

    ClassFrame frame;
    for (const auto& m : decl.methods) {
      if (!m.constructor) frame.methods.insert(m.name);
    }
    frame.superclass = std::move(superclass);
    frame.supertypes = std::move(supertypes);
    frames_.push_back(std::move(frame));

    push_scope();
    for (const auto& field : decl.fields) {
      declare(field, field.type ? resolve_type(*field.type) : std::nullopt);
    }

    for (const auto& field : decl.fields) {
      if (field.type) count_type_use(out_.ca, *field.type);
      if (field.init) walk_expr(*field.init);
    }
    for (const auto& constant : decl.enum_constants) {
      for (const auto& arg : constant.arguments) walk_expr(*arg);
      if (constant.body) walk_class(*constant.body, self_.name, {});
    }
    for (const auto& method : decl.methods) walk_method(method);
    for (const auto& init : decl.initializers) walk_stmt(*init);
    for (const auto& nested : decl.nested) {
      walk_class(*nested, resolved_superclass_of(*nested), resolved_supertypes_of(*nested));
    }

    frames_.pop_back();
    restore(outer);
  }

  void walk_method(const Method& method) {
    const auto outer = mark();
    ctx_.shadowing.insert(ctx_.shadowing.end(), method.type_parameters.begin(),
                          method.type_parameters.end());
    for (const auto& p : method.parameters) {
      if (p.type) count_type_use(out_.cm, *p.type);
    }
    if (method.return_type && !method.return_type->is_void()) {
      count_type_use(out_.cm, *method.return_type);
    }
    push_scope();
    for (const auto& p : method.parameters) {
      declare(p, p.type ? resolve_type(*p.type) : std::nullopt);
    }
    if (method.body) walk_stmt(*method.body);
    restore(outer);
  }

  // ---- statements -----------------------------------------------------------

  void walk_children(const Stmt& s) {
    for (const auto& child : s.children) {
      if (child) walk_stmt(*child);
    }
  }

  void walk_stmt(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::LocalVar:
        for (const auto& v : s.variables) declare_with_init(v);
        return;
      case Stmt::Kind::LocalClass:
        ctx_.shadowing.push_back(s.local_class->name);
        walk_class(*s.local_class, resolved_superclass_of(*s.local_class),
                   resolved_supertypes_of(*s.local_class));
        return;
      case Stmt::Kind::Case:
        for (const auto& e : s.exprs) walk_expr(*e);
        for (const auto& v : s.variables) declare(v, v.type ? resolve_type(*v.type) : std::nullopt);
        walk_children(s);
        return;
      case Stmt::Kind::ForEach: {
        const auto outer = mark();
        push_scope();
        for (const auto& e : s.exprs) walk_expr(*e);
        for (const auto& v : s.variables) {
          std::optional<StaticType> element;
          if (v.type) {
            element = resolve_type(*v.type);
          } else if (!s.exprs.empty()) {
            if (auto iterable = infer(*s.exprs.front()); iterable && iterable->dims > 0) {
              element = StaticType{iterable->module, iterable->dims - 1, false};
            }
          }
          declare(v, element);
        }
        walk_children(s);
        restore(outer);
        return;
      }
      default: {
        const auto outer = mark();
        push_scope();
        for (const auto& v : s.variables) declare_with_init(v);
        for (const auto& e : s.exprs) walk_expr(*e);
        walk_children(s);
        restore(outer);
        return;
      }
    }
  }

  // ---- expressions ----------------------------------------------------------

  void walk_expr(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Call:
        count_call(e);
        break;
      case Expr::Kind::New:
        if (e.target) walk_expr(*e.target);
        for (const auto& arg : e.operands) walk_expr(*arg);
        if (e.anonymous_class) {
          std::optional<std::string> base;
          if (e.type) {
            if (auto t = resolve_type(*e.type)) base = t->module;
          }
          std::vector<std::string> supers;
          if (base) supers.push_back(*base);
          walk_class(*e.anonymous_class, base, supers);
        }
        return;
      case Expr::Kind::Lambda: {
        const auto outer = mark();
        push_scope();
        for (const auto& p : e.lambda_params) {
          declare(p, p.type ? resolve_type(*p.type) : std::nullopt);
        }
        for (const auto& op : e.operands) walk_expr(*op);
        if (e.body) walk_stmt(*e.body);
        restore(outer);
        return;
      }
      case Expr::Kind::InstanceOf:
        if (e.target) walk_expr(*e.target);
        if (e.binding) declare(*e.binding, e.type ? resolve_type(*e.type) : std::nullopt);
        return;
      default:
        break;
    }
    if (e.target) walk_expr(*e.target);
    for (const auto& op : e.operands) walk_expr(*op);
    if (e.body) walk_stmt(*e.body);
  }

  void count_call(const Expr& call) {
    std::optional<std::string> callee;
    if (!call.target) {
      callee = unqualified_call_owner(call.text);
    } else if (call.target->kind == Expr::Kind::Super) {
      if (call.target->target) {  // Iface.super.m()
        if (auto name = dotted_name(*call.target->target)) {
          if (auto id = table_.resolve(*name, ctx_)) callee = id->name;
        }
      } else if (!frames_.empty()) {
        callee = frames_.back().superclass;
      }
    } else if (auto t = infer(*call.target); t && t->dims == 0) {
      callee = t->module;
    }
    if (callee) emit(out_.mm, *callee);
  }

  std::optional<StaticType> infer(const Expr& e) const {
    switch (e.kind) {
      case Expr::Kind::Name: {
        bool found = false;
        auto var = lookup_variable(e.text, found);
        if (found) return var;
        if (auto id = table_.resolve(e.text, ctx_)) return StaticType{id->name, 0, true};
        return std::nullopt;
      }
      case Expr::Kind::FieldAccess: {
        auto base = e.target ? infer(*e.target) : std::nullopt;
        if (base) {
          if (base->dims > 0) return std::nullopt;
          bool found = false;
          auto field = table_.field_type(base->module, e.text, &found);
          if (found) return field;
          if (!base->names_type) return std::nullopt;
        }
        if (auto name = dotted_name(e)) {
          if (auto id = table_.resolve(*name, ctx_)) return StaticType{id->name, 0, true};
        }
        return std::nullopt;
      }
      case Expr::Kind::Call: {
        if (e.target && e.target->kind == Expr::Kind::Call) return std::nullopt;
        std::optional<std::string> owner;
        if (!e.target) {
          owner = unqualified_call_owner(e.text);
          // Methods of nested classes are not indexed; only top-level ones are.
          if (owner == self_.name && frames_.size() > 1 &&
              frames_.back().methods.count(e.text)) {
            return std::nullopt;
          }
        } else if (auto t = infer(*e.target); t && t->dims == 0) {
          owner = t->module;
        }
        if (!owner) return std::nullopt;
        return table_.method_return(*owner, e.text);
      }
      case Expr::Kind::This:
        return StaticType{self_.name, 0, false};
      case Expr::Kind::Super:
        if (!frames_.empty() && frames_.back().superclass) {
          return StaticType{*frames_.back().superclass, 0, false};
        }
        return std::nullopt;
      case Expr::Kind::New:
      case Expr::Kind::Cast:
        if (e.type) {
          auto t = resolve_type(*e.type);
          if (t) t->names_type = false;
          return t;
        }
        return std::nullopt;
      case Expr::Kind::NewArray:
        return e.type ? resolve_type(*e.type) : std::nullopt;
      case Expr::Kind::Index: {
        auto base = e.target ? infer(*e.target) : std::nullopt;
        if (base && base->dims > 0) return StaticType{base->module, base->dims - 1, false};
        return std::nullopt;
      }
      case Expr::Kind::Conditional: {
        if (e.operands.size() != 3) return std::nullopt;
        auto a = infer(*e.operands[1]);
        auto b = infer(*e.operands[2]);
        if (a && b && *a == *b) return a;
        return std::nullopt;
      }
      case Expr::Kind::Assign:
        return e.operands.empty() ? std::nullopt : infer(*e.operands.front());
      default:
        return std::nullopt;
    }
  }

  const ResolutionTable& table_;
  const SourceUnit& unit_;
  UnitCounts& out_;
  ModuleId self_;
  NameContext ctx_;
  std::vector<Scope> scopes_;
  std::vector<ClassFrame> frames_;
};

UnitCounts count_unit(const SourceUnit& unit, const ResolutionTable& table) {
  UnitCounts counts;
  for (const auto& decl : unit.types) {
    if (!table.owns(unit, decl)) continue;
    ModuleWalker(table, unit, decl, counts).run(decl);
  }
  return counts;
}

}  // namespace

std::vector<DependencePair> count_ci(const SourceUnit& unit, const ResolutionTable& table) {
  auto ci = count_unit(unit, table).ci;
  // Inheritance is binary per ordered pair.
  std::vector<DependencePair> unique;
  for (auto& p : ci) {
    if (std::find(unique.begin(), unique.end(), p) == unique.end()) unique.push_back(std::move(p));
  }
  return unique;
}

std::vector<DependencePair> count_ca(const SourceUnit& unit, const ResolutionTable& table) {
  return count_unit(unit, table).ca;
}

std::vector<DependencePair> count_cm(const SourceUnit& unit, const ResolutionTable& table) {
  return count_unit(unit, table).cm;
}

std::vector<DependencePair> count_mm(const SourceUnit& unit, const ResolutionTable& table) {
  return count_unit(unit, table).mm;
}

DependenceGraph build_graph(std::span<const SourceUnit> units, const ResolutionTable& table) {
  DependenceGraph graph;
  for (const auto& module : table.modules()) graph.add_node(module);

  using Key = std::pair<std::string, std::string>;
  std::map<Key, std::pair<std::pair<ModuleId, ModuleId>, DependenceCounts>> merged;
  auto accumulate = [&](const std::vector<DependencePair>& pairs, DependenceKind kind) {
    for (const auto& p : pairs) {
      auto& slot = merged[Key{p.from.name, p.to.name}];
      slot.first = {p.from, p.to};
      slot.second[kind] += 1;
    }
  };

  for (const auto& unit : units) {
    auto counts = count_unit(unit, table);
    std::vector<DependencePair> ci;
    for (auto& p : counts.ci) {
      if (std::find(ci.begin(), ci.end(), p) == ci.end()) ci.push_back(std::move(p));
    }
    accumulate(ci, DependenceKind::Inheritance);
    accumulate(counts.ca, DependenceKind::Attribute);
    accumulate(counts.cm, DependenceKind::MethodSignature);
    accumulate(counts.mm, DependenceKind::MethodCall);
  }
  for (const auto& [key, entry] : merged) {
    graph.add_counts(entry.first.first, entry.first.second, entry.second);
  }
  return graph;
}

}  // namespace docrank::java

// ---------------------------------------------------------------------------
// Project extraction

namespace docrank {

namespace {

ExtractionResult extract_loaded(std::vector<std::pair<std::string, std::string>> files,
                                const ExtractionOptions& options) {
  std::sort(files.begin(), files.end());

  ExtractionResult result;
  result.files_seen = files.size();

  std::vector<std::optional<java::SourceUnit>> parsed(files.size());
  std::vector<std::exception_ptr> failures(files.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      try {
        parsed[i] = java::parse_unit(files[i].second, files[i].first);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(files.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<java::SourceUnit> units;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (failures[i]) {
      if (options.strict) std::rethrow_exception(failures[i]);
      try {
        std::rethrow_exception(failures[i]);
      } catch (const std::exception& ex) {
        result.diagnostics.push_back({files[i].first, ex.what()});
      }
      continue;
    }
    units.push_back(std::move(*parsed[i]));
  }
  result.files_parsed = units.size();

  std::vector<std::string> duplicates;
  const auto table = java::ResolutionTable::build(units, &duplicates);
  for (auto& d : duplicates) result.diagnostics.push_back({"", std::move(d)});
  result.graph = java::build_graph(units, table);
  return result;
}

}  // namespace

ExtractionResult extract_sources(const std::map<std::string, std::string>& sources,
                                 const ExtractionOptions& options) {
  std::vector<std::pair<std::string, std::string>> files(sources.begin(), sources.end());
  return extract_loaded(std::move(files), options);
}

ExtractionResult extract_project(const std::filesystem::path& root,
                                 const ExtractionOptions& options) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw Error("'" + root.string() + "' is not a readable directory");
  }

  std::vector<std::pair<std::string, std::string>> files;
  for (auto it = fs::recursive_directory_iterator(root, fs::directory_options::skip_permission_denied);
       it != fs::recursive_directory_iterator(); ++it) {
    if (!it->is_regular_file() || it->path().extension() != ".java") continue;
    if (it->path().filename() == "module-info.java") continue;
    auto relative = fs::relative(it->path(), root).generic_string();
    files.emplace_back(std::move(relative), detail::read_file(it->path()));
  }
  return extract_loaded(std::move(files), options);
}

}  // namespace docrank
