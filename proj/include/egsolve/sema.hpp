/*
 * Copyright 2026 The egsolve authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "egsolve/ast.hpp"

namespace egsolve {

class SemaError : public std::runtime_error {
 public:
  SemaError(int line, const std::string& msg)
      : std::runtime_error("error at line " + std::to_string(line) + ": " + msg), line(line) {}
  int line;
};

struct CheckedSpec {
  SpecAst ast;  // defines substituted, enum labels resolved, formulas type-checked
  std::vector<std::string> warnings;
};

namespace detail {

struct NameTable {
  std::map<std::string, const VarDecl*> vars;
  std::map<std::string, const Define*> defines;
  std::map<std::string, const VarDecl*> enum_labels;  // label -> owning declaration

  explicit NameTable(const SpecAst& ast) {
    auto add_vars = [&](const std::vector<VarDecl>& vs) {
      for (const auto& v : vs) {
        if (!vars.emplace(v.name, &v).second)
          throw SemaError(v.line, "duplicate variable '" + v.name + "'");
        if (v.domain.kind == DomainKind::Enum) {
          if (v.domain.labels.empty())
            throw SemaError(v.line, "empty enumeration for '" + v.name + "'");
          for (const auto& l : v.domain.labels)
            if (!enum_labels.emplace(l, &v).second)
              throw SemaError(v.line, "enum label '" + l + "' is not unique");
        }
      }
    };
    add_vars(ast.env_vars);
    add_vars(ast.sys_vars);
    for (const auto& d : ast.defines) {
      if (vars.count(d.name) || enum_labels.count(d.name))
        throw SemaError(d.line, "'" + d.name + "' is both a define and a variable or label");
      if (!defines.emplace(d.name, &d).second)
        throw SemaError(d.line, "duplicate define '" + d.name + "'");
    }
  }
};

class Sema {
 public:
  Sema(const SpecAst& ast) : ast_(ast), names_(ast) {}

  ExprPtr expand(const ExprPtr& e) {
    switch (e->kind) {
      case ExprKind::VarRef: {
        if (names_.vars.count(e->name)) return e;
        auto dit = names_.defines.find(e->name);
        if (dit != names_.defines.end()) {
          if (expanding_.count(e->name))
            throw SemaError(e->line, "cyclic define '" + e->name + "'");
          expanding_.insert(e->name);
          ExprPtr r = expand(dit->second->body);
          expanding_.erase(e->name);
          return r;
        }
        auto lit = names_.enum_labels.find(e->name);
        if (lit != names_.enum_labels.end())
          return Expr::mk_name(ExprKind::EnumLit, e->name, e->line, e->col);
        throw SemaError(e->line, "unknown identifier '" + e->name + "'");
      }
      case ExprKind::NextRef: {
        if (!names_.vars.count(e->name))
          throw SemaError(e->line, "next() of unknown variable '" + e->name + "'");
        return e;
      }
      default: {
        if (e->kids.empty()) return e;
        auto c = std::make_shared<Expr>(*e);
        for (auto& k : c->kids) k = expand(k);
        return c;
      }
    }
  }

  enum class Ty { Bool, Num, Enum };

  struct TypeInfo {
    Ty ty;
    const VarDecl* enum_decl = nullptr;  // for Ty::Enum
    const VarDecl* plain_var = nullptr;  // set when the expr is a bare (next-)variable
    bool is_literal = false;
    std::int64_t literal = 0;
  };

  TypeInfo type_check(const ExprPtr& e, std::vector<std::string>& warnings) {
    switch (e->kind) {
      case ExprKind::True:
      case ExprKind::False:
        return {Ty::Bool};
      case ExprKind::IntLit: {
        TypeInfo t{Ty::Num};
        t.is_literal = true;
        t.literal = e->value;
        return t;
      }
      case ExprKind::EnumLit: {
        TypeInfo t{Ty::Enum};
        t.enum_decl = names_.enum_labels.at(e->name);
        return t;
      }
      case ExprKind::VarRef:
      case ExprKind::NextRef: {
        const VarDecl* v = names_.vars.at(e->name);
        TypeInfo t{Ty::Bool};
        t.plain_var = v;
        switch (v->domain.kind) {
          case DomainKind::Boolean: t.ty = Ty::Bool; break;
          case DomainKind::IntRange: t.ty = Ty::Num; break;
          case DomainKind::Enum: t.ty = Ty::Enum; t.enum_decl = v; break;
        }
        return t;
      }
      case ExprKind::Not:
        require(type_check(e->kids[0], warnings).ty == Ty::Bool, e, "'!' needs a Boolean");
        return {Ty::Bool};
      case ExprKind::And:
      case ExprKind::Or:
      case ExprKind::Imp:
      case ExprKind::Iff: {
        require(type_check(e->kids[0], warnings).ty == Ty::Bool, e, "Boolean operand expected");
        require(type_check(e->kids[1], warnings).ty == Ty::Bool, e, "Boolean operand expected");
        return {Ty::Bool};
      }
      case ExprKind::Plus:
      case ExprKind::Minus: {
        require(type_check(e->kids[0], warnings).ty == Ty::Num, e, "numeric operand expected");
        require(type_check(e->kids[1], warnings).ty == Ty::Num, e, "numeric operand expected");
        return {Ty::Num};
      }
      case ExprKind::Neg:
      case ExprKind::Abs:
        require(type_check(e->kids[0], warnings).ty == Ty::Num, e, "numeric operand expected");
        return {Ty::Num};
      case ExprKind::Eq:
      case ExprKind::Ne:
      case ExprKind::Lt:
      case ExprKind::Le:
      case ExprKind::Gt:
      case ExprKind::Ge: {
        TypeInfo a = type_check(e->kids[0], warnings);
        TypeInfo b = type_check(e->kids[1], warnings);
        if (a.ty == Ty::Enum || b.ty == Ty::Enum) {
          require(e->kind == ExprKind::Eq || e->kind == ExprKind::Ne, e,
                  "enumerations support only '=' and '!='");
          require(a.ty == Ty::Enum && b.ty == Ty::Enum, e, "cannot compare enum with non-enum");
          if (a.plain_var && b.plain_var &&
              a.enum_decl->domain.labels != b.enum_decl->domain.labels)
            throw SemaError(e->line, "enum comparison across different label sets");
          auto warn_label = [&](const ExprPtr& lit, const TypeInfo& var) {
            if (lit->kind != ExprKind::EnumLit || !var.plain_var) return;
            const auto& labels = var.enum_decl->domain.labels;
            if (std::find(labels.begin(), labels.end(), lit->name) == labels.end())
              warnings.push_back("line " + std::to_string(e->line) + ": label '" + lit->name +
                                 "' is not a value of '" + var.plain_var->name +
                                 "'; comparison is statically false");
          };
          warn_label(e->kids[0], b);
          warn_label(e->kids[1], a);
          return {Ty::Bool};
        }
        require(a.ty == Ty::Num && b.ty == Ty::Num, e, "comparison needs numeric operands");
        if (a.plain_var && b.plain_var) {
          const Domain& da = a.plain_var->domain;
          const Domain& db = b.plain_var->domain;
          if (da.lo != db.lo || da.hi != db.hi)
            throw SemaError(e->line, "integer comparison across different ranges ('" +
                                         a.plain_var->name + "' vs '" + b.plain_var->name + "')");
        }
        auto warn_range = [&](const TypeInfo& lit, const TypeInfo& var) {
          if (lit.is_literal && var.plain_var &&
              var.plain_var->domain.kind == DomainKind::IntRange &&
              (lit.literal < var.plain_var->domain.lo || lit.literal > var.plain_var->domain.hi))
            warnings.push_back("line " + std::to_string(e->line) + ": literal " +
                               std::to_string(lit.literal) + " outside range of '" +
                               var.plain_var->name + "'; comparison is statically false");
        };
        warn_range(a, b);
        warn_range(b, a);
        return {Ty::Bool};
      }
    }
    throw SemaError(e->line, "malformed expression");
  }

  struct Usage {
    bool next_env = false, next_sys = false, cur_env = false, cur_sys = false;
  };

  void usage(const ExprPtr& e, Usage& u) const {
    if (e->kind == ExprKind::VarRef || e->kind == ExprKind::NextRef) {
      const VarDecl* v = names_.vars.at(e->name);
      bool nxt = e->kind == ExprKind::NextRef;
      if (v->owner == Owner::Env) (nxt ? u.next_env : u.cur_env) = true;
      else (nxt ? u.next_sys : u.cur_sys) = true;
    }
    for (const auto& k : e->kids) usage(k, u);
  }

  const NameTable& names() const { return names_; }

 private:
  static void require(bool ok, const ExprPtr& e, const char* msg) {
    if (!ok) throw SemaError(e->line, msg);
  }

  const SpecAst& ast_;
  NameTable names_;
  std::set<std::string> expanding_;
};

}  // namespace detail

/// Substitutes defines, resolves enum labels, type-checks every formula and
/// enforces placement rules: next() only under a top-level G; initial
/// assumptions range over environment variables only; initial guarantees over
/// current-state variables; transition assumptions must not mention next()
/// of system variables.
inline CheckedSpec expand_and_check(const SpecAst& ast) {
  detail::Sema sema(ast);
  CheckedSpec out;
  out.ast.env_vars = ast.env_vars;
  out.ast.sys_vars = ast.sys_vars;

  auto handle = [&](const Formula& f, bool is_assumption) {
    Formula g;
    g.has_g = f.has_g;
    g.line = f.line;
    g.body = sema.expand(f.body);
    if (sema.type_check(g.body, out.warnings).ty != detail::Sema::Ty::Bool)
      throw SemaError(f.line, "formula must be Boolean");
    detail::Sema::Usage u;
    sema.usage(g.body, u);
    if (!f.has_g && (u.next_env || u.next_sys))
      throw SemaError(f.line, "next() is only allowed under a top-level G");
    if (is_assumption) {
      if (!f.has_g && u.cur_sys)
        throw SemaError(f.line, "initial assumptions may constrain environment variables only");
      if (f.has_g && u.next_sys)
        throw SemaError(f.line, "assumptions may not constrain next() of system variables");
    }
    return g;
  };
  for (const auto& f : ast.assumptions) out.ast.assumptions.push_back(handle(f, true));
  for (const auto& f : ast.guarantees) out.ast.guarantees.push_back(handle(f, false));
  return out;
}

/// Expands and type-checks weight formulas against the spec's declarations
/// (weight formulas live in transition scope: next() is allowed freely).
inline std::vector<WeightEntry> check_weights(const SpecAst& ast,
                                              const std::vector<WeightEntry>& entries,
                                              std::vector<std::string>* warnings = nullptr) {
  detail::Sema sema(ast);
  std::vector<std::string> warn;
  std::vector<WeightEntry> out;
  for (const auto& w : entries) {
    WeightEntry e = w;
    e.formula = sema.expand(w.formula);
    if (sema.type_check(e.formula, warn).ty != detail::Sema::Ty::Bool)
      throw SemaError(w.line, "weight formula must be Boolean");
    out.push_back(std::move(e));
  }
  if (warnings) warnings->insert(warnings->end(), warn.begin(), warn.end());
  return out;
}

}  // namespace egsolve
