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

#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace egsolve {

enum class Owner : std::uint8_t { Env, Sys };

enum class DomainKind : std::uint8_t { Boolean, IntRange, Enum };

struct Domain {
  DomainKind kind = DomainKind::Boolean;
  std::int64_t lo = 0, hi = 0;          // IntRange
  std::vector<std::string> labels;      // Enum

  std::size_t size() const {
    switch (kind) {
      case DomainKind::Boolean: return 2;
      case DomainKind::IntRange: return static_cast<std::size_t>(hi - lo + 1);
      case DomainKind::Enum: return labels.size();
    }
    return 0;
  }
};

struct VarDecl {
  std::string name;
  Owner owner = Owner::Env;
  Domain domain;
  int line = 0;
};

enum class ExprKind : std::uint8_t {
  True, False, IntLit, EnumLit,
  VarRef, NextRef,
  Not, And, Or, Imp, Iff,
  Eq, Ne, Lt, Le, Gt, Ge,
  Plus, Minus, Neg, Abs,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind;
  std::vector<ExprPtr> kids;
  std::string name;        // VarRef/NextRef identifier, EnumLit label
  std::int64_t value = 0;  // IntLit
  int line = 0, col = 0;

  static ExprPtr mk(ExprKind k, std::vector<ExprPtr> kids = {}, int line = 0, int col = 0) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->kids = std::move(kids);
    e->line = line;
    e->col = col;
    return e;
  }
  static ExprPtr mk_int(std::int64_t v, int line = 0, int col = 0) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::IntLit;
    e->value = v;
    e->line = line;
    e->col = col;
    return e;
  }
  static ExprPtr mk_name(ExprKind k, std::string name, int line = 0, int col = 0) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->name = std::move(name);
    e->line = line;
    e->col = col;
    return e;
  }
};

struct Define {
  std::string name;
  ExprPtr body;
  int line = 0;
};

struct Formula {
  bool has_g = false;  // wrapped in a top-level G(...)
  ExprPtr body;
  int line = 0;
};

struct SpecAst {
  std::vector<VarDecl> env_vars;
  std::vector<VarDecl> sys_vars;
  std::vector<Define> defines;
  std::vector<Formula> assumptions;
  std::vector<Formula> guarantees;
};

struct WeightEntry {
  std::int64_t value = 0;
  ExprPtr formula;
  int line = 0;
};

// ---- structural equality and pretty printing --------------------------------

inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind || a->name != b->name || a->value != b->value) return false;
  if (a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!expr_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

namespace detail {

inline int expr_prec(ExprKind k) {
  switch (k) {
    case ExprKind::Iff: return 1;
    case ExprKind::Imp: return 2;
    case ExprKind::Or: return 3;
    case ExprKind::And: return 4;
    case ExprKind::Eq: case ExprKind::Ne: case ExprKind::Lt:
    case ExprKind::Le: case ExprKind::Gt: case ExprKind::Ge: return 5;
    case ExprKind::Plus: case ExprKind::Minus: return 6;
    case ExprKind::Not: case ExprKind::Neg: return 7;
    default: return 8;
  }
}

inline void print_expr(std::ostream& os, const ExprPtr& e, int parent_prec) {
  int p = expr_prec(e->kind);
  bool paren = p < parent_prec;
  if (paren) os << "(";
  switch (e->kind) {
    case ExprKind::True: os << "TRUE"; break;
    case ExprKind::False: os << "FALSE"; break;
    case ExprKind::IntLit: os << e->value; break;
    case ExprKind::EnumLit: os << e->name; break;
    case ExprKind::VarRef: os << e->name; break;
    case ExprKind::NextRef: os << "next(" << e->name << ")"; break;
    case ExprKind::Not: os << "!"; print_expr(os, e->kids[0], p + 1); break;
    case ExprKind::Neg: os << "-"; print_expr(os, e->kids[0], p + 1); break;
    case ExprKind::Abs:
      os << "abs(";
      print_expr(os, e->kids[0], 0);
      os << ")";
      break;
    default: {
      const char* op = "?";
      switch (e->kind) {
        case ExprKind::And: op = " & "; break;
        case ExprKind::Or: op = " | "; break;
        case ExprKind::Imp: op = " -> "; break;
        case ExprKind::Iff: op = " <-> "; break;
        case ExprKind::Eq: op = " = "; break;
        case ExprKind::Ne: op = " != "; break;
        case ExprKind::Lt: op = " < "; break;
        case ExprKind::Le: op = " <= "; break;
        case ExprKind::Gt: op = " > "; break;
        case ExprKind::Ge: op = " >= "; break;
        case ExprKind::Plus: op = " + "; break;
        case ExprKind::Minus: op = " - "; break;
        default: break;
      }
      // left-associative chains print without redundant parentheses
      print_expr(os, e->kids[0], p);
      os << op;
      print_expr(os, e->kids[1], p + 1);
      break;
    }
  }
  if (paren) os << ")";
}

inline void print_domain(std::ostream& os, const Domain& d) {
  switch (d.kind) {
    case DomainKind::Boolean: os << "boolean"; break;
    case DomainKind::IntRange: os << d.lo << ".." << d.hi; break;
    case DomainKind::Enum: {
      os << "{";
      for (std::size_t i = 0; i < d.labels.size(); ++i)
        os << (i ? ", " : "") << d.labels[i];
      os << "}";
      break;
    }
  }
}

}  // namespace detail

inline std::string pretty_print(const ExprPtr& e) {
  std::ostringstream os;
  detail::print_expr(os, e, 0);
  return os.str();
}

inline std::string pretty_print(const SpecAst& ast) {
  std::ostringstream os;
  auto decls = [&](const char* kw, const std::vector<VarDecl>& vs) {
    if (vs.empty()) return;
    os << kw << "\n";
    for (const auto& v : vs) {
      os << "  " << v.name << " : ";
      detail::print_domain(os, v.domain);
      os << ";\n";
    }
  };
  decls("VARENV", ast.env_vars);
  decls("VAR", ast.sys_vars);
  if (!ast.defines.empty()) {
    os << "DEFINE\n";
    for (const auto& d : ast.defines) os << "  " << d.name << " := " << pretty_print(d.body) << ";\n";
  }
  for (const auto& f : ast.assumptions) {
    os << "ASSUMPTION ";
    if (f.has_g) os << "G(" << pretty_print(f.body) << ")";
    else os << pretty_print(f.body);
    os << ";\n";
  }
  for (const auto& f : ast.guarantees) {
    os << "GUARANTEE ";
    if (f.has_g) os << "G(" << pretty_print(f.body) << ")";
    else os << pretty_print(f.body);
    os << ";\n";
  }
  return os.str();
}

inline std::string pretty_print(const std::vector<WeightEntry>& ws) {
  std::ostringstream os;
  for (const auto& w : ws)
    os << "WEIGHT " << w.value << " " << pretty_print(w.formula) << ";\n";
  return os.str();
}

inline bool ast_equal(const SpecAst& a, const SpecAst& b) {
  auto vd_eq = [](const VarDecl& x, const VarDecl& y) {
    return x.name == y.name && x.owner == y.owner && x.domain.kind == y.domain.kind &&
           x.domain.lo == y.domain.lo && x.domain.hi == y.domain.hi &&
           x.domain.labels == y.domain.labels;
  };
  if (a.env_vars.size() != b.env_vars.size() || a.sys_vars.size() != b.sys_vars.size() ||
      a.defines.size() != b.defines.size() || a.assumptions.size() != b.assumptions.size() ||
      a.guarantees.size() != b.guarantees.size())
    return false;
  for (std::size_t i = 0; i < a.env_vars.size(); ++i)
    if (!vd_eq(a.env_vars[i], b.env_vars[i])) return false;
  for (std::size_t i = 0; i < a.sys_vars.size(); ++i)
    if (!vd_eq(a.sys_vars[i], b.sys_vars[i])) return false;
  for (std::size_t i = 0; i < a.defines.size(); ++i)
    if (a.defines[i].name != b.defines[i].name || !expr_equal(a.defines[i].body, b.defines[i].body))
      return false;
  for (std::size_t i = 0; i < a.assumptions.size(); ++i)
    if (a.assumptions[i].has_g != b.assumptions[i].has_g ||
        !expr_equal(a.assumptions[i].body, b.assumptions[i].body))
      return false;
  for (std::size_t i = 0; i < a.guarantees.size(); ++i)
    if (a.guarantees[i].has_g != b.guarantees[i].has_g ||
        !expr_equal(a.guarantees[i].body, b.guarantees[i].body))
      return false;
  return true;
}

}  // namespace egsolve
