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
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "egsolve/ast.hpp"
#include "egsolve/dd.hpp"

namespace egsolve {

// Boolean encoding of the finite-domain variables. Bits are allocated in
// declaration order (environment first), LSB first, and every bit is
// immediately followed by its primed copy, so prime/unprime renaming is a
// set of adjacent-level swaps.

struct EncodedVar {
  std::string name;
  Owner owner;
  Domain domain;
  std::vector<VarId> bits;         // unprimed, LSB first
  std::vector<VarId> primed_bits;  // same width
};

class Encoding {
 public:
  std::vector<EncodedVar> vars;

  std::uint32_t total_bits = 0;  // unprimed bit count; the manager holds 2x

  const EncodedVar& find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::invalid_argument("unknown variable '" + name + "'");
    return vars[it->second];
  }

  // Variable groups, each sorted by level.
  std::vector<VarId> env_unprimed, sys_unprimed, env_primed, sys_primed;
  std::vector<VarId> all_unprimed, all_primed;
  std::vector<std::pair<VarId, VarId>> prime_pairs;

  std::map<std::string, std::size_t> index_;
};

inline std::uint32_t bits_for(std::size_t domain_size) {
  std::uint32_t b = 0;
  while ((std::size_t{1} << b) < domain_size) ++b;
  return b;
}

/// Number of manager variables build_encoding will allocate.
inline std::uint32_t manager_vars_for(const SpecAst& ast) {
  std::uint32_t bits = 0;
  for (const auto& v : ast.env_vars) bits += bits_for(v.domain.size());
  for (const auto& v : ast.sys_vars) bits += bits_for(v.domain.size());
  return 2 * bits;
}

inline Encoding build_encoding(const SpecAst& ast, DdManager& mgr) {
  Encoding enc;
  std::uint32_t next_var = 0;
  auto alloc = [&](const VarDecl& d) {
    EncodedVar ev;
    ev.name = d.name;
    ev.owner = d.owner;
    ev.domain = d.domain;
    std::uint32_t nb = bits_for(d.domain.size());
    for (std::uint32_t b = 0; b < nb; ++b) {
      VarId u{next_var++}, p{next_var++};
      ev.bits.push_back(u);
      ev.primed_bits.push_back(p);
      enc.prime_pairs.emplace_back(u, p);
      auto& ug = d.owner == Owner::Env ? enc.env_unprimed : enc.sys_unprimed;
      auto& pg = d.owner == Owner::Env ? enc.env_primed : enc.sys_primed;
      ug.push_back(u);
      pg.push_back(p);
      enc.all_unprimed.push_back(u);
      enc.all_primed.push_back(p);
    }
    enc.total_bits += nb;
    enc.index_.emplace(ev.name, enc.vars.size());
    enc.vars.push_back(std::move(ev));
  };
  for (const auto& v : ast.env_vars) alloc(v);
  for (const auto& v : ast.sys_vars) alloc(v);
  if (mgr.var_count() != next_var)
    throw std::invalid_argument("build_encoding: manager sized for " +
                                std::to_string(mgr.var_count()) + " variables, need " +
                                std::to_string(next_var));
  return enc;
}

namespace detail {

// code of a domain value: ordinal position (value - lo for ranges,
// label index for enums, 0/1 for booleans)
inline Bdd encode_code(DdManager& mgr, const std::vector<VarId>& bits, std::uint64_t code) {
  Bdd r = mgr.bdd_true();
  for (std::size_t b = 0; b < bits.size(); ++b)
    r = r & ((code >> b) & 1 ? mgr.var(bits[b]) : mgr.nvar(bits[b]));
  return r;
}

}  // namespace detail

/// Set where `var` (its unprimed or primed copy) equals the domain value with
/// ordinal `code`.
inline Bdd encode_eq(DdManager& mgr, const EncodedVar& v, std::uint64_t code, bool primed) {
  if (code >= v.domain.size()) throw std::invalid_argument("encode_eq: code out of range");
  return detail::encode_code(mgr, primed ? v.primed_bits : v.bits, code);
}

/// Codes below the domain size; excludes the unused bit patterns.
inline Bdd validity(DdManager& mgr, const EncodedVar& v, bool primed) {
  Bdd r = mgr.bdd_false();
  for (std::uint64_t c = 0; c < v.domain.size(); ++c)
    r = r | encode_eq(mgr, v, c, primed);
  return r;
}

inline Bdd state_validity(DdManager& mgr, const Encoding& enc, bool primed) {
  Bdd r = mgr.bdd_true();
  for (const auto& v : enc.vars) r = r & validity(mgr, v, primed);
  return r;
}

// ---- expression compilation ---------------------------------------------------

namespace detail {

// A finite numeric/enum term as a partition of assignments by value.
struct ValueCases {
  std::map<std::int64_t, Bdd> cases;  // value -> set (within the term's validity)
};

struct Compiler {
  DdManager& mgr;
  const Encoding& enc;

  Bdd compile_bool(const ExprPtr& e) {
    switch (e->kind) {
      case ExprKind::True: return mgr.bdd_true();
      case ExprKind::False: return mgr.bdd_false();
      case ExprKind::Not: return !compile_bool(e->kids[0]);
      case ExprKind::And: return compile_bool(e->kids[0]) & compile_bool(e->kids[1]);
      case ExprKind::Or: return compile_bool(e->kids[0]) | compile_bool(e->kids[1]);
      case ExprKind::Imp: return compile_bool(e->kids[0]).imp(compile_bool(e->kids[1]));
      case ExprKind::Iff: return !(compile_bool(e->kids[0]) ^ compile_bool(e->kids[1]));
      case ExprKind::VarRef:
      case ExprKind::NextRef: {
        const EncodedVar& v = enc.find(e->name);
        if (v.domain.kind != DomainKind::Boolean)
          throw std::invalid_argument("variable '" + e->name + "' used as a Boolean");
        bool primed = e->kind == ExprKind::NextRef;
        return mgr.var(primed ? v.primed_bits[0] : v.bits[0]);
      }
      case ExprKind::Eq:
      case ExprKind::Ne:
      case ExprKind::Lt:
      case ExprKind::Le:
      case ExprKind::Gt:
      case ExprKind::Ge:
        return compile_cmp(e);
      default:
        throw std::invalid_argument("expression is not Boolean");
    }
  }

  bool is_enum_side(const ExprPtr& e) const {
    if (e->kind == ExprKind::EnumLit) return true;
    if (e->kind == ExprKind::VarRef || e->kind == ExprKind::NextRef)
      return enc.find(e->name).domain.kind == DomainKind::Enum;
    return false;
  }

  Bdd compile_cmp(const ExprPtr& e) {
    ValueCases a = compile_term(e->kids[0]);
    ValueCases b = compile_term(e->kids[1]);
    auto holds = [&](std::int64_t x, std::int64_t y) {
      switch (e->kind) {
        case ExprKind::Eq: return x == y;
        case ExprKind::Ne: return x != y;
        case ExprKind::Lt: return x < y;
        case ExprKind::Le: return x <= y;
        case ExprKind::Gt: return x > y;
        case ExprKind::Ge: return x >= y;
        default: return false;
      }
    };
    Bdd r = mgr.bdd_false();
    for (const auto& [x, sx] : a.cases)
      for (const auto& [y, sy] : b.cases)
        if (holds(x, y)) r = r | (sx & sy);
    return r;
  }

  // Arithmetic is evaluated over the concrete (tiny) domains; no bit-level adders.
  ValueCases compile_term(const ExprPtr& e) {
    switch (e->kind) {
      case ExprKind::IntLit: {
        ValueCases v;
        v.cases.emplace(e->value, mgr.bdd_true());
        return v;
      }
      case ExprKind::EnumLit: {
        // ordinal within its owning enum; sema only admits comparisons where
        // the label sets agree, so ordinals are consistent across sides
        ValueCases v;
        v.cases.emplace(enum_ordinal(e->name), mgr.bdd_true());
        return v;
      }
      case ExprKind::VarRef:
      case ExprKind::NextRef: {
        const EncodedVar& var = enc.find(e->name);
        bool primed = e->kind == ExprKind::NextRef;
        ValueCases v;
        for (std::uint64_t c = 0; c < var.domain.size(); ++c) {
          std::int64_t value;
          switch (var.domain.kind) {
            case DomainKind::Boolean: value = static_cast<std::int64_t>(c); break;
            case DomainKind::IntRange: value = var.domain.lo + static_cast<std::int64_t>(c); break;
            case DomainKind::Enum: value = static_cast<std::int64_t>(c); break;
          }
          v.cases.emplace(value, encode_eq(mgr, var, c, primed));
        }
        return v;
      }
      case ExprKind::Plus: return combine(e, [](std::int64_t a, std::int64_t b) { return a + b; });
      case ExprKind::Minus: return combine(e, [](std::int64_t a, std::int64_t b) { return a - b; });
      case ExprKind::Neg: return map_term(e->kids[0], [](std::int64_t a) { return -a; });
      case ExprKind::Abs: return map_term(e->kids[0], [](std::int64_t a) { return a < 0 ? -a : a; });
      default:
        throw std::invalid_argument("expression is not a finite term");
    }
  }

  std::int64_t enum_ordinal(const std::string& label) const {
    for (const auto& v : enc.vars) {
      if (v.domain.kind != DomainKind::Enum) continue;
      for (std::size_t i = 0; i < v.domain.labels.size(); ++i)
        if (v.domain.labels[i] == label) return static_cast<std::int64_t>(i);
    }
    throw std::invalid_argument("unknown enum label '" + label + "'");
  }

  template <typename F>
  ValueCases combine(const ExprPtr& e, F f) {
    ValueCases a = compile_term(e->kids[0]);
    ValueCases b = compile_term(e->kids[1]);
    ValueCases r;
    for (const auto& [x, sx] : a.cases)
      for (const auto& [y, sy] : b.cases) {
        Bdd s = sx & sy;
        if (s.is_false()) continue;
        auto [it, fresh] = r.cases.emplace(f(x, y), s);
        if (!fresh) it->second = it->second | s;
      }
    return r;
  }

  template <typename F>
  ValueCases map_term(const ExprPtr& e, F f) {
    ValueCases a = compile_term(e);
    ValueCases r;
    for (const auto& [x, sx] : a.cases) {
      auto [it, fresh] = r.cases.emplace(f(x), sx);
      if (!fresh) it->second = it->second | sx;
    }
    return r;
  }
};

}  // namespace detail

/// Characteristic function of a type-checked Boolean expression. next(v)
/// compiles to v's primed bits; validity constraints are the caller's
/// concern (game construction conjoins them).
inline Bdd compile_expr(const ExprPtr& e, DdManager& mgr, const Encoding& enc) {
  detail::Compiler c{mgr, enc};
  return c.compile_bool(e);
}

}  // namespace egsolve
