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

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "egsolve/ast.hpp"

namespace egsolve {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + msg),
        line(line), col(col) {}
  int line, col;
};

namespace detail {

enum class Tok : std::uint8_t {
  Ident, Int,
  Colon, Semi, Comma, DotDot, Assign,
  LParen, RParen, LBrace, RBrace,
  Not, And, Or, Imp, Iff,
  Eq, Ne, Lt, Le, Gt, Ge,
  Plus, Minus,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::int64_t value = 0;
  int line = 1, col = 1;
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string text, int l, int c) {
    Token t;
    t.kind = k;
    t.text = std::move(text);
    t.line = l;
    t.col = c;
    out.push_back(std::move(t));
  };
  while (i < src.size()) {
    char ch = src[i];
    if (ch == '\n') { ++line; col = 1; ++i; continue; }
    if (ch == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) { ++col; ++i; continue; }
    int l = line, c = col;
    auto two = [&](char a, char b) {
      return ch == a && i + 1 < src.size() && src[i + 1] == b;
    };
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      push(Tok::Ident, src.substr(i, j - i), l, c);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      Token t;
      t.kind = Tok::Int;
      t.text = src.substr(i, j - i);
      t.value = std::stoll(t.text);
      t.line = l;
      t.col = c;
      out.push_back(std::move(t));
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (two('<', '-') && i + 2 < src.size() && src[i + 2] == '>') {
      push(Tok::Iff, "<->", l, c); i += 3; col += 3; continue;
    }
    if (two('-', '>')) { push(Tok::Imp, "->", l, c); i += 2; col += 2; continue; }
    if (two(':', '=')) { push(Tok::Assign, ":=", l, c); i += 2; col += 2; continue; }
    if (two('.', '.')) { push(Tok::DotDot, "..", l, c); i += 2; col += 2; continue; }
    if (two('!', '=')) { push(Tok::Ne, "!=", l, c); i += 2; col += 2; continue; }
    if (two('<', '=')) { push(Tok::Le, "<=", l, c); i += 2; col += 2; continue; }
    if (two('>', '=')) { push(Tok::Ge, ">=", l, c); i += 2; col += 2; continue; }
    switch (ch) {
      case ':': push(Tok::Colon, ":", l, c); break;
      case ';': push(Tok::Semi, ";", l, c); break;
      case ',': push(Tok::Comma, ",", l, c); break;
      case '(': push(Tok::LParen, "(", l, c); break;
      case ')': push(Tok::RParen, ")", l, c); break;
      case '{': push(Tok::LBrace, "{", l, c); break;
      case '}': push(Tok::RBrace, "}", l, c); break;
      case '!': push(Tok::Not, "!", l, c); break;
      case '&': push(Tok::And, "&", l, c); break;
      case '|': push(Tok::Or, "|", l, c); break;
      case '=': push(Tok::Eq, "=", l, c); break;
      case '<': push(Tok::Lt, "<", l, c); break;
      case '>': push(Tok::Gt, ">", l, c); break;
      case '+': push(Tok::Plus, "+", l, c); break;
      case '-': push(Tok::Minus, "-", l, c); break;
      default:
        throw ParseError(l, c, std::string("unexpected character '") + ch + "'");
    }
    ++i;
    ++col;
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  SpecAst parse_spec() {
    SpecAst ast;
    while (!at(Tok::End)) {
      const Token& t = peek();
      if (t.kind != Tok::Ident)
        throw ParseError(t.line, t.col, "expected a section keyword");
      if (t.text == "VARENV") {
        next();
        parse_decls(ast.env_vars, Owner::Env);
      } else if (t.text == "VAR") {
        next();
        parse_decls(ast.sys_vars, Owner::Sys);
      } else if (t.text == "DEFINE") {
        next();
        parse_defines(ast.defines);
      } else if (t.text == "ASSUMPTION") {
        next();
        ast.assumptions.push_back(parse_formula());
        expect(Tok::Semi, "';'");
      } else if (t.text == "GUARANTEE") {
        next();
        ast.guarantees.push_back(parse_formula());
        expect(Tok::Semi, "';'");
      } else {
        throw ParseError(t.line, t.col, "unknown section keyword '" + t.text + "'");
      }
    }
    return ast;
  }

  std::vector<WeightEntry> parse_weights() {
    std::vector<WeightEntry> out;
    while (!at(Tok::End)) {
      const Token& t = peek();
      if (t.kind != Tok::Ident || t.text != "WEIGHT")
        throw ParseError(t.line, t.col, "expected 'WEIGHT'");
      next();
      bool neg = false;
      if (at(Tok::Minus)) { next(); neg = true; }
      const Token& v = expect(Tok::Int, "integer weight value");
      WeightEntry e;
      e.value = neg ? -v.value : v.value;
      e.line = t.line;
      e.formula = parse_expr();
      expect(Tok::Semi, "';'");
      out.push_back(std::move(e));
    }
    return out;
  }

 private:
  static bool is_keyword(const std::string& s) {
    return s == "VARENV" || s == "VAR" || s == "DEFINE" || s == "ASSUMPTION" ||
           s == "GUARANTEE" || s == "WEIGHT";
  }

  void parse_decls(std::vector<VarDecl>& out, Owner owner) {
    // decl+ until the next section keyword
    while (at(Tok::Ident) && !is_keyword(peek().text)) {
      VarDecl d;
      d.owner = owner;
      const Token& nm = next();
      d.name = nm.text;
      d.line = nm.line;
      expect(Tok::Colon, "':'");
      const Token& t = peek();
      if (t.kind == Tok::Ident && t.text == "boolean") {
        next();
        d.domain.kind = DomainKind::Boolean;
      } else if (t.kind == Tok::Int || t.kind == Tok::Minus) {
        d.domain.kind = DomainKind::IntRange;
        d.domain.lo = parse_signed_int();
        expect(Tok::DotDot, "'..'");
        d.domain.hi = parse_signed_int();
        if (d.domain.lo > d.domain.hi)
          throw ParseError(t.line, t.col, "empty integer range");
      } else if (t.kind == Tok::LBrace) {
        next();
        d.domain.kind = DomainKind::Enum;
        d.domain.labels.push_back(expect(Tok::Ident, "enum label").text);
        while (at(Tok::Comma)) {
          next();
          d.domain.labels.push_back(expect(Tok::Ident, "enum label").text);
        }
        expect(Tok::RBrace, "'}'");
      } else {
        throw ParseError(t.line, t.col, "expected a type");
      }
      expect(Tok::Semi, "';'");
      out.push_back(std::move(d));
    }
    if (out.empty()) {
      const Token& t = peek();
      throw ParseError(t.line, t.col, "expected at least one declaration");
    }
  }

  void parse_defines(std::vector<Define>& out) {
    bool any = false;
    while (at(Tok::Ident) && !is_keyword(peek().text)) {
      // lookahead: ident := expr ;
      if (toks_[pos_ + 1].kind != Tok::Assign) break;
      Define d;
      const Token& nm = next();
      d.name = nm.text;
      d.line = nm.line;
      expect(Tok::Assign, "':='");
      d.body = parse_expr();
      expect(Tok::Semi, "';'");
      out.push_back(std::move(d));
      any = true;
    }
    if (!any) {
      const Token& t = peek();
      throw ParseError(t.line, t.col, "expected at least one definition");
    }
  }

  Formula parse_formula() {
    Formula f;
    const Token& t = peek();
    f.line = t.line;
    if (t.kind == Tok::Ident && t.text == "G" && toks_[pos_ + 1].kind == Tok::LParen) {
      next();
      next();
      f.has_g = true;
      f.body = parse_expr();
      expect(Tok::RParen, "')'");
    } else {
      f.body = parse_expr();
    }
    return f;
  }

  std::int64_t parse_signed_int() {
    bool neg = false;
    if (at(Tok::Minus)) { next(); neg = true; }
    const Token& t = expect(Tok::Int, "integer");
    return neg ? -t.value : t.value;
  }

  // expr := iff, lowest precedence first
  ExprPtr parse_expr() { return parse_iff(); }

  ExprPtr parse_iff() {
    ExprPtr l = parse_imp();
    while (at(Tok::Iff)) {
      const Token& t = next();
      ExprPtr r = parse_imp();
      l = Expr::mk(ExprKind::Iff, {l, r}, t.line, t.col);
    }
    return l;
  }

  ExprPtr parse_imp() {
    ExprPtr l = parse_or();
    if (at(Tok::Imp)) {
      const Token& t = next();
      ExprPtr r = parse_imp();  // right associative
      return Expr::mk(ExprKind::Imp, {l, r}, t.line, t.col);
    }
    return l;
  }

  ExprPtr parse_or() {
    ExprPtr l = parse_and();
    while (at(Tok::Or)) {
      const Token& t = next();
      l = Expr::mk(ExprKind::Or, {l, parse_and()}, t.line, t.col);
    }
    return l;
  }

  ExprPtr parse_and() {
    ExprPtr l = parse_cmp();
    while (at(Tok::And)) {
      const Token& t = next();
      l = Expr::mk(ExprKind::And, {l, parse_cmp()}, t.line, t.col);
    }
    return l;
  }

  ExprPtr parse_cmp() {
    ExprPtr l = parse_sum();
    ExprKind k;
    switch (peek().kind) {
      case Tok::Eq: k = ExprKind::Eq; break;
      case Tok::Ne: k = ExprKind::Ne; break;
      case Tok::Lt: k = ExprKind::Lt; break;
      case Tok::Le: k = ExprKind::Le; break;
      case Tok::Gt: k = ExprKind::Gt; break;
      case Tok::Ge: k = ExprKind::Ge; break;
      default: return l;
    }
    const Token& t = next();
    ExprPtr r = parse_sum();
    return Expr::mk(k, {l, r}, t.line, t.col);
  }

  ExprPtr parse_sum() {
    ExprPtr l = parse_unary();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      const Token& t = next();
      ExprKind k = t.kind == Tok::Plus ? ExprKind::Plus : ExprKind::Minus;
      l = Expr::mk(k, {l, parse_unary()}, t.line, t.col);
    }
    return l;
  }

  ExprPtr parse_unary() {
    const Token& t = peek();
    if (t.kind == Tok::Not) {
      next();
      return Expr::mk(ExprKind::Not, {parse_unary()}, t.line, t.col);
    }
    if (t.kind == Tok::Minus) {
      next();
      return Expr::mk(ExprKind::Neg, {parse_unary()}, t.line, t.col);
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      next();
      ExprPtr e = parse_expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (t.kind == Tok::Int) {
      next();
      return Expr::mk_int(t.value, t.line, t.col);
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "TRUE") { next(); return Expr::mk(ExprKind::True, {}, t.line, t.col); }
      if (t.text == "FALSE") { next(); return Expr::mk(ExprKind::False, {}, t.line, t.col); }
      if (t.text == "next") {
        next();
        expect(Tok::LParen, "'('");
        const Token& id = expect(Tok::Ident, "variable name");
        expect(Tok::RParen, "')'");
        return Expr::mk_name(ExprKind::NextRef, id.text, t.line, t.col);
      }
      if (t.text == "abs") {
        next();
        expect(Tok::LParen, "'('");
        ExprPtr e = parse_expr();
        expect(Tok::RParen, "')'");
        return Expr::mk(ExprKind::Abs, {e}, t.line, t.col);
      }
      next();
      return Expr::mk_name(ExprKind::VarRef, t.text, t.line, t.col);
    }
    throw ParseError(t.line, t.col, "expected an expression");
  }

  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return toks_[pos_].kind == k; }
  const Token& next() { return toks_[pos_++]; }
  const Token& expect(Tok k, const char* what) {
    if (!at(k)) {
      const Token& t = peek();
      throw ParseError(t.line, t.col, std::string("expected ") + what);
    }
    return next();
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline SpecAst parse_spec(const std::string& text) {
  return detail::Parser(text).parse_spec();
}

inline std::vector<WeightEntry> parse_weights(const std::string& text) {
  return detail::Parser(text).parse_weights();
}

}  // namespace egsolve
