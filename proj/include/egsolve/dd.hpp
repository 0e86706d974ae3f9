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
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "egsolve/extint.hpp"

namespace egsolve {

// Reduced ordered decision diagrams over a fixed variable order.
// One node store serves both BDDs (terminals 0/1) and ADDs (terminals in
// Z u {-inf,+inf}); a Bdd and the corresponding 0-1 Add share the handle.
// No complemented edges, no dynamic reordering, grow-only store.

class DdManager;

struct VarId {
  std::uint32_t index = 0;
  friend constexpr bool operator==(VarId a, VarId b) { return a.index == b.index; }
  friend constexpr bool operator!=(VarId a, VarId b) { return a.index != b.index; }
  friend constexpr bool operator<(VarId a, VarId b) { return a.index < b.index; }
};

using NodeId = std::uint32_t;

namespace detail {
class DdRef {
 public:
  DdRef() : mgr_(nullptr), id_(0) {}
  DdRef(DdManager* mgr, NodeId id) : mgr_(mgr), id_(id) {}
  DdManager* manager() const { return mgr_; }
  NodeId id() const { return id_; }
  bool valid() const { return mgr_ != nullptr; }
  friend bool operator==(const DdRef& a, const DdRef& b) {
    return a.mgr_ == b.mgr_ && a.id_ == b.id_;
  }
  friend bool operator!=(const DdRef& a, const DdRef& b) { return !(a == b); }

 protected:
  DdManager* mgr_;
  NodeId id_;
};
}  // namespace detail

class Add;

class Bdd : public detail::DdRef {
 public:
  Bdd() = default;
  Bdd(DdManager* mgr, NodeId id) : DdRef(mgr, id) {}
  inline Bdd operator&(const Bdd& o) const;
  inline Bdd operator|(const Bdd& o) const;
  inline Bdd operator^(const Bdd& o) const;
  inline Bdd operator!() const;
  inline Bdd imp(const Bdd& o) const;
  inline bool is_true() const;
  inline bool is_false() const;
};

class Add : public detail::DdRef {
 public:
  Add() = default;
  Add(DdManager* mgr, NodeId id) : DdRef(mgr, id) {}
};

enum class BoolOp : std::uint8_t { And, Or, Xor, Imp };
enum class Quant : std::uint8_t { Exists, Forall };
enum class AddOp : std::uint8_t { Plus, Minus, Max, Min };
enum class AddAbs : std::uint8_t { Min, Max };

struct TerminalPred {
  enum Kind : std::uint8_t { Eq, Ne, Lt, Le, Gt, Ge } kind;
  ExtInt threshold;
  bool operator()(ExtInt t) const {
    switch (kind) {
      case Eq: return t == threshold;
      case Ne: return t != threshold;
      case Lt: return t < threshold;
      case Le: return t <= threshold;
      case Gt: return t > threshold;
      case Ge: return t >= threshold;
    }
    return false;
  }
};

class DdManager {
 public:
  explicit DdManager(std::uint32_t var_count)
      : DdManager(var_count, identity_order(var_count)) {}

  // order[level] = variable placed at that level, root to terminal.
  DdManager(std::uint32_t var_count, const std::vector<VarId>& order)
      : var_count_(var_count) {
    if (order.size() != var_count)
      throw std::invalid_argument("DdManager: order size mismatch");
    level_to_var_.resize(var_count);
    var_to_level_.assign(var_count, kNoLevel);
    for (std::uint32_t lvl = 0; lvl < var_count; ++lvl) {
      VarId v = order[lvl];
      if (v.index >= var_count || var_to_level_[v.index] != kNoLevel)
        throw std::invalid_argument("DdManager: order is not a permutation");
      level_to_var_[lvl] = v;
      var_to_level_[v.index] = lvl;
    }
    unique_buckets_.assign(kInitialBuckets, 0);
    cache_.assign(kCacheSlots, CacheEntry{});
    // Terminals 0 and 1 get the stable ids 0 and 1.
    make_terminal(ExtInt::of(0));
    make_terminal(ExtInt::of(1));
  }

  DdManager(const DdManager&) = delete;
  DdManager& operator=(const DdManager&) = delete;

  std::uint32_t var_count() const { return var_count_; }
  std::uint32_t level_of(VarId v) const {
    if (v.index >= var_count_) throw std::invalid_argument("DdManager: variable out of range");
    return var_to_level_[v.index];
  }
  VarId var_at_level(std::uint32_t lvl) const { return level_to_var_[lvl]; }

  Bdd bdd_false() { return Bdd(this, 0); }
  Bdd bdd_true() { return Bdd(this, 1); }
  Bdd var(VarId v) {
    std::uint32_t lvl = level_of(v);
    return Bdd(this, mk(lvl, 0, 1));
  }
  Bdd nvar(VarId v) {
    std::uint32_t lvl = level_of(v);
    return Bdd(this, mk(lvl, 1, 0));
  }

  Add add_const(ExtInt c) { return Add(this, make_terminal(c)); }
  Add add_zero() { return Add(this, 0); }
  Add add_one() { return Add(this, 1); }

  // ---- Boolean layer ----------------------------------------------------

  Bdd apply_bool(BoolOp op, Bdd f, Bdd g) {
    check(f); check(g);
    return Bdd(this, apply_bool_rec(op, f.id(), g.id()));
  }

  Bdd negate(Bdd f) {
    check(f);
    return Bdd(this, negate_rec(f.id()));
  }

  Bdd abstract_bool(Quant q, Bdd f, const std::vector<VarId>& vars) {
    check(f);
    std::uint32_t vs = intern_varset(vars);
    return Bdd(this, abstract_bool_rec(q, f.id(), vs));
  }

  // ---- Arithmetic layer --------------------------------------------------

  Add add_apply(AddOp op, Add g, Add h) {
    check(g); check(h);
    return Add(this, add_apply_rec(op, g.id(), h.id()));
  }

  Add add_ite(Add f, Add g, Add h) {
    check(f); check(g); check(h);
    if (!is_zero_one(f)) throw std::invalid_argument("add_ite: selector is not a 0-1 Add");
    return Add(this, add_ite_rec(f.id(), g.id(), h.id()));
  }

  Add add_ite(Bdd f, Add g, Add h) { return add_ite(bdd_to_01add(f), g, h); }

  Add add_abstract(AddAbs k, Add g, const std::vector<VarId>& vars) {
    check(g);
    std::uint32_t vs = intern_varset(vars);
    return Add(this, add_abstract_rec(k, g.id(), vs));
  }

  // ---- Bridges -----------------------------------------------------------

  // Shared node store: a Bdd already is its 0-1 Add.
  Add bdd_to_01add(Bdd f) {
    check(f);
    return Add(this, f.id());
  }

  Bdd add_to_bdd(Add g, TerminalPred pred) {
    check(g);
    NodeId thr = make_terminal(pred.threshold);
    return Bdd(this, add_to_bdd_rec(g.id(), pred.kind, thr, pred));
  }

  bool is_zero_one(Add f) {
    check(f);
    for (ExtInt t : add_terminal_values(f))
      if (t != ExtInt::of(0) && t != ExtInt::of(1)) return false;
    return true;
  }

  // ---- Renaming ----------------------------------------------------------

  // Simultaneous swap of disjoint variable pairs. Each pair must occupy
  // adjacent levels (the interleaved current/primed layout guarantees this).
  template <typename T>
  T rename_swap(T f, const std::vector<std::pair<VarId, VarId>>& pairs) {
    check(f);
    std::uint32_t ps = intern_pairset(pairs);
    return T(this, swap_rec(f.id(), ps));
  }

  // ---- Custom terminal-level binary apply ---------------------------------

  using BinaryTermFn = std::function<ExtInt(ExtInt, ExtInt)>;

  std::uint32_t register_custom_op(const std::string& name) {
    auto it = custom_ops_.find(name);
    if (it != custom_ops_.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(custom_ops_.size());
    custom_ops_.emplace(name, id);
    return id;
  }

  // Cached on (op_id, g, h, aux); fn must be a pure function determined by
  // (op_id, aux).
  Add add_apply_custom(std::uint32_t op_id, Add g, Add h, ExtInt aux,
                       const BinaryTermFn& fn) {
    check(g); check(h);
    NodeId aux_term = make_terminal(aux);
    return Add(this, custom_rec(op_id, g.id(), h.id(), aux_term, fn));
  }

  // ---- Inspection ----------------------------------------------------------

  std::vector<VarId> support(detail::DdRef f) {
    check(f);
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<bool> lvls(var_count_, false);
    support_rec(f.id(), seen, lvls);
    std::vector<VarId> out;
    for (std::uint32_t l = 0; l < var_count_; ++l)
      if (lvls[l]) out.push_back(level_to_var_[l]);
    return out;
  }

  ExtInt eval(detail::DdRef f, const std::vector<bool>& assignment_by_var) {
    check(f);
    if (assignment_by_var.size() != var_count_)
      throw std::invalid_argument("eval: assignment size mismatch");
    NodeId n = f.id();
    while (!is_terminal(n)) {
      const Node& nd = nodes_[n];
      n = assignment_by_var[level_to_var_[nd.level].index] ? nd.hi : nd.lo;
    }
    return term_values_[nodes_[n].lo];
  }

  bool eval_bool(Bdd f, const std::vector<bool>& a) { return eval(f, a) == ExtInt::of(1); }

  // Visits satisfying assignments over `support` in lexicographic order
  // (first listed variable most significant). `support` must be sorted by
  // level and cover the diagram's variables.
  void enumerate_sat(Bdd f, const std::vector<VarId>& support,
                     const std::function<void(const std::vector<bool>&)>& visit) {
    check(f);
    check_support(f, support);
    std::vector<bool> a(support.size(), false);
    enum_rec(f.id(), support, 0, a, visit);
  }

  std::vector<std::vector<bool>> enumerate_sat(Bdd f, const std::vector<VarId>& support) {
    std::vector<std::vector<bool>> out;
    enumerate_sat(f, support, [&](const std::vector<bool>& a) { out.push_back(a); });
    return out;
  }

  std::uint64_t sat_count(Bdd f, const std::vector<VarId>& support) {
    check(f);
    check_support(f, support);
    if (support.size() > 62)
      throw std::invalid_argument("sat_count: support too wide for a 64-bit count");
    std::unordered_map<NodeId, std::uint64_t> memo;
    return count_rec(f.id(), support, 0, memo);
  }

  std::vector<ExtInt> add_terminal_values(Add g) {
    check(g);
    std::vector<bool> seen(nodes_.size(), false);
    std::map<std::int64_t, ExtInt> vals;
    terms_rec(g.id(), seen, vals);
    std::vector<ExtInt> out;
    for (auto& [raw, v] : vals) out.push_back(v);
    return out;
  }

  std::size_t node_count() const { return nodes_.size(); }

  std::size_t dag_size(detail::DdRef f) {
    check(f);
    std::vector<bool> seen(nodes_.size(), false);
    return dag_rec(f.id(), seen);
  }

  void set_cache_enabled(bool on) { cache_enabled_ = on; }

  /// Drops every node and cache entry and re-creates the constants. All
  /// outstanding handles become invalid; only useful between independent
  /// solves on a reused manager.
  void reset() {
    nodes_.clear();
    term_values_.clear();
    term_lookup_.clear();
    unique_buckets_.assign(kInitialBuckets, 0);
    cache_.assign(kCacheSlots, CacheEntry{});
    varsets_.clear();
    varset_ids_.clear();
    pairsets_.clear();
    pairset_ids_.clear();
    make_terminal(ExtInt::of(0));
    make_terminal(ExtInt::of(1));
  }

  ExtInt terminal_value(NodeId n) const {
    if (!is_terminal(n)) throw std::invalid_argument("terminal_value: not a terminal");
    return term_values_[nodes_[n].lo];
  }

  bool is_terminal(NodeId n) const { return nodes_[n].level == kTermLevel; }
  std::uint32_t node_level(NodeId n) const { return nodes_[n].level; }
  NodeId node_lo(NodeId n) const { return nodes_[n].lo; }
  NodeId node_hi(NodeId n) const { return nodes_[n].hi; }

 private:
  static constexpr std::uint32_t kTermLevel = 0xFFFFFFFFu;
  static constexpr std::uint32_t kNoLevel = 0xFFFFFFFFu;
  static constexpr std::size_t kInitialBuckets = 1u << 16;
  static constexpr std::size_t kCacheSlots = 1u << 20;

  struct Node {
    std::uint32_t level;  // kTermLevel for terminals
    NodeId lo;            // terminal: index into term_values_
    NodeId hi;
  };

  enum CacheOp : std::uint32_t {
    kOpNone = 0,
    kOpAnd, kOpOr, kOpXor, kOpImp, kOpNot,
    kOpExists, kOpForall,
    kOpPlus, kOpMinus, kOpMax, kOpMin,
    kOpIte,
    kOpAbsMin, kOpAbsMax,
    kOpSwap,
    kOpToBdd,  // + pred kind packed into the tag
  };
  static constexpr std::uint32_t kOpCustomBase = 0x10000;  // custom ops start here

  struct CacheEntry {
    std::uint32_t op = kOpNone;
    std::uint32_t a = 0, b = 0, c = 0;
    std::uint32_t result = 0;
  };

  // ---- node store ----------------------------------------------------------

  static std::vector<VarId> identity_order(std::uint32_t n) {
    std::vector<VarId> o(n);
    for (std::uint32_t i = 0; i < n; ++i) o[i] = VarId{i};
    return o;
  }

  static std::uint64_t hash3(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t h = a * 0x9E3779B97F4A7C15ull;
    h ^= b + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    h *= 0xBF58476D1CE4E5B9ull;
    h ^= c + 0x94D049BB133111EBull + (h << 6) + (h >> 2);
    h *= 0x94D049BB133111EBull;
    h ^= h >> 29;
    return h;
  }

  NodeId insert_node(std::uint32_t level, NodeId lo, NodeId hi) {
    if (nodes_.size() * 10 >= unique_buckets_.size() * 7) rehash();
    std::size_t mask = unique_buckets_.size() - 1;
    std::size_t slot = hash3(level, lo, hi) & mask;
    while (unique_buckets_[slot] != 0) {
      NodeId cand = unique_buckets_[slot] - 1;
      const Node& n = nodes_[cand];
      if (n.level == level && n.lo == lo && n.hi == hi) return cand;
      slot = (slot + 1) & mask;
    }
    NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(Node{level, lo, hi});
    unique_buckets_[slot] = id + 1;
    return id;
  }

  void rehash() {
    std::vector<NodeId> fresh(unique_buckets_.size() * 2, 0);
    std::size_t mask = fresh.size() - 1;
    for (NodeId id = 0; id < nodes_.size(); ++id) {
      const Node& n = nodes_[id];
      std::size_t slot = hash3(n.level, n.lo, n.hi) & mask;
      while (fresh[slot] != 0) slot = (slot + 1) & mask;
      fresh[slot] = id + 1;
    }
    unique_buckets_.swap(fresh);
  }

  NodeId make_terminal(ExtInt v) {
    auto it = term_lookup_.find(v.raw());
    if (it != term_lookup_.end()) return it->second;
    std::uint32_t vidx = static_cast<std::uint32_t>(term_values_.size());
    term_values_.push_back(v);
    NodeId id = insert_node(kTermLevel, vidx, 0);
    term_lookup_.emplace(v.raw(), id);
    return id;
  }

  NodeId mk(std::uint32_t level, NodeId lo, NodeId hi) {
    if (lo == hi) return lo;
    return insert_node(level, lo, hi);
  }

  void check(const detail::DdRef& f) const {
    if (f.manager() != this)
      throw std::invalid_argument("dd: operand belongs to a different manager");
  }

  void check_support(Bdd f, const std::vector<VarId>& support) {
    for (std::size_t i = 1; i < support.size(); ++i)
      if (level_of(support[i - 1]) >= level_of(support[i]))
        throw std::invalid_argument("support must be sorted by level and duplicate-free");
    std::vector<VarId> sup = this->support(f);
    for (VarId v : sup)
      if (std::find(support.begin(), support.end(), v) == support.end())
        throw std::invalid_argument("support does not cover the diagram");
  }

  // ---- cache ---------------------------------------------------------------

  bool cache_get(std::uint32_t op, NodeId a, NodeId b, NodeId c, NodeId* out) {
    if (!cache_enabled_) return false;
    const CacheEntry& e = cache_[hash3((std::uint64_t(op) << 32) | a, b, c) & (kCacheSlots - 1)];
    if (e.op == op && e.a == a && e.b == b && e.c == c) {
      *out = e.result;
      return true;
    }
    return false;
  }

  void cache_put(std::uint32_t op, NodeId a, NodeId b, NodeId c, NodeId r) {
    if (!cache_enabled_) return;
    CacheEntry& e = cache_[hash3((std::uint64_t(op) << 32) | a, b, c) & (kCacheSlots - 1)];
    e = CacheEntry{op, a, b, c, r};
  }

  // ---- varset / pairset interning -------------------------------------------

  struct VarsetData {
    std::vector<std::uint32_t> levels;  // sorted
    std::vector<bool> mask;             // by level
  };

  std::uint32_t intern_varset(const std::vector<VarId>& vars) {
    std::vector<std::uint32_t> lvls;
    lvls.reserve(vars.size());
    for (VarId v : vars) lvls.push_back(level_of(v));
    std::sort(lvls.begin(), lvls.end());
    lvls.erase(std::unique(lvls.begin(), lvls.end()), lvls.end());
    auto it = varset_ids_.find(lvls);
    if (it != varset_ids_.end()) return it->second;
    VarsetData d;
    d.levels = lvls;
    d.mask.assign(var_count_, false);
    for (auto l : lvls) d.mask[l] = true;
    std::uint32_t id = static_cast<std::uint32_t>(varsets_.size());
    varsets_.push_back(std::move(d));
    varset_ids_.emplace(lvls, id);
    return id;
  }

  std::uint32_t intern_pairset(const std::vector<std::pair<VarId, VarId>>& pairs) {
    std::vector<std::uint32_t> starts;
    std::vector<bool> used(var_count_, false);
    for (auto& [a, b] : pairs) {
      std::uint32_t la = level_of(a), lb = level_of(b);
      if (la > lb) std::swap(la, lb);
      if (lb != la + 1)
        throw std::invalid_argument("rename_swap: pair does not occupy adjacent levels");
      if (used[la] || used[lb])
        throw std::invalid_argument("rename_swap: overlapping pairs");
      used[la] = used[lb] = true;
      starts.push_back(la);
    }
    std::sort(starts.begin(), starts.end());
    auto it = pairset_ids_.find(starts);
    if (it != pairset_ids_.end()) return it->second;
    VarsetData d;
    d.levels = starts;
    d.mask.assign(var_count_, false);
    for (auto l : starts) d.mask[l] = true;
    std::uint32_t id = static_cast<std::uint32_t>(pairsets_.size());
    pairsets_.push_back(std::move(d));
    pairset_ids_.emplace(starts, id);
    return id;
  }

  // ---- recursions ------------------------------------------------------------

  static std::uint32_t bool_op_tag(BoolOp op) {
    switch (op) {
      case BoolOp::And: return kOpAnd;
      case BoolOp::Or: return kOpOr;
      case BoolOp::Xor: return kOpXor;
      case BoolOp::Imp: return kOpImp;
    }
    return kOpNone;
  }

  bool bdd_terminal_bool(NodeId n, bool* out) const {
    if (!is_terminal(n)) return false;
    ExtInt v = term_values_[nodes_[n].lo];
    if (v == ExtInt::of(0)) { *out = false; return true; }
    if (v == ExtInt::of(1)) { *out = true; return true; }
    throw std::invalid_argument("boolean operation on a non-0-1 diagram");
  }

  NodeId apply_bool_rec(BoolOp op, NodeId f, NodeId g) {
    bool fb, gb;
    bool ft = bdd_terminal_bool(f, &fb), gt = bdd_terminal_bool(g, &gb);
    switch (op) {
      case BoolOp::And:
        if (ft) return fb ? g : 0;
        if (gt) return gb ? f : 0;
        if (f == g) return f;
        break;
      case BoolOp::Or:
        if (ft) return fb ? 1 : g;
        if (gt) return gb ? 1 : f;
        if (f == g) return f;
        break;
      case BoolOp::Xor:
        if (ft && gt) return (fb != gb) ? 1 : 0;
        if (f == g) return 0;
        if (ft) return fb ? negate_rec(g) : g;
        if (gt) return gb ? negate_rec(f) : f;
        break;
      case BoolOp::Imp:
        if (ft) return fb ? g : 1;
        if (gt) return gb ? 1 : negate_rec(f);
        if (f == g) return 1;
        break;
    }
    NodeId a = f, b = g;
    if (op != BoolOp::Imp && a > b) std::swap(a, b);
    std::uint32_t tag = bool_op_tag(op);
    NodeId r;
    if (cache_get(tag, a, b, 0, &r)) return r;
    std::uint32_t lf = nodes_[f].level, lg = nodes_[g].level;
    std::uint32_t top = std::min(lf, lg);
    NodeId f0 = lf == top ? nodes_[f].lo : f, f1 = lf == top ? nodes_[f].hi : f;
    NodeId g0 = lg == top ? nodes_[g].lo : g, g1 = lg == top ? nodes_[g].hi : g;
    r = mk(top, apply_bool_rec(op, f0, g0), apply_bool_rec(op, f1, g1));
    cache_put(tag, a, b, 0, r);
    return r;
  }

  NodeId negate_rec(NodeId f) {
    bool fb;
    if (bdd_terminal_bool(f, &fb)) return fb ? 0 : 1;
    NodeId r;
    if (cache_get(kOpNot, f, 0, 0, &r)) return r;
    Node n = nodes_[f];  // by value: the store may grow during recursion
    r = mk(n.level, negate_rec(n.lo), negate_rec(n.hi));
    cache_put(kOpNot, f, 0, 0, r);
    return r;
  }

  NodeId abstract_bool_rec(Quant q, NodeId f, std::uint32_t vs) {
    if (is_terminal(f)) return f;
    std::uint32_t tag = q == Quant::Exists ? kOpExists : kOpForall;
    NodeId r;
    if (cache_get(tag, f, vs, 0, &r)) return r;
    Node n = nodes_[f];  // by value: the store may grow during recursion
    NodeId lo = abstract_bool_rec(q, n.lo, vs);
    NodeId hi = abstract_bool_rec(q, n.hi, vs);
    if (varsets_[vs].mask[n.level])
      r = apply_bool_rec(q == Quant::Exists ? BoolOp::Or : BoolOp::And, lo, hi);
    else
      r = mk(n.level, lo, hi);
    cache_put(tag, f, vs, 0, r);
    return r;
  }

  static std::uint32_t add_op_tag(AddOp op) {
    switch (op) {
      case AddOp::Plus: return kOpPlus;
      case AddOp::Minus: return kOpMinus;
      case AddOp::Max: return kOpMax;
      case AddOp::Min: return kOpMin;
    }
    return kOpNone;
  }

  static ExtInt add_op_eval(AddOp op, ExtInt a, ExtInt b) {
    switch (op) {
      case AddOp::Plus: return a + b;
      case AddOp::Minus: return a - b;
      case AddOp::Max: return max(a, b);
      case AddOp::Min: return min(a, b);
    }
    return ExtInt::of(0);
  }

  NodeId add_apply_rec(AddOp op, NodeId f, NodeId g) {
    if (is_terminal(f) && is_terminal(g))
      return make_terminal(add_op_eval(op, term_values_[nodes_[f].lo], term_values_[nodes_[g].lo]));
    if ((op == AddOp::Max || op == AddOp::Min) && f == g) return f;
    NodeId a = f, b = g;
    if (op != AddOp::Minus && a > b) std::swap(a, b);
    std::uint32_t tag = add_op_tag(op);
    NodeId r;
    if (cache_get(tag, a, b, 0, &r)) return r;
    std::uint32_t lf = nodes_[f].level, lg = nodes_[g].level;
    std::uint32_t top = std::min(lf, lg);
    NodeId f0 = lf == top ? nodes_[f].lo : f, f1 = lf == top ? nodes_[f].hi : f;
    NodeId g0 = lg == top ? nodes_[g].lo : g, g1 = lg == top ? nodes_[g].hi : g;
    r = mk(top, add_apply_rec(op, f0, g0), add_apply_rec(op, f1, g1));
    cache_put(tag, a, b, 0, r);
    return r;
  }

  NodeId add_ite_rec(NodeId f, NodeId g, NodeId h) {
    bool fb;
    if (bdd_terminal_bool(f, &fb)) return fb ? g : h;
    if (g == h) return g;
    NodeId r;
    if (cache_get(kOpIte, f, g, h, &r)) return r;
    std::uint32_t lf = nodes_[f].level, lg = nodes_[g].level, lh = nodes_[h].level;
    std::uint32_t top = std::min(lf, std::min(lg, lh));
    NodeId f0 = lf == top ? nodes_[f].lo : f, f1 = lf == top ? nodes_[f].hi : f;
    NodeId g0 = lg == top ? nodes_[g].lo : g, g1 = lg == top ? nodes_[g].hi : g;
    NodeId h0 = lh == top ? nodes_[h].lo : h, h1 = lh == top ? nodes_[h].hi : h;
    r = mk(top, add_ite_rec(f0, g0, h0), add_ite_rec(f1, g1, h1));
    cache_put(kOpIte, f, g, h, r);
    return r;
  }

  NodeId add_abstract_rec(AddAbs k, NodeId f, std::uint32_t vs) {
    if (is_terminal(f)) return f;
    std::uint32_t tag = k == AddAbs::Min ? kOpAbsMin : kOpAbsMax;
    NodeId r;
    if (cache_get(tag, f, vs, 0, &r)) return r;
    Node n = nodes_[f];  // by value: the store may grow during recursion
    NodeId lo = add_abstract_rec(k, n.lo, vs);
    NodeId hi = add_abstract_rec(k, n.hi, vs);
    if (varsets_[vs].mask[n.level])
      r = add_apply_rec(k == AddAbs::Min ? AddOp::Min : AddOp::Max, lo, hi);
    else
      r = mk(n.level, lo, hi);
    cache_put(tag, f, vs, 0, r);
    return r;
  }

  NodeId add_to_bdd_rec(NodeId f, std::uint32_t kind, NodeId thr, const TerminalPred& pred) {
    if (is_terminal(f)) return pred(term_values_[nodes_[f].lo]) ? 1 : 0;
    std::uint32_t tag = kOpToBdd + (kind << 8);
    NodeId r;
    if (cache_get(tag, f, thr, 0, &r)) return r;
    Node n = nodes_[f];  // by value: the store may grow during recursion
    r = mk(n.level, add_to_bdd_rec(n.lo, kind, thr, pred), add_to_bdd_rec(n.hi, kind, thr, pred));
    cache_put(tag, f, thr, 0, r);
    return r;
  }

  // cofactor of f w.r.t. the two adjacent levels (s, s+1)
  NodeId cofactor2(NodeId f, std::uint32_t s, bool a, bool b) const {
    NodeId n = f;
    if (!is_terminal(n) && nodes_[n].level == s) n = a ? nodes_[n].hi : nodes_[n].lo;
    if (!is_terminal(n) && nodes_[n].level == s + 1) n = b ? nodes_[n].hi : nodes_[n].lo;
    return n;
  }

  NodeId swap_rec(NodeId f, std::uint32_t ps) {
    if (is_terminal(f)) return f;
    NodeId r;
    if (cache_get(kOpSwap, f, ps, 0, &r)) return r;
    Node n = nodes_[f];  // by value: the store may grow during recursion
    const VarsetData& d = pairsets_[ps];
    std::uint32_t lvl = n.level;
    bool at_pair = d.mask[lvl] || (lvl > 0 && d.mask[lvl - 1]);
    if (!at_pair) {
      r = mk(lvl, swap_rec(n.lo, ps), swap_rec(n.hi, ps));
    } else {
      std::uint32_t s = d.mask[lvl] ? lvl : lvl - 1;
      // g(x_s=a, x_{s+1}=b) = f(x_s=b, x_{s+1}=a)
      NodeId r00 = swap_rec(cofactor2(f, s, false, false), ps);
      NodeId r01 = swap_rec(cofactor2(f, s, true, false), ps);   // g(0,1) = f(1,0)
      NodeId r10 = swap_rec(cofactor2(f, s, false, true), ps);   // g(1,0) = f(0,1)
      NodeId r11 = swap_rec(cofactor2(f, s, true, true), ps);
      r = mk(s, mk(s + 1, r00, r01), mk(s + 1, r10, r11));
    }
    cache_put(kOpSwap, f, ps, 0, r);
    return r;
  }

  NodeId custom_rec(std::uint32_t op_id, NodeId f, NodeId g, NodeId aux, const BinaryTermFn& fn) {
    if (is_terminal(f) && is_terminal(g))
      return make_terminal(fn(term_values_[nodes_[f].lo], term_values_[nodes_[g].lo]));
    std::uint32_t tag = kOpCustomBase + op_id;
    NodeId r;
    if (cache_get(tag, f, g, aux, &r)) return r;
    std::uint32_t lf = nodes_[f].level, lg = nodes_[g].level;
    std::uint32_t top = std::min(lf, lg);
    NodeId f0 = lf == top ? nodes_[f].lo : f, f1 = lf == top ? nodes_[f].hi : f;
    NodeId g0 = lg == top ? nodes_[g].lo : g, g1 = lg == top ? nodes_[g].hi : g;
    r = mk(top, custom_rec(op_id, f0, g0, aux, fn), custom_rec(op_id, f1, g1, aux, fn));
    cache_put(tag, f, g, aux, r);
    return r;
  }

  void support_rec(NodeId f, std::vector<bool>& seen, std::vector<bool>& lvls) const {
    if (seen[f] || is_terminal(f)) return;
    seen[f] = true;
    lvls[nodes_[f].level] = true;
    support_rec(nodes_[f].lo, seen, lvls);
    support_rec(nodes_[f].hi, seen, lvls);
  }

  void terms_rec(NodeId f, std::vector<bool>& seen, std::map<std::int64_t, ExtInt>& vals) const {
    if (seen[f]) return;
    seen[f] = true;
    if (is_terminal(f)) {
      ExtInt v = term_values_[nodes_[f].lo];
      vals.emplace(v.raw(), v);
      return;
    }
    terms_rec(nodes_[f].lo, seen, vals);
    terms_rec(nodes_[f].hi, seen, vals);
  }

  std::size_t dag_rec(NodeId f, std::vector<bool>& seen) const {
    if (seen[f]) return 0;
    seen[f] = true;
    if (is_terminal(f)) return 1;
    return 1 + dag_rec(nodes_[f].lo, seen) + dag_rec(nodes_[f].hi, seen);
  }

  void enum_rec(NodeId f, const std::vector<VarId>& sup, std::size_t i, std::vector<bool>& a,
                const std::function<void(const std::vector<bool>&)>& visit) {
    if (f == 0) return;
    if (i == sup.size()) {
      visit(a);
      return;
    }
    std::uint32_t lvl = level_of(sup[i]);
    NodeId lo = f, hi = f;
    if (!is_terminal(f) && nodes_[f].level == lvl) {
      lo = nodes_[f].lo;
      hi = nodes_[f].hi;
    }
    a[i] = false;
    enum_rec(lo, sup, i + 1, a, visit);
    a[i] = true;
    enum_rec(hi, sup, i + 1, a, visit);
  }

  std::uint64_t count_rec(NodeId f, const std::vector<VarId>& sup, std::size_t i,
                          std::unordered_map<NodeId, std::uint64_t>& memo) {
    if (f == 0) return 0;
    std::uint32_t flvl = is_terminal(f) ? kTermLevel : nodes_[f].level;
    // skip support positions above f's top level
    std::size_t j = i;
    while (j < sup.size() && level_of(sup[j]) < flvl) ++j;
    std::uint64_t free_factor = 1ull << (j - i);
    if (is_terminal(f)) {
      if (f != 1) throw std::invalid_argument("sat_count: not a 0-1 diagram");
      return free_factor << (sup.size() - j);
    }
    auto it = memo.find(f);
    std::uint64_t sub;
    if (it != memo.end()) {
      sub = it->second;
    } else {
      sub = count_rec(nodes_[f].lo, sup, j + 1, memo) + count_rec(nodes_[f].hi, sup, j + 1, memo);
      memo.emplace(f, sub);
    }
    return free_factor * sub;
  }

  std::uint32_t var_count_;
  std::vector<VarId> level_to_var_;
  std::vector<std::uint32_t> var_to_level_;

  std::vector<Node> nodes_;
  std::vector<NodeId> unique_buckets_;
  std::vector<ExtInt> term_values_;
  std::unordered_map<std::int64_t, NodeId> term_lookup_;

  std::vector<CacheEntry> cache_;
  bool cache_enabled_ = true;

  std::vector<VarsetData> varsets_;
  std::map<std::vector<std::uint32_t>, std::uint32_t> varset_ids_;
  std::vector<VarsetData> pairsets_;
  std::map<std::vector<std::uint32_t>, std::uint32_t> pairset_ids_;

  std::map<std::string, std::uint32_t> custom_ops_;
};

inline Bdd Bdd::operator&(const Bdd& o) const { return mgr_->apply_bool(BoolOp::And, *this, o); }
inline Bdd Bdd::operator|(const Bdd& o) const { return mgr_->apply_bool(BoolOp::Or, *this, o); }
inline Bdd Bdd::operator^(const Bdd& o) const { return mgr_->apply_bool(BoolOp::Xor, *this, o); }
inline Bdd Bdd::operator!() const { return mgr_->negate(*this); }
inline Bdd Bdd::imp(const Bdd& o) const { return mgr_->apply_bool(BoolOp::Imp, *this, o); }
inline bool Bdd::is_true() const { return id_ == 1; }
inline bool Bdd::is_false() const { return id_ == 0; }

}  // namespace egsolve
