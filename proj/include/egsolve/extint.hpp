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
#include <limits>
#include <stdexcept>
#include <string>

namespace egsolve {

/// Integers extended with -inf and +inf. Terminal values of ADDs.
/// The infinities are distinguished sentinels, not extreme integers;
/// finite arithmetic is overflow-checked.
class ExtInt {
 public:
  constexpr ExtInt() : v_(0) {}

  static constexpr ExtInt of(std::int64_t v) { return ExtInt(check_range(v)); }
  static constexpr ExtInt pos_inf() { return ExtInt(kPos); }
  static constexpr ExtInt neg_inf() { return ExtInt(kNeg); }

  constexpr bool is_pos_inf() const { return v_ == kPos; }
  constexpr bool is_neg_inf() const { return v_ == kNeg; }
  constexpr bool is_finite() const { return v_ != kPos && v_ != kNeg; }

  constexpr std::int64_t value() const {
    if (!is_finite()) throw std::domain_error("ExtInt: value() on infinity");
    return v_;
  }

  /// Raw payload; infinities map to the sentinel extremes. Usable as a map key.
  constexpr std::int64_t raw() const { return v_; }
  static constexpr ExtInt from_raw(std::int64_t r) { return ExtInt(r); }

  friend constexpr bool operator==(ExtInt a, ExtInt b) { return a.v_ == b.v_; }
  friend constexpr bool operator!=(ExtInt a, ExtInt b) { return a.v_ != b.v_; }
  // Total order with -inf < finite < +inf.
  friend constexpr bool operator<(ExtInt a, ExtInt b) { return a.v_ < b.v_; }
  friend constexpr bool operator<=(ExtInt a, ExtInt b) { return a.v_ <= b.v_; }
  friend constexpr bool operator>(ExtInt a, ExtInt b) { return a.v_ > b.v_; }
  friend constexpr bool operator>=(ExtInt a, ExtInt b) { return a.v_ >= b.v_; }

  friend ExtInt operator+(ExtInt a, ExtInt b) {
    if (a.is_pos_inf()) {
      if (b.is_neg_inf()) throw std::domain_error("ExtInt: (+inf) + (-inf)");
      return pos_inf();
    }
    if (a.is_neg_inf()) {
      if (b.is_pos_inf()) throw std::domain_error("ExtInt: (-inf) + (+inf)");
      return neg_inf();
    }
    if (b.is_pos_inf()) return pos_inf();
    if (b.is_neg_inf()) return neg_inf();
    std::int64_t r;
    if (__builtin_add_overflow(a.v_, b.v_, &r))
      throw std::overflow_error("ExtInt: addition overflow");
    return of(r);
  }

  friend ExtInt operator-(ExtInt a, ExtInt b) {
    if (a.is_pos_inf()) {
      if (b.is_pos_inf()) throw std::domain_error("ExtInt: (+inf) - (+inf)");
      return pos_inf();
    }
    if (a.is_neg_inf()) {
      if (b.is_neg_inf()) throw std::domain_error("ExtInt: (-inf) - (-inf)");
      return neg_inf();
    }
    if (b.is_pos_inf()) return neg_inf();
    if (b.is_neg_inf()) return pos_inf();
    std::int64_t r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r))
      throw std::overflow_error("ExtInt: subtraction overflow");
    return of(r);
  }

  friend constexpr ExtInt max(ExtInt a, ExtInt b) { return a < b ? b : a; }
  friend constexpr ExtInt min(ExtInt a, ExtInt b) { return a < b ? a : b; }

  std::string str() const {
    if (is_pos_inf()) return "inf";
    if (is_neg_inf()) return "-inf";
    return std::to_string(v_);
  }

 private:
  static constexpr std::int64_t kPos = std::numeric_limits<std::int64_t>::max();
  static constexpr std::int64_t kNeg = std::numeric_limits<std::int64_t>::min();

  static constexpr std::int64_t check_range(std::int64_t v) {
    if (v == kPos || v == kNeg)
      throw std::overflow_error("ExtInt: finite value collides with sentinel");
    return v;
  }

  constexpr explicit ExtInt(std::int64_t v) : v_(v) {}
  std::int64_t v_;
};

}  // namespace egsolve
