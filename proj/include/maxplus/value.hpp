#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <ostream>

namespace maxplus {

using Weight = std::int64_t;

// One element of the max-plus semiring: a finite 64-bit weight, or the
// neutral element eps = -infinity. eps is a tagged state, never a sentinel
// weight, so no arithmetic identity can be faked by overflow.
class Value {
 public:
  constexpr Value() = default;

  static constexpr Value eps() { return Value(); }
  static constexpr Value of(Weight w) { return Value(true, w); }

  constexpr bool finite() const { return finite_; }

  // Weight of a finite value. Calling this on eps is a contract violation.
  constexpr Weight get() const {
    assert(finite_);
    return w_;
  }

  // Semiring addition: max, with eps as the neutral element.
  friend constexpr Value operator+(Value x, Value y) {
    if (!x.finite_) return y;
    if (!y.finite_) return x;
    return of(x.w_ > y.w_ ? x.w_ : y.w_);
  }

  // Semiring multiplication: weight addition, with eps absorbing.
  friend constexpr Value operator*(Value x, Value y) {
    if (!x.finite_ || !y.finite_) return eps();
    assert(y.w_ <= 0 || x.w_ <= std::numeric_limits<Weight>::max() - y.w_);
    assert(y.w_ >= 0 || x.w_ >= std::numeric_limits<Weight>::min() - y.w_);
    return of(x.w_ + y.w_);
  }

  friend constexpr Value& operator+=(Value& x, Value y) { return x = x + y; }
  friend constexpr Value& operator*=(Value& x, Value y) { return x = x * y; }

  friend constexpr bool operator==(Value x, Value y) {
    if (x.finite_ != y.finite_) return false;
    return !x.finite_ || x.w_ == y.w_;
  }
  friend constexpr bool operator!=(Value x, Value y) { return !(x == y); }

  // Total order with eps as the bottom element.
  friend constexpr bool operator<(Value x, Value y) {
    if (!y.finite_) return false;
    if (!x.finite_) return true;
    return x.w_ < y.w_;
  }
  friend constexpr bool operator<=(Value x, Value y) { return !(y < x); }
  friend constexpr bool operator>(Value x, Value y) { return y < x; }
  friend constexpr bool operator>=(Value x, Value y) { return !(x < y); }

  friend std::ostream& operator<<(std::ostream& os, Value v) {
    if (v.finite_) return os << v.w_;
    return os << "-inf";
  }

 private:
  constexpr Value(bool finite, Weight w) : finite_(finite), w_(w) {}

  bool finite_ = false;
  Weight w_ = 0;
};

inline constexpr Value eps = Value::eps();

}  // namespace maxplus
