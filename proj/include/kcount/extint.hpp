#ifndef KCOUNT_EXTINT_HPP
#define KCOUNT_EXTINT_HPP

#include <gmpxx.h>

#include <cassert>
#include <compare>
#include <string>

namespace kcount {

// Arbitrary-precision integer extended with -inf and +inf.
// Table entries only ever take values in {0,1,...} u {+inf}; -inf shows up
// in tau and in the boundary reads of the recurrence.
class ExtInt {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  ExtInt() : kind_(Kind::Finite), v_(0) {}
  explicit ExtInt(mpz_class v) : kind_(Kind::Finite), v_(std::move(v)) {}
  explicit ExtInt(long v) : kind_(Kind::Finite), v_(v) {}

  static ExtInt neg_inf() { return ExtInt(Kind::NegInf); }
  static ExtInt pos_inf() { return ExtInt(Kind::PosInf); }
  static ExtInt zero() { return ExtInt(0L); }

  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  Kind kind() const { return kind_; }

  const mpz_class& value() const {
    assert(is_finite());
    return v_;
  }

  // inf + w = inf, -inf + w = -inf.
  ExtInt plus(const mpz_class& w) const {
    if (!is_finite()) return *this;
    return ExtInt(mpz_class(v_ + w));
  }

  friend int cmp(const ExtInt& a, const ExtInt& b) {
    int ka = static_cast<int>(a.kind_) - 1;  // -1, 0, +1
    int kb = static_cast<int>(b.kind_) - 1;
    if (ka != 0 || kb != 0) return (ka > kb) - (ka < kb);
    return ::cmp(a.v_, b.v_);
  }

  friend bool operator==(const ExtInt& a, const ExtInt& b) { return cmp(a, b) == 0; }
  friend bool operator<(const ExtInt& a, const ExtInt& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const ExtInt& a, const ExtInt& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const ExtInt& a, const ExtInt& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const ExtInt& a, const ExtInt& b) { return cmp(a, b) >= 0; }

  friend const ExtInt& max(const ExtInt& a, const ExtInt& b) { return a < b ? b : a; }
  friend const ExtInt& min(const ExtInt& a, const ExtInt& b) { return b < a ? b : a; }

  std::string str() const {
    switch (kind_) {
      case Kind::NegInf: return "-inf";
      case Kind::PosInf: return "+inf";
      default: return v_.get_str();
    }
  }

 private:
  explicit ExtInt(Kind k) : kind_(k), v_(0) {}

  Kind kind_;
  mpz_class v_;
};

}  // namespace kcount

#endif  // KCOUNT_EXTINT_HPP
