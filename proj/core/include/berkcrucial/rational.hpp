#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>

namespace berk {

using ZZ = mpz_class;
using QQ = mpq_class;

/// p-adic valuation of a nonzero integer.
long padic_val(const ZZ& n, long p);

/// p-adic valuation of a nonzero rational.
long padic_val(const QQ& q, long p);

/// q mod p^k for a p-integral rational q (denominator prime to p), as an
/// integer representative in [0, p^k).  k <= 0 yields 0.
ZZ mod_prime_power(const QQ& q, long p, long k);

/// Inverse of a mod m (gcd(a, m) = 1).
ZZ mod_inverse(const ZZ& a, const ZZ& m);

QQ parse_rational(const std::string& s);
std::string rational_str(const QQ& q);

/// A rational number extended with +infinity (the valuation of 0).
class ExtValue {
 public:
  ExtValue() : inf_(true) {}
  ExtValue(QQ v) : inf_(false), v_(std::move(v)) {}
  ExtValue(long v) : inf_(false), v_(v) {}
  static ExtValue infinity() { return ExtValue(); }

  bool is_infinity() const { return inf_; }
  const QQ& value() const {
    if (inf_) throw std::logic_error("ExtValue: +infinity has no finite value");
    return v_;
  }

  ExtValue operator+(const ExtValue& o) const {
    if (inf_ || o.inf_) return infinity();
    return ExtValue(v_ + o.v_);
  }
  ExtValue operator-() const {
    if (inf_) throw std::logic_error("ExtValue: cannot negate +infinity");
    return ExtValue(-v_);
  }
  ExtValue operator*(const QQ& c) const {
    if (inf_) return infinity();
    return ExtValue(v_ * c);
  }

  bool operator==(const ExtValue& o) const {
    if (inf_ != o.inf_) return false;
    return inf_ || v_ == o.v_;
  }
  bool operator<(const ExtValue& o) const {
    if (inf_) return false;
    if (o.inf_) return true;
    return v_ < o.v_;
  }
  bool operator<=(const ExtValue& o) const { return *this < o || *this == o; }
  bool operator>(const ExtValue& o) const { return o < *this; }
  bool operator>=(const ExtValue& o) const { return o <= *this; }

  std::string str() const { return inf_ ? "inf" : rational_str(v_); }

 private:
  bool inf_;
  QQ v_;
};

inline ExtValue min(const ExtValue& a, const ExtValue& b) { return a < b ? a : b; }
inline ExtValue max(const ExtValue& a, const ExtValue& b) { return a < b ? b : a; }

inline QQ qq(long num, long den = 1) { QQ q(num, den); q.canonicalize(); return q; }

}  // namespace berk
