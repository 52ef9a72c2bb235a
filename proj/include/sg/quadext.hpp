#pragma once

#include <compare>
#include <cmath>
#include <cstdint>
#include <string>

#include "sg/errors.hpp"
#include "sg/rational.hpp"

namespace sg {

// True iff m is 0, 1, or a square-free positive integer.
inline bool is_square_free(std::int64_t m) {
  if (m < 0) return false;
  if (m < 2) return true;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % (p * p) == 0) return false;
  }
  return true;
}

// Element a + b*sqrt(m) of the real quadratic field Q(sqrt(m)), m square-free.
// Normal form: m in {0, 1} folds into the rational part, and b == 0 forces
// m == 0, so plain rationals compare equal no matter where they came from.
// Arithmetic never leaves the field and never takes a square root; sign
// decisions reduce to comparing a^2 against b^2 * m over Q.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(long long a) : a_(a) {}                    // NOLINT: implicit by design
  QuadExt(const Rational& a) : a_(a) {}              // NOLINT
  QuadExt(Rational a, Rational b, std::int64_t m) : a_(std::move(a)), b_(std::move(b)), m_(m) {
    normalize();
  }

  static QuadExt sqrt_of(std::int64_t m) { return QuadExt(Rational(0), Rational(1), m); }

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  std::int64_t radicand() const { return m_; }
  bool is_rational() const { return b_.is_zero(); }

  int sign() const {
    const int sa = a_.sign();
    const int sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: |a| vs |b|sqrt(m) decides, i.e. a^2 vs b^2 m. Equality
    // would make sqrt(m) rational, impossible for square-free m >= 2.
    const Rational lhs = a_ * a_;
    const Rational rhs = b_ * b_ * m_;
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
  }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  QuadExt operator-() const { return QuadExt(-a_, -b_, m_); }

  QuadExt& operator+=(const QuadExt& o) {
    m_ = joint_radicand(o);
    a_ += o.a_;
    b_ += o.b_;
    normalize();
    return *this;
  }
  QuadExt& operator-=(const QuadExt& o) {
    m_ = joint_radicand(o);
    a_ -= o.a_;
    b_ -= o.b_;
    normalize();
    return *this;
  }
  QuadExt& operator*=(const QuadExt& o) {
    const std::int64_t m = joint_radicand(o);
    const Rational a = a_ * o.a_ + b_ * o.b_ * m;
    const Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = a;
    b_ = b;
    m_ = m;
    normalize();
    return *this;
  }

  QuadExt inverse() const {
    if (is_zero()) fail(Errc::division_by_zero, "QuadExt: inverse of zero");
    if (b_.is_zero()) return QuadExt(Rational(1) / a_);
    // 1/(a + b sqrt(m)) = (a - b sqrt(m)) / (a^2 - b^2 m); the denominator is
    // a nonzero rational for square-free m.
    const Rational n = a_ * a_ - b_ * b_ * m_;
    return QuadExt(a_ / n, -b_ / n, m_);
  }

  QuadExt& operator/=(const QuadExt& o) { return *this *= o.inverse(); }

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.m_ == y.m_;
  }
  friend std::strong_ordering operator<=>(const QuadExt& x, const QuadExt& y) {
    const int s = (x - y).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  double to_double() const {
    double v = sg::to_double(a_);
    if (!b_.is_zero()) v += sg::to_double(b_) * std::sqrt(static_cast<double>(m_));
    return v;
  }

 private:
  void normalize() {
    if (m_ == 1) {
      a_ += b_;
      b_ = 0;
    }
    if (m_ == 0) b_ = 0;
    if (b_.is_zero()) m_ = 0;
  }

  std::int64_t joint_radicand(const QuadExt& o) const {
    if (m_ == 0) return o.m_;
    if (o.m_ == 0 || o.m_ == m_) return m_;
    fail(Errc::backend_mismatch, "QuadExt: mixed radicands " + std::to_string(m_) + " and " +
                                     std::to_string(o.m_));
  }

  Rational a_{0};
  Rational b_{0};
  std::int64_t m_ = 0;
};

inline double to_double(const QuadExt& x) { return x.to_double(); }
inline int sign_of(const QuadExt& x) { return x.sign(); }

}  // namespace sg
