#pragma once

#include "sg/errors.hpp"

namespace sg {

// Quaternion a + bi + cj + dk over a real component type T (double, or
// QuadExt for exact work). Complex numbers are the c == d == 0 subring.
// Multiplication follows the Hamilton rules i*j = k, j*k = i, k*i = j.
template <typename T>
struct Quaternion {
  T a{0};
  T b{0};
  T c{0};
  T d{0};

  Quaternion() = default;
  Quaternion(T a_, T b_, T c_, T d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

  static Quaternion real(T v) { return Quaternion(std::move(v), T(0), T(0), T(0)); }
  static Quaternion complex(T re, T im) { return Quaternion(std::move(re), std::move(im), T(0), T(0)); }

  bool is_zero() const { return a == T(0) && b == T(0) && c == T(0) && d == T(0); }
  bool is_real() const { return b == T(0) && c == T(0) && d == T(0); }
  bool is_complex() const { return c == T(0) && d == T(0); }

  friend bool operator==(const Quaternion&, const Quaternion&) = default;

  Quaternion operator-() const { return Quaternion(-a, -b, -c, -d); }

  Quaternion& operator+=(const Quaternion& o) {
    a += o.a;
    b += o.b;
    c += o.c;
    d += o.d;
    return *this;
  }
  Quaternion& operator-=(const Quaternion& o) {
    a -= o.a;
    b -= o.b;
    c -= o.c;
    d -= o.d;
    return *this;
  }

  friend Quaternion operator+(Quaternion x, const Quaternion& y) { return x += y; }
  friend Quaternion operator-(Quaternion x, const Quaternion& y) { return x -= y; }

  friend Quaternion operator*(const Quaternion& x, const Quaternion& y) {
    return Quaternion(x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d,
                      x.a * y.b + x.b * y.a + x.c * y.d - x.d * y.c,
                      x.a * y.c - x.b * y.d + x.c * y.a + x.d * y.b,
                      x.a * y.d + x.b * y.c - x.c * y.b + x.d * y.a);
  }
  Quaternion& operator*=(const Quaternion& o) { return *this = *this * o; }

  // Real scalars are central, so scaling needs no side convention.
  friend Quaternion operator*(const T& s, const Quaternion& q) {
    return Quaternion(s * q.a, s * q.b, s * q.c, s * q.d);
  }
  friend Quaternion operator/(const Quaternion& q, const T& s) {
    return Quaternion(q.a / s, q.b / s, q.c / s, q.d / s);
  }
};

template <typename T>
Quaternion<T> conj(const Quaternion<T>& q) {
  return Quaternion<T>(q.a, -q.b, -q.c, -q.d);
}

template <typename T>
T norm_sq(const Quaternion<T>& q) {
  return q.a * q.a + q.b * q.b + q.c * q.c + q.d * q.d;
}

template <typename T>
Quaternion<T> inverse(const Quaternion<T>& q) {
  if (q.is_zero()) fail(Errc::division_by_zero, "Quaternion: inverse of zero");
  return conj(q) / norm_sq(q);
}

}  // namespace sg
