#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "sg/errors.hpp"
#include "sg/quadext.hpp"
#include "sg/quaternion.hpp"

namespace sg {

enum class FieldTag { C, H };

inline std::string field_name(FieldTag f) { return f == FieldTag::C ? "C" : "H"; }

inline FieldTag field_from_name(const std::string& s) {
  if (s == "C") return FieldTag::C;
  if (s == "H") return FieldTag::H;
  fail(Errc::parse_error, "unknown field '" + s + "' (expected C or H)");
}

// Real dimensions of one coordinate: C sits in R^2, H in R^4.
inline int real_dims(FieldTag f) { return f == FieldTag::C ? 2 : 4; }

inline double to_double(double x) { return x; }

template <typename T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  static const char* backend_name() { return "float"; }
  // sqrt(3)/2, the height factor of a unit equilateral triangle.
  static double half_sqrt3(std::int64_t /*sqrt_m*/) { return std::sqrt(3.0) / 2.0; }
};

template <>
struct scalar_traits<QuadExt> {
  static constexpr bool is_exact = true;
  static const char* backend_name() { return "exact"; }
  static QuadExt half_sqrt3(std::int64_t sqrt_m) {
    if (sqrt_m != 3)
      fail(Errc::backend_mismatch,
           "sqrt(3)/2 is not representable in Q(sqrt(" + std::to_string(sqrt_m) + "))");
    return QuadExt(Rational(0), Rational(1, 2), 3);
  }
};

template <typename T>
Quaternion<double> to_float(const Quaternion<T>& q) {
  return Quaternion<double>(to_double(q.a), to_double(q.b), to_double(q.c), to_double(q.d));
}

inline constexpr double kDefaultTolRel = 1e-9;

}  // namespace sg
