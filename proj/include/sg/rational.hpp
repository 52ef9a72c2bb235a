#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace sg {

// Arbitrary-precision rational. boost keeps values reduced with a positive
// denominator, which is the canonical form the text grammar relies on.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

inline int sign_of(const Rational& q) { return q.sign(); }

}  // namespace sg
