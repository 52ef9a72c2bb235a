#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sg/field.hpp"

namespace sg {

// Point of the left module F^2: scalars act on the left, lambda*(x, y) =
// (lambda*x, lambda*y). Over C this is the usual plane; over H the side
// matters and every formula below is written for the left action.
template <typename T>
struct Point {
  Quaternion<T> x;
  Quaternion<T> y;

  friend bool operator==(const Point&, const Point&) = default;

  friend Point operator-(const Point& p, const Point& q) { return {p.x - q.x, p.y - q.y}; }
  friend Point operator+(const Point& p, const Point& q) { return {p.x + q.x, p.y + q.y}; }
};

template <typename T>
Point<T> left_mul(const Quaternion<T>& s, const Point<T>& p) {
  return {s * p.x, s * p.y};
}

// Hermitian inner product <u, v> = u.x conj(v.x) + u.y conj(v.y). Linear on
// the left in u: <s u, v> = s <u, v>.
template <typename T>
Quaternion<T> inner(const Point<T>& u, const Point<T>& v) {
  return u.x * conj(v.x) + u.y * conj(v.y);
}

template <typename T>
T norm_sq(const Point<T>& p) {
  return norm_sq(p.x) + norm_sq(p.y);
}

// Canonical line form: y = x*m + c (slope multiplies x on the right; with
// the left scalar action this is what stays invariant under lambda*(x, y)),
// or the vertical x = x0.
template <typename T>
struct Line {
  enum class Kind { slope, vertical };

  Kind kind = Kind::slope;
  Quaternion<T> m;   // used when kind == slope
  Quaternion<T> c;   // used when kind == slope
  Quaternion<T> x0;  // used when kind == vertical

  static Line slope_form(Quaternion<T> m, Quaternion<T> c) {
    Line l;
    l.kind = Kind::slope;
    l.m = std::move(m);
    l.c = std::move(c);
    return l;
  }
  static Line vertical_form(Quaternion<T> x0) {
    Line l;
    l.kind = Kind::vertical;
    l.x0 = std::move(x0);
    return l;
  }

  bool vertical() const { return kind == Kind::vertical; }

  friend bool operator==(const Line& a, const Line& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Kind::vertical) return a.x0 == b.x0;
    return a.m == b.m && a.c == b.c;
  }
};

namespace detail {

template <typename T>
int compare_scalar(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

template <typename T>
int compare_quat(const Quaternion<T>& p, const Quaternion<T>& q) {
  if (int r = compare_scalar(p.a, q.a)) return r;
  if (int r = compare_scalar(p.b, q.b)) return r;
  if (int r = compare_scalar(p.c, q.c)) return r;
  return compare_scalar(p.d, q.d);
}

}  // namespace detail

// Strict ordering on canonical forms; verticals sort before slope lines.
// Only meaningful for exact T, where equal lines have equal forms.
template <typename T>
bool line_less(const Line<T>& a, const Line<T>& b) {
  if (a.kind != b.kind) return a.vertical();
  if (a.vertical()) return detail::compare_quat(a.x0, b.x0) < 0;
  if (int r = detail::compare_quat(a.m, b.m)) return r < 0;
  return detail::compare_quat(a.c, b.c) < 0;
}

// Line through two distinct points. For p = (px, py), q = (qx, qy) with
// px != qx the slope solves both py = px*m + c and qy = qx*m + c, giving
// m = (px - qx)^-1 (py - qy); the inverse must sit on the left over H.
template <typename T>
Line<T> line_through(const Point<T>& p, const Point<T>& q) {
  if (p == q) fail(Errc::degenerate_pair, "line_through: points coincide");
  if (p.x == q.x) return Line<T>::vertical_form(p.x);
  const Quaternion<T> m = inverse(p.x - q.x) * (p.y - q.y);
  const Quaternion<T> c = p.y - p.x * m;
  return Line<T>::slope_form(m, c);
}

// Anchor point and direction vector of a line: slope lines pass through
// (0, c) with direction (1, m), verticals through (x0, 0) with direction
// (0, 1). Every point of the line is anchor + lambda*dir, lambda from F.
template <typename T>
std::pair<Point<T>, Point<T>> anchor_direction(const Line<T>& l) {
  const Quaternion<T> zero{};
  const Quaternion<T> one = Quaternion<T>::real(T(1));
  if (l.vertical()) return {Point<T>{l.x0, zero}, Point<T>{zero, one}};
  return {Point<T>{zero, l.c}, Point<T>{one, l.m}};
}

// Coefficient lambda minimizing |w - lambda*d|^2 for the left action:
// lambda* = <w, d> / |d|^2. Completing the square gives
// |w - lambda d|^2 = |w|^2 - |<w,d>|^2/|d|^2 + |lambda - lambda*|^2 |d|^2,
// which also holds over H since real |d|^2 is central.
template <typename T>
Quaternion<T> minimizing_coefficient(const Point<T>& w, const Point<T>& d) {
  return inner(w, d) / norm_sq(d);
}

template <typename T>
Quaternion<T> lambda_star(const Point<T>& p, const Line<T>& l) {
  const auto [anchor, dir] = anchor_direction(l);
  return minimizing_coefficient(p - anchor, dir);
}

// Squared Euclidean distance from p to the point set of l, as an element of
// T (exact over QuadExt). Never takes a square root. The float path computes
// the residual w - lambda* d componentwise: the closed form
// |w|^2 - |<w,d>|^2/|d|^2 cancels catastrophically near zero, flooring
// computed distances at ulp(|w|^2) instead of (ulp |w|)^2.
template <typename T>
T dist_sq_point_line(const Point<T>& p, const Line<T>& l) {
  const auto [anchor, dir] = anchor_direction(l);
  const Point<T> w = p - anchor;
  if constexpr (scalar_traits<T>::is_exact) {
    return norm_sq(w) - norm_sq(inner(w, dir)) / norm_sq(dir);
  } else {
    return norm_sq(w - left_mul(minimizing_coefficient(w, dir), dir));
  }
}

template <typename T>
Point<T> foot_of(const Point<T>& p, const Line<T>& l) {
  const auto [anchor, dir] = anchor_direction(l);
  return anchor + left_mul(minimizing_coefficient(p - anchor, dir), dir);
}

// Membership test. Exact: substitute into the canonical form. Float: the
// distance to the line must be at most the absolute tolerance eps.
template <typename T>
bool on_line(const Point<T>& p, const Line<T>& l, double eps = 0.0) {
  if constexpr (scalar_traits<T>::is_exact) {
    if (l.vertical()) return p.x == l.x0;
    return p.y == p.x * l.m + l.c;
  } else {
    return dist_sq_point_line(p, l) <= eps * eps;
  }
}

// Gram determinant |u|^2 |v|^2 - |<u,v>|^2 of u = q - p, v = r - p. Zero
// exactly when the three points are collinear; symmetric in all three
// points, so the float predicate does not depend on which one is the apex.
template <typename T>
T gram_det(const Point<T>& p, const Point<T>& q, const Point<T>& r) {
  const Point<T> u = q - p;
  const Point<T> v = r - p;
  return norm_sq(u) * norm_sq(v) - norm_sq(inner(u, v));
}

template <typename T>
bool collinear(const Point<T>& p, const Point<T>& q, const Point<T>& r, double eps = 0.0) {
  if constexpr (scalar_traits<T>::is_exact) {
    return gram_det(p, q, r) == T(0);
  } else {
    const double side =
        std::max({norm_sq(Point<T>(q - p)), norm_sq(Point<T>(r - p)), norm_sq(Point<T>(r - q))});
    return gram_det(p, q, r) <= eps * eps * side;
  }
}

// A validated point list over C or H. For the float backend eps is the
// absolute incidence tolerance tol_rel * diameter(S); exact sets keep eps = 0
// and sqrt_m records the radicand declared by the source file.
template <typename T>
struct PointSet {
  FieldTag field = FieldTag::C;
  std::vector<Point<T>> points;
  std::int64_t sqrt_m = 0;
  double tol_rel = kDefaultTolRel;
  double eps = 0.0;

  int size() const { return static_cast<int>(points.size()); }
};

template <typename T>
double bounding_diameter(const std::vector<Point<T>>& pts) {
  if (pts.size() < 2) return 0.0;
  double lo[8], hi[8];
  std::fill(std::begin(lo), std::end(lo), 0.0);
  std::fill(std::begin(hi), std::end(hi), 0.0);
  bool first = true;
  for (const auto& p : pts) {
    const double comp[8] = {to_double(p.x.a), to_double(p.x.b), to_double(p.x.c),
                            to_double(p.x.d), to_double(p.y.a), to_double(p.y.b),
                            to_double(p.y.c), to_double(p.y.d)};
    for (int k = 0; k < 8; ++k) {
      if (first || comp[k] < lo[k]) lo[k] = comp[k];
      if (first || comp[k] > hi[k]) hi[k] = comp[k];
    }
    first = false;
  }
  double s = 0.0;
  for (int k = 0; k < 8; ++k) s += (hi[k] - lo[k]) * (hi[k] - lo[k]);
  return std::sqrt(s);
}

// Validates and packages a point list: coordinates must live in the declared
// field, and duplicates (exact) or near-duplicates within eps (float) are
// rejected so that line_through never sees a degenerate pair later.
template <typename T>
PointSet<T> make_point_set(FieldTag field, std::vector<Point<T>> pts, std::int64_t sqrt_m = 0,
                           double tol_rel = kDefaultTolRel) {
  if (field == FieldTag::C) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!pts[i].x.is_complex() || !pts[i].y.is_complex())
        fail(Errc::field_mismatch,
             "point " + std::to_string(i) + " has j/k components but the field is C");
    }
  }
  PointSet<T> s;
  s.field = field;
  s.sqrt_m = sqrt_m;
  s.tol_rel = tol_rel;
  if constexpr (!scalar_traits<T>::is_exact) {
    s.eps = tol_rel * bounding_diameter(pts);
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      bool dup;
      if constexpr (scalar_traits<T>::is_exact) {
        dup = pts[i] == pts[j];
      } else {
        dup = norm_sq(Point<T>(pts[i] - pts[j])) <= s.eps * s.eps;
      }
      if (dup)
        fail(Errc::invalid_argument, "points " + std::to_string(i) + " and " + std::to_string(j) +
                                         " coincide (within tolerance)");
    }
  }
  s.points = std::move(pts);
  return s;
}

}  // namespace sg
