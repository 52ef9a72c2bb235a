#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "sg/incidence.hpp"
#include "sg/plane.hpp"

namespace sg {

// Two finite scalar lists forming the product set A x B in F^2.
template <typename T>
struct GridSpec {
  FieldTag field = FieldTag::C;
  std::vector<Quaternion<T>> a;
  std::vector<Quaternion<T>> b;
  std::int64_t sqrt_m = 0;
};

namespace detail {

template <typename T>
void require_distinct(const std::vector<Quaternion<T>>& xs, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (xs[i] == xs[j])
        fail(Errc::invalid_argument, std::string(what) + ": entries " + std::to_string(i) +
                                         " and " + std::to_string(j) + " coincide");
}

template <typename T>
void require_complex(const std::vector<Quaternion<T>>& xs, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!xs[i].is_complex())
      fail(Errc::field_mismatch,
           std::string(what) + ": entry " + std::to_string(i) + " has j/k components");
}

}  // namespace detail

template <typename T>
GridSpec<T> make_grid_spec(FieldTag field, std::vector<Quaternion<T>> a,
                           std::vector<Quaternion<T>> b, std::int64_t sqrt_m = 0) {
  if (a.size() < 2 || b.size() < 2)
    fail(Errc::invalid_argument, "grid: both factors need at least 2 scalars");
  detail::require_distinct(a, "grid factor A");
  detail::require_distinct(b, "grid factor B");
  if (field == FieldTag::C) {
    detail::require_complex(a, "grid factor A");
    detail::require_complex(b, "grid factor B");
  }
  return GridSpec<T>{field, std::move(a), std::move(b), sqrt_m};
}

// Product point set, row major: index i*|B| + j holds (a_i, b_j).
template <typename T>
PointSet<T> grid_point_set(const GridSpec<T>& g, double tol_rel = kDefaultTolRel) {
  std::vector<Point<T>> pts;
  pts.reserve(g.a.size() * g.b.size());
  for (const auto& x : g.a)
    for (const auto& y : g.b) pts.push_back({x, y});
  return make_point_set(g.field, std::move(pts), g.sqrt_m, tol_rel);
}

// Closest pair of a scalar list by |x_i - x_j|^2; ties take the
// lexicographically smallest (i, j). furthest_pair mirrors it.
template <typename T>
std::pair<int, int> closest_pair(const std::vector<Quaternion<T>>& xs) {
  if (xs.size() < 2) fail(Errc::too_few_points, "closest_pair: need at least 2 scalars");
  std::pair<int, int> best{0, 1};
  T bd = norm_sq(Quaternion<T>(xs[0] - xs[1]));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const T d = norm_sq(Quaternion<T>(xs[i] - xs[j]));
      if (d < bd) {
        bd = d;
        best = {static_cast<int>(i), static_cast<int>(j)};
      }
    }
  }
  return best;
}

template <typename T>
std::pair<int, int> furthest_pair(const std::vector<Quaternion<T>>& xs) {
  if (xs.size() < 2) fail(Errc::too_few_points, "furthest_pair: need at least 2 scalars");
  std::pair<int, int> best{0, 1};
  T bd = norm_sq(Quaternion<T>(xs[0] - xs[1]));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const T d = norm_sq(Quaternion<T>(xs[i] - xs[j]));
      if (bd < d) {
        bd = d;
        best = {static_cast<int>(i), static_cast<int>(j)};
      }
    }
  }
  return best;
}

// Unique orientation-preserving similarity z -> alpha*z + beta of C sending
// a1 -> b1 and a2 -> b2. Complex scalars only: over H the construction below
// would depend on the side of the coefficients.
template <typename T>
std::pair<Quaternion<T>, Quaternion<T>> similarity_from_pairs(const Quaternion<T>& a1,
                                                              const Quaternion<T>& a2,
                                                              const Quaternion<T>& b1,
                                                              const Quaternion<T>& b2) {
  for (const auto* q : {&a1, &a2, &b1, &b2})
    if (!q->is_complex()) fail(Errc::field_mismatch, "similarity_from_pairs: complex scalars only");
  if (a1 == a2) fail(Errc::degenerate_pair, "similarity_from_pairs: a1 == a2");
  const Quaternion<T> alpha = (b2 - b1) * inverse(a2 - a1);
  const Quaternion<T> beta = b1 - alpha * a1;
  return {alpha, beta};
}

// The two points forming an equilateral triangle with a1, a2 in C:
// midpoint +/- sqrt(3)/2 * i * (a2 - a1). Exact backends need sqrt(3) in the
// field, i.e. radicand 3.
template <typename T>
std::pair<Quaternion<T>, Quaternion<T>> equilateral_third_points(const Quaternion<T>& a1,
                                                                 const Quaternion<T>& a2) {
  if (!a1.is_complex() || !a2.is_complex())
    fail(Errc::field_mismatch, "equilateral_third_points: complex scalars only");
  if (a1 == a2) fail(Errc::degenerate_pair, "equilateral_third_points: points coincide");
  const Quaternion<T> mid = (a1 + a2) / T(2);
  const Quaternion<T> i_unit(T(0), T(1), T(0), T(0));
  const T h = scalar_traits<T>::half_sqrt3(3);
  const Quaternion<T> off = h * (i_unit * (a2 - a1));
  return {mid + off, mid - off};
}

template <typename T>
struct EquilateralCheck {
  bool equilateral = false;
  T common_dist_sq{0};
};

// All pairwise squared distances equal (exactly, or within rel_tol of the
// first one for float).
template <typename T>
EquilateralCheck<T> is_equilateral(const std::vector<Quaternion<T>>& xs,
                                   double rel_tol = kDefaultTolRel) {
  if (xs.size() < 2) fail(Errc::too_few_points, "is_equilateral: need at least 2 scalars");
  detail::require_distinct(xs, "is_equilateral");
  EquilateralCheck<T> out;
  out.common_dist_sq = norm_sq(Quaternion<T>(xs[0] - xs[1]));
  out.equilateral = true;
  for (std::size_t i = 0; i < xs.size() && out.equilateral; ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const T d = norm_sq(Quaternion<T>(xs[i] - xs[j]));
      bool same;
      if constexpr (scalar_traits<T>::is_exact) {
        same = d == out.common_dist_sq;
      } else {
        same = std::abs(d - out.common_dist_sq) <= rel_tol * out.common_dist_sq;
      }
      if (!same) {
        out.equilateral = false;
        break;
      }
    }
  }
  return out;
}

enum class ProjStatus { pass, fail, not_applicable };

template <typename T>
struct ProjectionCheck {
  ProjStatus status = ProjStatus::not_applicable;
  std::vector<Quaternion<T>> a_proj;  // member x's, grid order
  std::vector<Quaternion<T>> b_proj;  // member y's, grid order
  bool closest_maps_to_furthest = false;
  bool equilateral_case = false;
  std::string detail;
};

// For a non-vertical witness line of a grid, the incident points project to
// A' (x's) and B' (y's) and phi: x -> x*m + c carries A' onto B' scaling all
// distances by |m|. When the closest A' pair maps to the furthest B' pair
// that forces both projections to be equilateral, of at most 5 scalars.
// Projections keep one entry per incident grid point, so both lists always
// have witness-count entries (for m = 0 the y's repeat).
template <typename T>
ProjectionCheck<T> projection_similarity_check(const PointSet<T>& grid_points, const Line<T>& l) {
  ProjectionCheck<T> out;
  if (l.vertical()) {
    out.detail = "vertical witness: projections degenerate, nothing to verify";
    return out;
  }
  for (const auto& p : grid_points.points) {
    if (!on_line(p, l, grid_points.eps)) continue;
    out.a_proj.push_back(p.x);
    out.b_proj.push_back(p.y);
  }
  if (out.a_proj.size() < 2) {
    out.detail = "fewer than two incident grid points";
    return out;
  }

  const double eps = grid_points.eps;
  bool ok = true;
  // phi must send each projected x to its partner y.
  for (std::size_t i = 0; i < out.a_proj.size() && ok; ++i) {
    const Quaternion<T> img = out.a_proj[i] * l.m + l.c;
    if constexpr (scalar_traits<T>::is_exact) {
      ok = img == out.b_proj[i];
    } else {
      ok = norm_sq(Quaternion<T>(img - out.b_proj[i])) <= eps * eps;
    }
  }
  // Similarity ratio |m|: |phi(x) - phi(y)|^2 == |x - y|^2 |m|^2.
  const T msq = norm_sq(l.m);
  for (std::size_t i = 0; i < out.a_proj.size() && ok; ++i) {
    for (std::size_t j = i + 1; j < out.a_proj.size(); ++j) {
      const T lhs = norm_sq(Quaternion<T>(out.b_proj[i] - out.b_proj[j]));
      const T rhs = norm_sq(Quaternion<T>(out.a_proj[i] - out.a_proj[j])) * msq;
      if constexpr (scalar_traits<T>::is_exact) {
        ok = lhs == rhs;
      } else {
        ok = std::abs(lhs - rhs) <= grid_points.tol_rel * std::max({lhs, rhs, 1e-300});
      }
      if (!ok) break;
    }
  }
  out.status = ok ? ProjStatus::pass : ProjStatus::fail;
  if (!ok) {
    out.detail = "phi failed to act as a similarity of ratio |m|";
    return out;
  }

  // B' as a set can be smaller than the member count (m == 0 repeats y's).
  std::vector<Quaternion<T>> bset;
  for (const auto& y : out.b_proj)
    if (std::find(bset.begin(), bset.end(), y) == bset.end()) bset.push_back(y);
  if (bset.size() < 2) {
    out.detail = "B' is a single scalar; no furthest pair to compare";
    return out;
  }
  const auto ca = closest_pair(out.a_proj);
  const auto fb = furthest_pair(bset);
  const Quaternion<T> img1 = out.a_proj[static_cast<std::size_t>(ca.first)] * l.m + l.c;
  const Quaternion<T> img2 = out.a_proj[static_cast<std::size_t>(ca.second)] * l.m + l.c;
  const auto& e1 = bset[static_cast<std::size_t>(fb.first)];
  const auto& e2 = bset[static_cast<std::size_t>(fb.second)];
  auto near = [&](const Quaternion<T>& u, const Quaternion<T>& v) {
    if constexpr (scalar_traits<T>::is_exact) {
      return u == v;
    } else {
      return norm_sq(Quaternion<T>(u - v)) <= eps * eps;
    }
  };
  out.closest_maps_to_furthest =
      (near(img1, e1) && near(img2, e2)) || (near(img1, e2) && near(img2, e1));
  if (out.closest_maps_to_furthest) {
    // Closest image = furthest distance squeezes all A' distances equal.
    const bool ea = is_equilateral(out.a_proj, grid_points.tol_rel).equilateral;
    const bool eb = is_equilateral(bset, grid_points.tol_rel).equilateral;
    out.equilateral_case = ea && eb;
    if (!out.equilateral_case) {
      out.status = ProjStatus::fail;
      out.detail = "closest pair mapped to furthest pair but projections are not equilateral";
    }
  }
  return out;
}

template <typename T>
struct GridCheck {
  bool pass = false;
  SpannedLine<T> witness;
  int witness_count = 0;
  bool witness_vertical = false;
  IncidenceReport<T> report;
  ProjectionCheck<T> projections;
};

// Grid incidence bound: A x B spans a line with exactly 2 grid points over
// C, and one with 2..5 over H. Witness is the minimum line of the product
// set; the projection check runs whenever it is not vertical.
template <typename T>
GridCheck<T> check_grid_theorem(const GridSpec<T>& g, double tol_rel = kDefaultTolRel) {
  const PointSet<T> s = grid_point_set(g, tol_rel);
  GridCheck<T> out;
  out.report = enumerate_lines(s);
  out.witness = out.report.min_line();
  out.witness_count = static_cast<int>(out.witness.members.size());
  out.witness_vertical = out.witness.line.vertical();
  out.pass = g.field == FieldTag::C ? out.witness_count == 2
                                    : out.witness_count >= 2 && out.witness_count <= 5;
  out.projections = projection_similarity_check(s, out.witness.line);
  return out;
}

template <typename T>
struct InterchangeHit {
  int a_index = -1;  // index into A, -1 for the probe scalars themselves
  int b_index = -1;
  Quaternion<T> a3;
  Quaternion<T> b3;
  bool a_at_equilateral_spot = false;
  bool b_at_equilateral_spot = false;
};

template <typename T>
struct InterchangeProbe {
  Line<T> direct_line;
  Line<T> swapped_line;
  std::vector<InterchangeHit<T>> direct;   // grid points on the line through (a1,b1),(a2,b2)
  std::vector<InterchangeHit<T>> swapped;  // ... through (a1,b2),(a2,b1)
};

// Diagnostic for the pair-interchange step of the grid argument over C:
// given scalars a1, a2 and b1, b2, list every third grid point on the line
// through (a1,b1),(a2,b2) and on the swapped line through (a1,b2),(a2,b1),
// flagging whether its coordinates sit at the equilateral third points of
// (a1,a2) and (b1,b2).
template <typename T>
InterchangeProbe<T> interchange_probe(const Quaternion<T>& a1, const Quaternion<T>& a2,
                                      const Quaternion<T>& b1, const Quaternion<T>& b2,
                                      const GridSpec<T>& g, double tol_rel = kDefaultTolRel) {
  for (const auto* q : {&a1, &a2, &b1, &b2})
    if (!q->is_complex()) fail(Errc::field_mismatch, "interchange_probe: complex scalars only");
  const PointSet<T> s = grid_point_set(g, tol_rel);
  InterchangeProbe<T> out;
  out.direct_line = line_through<T>({a1, b1}, {a2, b2});
  out.swapped_line = line_through<T>({a1, b2}, {a2, b1});

  const bool have_eq = a1 != a2 && b1 != b2;
  std::pair<Quaternion<T>, Quaternion<T>> ea, eb;
  if (have_eq) {
    ea = equilateral_third_points(a1, a2);
    eb = equilateral_third_points(b1, b2);
  }
  auto near = [&](const Quaternion<T>& u, const Quaternion<T>& v) {
    if constexpr (scalar_traits<T>::is_exact) {
      return u == v;
    } else {
      return norm_sq(Quaternion<T>(u - v)) <= s.eps * s.eps;
    }
  };
  auto scan = [&](const Line<T>& l, std::vector<InterchangeHit<T>>& dst,
                  const Point<T>& end1, const Point<T>& end2) {
    for (std::size_t i = 0; i < g.a.size(); ++i) {
      for (std::size_t j = 0; j < g.b.size(); ++j) {
        const Point<T> p{g.a[i], g.b[j]};
        if (p == end1 || p == end2) continue;
        if (!on_line(p, l, s.eps)) continue;
        InterchangeHit<T> hit;
        hit.a_index = static_cast<int>(i);
        hit.b_index = static_cast<int>(j);
        hit.a3 = p.x;
        hit.b3 = p.y;
        if (have_eq) {
          hit.a_at_equilateral_spot = near(p.x, ea.first) || near(p.x, ea.second);
          hit.b_at_equilateral_spot = near(p.y, eb.first) || near(p.y, eb.second);
        }
        dst.push_back(hit);
      }
    }
  };
  scan(out.direct_line, out.direct, {a1, b1}, {a2, b2});
  scan(out.swapped_line, out.swapped, {a1, b2}, {a2, b1});
  return out;
}

}  // namespace sg
