#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sg/grid.hpp"
#include "sg/plane.hpp"
#include "sg/rng.hpp"

namespace sg {
namespace gen {

namespace detail {

inline QuadExt qe(long long num, long long den, long long rnum = 0, long long rden = 1) {
  return QuadExt(Rational(num, den), Rational(rnum, rden), 3);
}

template <typename T>
T random_component(SplitMix64& rng) {
  if constexpr (scalar_traits<T>::is_exact) {
    return QuadExt(Rational(rng.dyadic_numerator(), kDyadicDenominator));
  } else {
    return rng.uniform_pm1();
  }
}

template <typename T>
Quaternion<T> random_scalar(SplitMix64& rng, FieldTag field) {
  Quaternion<T> q;
  q.a = random_component<T>(rng);
  q.b = random_component<T>(rng);
  if (field == FieldTag::H) {
    q.c = random_component<T>(rng);
    q.d = random_component<T>(rng);
  }
  return q;
}

}  // namespace detail

// The nine inflection points of the Fermat cubic in the affine chart that
// keeps all of them finite: the classical Hesse configuration. Each point
// lies on exactly 4 of the 12 spanned 3-point lines and no spanned line has
// 2 points, so this is extremal for the complex bound. Coordinates live in
// Q(sqrt(3)).
inline PointSet<QuadExt> hesse() {
  using detail::qe;
  auto pt = [](QuadExt xr, QuadExt xi, QuadExt yr, QuadExt yi) {
    return Point<QuadExt>{Quaternion<QuadExt>::complex(std::move(xr), std::move(xi)),
                          Quaternion<QuadExt>::complex(std::move(yr), std::move(yi))};
  };
  std::vector<Point<QuadExt>> pts;
  pts.push_back(pt(qe(0, 1), qe(0, 1), qe(-1, 2), qe(0, 1)));
  pts.push_back(pt(qe(0, 1), qe(0, 1), qe(1, 4), qe(0, 1, -1, 4)));
  pts.push_back(pt(qe(0, 1), qe(0, 1), qe(1, 4), qe(0, 1, 1, 4)));
  pts.push_back(pt(qe(-1, 1), qe(0, 1), qe(0, 1), qe(0, 1)));
  pts.push_back(pt(qe(2, 7), qe(0, 1, -1, 7), qe(0, 1), qe(0, 1)));
  pts.push_back(pt(qe(2, 7), qe(0, 1, 1, 7), qe(0, 1), qe(0, 1)));
  pts.push_back(pt(qe(1, 1), qe(0, 1), qe(-1, 1), qe(0, 1)));
  pts.push_back(pt(qe(1, 1), qe(0, 1), qe(1, 2), qe(0, 1, 1, 2)));
  pts.push_back(pt(qe(1, 1), qe(0, 1), qe(1, 2), qe(0, 1, -1, 2)));
  return make_point_set(FieldTag::C, std::move(pts), 3);
}

// n points with independent uniform coordinates (components in [-1, 1);
// exact backends draw dyadic rationals k/2^20). Redraws until the set is
// duplicate-free and noncollinear.
template <typename T>
PointSet<T> random_points(FieldTag field, int n, std::uint64_t seed,
                          double tol_rel = kDefaultTolRel) {
  if (n < 3) fail(Errc::invalid_argument, "random_points: need n >= 3");
  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Point<T>> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      pts.push_back({detail::random_scalar<T>(rng, field), detail::random_scalar<T>(rng, field)});
    try {
      PointSet<T> s = make_point_set(field, std::move(pts), 0, tol_rel);
      if (!is_collinear_set(s)) return s;
    } catch (const Error&) {
      // duplicate draw; try again
    }
  }
  fail(Errc::invalid_argument, "random_points: could not draw a valid set");
}

// Random grid factors A (na scalars) and B (nb scalars), coordinates as in
// random_points.
template <typename T>
GridSpec<T> random_grid(FieldTag field, int na, int nb, std::uint64_t seed,
                        double tol_rel = kDefaultTolRel) {
  if (na < 2 || nb < 2) fail(Errc::invalid_argument, "random_grid: need sizes >= 2");
  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Quaternion<T>> a, b;
    for (int i = 0; i < na; ++i) a.push_back(detail::random_scalar<T>(rng, field));
    for (int i = 0; i < nb; ++i) b.push_back(detail::random_scalar<T>(rng, field));
    try {
      GridSpec<T> g = make_grid_spec(field, std::move(a), std::move(b), 0);
      (void)grid_point_set(g, tol_rel);  // also reject near-duplicate products
      return g;
    } catch (const Error&) {
    }
  }
  fail(Errc::invalid_argument, "random_grid: could not draw valid factors");
}

// Five quaternions forming a regular simplex in R^4: the four units
// e1, e2, e3, e4 and t*(1,1,1,1) with t = (1 + sqrt(5))/4. All pairwise
// squared distances equal 2. Exact backends need radicand 5.
template <typename T>
std::vector<Quaternion<T>> simplex4() {
  T zero(0), one(1);
  T t;
  if constexpr (scalar_traits<T>::is_exact) {
    t = QuadExt(Rational(1, 4), Rational(1, 4), 5);
  } else {
    t = (1.0 + std::sqrt(5.0)) / 4.0;
  }
  return {Quaternion<T>(one, zero, zero, zero), Quaternion<T>(zero, one, zero, zero),
          Quaternion<T>(zero, zero, one, zero), Quaternion<T>(zero, zero, zero, one),
          Quaternion<T>(t, t, t, t)};
}

// n points within eps_mag of a common line yet (exactly) noncollinear: a
// random slope line gets sampled at random x's, and each y is displaced
// along i by at most eps_mag. Stress data for float tolerance handling.
template <typename T>
PointSet<T> near_collinear(FieldTag field, int n, double eps_mag, std::uint64_t seed,
                           double tol_rel = kDefaultTolRel) {
  if (n < 3) fail(Errc::invalid_argument, "near_collinear: need n >= 3");
  if (!(eps_mag > 0)) fail(Errc::invalid_argument, "near_collinear: eps must be positive");
  SplitMix64 rng(seed);
  T eps_scale;
  if constexpr (scalar_traits<T>::is_exact) {
    eps_scale = QuadExt(Rational(std::llround(eps_mag * 0x1.0p40), 1ll << 40));
  } else {
    eps_scale = eps_mag;
  }
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Quaternion<T> m = detail::random_scalar<T>(rng, field);
    const Quaternion<T> c = detail::random_scalar<T>(rng, field);
    std::vector<Point<T>> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const Quaternion<T> x = detail::random_scalar<T>(rng, field);
      // |delta| <= eps_mag, and the distance to y = x*m + c is below |delta|.
      const Quaternion<T> delta(T(0), eps_scale * detail::random_component<T>(rng), T(0), T(0));
      pts.push_back({x, x * m + c + delta});
    }
    try {
      PointSet<T> s = make_point_set(field, std::move(pts), 0, tol_rel);
      if (!is_collinear_set(s)) return s;
    } catch (const Error&) {
    }
  }
  fail(Errc::invalid_argument, "near_collinear: could not draw a valid set");
}

}  // namespace gen
}  // namespace sg
