#include <catch_amalgamated.hpp>

#include "sg/configs.hpp"
#include "sg/incidence.hpp"

using sg::FieldTag;
using sg::Point;
using sg::QuadExt;
using sg::Quaternion;

TEST_CASE("hesse pinned data", "[configs]") {
  const auto s = sg::gen::hesse();
  CHECK(s.field == FieldTag::C);
  CHECK(s.sqrt_m == 3);
  REQUIRE(s.size() == 9);
  // spot checks against the published coordinates: the first point is
  // (0, -1/2) and the fifth has x = (2 - sqrt(3) i)/7
  CHECK(s.points[0].x == Quaternion<QuadExt>::complex(QuadExt(0), QuadExt(0)));
  CHECK(s.points[0].y ==
        Quaternion<QuadExt>::complex(QuadExt(sg::Rational(-1, 2)), QuadExt(0)));
  CHECK(s.points[4].x ==
        Quaternion<QuadExt>::complex(QuadExt(sg::Rational(2, 7)),
                                     QuadExt(sg::Rational(0), sg::Rational(-1, 7), 3)));
  CHECK(!sg::is_collinear_set(s));
}

TEST_CASE("random_points is deterministic and valid", "[configs]") {
  const auto a = sg::gen::random_points<QuadExt>(FieldTag::C, 12, 77);
  const auto b = sg::gen::random_points<QuadExt>(FieldTag::C, 12, 77);
  REQUIRE(a.size() == b.size());
  for (int i = 0; i < a.size(); ++i)
    CHECK(a.points[static_cast<std::size_t>(i)] == b.points[static_cast<std::size_t>(i)]);
  const auto c = sg::gen::random_points<QuadExt>(FieldTag::C, 12, 78);
  bool differs = false;
  for (int i = 0; i < a.size(); ++i)
    if (a.points[static_cast<std::size_t>(i)] != c.points[static_cast<std::size_t>(i)])
      differs = true;
  CHECK(differs);
  CHECK(!sg::is_collinear_set(a));

  const auto f = sg::gen::random_points<double>(FieldTag::H, 9, 5);
  const auto g = sg::gen::random_points<double>(FieldTag::H, 9, 5);
  for (int i = 0; i < f.size(); ++i)
    CHECK(f.points[static_cast<std::size_t>(i)] == g.points[static_cast<std::size_t>(i)]);
  for (const auto& p : f.points) {
    CHECK(p.x.is_complex() == false);  // generic quaternions have j/k parts
    for (double comp : {p.x.a, p.x.b, p.x.c, p.x.d}) {
      CHECK(comp >= -1.0);
      CHECK(comp < 1.0);
    }
  }
}

TEST_CASE("random_points respects the field tag", "[configs]") {
  const auto s = sg::gen::random_points<QuadExt>(FieldTag::C, 6, 3);
  for (const auto& p : s.points) {
    CHECK(p.x.is_complex());
    CHECK(p.y.is_complex());
  }
  bool threw = false;
  try {
    (void)sg::gen::random_points<double>(FieldTag::C, 2, 1);
  } catch (const sg::Error& e) {
    threw = e.code() == sg::Errc::invalid_argument;
  }
  CHECK(threw);
}

TEST_CASE("exact random points are dyadic", "[configs]") {
  const auto s = sg::gen::random_points<QuadExt>(FieldTag::C, 5, 9);
  for (const auto& p : s.points) {
    for (const auto& comp : {p.x.a, p.x.b, p.y.a, p.y.b}) {
      CHECK(comp.is_rational());
      // denominator divides 2^20
      const auto den = denominator(comp.rational_part());
      CHECK(sg::BigInt(1ll << 20) % den == 0);
    }
  }
}

TEST_CASE("random_grid determinism and validity", "[configs]") {
  const auto a = sg::gen::random_grid<double>(FieldTag::C, 4, 7, 13);
  const auto b = sg::gen::random_grid<double>(FieldTag::C, 4, 7, 13);
  REQUIRE(a.a.size() == 4);
  REQUIRE(a.b.size() == 7);
  for (std::size_t i = 0; i < a.a.size(); ++i) CHECK(a.a[i] == b.a[i]);
  for (std::size_t i = 0; i < a.b.size(); ++i) CHECK(a.b[i] == b.b[i]);
  bool threw = false;
  try {
    (void)sg::gen::random_grid<double>(FieldTag::C, 1, 5, 2);
  } catch (const sg::Error& e) {
    threw = e.code() == sg::Errc::invalid_argument;
  }
  CHECK(threw);
}

TEST_CASE("simplex4 is a regular simplex", "[configs]") {
  const auto ex = sg::gen::simplex4<QuadExt>();
  REQUIRE(ex.size() == 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j)
      CHECK(sg::norm_sq(Quaternion<QuadExt>(ex[i] - ex[j])) == QuadExt(2));
  // the apex components are (1 + sqrt(5))/4
  CHECK(ex[4].a == QuadExt(sg::Rational(1, 4), sg::Rational(1, 4), 5));

  const auto fl = sg::gen::simplex4<double>();
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j)
      CHECK_THAT(sg::norm_sq(Quaternion<double>(fl[i] - fl[j])),
                 Catch::Matchers::WithinAbs(2.0, 1e-12));
}

TEST_CASE("near_collinear stays near a line but not on it", "[configs]") {
  const double eps = 1e-7;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto s = sg::gen::near_collinear<QuadExt>(FieldTag::C, 8, eps, seed);
    CHECK(!sg::is_collinear_set(s));
    // some spanning pair's line keeps every point within O(eps); the 1e4
    // cushion absorbs slope error from nearby sample pairs
    double best = 1e300;
    for (int i = 0; i < s.size(); ++i) {
      for (int j = i + 1; j < s.size(); ++j) {
        const auto l = sg::line_through(s.points[static_cast<std::size_t>(i)],
                                        s.points[static_cast<std::size_t>(j)]);
        double worst = 0;
        for (const auto& p : s.points)
          worst = std::max(worst, sg::to_double(sg::dist_sq_point_line(p, l)));
        best = std::min(best, worst);
      }
    }
    CHECK(best > 0.0);
    CHECK(best <= 1e4 * eps * eps);
  }
}

TEST_CASE("near_collinear float flips under a coarser tolerance", "[configs]") {
  const auto s = sg::gen::near_collinear<double>(FieldTag::C, 8, 1e-7, 11);
  CHECK(!sg::is_collinear_set(s));
  auto coarse = s;
  coarse.eps = s.eps * 10000;  // tol scaled x10^4 swallows the 1e-7 offsets
  CHECK(sg::is_collinear_set(coarse));
}

TEST_CASE("generator parameter validation", "[configs]") {
  const auto code = [](auto fn) {
    try {
      fn();
    } catch (const sg::Error& e) {
      return e.code();
    }
    return sg::Errc::io_error;
  };
  CHECK(code([] { (void)sg::gen::near_collinear<double>(FieldTag::C, 8, 0.0, 1); }) ==
        sg::Errc::invalid_argument);
  CHECK(code([] { (void)sg::gen::near_collinear<double>(FieldTag::C, 2, 1e-6, 1); }) ==
        sg::Errc::invalid_argument);
  CHECK(code([] { (void)sg::gen::random_grid<QuadExt>(FieldTag::H, 3, 0, 1); }) ==
        sg::Errc::invalid_argument);
}
