#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sg/field.hpp"
#include "sg/grid.hpp"
#include "sg/incidence.hpp"
#include "sg/plane.hpp"

namespace sg::io {

using json = nlohmann::ordered_json;

// ---- scalar text grammar ---------------------------------------------------
//
//   rational  := integer | integer "/" positive-integer
//   component := rational
//              | rational "+" rational "r"
//              | rational "-" rational "r"
//
// "r" denotes sqrt(m) for the radicand m declared once per file. The second
// rational is written unsigned; its sign is the separator. Serialization is
// canonical (reduced, positive denominator), so exact files round-trip byte
// for byte.

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace detail

inline Rational parse_rational(std::string_view s) {
  std::string_view whole = s;
  bool neg = false;
  if (!s.empty() && s.front() == '-') {
    neg = true;
    s.remove_prefix(1);
  }
  std::string_view num = s;
  std::string_view den = "1";
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!detail::all_digits(num) || !detail::all_digits(den))
    fail(Errc::parse_error, "bad rational '" + std::string(whole) + "'");
  BigInt n{std::string(num)};
  const BigInt d{std::string(den)};
  if (d.is_zero()) fail(Errc::parse_error, "zero denominator in '" + std::string(whole) + "'");
  if (neg) n = -n;
  return Rational(n, d);
}

inline std::string format_rational(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << '/' << denominator(q);
  return os.str();
}

inline QuadExt parse_component(std::string_view s, std::int64_t sqrt_m) {
  std::size_t sep = std::string_view::npos;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == '+' || s[i] == '-') {
      sep = i;
      break;
    }
  }
  if (sep == std::string_view::npos) {
    if (!s.empty() && s.back() == 'r')
      fail(Errc::parse_error, "component '" + std::string(s) + "' lacks its rational part");
    return QuadExt(parse_rational(s));
  }
  const bool minus = s[sep] == '-';
  std::string_view rad = s.substr(sep + 1);
  if (rad.empty() || rad.back() != 'r')
    fail(Errc::parse_error, "component '" + std::string(s) + "' must end in 'r'");
  rad.remove_suffix(1);
  if (rad.empty() || rad.front() == '-' || rad.front() == '+')
    fail(Errc::parse_error, "component '" + std::string(s) + "': radical part must be unsigned");
  if (sqrt_m < 2)
    fail(Errc::parse_error,
         "component '" + std::string(s) + "' uses r but sqrt_m is " + std::to_string(sqrt_m));
  const Rational a = parse_rational(s.substr(0, sep));
  Rational b = parse_rational(rad);
  if (minus) b = -b;
  return QuadExt(a, b, sqrt_m);
}

inline std::string format_component(const QuadExt& x, std::int64_t sqrt_m) {
  if (x.is_rational()) return format_rational(x.rational_part());
  if (x.radicand() != sqrt_m)
    fail(Errc::io_error, "cannot serialize radicand " + std::to_string(x.radicand()) +
                             " in a file declaring sqrt_m " + std::to_string(sqrt_m));
  const bool minus = x.radical_part().sign() < 0;
  return format_rational(x.rational_part()) + (minus ? "-" : "+") +
         format_rational(abs(x.radical_part())) + "r";
}

// ---- scalars <-> JSON -------------------------------------------------------

template <typename T>
json scalar_to_json(const T& v, std::int64_t sqrt_m) {
  if constexpr (scalar_traits<T>::is_exact) {
    return json(format_component(v, sqrt_m));
  } else {
    (void)sqrt_m;
    return json(v);
  }
}

template <typename T>
T scalar_from_json(const json& j, std::int64_t sqrt_m, const std::string& where) {
  if constexpr (scalar_traits<T>::is_exact) {
    if (!j.is_string()) fail(Errc::parse_error, where + ": exact components must be strings");
    return parse_component(j.get_ref<const std::string&>(), sqrt_m);
  } else {
    (void)sqrt_m;
    if (!j.is_number()) fail(Errc::parse_error, where + ": float components must be numbers");
    return j.get<double>();
  }
}

template <typename T>
json quat_to_json(const Quaternion<T>& q, FieldTag field, std::int64_t sqrt_m) {
  json arr = json::array();
  arr.push_back(scalar_to_json(q.a, sqrt_m));
  arr.push_back(scalar_to_json(q.b, sqrt_m));
  if (field == FieldTag::H) {
    arr.push_back(scalar_to_json(q.c, sqrt_m));
    arr.push_back(scalar_to_json(q.d, sqrt_m));
  }
  return arr;
}

template <typename T>
Quaternion<T> quat_from_json(const json& j, FieldTag field, std::int64_t sqrt_m,
                             const std::string& where) {
  const std::size_t want = field == FieldTag::C ? 2 : 4;
  if (!j.is_array() || j.size() != want)
    fail(Errc::parse_error, where + ": coordinate must be an array of " + std::to_string(want) +
                                " components for field " + field_name(field));
  Quaternion<T> q;
  q.a = scalar_from_json<T>(j[0], sqrt_m, where);
  q.b = scalar_from_json<T>(j[1], sqrt_m, where);
  if (field == FieldTag::H) {
    q.c = scalar_from_json<T>(j[2], sqrt_m, where);
    q.d = scalar_from_json<T>(j[3], sqrt_m, where);
  }
  return q;
}

template <typename T>
json line_to_json(const Line<T>& l, FieldTag field, std::int64_t sqrt_m) {
  json j = json::object();
  if (l.vertical()) {
    j["type"] = "vertical";
    j["x0"] = quat_to_json(l.x0, field, sqrt_m);
  } else {
    j["type"] = "slope";
    j["m"] = quat_to_json(l.m, field, sqrt_m);
    j["c"] = quat_to_json(l.c, field, sqrt_m);
  }
  return j;
}

// ---- file schemas -----------------------------------------------------------

using AnyPointSet = std::variant<PointSet<QuadExt>, PointSet<double>>;
using AnyGridSpec = std::variant<GridSpec<QuadExt>, GridSpec<double>>;

template <typename T>
struct ScalarSet {
  FieldTag field = FieldTag::C;
  std::int64_t sqrt_m = 0;
  std::vector<Quaternion<T>> values;
};

using AnyScalarSet = std::variant<ScalarSet<QuadExt>, ScalarSet<double>>;

namespace detail {

inline void check_keys(const json& j, std::initializer_list<const char*> required,
                       std::initializer_list<const char*> optional, const char* what) {
  if (!j.is_object()) fail(Errc::parse_error, std::string(what) + ": expected a JSON object");
  for (const char* k : required)
    if (!j.contains(k))
      fail(Errc::parse_error, std::string(what) + ": missing required key '" + k + "'");
  for (const auto& item : j.items()) {
    const auto in = [&](std::initializer_list<const char*> set) {
      for (const char* k : set)
        if (item.key() == k) return true;
      return false;
    };
    if (!in(required) && !in(optional))
      fail(Errc::parse_error, std::string(what) + ": unknown key '" + item.key() + "'");
  }
}

struct Header {
  FieldTag field;
  bool exact;
  std::int64_t sqrt_m;
};

inline Header parse_header(const json& j, const char* what) {
  Header h{};
  if (!j["field"].is_string()) fail(Errc::parse_error, std::string(what) + ": field must be a string");
  h.field = field_from_name(j["field"].get<std::string>());
  if (!j["backend"].is_string())
    fail(Errc::parse_error, std::string(what) + ": backend must be a string");
  const std::string backend = j["backend"].get<std::string>();
  if (backend == "exact") {
    h.exact = true;
  } else if (backend == "float") {
    h.exact = false;
  } else {
    fail(Errc::parse_error, std::string(what) + ": unknown backend '" + backend + "'");
  }
  if (h.exact) {
    if (!j.contains("sqrt_m"))
      fail(Errc::parse_error, std::string(what) + ": exact files must declare sqrt_m");
    if (!j["sqrt_m"].is_number_integer())
      fail(Errc::parse_error, std::string(what) + ": sqrt_m must be an integer");
    h.sqrt_m = j["sqrt_m"].get<std::int64_t>();
    if (!is_square_free(h.sqrt_m))
      fail(Errc::parse_error,
           std::string(what) + ": sqrt_m must be square-free and nonnegative");
  } else if (j.contains("sqrt_m")) {
    fail(Errc::parse_error, std::string(what) + ": sqrt_m is only valid for the exact backend");
  }
  return h;
}

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Map the byte offset to line/column for a usable message.
    std::size_t line = 1, col = 1;
    const std::size_t stop = e.byte == 0 ? 0 : e.byte - 1;
    for (std::size_t i = 0; i < stop && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(Errc::parse_error, "line " + std::to_string(line) + ", column " + std::to_string(col) +
                                ": " + e.what());
  }
}

template <typename T>
PointSet<T> points_from_json(const json& j, const Header& h, double tol_rel) {
  if (!j.is_array()) fail(Errc::parse_error, "dataset: points must be an array");
  std::vector<Point<T>> pts;
  pts.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "point " + std::to_string(i);
    if (!j[i].is_array() || j[i].size() != 2)
      fail(Errc::parse_error, where + ": expected [x, y]");
    pts.push_back({quat_from_json<T>(j[i][0], h.field, h.sqrt_m, where + ".x"),
                   quat_from_json<T>(j[i][1], h.field, h.sqrt_m, where + ".y")});
  }
  return make_point_set(h.field, std::move(pts), h.sqrt_m, tol_rel);
}

template <typename T>
std::vector<Quaternion<T>> scalars_from_json(const json& j, const Header& h, const char* what) {
  if (!j.is_array()) fail(Errc::parse_error, std::string(what) + " must be an array");
  std::vector<Quaternion<T>> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(quat_from_json<T>(j[i], h.field, h.sqrt_m,
                                    std::string(what) + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace detail

// DatasetFile: {field, backend, sqrt_m?, points}.
inline AnyPointSet parse_point_set(const std::string& text, double tol_rel = kDefaultTolRel) {
  const json j = detail::parse_text(text);
  detail::check_keys(j, {"field", "backend", "points"}, {"sqrt_m"}, "dataset");
  const auto h = detail::parse_header(j, "dataset");
  if (h.exact) return detail::points_from_json<QuadExt>(j["points"], h, tol_rel);
  return detail::points_from_json<double>(j["points"], h, tol_rel);
}

template <typename T>
json point_set_to_json(const PointSet<T>& s) {
  json j = json::object();
  j["field"] = field_name(s.field);
  j["backend"] = scalar_traits<T>::backend_name();
  if constexpr (scalar_traits<T>::is_exact) j["sqrt_m"] = s.sqrt_m;
  json pts = json::array();
  for (const auto& p : s.points) {
    json row = json::array();
    row.push_back(quat_to_json(p.x, s.field, s.sqrt_m));
    row.push_back(quat_to_json(p.y, s.field, s.sqrt_m));
    pts.push_back(std::move(row));
  }
  j["points"] = std::move(pts);
  return j;
}

// GridFile: {field, backend, sqrt_m?, a, b}.
inline AnyGridSpec parse_grid_spec(const std::string& text) {
  const json j = detail::parse_text(text);
  detail::check_keys(j, {"field", "backend", "a", "b"}, {"sqrt_m"}, "grid");
  const auto h = detail::parse_header(j, "grid");
  const auto build = [&](auto tag) -> AnyGridSpec {
    using T = decltype(tag);
    return make_grid_spec(h.field, detail::scalars_from_json<T>(j["a"], h, "a"),
                          detail::scalars_from_json<T>(j["b"], h, "b"), h.sqrt_m);
  };
  if (h.exact) return build(QuadExt{});
  return build(double{});
}

template <typename T>
json grid_spec_to_json(const GridSpec<T>& g) {
  json j = json::object();
  j["field"] = field_name(g.field);
  j["backend"] = scalar_traits<T>::backend_name();
  if constexpr (scalar_traits<T>::is_exact) j["sqrt_m"] = g.sqrt_m;
  json a = json::array(), b = json::array();
  for (const auto& q : g.a) a.push_back(quat_to_json(q, g.field, g.sqrt_m));
  for (const auto& q : g.b) b.push_back(quat_to_json(q, g.field, g.sqrt_m));
  j["a"] = std::move(a);
  j["b"] = std::move(b);
  return j;
}

// ScalarSetFile: {field, backend, sqrt_m?, values}.
inline AnyScalarSet parse_scalar_set(const std::string& text) {
  const json j = detail::parse_text(text);
  detail::check_keys(j, {"field", "backend", "values"}, {"sqrt_m"}, "scalar set");
  const auto h = detail::parse_header(j, "scalar set");
  const auto build = [&](auto tag) -> AnyScalarSet {
    using T = decltype(tag);
    return ScalarSet<T>{h.field, h.sqrt_m, detail::scalars_from_json<T>(j["values"], h, "values")};
  };
  if (h.exact) return build(QuadExt{});
  return build(double{});
}

template <typename T>
json scalar_set_to_json(const ScalarSet<T>& s) {
  json j = json::object();
  j["field"] = field_name(s.field);
  j["backend"] = scalar_traits<T>::backend_name();
  if constexpr (scalar_traits<T>::is_exact) j["sqrt_m"] = s.sqrt_m;
  json vals = json::array();
  for (const auto& q : s.values) vals.push_back(quat_to_json(q, s.field, s.sqrt_m));
  j["values"] = std::move(vals);
  return j;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---- misc -------------------------------------------------------------------

inline std::string fnv1a64_hex(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_error, "cannot open '" + path + "' for writing");
  out << data;
  if (!out) fail(Errc::io_error, "short write to '" + path + "'");
}

}  // namespace sg::io
