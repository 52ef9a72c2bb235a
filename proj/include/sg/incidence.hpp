#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "sg/plane.hpp"

namespace sg {

// A line spanned by a point set, with the sorted indices of every incident
// point. members.size() >= 2 always.
template <typename T>
struct SpannedLine {
  Line<T> line;
  std::vector<int> members;
};

template <typename T>
struct IncidenceReport {
  std::vector<SpannedLine<T>> lines;  // sorted by members, lexicographically
  std::map<int, int> histogram;       // incidence count -> number of lines
  int min_index = -1;

  const SpannedLine<T>& min_line() const { return lines.at(static_cast<std::size_t>(min_index)); }
};

namespace detail {

// Minimum line: fewest members, ties by lexicographic member list. With
// lines already sorted lexicographically the first line of minimum size
// wins both rules at once.
template <typename T>
int pick_min_line(const std::vector<SpannedLine<T>>& lines) {
  int best = -1;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (best < 0 || lines[i].members.size() <
                        lines[static_cast<std::size_t>(best)].members.size())
      best = static_cast<int>(i);
  }
  return best;
}

template <typename T>
std::vector<SpannedLine<T>> enumerate_exact(const PointSet<T>& s) {
  const auto less = [](const Line<T>& a, const Line<T>& b) { return line_less(a, b); };
  std::map<Line<T>, std::set<int>, decltype(less)> groups(less);
  const int n = s.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      auto& g = groups[line_through(s.points[static_cast<std::size_t>(i)],
                                    s.points[static_cast<std::size_t>(j)])];
      g.insert(i);
      g.insert(j);
    }
  }
  std::vector<SpannedLine<T>> out;
  out.reserve(groups.size());
  for (auto& [line, members] : groups)
    out.push_back({line, std::vector<int>(members.begin(), members.end())});
  return out;
}

// Float strategy: canonical forms are not reliable keys under rounding, so
// for each anchor i we bucket the later points by incidence with an already
// seen line through i, and emit a bucket only if i is the smallest incident
// point, which dedupes lines without ever hashing floats.
template <typename T>
std::vector<SpannedLine<T>> enumerate_float(const PointSet<T>& s) {
  const int n = s.size();
  std::vector<SpannedLine<T>> out;
  for (int i = 0; i < n; ++i) {
    std::vector<SpannedLine<T>> local;
    for (int j = i + 1; j < n; ++j) {
      bool placed = false;
      for (auto& g : local) {
        if (on_line(s.points[static_cast<std::size_t>(j)], g.line, s.eps)) {
          g.members.push_back(j);
          placed = true;
          break;
        }
      }
      if (!placed)
        local.push_back({line_through(s.points[static_cast<std::size_t>(i)],
                                      s.points[static_cast<std::size_t>(j)]),
                         {i, j}});
    }
    for (auto& g : local) {
      bool owned = true;
      for (int k = 0; k < i && owned; ++k)
        if (on_line(s.points[static_cast<std::size_t>(k)], g.line, s.eps)) owned = false;
      if (owned) out.push_back(std::move(g));
    }
  }
  return out;
}

}  // namespace detail

// Every line spanned by at least two points of s, each with its full list of
// incident members. Exact backends group pairs by the canonical (m, c) / x0
// key; float backends use per-anchor incidence merging instead.
template <typename T>
IncidenceReport<T> enumerate_lines(const PointSet<T>& s) {
  if (s.size() < 2) fail(Errc::too_few_points, "enumerate_lines: need at least 2 points");
  IncidenceReport<T> rep;
  if constexpr (scalar_traits<T>::is_exact) {
    rep.lines = detail::enumerate_exact(s);
  } else {
    rep.lines = detail::enumerate_float(s);
  }
  std::sort(rep.lines.begin(), rep.lines.end(),
            [](const SpannedLine<T>& a, const SpannedLine<T>& b) { return a.members < b.members; });
  for (const auto& l : rep.lines) rep.histogram[static_cast<int>(l.members.size())]++;
  rep.min_index = detail::pick_min_line(rep.lines);
  return rep;
}

template <typename T>
int incidence_count(const PointSet<T>& s, const Line<T>& l) {
  int c = 0;
  for (const auto& p : s.points)
    if (on_line(p, l, s.eps)) ++c;
  return c;
}

// True when all points lie on one line (sets of size < 3 count as collinear).
template <typename T>
bool is_collinear_set(const PointSet<T>& s) {
  if (s.size() < 3) return true;
  const Line<T> l = line_through(s.points[0], s.points[1]);
  for (const auto& p : s.points)
    if (!on_line(p, l, s.eps)) return false;
  return true;
}

template <typename T>
struct SgCheck {
  bool pass = false;
  int bound = 0;
  SpannedLine<T> witness;
  IncidenceReport<T> report;
};

// Sylvester-Gallai-type bound: a noncollinear set must span a line carrying
// at most 5 points over C, at most 24 over H. The witness is the minimum
// line; pass means its count lands in [2, bound].
template <typename T>
SgCheck<T> check_sg_bound(const PointSet<T>& s) {
  if (s.size() < 3) fail(Errc::too_few_points, "check_sg_bound: need at least 3 points");
  if (is_collinear_set(s)) fail(Errc::hypothesis_violation, "check_sg_bound: set is collinear");
  SgCheck<T> out;
  out.bound = s.field == FieldTag::C ? 5 : 24;
  out.report = enumerate_lines(s);
  out.witness = out.report.min_line();
  const auto count = static_cast<int>(out.witness.members.size());
  out.pass = count >= 2 && count <= out.bound;
  return out;
}

}  // namespace sg
