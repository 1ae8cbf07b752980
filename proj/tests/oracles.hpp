#pragma once

// Independent reference computations used by the tests. None of these call into
// the library's algorithms; they only share the Rational type.

#include <array>
#include <map>
#include <set>
#include <vector>

#include "reebinv/rational.hpp"

namespace oracle {

using reebinv::Rational;

struct Point {
  Rational x, y;
};

// Shoelace area of a simple polygon.
inline Rational polygon_area(const std::vector<Point>& p) {
  Rational twice = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& a = p[i];
    const auto& b = p[(i + 1) % p.size()];
    twice += a.x * b.y - a.y * b.x;
  }
  return abs(twice) / 2;
}

// Area of {f <= t} inside the triangle (0,0),(1,0),(0,1) carrying the linear
// interpolant of the corner values, scaled to `area`. Sutherland-Hodgman clip.
inline Rational clipped_area(const std::array<Rational, 3>& values, const Rational& area, const Rational& t) {
  const std::array<Point, 3> corners{Point{0, 0}, Point{1, 0}, Point{0, 1}};
  std::vector<std::pair<Point, Rational>> poly;
  for (int i = 0; i < 3; ++i) poly.push_back({corners[i], values[i]});
  std::vector<Point> kept;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& [p, fp] = poly[i];
    const auto& [q, fq] = poly[(i + 1) % poly.size()];
    if (fp <= t) kept.push_back(p);
    if ((fp < t && fq > t) || (fp > t && fq < t)) {
      const Rational s = (t - fp) / (fq - fp);
      kept.push_back({p.x + s * (q.x - p.x), p.y + s * (q.y - p.y)});
    }
  }
  if (kept.size() < 3) return 0;
  return polygon_area(kept) * 2 * area;
}

// Number of connected components of an undirected graph given as an edge list.
inline int components(int vertices, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(vertices);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> seen(vertices, false);
  int count = 0;
  for (int s = 0; s < vertices; ++s) {
    if (seen[s]) continue;
    ++count;
    std::vector<int> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
  }
  return count;
}

// Edge -> number of triangles containing it, by direct enumeration.
inline std::map<std::pair<int, int>, int> edge_multiplicity(const std::vector<std::array<int, 3>>& tris) {
  std::map<std::pair<int, int>, int> count;
  for (const auto& t : tris)
    for (int i = 0; i < 3; ++i) {
      int a = t[i], b = t[(i + 1) % 3];
      if (a > b) std::swap(a, b);
      ++count[{a, b}];
    }
  return count;
}

}  // namespace oracle
