#include "reebinv/fixtures.hpp"

#include <array>
#include <cmath>
#include <map>
#include <numbers>

namespace reebinv {

namespace {

using Triple = std::array<int, 3>;

void fill_ids(SurfaceComplex& s) {
  s.ids.resize(s.f.size());
  for (std::size_t i = 0; i < s.ids.size(); ++i) s.ids[i] = static_cast<int>(i);
}

// f on the orbit representative (lower index), negated on its partner.
template <class F>
void set_odd_values(SurfaceComplex& s, F value) {
  s.f.assign(s.involution.size(), 0);
  for (std::size_t v = 0; v < s.involution.size(); ++v) {
    const auto w = static_cast<std::size_t>(s.involution[v]);
    if (v < w) {
      s.f[v] = value(static_cast<int>(v));
      s.f[w] = -s.f[v];
    }
  }
}

void symmetrize_areas(SurfaceComplex& s) {
  TriangleLookup lookup(s);
  for (std::size_t t = 0; t < s.triangles.size(); ++t) {
    const auto& tri = s.triangles[t];
    const int image = lookup.find(s.involution[tri[0]], s.involution[tri[1]], s.involution[tri[2]]);
    if (image < 0) throw PreconditionError("involution does not map triangles to triangles");
    if (static_cast<std::size_t>(image) > t) s.areas[image] = s.areas[t];
  }
}

void random_areas(SurfaceComplex& s, Rng& rng) {
  s.areas.resize(s.triangles.size());
  for (auto& a : s.areas) a = rng.uniform_rational(ratio(1, 2), 2, 10);
  symmetrize_areas(s);
}

// Resolves value collisions left by rounding; the link structure is untouched.
bool make_simple(SurfaceComplex& s, std::uint64_t seed) {
  try {
    s = perturb_to_simple(s, ratio(1, 1 << 20), seed);
    return true;
  } catch (const PreconditionError&) {
    return false;
  }
}

// Octahedron faces cut into k^2 triangles; vertices are the integer points of |x|+|y|+|z| = k.
SurfaceComplex subdivided_octahedron(int k, std::vector<Triple>* points) {
  SurfaceComplex s;
  std::map<Triple, int> index;
  std::vector<Triple> pts;
  auto vertex = [&](const Triple& p) {
    auto [it, inserted] = index.emplace(p, static_cast<int>(pts.size()));
    if (inserted) pts.push_back(p);
    return it->second;
  };
  for (int sx : {1, -1})
    for (int sy : {1, -1})
      for (int sz : {1, -1}) {
        const Triple A{sx, 0, 0}, B{0, sy, 0}, C{0, 0, sz};
        auto P = [&](int i, int j) {
          Triple p;
          for (int d = 0; d < 3; ++d) p[d] = A[d] * (k - i - j) + B[d] * i + C[d] * j;
          return vertex(p);
        };
        // (A, B, C) is counter-clockwise seen from outside iff an even number of signs are negative
        const bool flip = sx * sy * sz < 0;
        auto emit = [&](int a, int b, int c) {
          if (flip) s.triangles.push_back({a, c, b});
          else s.triangles.push_back({a, b, c});
        };
        for (int i = 0; i < k; ++i)
          for (int j = 0; i + j < k; ++j) {
            emit(P(i, j), P(i + 1, j), P(i, j + 1));
            if (i + j + 2 <= k) emit(P(i + 1, j), P(i + 1, j + 1), P(i, j + 1));
          }
      }
  s.involution.resize(pts.size());
  for (std::size_t v = 0; v < pts.size(); ++v) s.involution[v] = index.at({-pts[v][0], -pts[v][1], -pts[v][2]});
  s.areas.assign(s.triangles.size(), 1);
  s.f.assign(pts.size(), 0);
  fill_ids(s);
  if (points) *points = std::move(pts);
  return s;
}

double torus_height_vertical(double phi, double theta) {
  return (2.0 + std::cos(theta)) * std::sin(phi) + 0.05 * std::sin(theta);
}

double torus_height_inclined(double phi, double theta) {
  return std::sin(theta) + 0.3 * (2.0 + std::cos(theta)) * std::cos(phi);
}

}  // namespace

SurfaceComplex octahedron_z() {
  std::vector<Triple> pts;
  SurfaceComplex s = subdivided_octahedron(1, &pts);
  for (std::size_t v = 0; v < pts.size(); ++v) s.f[v] = pts[v][2];
  return s;
}

SurfaceComplex perturbed_octahedron() {
  std::vector<Triple> pts;
  SurfaceComplex s = subdivided_octahedron(1, &pts);
  for (std::size_t v = 0; v < pts.size(); ++v) s.f[v] = pts[v][0] + 2 * pts[v][1] + 3 * pts[v][2];
  return s;
}

SurfaceComplex sphere_fixture(int k) {
  std::vector<Triple> pts;
  SurfaceComplex s = subdivided_octahedron(k, &pts);
  // 371 z + 53 y + 7 x separates all lattice points with |.|_1 = k <= 3
  for (std::size_t v = 0; v < pts.size(); ++v)
    s.f[v] = ratio(371 * pts[v][2] + 53 * pts[v][1] + 7 * pts[v][0], 371 * k);
  if (!check_simple_morse_odd(s).empty() && !make_simple(s, 1))
    throw PreconditionError("sphere fixture is not simple Morse");
  return s;
}

SurfaceComplex random_sphere(Rng& rng, int k, int degree) {
  std::vector<Triple> pts;
  const SurfaceComplex base = subdivided_octahedron(k, &pts);
  std::vector<Triple> monomials;
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b)
      for (int c = 0; a + b + c <= degree; ++c)
        if ((a + b + c) % 2 == 1) monomials.push_back({a, b, c});
  for (int attempt = 0; attempt < 50; ++attempt) {
    std::vector<Rational> coeff;
    for (std::size_t i = 0; i < monomials.size(); ++i) coeff.push_back(rng.uniform_rational(-1, 1, 12));
    SurfaceComplex s = base;
    set_odd_values(s, [&](int v) {
      Rational sum = 0;
      for (std::size_t i = 0; i < monomials.size(); ++i) {
        Rational term = coeff[i];
        for (int d = 0; d < 3; ++d) term *= pow(ratio(pts[v][d], k), static_cast<unsigned>(monomials[i][d]));
        sum += term;
      }
      return sum;
    });
    random_areas(s, rng);
    if (make_simple(s, rng.engine()())) return s;
  }
  throw PreconditionError("no simple Morse odd polynomial found");
}

SurfaceComplex torus_grid(const TorusSpec& spec) {
  const int n = spec.n, m = spec.m;
  if (n < 4 || m < 4 || n % 2 || m % 2) throw PreconditionError("torus grid needs even n, m >= 4");
  SurfaceComplex s;
  auto at = [&](int i, int j) { return ((i % n + n) % n) * m + (j % m + m) % m; };
  s.involution.resize(static_cast<std::size_t>(n) * m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) s.involution[at(i, j)] = at(i + n / 2, -j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      const int a = at(i, j), b = at(i + 1, j), c = at(i + 1, j + 1), d = at(i, j + 1);
      // the glide sends row j to row -j-1, so alternating diagonals are preserved
      if (j % 2 == 0) {
        s.triangles.push_back({a, b, c});
        s.triangles.push_back({a, c, d});
      } else {
        s.triangles.push_back({a, b, d});
        s.triangles.push_back({b, c, d});
      }
    }
  const double tau = 2 * std::numbers::pi;
  auto phi = [&](int v) { return tau * (v / m + spec.phase) / n; };
  auto theta = [&](int v) { return tau * (v % m) / m; };
  set_odd_values(s, [&](int v) { return from_double(spec.height(phi(v), theta(v)), 24); });
  fill_ids(s);
  if (spec.geometric_areas) {
    auto pos = [&](int v) {
      const double r = 2.0 + std::cos(theta(v));
      return std::array<double, 3>{r * std::cos(phi(v)), r * std::sin(phi(v)), std::sin(theta(v))};
    };
    for (const auto& t : s.triangles) {
      const auto p = pos(t[0]), q = pos(t[1]), r = pos(t[2]);
      const std::array<double, 3> u{q[0] - p[0], q[1] - p[1], q[2] - p[2]}, w{r[0] - p[0], r[1] - p[1], r[2] - p[2]};
      const double cx = u[1] * w[2] - u[2] * w[1], cy = u[2] * w[0] - u[0] * w[2], cz = u[0] * w[1] - u[1] * w[0];
      s.areas.push_back(from_double(0.5 * std::sqrt(cx * cx + cy * cy + cz * cz), 20));
    }
    symmetrize_areas(s);
  } else {
    Rng rng(spec.seed);
    random_areas(s, rng);
  }
  if (!make_simple(s, spec.seed)) throw PreconditionError("torus height is not simple Morse on this grid");
  return s;
}

SurfaceComplex vertical_torus(int n, int m) {
  TorusSpec spec;
  spec.n = n;
  spec.m = m;
  spec.height = torus_height_vertical;
  return torus_grid(spec);
}

SurfaceComplex inclined_torus(int n, int m) {
  TorusSpec spec;
  spec.n = n;
  spec.m = m;
  spec.height = torus_height_inclined;
  return torus_grid(spec);
}

SurfaceComplex random_torus(Rng& rng, int n, int m) {
  struct Term {
    int a, b;
    bool sin_phi, sin_theta;
    double c;
  };
  for (int attempt = 0; attempt < 50; ++attempt) {
    // t1(a phi) t2(b theta) is odd under the glide iff (-1)^a * (t2 == sin ? -1 : 1) == -1
    std::vector<Term> terms{{0, 1, false, true, 1.0}};
    const int extra = static_cast<int>(rng.uniform_int(1, 4));
    while (static_cast<int>(terms.size()) <= extra) {
      Term t{static_cast<int>(rng.uniform_int(0, 2)), static_cast<int>(rng.uniform_int(0, 2)), rng.uniform_int(0, 1) == 1,
             rng.uniform_int(0, 1) == 1, 0.0};
      if ((t.a == 0 && t.sin_phi) || (t.b == 0 && t.sin_theta)) continue;
      const int sign = (t.a % 2 ? -1 : 1) * (t.sin_theta ? -1 : 1);
      if (sign != -1) continue;
      t.c = 2 * rng.uniform01() - 1;
      terms.push_back(t);
    }
    TorusSpec spec;
    spec.n = n;
    spec.m = m;
    spec.phase = 0.05 + 0.9 * rng.uniform01();
    spec.geometric_areas = false;
    spec.seed = rng.engine()();
    spec.height = [terms](double phi, double theta) {
      double sum = 0;
      for (const auto& t : terms)
        sum += t.c * (t.sin_phi ? std::sin(t.a * phi) : std::cos(t.a * phi)) *
               (t.sin_theta ? std::sin(t.b * theta) : std::cos(t.b * theta));
      return sum;
    };
    try {
      return torus_grid(spec);
    } catch (const PreconditionError&) {
    }
  }
  throw PreconditionError("no simple Morse odd torus height found");
}

SurfaceComplex genus3_polycube() {
  constexpr int X = 7, Y = 3;
  auto solid = [](int x, int y, int z) {
    if (x < 0 || x >= X || y < 0 || y >= Y || z != 0) return false;
    return !(y == 1 && (x == 1 || x == 3 || x == 5));
  };
  SurfaceComplex s;
  std::map<Triple, int> index;
  std::vector<Triple> pts;
  auto vertex = [&](const Triple& p) {
    auto [it, inserted] = index.emplace(p, static_cast<int>(pts.size()));
    if (inserted) pts.push_back(p);
    return it->second;
  };
  for (int x = 0; x < X; ++x)
    for (int y = 0; y < Y; ++y) {
      if (!solid(x, y, 0)) continue;
      const Triple cell{x, y, 0};
      for (int k = 0; k < 3; ++k)
        for (int dir : {1, -1}) {
          Triple nb = cell;
          nb[k] += dir;
          if (solid(nb[0], nb[1], nb[2])) continue;
          const int i = (k + 1) % 3, j = (k + 2) % 3;
          Triple base = cell;
          if (dir > 0) base[k] += 1;
          Triple c1 = base, c2 = base, c3 = base;
          c1[i] += 1;
          c2[i] += 1;
          c2[j] += 1;
          c3[j] += 1;
          const int a = vertex(base), b = vertex(c1), c = vertex(c2), d = vertex(c3);
          // diagonal joins the minimal and maximal corners, which the reflection preserves
          if (dir > 0) {
            s.triangles.push_back({a, b, c});
            s.triangles.push_back({a, c, d});
          } else {
            s.triangles.push_back({a, d, c});
            s.triangles.push_back({a, c, b});
          }
        }
    }
  s.involution.resize(pts.size());
  for (std::size_t v = 0; v < pts.size(); ++v) s.involution[v] = index.at({X - pts[v][0], Y - pts[v][1], 1 - pts[v][2]});
  s.f.resize(pts.size());
  for (std::size_t v = 0; v < pts.size(); ++v)
    s.f[v] = ratio(2 * pts[v][0] - X, 2) + ratio(2 * pts[v][1] - Y, 22) + ratio(2 * pts[v][2] - 1, 202);
  s.areas.assign(s.triangles.size(), ratio(1, 2));
  fill_ids(s);
  return s;
}

SurfaceComplex monkey_saddle() {
  SurfaceComplex s;
  // 0 = north, 1 = south, 2..7 = hexagon
  s.f = {ratio(1, 2), ratio(-1, 2), 1, ratio(-11, 10), ratio(6, 5), -1, ratio(11, 10), ratio(-6, 5)};
  s.involution = {1, 0, 5, 6, 7, 2, 3, 4};
  for (int j = 0; j < 6; ++j) {
    const int h = 2 + j, next = 2 + (j + 1) % 6;
    s.triangles.push_back({0, h, next});
    s.triangles.push_back({1, next, h});
  }
  s.areas.assign(s.triangles.size(), 1);
  fill_ids(s);
  return s;
}

SurfaceComplex random_equivariant_mesh(Rng& rng, int max_triangles) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    try {
      if (rng.uniform_int(0, 2) > 0) {
        const int n = 2 * static_cast<int>(rng.uniform_int(6, 20));
        const int m = 2 * static_cast<int>(rng.uniform_int(6, 20));
        if (2 * n * m > max_triangles) continue;
        return random_torus(rng, n, m);
      }
      const int k = static_cast<int>(rng.uniform_int(2, 8));
      if (8 * k * k > max_triangles) continue;
      return random_sphere(rng, k, rng.uniform_int(0, 1) ? 3 : 1);
    } catch (const PreconditionError&) {
    }
  }
  throw PreconditionError("no random mesh found");
}

DiscreteOneForm torus_angle_form(const SurfaceComplex& s, const Connectivity& c, int n, int m) {
  if (static_cast<int>(s.vertex_count()) != n * m) throw PreconditionError("mesh is not an n x m torus grid");
  DiscreteOneForm alpha = DiscreteOneForm::zero(c);
  for (std::size_t e = 0; e < c.edges.size(); ++e) {
    const auto [u, v] = c.edges[e];
    int step = v / m - u / m;
    if (step > 1) step -= n;
    if (step < -1) step += n;
    alpha.values[e] = ratio(step, n);
  }
  return alpha;
}

std::vector<std::string> fixture_names() {
  return {"vertical-torus", "inclined-torus", "sphere",      "octahedron",   "perturbed-octahedron",
          "flat-torus",     "genus3",         "monkey-saddle", "random-torus", "random-sphere", "random"};
}

SurfaceComplex named_fixture(const std::string& name, std::uint64_t seed) {
  Rng rng(seed);
  if (name == "vertical-torus") return vertical_torus();
  if (name == "inclined-torus") return inclined_torus();
  if (name == "sphere") return sphere_fixture();
  if (name == "octahedron") return octahedron_z();
  if (name == "perturbed-octahedron") return perturbed_octahedron();
  if (name == "flat-torus") return random_torus(rng, 16, 16);
  if (name == "genus3") return genus3_polycube();
  if (name == "monkey-saddle") return monkey_saddle();
  if (name == "random-torus") return random_torus(rng, 2 * static_cast<int>(rng.uniform_int(6, 16)), 2 * static_cast<int>(rng.uniform_int(6, 16)));
  if (name == "random-sphere") return random_sphere(rng, static_cast<int>(rng.uniform_int(2, 6)), 3);
  if (name == "random") return random_equivariant_mesh(rng);
  throw InputError("unknown fixture \"" + name + "\"");
}

}  // namespace reebinv
