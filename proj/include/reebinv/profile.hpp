#pragma once

#include <string>
#include <vector>

#include "reebinv/rational.hpp"

namespace reebinv {

/// a t^2 + b t + c
struct Quadratic {
  Rational a, b, c;

  Rational operator()(const Rational& t) const { return (a * t + b) * t + c; }
  Rational derivative(const Rational& t) const { return 2 * a * t + b; }
  Quadratic& operator+=(const Quadratic& o) {
    a += o.a;
    b += o.b;
    c += o.c;
    return *this;
  }
  bool operator==(const Quadratic&) const = default;
};

/// Cumulative measure m(t) = mu{x on the edge : f(x) <= t} on [lo, hi].
/// Piece i covers [breaks[i-1], breaks[i]] with breaks bracketed by lo and hi;
/// pieces.size() == breaks.size() + 1. Coefficients are in absolute t.
struct EdgeMeasureProfile {
  Rational lo, hi;
  std::vector<Rational> breaks;
  std::vector<Quadratic> pieces;

  /// Uniform measure of the given mass on [lo, hi].
  static EdgeMeasureProfile uniform(const Rational& lo, const Rational& hi, const Rational& mass);

  std::size_t piece_index(const Rational& t) const;
  Rational piece_start(std::size_t i) const { return i == 0 ? lo : breaks[i - 1]; }
  Rational piece_end(std::size_t i) const { return i == breaks.size() ? hi : breaks[i]; }

  /// m(t), extended by 0 below lo and by the total mass above hi.
  Rational operator()(const Rational& t) const;
  Rational mass() const { return pieces.back()(hi); }

  /// Integral of s^k dm(s) over [lo, min(t, hi)].
  Rational partial_moment(unsigned k, const Rational& t) const;
  Rational moment(unsigned k) const { return partial_moment(k, hi); }

  /// t -> mass - m(-t), on [-hi, -lo]: the profile of the involution image.
  EdgeMeasureProfile mirrored() const;

  /// Drops breakpoints at which the neighbouring pieces coincide.
  void simplify();

  /// Empty when the profile is a valid cumulative measure; otherwise the reasons.
  std::vector<std::string> violations() const;
};

/// sup over t of |p(t) - q(t)|, exact. Both profiles are extended past their domains.
Rational sup_distance(const EdgeMeasureProfile& p, const EdgeMeasureProfile& q);

inline bool same_measure(const EdgeMeasureProfile& p, const EdgeMeasureProfile& q) {
  return p.lo == q.lo && p.hi == q.hi && sup_distance(p, q) == 0;
}

}  // namespace reebinv
