#include "reebinv/profile.hpp"

#include <algorithm>

namespace reebinv {

EdgeMeasureProfile EdgeMeasureProfile::uniform(const Rational& lo, const Rational& hi,
                                               const Rational& mass) {
  EdgeMeasureProfile p;
  p.lo = lo;
  p.hi = hi;
  const Rational slope = mass / (hi - lo);
  p.pieces.push_back({0, slope, -slope * lo});
  return p;
}

std::size_t EdgeMeasureProfile::piece_index(const Rational& t) const {
  auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
  return static_cast<std::size_t>(it - breaks.begin());
}

Rational EdgeMeasureProfile::operator()(const Rational& t) const {
  if (t <= lo) return 0;
  if (t >= hi) return mass();
  return pieces[piece_index(t)](t);
}

Rational EdgeMeasureProfile::partial_moment(unsigned k, const Rational& t) const {
  // dm = (2a s + b) ds on each piece
  Rational total = 0;
  if (t <= lo) return total;
  const Rational end = t < hi ? t : hi;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Rational p = piece_start(i);
    if (p >= end) break;
    const Rational q = std::min(piece_end(i), end);
    const auto& piece = pieces[i];
    total += 2 * piece.a * (pow(q, k + 2) - pow(p, k + 2)) / (k + 2) +
             piece.b * (pow(q, k + 1) - pow(p, k + 1)) / (k + 1);
  }
  return total;
}

EdgeMeasureProfile EdgeMeasureProfile::mirrored() const {
  EdgeMeasureProfile out;
  out.lo = -hi;
  out.hi = -lo;
  const Rational total = mass();
  for (auto it = breaks.rbegin(); it != breaks.rend(); ++it) out.breaks.push_back(-*it);
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it)
    out.pieces.push_back({-it->a, it->b, total - it->c});
  return out;
}

void EdgeMeasureProfile::simplify() {
  std::vector<Rational> nb;
  std::vector<Quadratic> np{pieces.front()};
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    if (pieces[i + 1] == np.back()) continue;
    nb.push_back(breaks[i]);
    np.push_back(pieces[i + 1]);
  }
  breaks = std::move(nb);
  pieces = std::move(np);
}

std::vector<std::string> EdgeMeasureProfile::violations() const {
  std::vector<std::string> out;
  if (!(lo < hi)) out.push_back("empty interval");
  if (pieces.size() != breaks.size() + 1) {
    out.push_back("piece count does not match breakpoints");
    return out;
  }
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    if (!(piece_start(i) < breaks[i]) || !(breaks[i] < hi)) out.push_back("breakpoints not interior and sorted");
    if (pieces[i](breaks[i]) != pieces[i + 1](breaks[i])) out.push_back("discontinuous at breakpoint");
  }
  if (pieces.front()(lo) != 0) out.push_back("m(lo) != 0");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].derivative(piece_start(i)) < 0 || pieces[i].derivative(piece_end(i)) < 0)
      out.push_back("decreasing");
  }
  if (mass() <= 0) out.push_back("non-positive mass");
  return out;
}

namespace {

Rational extended_eval(const EdgeMeasureProfile& p, const Rational& t) { return p(t); }

// Quadratic describing p on an open interval (x, y) lying inside one of its pieces or outside.
Quadratic local_form(const EdgeMeasureProfile& p, const Rational& mid) {
  if (mid <= p.lo) return {0, 0, 0};
  if (mid >= p.hi) return {0, 0, p.mass()};
  return p.pieces[p.piece_index(mid)];
}

}  // namespace

Rational sup_distance(const EdgeMeasureProfile& p, const EdgeMeasureProfile& q) {
  std::vector<Rational> knots{p.lo, p.hi, q.lo, q.hi};
  knots.insert(knots.end(), p.breaks.begin(), p.breaks.end());
  knots.insert(knots.end(), q.breaks.begin(), q.breaks.end());
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  Rational best = 0;
  auto consider = [&](const Rational& t) {
    Rational d = abs(extended_eval(p, t) - extended_eval(q, t));
    if (d > best) best = d;
  };
  for (const auto& k : knots) consider(k);
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const Rational mid = (knots[i] + knots[i + 1]) / 2;
    Quadratic a = local_form(p, mid), b = local_form(q, mid);
    const Rational qa = a.a - b.a, qb = a.b - b.b;
    if (qa == 0) continue;
    const Rational vertex = -qb / (2 * qa);
    if (knots[i] < vertex && vertex < knots[i + 1]) consider(vertex);
  }
  return best;
}

}  // namespace reebinv
