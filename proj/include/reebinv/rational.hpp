#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace reebinv {

using Rational = mpq_class;

/// Thrown for malformed input: unparsable numbers, missing fields, dangling ids.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an operation's precondition does not hold for its input.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// num/den in lowest terms. Prefer this to the two-argument mpq_class
/// constructor, which does not canonicalize.
inline Rational ratio(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p/q", "-p/q", integers and finite decimals ("1.25", "-0.5e-3" is not accepted).
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_rational(const Rational& value);

Rational pow(const Rational& base, unsigned exponent);

/// Nearest rational with denominator 2^bits; used to turn sampled doubles into exact data.
Rational from_double(double value, unsigned bits = 24);

/// Deterministic draws. std::uniform_*_distribution is implementation-defined,
/// so seeded outputs would differ across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Uniform double in [0, 1).
  double uniform01();
  /// Rational in the open interval (lo, hi) with denominator dividing 2^bits * (hi-lo) grid.
  Rational uniform_rational(const Rational& lo, const Rational& hi, unsigned bits = 20);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace reebinv
