#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace shiftlab {

// Exact real number of the form (a + b*sqrt(d)) / c with integer a, b, c, d,
// c > 0 and d squarefree. b == 0 encodes a rational (then d == 0 as well).
// All arithmetic and comparisons are exact; mixing two quadratic values over
// different radicals is rejected.
class ExactReal {
 public:
  ExactReal() = default;  // zero

  static ExactReal rational(std::int64_t num, std::int64_t den = 1);
  static ExactReal quadratic(std::int64_t a, std::int64_t b, std::int64_t d,
                             std::int64_t c);

  bool is_rational() const { return b_ == 0; }
  bool is_integer() const { return b_ == 0 && c_ == 1; }

  // Rational accessors; throw on quadratic values.
  std::int64_t num() const;
  std::int64_t den() const;

  std::int64_t radical() const { return d_; }

  ExactReal operator+(const ExactReal& o) const;
  ExactReal operator-(const ExactReal& o) const;
  ExactReal operator-() const;
  ExactReal times(std::int64_t k) const;

  // Three-way comparison: -1, 0, +1.
  int compare(const ExactReal& o) const;
  bool operator<(const ExactReal& o) const { return compare(o) < 0; }
  bool operator<=(const ExactReal& o) const { return compare(o) <= 0; }
  bool operator>(const ExactReal& o) const { return compare(o) > 0; }
  bool operator>=(const ExactReal& o) const { return compare(o) >= 0; }
  bool operator==(const ExactReal& o) const { return compare(o) == 0; }
  bool operator!=(const ExactReal& o) const { return compare(o) != 0; }

  std::int64_t floor() const;
  std::int64_t ceil() const;

  double approx() const;

  // "p/q", "p", or "(a+b*sqrt(d))/c".
  std::string str() const;
  static ExactReal parse(const std::string& text);

 private:
  ExactReal(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
      : a_(a), b_(b), c_(c), d_(d) {
    normalize();
  }
  void normalize();
  bool leq_value(std::int64_t m) const;  // m <= value, exactly

  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
  std::int64_t c_ = 1;
  std::int64_t d_ = 0;
};

std::ostream& operator<<(std::ostream& os, const ExactReal& x);

// A slope is an exact real in [0,1]; helper validates on construction sites.
using Slope = ExactReal;

Slope make_slope_rational(std::int64_t num, std::int64_t den);
Slope make_slope_quadratic(std::int64_t a, std::int64_t b, std::int64_t d,
                           std::int64_t c);
bool in_unit_interval(const ExactReal& x);

}  // namespace shiftlab
