#include "shiftlab/exact.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace shiftlab {

namespace {

using i128 = __int128;

std::int64_t gcd3(std::int64_t a, std::int64_t b, std::int64_t c) {
  return std::gcd(std::gcd(std::llabs(a), std::llabs(b)), std::llabs(c));
}

// Splits n into s^2 * f with f squarefree; returns (s, f).
std::pair<std::int64_t, std::int64_t> square_part(std::int64_t n) {
  std::int64_t s = 1, f = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    while (n % (p * p) == 0) {
      s *= p;
      n /= p * p;
    }
    if (n % p == 0) {
      f *= p;
      n /= p;
    }
  }
  return {s, f * n};
}

int sign_of(i128 v) { return v < 0 ? -1 : (v > 0 ? 1 : 0); }

// Sign of a + b*sqrt(d), exact.
int sign_quad(std::int64_t a, std::int64_t b, std::int64_t d) {
  if (b == 0) return sign_of(a);
  if (a == 0) return sign_of(b);
  if (a > 0 && b > 0) return 1;
  if (a < 0 && b < 0) return -1;
  i128 a2 = i128(a) * a;
  i128 b2d = i128(b) * b * d;
  if (a > 0) return a2 > b2d ? 1 : (a2 < b2d ? -1 : 0);
  return b2d > a2 ? 1 : (b2d < a2 ? -1 : 0);
}

}  // namespace

ExactReal ExactReal::rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("ExactReal: zero denominator");
  return ExactReal(num, 0, den, 0);
}

ExactReal ExactReal::quadratic(std::int64_t a, std::int64_t b, std::int64_t d,
                               std::int64_t c) {
  if (c == 0) throw std::invalid_argument("ExactReal: zero denominator");
  if (d < 0) throw std::invalid_argument("ExactReal: negative radicand");
  return ExactReal(a, b, c, d);
}

void ExactReal::normalize() {
  if (c_ < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
  }
  if (d_ == 0 || d_ == 1) {
    a_ += b_ * d_;  // d == 1: sqrt(1) folds into the rational part
    b_ = 0;
    d_ = 0;
  }
  if (b_ != 0) {
    auto [s, f] = square_part(d_);
    b_ *= s;
    d_ = f;
    if (d_ == 1 || d_ == 0) {
      a_ += b_;
      b_ = 0;
      d_ = 0;
    }
  }
  if (b_ == 0) d_ = 0;
  std::int64_t g = gcd3(a_, b_, c_);
  if (g > 1) {
    a_ /= g;
    b_ /= g;
    c_ /= g;
  }
}

std::int64_t ExactReal::num() const {
  if (b_ != 0) throw std::domain_error("ExactReal: not rational");
  return a_;
}

std::int64_t ExactReal::den() const {
  if (b_ != 0) throw std::domain_error("ExactReal: not rational");
  return c_;
}

ExactReal ExactReal::operator+(const ExactReal& o) const {
  if (b_ != 0 && o.b_ != 0 && d_ != o.d_)
    throw std::domain_error("ExactReal: incompatible radicals");
  std::int64_t d = b_ != 0 ? d_ : o.d_;
  return ExactReal(a_ * o.c_ + o.a_ * c_, b_ * o.c_ + o.b_ * c_, c_ * o.c_, d);
}

ExactReal ExactReal::operator-(const ExactReal& o) const { return *this + (-o); }

ExactReal ExactReal::operator-() const { return ExactReal(-a_, -b_, c_, d_); }

ExactReal ExactReal::times(std::int64_t k) const {
  return ExactReal(a_ * k, b_ * k, c_, d_);
}

int ExactReal::compare(const ExactReal& o) const {
  if (b_ != 0 && o.b_ != 0 && d_ != o.d_)
    throw std::domain_error("ExactReal: incompatible radicals");
  std::int64_t d = b_ != 0 ? d_ : o.d_;
  // this - other = (a b) with common denominator; denominators positive.
  std::int64_t a = a_ * o.c_ - o.a_ * c_;
  std::int64_t b = b_ * o.c_ - o.b_ * c_;
  return sign_quad(a, b, d);
}

bool ExactReal::leq_value(std::int64_t m) const {
  // m <= (a + b sqrt d)/c  <=>  m c - a <= b sqrt d.
  std::int64_t lhs = m * c_ - a_;
  if (b_ == 0) return lhs <= 0;
  if (b_ > 0) {
    if (lhs <= 0) return true;
    return i128(lhs) * lhs <= i128(b_) * b_ * d_;
  }
  if (lhs >= 0) return false;
  return i128(lhs) * lhs >= i128(b_) * b_ * d_;
}

std::int64_t ExactReal::floor() const {
  if (b_ == 0) {
    std::int64_t q = a_ / c_;
    if (a_ % c_ != 0 && a_ < 0) --q;
    return q;
  }
  std::int64_t m = static_cast<std::int64_t>(std::floor(approx())) - 2;
  while (leq_value(m + 1)) ++m;
  return m;
}

std::int64_t ExactReal::ceil() const {
  if (b_ == 0) {
    std::int64_t q = a_ / c_;
    if (a_ % c_ != 0 && a_ > 0) ++q;
    return q;
  }
  return -((-*this).floor());
}

double ExactReal::approx() const {
  return (static_cast<double>(a_) +
          static_cast<double>(b_) * std::sqrt(static_cast<double>(d_))) /
         static_cast<double>(c_);
}

std::string ExactReal::str() const {
  std::ostringstream os;
  if (b_ == 0) {
    os << a_;
    if (c_ != 1) os << "/" << c_;
  } else {
    os << "(" << a_ << (b_ >= 0 ? "+" : "-") << std::llabs(b_) << "*sqrt(" << d_
       << "))/" << c_;
  }
  return os.str();
}

ExactReal ExactReal::parse(const std::string& text) {
  // Accepted forms: "p", "p/q", "(a+b*sqrt(d))/c", "(a-b*sqrt(d))/c".
  if (!text.empty() && text[0] == '(') {
    std::int64_t a, b, d, c;
    char sign;
    int consumed = 0;
    if (std::sscanf(text.c_str(), "(%ld%c%ld*sqrt(%ld))/%ld%n", &a, &sign, &b,
                    &d, &c, &consumed) == 5 &&
        consumed == static_cast<int>(text.size()) &&
        (sign == '+' || sign == '-')) {
      return quadratic(a, sign == '-' ? -b : b, d, c);
    }
    throw std::invalid_argument("ExactReal: cannot parse '" + text + "'");
  }
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return rational(std::stoll(text));
    return rational(std::stoll(text.substr(0, slash)),
                    std::stoll(text.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw std::invalid_argument("ExactReal: cannot parse '" + text + "'");
  }
}

std::ostream& operator<<(std::ostream& os, const ExactReal& x) {
  return os << x.str();
}

bool in_unit_interval(const ExactReal& x) {
  return x >= ExactReal::rational(0) && x <= ExactReal::rational(1);
}

Slope make_slope_rational(std::int64_t num, std::int64_t den) {
  Slope s = ExactReal::rational(num, den);
  if (!in_unit_interval(s)) throw std::domain_error("slope outside [0,1]");
  return s;
}

Slope make_slope_quadratic(std::int64_t a, std::int64_t b, std::int64_t d,
                           std::int64_t c) {
  Slope s = ExactReal::quadratic(a, b, d, c);
  if (s.is_rational())
    throw std::domain_error("quadratic slope degenerates to a rational");
  if (!in_unit_interval(s)) throw std::domain_error("slope outside [0,1]");
  return s;
}

}  // namespace shiftlab
