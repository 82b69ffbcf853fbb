#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "shiftlab/words.hpp"

using namespace shiftlab;

namespace {

// Brute-force oracle: compare every pair of equal-length subwords directly.
bool oracle_k_balanced(const std::string& s, int k) {
  int len = static_cast<int>(s.size());
  for (int n = 1; n <= len; ++n)
    for (int i = 0; i + n <= len; ++i)
      for (int j = 0; j + n <= len; ++j) {
        int ci = 0, cj = 0;
        for (int t = 0; t < n; ++t) {
          ci += s[i + t] == '1';
          cj += s[j + t] == '1';
        }
        if (std::abs(ci - cj) > k) return false;
      }
  return true;
}

// Brute-force oracle for the slope interval endpoints.
std::pair<ExactReal, ExactReal> oracle_interval(const std::string& s) {
  ExactReal lo = ExactReal::rational(-1000), hi = ExactReal::rational(1000);
  int len = static_cast<int>(s.size());
  for (int n = 1; n <= len; ++n)
    for (int i = 0; i + n <= len; ++i) {
      int c = 0;
      for (int t = 0; t < n; ++t) c += s[i + t] == '1';
      ExactReal a = ExactReal::rational(c - 1, n);
      ExactReal b = ExactReal::rational(c + 1, n);
      if (a > lo) lo = a;
      if (b < hi) hi = b;
    }
  auto clamp = [](ExactReal x) {
    if (x < ExactReal::rational(0)) return ExactReal::rational(0);
    if (x > ExactReal::rational(1)) return ExactReal::rational(1);
    return x;
  };
  return {clamp(lo), clamp(hi)};
}

// Direct evaluation of characteristic windows for rational slopes.
std::string oracle_lower(long p, long q, long lo, long hi) {
  auto fl = [&](long n) {
    long v = n * p;
    long r = v / q;
    if (v % q != 0 && v < 0) --r;
    return r;
  };
  std::string out;
  for (long n = lo; n <= hi; ++n)
    out.push_back(static_cast<char>('0' + (fl(n + 1) - fl(n))));
  return out;
}

std::string oracle_upper(long p, long q, long lo, long hi) {
  auto ce = [&](long n) {
    long v = n * p;
    long r = v / q;
    if (v % q != 0 && v > 0) ++r;
    return r;
  };
  std::string out;
  for (long n = lo; n <= hi; ++n)
    out.push_back(static_cast<char>('0' + (ce(n + 1) - ce(n))));
  return out;
}

bool oracle_jointly_balanced(const std::string& a, const std::string& b) {
  int n_max = static_cast<int>(std::min(a.size(), b.size()));
  for (int n = 1; n <= n_max; ++n)
    for (int i = 0; i + n <= static_cast<int>(a.size()); ++i)
      for (int j = 0; j + n <= static_cast<int>(b.size()); ++j) {
        int ca = 0, cb = 0;
        for (int t = 0; t < n; ++t) {
          ca += a[i + t] == '1';
          cb += b[j + t] == '1';
        }
        if (std::abs(ca - cb) > 1) return false;
      }
  return true;
}

}  // namespace

TEST_CASE("ones_count basics") {
  CHECK(ones_count(Word("00101")) == 2);
  CHECK(ones_count(Word("")) == 0);
  CHECK(ones_count(Word("1111")) == 4);
  CHECK_THROWS(ones_count(Word("0a1")));
}

TEST_CASE("is_k_balanced matches the exhaustive oracle") {
  CHECK(oracle_k_balanced("010010", 1));
  CHECK(is_k_balanced(Word("010010"), 1));
  CHECK_FALSE(is_k_balanced(Word("0011"), 1));  // "00" vs "11"
  CHECK(oracle_k_balanced("0011", 2));
  CHECK(is_k_balanced(Word("0011"), 2));

  // random cross-check
  std::uint64_t state = 12345;
  auto next = [&] { state = state * 6364136223846793005ULL + 1442695040888963407ULL; return state >> 33; };
  for (int it = 0; it < 200; ++it) {
    int len = 1 + static_cast<int>(next() % 12);
    std::string s;
    for (int i = 0; i < len; ++i) s.push_back(next() % 2 ? '1' : '0');
    for (int k = 1; k <= 3; ++k)
      CHECK(is_k_balanced(Word(s), k) == oracle_k_balanced(s, k));
  }
}

TEST_CASE("slope_interval examples and oracle") {
  auto iv = slope_interval(Word("010"));
  CHECK(iv.lo == ExactReal::rational(0));
  CHECK(iv.hi == ExactReal::rational(2, 3));

  iv = slope_interval(Word("0"));
  CHECK(iv.lo == ExactReal::rational(0));
  CHECK(iv.hi == ExactReal::rational(1));

  iv = slope_interval(Word("00101"));
  CHECK(iv.lo == ExactReal::rational(1, 3));
  CHECK(iv.hi == ExactReal::rational(1, 2));

  CHECK_THROWS(slope_interval(Word("")));

  std::uint64_t state = 999;
  auto next = [&] { state = state * 6364136223846793005ULL + 1442695040888963407ULL; return state >> 33; };
  for (int it = 0; it < 100; ++it) {
    int len = 1 + static_cast<int>(next() % 10);
    std::string s;
    for (int i = 0; i < len; ++i) s.push_back(next() % 2 ? '1' : '0');
    auto got = slope_interval(Word(s));
    auto [lo, hi] = oracle_interval(s);
    CHECK(got.lo == lo);
    CHECK(got.hi == hi);
  }
}

TEST_CASE("characteristic windows, rational slopes") {
  CHECK(lower_char_window(make_slope_rational(2, 5), 0, 4).letters() == "00101");
  CHECK(oracle_lower(2, 5, 0, 4) == "00101");
  CHECK(lower_char_window(make_slope_rational(1, 2), 0, 3).letters() == "0101");
  CHECK(lower_char_window(make_slope_rational(0, 1), -3, 3).letters() == "0000000");
  CHECK(lower_char_window(make_slope_rational(0, 1), -3, 3).offset() == -3);

  CHECK(upper_char_window(make_slope_rational(1, 2), 0, 3).letters() == "1010");
  CHECK(oracle_upper(1, 2, 0, 3) == "1010");
  CHECK(upper_char_window(make_slope_rational(1, 1), 0, 2).letters() == "111");
  // direct ceiling evaluation
  CHECK(oracle_upper(2, 5, 0, 4) == "10100");
  CHECK(upper_char_window(make_slope_rational(2, 5), 0, 4).letters() == "10100");

  // broad cross-check against the integer oracle
  for (long q = 1; q <= 9; ++q)
    for (long p = 0; p <= q; ++p) {
      Slope a = make_slope_rational(p, q);
      CHECK(lower_char_window(a, -15, 15).letters() == oracle_lower(p, q, -15, 15));
      CHECK(upper_char_window(a, -15, 15).letters() == oracle_upper(p, q, -15, 15));
    }
}

TEST_CASE("characteristic windows, quadratic slopes against double evaluation") {
  // golden mean conjugate (sqrt(5)-1)/2 and 1/sqrt(2)
  Slope g = make_slope_quadratic(-1, 1, 5, 2);
  Slope r2 = make_slope_quadratic(0, 1, 2, 2);
  for (Slope a : {g, r2}) {
    double ad = a.approx();
    Word w = lower_char_window(a, -40, 40);
    for (long n = -40; n <= 40; ++n) {
      long lhs = static_cast<long>(std::floor((n + 1) * ad)) -
                 static_cast<long>(std::floor(n * ad));
      CHECK(w.at(n) == static_cast<char>('0' + lhs));
    }
  }
}

TEST_CASE("char_shift_offset and the shift identity") {
  CHECK(char_shift_offset(make_slope_rational(2, 5)) == 3);
  CHECK(char_shift_offset(make_slope_rational(1, 2)) == 1);
  CHECK(char_shift_offset(make_slope_rational(3, 7)) == 5);
  CHECK(char_shift_offset(make_slope_rational(0, 1)) == 0);
  CHECK(char_shift_offset(make_slope_rational(1, 1)) == 0);

  // sigma^k(upper) == lower on [-20,20], i.e. upper(n+k) == lower(n)
  for (long j = 2; j <= 9; ++j)
    for (long i = 1; i < j; ++i) {
      if (std::gcd(i, j) != 1) continue;
      Slope a = make_slope_rational(i, j);
      long k = char_shift_offset(a);
      Word lower = lower_char_window(a, -20, 20);
      Word upper = upper_char_window(a, -20 + k, 20 + k);
      for (long n = -20; n <= 20; ++n) CHECK(upper.at(n + k) == lower.at(n));
    }
}

TEST_CASE("balanced-sequence laws on characteristic windows") {
  // Corollary-style exact bounds: | |v| a - #(v,1) | <= 1 for every subword of
  // a characteristic window, and counts land in {floor, ceil} when n*a is not
  // an integer.
  std::vector<Slope> slopes = {
      make_slope_rational(2, 5), make_slope_rational(3, 7),
      make_slope_rational(1, 4), make_slope_quadratic(-1, 1, 5, 2),
      make_slope_quadratic(0, 1, 2, 2)};
  for (const Slope& a : slopes) {
    for (bool upper : {false, true}) {
      Word w = upper ? upper_char_window(a, -30, 30) : lower_char_window(a, -30, 30);
      const std::string& s = w.letters();
      int len = static_cast<int>(s.size());
      for (int n = 1; n <= len; ++n) {
        for (int i = 0; i + n <= len; ++i) {
          int c = 0;
          for (int t = 0; t < n; ++t) c += s[i + t] == '1';
          ExactReal na = a.times(n);
          CHECK(na - ExactReal::rational(c) <= ExactReal::rational(1));
          CHECK(ExactReal::rational(c) - na <= ExactReal::rational(1));
          if (!na.is_integer()) {
            bool hit = (c == na.floor()) || (c == na.ceil());
            CHECK(hit);
          }
        }
      }
    }
  }
}

TEST_CASE("characteristic windows converge as the slope is perturbed") {
  // Lower windows on nonnegative ranges are stable under small increases of
  // the slope, upper windows under small decreases. Note the restriction to
  // n >= 0: floors are only right-continuous, and at negative multiples of
  // the denominator the letter genuinely flips for every perturbation size
  // (e.g. slope 2/5 at n = -5).
  for (auto [p, q] : std::vector<std::pair<long, long>>{{2, 5}, {1, 2}, {3, 7}}) {
    Slope a = make_slope_rational(p, q);
    Word base_lower = lower_char_window(a, 0, 20);
    Word base_upper = upper_char_window(a, 0, 20);
    bool lower_stable = false, upper_stable = false;
    for (long m = 100; m <= 2000; m *= 2) {
      // alpha + 1/m and alpha - 1/m
      Slope up = ExactReal::rational(p, q) + ExactReal::rational(1, m);
      Slope down = ExactReal::rational(p, q) - ExactReal::rational(1, m);
      if (lower_char_window(up, 0, 20) == base_lower) lower_stable = true;
      if (upper_char_window(down, 0, 20) == base_upper) upper_stable = true;
    }
    CHECK(lower_stable);
    CHECK(upper_stable);

    // the two-sided window still converges to *some* balanced sequence of
    // the same slope: check balancedness of the perturbed window
    Slope up = ExactReal::rational(p, q) + ExactReal::rational(1, 2000);
    CHECK(is_k_balanced(lower_char_window(up, -10, 10), 1));
  }
  // irrational limits: perturbation through rationals converging from above
  Slope g = make_slope_quadratic(-1, 1, 5, 2);  // (sqrt(5)-1)/2
  Word base = lower_char_window(g, -10, 10);
  bool stable = false;
  for (long den = 64; den <= 4096; den *= 4) {
    // smallest rational strictly above g with this denominator
    Slope up = ExactReal::rational(g.times(den).floor() + 1, den);
    if (lower_char_window(up, -10, 10) == base) stable = true;
  }
  CHECK(stable);
}

TEST_CASE("intercepts shift the characteristic sequence") {
  Slope a = make_slope_rational(2, 5);
  // adding m*alpha inside the floor shifts the window by m
  for (long m = 1; m <= 4; ++m) {
    Word shifted = lower_char_window(a, 0, 9, a.times(m));
    Word plain = lower_char_window(a, m, m + 9);
    CHECK(shifted.letters() == plain.letters());
  }
}

TEST_CASE("periodic balanced sequences are shifts of the characteristic one") {
  // finite form of the periodic classification: every 1-balanced j-periodic
  // sequence window appears among windows of the characteristic sequence
  for (int j = 1; j <= 8; ++j) {
    long L = 4 * j;
    for (int mask = 0; mask < (1 << j); ++mask) {
      std::string t;
      for (int b = 0; b < j; ++b) t.push_back((mask >> b) & 1 ? '1' : '0');
      std::string rep;
      while (static_cast<long>(rep.size()) < 3 * L + 2 * j) rep += t;
      if (!is_k_balanced(Word(rep), 1)) continue;
      long i = static_cast<long>(std::count(t.begin(), t.end(), '1'));
      Slope alpha = make_slope_rational(i, j);
      Word ref = lower_char_window(alpha, 0, L + 2 * j);
      std::set<std::string> ref_windows;
      for (long s = 0; s + L <= ref.size(); ++s)
        ref_windows.insert(ref.letters().substr(s, L));
      for (long s = 0; s < j; ++s) {
        std::string win = rep.substr(s, L);
        CHECK(ref_windows.count(win) == 1);
      }
    }
  }
}

TEST_CASE("slope_interval soundness on characteristic windows") {
  std::vector<Slope> slopes = {make_slope_rational(2, 5),
                               make_slope_rational(3, 8),
                               make_slope_quadratic(-1, 1, 5, 2)};
  for (const Slope& a : slopes)
    for (long lo = -9; lo <= 9; lo += 3) {
      Word w = lower_char_window(a, lo, lo + 11);
      auto iv = slope_interval(w);
      CHECK(iv.contains_closed(a));
    }
}

TEST_CASE("is_jointly_balanced examples and oracle") {
  CHECK(oracle_jointly_balanced("0100101101", "0101010101"));
  CHECK(is_jointly_balanced(Word("0100101101"), Word("0101010101")));
  CHECK_FALSE(is_jointly_balanced(Word("0101001010"), Word("1010110101")));
  CHECK(is_jointly_balanced(Word("0"), Word("1")));

  std::uint64_t state = 777;
  auto next = [&] { state = state * 6364136223846793005ULL + 1442695040888963407ULL; return state >> 33; };
  for (int it = 0; it < 150; ++it) {
    int la = 1 + static_cast<int>(next() % 9), lb = 1 + static_cast<int>(next() % 9);
    std::string a, b;
    for (int i = 0; i < la; ++i) a.push_back(next() % 2 ? '1' : '0');
    for (int i = 0; i < lb; ++i) b.push_back(next() % 2 ? '1' : '0');
    CHECK(is_jointly_balanced(Word(a), Word(b)) == oracle_jointly_balanced(a, b));
  }
}

TEST_CASE("joint balance with itself is 1-balance") {
  std::uint64_t state = 4242;
  auto next = [&] { state = state * 6364136223846793005ULL + 1442695040888963407ULL; return state >> 33; };
  for (int it = 0; it < 200; ++it) {
    int len = 1 + static_cast<int>(next() % 11);
    std::string s;
    for (int i = 0; i < len; ++i) s.push_back(next() % 2 ? '1' : '0');
    CHECK(is_jointly_balanced(Word(s), Word(s)) == is_k_balanced(Word(s), 1));
  }
}

TEST_CASE("joint_slope_interval examples") {
  auto iv = joint_slope_interval(Word("00101"), Word("01010"));
  REQUIRE(iv.has_value());
  CHECK(iv->lo == ExactReal::rational(1, 3));
  CHECK(iv->hi == ExactReal::rational(1, 2));

  iv = joint_slope_interval(Word("0"), Word("1"));
  REQUIRE(iv.has_value());
  CHECK(iv->lo == ExactReal::rational(0));
  CHECK(iv->hi == ExactReal::rational(1));

  CHECK_FALSE(joint_slope_interval(Word("00"), Word("11")).has_value());
}

TEST_CASE("periodize_jointly_balanced") {
  Slope a25 = make_slope_rational(2, 5);
  CHECK(periodize_jointly_balanced(Word("00101"), a25).letters() == "00101");
  CHECK(periodize_jointly_balanced(Word("00100"), a25).letters() == "00101");
  CHECK(periodize_jointly_balanced(Word("01"), make_slope_rational(1, 2)).letters() == "01");
  // count off by more than one
  CHECK_THROWS(periodize_jointly_balanced(Word("00000"), a25));
  // wrong final letter: needs one more 1 but ends in 1
  CHECK_THROWS(periodize_jointly_balanced(Word("00001"), a25));
}

TEST_CASE("splice_check") {
  Slope half = make_slope_rational(1, 2);
  CHECK(splice_check(Word("01"), Word("0"), Word("01"), half));
  CHECK_FALSE(splice_check(Word("01"), Word("11"), Word("01"), half));
  CHECK(splice_check(Word("0"), Word(""), Word("0"), make_slope_rational(0, 1)));
  CHECK_THROWS(splice_check(Word("011"), Word(""), Word("01"), half));
}

TEST_CASE("word serialization") {
  CHECK(Word("00101").str() == "00101");
  CHECK(Word("00101", -3).str() == "@-3:00101");
  CHECK(Word::parse("@-3:00101") == Word("00101", -3));
  CHECK(Word::parse("111") == Word("111", 0));
  CHECK(ExactReal::parse("2/5") == ExactReal::rational(2, 5));
  CHECK(ExactReal::parse("(-1+1*sqrt(5))/2") == ExactReal::quadratic(-1, 1, 5, 2));
  CHECK(ExactReal::parse("(-1+1*sqrt(5))/2").str() == "(-1+1*sqrt(5))/2");
}
