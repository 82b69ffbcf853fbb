#pragma once

#include <cstdint>
#include <optional>

#include "shiftlab/exact.hpp"
#include "shiftlab/word.hpp"

namespace shiftlab {

// Open interval of slopes, clamped to [0,1].
struct SlopeInterval {
  ExactReal lo;
  ExactReal hi;

  bool contains_strict(const ExactReal& x) const { return lo < x && x < hi; }
  bool contains_closed(const ExactReal& x) const { return lo <= x && x <= hi; }
  ExactReal width() const { return hi - lo; }
  std::string str() const { return "(" + lo.str() + ", " + hi.str() + ")"; }
};

// Number of '1' letters; requires a binary word.
std::int64_t ones_count(const Word& w);

// Every two equal-length subwords have 1-counts within k.
bool is_k_balanced(const Word& w, std::int64_t k);

// (alpha'(w), alpha''(w)): any balanced sequence containing w has slope in the
// closed interval; any Sturmian sequence with irrational slope strictly inside
// contains w.
SlopeInterval slope_interval(const Word& w);

// Restrictions of the characteristic sequences to [lo, hi], with an optional
// exact intercept added inside the floor/ceiling.
Word lower_char_window(const Slope& alpha, std::int64_t lo, std::int64_t hi,
                       const ExactReal& intercept = ExactReal());
Word upper_char_window(const Slope& alpha, std::int64_t lo, std::int64_t hi,
                       const ExactReal& intercept = ExactReal());

// Minimal positive k with k*i = 1 mod j for reduced alpha = i/j in (0,1);
// then the upper characteristic sequence shifted by k equals the lower one.
// Degenerate slopes 0 and 1 return 0.
std::int64_t char_shift_offset(const Slope& alpha);

// Every pair of equal-length subwords of a and b has 1-counts within 1.
bool is_jointly_balanced(const Word& a, const Word& b);

// Intersection of the two slope intervals, or absent when empty.
std::optional<SlopeInterval> joint_slope_interval(const Word& u, const Word& v);

// Claim-C7-style periodization: t of length m*j jointly balanced with the
// lower characteristic sequence of alpha = i/j is repaired, if needed, by
// flipping its final letter so that one period carries exactly m*i ones.
// The result is certified against four concatenated periods.
Word periodize_jointly_balanced(const Word& t, const Slope& alpha);

// True when every subword of p^3 mid q^3 has 1-count within 1 of alpha times
// its length; p and q must be length-j period words with i ones each.
bool splice_check(const Word& p, const Word& mid, const Word& q,
                  const Slope& alpha);

}  // namespace shiftlab
