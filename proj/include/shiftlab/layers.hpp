#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "shiftlab/exact.hpp"
#include "shiftlab/pattern2d.hpp"
#include "shiftlab/sft2d.hpp"
#include "shiftlab/word.hpp"

namespace shiftlab {

// Exact description of a biinfinite {0,1} sequence: either eventually
// periodic (left period, center word, right period) or a characteristic
// sequence with an exact slope and intercept.
class SeqDesc {
 public:
  static SeqDesc periodic(std::string period, std::int64_t phase = 0);
  static SeqDesc eventually_periodic(std::string left, std::string center,
                                     std::string right, std::int64_t center_offset);
  static SeqDesc characteristic(bool upper, const Slope& alpha,
                                const ExactReal& intercept = ExactReal());

  int at(std::int64_t n) const;
  std::int64_t ones(std::int64_t lo, std::int64_t hi) const;  // inclusive, exact
  Word window(std::int64_t lo, std::int64_t hi) const;

  // Uniform 1-frequency; throws when the two periodic tails disagree.
  Slope slope() const;

  // Exact periodicity (the whole sequence, not just the tails).
  bool is_periodic() const;

  // Exact test for this == shift of other by m: this(n) == other(n + m).
  bool equals_shifted(const SeqDesc& other, std::int64_t m) const;

  // Radius past which a window comparison pins the whole description.
  std::int64_t test_radius() const;

  std::string str() const;

 private:
  enum class Kind { EventuallyPeriodic, Characteristic };
  Kind kind_ = Kind::EventuallyPeriodic;
  std::string left_, center_, right_;
  std::int64_t offset_ = 0;  // first index of center
  bool upper_ = false;
  Slope alpha_;
  ExactReal intercept_;
};

struct SequencePair {
  SeqDesc a;
  SeqDesc b;
};

// The three-layer SFT over {0,1}^3: first layer vertically constant, second
// constant along the diagonal, third the running difference of the first
// two. Letters encode (first, second, third) as '0' + f + 2s + 4t.
Sft2D x_rules();

char layer_letter(int first, int second, int third);
int layer_first(char letter);
int layer_second(char letter);
int layer_third(char letter);

// Pattern over the layered alphabet with named layer access.
class LayeredPattern {
 public:
  LayeredPattern() = default;
  explicit LayeredPattern(Pattern2D cells) : cells_(std::move(cells)) {}

  const Pattern2D& pattern() const { return cells_; }
  Pattern2D& pattern() { return cells_; }

  int first(Coord c) const { return layer_first(cells_.at(c)); }
  int second(Coord c) const { return layer_second(cells_.at(c)); }
  int third(Coord c) const { return layer_third(cells_.at(c)); }
  bool has(Coord c) const { return cells_.has(c); }

  bool operator==(const LayeredPattern& o) const { return cells_ == o.cells_; }

  // Three stacked grids sharing one header.
  std::string to_grids() const;
  static LayeredPattern from_grids(const std::string& text);

 private:
  Pattern2D cells_;
};

// Thrown when a construction contradicts a balance argument rather than a
// caller precondition.
struct ContradictionError : std::logic_error {
  using std::logic_error::logic_error;
};

// Builds the window of the canonical point with a(x) = a and b(x) = b: first
// two layers by constancy, third by the running-total formula with the
// per-row correction, then free-row overrides. The pair must be jointly
// balanced on the window plus collar.
LayeredPattern build_point_window(const SequencePair& pair, const Rect& window,
                                  const std::map<std::int64_t, int>& free_rows = {},
                                  std::int64_t collar = 64);

// Rows of the window whose first and second layers agree everywhere.
std::set<std::int64_t> row_freedom(const LayeredPattern& w);

// Telescoping check: over every row segment, the third-layer difference
// equals the count difference of the first two layers.
bool verify_c1_forward(const LayeredPattern& w);

// Categories: 1 irrational slope and both 1-balanced; 2 rational and both
// 1-balanced; 3 first member 2-balanced but not 1-balanced with the second
// in the characteristic orbit; 4 the mirror image.
std::set<int> classify_pair(const SequencePair& pair);

// Sturmian approximation of a rational-slope pair that is not doubly
// periodic: an irrational slope inside the joint slope interval and a window
// over Sturmian data agreeing exactly with the pair's window.
std::pair<Slope, LayeredPattern> sturmian_approx_window(
    const SequencePair& pair, const Rect& window,
    const std::map<std::int64_t, int>& free_rows = {});

// The 2-balanced slope trap: [(m-2)/L, (m+2)/L] for the longest full row
// segment, clamped to [0,1].
struct SlopeWindowEstimate {
  ExactReal lo;
  ExactReal hi;
  std::int64_t segment_length = 0;
  std::int64_t ones = 0;
};
SlopeWindowEstimate slope_window_estimate(const LayeredPattern& w);

}  // namespace shiftlab
