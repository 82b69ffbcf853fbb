#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "shiftlab/pattern2d.hpp"

namespace shiftlab {

// Two-dimensional SFT: alphabet plus a finite list of forbidden patterns,
// all fitting in a t x t box.
struct Sft2D {
  std::string alphabet;
  std::vector<Pattern2D> forbidden;
  int type_t = 1;

  Sft2D(std::string alpha, std::vector<Pattern2D> forb);
};

// True when no translate of a forbidden pattern occurs fully inside p.
bool validate_pattern(const Sft2D& sft, const Pattern2D& p);

struct FillOptions {
  // Shuffle letter order per cell with this seed; 0 keeps the alphabet order.
  std::uint64_t seed = 0;
  // When set, the filled rectangle must also stay legal against this frame
  // pattern placed around it (occurrences straddling the boundary are
  // checked too).
  const Pattern2D* boundary = nullptr;
  // Optional per-cell letter masks (bit i allows alphabet[i]).
  const std::map<Coord, std::uint16_t>* domains = nullptr;
  std::int64_t max_steps = 200'000'000;
};

// Backtracking completion of `partial` on `target`: a pattern on the whole
// rectangle, agreeing with `partial`, with no forbidden occurrence fully
// inside (locally admissible). Unit propagation over cell domains prunes.
std::optional<Pattern2D> fill_rectangle(const Sft2D& sft, const Pattern2D& partial,
                                        const Rect& target,
                                        const FillOptions& opts = {});

}  // namespace shiftlab
