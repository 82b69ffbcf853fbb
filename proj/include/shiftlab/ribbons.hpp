#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/pattern2d.hpp"
#include "shiftlab/sft2d.hpp"

namespace shiftlab {

inline constexpr char kEmpty = '0';
inline constexpr char kH = 'H';
inline constexpr char kV = 'V';

// The horizontal-ribbon SFT over {0, H}: column gaps in {2,3,4}, every H has
// exactly two cardinal H neighbors, diagonally adjacent H's share exactly one
// common H neighbor, no vertical H triples, and diagonal H triples need H's
// on both sides of the center. Type 5.
Sft2D xh_rules();

// The same system rotated ninety degrees, over {0, V}.
Sft2D xv_rules();

// Flat configurations: horizontal ribbons on rows y = 0 mod 4, vertical
// ribbons on columns x = 0 mod 4.
Pattern2D xh_flat_window(const Rect& r);
Pattern2D xv_flat_window(const Rect& r);

struct RibbonPath {
  int index = 0;                      // paper indexing when origin-anchored
  std::vector<Coord> cells;           // path order, left end first
  std::int64_t col_lo = 0, col_hi = -1;
  // column -> occupied rows (low, high); high == low except at turn columns
  std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>> occupancy;
  // crossing-row displacement between consecutive columns
  std::vector<int> steps;
  std::int64_t left_end_row = 0;   // row where a left continuation attaches
  std::int64_t right_end_row = 0;  // row where a right continuation attaches
};

struct GapRun {
  std::int64_t column = 0;
  std::int64_t row_low = 0;  // first empty row of the run
  std::int64_t length = 0;
};

struct RibbonDecomposition {
  std::vector<RibbonPath> ribbons;  // bottom to top
  std::vector<GapRun> gaps;         // zero runs bounded by H cells above and below
  bool origin_anchored = false;
  // set when two ribbons share no column yet overlap in rows; their relative
  // order is then a window artifact
  bool order_ambiguous = false;
};

// Decomposes a legal {0,H} window into maximal ribbon paths, bottom to top,
// with the slope and gap invariants verified.
RibbonDecomposition ribbon_trace(const Pattern2D& window);

// A legal window cut from a randomly constructed point: unison meandering
// ribbon family with random gaps and phases. Deterministic in the seed.
Pattern2D random_xh_window(const Rect& r, std::uint64_t seed);
Pattern2D random_xv_window(const Rect& r, std::uint64_t seed);

struct EmbedResult {
  Pattern2D window;          // legal; equals the flat point on the outer frame
  Rect box;                  // bounding box of the input inside the window
  std::int64_t margin_used;  // frame expansion beyond the input box
};

// Thrown when the requested margin cannot hold the unraveling.
struct GrowthError : std::runtime_error {
  std::int64_t required;
  explicit GrowthError(std::int64_t req)
      : std::runtime_error("embed_homoclinic_xh: margin too small, need " +
                           std::to_string(req)),
        required(req) {}
};

// Claim-A1-style pipeline: completes w's ribbons across the window, relaxes
// them to flat multiples of four on the sides, and stacks unraveling ribbons
// above and below until the configuration agrees with the flat point on a
// frame of thickness five.
EmbedResult embed_homoclinic_xh(const Pattern2D& w, std::int64_t margin);

struct CrossingInfo {
  Coord site;       // lexicographically least site of the intersection
  int cardinality;  // 1, 2 or 3
};

// For each pair (horizontal ribbon index, vertical ribbon index) whose
// intersection is fully visible in the overlap, the lexicographically least
// site. Partially visible crossings are omitted.
std::map<std::pair<int, int>, CrossingInfo> crossing_map(const Pattern2D& xh_window,
                                                         const Pattern2D& xv_window);

struct CrossingSites {
  std::vector<Coord> sites;  // sorted lexicographically
  bool fully_visible = false;
};

// All intersection sites per ribbon pair, including partially visible ones.
std::map<std::pair<int, int>, CrossingSites> crossing_sites(
    const Pattern2D& xh_window, const Pattern2D& xv_window);

}  // namespace shiftlab
