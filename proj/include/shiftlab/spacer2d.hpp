#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "shiftlab/pattern2d.hpp"
#include "shiftlab/ribbons.hpp"

namespace shiftlab {

// A letter of the layered spacer alphabet: (H flag, V flag, base letter).
// Base letters appear only with both flags set; '0' is the empty base.
struct BLetter {
  bool h = false;
  bool v = false;
  char base = '0';
  friend bool operator==(const BLetter&, const BLetter&) = default;
  friend auto operator<=>(const BLetter&, const BLetter&) = default;
};

// The alphabet {(0,0,0), (0,V,0), (H,0,0)} plus {(H,V)} x (A + {0}).
std::set<BLetter> alphabet_b(const std::string& base_alphabet);

// A window over the layered alphabet, stored as its three layers. The flag
// layers use the ribbon conventions ({0,H} and {0,V}); the base layer keeps
// letters only at crossing sites.
class SpacerWindow {
 public:
  SpacerWindow() = default;
  SpacerWindow(Pattern2D h_window, Pattern2D v_window, Pattern2D base_letters);

  const Pattern2D& h_layer() const { return h_; }
  const Pattern2D& v_layer() const { return v_; }
  const Pattern2D& base_layer() const { return base_; }

  BLetter at(Coord c) const;
  Rect bounding_box() const { return h_.bounding_box(); }

  bool operator==(const SpacerWindow& o) const {
    return h_ == o.h_ && v_ == o.v_ && base_ == o.base_;
  }

  // Three stacked grids sharing one header.
  std::string to_grids() const;
  static SpacerWindow from_grids(const std::string& text);

 private:
  Pattern2D h_;
  Pattern2D v_;
  Pattern2D base_;
};

// Consistency: legal flag layers, base letters exactly at lexicographically
// least sites of fully visible crossings (never elsewhere), drawn from the
// base alphabet. Partially visible crossings are unconstrained.
bool validate_spacer_window(const SpacerWindow& w, const std::string& base_alphabet);

// Superimposition: base letters of t, indexed by (horizontal ribbon index,
// vertical ribbon index), are placed at the lexicographically least crossing
// sites of the two flag windows.
SpacerWindow superimpose(const Pattern2D& xh_window, const Pattern2D& xv_window,
                         const std::map<std::pair<int, int>, char>& t);

struct SpacerProjection {
  Pattern2D xh_window;
  Pattern2D xv_window;
  std::map<std::pair<int, int>, char> base;  // indexed by ribbon pairs
};

// Reads the flag layers and the base pattern back off a consistent window.
SpacerProjection project_f2(const SpacerWindow& w, const std::string& base_alphabet);

struct MeanderMove {
  // horizontal: vertical ribbons shift by `sign` columns inside the region;
  // vertical: horizontal ribbons shift by `sign` rows.
  bool horizontal = true;
  int sign = 1;
  Rect region;
};

// Thrown when the move would push a gap outside {2,3,4} or break a rule; the
// message carries the reason.
struct MoveRejected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The exchange move: designated ribbons meander one unit through the region,
// base letters travel with their crossings, and the thickness-5 boundary
// frame of the window is unchanged.
SpacerWindow meander_move(const SpacerWindow& w, const MeanderMove& move,
                          const std::string& base_alphabet);

}  // namespace shiftlab
