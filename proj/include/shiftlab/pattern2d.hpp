#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace shiftlab {

struct Coord {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend bool operator==(const Coord&, const Coord&) = default;
  // lexicographic: first coordinate, then second
  friend auto operator<=>(const Coord&, const Coord&) = default;
  Coord operator+(const Coord& o) const { return {x + o.x, y + o.y}; }
  Coord operator-(const Coord& o) const { return {x - o.x, y - o.y}; }
};

struct Rect {
  std::int64_t x0 = 0, y0 = 0, x1 = -1, y1 = -1;  // inclusive; empty when x0 > x1
  bool contains(Coord c) const {
    return c.x >= x0 && c.x <= x1 && c.y >= y0 && c.y <= y1;
  }
  std::int64_t width() const { return x1 - x0 + 1; }
  std::int64_t height() const { return y1 - y0 + 1; }
  bool empty() const { return x1 < x0 || y1 < y0; }
  Rect expanded(std::int64_t d) const { return {x0 - d, y0 - d, x1 + d, y1 + d}; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

// A finite pattern: a map from coordinates to letters. The shape is the key
// set; translation acts on keys only.
class Pattern2D {
 public:
  Pattern2D() = default;

  void set(Coord c, char letter) { cells_[c] = letter; }
  bool has(Coord c) const { return cells_.count(c) > 0; }
  char at(Coord c) const;
  std::optional<char> get(Coord c) const;
  void erase(Coord c) { cells_.erase(c); }

  const std::map<Coord, char>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  Rect bounding_box() const;
  Pattern2D translated(Coord delta) const;
  Pattern2D restricted(const Rect& r) const;

  // Fills a full rectangle with one letter.
  static Pattern2D filled(const Rect& r, char letter);

  bool operator==(const Pattern2D& o) const { return cells_ == o.cells_; }

  // Text grid with a coordinate header; '.' marks cells outside the shape.
  std::string to_grid() const;
  static Pattern2D from_grid(const std::string& text);

 private:
  std::map<Coord, char> cells_;
};

// Rotation by 90 degrees counterclockwise: (x, y) -> (-y, x), then
// renormalized so the bounding box starts where the input's did.
Pattern2D rotate90(const Pattern2D& p);

// Transposition (x, y) -> (y, x); useful for reusing horizontal-ribbon code
// on vertical ribbons.
Pattern2D transpose(const Pattern2D& p);

}  // namespace shiftlab
