#include "shiftlab/pattern2d.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace shiftlab {

char Pattern2D::at(Coord c) const {
  auto it = cells_.find(c);
  if (it == cells_.end()) throw std::out_of_range("Pattern2D::at: cell outside shape");
  return it->second;
}

std::optional<char> Pattern2D::get(Coord c) const {
  auto it = cells_.find(c);
  if (it == cells_.end()) return std::nullopt;
  return it->second;
}

Rect Pattern2D::bounding_box() const {
  if (cells_.empty()) return Rect{0, 0, -1, -1};
  Rect r{cells_.begin()->first.x, cells_.begin()->first.y,
         cells_.begin()->first.x, cells_.begin()->first.y};
  for (const auto& [c, ch] : cells_) {
    r.x0 = std::min(r.x0, c.x);
    r.x1 = std::max(r.x1, c.x);
    r.y0 = std::min(r.y0, c.y);
    r.y1 = std::max(r.y1, c.y);
  }
  return r;
}

Pattern2D Pattern2D::translated(Coord delta) const {
  Pattern2D out;
  for (const auto& [c, ch] : cells_) out.set(c + delta, ch);
  return out;
}

Pattern2D Pattern2D::restricted(const Rect& r) const {
  Pattern2D out;
  for (const auto& [c, ch] : cells_)
    if (r.contains(c)) out.set(c, ch);
  return out;
}

Pattern2D Pattern2D::filled(const Rect& r, char letter) {
  Pattern2D out;
  for (std::int64_t y = r.y0; y <= r.y1; ++y)
    for (std::int64_t x = r.x0; x <= r.x1; ++x) out.set({x, y}, letter);
  return out;
}

std::string Pattern2D::to_grid() const {
  Rect r = bounding_box();
  std::ostringstream os;
  os << "@ " << r.x0 << " " << r.y0 << " " << (r.empty() ? 0 : r.width()) << " "
     << (r.empty() ? 0 : r.height()) << "\n";
  // rows from the top (largest y) so up is up
  for (std::int64_t y = r.y1; y >= r.y0; --y) {
    for (std::int64_t x = r.x0; x <= r.x1; ++x) {
      auto v = get({x, y});
      os << (v ? *v : '.');
    }
    os << "\n";
  }
  return os.str();
}

Pattern2D Pattern2D::from_grid(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header))
    throw std::invalid_argument("Pattern2D: empty grid text");
  std::int64_t x0, y0, w, h;
  char atsym;
  std::istringstream hs(header);
  if (!(hs >> atsym >> x0 >> y0 >> w >> h) || atsym != '@')
    throw std::invalid_argument("Pattern2D: bad grid header");
  Pattern2D out;
  for (std::int64_t row = 0; row < h; ++row) {
    std::string line;
    if (!std::getline(in, line))
      throw std::invalid_argument("Pattern2D: truncated grid");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::int64_t y = y0 + h - 1 - row;
    for (std::int64_t x = 0; x < std::min<std::int64_t>(w, static_cast<std::int64_t>(line.size())); ++x) {
      char ch = line[static_cast<std::size_t>(x)];
      if (ch != '.') out.set({x0 + x, y}, ch);
    }
  }
  return out;
}

Pattern2D rotate90(const Pattern2D& p) {
  Pattern2D out;
  for (const auto& [c, ch] : p.cells()) out.set({-c.y, c.x}, ch);
  if (out.empty()) return out;
  Rect from = p.bounding_box();
  Rect now = out.bounding_box();
  return out.translated({from.x0 - now.x0, from.y0 - now.y0});
}

Pattern2D transpose(const Pattern2D& p) {
  Pattern2D out;
  for (const auto& [c, ch] : p.cells()) out.set({c.y, c.x}, ch);
  return out;
}

}  // namespace shiftlab
