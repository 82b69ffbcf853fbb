#include "shiftlab/spacer2d.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace shiftlab {

std::set<BLetter> alphabet_b(const std::string& base_alphabet) {
  if (base_alphabet.find('0') != std::string::npos)
    throw std::invalid_argument("alphabet_b: base alphabet contains the empty letter");
  std::set<BLetter> out;
  out.insert({false, false, '0'});
  out.insert({false, true, '0'});
  out.insert({true, false, '0'});
  out.insert({true, true, '0'});
  for (char ch : base_alphabet) out.insert({true, true, ch});
  return out;
}

SpacerWindow::SpacerWindow(Pattern2D h_window, Pattern2D v_window,
                           Pattern2D base_letters)
    : h_(std::move(h_window)), v_(std::move(v_window)), base_(std::move(base_letters)) {
  for (const auto& [c, ch] : h_.cells()) {
    if (ch != kEmpty && ch != kH)
      throw std::invalid_argument("SpacerWindow: H layer not over {0,H}");
    if (!v_.has(c) || !base_.has(c))
      throw std::invalid_argument("SpacerWindow: layer shapes differ");
  }
  if (v_.size() != h_.size() || base_.size() != h_.size())
    throw std::invalid_argument("SpacerWindow: layer shapes differ");
  for (const auto& [c, ch] : v_.cells())
    if (ch != kEmpty && ch != kV)
      throw std::invalid_argument("SpacerWindow: V layer not over {0,V}");
  for (const auto& [c, ch] : base_.cells())
    if (ch != '0' && (h_.at(c) != kH || v_.at(c) != kV))
      throw std::invalid_argument(
          "SpacerWindow: base letter away from a flagged crossing cell");
}

BLetter SpacerWindow::at(Coord c) const {
  return BLetter{h_.at(c) == kH, v_.at(c) == kV, base_.at(c)};
}

std::string SpacerWindow::to_grids() const {
  Rect r = h_.bounding_box();
  std::ostringstream os;
  os << "@3 " << r.x0 << " " << r.y0 << " " << (r.empty() ? 0 : r.width()) << " "
     << (r.empty() ? 0 : r.height()) << "\n";
  auto dump = [&](const Pattern2D& p) {
    for (std::int64_t y = r.y1; y >= r.y0; --y) {
      for (std::int64_t x = r.x0; x <= r.x1; ++x) {
        auto v = p.get({x, y});
        os << (v ? *v : '.');
      }
      os << "\n";
    }
  };
  dump(h_);
  os << "\n";
  dump(v_);
  os << "\n";
  dump(base_);
  return os.str();
}

SpacerWindow SpacerWindow::from_grids(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header))
    throw std::invalid_argument("SpacerWindow: empty text");
  std::istringstream hs(header);
  std::string tag;
  std::int64_t x0, y0, w, h;
  if (!(hs >> tag >> x0 >> y0 >> w >> h) || tag != "@3")
    throw std::invalid_argument("SpacerWindow: bad header");
  auto read_layer = [&]() {
    Pattern2D p;
    for (std::int64_t row = 0; row < h; ++row) {
      std::string line;
      if (!std::getline(in, line))
        throw std::invalid_argument("SpacerWindow: truncated grids");
      if (!line.empty() && line.back() == '\r') line.pop_back();
      for (std::int64_t x = 0; x < w && x < static_cast<std::int64_t>(line.size()); ++x)
        if (line[static_cast<std::size_t>(x)] != '.')
          p.set({x0 + x, y0 + h - 1 - row}, line[static_cast<std::size_t>(x)]);
    }
    return p;
  };
  Pattern2D hw = read_layer();
  std::string blank;
  std::getline(in, blank);
  Pattern2D vw = read_layer();
  std::getline(in, blank);
  Pattern2D bw = read_layer();
  return SpacerWindow(std::move(hw), std::move(vw), std::move(bw));
}

bool validate_spacer_window(const SpacerWindow& w, const std::string& base_alphabet) {
  static const Sft2D hrules = xh_rules();
  static const Sft2D vrules = xv_rules();
  if (!validate_pattern(hrules, w.h_layer())) return false;
  if (!validate_pattern(vrules, w.v_layer())) return false;

  auto sites = crossing_sites(w.h_layer(), w.v_layer());
  // least sites of fully visible crossings
  std::map<Coord, bool> allowed;  // crossing cell -> may carry a letter
  for (const auto& [idx, cs] : sites)
    for (std::size_t i = 0; i < cs.sites.size(); ++i) {
      bool ok = !cs.fully_visible || i == 0;  // partially visible: unconstrained
      allowed[cs.sites[i]] = ok;
    }
  for (const auto& [c, ch] : w.base_layer().cells()) {
    if (ch == '0') continue;
    if (base_alphabet.find(ch) == std::string::npos) return false;
    auto it = allowed.find(c);
    if (it == allowed.end() || !it->second) return false;
  }
  return true;
}

SpacerWindow superimpose(const Pattern2D& xh_window, const Pattern2D& xv_window,
                         const std::map<std::pair<int, int>, char>& t) {
  // layers live on the common shape
  Pattern2D h, v;
  for (const auto& [c, ch] : xh_window.cells())
    if (xv_window.has(c)) {
      h.set(c, ch);
      v.set(c, xv_window.at(c));
    }
  auto cm = crossing_map(h, v);
  Pattern2D base;
  for (const auto& [c, ch] : h.cells()) base.set(c, '0');
  for (const auto& [idx, ch] : t) {
    auto it = cm.find(idx);
    if (it == cm.end())
      throw std::invalid_argument(
          "superimpose: base letter requested at an unmapped crossing");
    if (ch == '0')
      throw std::invalid_argument("superimpose: base letters must be nonzero");
    base.set(it->second.site, ch);
  }
  return SpacerWindow(std::move(h), std::move(v), std::move(base));
}

SpacerProjection project_f2(const SpacerWindow& w, const std::string& base_alphabet) {
  if (!validate_spacer_window(w, base_alphabet))
    throw std::invalid_argument("project_f2: inconsistent window");
  SpacerProjection out;
  out.xh_window = w.h_layer();
  out.xv_window = w.v_layer();
  for (const auto& [idx, info] : crossing_map(w.h_layer(), w.v_layer())) {
    char ch = w.base_layer().at(info.site);
    if (ch != '0') out.base[idx] = ch;
  }
  return out;
}

namespace {

// Shifts the designated vertical ribbons by one column inside the region's
// row band, with the junction pairs on the band's boundary rows.
Pattern2D shift_vertical_ribbons(const Pattern2D& v_layer,
                                 const std::set<int>& moved, int sign,
                                 const Rect& region) {
  // trace through the transposed horizontal machinery
  Pattern2D tv;
  for (const auto& [c, ch] : v_layer.cells())
    tv.set({c.y, c.x}, ch == kV ? kH : kEmpty);
  auto dec = ribbon_trace(tv);

  Pattern2D out;
  for (const auto& [c, ch] : v_layer.cells()) out.set(c, kEmpty);
  for (const auto& rp : dec.ribbons) {
    bool is_moved = moved.count(rp.index) > 0;
    for (const Coord& tc : rp.cells) {
      Coord c{tc.y, tc.x};  // back to window coordinates
      if (!is_moved) {
        out.set(c, kV);
        continue;
      }
      bool inside = c.y >= region.y0 && c.y <= region.y1;
      Coord shifted{c.x + (inside ? sign : 0), c.y};
      out.set(shifted, kV);
      // junction rows carry both the old and the new column
      if (c.y == region.y0 || c.y == region.y1) out.set(c, kV);
    }
  }
  return out;
}

}  // namespace

SpacerWindow meander_move(const SpacerWindow& w, const MeanderMove& move,
                          const std::string& base_alphabet) {
  if (move.sign != 1 && move.sign != -1)
    throw std::invalid_argument("meander_move: sign must be +1 or -1");
  if (!validate_spacer_window(w, base_alphabet))
    throw std::invalid_argument("meander_move: input window inconsistent");
  if (move.region.empty()) return w;

  Rect box = w.bounding_box();
  // changed cells stay inside the region's row band (for a horizontal move),
  // so the band must clear the thickness-5 frame; the column extent is
  // checked against the frame after the move
  std::int64_t band_lo = move.horizontal ? move.region.y0 : move.region.x0;
  std::int64_t band_hi = move.horizontal ? move.region.y1 : move.region.x1;
  std::int64_t box_lo = move.horizontal ? box.y0 : box.x0;
  std::int64_t box_hi = move.horizontal ? box.y1 : box.x1;
  if (band_lo < box_lo + 5 || band_hi > box_hi - 5)
    throw MoveRejected("meander_move: region too close to the boundary frame");

  // project the letters before the move
  SpacerProjection before = project_f2(w, base_alphabet);

  Pattern2D new_h = w.h_layer();
  Pattern2D new_v = w.v_layer();
  if (move.horizontal) {
    // vertical ribbons meeting the region shift along x inside the row band
    Pattern2D tv;
    for (const auto& [c, ch] : w.v_layer().cells())
      tv.set({c.y, c.x}, ch == kV ? kH : kEmpty);
    auto dec = ribbon_trace(tv);
    std::set<int> moved_ids;
    for (const auto& rp : dec.ribbons)
      for (const Coord& tc : rp.cells) {
        Coord c{tc.y, tc.x};
        if (move.region.contains(c)) {
          moved_ids.insert(rp.index);
          break;
        }
      }
    if (moved_ids.empty()) return w;
    new_v = shift_vertical_ribbons(w.v_layer(), moved_ids, move.sign, move.region);
    for (const auto& [c, ch] : new_v.cells())
      if (!w.v_layer().has(c))
        throw MoveRejected("meander_move: shifted ribbon leaves the window");
    static const Sft2D vrules = xv_rules();
    if (!validate_pattern(vrules, new_v))
      throw MoveRejected(
          "meander_move: shifted ribbons break the rules (a gap left {2,3,4} "
          "or a junction collides)");
  } else {
    // horizontal ribbons shift along y inside the column band; run the
    // vertical-ribbon shifter on transposed flag geometry (letters are
    // untouched here, so transposition is safe)
    auto dec = ribbon_trace(w.h_layer());
    std::set<int> moved_ids;
    for (const auto& rp : dec.ribbons)
      for (const Coord& c : rp.cells)
        if (move.region.contains(c)) {
          moved_ids.insert(rp.index);
          break;
        }
    if (moved_ids.empty()) return w;
    Pattern2D as_v;
    for (const auto& [c, ch] : w.h_layer().cells())
      as_v.set({c.y, c.x}, ch == kH ? kV : kEmpty);
    Rect band{move.region.y0, move.region.x0, move.region.y1, move.region.x1};
    Pattern2D shifted = shift_vertical_ribbons(as_v, moved_ids, move.sign, band);
    new_h = Pattern2D();
    for (const auto& [c, ch] : shifted.cells())
      new_h.set({c.y, c.x}, ch == kV ? kH : kEmpty);
    for (const auto& [c, ch] : new_h.cells())
      if (!w.h_layer().has(c))
        throw MoveRejected("meander_move: shifted ribbon leaves the window");
    static const Sft2D hrules = xh_rules();
    if (!validate_pattern(hrules, new_h))
      throw MoveRejected(
          "meander_move: shifted ribbons break the rules (a gap left {2,3,4} "
          "or a junction collides)");
  }

  // re-place the letters at the new crossing sites, by ribbon-pair index
  auto cm = crossing_map(new_h, new_v);
  Pattern2D base;
  for (const auto& [c, ch] : w.h_layer().cells()) base.set(c, '0');
  for (const auto& [idx, ch] : before.base) {
    auto it = cm.find(idx);
    if (it == cm.end())
      throw MoveRejected("meander_move: a carried letter lost its crossing");
    base.set(it->second.site, ch);
  }
  SpacerWindow out(std::move(new_h), std::move(new_v), std::move(base));
  if (!validate_spacer_window(out, base_alphabet))
    throw MoveRejected("meander_move: moved window fails validation");

  // the boundary frame of thickness five is untouched
  for (const auto& [c, ch] : w.h_layer().cells()) {
    bool in_frame = c.x < box.x0 + 5 || c.x > box.x1 - 5 || c.y < box.y0 + 5 ||
                    c.y > box.y1 - 5;
    if (!in_frame) continue;
    if (out.h_layer().at(c) != ch || out.v_layer().at(c) != w.v_layer().at(c) ||
        out.base_layer().at(c) != w.base_layer().at(c))
      throw MoveRejected("meander_move: boundary frame changed");
  }
  // the projected base pattern is unchanged
  SpacerProjection after = project_f2(out, base_alphabet);
  if (after.base != before.base)
    throw MoveRejected("meander_move: projected base pattern changed");
  return out;
}

}  // namespace shiftlab
