#include "shiftlab/ribbons.hpp"
#include <cstdlib>
#include <cstdio>

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

namespace shiftlab {

namespace {

Pattern2D make_pattern(std::initializer_list<std::pair<Coord, char>> cells) {
  Pattern2D p;
  for (const auto& [c, ch] : cells) p.set(c, ch);
  return p;
}

}  // namespace

Sft2D xh_rules() {
  std::vector<Pattern2D> forb;
  // column gap of length one
  forb.push_back(make_pattern({{{0, 0}, kH}, {{0, 1}, kEmpty}, {{0, 2}, kH}}));
  // five empty cells in a column
  forb.push_back(make_pattern({{{0, 0}, kEmpty},
                               {{0, 1}, kEmpty},
                               {{0, 2}, kEmpty},
                               {{0, 3}, kEmpty},
                               {{0, 4}, kEmpty}}));
  // center H with a neighbor count other than two
  for (int mask = 0; mask < 16; ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) == 2) continue;
    Pattern2D p;
    p.set({1, 1}, kH);
    p.set({0, 1}, (mask & 1) ? kH : kEmpty);
    p.set({2, 1}, (mask & 2) ? kH : kEmpty);
    p.set({1, 0}, (mask & 4) ? kH : kEmpty);
    p.set({1, 2}, (mask & 8) ? kH : kEmpty);
    forb.push_back(std::move(p));
  }
  // diagonally adjacent pair: both common neighbors empty, or all four H
  forb.push_back(make_pattern(
      {{{0, 0}, kH}, {{1, 1}, kH}, {{1, 0}, kEmpty}, {{0, 1}, kEmpty}}));
  forb.push_back(make_pattern(
      {{{0, 1}, kH}, {{1, 0}, kH}, {{0, 0}, kEmpty}, {{1, 1}, kEmpty}}));
  forb.push_back(make_pattern(
      {{{0, 0}, kH}, {{1, 0}, kH}, {{0, 1}, kH}, {{1, 1}, kH}}));
  // vertical triple
  forb.push_back(make_pattern({{{0, 0}, kH}, {{0, 1}, kH}, {{0, 2}, kH}}));
  // diagonal triples without both side H's at the center
  forb.push_back(make_pattern(
      {{{0, 0}, kH}, {{1, 1}, kH}, {{2, 2}, kH}, {{0, 1}, kEmpty}}));
  forb.push_back(make_pattern(
      {{{0, 0}, kH}, {{1, 1}, kH}, {{2, 2}, kH}, {{2, 1}, kEmpty}}));
  forb.push_back(make_pattern(
      {{{0, 2}, kH}, {{1, 1}, kH}, {{2, 0}, kH}, {{0, 1}, kEmpty}}));
  forb.push_back(make_pattern(
      {{{0, 2}, kH}, {{1, 1}, kH}, {{2, 0}, kH}, {{2, 1}, kEmpty}}));
  return Sft2D(std::string(1, kEmpty) + kH, std::move(forb));
}

Sft2D xv_rules() {
  Sft2D h = xh_rules();
  std::vector<Pattern2D> forb;
  for (const auto& f : h.forbidden) {
    Pattern2D r = rotate90(f);
    Pattern2D renamed;
    for (const auto& [c, ch] : r.cells()) renamed.set(c, ch == kH ? kV : ch);
    forb.push_back(std::move(renamed));
  }
  return Sft2D(std::string(1, kEmpty) + kV, std::move(forb));
}

Pattern2D xh_flat_window(const Rect& r) {
  Pattern2D p;
  for (std::int64_t y = r.y0; y <= r.y1; ++y)
    for (std::int64_t x = r.x0; x <= r.x1; ++x)
      p.set({x, y}, (((y % 4) + 4) % 4 == 0) ? kH : kEmpty);
  return p;
}

Pattern2D xv_flat_window(const Rect& r) {
  Pattern2D p;
  for (std::int64_t y = r.y0; y <= r.y1; ++y)
    for (std::int64_t x = r.x0; x <= r.x1; ++x)
      p.set({x, y}, (((x % 4) + 4) % 4 == 0) ? kV : kEmpty);
  return p;
}

RibbonDecomposition ribbon_trace(const Pattern2D& window) {
  static const Sft2D rules = xh_rules();
  for (const auto& [c, ch] : window.cells())
    if (ch != kEmpty && ch != kH)
      throw std::invalid_argument("ribbon_trace: window not over {0,H}");
  if (!validate_pattern(rules, window))
    throw std::invalid_argument("ribbon_trace: window violates the ribbon rules");

  std::set<Coord> hs;
  for (const auto& [c, ch] : window.cells())
    if (ch == kH) hs.insert(c);

  RibbonDecomposition out;
  std::set<Coord> seen;
  for (const Coord& start : hs) {
    if (seen.count(start)) continue;
    // flood the 4-connected component
    std::vector<Coord> comp;
    std::deque<Coord> q{start};
    seen.insert(start);
    while (!q.empty()) {
      Coord c = q.front();
      q.pop_front();
      comp.push_back(c);
      for (Coord d : {Coord{1, 0}, Coord{-1, 0}, Coord{0, 1}, Coord{0, -1}}) {
        Coord n = c + d;
        if (hs.count(n) && !seen.count(n)) {
          seen.insert(n);
          q.push_back(n);
        }
      }
    }
    auto degree = [&](Coord c) {
      int d = 0;
      for (Coord dd : {Coord{1, 0}, Coord{-1, 0}, Coord{0, 1}, Coord{0, -1}})
        if (hs.count(c + dd)) ++d;
      return d;
    };
    // locate endpoints and walk the path
    std::vector<Coord> ends;
    for (const Coord& c : comp)
      if (degree(c) <= 1) ends.push_back(c);
    if (comp.size() == 1) ends = {comp[0], comp[0]};
    if (ends.size() != 2)
      throw std::invalid_argument("ribbon_trace: component is not a simple path");
    std::sort(ends.begin(), ends.end());
    RibbonPath rp;
    Coord cur = ends[0];
    Coord prev{cur.x - 100, cur.y - 100};
    rp.cells.push_back(cur);
    while (rp.cells.size() < comp.size()) {
      bool moved = false;
      for (Coord d : {Coord{1, 0}, Coord{0, 1}, Coord{0, -1}, Coord{-1, 0}}) {
        Coord n = cur + d;
        if (!(n == prev) && hs.count(n) &&
            std::find(rp.cells.begin(), rp.cells.end(), n) == rp.cells.end()) {
          prev = cur;
          cur = n;
          rp.cells.push_back(n);
          moved = true;
          break;
        }
      }
      if (!moved)
        throw std::invalid_argument("ribbon_trace: broken path walk");
    }
    rp.col_lo = rp.col_hi = rp.cells[0].x;
    for (const Coord& c : rp.cells) {
      rp.col_lo = std::min(rp.col_lo, c.x);
      rp.col_hi = std::max(rp.col_hi, c.x);
      auto it = rp.occupancy.find(c.x);
      if (it == rp.occupancy.end())
        rp.occupancy[c.x] = {c.y, c.y};
      else {
        it->second.first = std::min(it->second.first, c.y);
        it->second.second = std::max(it->second.second, c.y);
      }
    }
    for (const auto& [col, rows] : rp.occupancy)
      if (rows.second - rows.first > 1)
        throw std::invalid_argument("ribbon_trace: column occupancy too tall");
    if (rp.occupancy.size() !=
        static_cast<std::size_t>(rp.col_hi - rp.col_lo + 1))
      throw std::invalid_argument("ribbon_trace: ribbon skips a column");
    // crossing rows between consecutive columns, then displacement steps
    std::vector<std::int64_t> crossing;
    for (std::size_t i = 0; i + 1 < rp.cells.size(); ++i)
      if (rp.cells[i + 1].x != rp.cells[i].x) {
        if (std::llabs(rp.cells[i + 1].x - rp.cells[i].x) != 1 ||
            rp.cells[i + 1].y != rp.cells[i].y)
          throw std::invalid_argument("ribbon_trace: non-lateral column move");
        crossing.push_back(rp.cells[i].y);
      }
    // path order: make it left-to-right
    if (!rp.cells.empty() && rp.cells.front().x > rp.cells.back().x) {
      std::reverse(rp.cells.begin(), rp.cells.end());
      std::reverse(crossing.begin(), crossing.end());
    }
    for (std::size_t i = 0; i + 1 < crossing.size(); ++i) {
      std::int64_t d = crossing[i + 1] - crossing[i];
      if (std::llabs(d) > 1)
        throw std::invalid_argument("ribbon_trace: displacement above one");
      rp.steps.push_back(static_cast<int>(d));
    }
    for (std::size_t i = 0; i + 1 < rp.steps.size(); ++i)
      if (rp.steps[i] != 0 && rp.steps[i] == rp.steps[i + 1])
        throw std::invalid_argument(
            "ribbon_trace: two consecutive meanders in the same direction");
    rp.left_end_row = rp.cells.front().y;
    rp.right_end_row = rp.cells.back().y;
    out.ribbons.push_back(std::move(rp));
  }

  // vertical order: sort by the row at each ribbon's leftmost column, then
  // flag the ordering as ambiguous when two ribbons share no column but their
  // row ranges overlap (the relative order is then a window artifact)
  std::sort(out.ribbons.begin(), out.ribbons.end(),
            [](const RibbonPath& a, const RibbonPath& b) {
              auto ka = std::pair{a.occupancy.begin()->second.first, a.col_lo};
              auto kb = std::pair{b.occupancy.begin()->second.first, b.col_lo};
              return ka < kb;
            });
  for (std::size_t i = 0; i + 1 < out.ribbons.size(); ++i) {
    const auto& a = out.ribbons[i];
    const auto& b = out.ribbons[i + 1];
    if (std::max(a.col_lo, b.col_lo) > std::min(a.col_hi, b.col_hi)) {
      std::int64_t a_hi = 0, b_lo = 0;
      bool first = true;
      for (const auto& [c, rows] : a.occupancy) {
        if (first || rows.second > a_hi) a_hi = rows.second;
        first = false;
      }
      first = true;
      for (const auto& [c, rows] : b.occupancy) {
        if (first || rows.first < b_lo) b_lo = rows.first;
        first = false;
      }
      if (b_lo <= a_hi) out.order_ambiguous = true;
    }
  }

  // gap runs per column, bounded by H cells on both sides
  Rect box = window.bounding_box();
  for (std::int64_t x = box.x0; x <= box.x1; ++x) {
    std::vector<std::int64_t> rows;
    for (std::int64_t y = box.y0; y <= box.y1; ++y)
      if (window.get({x, y}) == std::optional<char>(kH)) rows.push_back(y);
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
      std::int64_t run = rows[i + 1] - rows[i] - 1;
      if (run > 0) out.gaps.push_back({x, rows[i] + 1, run});
    }
  }
  for (const auto& gap : out.gaps)
    if (gap.length < 2 || gap.length > 4)
      throw std::invalid_argument("ribbon_trace: inter-ribbon gap outside {2,3,4}");

  // origin-based indexing when the window shows column zero at height >= 0
  std::int64_t anchor = -1;
  for (std::size_t r = 0; r < out.ribbons.size(); ++r) {
    auto it = out.ribbons[r].occupancy.find(0);
    if (it == out.ribbons[r].occupancy.end()) continue;
    if (it->second.second >= 0 && anchor < 0) anchor = static_cast<std::int64_t>(r);
  }
  out.origin_anchored = anchor >= 0;
  std::int64_t base = out.origin_anchored ? anchor : 0;
  for (std::size_t r = 0; r < out.ribbons.size(); ++r)
    out.ribbons[r].index = static_cast<int>(static_cast<std::int64_t>(r) - base);
  return out;
}

namespace {

// Renders one ribbon profile: cells at column c are h(c), plus h(c)+step when
// the step out of c is nonzero (turn pairs sit at the step's starting column).
void render_profile(Pattern2D& p, const std::map<std::int64_t, std::int64_t>& h) {
  for (auto it = h.begin(); it != h.end(); ++it) {
    p.set({it->first, it->second}, kH);
    auto nx = std::next(it);
    if (nx != h.end() && nx->second != it->second)
      p.set({it->first, nx->second}, kH);
  }
}

struct MeanderProfile {
  std::map<std::int64_t, std::int64_t> h;  // column -> crossing height
};

// A unison meander family: same profile shape for every ribbon, bases spaced
// so that every column gap stays in {2,3,4}.
MeanderProfile random_profile(std::int64_t c0, std::int64_t c1, std::uint64_t seed,
                              bool& has_turns) {
  std::mt19937_64 rng(seed);
  MeanderProfile mp;
  std::int64_t h = 0;
  int last = 1;  // forbid a step right away so edges stay tame
  has_turns = false;
  for (std::int64_t c = c0; c <= c1; ++c) {
    mp.h[c] = h;
    int step = 0;
    if (last == 0 && c + 1 <= c1) {
      std::uint64_t roll = rng() % 10;
      if (roll < 2) step = 1;
      else if (roll < 4) step = -1;
    }
    h += step;
    last = step;
    if (step != 0) has_turns = true;
  }
  return mp;
}

}  // namespace

Pattern2D random_xh_window(const Rect& r, std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
  std::int64_t G = 6;
  std::int64_t c0 = r.x0 - G, c1 = r.x1 + G;
  bool has_turns = false;
  MeanderProfile mp = random_profile(c0, c1, rng(), has_turns);
  // stack bases covering the rect rows, with legal base spacing
  std::int64_t span_lo = r.y0 - 8, span_hi = r.y1 + 8;
  std::vector<std::int64_t> bases;
  std::int64_t b = span_lo + static_cast<std::int64_t>(rng() % 4);
  while (b <= span_hi) {
    bases.push_back(b);
    std::int64_t gap;
    if (has_turns)
      gap = 4 + static_cast<std::int64_t>(rng() % 2);  // 4 or 5
    else
      gap = 3 + static_cast<std::int64_t>(rng() % 3);  // 3, 4 or 5
    b += gap;
  }
  Pattern2D full;
  for (std::int64_t base : bases) {
    std::map<std::int64_t, std::int64_t> h;
    for (const auto& [c, v] : mp.h) h[c] = v + base;
    render_profile(full, h);
  }
  Pattern2D out;
  for (std::int64_t y = r.y0; y <= r.y1; ++y)
    for (std::int64_t x = r.x0; x <= r.x1; ++x)
      out.set({x, y}, full.get({x, y}) == std::optional<char>(kH) ? kH : kEmpty);
  return out;
}

Pattern2D random_xv_window(const Rect& r, std::uint64_t seed) {
  Rect t{r.y0, r.x0, r.y1, r.x1};
  Pattern2D h = random_xh_window(t, seed ^ 0xabcdef1234567ULL);
  Pattern2D out;
  for (const auto& [c, ch] : h.cells())
    out.set({c.y, c.x}, ch == kH ? kV : kEmpty);
  return out;
}

// ---------------------------------------------------------------------------
// Homoclinic embedding
// ---------------------------------------------------------------------------

namespace {

struct SideBuild {
  // per ribbon: occupancy per column, outermost height
  std::vector<std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>>> occ;
  std::vector<std::int64_t> final_h;
  std::int64_t cols_used = 0;
};

struct SideProblem {
  int dir;  // -1 builds leftward, +1 rightward
  std::int64_t edge_col;
  std::vector<std::int64_t> start_h;   // attachment rows
  std::vector<std::int64_t> targets;   // strictly +4 spaced
  // 0 when the raw edge column holds a single cell, otherwise the offset of
  // the pair partner relative to the attachment cell (+1 or -1)
  std::vector<int> edge_partner;
  const Pattern2D* raw;                // context for seam validation
  const Sft2D* rules;
};

// Column-by-column DFS: every ribbon steps toward its target under the gap
// rules; validation runs on a five-column strip against the already-built
// material. Throws when the relaxation cannot complete.
SideBuild build_side(const SideProblem& pb) {
  std::size_t K = pb.start_h.size();
  std::int64_t max_delta = 0;
  for (std::size_t r = 0; r < K; ++r)
    max_delta = std::max<std::int64_t>(max_delta,
                                       std::llabs(pb.targets[r] - pb.start_h[r]));
  std::int64_t max_cols = 2 * max_delta + 16;

  struct Col {
    std::vector<std::int64_t> h;
    std::vector<int> step;  // step taken INTO this column (from the previous)
  };
  std::vector<Col> cols;

  Pattern2D built = *pb.raw;  // grows as columns are accepted

  auto occupancy_rows = [](std::int64_t h_prev, std::int64_t h_new) {
    return std::pair<std::int64_t, std::int64_t>{std::min(h_prev, h_new),
                                                 std::max(h_prev, h_new)};
  };

  // recursive construction over columns
  std::int64_t budget = 2'000'000;
  std::int64_t deepest = -1;
  std::string deep_strip;
  auto rec = [&](auto&& self, std::int64_t ci) -> bool {
    if (--budget < 0)
      throw std::runtime_error("embed: side relaxation budget exceeded");
    // finished?
    bool done = true;
    if (ci > 0) {
      const Col& last = cols.back();
      for (std::size_t r = 0; r < K; ++r)
        if (last.h[r] != pb.targets[r] || last.step[r] != 0) done = false;
    } else {
      done = false;
    }
    if (done) return true;
    if (ci >= max_cols) {
      if (std::getenv("SHIFTLAB_EMBED_DEBUG") && !cols.empty()) {
        fprintf(stderr, "stuck at max_cols, last heights:");
        for (std::size_t r = 0; r < K; ++r)
          fprintf(stderr, " %lld(%lld)", static_cast<long long>(cols.back().h[r]),
                  static_cast<long long>(pb.targets[r]));
        fprintf(stderr, "\n");
      }
      return false;
    }

    std::int64_t x = pb.edge_col + pb.dir * (ci + 1);
    const std::vector<std::int64_t> prev_h =
        ci == 0 ? pb.start_h : cols.back().h;
    const std::vector<int> prev_step =
        ci == 0 ? std::vector<int>() : cols.back().step;

    // candidate steps per ribbon, bottom-up DFS; each complete candidate
    // column is validated and then the search continues into the next column
    Col cand;
    cand.h.resize(K);
    cand.step.resize(K);
    auto ribbon_rec = [&](auto&& rself, std::size_t r) -> bool {
      if (r == K) {
        // strip validation: new column plus four inward columns
        Pattern2D strip;
        std::int64_t lo_row = *std::min_element(cand.h.begin(), cand.h.end()) - 2;
        std::int64_t hi_row = *std::max_element(cand.h.begin(), cand.h.end()) + 2;
        for (std::int64_t cx = 0; cx <= 4; ++cx) {
          std::int64_t col = x - pb.dir * cx;
          for (std::int64_t y = lo_row; y <= hi_row; ++y) {
            Coord c{col, y};
            if (cx == 0) {
              // new column: cells from candidate occupancies
              char v = kEmpty;
              for (std::size_t rr = 0; rr < K; ++rr) {
                auto [a, b] = occupancy_rows(prev_h[rr], cand.h[rr]);
                // pair sits at the NEW column (outward of the step)
                if (y >= a && y <= b) v = kH;
              }
              strip.set(c, v);
            } else {
              auto got = built.get(c);
              if (got) strip.set(c, *got);
            }
          }
        }
        if (!validate_pattern(*pb.rules, strip)) {
          if (ci > deepest) {
            deepest = ci;
            deep_strip = strip.to_grid();
          }
          return false;
        }

        // accept the column and try to finish the remaining relaxation
        Col saved = cand;
        cols.push_back(saved);
        for (std::size_t rr = 0; rr < K; ++rr) {
          auto [a, b] = occupancy_rows(prev_h[rr], saved.h[rr]);
          for (std::int64_t y = a; y <= b; ++y) built.set({x, y}, kH);
        }
        for (std::int64_t y = lo_row; y <= hi_row; ++y)
          if (!built.has({x, y})) built.set({x, y}, kEmpty);

        if (self(self, ci + 1)) return true;

        cols.pop_back();
        for (std::int64_t y = lo_row; y <= hi_row; ++y) built.erase({x, y});
        return false;
      }
      std::int64_t want = pb.targets[r] - prev_h[r];
      int desired = want > 0 ? 1 : (want < 0 ? -1 : 0);
      std::vector<int> options;
      // steps need a flat predecessor column; at the seam a step may not
      // duplicate the raw turn pair sitting at the edge column
      bool can_step = ci > 0 ? prev_step[r] == 0 : true;
      if (can_step) {
        // preferred direction first, but keep detours available even when
        // the ribbon already sits at its target
        for (int s : {desired, 0, 1, -1})
          if (std::find(options.begin(), options.end(), s) == options.end())
            options.push_back(s);
      } else {
        options = {0};
      }
      for (int s : options) {
        if (ci == 0 && s != 0 && pb.edge_partner[r] == s) continue;
        std::int64_t nh = prev_h[r] + s;
        auto [lo, hi] = occupancy_rows(prev_h[r], nh);
        if (r > 0) {
          auto [blo, bhi] = occupancy_rows(prev_h[r - 1], cand.h[r - 1]);
          std::int64_t run = lo - bhi - 1;
          if (run < 2 || run > 4) continue;
        }
        cand.h[r] = nh;
        cand.step[r] = s;
        if (rself(rself, r + 1)) return true;
      }
      return false;
    };
    return ribbon_rec(ribbon_rec, 0);
  };

  if (!rec(rec, 0)) {
    if (std::getenv("SHIFTLAB_EMBED_DEBUG")) {
      fprintf(stderr, "side dir=%d edge=%lld max_cols=%lld\n", pb.dir,
              static_cast<long long>(pb.edge_col), static_cast<long long>(max_cols));
      for (std::size_t r = 0; r < K; ++r)
        fprintf(stderr, "  r=%zu start=%lld target=%lld partner=%d\n", r,
                static_cast<long long>(pb.start_h[r]),
                static_cast<long long>(pb.targets[r]), pb.edge_partner[r]);
      fprintf(stderr, "deepest rejected column %lld strip:\n%s\n",
              static_cast<long long>(deepest), deep_strip.c_str());
    }
    throw std::runtime_error("embed: side relaxation failed");
  }

  SideBuild out;
  out.occ.resize(K);
  out.final_h.resize(K);
  for (std::size_t r = 0; r < K; ++r) out.final_h[r] = pb.targets[r];
  std::vector<std::int64_t> prev = pb.start_h;
  for (std::size_t ci = 0; ci < cols.size(); ++ci) {
    std::int64_t x = pb.edge_col + pb.dir * (static_cast<std::int64_t>(ci) + 1);
    for (std::size_t r = 0; r < K; ++r) {
      auto [a, b] = occupancy_rows(prev[r], cols[ci].h[r]);
      out.occ[r][x] = {a, b};
    }
    prev = cols[ci].h;
  }
  out.cols_used = static_cast<std::int64_t>(cols.size());
  return out;
}

// Minimal-meander profile over [c0, c1] tracking a contour from above:
// height h obeys gap(h_occupancy, contour_top) in {2,3,4} per column, flat at
// `level` on both edge zones. dir = +1 tracks from above, -1 from below.
std::optional<std::map<std::int64_t, std::int64_t>> corridor_profile(
    const std::map<std::int64_t, std::int64_t>& contour, std::int64_t c0,
    std::int64_t c1, std::int64_t level, int dir, std::int64_t flat_zone) {
  // DP over columns; states (height, last step != 0 ?)
  std::int64_t hmin = level, hmax = level;
  for (const auto& [c, top] : contour) {
    hmin = std::min(hmin, top + 3 * dir);
    hmax = std::max(hmax, top + 5 * dir);
  }
  if (hmin > hmax) std::swap(hmin, hmax);
  std::int64_t H = hmax - hmin + 1;
  std::int64_t n_cols = c1 - c0 + 1;
  const std::int64_t INF = 1'000'000'000;
  // cost[c][h][moved]: minimal meander count; parent pointers for rebuild
  std::vector<std::vector<std::array<std::int64_t, 2>>> cost(
      static_cast<std::size_t>(n_cols),
      std::vector<std::array<std::int64_t, 2>>(static_cast<std::size_t>(H),
                                               {INF, INF}));
  std::vector<std::vector<std::array<std::int64_t, 2>>> parent = cost;

  auto gap_ok = [&](std::int64_t col, std::int64_t occ_lo, std::int64_t occ_hi) {
    auto it = contour.find(col);
    if (it == contour.end()) return false;
    std::int64_t run =
        dir > 0 ? occ_lo - it->second - 1 : it->second - occ_hi - 1;
    return run >= 2 && run <= 4;
  };
  auto flat_required = [&](std::int64_t col) {
    return col < c0 + flat_zone || col > c1 - flat_zone;
  };

  // first column: must be flat-entering at level in the edge zone
  {
    std::int64_t col = c0;
    for (std::int64_t h = hmin; h <= hmax; ++h) {
      if (flat_required(col) && h != level) continue;
      if (!gap_ok(col, h, h)) continue;  // occupancy pending the step choice
      cost[0][static_cast<std::size_t>(h - hmin)][0] = 0;
    }
  }
  for (std::int64_t ci = 0; ci + 1 < n_cols; ++ci) {
    std::int64_t col = c0 + ci;
    for (std::int64_t h = hmin; h <= hmax; ++h)
      for (int moved = 0; moved < 2; ++moved) {
        std::int64_t cur = cost[static_cast<std::size_t>(ci)]
                               [static_cast<std::size_t>(h - hmin)][moved];
        if (cur >= INF) continue;
        for (int s : {0, 1, -1}) {
          if (s != 0 && moved) continue;
          std::int64_t nh = h + s;
          if (nh < hmin || nh > hmax) continue;
          if (flat_required(col) && s != 0) continue;
          if (flat_required(col + 1) && nh != level) continue;
          // occupancy of THIS column includes the step pair
          std::int64_t lo = std::min(h, nh), hi = std::max(h, nh);
          if (!gap_ok(col, lo, hi)) continue;
          std::int64_t nc = cur + (s != 0 ? 1 : 0);
          auto& slot = cost[static_cast<std::size_t>(ci + 1)]
                           [static_cast<std::size_t>(nh - hmin)][s != 0 ? 1 : 0];
          if (nc < slot) {
            slot = nc;
            parent[static_cast<std::size_t>(ci + 1)]
                  [static_cast<std::size_t>(nh - hmin)][s != 0 ? 1 : 0] =
                      (h - hmin) * 2 + moved;
          }
        }
      }
  }
  // final column: flat at level (edge zone forces this), occupancy flat
  std::int64_t best = INF;
  int best_moved = 0;
  for (int moved = 0; moved < 2; ++moved) {
    std::int64_t c = cost[static_cast<std::size_t>(n_cols - 1)]
                         [static_cast<std::size_t>(level - hmin)][moved];
    if (!gap_ok(c1, level, level)) c = INF;
    if (c < best) {
      best = c;
      best_moved = moved;
    }
  }
  if (best >= INF) return std::nullopt;
  std::map<std::int64_t, std::int64_t> prof;
  std::int64_t h = level - hmin;
  int moved = best_moved;
  for (std::int64_t ci = n_cols - 1; ci >= 0; --ci) {
    prof[c0 + ci] = h + hmin;
    if (ci > 0) {
      std::int64_t enc = parent[static_cast<std::size_t>(ci)]
                               [static_cast<std::size_t>(h)][moved];
      h = enc / 2;
      moved = static_cast<int>(enc % 2);
    }
  }
  return prof;
}

}  // namespace

EmbedResult embed_homoclinic_xh(const Pattern2D& w, std::int64_t margin) {
  static const Sft2D rules = xh_rules();
  for (const auto& [c, ch] : w.cells())
    if (ch != kEmpty && ch != kH)
      throw std::invalid_argument("embed_homoclinic_xh: window not over {0,H}");
  if (!validate_pattern(rules, w))
    throw std::invalid_argument("embed_homoclinic_xh: input violates the rules");

  Rect box = w.empty() ? Rect{0, 0, -1, -1} : w.bounding_box();
  if (w.empty()) {
    Rect r{-margin, -margin, margin, margin};
    return EmbedResult{xh_flat_window(r), box, margin};
  }

  std::int64_t W = box.width(), Hh = box.height();
  std::int64_t E = Hh + W + 12;

  // Completion rules: the ribbon rules plus the four "facing turn pair"
  // configurations. Those are locally admissible but continue into no legal
  // column, so they appear in no point; excluding them keeps the completed
  // rectangle extendable at its left and right edges.
  static const Sft2D fill_rules = [] {
    Sft2D base = xh_rules();
    std::vector<Pattern2D> forb = base.forbidden;
    for (std::int64_t d : {5, 6}) {
      Pattern2D left;  // blocks leftward continuation
      left.set({0, 0}, kH);
      left.set({0, 1}, kH);
      left.set({1, 1}, kH);
      left.set({1, 0}, kEmpty);
      for (std::int64_t y = 2; y < d; ++y) left.set({0, y}, kEmpty);
      left.set({0, d}, kH);
      left.set({0, d + 1}, kH);
      left.set({1, d}, kH);
      left.set({1, d + 1}, kEmpty);
      Pattern2D right;  // the mirror image blocks rightward continuation
      for (const auto& [c, ch] : left.cells()) right.set({1 - c.x, c.y}, ch);
      forb.push_back(std::move(left));
      forb.push_back(std::move(right));
    }
    return Sft2D(base.alphabet, std::move(forb));
  }();

  // Step 1: complete the ribbons across an extended rectangle. Two columns
  // of horizontal padding keep edge stubs (cells whose neighbor rule is cut
  // off by the rectangle) away from the box columns; the padding is trimmed
  // again after tracing.
  const std::int64_t pad = 2;
  Rect r1{box.x0 - pad, box.y0 - E, box.x1 + pad, box.y1 + E};
  std::optional<Pattern2D> filled;
  for (std::uint64_t attempt = 0; attempt < 4 && !filled; ++attempt) {
    FillOptions fo;
    fo.seed = attempt;  // 0 = plain order, then randomized retries
    filled = fill_rectangle(fill_rules, w, r1, fo);
  }
  if (!filled)
    throw std::invalid_argument("embed_homoclinic_xh: input not fillable");

  auto dec = ribbon_trace(*filled);
  // ribbons covering all box columns, trimmed back to the box columns
  struct Kept {
    std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>> occ;
    std::vector<Coord> cells;
    std::int64_t attach_left = 0, attach_right = 0;
    int partner_left = 0, partner_right = 0;
  };
  std::vector<Kept> kept;
  for (auto& rp : dec.ribbons) {
    if (rp.col_lo > box.x0 || rp.col_hi < box.x1) continue;
    Kept k;
    for (const auto& [col, rows] : rp.occupancy)
      if (col >= box.x0 && col <= box.x1) k.occ[col] = rows;
    for (const Coord& c : rp.cells)
      if (c.x >= box.x0 && c.x <= box.x1) k.cells.push_back(c);
    // attachment = the row where the path crosses the trim boundary; for a
    // ribbon ending exactly at the box edge, the path end row
    k.attach_left = k.cells.front().y;
    k.attach_right = k.cells.back().y;
    for (std::size_t i = 0; i + 1 < rp.cells.size(); ++i) {
      const Coord& a = rp.cells[i];
      const Coord& b = rp.cells[i + 1];
      if ((a.x == box.x0 - 1 && b.x == box.x0) ||
          (b.x == box.x0 - 1 && a.x == box.x0))
        k.attach_left = a.y;
      if ((a.x == box.x1 + 1 && b.x == box.x1) ||
          (b.x == box.x1 + 1 && a.x == box.x1))
        k.attach_right = a.y;
    }
    auto [la, lb2] = k.occ.at(box.x0);
    auto [ra, rb2] = k.occ.at(box.x1);
    k.partner_left = la == lb2 ? 0 : (k.attach_left == la ? 1 : -1);
    k.partner_right = ra == rb2 ? 0 : (k.attach_right == ra ? 1 : -1);
    kept.push_back(std::move(k));
  }
  if (kept.empty())
    throw std::logic_error("embed_homoclinic_xh: no full-span ribbons");
  std::sort(kept.begin(), kept.end(), [&](const Kept& a, const Kept& b) {
    return a.occ.at(box.x0).first < b.occ.at(box.x0).first;
  });

  std::size_t K = kept.size();
  // Step 2 targets: consecutive multiples of four near the current heights.
  std::int64_t acc = 0;
  for (std::size_t r = 0; r < K; ++r)
    acc += kept[r].attach_left - 4 * static_cast<std::int64_t>(r);
  std::int64_t k0 = static_cast<std::int64_t>(
      std::llround(static_cast<double>(acc) / static_cast<double>(K) / 4.0));
  std::vector<std::int64_t> targets(K);
  for (std::size_t r = 0; r < K; ++r)
    targets[r] = 4 * (k0 + static_cast<std::int64_t>(r));

  // raw material pattern: kept ribbon cells plus explicit zeros between them
  Pattern2D core;
  for (std::int64_t x = box.x0; x <= box.x1; ++x) {
    std::int64_t ylo = kept.front().occ.at(x).first;
    std::int64_t yhi = kept.back().occ.at(x).second;
    for (std::int64_t y = ylo; y <= yhi; ++y) core.set({x, y}, kEmpty);
  }
  for (const auto& k : kept)
    for (const Coord& c : k.cells) core.set(c, kH);

  // Step 2: relax both sides to the flat targets.
  SideProblem left{-1, box.x0, {}, targets, {}, &core, &rules};
  SideProblem right{+1, box.x1, {}, targets, {}, &core, &rules};
  for (const auto& k : kept) {
    left.start_h.push_back(k.attach_left);
    right.start_h.push_back(k.attach_right);
    left.edge_partner.push_back(k.partner_left);
    right.edge_partner.push_back(k.partner_right);
  }
  SideBuild lb = build_side(left);
  SideBuild rb = build_side(right);

  std::int64_t mx = std::max(lb.cols_used, rb.cols_used) + 7;
  std::int64_t cx0 = box.x0 - mx, cx1 = box.x1 + mx;

  // Assemble the middle band: kept raw cells, side occupancies, flat tails.
  Pattern2D band;
  auto put_ribbon_cells = [&](std::size_t r) {
    for (const Coord& c : kept[r].cells) band.set(c, kH);
    for (const auto& [col, rows] : lb.occ[r])
      for (std::int64_t y = rows.first; y <= rows.second; ++y) band.set({col, y}, kH);
    for (const auto& [col, rows] : rb.occ[r])
      for (std::int64_t y = rows.first; y <= rows.second; ++y) band.set({col, y}, kH);
    // flat tails to the window edge
    std::int64_t lx = box.x0 - lb.cols_used, rxx = box.x1 + rb.cols_used;
    for (std::int64_t x = cx0; x < lx; ++x) band.set({x, targets[r]}, kH);
    for (std::int64_t x = rxx + 1; x <= cx1; ++x) band.set({x, targets[r]}, kH);
  };
  for (std::size_t r = 0; r < K; ++r) put_ribbon_cells(r);

  // Step 3: unraveling stacks above and below.
  auto stack_dir = [&](int dir) {
    // contour: outermost occupied row per column in the band
    std::map<std::int64_t, std::int64_t> contour;
    for (const auto& [c, ch] : band.cells()) {
      if (ch != kH) continue;
      auto it = contour.find(c.x);
      if (it == contour.end())
        contour[c.x] = c.y;
      else if (dir > 0)
        it->second = std::max(it->second, c.y);
      else
        it->second = std::min(it->second, c.y);
    }
    std::int64_t level =
        dir > 0 ? targets.back() : targets.front();
    bool flat = false;
    for (int guard = 0; guard < 64 && !flat; ++guard) {
      level += 4 * dir;
      auto prof = corridor_profile(contour, cx0, cx1, level, dir, 6);
      if (!prof)
        throw std::runtime_error("embed: stack corridor infeasible");
      // render into the band and update the contour
      for (auto it = prof->begin(); it != prof->end(); ++it) {
        band.set({it->first, it->second}, kH);
        auto nx = std::next(it);
        if (nx != prof->end() && nx->second != it->second)
          band.set({it->first, nx->second}, kH);
      }
      flat = true;
      for (const auto& [c, h] : *prof)
        if (h != level) flat = false;
      for (const auto& [c, h] : *prof) {
        auto nx = prof->find(c + 1);
        std::int64_t occ = h;
        if (nx != prof->end())
          occ = dir > 0 ? std::max({h, nx->second}) : std::min({h, nx->second});
        contour[c] = dir > 0 ? std::max(contour[c], occ) : std::min(contour[c], occ);
      }
    }
    if (!flat) throw std::runtime_error("embed: unraveling did not converge");
    return level;
  };
  std::int64_t top_level = stack_dir(+1);
  std::int64_t bot_level = stack_dir(-1);

  // Final window rectangle and explicit zeros.
  Rect full{cx0, bot_level - 2, cx1, top_level + 2};
  Pattern2D window;
  for (std::int64_t y = full.y0; y <= full.y1; ++y)
    for (std::int64_t x = full.x0; x <= full.x1; ++x)
      window.set({x, y}, band.get({x, y}) == std::optional<char>(kH) ? kH : kEmpty);

  if (!validate_pattern(rules, window))
    throw std::logic_error("embed_homoclinic_xh: assembled window invalid");

  // frame agreement with the flat point
  for (std::int64_t y = full.y0; y <= full.y1; ++y)
    for (std::int64_t x = full.x0; x <= full.x1; ++x) {
      bool in_frame = x < full.x0 + 5 || x > full.x1 - 5 || y < full.y0 + 5 ||
                      y > full.y1 - 5;
      if (!in_frame) continue;
      char want = (((y % 4) + 4) % 4 == 0) ? kH : kEmpty;
      if (window.at({x, y}) != want)
        throw std::logic_error("embed_homoclinic_xh: frame does not match the flat point");
    }

  std::int64_t need = std::max({mx, top_level + 2 - box.y1, box.y0 - bot_level + 2});
  if (margin < need) throw GrowthError(need);
  return EmbedResult{std::move(window), box, need};
}

std::map<std::pair<int, int>, CrossingSites> crossing_sites(
    const Pattern2D& xh_window, const Pattern2D& xv_window) {
  auto hdec = ribbon_trace(xh_window);
  // vertical window: transpose into the horizontal machinery
  Pattern2D tv;
  for (const auto& [c, ch] : xv_window.cells()) {
    if (ch != kEmpty && ch != kV)
      throw std::invalid_argument("crossing_sites: vertical window not over {0,V}");
    tv.set({c.y, c.x}, ch == kV ? kH : kEmpty);
  }
  auto vdec = ribbon_trace(tv);

  // overlap of the two shapes
  std::set<Coord> overlap;
  for (const auto& [c, ch] : xh_window.cells())
    if (xv_window.has(c)) overlap.insert(c);

  std::map<std::pair<int, int>, CrossingSites> out;
  if (overlap.empty()) return out;
  for (const auto& hr : hdec.ribbons)
    for (const auto& vr : vdec.ribbons) {
      // intersection sites: cells on both paths (v cells live transposed)
      std::vector<Coord> sites;
      std::set<Coord> hcells(hr.cells.begin(), hr.cells.end());
      for (const Coord& tc : vr.cells) {
        Coord c{tc.y, tc.x};
        if (hcells.count(c)) sites.push_back(c);
      }
      if (sites.empty()) continue;
      std::sort(sites.begin(), sites.end());
      std::int64_t sx0 = sites[0].x, sx1 = sites[0].x, sy0 = sites[0].y,
                   sy1 = sites[0].y;
      for (const Coord& c : sites) {
        sx0 = std::min(sx0, c.x);
        sx1 = std::max(sx1, c.x);
        sy0 = std::min(sy0, c.y);
        sy1 = std::max(sy1, c.y);
      }
      bool visible = hr.col_lo < sx0 && hr.col_hi > sx1 && vr.col_lo < sy0 &&
                     vr.col_hi > sy1;
      for (const Coord& c : sites)
        if (!overlap.count(c)) visible = false;
      if (visible && sites.size() > 3)
        throw std::logic_error("crossing_sites: intersection larger than three");
      out[{hr.index, vr.index}] = CrossingSites{std::move(sites), visible};
    }
  return out;
}

std::map<std::pair<int, int>, CrossingInfo> crossing_map(const Pattern2D& xh_window,
                                                         const Pattern2D& xv_window) {
  std::map<std::pair<int, int>, CrossingInfo> out;
  for (const auto& [idx, cs] : crossing_sites(xh_window, xv_window)) {
    if (!cs.fully_visible) continue;
    out[idx] = CrossingInfo{cs.sites.front(), static_cast<int>(cs.sites.size())};
  }
  return out;
}

}  // namespace shiftlab
