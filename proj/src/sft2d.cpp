#include "shiftlab/sft2d.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace shiftlab {

Sft2D::Sft2D(std::string alpha, std::vector<Pattern2D> forb)
    : alphabet(std::move(alpha)), forbidden(std::move(forb)) {
  if (alphabet.empty()) throw std::invalid_argument("Sft2D: empty alphabet");
  if (alphabet.size() > 16)
    throw std::invalid_argument("Sft2D: alphabets larger than 16 unsupported");
  type_t = 1;
  for (const auto& f : forbidden) {
    if (f.empty()) throw std::invalid_argument("Sft2D: empty forbidden pattern");
    Rect b = f.bounding_box();
    type_t = std::max<int>(type_t, static_cast<int>(std::max(b.width(), b.height())));
    for (const auto& [c, ch] : f.cells())
      if (alphabet.find(ch) == std::string::npos)
        throw std::invalid_argument("Sft2D: forbidden pattern letter outside alphabet");
  }
}

bool validate_pattern(const Sft2D& sft, const Pattern2D& p) {
  for (const auto& [c, ch] : p.cells())
    if (sft.alphabet.find(ch) == std::string::npos)
      throw std::invalid_argument("validate_pattern: letter outside alphabet");
  if (p.empty()) return true;
  Rect box = p.bounding_box();
  for (const auto& f : sft.forbidden) {
    Rect fb = f.bounding_box();
    for (std::int64_t dy = box.y0 - fb.y0 - fb.height() + 1;
         dy <= box.y1 - fb.y0; ++dy)
      for (std::int64_t dx = box.x0 - fb.x0 - fb.width() + 1;
           dx <= box.x1 - fb.x0; ++dx) {
        bool match = true;
        for (const auto& [c, ch] : f.cells()) {
          auto v = p.get({c.x + dx, c.y + dy});
          if (!v || *v != ch) {
            match = false;
            break;
          }
        }
        if (match) return false;
      }
  }
  return true;
}

namespace {

struct Placement {
  // (cell index inside target, required letter index)
  std::vector<std::pair<int, int>> need;
};

struct Solver {
  const Sft2D& sft;
  std::vector<Coord> coords;
  std::vector<std::uint16_t> domain;
  std::vector<int> assigned;  // -1 = none, else letter index
  std::vector<Placement> placements;
  std::vector<std::vector<int>> cell_placements;
  std::vector<std::vector<int>> letter_order;
  std::vector<std::pair<int, std::uint16_t>> trail;  // (cell, previous domain)
  std::vector<int> atrail;                           // cells that got assigned
  std::int64_t steps = 0;
  std::int64_t max_steps;

  explicit Solver(const Sft2D& s, std::int64_t budget) : sft(s), max_steps(budget) {}

  bool propagate_domain(int cell, std::uint16_t mask) {
    std::uint16_t old = domain[static_cast<std::size_t>(cell)];
    std::uint16_t next = old & mask;
    if (next == old) return true;
    trail.push_back({cell, old});
    domain[static_cast<std::size_t>(cell)] = next;
    if (next == 0) return false;
    if (assigned[static_cast<std::size_t>(cell)] < 0 && (next & (next - 1)) == 0)
      return assign(cell, std::countr_zero(next));
    return true;
  }

  bool check_placements(int cell) {
    for (int pi : cell_placements[static_cast<std::size_t>(cell)]) {
      const Placement& pl = placements[static_cast<std::size_t>(pi)];
      int open = -1;
      bool dead = false;
      for (auto [ci, li] : pl.need) {
        int a = assigned[static_cast<std::size_t>(ci)];
        if (a < 0) {
          if (open >= 0) {
            open = -2;  // two or more open cells: nothing to do yet
            break;
          }
          open = ci;
        } else if (a != li) {
          dead = true;
          break;
        }
      }
      if (dead || open == -2) continue;
      if (open == -1) return false;  // the forbidden pattern is complete
      int req = -1;
      for (auto [ci, li] : pl.need)
        if (ci == open) req = li;
      if (!propagate_domain(open, static_cast<std::uint16_t>(~(1u << req))))
        return false;
    }
    return true;
  }

  bool assign(int cell, int letter) {
    int cur = assigned[static_cast<std::size_t>(cell)];
    if (cur == letter) return true;
    if (cur >= 0) return false;
    assigned[static_cast<std::size_t>(cell)] = letter;
    atrail.push_back(cell);
    if (!propagate_domain(cell, static_cast<std::uint16_t>(1u << letter))) return false;
    return check_placements(cell);
  }

  void undo_to(std::size_t mark, std::size_t amark) {
    while (trail.size() > mark) {
      auto [c, old] = trail.back();
      trail.pop_back();
      domain[static_cast<std::size_t>(c)] = old;
    }
    while (atrail.size() > amark) {
      assigned[static_cast<std::size_t>(atrail.back())] = -1;
      atrail.pop_back();
    }
  }

  bool solve(std::size_t from) {
    if (++steps > max_steps)
      throw std::runtime_error("fill_rectangle: search budget exceeded");
    std::size_t n = coords.size();
    std::size_t pick = n;
    for (std::size_t i = from; i < n; ++i)
      if (assigned[i] < 0) {
        pick = i;
        break;
      }
    if (pick == n) return true;
    for (int letter : letter_order[pick]) {
      if (!(domain[pick] & (1u << letter))) continue;
      std::size_t mark = trail.size(), amark = atrail.size();
      if (assign(static_cast<int>(pick), letter) && solve(pick + 1)) return true;
      undo_to(mark, amark);
    }
    return false;
  }
};

}  // namespace

std::optional<Pattern2D> fill_rectangle(const Sft2D& sft, const Pattern2D& partial,
                                        const Rect& target, const FillOptions& opts) {
  for (const auto& [c, ch] : partial.cells())
    if (!target.contains(c))
      throw std::invalid_argument("fill_rectangle: partial cell outside target");
  if (target.empty()) return Pattern2D();

  Solver sv(sft, opts.max_steps);
  auto index_of = [&](Coord c) -> int {
    if (!target.contains(c)) return -1;
    return static_cast<int>((c.y - target.y0) * target.width() + (c.x - target.x0));
  };
  std::size_t total = static_cast<std::size_t>(target.width() * target.height());
  sv.coords.resize(total);
  for (std::int64_t y = target.y0; y <= target.y1; ++y)
    for (std::int64_t x = target.x0; x <= target.x1; ++x)
      sv.coords[static_cast<std::size_t>(index_of({x, y}))] = {x, y};
  std::uint16_t full = static_cast<std::uint16_t>((1u << sft.alphabet.size()) - 1);
  sv.domain.assign(total, full);
  sv.assigned.assign(total, -1);

  // letter orders, optionally shuffled per cell
  sv.letter_order.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    std::vector<int> order(sft.alphabet.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
    if (opts.seed != 0) {
      std::mt19937_64 rng(opts.seed * 0x9e3779b97f4a7c15ULL + i);
      std::shuffle(order.begin(), order.end(), rng);
    }
    sv.letter_order[i] = std::move(order);
  }

  // Placements: forbidden translates intersecting the target whose outside
  // cells (if any) are pinned by the boundary pattern and match.
  sv.cell_placements.assign(total, {});
  for (const auto& f : sft.forbidden) {
    Rect fb = f.bounding_box();
    for (std::int64_t dy = target.y0 - fb.y1; dy <= target.y1 - fb.y0; ++dy)
      for (std::int64_t dx = target.x0 - fb.x1; dx <= target.x1 - fb.x0; ++dx) {
        Placement pl;
        bool usable = true, touches_target = false;
        for (const auto& [c, ch] : f.cells()) {
          Coord at{c.x + dx, c.y + dy};
          int idx = index_of(at);
          int li = static_cast<int>(sft.alphabet.find(ch));
          if (idx >= 0) {
            pl.need.push_back({idx, li});
            touches_target = true;
          } else if (opts.boundary) {
            auto v = opts.boundary->get(at);
            if (!v) {
              usable = false;  // free outside cell: cannot be forced
              break;
            }
            if (*v != ch) {
              usable = false;  // boundary letter already breaks the pattern
              break;
            }
            // matching fixed cell: contributes nothing further
          } else {
            usable = false;
            break;
          }
        }
        if (!usable || !touches_target) continue;
        if (pl.need.empty())
          return std::nullopt;  // boundary alone completes a forbidden pattern
        int pid = static_cast<int>(sv.placements.size());
        sv.placements.push_back(std::move(pl));
        for (auto [ci, li] : sv.placements.back().need)
          sv.cell_placements[static_cast<std::size_t>(ci)].push_back(pid);
      }
  }
  for (auto& lst : sv.cell_placements) {
    std::sort(lst.begin(), lst.end());
    lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
  }

  if (opts.domains)
    for (const auto& [c, mask] : *opts.domains) {
      if (!target.contains(c))
        throw std::invalid_argument("fill_rectangle: domain cell outside target");
      if (!sv.propagate_domain(index_of(c), mask)) return std::nullopt;
    }

  for (const auto& [c, ch] : partial.cells()) {
    auto li = sft.alphabet.find(ch);
    if (li == std::string::npos)
      throw std::invalid_argument("fill_rectangle: partial letter outside alphabet");
    if (!sv.assign(index_of(c), static_cast<int>(li))) return std::nullopt;
  }

  if (!sv.solve(0)) return std::nullopt;
  Pattern2D out;
  for (std::size_t i = 0; i < total; ++i)
    out.set(sv.coords[i], sft.alphabet[static_cast<std::size_t>(sv.assigned[i])]);
  return out;
}

}  // namespace shiftlab
