#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "shiftlab/ribbons.hpp"
#include "shiftlab/sft2d.hpp"

using namespace shiftlab;

namespace {

Pattern2D grid(const std::vector<std::string>& rows, Coord origin = {0, 0}) {
  // rows listed top-down; '.' cells are skipped, everything else kept
  Pattern2D p;
  std::int64_t h = static_cast<std::int64_t>(rows.size());
  for (std::int64_t r = 0; r < h; ++r) {
    const std::string& line = rows[static_cast<std::size_t>(r)];
    for (std::int64_t x = 0; x < static_cast<std::int64_t>(line.size()); ++x) {
      char ch = line[static_cast<std::size_t>(x)];
      if (ch != '.') p.set({origin.x + x, origin.y + h - 1 - r}, ch);
    }
  }
  return p;
}

}  // namespace

TEST_CASE("validate_pattern basics") {
  Sft2D xh = xh_rules();
  CHECK(xh.type_t == 5);

  // flat configuration with ribbons every fourth row
  Rect r{0, 0, 7, 7};
  CHECK(validate_pattern(xh, xh_flat_window(r)));

  // three vertically adjacent H's
  Pattern2D bad = grid({"H", "H", "H"});
  CHECK_FALSE(validate_pattern(xh, bad));

  CHECK(validate_pattern(xh, Pattern2D()));

  // a single-step meander strip is legal
  Pattern2D meander = grid({
      "00000000",
      "0HHH0000",
      "HH0HHHHH",
      "00000000",
      "00000000",
  });
  CHECK(validate_pattern(xh, meander));

  // the double meander from the rules is not
  Pattern2D dbl = grid({
      "HH000",
      "00HH0",
      "0000H",
  });
  CHECK_FALSE(validate_pattern(xh, dbl));

  // legal diagonal with flanked center
  Pattern2D flanked = grid({
      "H0000",
      "HHH00",
      "00H00",
  });
  CHECK(validate_pattern(xh, flanked));
}

TEST_CASE("xv_rules is the rotation of xh_rules") {
  Sft2D xv = xv_rules();
  CHECK(xv.type_t == 5);
  Sft2D xh = xh_rules();
  // rotating each xh forbidden pattern and renaming letters gives xv's set
  std::set<std::string> got, want;
  for (const auto& f : xv.forbidden) want.insert(f.to_grid());
  for (const auto& f : xh.forbidden) {
    Pattern2D r = rotate90(f);
    Pattern2D renamed;
    for (const auto& [c, ch] : r.cells()) renamed.set(c, ch == kH ? kV : ch);
    got.insert(renamed.to_grid());
  }
  CHECK(got == want);

  Rect r{0, 0, 7, 7};
  CHECK(validate_pattern(xv, xv_flat_window(r)));
  // transpose of an xh-legal window with H renamed to V is xv-legal
  Pattern2D hwin = random_xh_window({0, 0, 9, 9}, 7);
  Pattern2D hwin_t = transpose(hwin);
  Pattern2D vwin;
  for (const auto& [c, ch] : hwin_t.cells())
    vwin.set(c, ch == kH ? kV : kEmpty);
  CHECK(validate_pattern(xv, vwin));
}

TEST_CASE("fill_rectangle") {
  Sft2D xh = xh_rules();
  // an empty 6x6 must get ribbons (all-zero violates the column run rule)
  auto filled = fill_rectangle(xh, Pattern2D(), {0, 0, 5, 5});
  REQUIRE(filled.has_value());
  CHECK(validate_pattern(xh, *filled));
  bool has_h = false;
  for (const auto& [c, ch] : filled->cells()) has_h = has_h || ch == kH;
  CHECK(has_h);

  // full shift: anything goes
  Sft2D full("ab", {});
  auto f2 = fill_rectangle(full, Pattern2D(), {0, 0, 1, 1});
  REQUIRE(f2.has_value());
  CHECK(f2->size() == 4);

  // empty SFT: single cell unfillable
  Pattern2D one;
  one.set({0, 0}, 'a');
  std::vector<Pattern2D> forb{one};
  Sft2D dead("a", forb);
  CHECK_FALSE(fill_rectangle(dead, Pattern2D(), {0, 0, 0, 0}).has_value());

  // completion around a seed stays legal and honors the seed
  Pattern2D seed;
  seed.set({3, 3}, kH);
  auto f3 = fill_rectangle(xh, seed, {0, 0, 7, 7});
  REQUIRE(f3.has_value());
  CHECK(f3->at({3, 3}) == kH);
  CHECK(validate_pattern(xh, *f3));
}

TEST_CASE("ribbon_trace on flat and meander windows") {
  Rect r{0, 0, 9, 9};
  auto dec = ribbon_trace(xh_flat_window(r));
  CHECK(dec.ribbons.size() == 3);  // rows 0, 4, 8
  CHECK(dec.origin_anchored);
  for (const auto& rp : dec.ribbons) {
    CHECK(rp.col_lo == 0);
    CHECK(rp.col_hi == 9);
    for (int s : rp.steps) CHECK(s == 0);
  }
  CHECK(dec.ribbons[0].index == 0);
  CHECK(dec.ribbons[1].index == 1);
  for (const auto& g : dec.gaps) CHECK(g.length == 3);

  // single meander: displacement sequence +1 then back -1
  Pattern2D meander = grid({
      "0000000000",
      "00HHHH0000",
      "HHH00HHHHH",
      "0000000000",
      "0000000000",
  });
  auto dm = ribbon_trace(meander);
  CHECK(dm.ribbons.size() == 1);
  std::vector<int> nonzero;
  for (int s : dm.ribbons[0].steps)
    if (s != 0) nonzero.push_back(s);
  CHECK(nonzero == std::vector<int>{1, -1});

  // all-zero row of height one: no ribbons
  Pattern2D zero_row;
  for (int x = 0; x < 6; ++x) zero_row.set({x, 0}, kEmpty);
  CHECK(ribbon_trace(zero_row).ribbons.empty());

  // illegal window rejected
  CHECK_THROWS(ribbon_trace(grid({"H", "H", "H"})));
}

TEST_CASE("random windows are legal and varied") {
  Sft2D xh = xh_rules();
  std::set<std::string> distinct;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Pattern2D w = random_xh_window({0, 0, 9, 9}, seed);
    CHECK(validate_pattern(xh, w));
    distinct.insert(w.to_grid());
  }
  CHECK(distinct.size() >= 10);
  Sft2D xv = xv_rules();
  for (std::uint64_t seed = 1; seed <= 10; ++seed)
    CHECK(validate_pattern(xv, random_xv_window({0, 0, 9, 9}, seed)));
}

TEST_CASE("embed_homoclinic_xh") {
  Sft2D xh = xh_rules();

  auto check_embed = [&](const Pattern2D& w) {
    EmbedResult res = embed_homoclinic_xh(w, 256);
    CHECK(validate_pattern(xh, res.window));
    // the input is contained verbatim
    for (const auto& [c, ch] : w.cells()) CHECK(res.window.at(c) == ch);
    // the outer frame of thickness five equals the flat point
    Rect fr = res.window.bounding_box();
    for (std::int64_t y = fr.y0; y <= fr.y1; ++y)
      for (std::int64_t x = fr.x0; x <= fr.x1; ++x) {
        bool in_frame =
            x < fr.x0 + 5 || x > fr.x1 - 5 || y < fr.y0 + 5 || y > fr.y1 - 5;
        if (!in_frame) continue;
        char want = (((y % 4) + 4) % 4 == 0) ? kH : kEmpty;
        CHECK(res.window.at({x, y}) == want);
      }
    return res;
  };

  // single H at the origin
  Pattern2D single;
  single.set({0, 0}, kH);
  check_embed(single);

  // a flat window embeds into itself padded with the flat point
  check_embed(xh_flat_window({0, 0, 7, 7}));

  // a meander bump
  Pattern2D meander = grid({
      "0000000000",
      "00HHHH0000",
      "HHH00HHHHH",
      "0000000000",
      "0000000000",
  });
  check_embed(meander);

  // random legal windows
  for (std::uint64_t seed = 1; seed <= 8; ++seed)
    check_embed(random_xh_window({0, 0, 9, 9}, seed));

  // margin too small reports the requirement
  CHECK_THROWS_AS(embed_homoclinic_xh(single, 2), GrowthError);

  // illegal input rejected
  CHECK_THROWS_AS(embed_homoclinic_xh(grid({"H", "H", "H"}), 64),
                  std::invalid_argument);
}

TEST_CASE("crossing_map on flat configurations") {
  Rect r{-8, -8, 8, 8};
  Pattern2D xh = xh_flat_window(r);
  Pattern2D xv = xv_flat_window(r);
  auto cm = crossing_map(xh, xv);
  REQUIRE_FALSE(cm.empty());
  for (const auto& [idx, info] : cm) {
    auto [i, j] = idx;
    CHECK(info.site.x == 4 * j);
    CHECK(info.site.y == 4 * i);
    CHECK(info.cardinality == 1);
  }
  // injectivity of the site assignment
  std::set<std::pair<std::int64_t, std::int64_t>> sites;
  for (const auto& [idx, info] : cm) sites.insert({info.site.x, info.site.y});
  CHECK(sites.size() == cm.size());

  // empty overlap gives an empty map
  Pattern2D far_v = xv_flat_window({100, 100, 108, 108});
  CHECK(crossing_map(xh, far_v).empty());
}

TEST_CASE("crossing_map with a meandering vertical window") {
  // vertical ribbons meander; crossings may have two or three sites
  Rect r{-6, -6, 9, 9};
  Pattern2D xh = xh_flat_window(r);
  Pattern2D xv = random_xv_window(r, 11);
  auto cm = crossing_map(xh, xv);
  std::set<std::pair<std::int64_t, std::int64_t>> sites;
  for (const auto& [idx, info] : cm) {
    CHECK(info.cardinality >= 1);
    CHECK(info.cardinality <= 3);
    CHECK(xh.at(info.site) == kH);
    CHECK(xv.at(info.site) == kV);
    sites.insert({info.site.x, info.site.y});
  }
  CHECK(sites.size() == cm.size());
}

TEST_CASE("pattern grid serialization round trip") {
  Pattern2D p = xh_flat_window({-2, -1, 3, 4});
  Pattern2D q = Pattern2D::from_grid(p.to_grid());
  CHECK(p == q);
}
