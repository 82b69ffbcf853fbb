#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "shiftlab/spacer2d.hpp"

using namespace shiftlab;

namespace {

SpacerWindow flat_instance(const Rect& r,
                           const std::map<std::pair<int, int>, char>& t) {
  return superimpose(xh_flat_window(r), xv_flat_window(r), t);
}

}  // namespace

TEST_CASE("alphabet sizes") {
  CHECK(alphabet_b("a").size() == 5);
  CHECK(alphabet_b("ab").size() == 6);
  CHECK(alphabet_b("").size() == 4);
  CHECK_THROWS(alphabet_b("a0"));
}

TEST_CASE("superimpose on flat configurations") {
  Rect r{-8, -8, 8, 8};
  std::map<std::pair<int, int>, char> t{{{0, 0}, 'a'}, {{1, -1}, 'b'}};
  SpacerWindow w = flat_instance(r, t);
  CHECK(validate_spacer_window(w, "ab"));
  // letters land on the grid sites (4j, 4i)
  CHECK(w.base_layer().at({0, 0}) == 'a');
  CHECK(w.base_layer().at({-4, 4}) == 'b');
  CHECK(w.h_layer().at({0, 0}) == kH);
  CHECK(w.v_layer().at({0, 0}) == kV);

  // empty base: all third components zero
  SpacerWindow w0 = flat_instance(r, {});
  for (const auto& [c, ch] : w0.base_layer().cells()) CHECK(ch == '0');

  // letters at unmapped crossings are rejected
  CHECK_THROWS(flat_instance(r, {{{40, 40}, 'a'}}));
}

TEST_CASE("project inverts superimpose") {
  Rect r{-10, -10, 10, 10};
  std::map<std::pair<int, int>, char> t{
      {{0, 0}, 'a'}, {{-1, 1}, 'b'}, {{2, -2}, 'a'}, {{1, 1}, 'b'}};
  SpacerWindow w = flat_instance(r, t);
  SpacerProjection p = project_f2(w, "ab");
  CHECK(p.base == t);
  CHECK(p.xh_window == w.h_layer());
  CHECK(p.xv_window == w.v_layer());

  // meandering flag layers round trip too
  Pattern2D xh = random_xh_window(r, 19);
  Pattern2D xv = random_xv_window(r, 23);
  auto cm = crossing_map(xh, xv);
  REQUIRE_FALSE(cm.empty());
  std::map<std::pair<int, int>, char> letters;
  int k = 0;
  for (const auto& [idx, info] : cm)
    if (k++ % 2 == 0) letters[idx] = (k % 4) ? 'a' : 'b';
  SpacerWindow wm = superimpose(xh, xv, letters);
  CHECK(validate_spacer_window(wm, "ab"));
  SpacerProjection pm = project_f2(wm, "ab");
  CHECK(pm.base == letters);
}

TEST_CASE("letters at wrong sites are inconsistent") {
  Rect r{-8, -8, 8, 8};
  SpacerWindow w = flat_instance(r, {{{0, 0}, 'a'}});
  // move the letter off its crossing site
  Pattern2D bad_base = w.base_layer();
  bad_base.set({0, 0}, '0');
  bad_base.set({1, 0}, 'a');  // H cell of the ribbon, not a crossing
  CHECK_THROWS(SpacerWindow(w.h_layer(), w.v_layer(), bad_base));

  // a letter outside the base alphabet fails validation
  Pattern2D alien = w.base_layer();
  alien.set({0, 0}, 'z');
  SpacerWindow wz(w.h_layer(), w.v_layer(), alien);
  CHECK_FALSE(validate_spacer_window(wz, "ab"));

  // flag-layer violations fail validation
  Pattern2D bad_h = w.h_layer();
  bad_h.set({2, 2}, kH);
  CHECK_FALSE(validate_spacer_window(SpacerWindow(bad_h, w.v_layer(), w.base_layer()), "ab"));
}

TEST_CASE("meander_move shifts a ribbon and carries letters") {
  Rect r{-12, -12, 12, 12};
  std::map<std::pair<int, int>, char> t{{{0, 0}, 'a'}, {{0, 1}, 'b'}};
  SpacerWindow w = flat_instance(r, t);

  // shift the vertical ribbon at x = 4 (index 1) one unit left through a
  // central region
  MeanderMove mv{true, -1, Rect{2, -4, 6, 4}};
  SpacerWindow moved = meander_move(w, mv, "ab");
  CHECK(validate_spacer_window(moved, "ab"));
  // the carried letter sits one unit left of its old site
  CHECK(moved.base_layer().at({3, 0}) == 'b');
  CHECK(moved.base_layer().at({0, 0}) == 'a');  // untouched ribbon pair
  // projected base pattern unchanged
  CHECK(project_f2(moved, "ab").base == t);

  // gaps 3 became 2 and 4 around the moved stretch
  CHECK(moved.v_layer().at({3, 0}) == kV);
  CHECK(moved.v_layer().at({4, 0}) == kEmpty);

  // an empty region is the identity
  CHECK(meander_move(w, {true, 1, Rect{0, 0, -1, -1}}, "ab") == w);

  // vertical variant moves a horizontal ribbon
  MeanderMove mv2{false, 1, Rect{-4, 2, 4, 6}};
  SpacerWindow moved2 = meander_move(w, mv2, "ab");
  CHECK(validate_spacer_window(moved2, "ab"));
  CHECK(project_f2(moved2, "ab").base == t);

  // frame equality for every accepted move
  Rect box = w.bounding_box();
  for (const auto& [c, ch] : w.h_layer().cells()) {
    bool in_frame = c.x < box.x0 + 5 || c.x > box.x1 - 5 || c.y < box.y0 + 5 ||
                    c.y > box.y1 - 5;
    if (!in_frame) continue;
    CHECK(moved.h_layer().at(c) == ch);
    CHECK(moved.v_layer().at(c) == w.v_layer().at(c));
  }
}

TEST_CASE("meander_move rejections") {
  Rect r{-12, -12, 12, 12};
  SpacerWindow w = flat_instance(r, {{{0, 0}, 'a'}});

  // region touching the frame is rejected
  CHECK_THROWS_AS(meander_move(w, {true, 1, Rect{-12, -2, -6, 2}}, "a"), MoveRejected);

  // moving the same ribbon twice in sequence pushes a gap to 5
  MeanderMove mv{true, -1, Rect{2, -4, 6, 4}};
  SpacerWindow once = meander_move(w, mv, "a");
  CHECK_THROWS_AS(meander_move(once, mv, "a"), MoveRejected);
}

TEST_CASE("orbit separation at window scale") {
  Rect r{-10, -10, 10, 10};
  // distinct base patterns on the same crossing domain give distinct windows
  SpacerWindow w1 = flat_instance(r, {{{0, 0}, 'a'}});
  SpacerWindow w2 = flat_instance(r, {{{0, 0}, 'b'}});
  SpacerWindow w3 = flat_instance(r, {{{1, 0}, 'a'}});
  CHECK_FALSE(w1 == w2);
  CHECK_FALSE(w1 == w3);
  CHECK(w1.h_layer() == w2.h_layer());
  CHECK(w1.v_layer() == w2.v_layer());
  // projection is injective on consistent windows with fixed flags
  CHECK_FALSE(project_f2(w1, "ab").base == project_f2(w2, "ab").base);
}

TEST_CASE("consistency is a conjunction of local checks") {
  // global validity matches validity of every 15x15 subwindow on samples
  Rect r{0, 0, 17, 17};
  std::vector<SpacerWindow> samples;
  samples.push_back(flat_instance(r, {{{1, 1}, 'a'}}));
  {
    Pattern2D xh = random_xh_window(r, 5);
    Pattern2D xv = random_xv_window(r, 9);
    auto cm = crossing_map(xh, xv);
    std::map<std::pair<int, int>, char> letters;
    if (!cm.empty()) letters[cm.begin()->first] = 'a';
    samples.push_back(superimpose(xh, xv, letters));
  }
  // mutations: move a letter to a non-least crossing site when one exists,
  // or drop an H cell
  auto mutate = [](const SpacerWindow& w) {
    Pattern2D h = w.h_layer();
    for (const auto& [c, ch] : h.cells())
      if (ch == kH) {
        h.set(c, kEmpty);
        break;
      }
    return SpacerWindow(h, w.v_layer(), w.base_layer());
  };
  for (const auto& w : samples) {
    samples.push_back(mutate(w));
    if (samples.size() > 6) break;
  }
  for (const auto& w : samples) {
    bool global = validate_spacer_window(w, "ab");
    bool local = true;
    Rect box = w.bounding_box();
    for (std::int64_t y = box.y0; y + 14 <= box.y1 && local; ++y)
      for (std::int64_t x = box.x0; x + 14 <= box.x1 && local; ++x) {
        Rect sub{x, y, x + 14, y + 14};
        SpacerWindow sw(w.h_layer().restricted(sub), w.v_layer().restricted(sub),
                        w.base_layer().restricted(sub));
        if (!validate_spacer_window(sw, "ab")) local = false;
      }
    CHECK(global == local);
  }
}

TEST_CASE("spacer window grids round trip") {
  Rect r{-8, -8, 8, 8};
  SpacerWindow w = flat_instance(r, {{{0, 0}, 'a'}, {{-1, -1}, 'b'}});
  SpacerWindow back = SpacerWindow::from_grids(w.to_grids());
  CHECK(back == w);
}
