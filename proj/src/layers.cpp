#include "shiftlab/layers.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "shiftlab/words.hpp"

namespace shiftlab {

namespace {

std::int64_t ones_in(const std::string& s) {
  return static_cast<std::int64_t>(std::count(s.begin(), s.end(), '1'));
}

// ones of the periodic tiling (pattern p, p[0] at index base) over [lo, hi]
std::int64_t periodic_ones(const std::string& p, std::int64_t base,
                           std::int64_t lo, std::int64_t hi) {
  if (lo > hi) return 0;
  std::int64_t L = static_cast<std::int64_t>(p.size());
  auto prefix = [&](std::int64_t n) {  // ones over [base, base + n)
    if (n <= 0) return std::int64_t{0};
    std::int64_t full = n / L, rest = n % L;
    std::int64_t c = full * ones_in(p);
    for (std::int64_t i = 0; i < rest; ++i) c += p[static_cast<std::size_t>(i)] == '1';
    return c;
  };
  // shift both ends so they sit at/above base, in whole periods
  std::int64_t shift = 0;
  if (lo < base) shift = ((base - lo) / L + 1) * L;
  return prefix(hi - base + 1 + shift) - prefix(lo - base + shift);
}

}  // namespace

SeqDesc SeqDesc::periodic(std::string period, std::int64_t phase) {
  if (period.empty()) throw std::invalid_argument("SeqDesc: empty period");
  return eventually_periodic(period, "", period, phase);
}

SeqDesc SeqDesc::eventually_periodic(std::string left, std::string center,
                                     std::string right, std::int64_t center_offset) {
  for (const std::string* s : {&left, &center, &right})
    for (char ch : *s)
      if (ch != '0' && ch != '1')
        throw std::invalid_argument("SeqDesc: letters must be 0 or 1");
  if (left.empty() || right.empty())
    throw std::invalid_argument("SeqDesc: periodic tails must be nonempty");
  SeqDesc d;
  d.kind_ = Kind::EventuallyPeriodic;
  d.left_ = std::move(left);
  d.center_ = std::move(center);
  d.right_ = std::move(right);
  d.offset_ = center_offset;
  return d;
}

SeqDesc SeqDesc::characteristic(bool upper, const Slope& alpha,
                                const ExactReal& intercept) {
  if (!in_unit_interval(alpha))
    throw std::domain_error("SeqDesc: slope outside [0,1]");
  SeqDesc d;
  d.kind_ = Kind::Characteristic;
  d.upper_ = upper;
  d.alpha_ = alpha;
  d.intercept_ = intercept;
  return d;
}

int SeqDesc::at(std::int64_t n) const {
  if (kind_ == Kind::Characteristic) {
    ExactReal lo = alpha_.times(n) + intercept_;
    ExactReal hi = alpha_.times(n + 1) + intercept_;
    return static_cast<int>(upper_ ? hi.ceil() - lo.ceil() : hi.floor() - lo.floor());
  }
  std::int64_t clen = static_cast<std::int64_t>(center_.size());
  if (n < offset_) {
    std::int64_t L = static_cast<std::int64_t>(left_.size());
    std::int64_t idx = ((n - offset_) % L + L) % L;
    return left_[static_cast<std::size_t>(idx)] == '1';
  }
  if (n < offset_ + clen)
    return center_[static_cast<std::size_t>(n - offset_)] == '1';
  std::int64_t R = static_cast<std::int64_t>(right_.size());
  std::int64_t idx = (n - offset_ - clen) % R;
  return right_[static_cast<std::size_t>(idx)] == '1';
}

std::int64_t SeqDesc::ones(std::int64_t lo, std::int64_t hi) const {
  if (lo > hi) return 0;
  if (kind_ == Kind::Characteristic) {
    ExactReal a = alpha_.times(lo) + intercept_;
    ExactReal b = alpha_.times(hi + 1) + intercept_;
    return upper_ ? b.ceil() - a.ceil() : b.floor() - a.floor();
  }
  std::int64_t clen = static_cast<std::int64_t>(center_.size());
  std::int64_t total = 0;
  // left tail
  if (lo < offset_)
    total += periodic_ones(left_, offset_, lo, std::min(hi, offset_ - 1));
  // center
  for (std::int64_t n = std::max(lo, offset_);
       n <= std::min(hi, offset_ + clen - 1); ++n)
    total += center_[static_cast<std::size_t>(n - offset_)] == '1';
  // right tail
  if (hi >= offset_ + clen)
    total += periodic_ones(right_, offset_ + clen, std::max(lo, offset_ + clen), hi);
  return total;
}

Word SeqDesc::window(std::int64_t lo, std::int64_t hi) const {
  std::string s;
  for (std::int64_t n = lo; n <= hi; ++n) s.push_back(at(n) ? '1' : '0');
  return Word(s, lo);
}

Slope SeqDesc::slope() const {
  if (kind_ == Kind::Characteristic) return alpha_;
  ExactReal sl = ExactReal::rational(ones_in(left_), static_cast<std::int64_t>(left_.size()));
  ExactReal sr = ExactReal::rational(ones_in(right_), static_cast<std::int64_t>(right_.size()));
  if (sl != sr)
    throw std::domain_error("SeqDesc: the two periodic tails have different slopes");
  return sl;
}

std::int64_t SeqDesc::test_radius() const {
  if (kind_ == Kind::Characteristic) {
    if (alpha_.is_rational()) return 2 * alpha_.den() + 64;
    return 256;
  }
  std::int64_t l = static_cast<std::int64_t>(left_.size());
  std::int64_t r = static_cast<std::int64_t>(right_.size());
  std::int64_t lcm = l / std::gcd(l, r) * r;
  return std::llabs(offset_) + static_cast<std::int64_t>(center_.size()) + 2 * lcm + 16;
}

bool SeqDesc::equals_shifted(const SeqDesc& other, std::int64_t m) const {
  std::int64_t R = test_radius() + other.test_radius() + std::llabs(m);
  for (std::int64_t n = -R; n <= R; ++n)
    if (at(n) != other.at(n + m)) return false;
  return true;
}

bool SeqDesc::is_periodic() const {
  if (kind_ == Kind::Characteristic) return alpha_.is_rational();
  std::int64_t l = static_cast<std::int64_t>(left_.size());
  std::int64_t r = static_cast<std::int64_t>(right_.size());
  std::int64_t lcm = l / std::gcd(l, r) * r;
  return equals_shifted(*this, lcm);
}

std::string SeqDesc::str() const {
  std::ostringstream os;
  if (kind_ == Kind::Characteristic) {
    os << (upper_ ? "upper" : "lower") << "(" << alpha_.str();
    os << ", " << intercept_.str() << ")";
  } else {
    os << "(" << left_ << ")^inf ";
    if (!center_.empty()) os << center_ << "@" << offset_ << " ";
    os << "(" << right_ << ")^inf";
  }
  return os.str();
}

char layer_letter(int first, int second, int third) {
  return static_cast<char>('0' + first + 2 * second + 4 * third);
}
int layer_first(char letter) { return (letter - '0') & 1; }
int layer_second(char letter) { return ((letter - '0') >> 1) & 1; }
int layer_third(char letter) { return ((letter - '0') >> 2) & 1; }

Sft2D x_rules() {
  std::vector<Pattern2D> forb;
  // vertical constancy of the first layer
  for (char a = '0'; a <= '7'; ++a)
    for (char b = '0'; b <= '7'; ++b)
      if (layer_first(a) != layer_first(b)) {
        Pattern2D p;
        p.set({0, 0}, a);
        p.set({0, 1}, b);
        forb.push_back(std::move(p));
      }
  // diagonal constancy of the second layer
  for (char a = '0'; a <= '7'; ++a)
    for (char b = '0'; b <= '7'; ++b)
      if (layer_second(a) != layer_second(b)) {
        Pattern2D p;
        p.set({0, 0}, a);
        p.set({1, 1}, b);
        forb.push_back(std::move(p));
      }
  // running-total recurrence of the third layer
  for (char a = '0'; a <= '7'; ++a)
    for (char b = '0'; b <= '7'; ++b) {
      int want = layer_third(a) + layer_second(b) - layer_first(b);
      if (layer_third(b) != want) {
        Pattern2D p;
        p.set({0, 0}, a);
        p.set({1, 0}, b);
        forb.push_back(std::move(p));
      }
    }
  return Sft2D("01234567", std::move(forb));
}

std::string LayeredPattern::to_grids() const {
  Rect r = cells_.bounding_box();
  std::ostringstream os;
  os << "@3 " << r.x0 << " " << r.y0 << " " << (r.empty() ? 0 : r.width()) << " "
     << (r.empty() ? 0 : r.height()) << "\n";
  for (int layer = 0; layer < 3; ++layer) {
    for (std::int64_t y = r.y1; y >= r.y0; --y) {
      for (std::int64_t x = r.x0; x <= r.x1; ++x) {
        auto v = cells_.get({x, y});
        if (!v) {
          os << '.';
        } else {
          int bit = layer == 0 ? layer_first(*v)
                               : (layer == 1 ? layer_second(*v) : layer_third(*v));
          os << bit;
        }
      }
      os << "\n";
    }
    if (layer < 2) os << "\n";
  }
  return os.str();
}

LayeredPattern LayeredPattern::from_grids(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header))
    throw std::invalid_argument("LayeredPattern: empty text");
  std::istringstream hs(header);
  std::string tag;
  std::int64_t x0, y0, w, h;
  if (!(hs >> tag >> x0 >> y0 >> w >> h) || tag != "@3")
    throw std::invalid_argument("LayeredPattern: bad header");
  std::vector<std::vector<std::string>> layers(3);
  for (int layer = 0; layer < 3; ++layer) {
    for (std::int64_t row = 0; row < h; ++row) {
      std::string line;
      if (!std::getline(in, line))
        throw std::invalid_argument("LayeredPattern: truncated grids");
      if (!line.empty() && line.back() == '\r') line.pop_back();
      layers[static_cast<std::size_t>(layer)].push_back(line);
    }
    if (layer < 2) {
      std::string blank;
      std::getline(in, blank);
    }
  }
  Pattern2D cells;
  for (std::int64_t row = 0; row < h; ++row)
    for (std::int64_t x = 0; x < w; ++x) {
      char f = layers[0][static_cast<std::size_t>(row)][static_cast<std::size_t>(x)];
      if (f == '.') continue;
      char s = layers[1][static_cast<std::size_t>(row)][static_cast<std::size_t>(x)];
      char t = layers[2][static_cast<std::size_t>(row)][static_cast<std::size_t>(x)];
      cells.set({x0 + x, y0 + h - 1 - row},
                layer_letter(f - '0', s - '0', t - '0'));
    }
  return LayeredPattern(std::move(cells));
}

namespace {

// Third-layer base value before the row correction: the running difference
// anchored at column zero. For negative columns the sums start at i+1 so the
// telescoping matches the recurrence.
std::int64_t third_raw(const SequencePair& pair, std::int64_t i, std::int64_t j) {
  if (i == 0) return 0;
  if (i > 0) return pair.b.ones(1 - j, i - j) - pair.a.ones(1, i);
  return -pair.b.ones(i + 1 - j, -j) + pair.a.ones(i + 1, 0);
}

}  // namespace

LayeredPattern build_point_window(const SequencePair& pair, const Rect& window,
                                  const std::map<std::int64_t, int>& free_rows,
                                  std::int64_t collar) {
  if (window.empty()) return LayeredPattern();
  std::int64_t C =
      std::max({collar, 2 * (window.width() + window.height()),
                pair.a.test_radius() + pair.b.test_radius()});
  // joint balance on the window plus collar
  Word wa = pair.a.window(window.x0 - C, window.x1 + C);
  Word wb = pair.b.window(window.x0 - window.y1 - C, window.x1 - window.y0 + C);
  if (!is_jointly_balanced(wa, wb))
    throw std::invalid_argument(
        "build_point_window: pair not jointly balanced on the window plus collar");

  Pattern2D cells;
  std::int64_t scan = C + std::max(std::llabs(window.x0), std::llabs(window.x1));
  for (std::int64_t j = window.y0; j <= window.y1; ++j) {
    bool fr = pair.a.equals_shifted(pair.b, -j);
    auto it = free_rows.find(j);
    if (it != free_rows.end() && !fr)
      throw std::invalid_argument("build_point_window: free row override on a forced row");
    int add = 0;
    if (!fr) {
      bool saw_minus = false, saw_plus = false;
      for (std::int64_t i = -scan; i <= scan; ++i) {
        std::int64_t t = third_raw(pair, i, j);
        if (t <= -1) saw_minus = true;
        if (t >= 1) saw_plus = true;
        if (t < -1 || t > 1)
          throw std::invalid_argument(
              "build_point_window: third layer escapes {-1,0,1}; pair not "
              "jointly balanced");
      }
      if (saw_minus && saw_plus)
        throw std::invalid_argument(
            "build_point_window: row holds both -1 and 1; pair not jointly "
            "balanced");
      if (saw_minus) add = 1;
    }
    for (std::int64_t i = window.x0; i <= window.x1; ++i) {
      int f = pair.a.at(i);
      int s = pair.b.at(i - j);
      std::int64_t t;
      if (fr) {
        t = it != free_rows.end() ? it->second : 0;
      } else {
        t = third_raw(pair, i, j) + add;
      }
      if (t < 0 || t > 1)
        throw std::logic_error("build_point_window: corrected third layer out of range");
      cells.set({i, j}, layer_letter(f, s, static_cast<int>(t)));
    }
  }
  LayeredPattern out(std::move(cells));
  static const Sft2D rules = x_rules();
  if (!validate_pattern(rules, out.pattern()))
    throw std::logic_error("build_point_window: output violates the layer rules");
  return out;
}

std::set<std::int64_t> row_freedom(const LayeredPattern& w) {
  std::set<std::int64_t> out;
  std::map<std::int64_t, bool> agree;
  for (const auto& [c, ch] : w.pattern().cells()) {
    auto it = agree.find(c.y);
    bool ok = layer_first(ch) == layer_second(ch);
    if (it == agree.end())
      agree[c.y] = ok;
    else
      it->second = it->second && ok;
  }
  for (const auto& [row, ok] : agree)
    if (ok) out.insert(row);
  return out;
}

bool verify_c1_forward(const LayeredPattern& w) {
  static const Sft2D rules = x_rules();
  if (!validate_pattern(rules, w.pattern()))
    throw std::invalid_argument("verify_c1_forward: pattern violates the layer rules");
  // group cells by row
  std::map<std::int64_t, std::vector<std::int64_t>> rows;
  for (const auto& [c, ch] : w.pattern().cells()) rows[c.y].push_back(c.x);
  for (auto& [y, xs] : rows) {
    std::sort(xs.begin(), xs.end());
    for (std::size_t s = 0; s < xs.size(); ++s) {
      if (s > 0 && xs[s] == xs[s - 1] + 1) continue;  // only segment starts
      std::int64_t start = xs[s];
      std::int64_t end = start;
      while (w.has({end + 1, y})) ++end;
      // every sub-segment beginning after the start (needs a left neighbor)
      for (std::int64_t i1 = start + 1; i1 <= end; ++i1) {
        std::int64_t running = w.third({i1 - 1, y});
        for (std::int64_t i2 = i1; i2 <= end; ++i2) {
          running += w.second({i2, y}) - w.first({i2, y});
          if (w.third({i2, y}) != running) return false;
        }
      }
    }
  }
  return true;
}

std::set<int> classify_pair(const SequencePair& pair) {
  Slope sa = pair.a.slope();
  Slope sb = pair.b.slope();
  if (sa != sb)
    throw std::invalid_argument("classify_pair: members have different slopes");
  std::int64_t W = pair.a.test_radius() + pair.b.test_radius() + 128;
  Word wa = pair.a.window(-W, W);
  Word wb = pair.b.window(-W, W);
  if (!is_jointly_balanced(wa, wb))
    throw std::invalid_argument("classify_pair: pair not jointly balanced");

  bool a1 = is_k_balanced(wa, 1);
  bool b1 = is_k_balanced(wb, 1);
  std::set<int> tags;
  if (a1 && b1) {
    tags.insert(sa.is_rational() ? 2 : 1);
    return tags;
  }
  // a characteristic-orbit membership test for the periodic partner
  auto in_char_orbit = [&](const SeqDesc& s) {
    if (!sa.is_rational()) return false;
    if (!s.is_periodic()) return false;
    SeqDesc lower = SeqDesc::characteristic(false, sa);
    for (std::int64_t m = 0; m < sa.den(); ++m)
      if (s.equals_shifted(lower, m)) return true;
    return false;
  };
  if (!a1) {
    Word ref = SeqDesc::characteristic(false, sa).window(-W, W);
    if (is_k_balanced(wa, 2) && is_jointly_balanced(wa, ref) &&
        in_char_orbit(pair.b))
      tags.insert(3);
  }
  if (!b1) {
    Word ref = SeqDesc::characteristic(false, sa).window(-W, W);
    if (is_k_balanced(wb, 2) && is_jointly_balanced(wb, ref) &&
        in_char_orbit(pair.a))
      tags.insert(4);
  }
  return tags;
}

namespace {

// position of the first occurrence of `w` in the lower characteristic
// sequence of `alpha`, searching symmetrically growing windows
std::int64_t find_occurrence(const Word& w, const Slope& alpha) {
  for (std::int64_t K = 256; K <= (1 << 22); K *= 4) {
    Word win = lower_char_window(alpha, -K, K + w.size());
    auto pos = win.letters().find(w.letters());
    if (pos != std::string::npos) return -K + static_cast<std::int64_t>(pos);
  }
  throw std::logic_error("find_occurrence: window not found in the Sturmian sequence");
}

}  // namespace

std::pair<Slope, LayeredPattern> sturmian_approx_window(
    const SequencePair& pair, const Rect& window,
    const std::map<std::int64_t, int>& free_rows) {
  Slope alpha = pair.a.slope();
  if (pair.b.slope() != alpha)
    throw std::invalid_argument("sturmian_approx_window: slopes differ");
  if (!alpha.is_rational())
    throw std::invalid_argument("sturmian_approx_window: slope must be rational");
  bool a_per = pair.a.is_periodic();
  bool b_per = pair.b.is_periodic();
  if (a_per && b_per)
    throw std::invalid_argument(
        "sturmian_approx_window: both members periodic; the pair is not in "
        "the approximable class");

  // shift detection: a == sigma^m b exactly
  std::optional<std::int64_t> shift;
  std::int64_t M = pair.a.test_radius() + pair.b.test_radius();
  for (std::int64_t m = -M; m <= M && !shift; ++m)
    if (pair.a.equals_shifted(pair.b, m)) shift = m;

  // choose N so every non-free row of the window has a first/second witness
  std::int64_t N = 8;
  std::int64_t bound = 4 * (pair.a.test_radius() + pair.b.test_radius() + 64);
  while (true) {
    bool all = true;
    for (std::int64_t j = window.y0; j <= window.y1 && all; ++j) {
      if (shift && j == -*shift) continue;
      bool witness = false;
      for (std::int64_t i = window.x0 - N; i <= window.x1 + N && !witness; ++i)
        if (pair.a.at(i) != pair.b.at(i - j)) witness = true;
      all = all && witness;
    }
    if (all) break;
    N *= 2;
    if (N > bound)
      throw std::logic_error("sturmian_approx_window: no row witnesses found");
  }

  std::int64_t JJ =
      std::max({std::llabs(window.y0), std::llabs(window.y1),
                shift ? std::llabs(*shift) : std::int64_t{0}}) + 1;
  Word u = pair.a.window(window.x0 - N, window.x1 + N);
  Word v = pair.b.window(window.x0 - N - JJ, window.x1 + N + JJ);

  auto joint = joint_slope_interval(u, v);
  if (!joint)
    throw ContradictionError(
        "sturmian_approx_window: empty joint slope interval for a jointly "
        "balanced pair");
  // an exact quadratic irrational strictly inside: lo + (hi-lo)/sqrt(2)
  ExactReal widthr = joint->hi - joint->lo;
  Slope alpha_irr =
      joint->lo + ExactReal::quadratic(0, widthr.num(), 2, 2 * widthr.den());
  if (!(joint->contains_strict(alpha_irr)) || alpha_irr.is_rational())
    throw std::logic_error("sturmian_approx_window: bad irrational choice");

  SeqDesc a_irr = SeqDesc::characteristic(false, alpha_irr);
  SeqDesc b_irr = a_irr;
  if (shift) {
    std::int64_t pos = find_occurrence(v, alpha_irr);
    std::int64_t delta_b = pos - v.lo();
    b_irr = SeqDesc::characteristic(false, alpha_irr, alpha_irr.times(delta_b));
    a_irr = SeqDesc::characteristic(false, alpha_irr,
                                    alpha_irr.times(delta_b + *shift));
  } else {
    std::int64_t pos_u = find_occurrence(u, alpha_irr);
    std::int64_t pos_v = find_occurrence(v, alpha_irr);
    a_irr = SeqDesc::characteristic(false, alpha_irr,
                                    alpha_irr.times(pos_u - u.lo()));
    b_irr = SeqDesc::characteristic(false, alpha_irr,
                                    alpha_irr.times(pos_v - v.lo()));
  }
  // the Sturmian data reproduces the windows exactly
  if (!(a_irr.window(u.lo(), u.hi()) == u) || !(b_irr.window(v.lo(), v.hi()) == v))
    throw std::logic_error("sturmian_approx_window: window reproduction failed");

  std::map<std::int64_t, int> approx_free;
  LayeredPattern input = build_point_window(pair, window, free_rows, N + JJ + 64);
  if (shift) {
    std::int64_t k_star = -*shift;
    if (k_star >= window.y0 && k_star <= window.y1) {
      auto it = free_rows.find(k_star);
      int val = it != free_rows.end() ? it->second : 0;
      approx_free[k_star] = val;
    }
  }
  LayeredPattern approx =
      build_point_window({a_irr, b_irr}, window, approx_free, N + JJ + 64);
  if (!(approx == input))
    throw ContradictionError(
        "sturmian_approx_window: approximating window differs from the input");
  return {alpha_irr, approx};
}

SlopeWindowEstimate slope_window_estimate(const LayeredPattern& w) {
  static const Sft2D rules = x_rules();
  if (!validate_pattern(rules, w.pattern()))
    throw std::invalid_argument("slope_window_estimate: pattern violates the rules");
  // longest horizontal segment
  std::map<std::int64_t, std::vector<std::int64_t>> rows;
  for (const auto& [c, ch] : w.pattern().cells()) rows[c.y].push_back(c.x);
  std::int64_t best_len = 0, best_y = 0, best_x = 0;
  for (auto& [y, xs] : rows) {
    std::sort(xs.begin(), xs.end());
    std::int64_t run = 1;
    for (std::size_t i = 1; i <= xs.size(); ++i) {
      if (i < xs.size() && xs[i] == xs[i - 1] + 1) {
        ++run;
      } else {
        if (run > best_len) {
          best_len = run;
          best_y = y;
          best_x = xs[i - 1] - run + 1;
        }
        run = 1;
      }
    }
  }
  if (best_len == 0)
    throw std::domain_error("slope_window_estimate: no row segment in shape");
  std::int64_t m = 0;
  for (std::int64_t x = best_x; x < best_x + best_len; ++x)
    m += w.first({x, best_y});
  auto clamp = [](ExactReal v) {
    if (v < ExactReal::rational(0)) return ExactReal::rational(0);
    if (v > ExactReal::rational(1)) return ExactReal::rational(1);
    return v;
  };
  return SlopeWindowEstimate{clamp(ExactReal::rational(m - 2, best_len)),
                             clamp(ExactReal::rational(m + 2, best_len)),
                             best_len, m};
}

}  // namespace shiftlab
