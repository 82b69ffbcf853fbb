#include "shiftlab/words.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace shiftlab {

namespace {

void require_binary(const Word& w, const char* who) {
  if (!w.is_binary())
    throw std::invalid_argument(std::string(who) + ": word is not over {0,1}");
}

// prefix[i] = ones in the first i letters.
std::vector<std::int64_t> ones_prefix(const Word& w) {
  std::vector<std::int64_t> p(static_cast<std::size_t>(w.size()) + 1, 0);
  const std::string& s = w.letters();
  for (std::size_t i = 0; i < s.size(); ++i) p[i + 1] = p[i] + (s[i] == '1');
  return p;
}

// For each subword length n, the min and max 1-count over all subwords.
struct CountRange {
  std::vector<std::int64_t> min_ones;  // index n, 1-based
  std::vector<std::int64_t> max_ones;
};

CountRange count_ranges(const Word& w) {
  auto p = ones_prefix(w);
  std::int64_t len = w.size();
  CountRange r;
  r.min_ones.assign(static_cast<std::size_t>(len) + 1, 0);
  r.max_ones.assign(static_cast<std::size_t>(len) + 1, 0);
  for (std::int64_t n = 1; n <= len; ++n) {
    std::int64_t lo = len, hi = 0;
    for (std::int64_t i = 0; i + n <= len; ++i) {
      std::int64_t c = p[static_cast<std::size_t>(i + n)] -
                       p[static_cast<std::size_t>(i)];
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    r.min_ones[static_cast<std::size_t>(n)] = lo;
    r.max_ones[static_cast<std::size_t>(n)] = hi;
  }
  return r;
}

ExactReal clamp_unit(const ExactReal& x) {
  ExactReal zero = ExactReal::rational(0), one = ExactReal::rational(1);
  if (x < zero) return zero;
  if (x > one) return one;
  return x;
}

void require_slope(const Slope& alpha, const char* who) {
  if (!in_unit_interval(alpha))
    throw std::domain_error(std::string(who) + ": slope outside [0,1]");
}

std::pair<std::int64_t, std::int64_t> reduced_rational(const Slope& alpha,
                                                       const char* who) {
  if (!alpha.is_rational())
    throw std::invalid_argument(std::string(who) + ": slope must be rational");
  return {alpha.num(), alpha.den()};
}

}  // namespace

std::int64_t ones_count(const Word& w) {
  require_binary(w, "ones_count");
  return static_cast<std::int64_t>(
      std::count(w.letters().begin(), w.letters().end(), '1'));
}

bool is_k_balanced(const Word& w, std::int64_t k) {
  require_binary(w, "is_k_balanced");
  if (k < 1) throw std::invalid_argument("is_k_balanced: k must be positive");
  auto r = count_ranges(w);
  for (std::int64_t n = 1; n <= w.size(); ++n)
    if (r.max_ones[static_cast<std::size_t>(n)] -
            r.min_ones[static_cast<std::size_t>(n)] >
        k)
      return false;
  return true;
}

SlopeInterval slope_interval(const Word& w) {
  require_binary(w, "slope_interval");
  if (w.empty()) throw std::domain_error("slope_interval: empty word");
  auto r = count_ranges(w);
  ExactReal lo = ExactReal::rational(0), hi = ExactReal::rational(1);
  bool first = true;
  for (std::int64_t n = 1; n <= w.size(); ++n) {
    ExactReal cand_lo =
        ExactReal::rational(r.max_ones[static_cast<std::size_t>(n)] - 1, n);
    ExactReal cand_hi =
        ExactReal::rational(r.min_ones[static_cast<std::size_t>(n)] + 1, n);
    if (first) {
      lo = cand_lo;
      hi = cand_hi;
      first = false;
    } else {
      if (cand_lo > lo) lo = cand_lo;
      if (cand_hi < hi) hi = cand_hi;
    }
  }
  return SlopeInterval{clamp_unit(lo), clamp_unit(hi)};
}

namespace {

Word char_window(const Slope& alpha, std::int64_t lo, std::int64_t hi,
                 const ExactReal& intercept, bool upper) {
  require_slope(alpha, "char_window");
  if (lo > hi) return Word("", lo);
  std::string out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  auto value_at = [&](std::int64_t n) {
    ExactReal v = alpha.times(n) + intercept;
    return upper ? v.ceil() : v.floor();
  };
  std::int64_t prev = value_at(lo);
  for (std::int64_t n = lo; n <= hi; ++n) {
    std::int64_t next = value_at(n + 1);
    out.push_back(static_cast<char>('0' + (next - prev)));
    prev = next;
  }
  return Word(out, lo);
}

}  // namespace

Word lower_char_window(const Slope& alpha, std::int64_t lo, std::int64_t hi,
                       const ExactReal& intercept) {
  return char_window(alpha, lo, hi, intercept, /*upper=*/false);
}

Word upper_char_window(const Slope& alpha, std::int64_t lo, std::int64_t hi,
                       const ExactReal& intercept) {
  return char_window(alpha, lo, hi, intercept, /*upper=*/true);
}

std::int64_t char_shift_offset(const Slope& alpha) {
  auto [i, j] = reduced_rational(alpha, "char_shift_offset");
  if (j == 1) return 0;  // slopes 0 and 1: upper == lower already
  for (std::int64_t k = 1; k <= j; ++k)
    if ((k * i) % j == 1) return k;
  throw std::logic_error("char_shift_offset: no inverse found");  // unreachable
}

bool is_jointly_balanced(const Word& a, const Word& b) {
  require_binary(a, "is_jointly_balanced");
  require_binary(b, "is_jointly_balanced");
  if (a.empty() || b.empty())
    throw std::invalid_argument("is_jointly_balanced: empty word");
  auto ra = count_ranges(a);
  auto rb = count_ranges(b);
  std::int64_t n_max = std::min(a.size(), b.size());
  for (std::int64_t n = 1; n <= n_max; ++n) {
    auto idx = static_cast<std::size_t>(n);
    if (ra.max_ones[idx] - rb.min_ones[idx] > 1) return false;
    if (rb.max_ones[idx] - ra.min_ones[idx] > 1) return false;
  }
  return true;
}

std::optional<SlopeInterval> joint_slope_interval(const Word& u, const Word& v) {
  SlopeInterval iu = slope_interval(u);
  SlopeInterval iv = slope_interval(v);
  ExactReal lo = iu.lo > iv.lo ? iu.lo : iv.lo;
  ExactReal hi = iu.hi < iv.hi ? iu.hi : iv.hi;
  if (!(lo < hi)) return std::nullopt;
  return SlopeInterval{lo, hi};
}

Word periodize_jointly_balanced(const Word& t, const Slope& alpha) {
  require_binary(t, "periodize_jointly_balanced");
  auto [i, j] = reduced_rational(alpha, "periodize_jointly_balanced");
  if (t.empty() || t.size() % j != 0)
    throw std::invalid_argument(
        "periodize_jointly_balanced: |t| must be a positive multiple of the "
        "slope denominator");
  std::int64_t m = t.size() / j;

  // Window check against the characteristic sequence, three periods wide.
  Word ref = lower_char_window(alpha, 0, 3 * t.size() - 1);
  if (!is_jointly_balanced(t, ref))
    throw std::invalid_argument(
        "periodize_jointly_balanced: input not jointly balanced with the "
        "characteristic sequence");

  std::int64_t ones = ones_count(t);
  std::string fixed = t.letters();
  if (ones == m * i) {
    // already a period with the right weight
  } else if (ones == m * i - 1) {
    if (fixed.back() != '0')
      throw std::runtime_error(
          "periodize_jointly_balanced: word ends in 1 but needs one more 1; "
          "supply a window ending in 0");
    fixed.back() = '1';
  } else if (ones == m * i + 1) {
    if (fixed.back() != '1')
      throw std::runtime_error(
          "periodize_jointly_balanced: word ends in 0 but needs one less 1; "
          "supply a window ending in 1");
    fixed.back() = '0';
  } else {
    throw std::invalid_argument(
        "periodize_jointly_balanced: 1-count differs from m*i by more than 1");
  }

  // Certify: four concatenated periods still jointly balanced with the
  // characteristic sequence.
  std::string four;
  for (int r = 0; r < 4; ++r) four += fixed;
  Word big_ref = lower_char_window(alpha, 0, 3 * static_cast<std::int64_t>(four.size()) - 1);
  if (!is_jointly_balanced(Word(four), big_ref))
    throw std::runtime_error(
        "periodize_jointly_balanced: certification of the repaired period "
        "failed");
  return Word(fixed, t.offset());
}

bool splice_check(const Word& p, const Word& mid, const Word& q,
                  const Slope& alpha) {
  require_binary(p, "splice_check");
  require_binary(q, "splice_check");
  if (!mid.empty()) require_binary(mid, "splice_check");
  auto [i, j] = reduced_rational(alpha, "splice_check");
  if (p.size() != j || q.size() != j)
    throw std::invalid_argument("splice_check: |p| and |q| must equal the slope denominator");
  if (ones_count(p) != i || ones_count(q) != i)
    throw std::invalid_argument("splice_check: period words must carry i ones");

  std::string s;
  for (int r = 0; r < 3; ++r) s += p.letters();
  s += mid.letters();
  for (int r = 0; r < 3; ++r) s += q.letters();

  auto ranges = count_ranges(Word(s));
  for (std::int64_t n = 1; n <= static_cast<std::int64_t>(s.size()); ++n) {
    // |count - n*alpha| <= 1, exactly: |j*count - n*i| <= j.
    auto idx = static_cast<std::size_t>(n);
    if (std::llabs(j * ranges.min_ones[idx] - n * i) > j) return false;
    if (std::llabs(j * ranges.max_ones[idx] - n * i) > j) return false;
  }
  return true;
}

}  // namespace shiftlab
