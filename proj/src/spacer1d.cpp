#include "shiftlab/spacer1d.hpp"

#include <algorithm>
#include <stdexcept>

namespace shiftlab {

GapPattern::GapPattern(std::vector<int> g) : gaps(std::move(g)) {
  for (int x : gaps)
    if (x < 2 || x > 4)
      throw std::invalid_argument("GapPattern: gaps must be 2, 3 or 4");
}

std::vector<std::string> f_forbidden_list(
    const std::string& base_alphabet,
    const std::vector<std::string>& base_forbidden) {
  if (base_alphabet.find(kSpacer) != std::string::npos)
    throw std::invalid_argument("f_forbidden_list: base alphabet contains the spacer letter");
  std::vector<std::string> out;
  out.push_back("00000");
  for (char a : base_alphabet)
    for (char b : base_alphabet) out.push_back({a, b});
  for (char a : base_alphabet)
    for (char b : base_alphabet) out.push_back({a, kSpacer, b});
  for (const auto& w : base_forbidden) {
    if (w.empty()) throw std::invalid_argument("f_forbidden_list: empty forbidden word");
    // spread w by every gap pattern
    std::vector<std::string> partial = {std::string(1, w[0])};
    for (std::size_t i = 1; i < w.size(); ++i) {
      std::vector<std::string> next;
      for (const auto& s : partial)
        for (int gap = 2; gap <= 4; ++gap)
          next.push_back(s + std::string(static_cast<std::size_t>(gap), kSpacer) + w[i]);
      partial = std::move(next);
    }
    for (auto& s : partial) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Sft1D spacer_image_sft(const Sft1D& base) {
  return Sft1D(base.alphabet + kSpacer,
               f_forbidden_list(base.alphabet, base.forbidden));
}

Word induce_word(const Word& v, const GapPattern& g) {
  if (v.empty()) throw std::invalid_argument("induce_word: empty word");
  if (g.size() + 1 != static_cast<std::size_t>(v.size()))
    throw std::invalid_argument("induce_word: need one gap fewer than letters");
  if (v.letters().find(kSpacer) != std::string::npos)
    throw std::invalid_argument("induce_word: base word contains the spacer letter");
  std::string out(1, v.letters()[0]);
  for (std::size_t i = 1; i < v.letters().size(); ++i) {
    out += std::string(static_cast<std::size_t>(g.gaps[i - 1]), kSpacer);
    out += v.letters()[i];
  }
  return Word(out, v.offset());
}

Word project_word(const Word& w) {
  const std::string& s = w.letters();
  std::string out;
  std::int64_t run = 0;
  bool seen_letter = false;
  for (char ch : s) {
    if (ch == kSpacer) {
      ++run;
      if (run > 4) throw std::invalid_argument("project_word: zero run longer than 4");
    } else {
      if (seen_letter && (run < 2))
        throw std::invalid_argument("project_word: interior gap outside {2,3,4}");
      out.push_back(ch);
      seen_letter = true;
      run = 0;
    }
  }
  return Word(out, w.offset());
}

std::pair<Word, Word> gap_shift_pair(const Word& u, const Word& p,
                                     const Word& s, std::int64_t k) {
  if (p.size() != k || s.size() != k)
    throw std::invalid_argument("gap_shift_pair: |p| and |s| must equal k");
  if (k < 1) throw std::invalid_argument("gap_shift_pair: k must be positive");
  if (u.empty() || u.letters().front() == kSpacer || u.letters().back() == kSpacer)
    throw std::invalid_argument("gap_shift_pair: u must start and end with letters");
  if (p.letters().find(kSpacer) != std::string::npos ||
      s.letters().find(kSpacer) != std::string::npos)
    throw std::invalid_argument("gap_shift_pair: p and s must avoid the spacer letter");

  auto assemble = [&](int head_gap, int tail_gap) {
    std::string out;
    for (std::int64_t i = 0; i < k; ++i) {
      out.push_back(p.letters()[static_cast<std::size_t>(i)]);
      out += std::string(static_cast<std::size_t>(head_gap), kSpacer);
    }
    out += u.letters();
    for (std::int64_t i = 0; i < k; ++i) {
      out += std::string(static_cast<std::size_t>(tail_gap), kSpacer);
      out.push_back(s.letters()[static_cast<std::size_t>(i)]);
    }
    return out;
  };
  std::string base = assemble(3, 3);
  std::string shifted = assemble(2, 4);
  if (base.size() != shifted.size())
    throw std::logic_error("gap_shift_pair: length mismatch");
  return {Word(base, u.offset() - 4 * k), Word(shifted, u.offset() - 4 * k)};
}

namespace {

// Window set of all inducements of the single word v, width min(L, length).
std::set<std::string> capped_window_set(const Word& v, std::int64_t L) {
  std::set<std::string> out;
  std::size_t n = static_cast<std::size_t>(v.size());
  std::vector<int> gaps(n > 0 ? n - 1 : 0, 2);
  while (true) {
    Word ind = induce_word(v, GapPattern(gaps));
    std::int64_t width = std::min<std::int64_t>(L, ind.size());
    for (std::int64_t a = 0; a + width <= ind.size(); ++a)
      out.insert(ind.letters().substr(static_cast<std::size_t>(a),
                                      static_cast<std::size_t>(width)));
    // next gap pattern
    std::size_t i = 0;
    for (; i < gaps.size(); ++i) {
      if (gaps[i] < 4) {
        ++gaps[i];
        break;
      }
      gaps[i] = 2;
    }
    if (i == gaps.size()) break;
    if (gaps.empty()) break;
  }
  return out;
}

}  // namespace

bool orbit_disjointness_check(const Word& v, const Word& v_prime, std::int64_t L) {
  auto a = capped_window_set(v, L);
  auto b = capped_window_set(v_prime, L);
  for (const auto& w : a)
    if (b.count(w)) return false;
  return true;
}

std::set<std::string> induced_window_set(const Sft1D& base, std::int64_t L) {
  // Letters repeat at stride >= 3, so a window of length L sees at most
  // ceil((L+2)/3) letters; two extra letters cover alignments that begin or
  // end inside a boundary gap.
  std::int64_t max_letters = (L + 2) / 3 + 2;
  std::set<std::string> out;
  for (std::int64_t kk = 1; kk <= max_letters; ++kk) {
    auto lang = language(base, kk);
    for (const auto& vs : lang) {
      Word v(vs);
      std::size_t n = vs.size();
      std::vector<int> gaps(n > 1 ? n - 1 : 0, 2);
      while (true) {
        Word ind = induce_word(v, GapPattern(gaps));
        // windows fully inside the letter span
        for (std::int64_t a = 0; a + L <= ind.size(); ++a)
          out.insert(ind.letters().substr(static_cast<std::size_t>(a),
                                          static_cast<std::size_t>(L)));
        std::size_t i = 0;
        for (; i < gaps.size(); ++i) {
          if (gaps[i] < 4) {
            ++gaps[i];
            break;
          }
          gaps[i] = 2;
        }
        if (i == gaps.size()) break;
        if (gaps.empty()) break;
      }
    }
  }
  return out;
}

}  // namespace shiftlab
