#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "shiftlab/sft1d.hpp"
#include "shiftlab/word.hpp"

namespace shiftlab {

// Gap pattern for spacer insertion: every entry is 2, 3 or 4.
struct GapPattern {
  std::vector<int> gaps;
  explicit GapPattern(std::vector<int> g);
  std::size_t size() const { return gaps.size(); }
};

inline constexpr char kSpacer = '0';

// The forbidden list of the spacer image: {00000}, adjacent letters, letters
// one apart, and every forbidden base word spread by gaps in {2,3,4}.
std::vector<std::string> f_forbidden_list(const std::string& base_alphabet,
                                          const std::vector<std::string>& base_forbidden);

// The spacer image as an Sft1D over base_alphabet + '0'.
Sft1D spacer_image_sft(const Sft1D& base);

// Letters of v separated by the prescribed zero gaps; |g| must be |v| - 1.
Word induce_word(const Word& v, const GapPattern& g);

// The non-zero letters of w, in order; interior gaps must lie in {2,3,4} and
// edge runs of zeros must have length at most 4.
Word project_word(const Word& w);

// The gap-shift exchange pair: u framed by p and s with all gaps 3, and the
// same word with the first k gaps shrunk to 2 and the last k grown to 4.
// Positions inside u sit exactly k steps further left in the second word.
std::pair<Word, Word> gap_shift_pair(const Word& u, const Word& p,
                                     const Word& s, std::int64_t k);

// Finite-scale orbit separation: the sets of length-min(L, available)
// windows over all inducements of v and of v_prime are disjoint.
bool orbit_disjointness_check(const Word& v, const Word& v_prime, std::int64_t L);

// All length-L windows of inducements of extendable base words, any gap
// pattern and any alignment interior to the letter span. This is the
// brute-force side of the language equivalence for the spacer image.
std::set<std::string> induced_window_set(const Sft1D& base, std::int64_t L);

}  // namespace shiftlab
