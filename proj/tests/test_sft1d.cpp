#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <string>

#include "shiftlab/sft1d.hpp"

using namespace shiftlab;

namespace {

// Oracle: enumerate all words of length n over the alphabet, keep those with
// no forbidden occurrence that extend to a long legal word on both sides.
std::set<std::string> oracle_language(const Sft1D& sft, int n, int pad) {
  auto occurs = [&](const std::string& s) {
    for (const auto& f : sft.forbidden)
      if (s.find(f) != std::string::npos) return true;
    return false;
  };
  // all legal words of length n + 2*pad, centers collected
  std::set<std::string> centers;
  std::string cur;
  auto rec = [&](auto&& self, int remaining) -> void {
    if (occurs(cur)) return;
    if (remaining == 0) {
      centers.insert(cur.substr(static_cast<std::size_t>(pad), static_cast<std::size_t>(n)));
      return;
    }
    for (char ch : sft.alphabet) {
      cur.push_back(ch);
      self(self, remaining - 1);
      cur.pop_back();
    }
  };
  rec(rec, n + 2 * pad);
  return centers;
}

}  // namespace

TEST_CASE("language enumeration") {
  Sft1D golden("01", {"11"});
  auto l3 = language(golden, 3);
  CHECK(l3 == std::set<std::string>{"000", "001", "010", "100", "101"});
  CHECK(l3 == oracle_language(golden, 3, 8));

  Sft1D empty("01", {"0", "1"});
  CHECK(language(empty, 2).empty());
  CHECK(is_empty_subshift(empty));

  Sft1D point("a", {});
  CHECK(language(point, 2) == std::set<std::string>{"aa"});

  // factorial closure: subwords of L_n members lie in L_{n-1}
  for (int n = 2; n <= 6; ++n) {
    auto ln = language(golden, n);
    auto lm = language(golden, n - 1);
    for (const auto& w : ln) {
      CHECK(lm.count(w.substr(0, static_cast<std::size_t>(n - 1))) == 1);
      CHECK(lm.count(w.substr(1)) == 1);
    }
  }

  // language with words longer than the pad-verified oracle window
  Sft1D two_step("ab", {"aba", "bb"});
  for (int n = 1; n <= 6; ++n)
    CHECK(language(two_step, n) == oracle_language(two_step, n, 10));

  // reducible example: "ba" forbidden leaves a^inf, b^inf and a->b crossover
  Sft1D red("ab", {"ba"});
  CHECK(language(red, 2) == std::set<std::string>{"aa", "ab", "bb"});
}

TEST_CASE("irreducibility and mixing") {
  CHECK_FALSE(is_irreducible(Sft1D("01", {"01", "10"})));
  CHECK(is_mixing(Sft1D("01", {"11"})));
  CHECK(is_mixing(Sft1D("01", {})));
  // two-cycle: irreducible but period 2, not mixing
  Sft1D alt("01", {"00", "11"});
  CHECK(is_irreducible(alt));
  CHECK_FALSE(is_mixing(alt));
  CHECK_THROWS(is_mixing(Sft1D("0", {"0"})));
}

TEST_CASE("entropy") {
  CHECK(entropy(Sft1D("01", {})) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(entropy(Sft1D("01", {"11"})) ==
        doctest::Approx(std::log((1.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-9));
  CHECK(entropy(Sft1D("01", {"01", "10"})) == 0.0);
  CHECK(entropy(Sft1D("abc", {})) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("entropy does not increase under letter-collapsing factors") {
  // full 3-shift maps onto the full 2-shift by merging two letters
  CHECK(entropy(Sft1D("ab", {})) <= entropy(Sft1D("abc", {})) + 1e-12);
  // golden mean recoded on 2-blocks (a conjugacy) keeps entropy
  // blocks: 00->a, 01->b, 10->c ; allowed transitions encode the overlap
  Sft1D blocks("abc", {"ba", "bb", "ac", "cc"});
  CHECK(entropy(blocks) == doctest::Approx(entropy(Sft1D("01", {"11"}))).epsilon(1e-9));
  // language counts dominate the factor's language counts
  auto src = language(Sft1D("abc", {}), 5);
  std::set<std::string> img;
  for (auto w : src) {
    for (auto& ch : w)
      if (ch == 'c') ch = 'b';
    img.insert(w);
  }
  CHECK(img.size() <= src.size());
  CHECK(img.size() == language(Sft1D("ab", {}), 5).size());
}

TEST_CASE("exchangeable basics") {
  Sft1D golden("01", {"11"});
  auto wit = exchangeable(golden, Word("0", 0), Word("1", 0), 3);
  REQUIRE(wit.has_value());
  // the all-zero annulus works and is what the search finds
  CHECK(wit->left.letters() == "00");
  CHECK(wit->right.letters() == "00");
  CHECK(wit->left.offset() == -3);
  CHECK(wit->right.offset() == 2);

  Sft1D frozen("01", {"01", "10"});
  CHECK_FALSE(exchangeable(frozen, Word("0", 0), Word("1", 0), 5).has_value());

  // reflexivity via any extension
  Sft1D full("ab", {});
  auto self_wit = exchangeable(full, Word("ab", 0), Word("ab", 0), 6);
  CHECK(self_wit.has_value());

  // words not in the language are rejected
  CHECK_THROWS(exchangeable(golden, Word("11", 0), Word("00", 0), 6));
  // symmetric
  auto ab = exchangeable(full, Word("aa", 0), Word("bb", 0), 6);
  auto ba = exchangeable(full, Word("bb", 0), Word("aa", 0), 6);
  CHECK(ab.has_value());
  CHECK(ba.has_value());
}

TEST_CASE("exchangeable witnesses are genuine: brute-force verification") {
  // For small SFTs verify against a direct enumeration: delta w and delta w'
  // must both extend to legal words on [-N-4, N+4].
  auto verify = [](const Sft1D& sft, const Word& w, const ExchangeWitness& wit,
                   std::int64_t N) {
    // brute force over all fillings of the free cells in [-N, N]
    std::int64_t len = 2 * N + 1;
    std::string cells(static_cast<std::size_t>(len), '?');
    auto put = [&](const Word& x) {
      for (std::int64_t i = x.lo(); i <= x.hi(); ++i)
        cells[static_cast<std::size_t>(i + N)] = x.at(i);
    };
    put(wit.left);
    put(wit.right);
    put(w);
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i] == '?') free.push_back(i);
    auto lang = language(sft, len);
    // try all assignments of free cells
    std::int64_t combos = 1;
    for (std::size_t i = 0; i < free.size(); ++i) combos *= static_cast<std::int64_t>(sft.alphabet.size());
    for (std::int64_t mask = 0; mask < combos; ++mask) {
      std::string cand = cells;
      std::int64_t v = mask;
      for (std::size_t f : free) {
        cand[f] = sft.alphabet[static_cast<std::size_t>(v % sft.alphabet.size())];
        v /= static_cast<std::int64_t>(sft.alphabet.size());
      }
      if (lang.count(cand)) return true;
    }
    return false;
  };

  Sft1D golden("01", {"11"});
  std::int64_t N = 4;
  for (const auto& a : language(golden, 2))
    for (const auto& b : language(golden, 2)) {
      auto wit = exchangeable(golden, Word(a, 0), Word(b, 0), N);
      REQUIRE(wit.has_value());
      CHECK(verify(golden, Word(a, 0), *wit, N));
      CHECK(verify(golden, Word(b, 0), *wit, N));
    }
}

TEST_CASE("exchangeability is monotone in the radius") {
  Sft1D golden("01", {"11"});
  Sft1D red("ab", {"ba"});
  for (const Sft1D& sft : {golden, red}) {
    auto l2 = language(sft, 2);
    for (const auto& a : l2)
      for (const auto& b : l2) {
        auto small = exchangeable(sft, Word(a, 0), Word(b, 0), 5);
        if (small)
          CHECK(exchangeable(sft, Word(a, 0), Word(b, 0), 8).has_value());
      }
  }
}

TEST_CASE("chain graphs") {
  Sft1D golden("01", {"11"});
  auto cg = chain_graph(golden, 2, 6);
  CHECK(cg.connected());
  CHECK(cg.diameter() == 1);  // all pairs share the all-zero annulus
  CHECK(cg.nodes.size() == 3);

  Sft1D frozen("01", {"01", "10"});
  auto cg2 = chain_graph(frozen, 1, 6);
  CHECK(cg2.component_count() == 2);
  CHECK_FALSE(cg2.connected());

  Sft1D full("01", {});
  auto cg3 = chain_graph(full, 3, 8);
  CHECK(cg3.connected());
  CHECK(cg3.diameter() == 1);
  CHECK(cg3.nodes.size() == 8);

  // mixing SFT: complete chain graphs for n <= 4 at a large enough radius
  for (int n = 1; n <= 4; ++n) {
    auto c = chain_graph(golden, n, n + 8);
    CHECK(c.connected());
    CHECK(c.diameter() == 1);
  }

  // witnesses stored per edge
  CHECK_FALSE(cg.witnesses.empty());
  // edge-list and DOT exports mention every node
  auto dot = cg3.to_dot();
  for (const auto& node : cg3.nodes) CHECK(dot.find(node) != std::string::npos);
}

TEST_CASE("periodic witnesses") {
  Sft1D golden("01", {"11"});
  auto wit = positive_frequency_witness(golden, Word("010", 0));
  REQUIRE(wit.has_value());
  // the periodic point is legal and contains w at its position
  Word w("010", 0);
  for (std::int64_t i = w.lo(); i <= w.hi(); ++i) CHECK(wit->at(i) == w.at(i));
  // legality of the periodic point on a long window
  std::string window;
  for (std::int64_t i = -30; i <= 30; ++i) window.push_back(wit->at(i));
  for (const auto& f : golden.forbidden)
    CHECK(window.find(f) == std::string::npos);

  Sft1D full("ab", {});
  auto wit2 = positive_frequency_witness(full, Word("ab", 0));
  REQUIRE(wit2.has_value());
  for (std::int64_t i = 0; i <= 1; ++i) CHECK(wit2->at(i) == Word("ab", 0).at(i));

  // transient word: "ab" in the reducible SFT with F={ba} lies on no cycle
  Sft1D red("ab", {"ba"});
  CHECK(language(red, 2).count("ab") == 1);
  CHECK_FALSE(positive_frequency_witness(red, Word("ab", 0)).has_value());

  CHECK_THROWS(positive_frequency_witness(golden, Word("11", 0)));
}

TEST_CASE("ztcpe condition reports") {
  auto rep = ztcpe_report(Sft1D("01", {"01", "10"}), 1, 6);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.rows[0].chain_connected);

  auto rep2 = ztcpe_report(Sft1D("01", {"11"}), 3, 8);
  CHECK(rep2.pass);
  for (const auto& row : rep2.rows) {
    CHECK(row.all_words_have_periodic_witness);
    CHECK(row.chain_connected);
    CHECK(row.component_diameters == std::vector<int>{1});
  }

  auto rep3 = ztcpe_report(Sft1D("01", {}), 2, 6);
  CHECK(rep3.pass);

  // reducible SFT fails the periodic-witness condition at n = 2
  auto rep4 = ztcpe_report(Sft1D("ab", {"ba"}), 2, 8);
  CHECK_FALSE(rep4.pass);
  CHECK_FALSE(rep4.rows[1].all_words_have_periodic_witness);
}

TEST_CASE("forbidden list text round trip") {
  Sft1D golden("01", {"11", "000"});
  auto text = golden.to_text();
  Sft1D back = Sft1D::from_text(text);
  CHECK(back.alphabet == golden.alphabet);
  CHECK(back.forbidden == golden.forbidden);
  CHECK(back.type_t == 3);
}
