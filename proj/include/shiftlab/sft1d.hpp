#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "shiftlab/word.hpp"

namespace shiftlab {

// One-dimensional shift of finite type: alphabet plus a finite forbidden
// word list. type_t is the largest forbidden-word length (at least 1).
struct Sft1D {
  std::string alphabet;                 // distinct letters
  std::vector<std::string> forbidden;   // nonempty words over the alphabet
  int type_t = 1;

  Sft1D(std::string alpha, std::vector<std::string> forb);

  static Sft1D full_shift(std::string alpha) { return Sft1D(std::move(alpha), {}); }

  // Loads the text format: first line alphabet letters, one forbidden word
  // per subsequent line.
  static Sft1D from_text(const std::string& text);
  std::string to_text() const;
};

// Nearest-neighbor recoding: vertices are legal words of length
// max(1, type_t - 1); edges are legal overlaps, labelled by the appended
// letter. `essential` marks vertices lying on biinfinite legal paths.
class TransferGraph {
 public:
  explicit TransferGraph(const Sft1D& sft);

  int vertex_len() const { return m_; }
  int size() const { return static_cast<int>(words_.size()); }
  const std::string& word_of(int v) const { return words_[static_cast<std::size_t>(v)]; }
  int index_of(const std::string& w) const;  // -1 when absent

  const std::vector<std::pair<int, char>>& out(int v) const {
    return out_[static_cast<std::size_t>(v)];
  }
  const std::vector<int>& in(int v) const { return in_[static_cast<std::size_t>(v)]; }
  bool essential(int v) const { return essential_[static_cast<std::size_t>(v)]; }
  int essential_count() const { return essential_count_; }

  // Restriction to essential vertices, as index lists.
  std::vector<int> essential_vertices() const;

  // Strongly connected components of the essential subgraph.
  std::vector<std::vector<int>> essential_sccs() const;

 private:
  int m_;
  std::vector<std::string> words_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<std::pair<int, char>>> out_;
  std::vector<std::vector<int>> in_;
  std::vector<bool> essential_;
  int essential_count_ = 0;
};

// The set of length-n words extendable to biinfinite legal points.
std::set<std::string> language(const Sft1D& sft, std::int64_t n);

bool is_empty_subshift(const Sft1D& sft);
bool is_irreducible(const Sft1D& sft);
bool is_mixing(const Sft1D& sft);

// log of the spectral radius of the essential transfer graph, power
// iteration to relative tolerance 1e-10.
double entropy(const Sft1D& sft);

// Witness for exchangeability: the two thickness-t collars of the box
// [-N, N] that admit both fillings.
struct ExchangeWitness {
  Word left;   // letters on [-N, -N+t-1]
  Word right;  // letters on [N-t+1, N]
};

// Searches for a boundary word delta with delta.w and delta.w' both
// extendable; w and w' must share shape [offset, offset+len) inside
// [-N+t, N-t]. Returns nullopt when no witness exists at this radius.
std::optional<ExchangeWitness> exchangeable(const Sft1D& sft, const Word& w,
                                            const Word& w_prime, std::int64_t N);

struct ChainGraph {
  std::int64_t n = 0;
  std::int64_t annulus_radius = 0;
  std::vector<std::string> nodes;                       // sorted
  std::vector<std::vector<int>> adjacency;              // indices into nodes
  std::map<std::pair<int, int>, ExchangeWitness> witnesses;

  int component_count() const;
  std::vector<int> component_of_node() const;
  // Diameter of each component (0 for singletons); disconnected graphs keep
  // per-component values.
  std::vector<int> component_diameters() const;
  bool connected() const { return component_count() <= 1; }
  int diameter() const;  // max over components

  std::string to_edge_list() const;
  std::string to_dot() const;
};

ChainGraph chain_graph(const Sft1D& sft, std::int64_t n, std::int64_t N);

// A periodic point containing w: one period plus the phase at which w
// occurs. letters(period) repeated biinfinitely, with period[0] at index
// `phase`.
struct PeriodicWitness {
  Word period;
  std::int64_t phase = 0;
  char at(std::int64_t index) const;
};

std::optional<PeriodicWitness> positive_frequency_witness(const Sft1D& sft,
                                                          const Word& w);

struct ZtcpeRow {
  std::int64_t n = 0;
  std::int64_t radius = 0;
  std::size_t words = 0;
  bool all_words_have_periodic_witness = false;
  bool chain_connected = false;
  std::vector<int> component_diameters;
};

struct ZtcpeReport {
  std::vector<ZtcpeRow> rows;
  bool pass = false;  // every row has witnesses and a connected chain graph
  std::string str() const;
};

// Checks, for each n <= n_max, the two finite-scale conditions: every word
// has a periodic witness and the chain graph at the given radius is
// connected.
ZtcpeReport ztcpe_report(const Sft1D& sft, std::int64_t n_max, std::int64_t N);

}  // namespace shiftlab
