#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shiftlab/sft1d.hpp"

namespace shiftlab {

// Parameters of a reproducible experiment run; the seed is echoed into the
// output even when the experiment itself is deterministic.
struct ExperimentSpec {
  std::string instance;
  std::int64_t n_min = 1;
  std::int64_t n_max = 4;
  std::int64_t radius = 0;  // 0: schedule n + 2t + 4
  std::uint64_t seed = 0;
};

// Minimal binary words that are not 1-balanced (no proper subword is).
std::vector<std::string> minimal_unbalanced_words(std::int64_t max_len);

// SFT approximation of the balanced shift over letters a/b (for 0/1):
// forbidden words are the minimal unbalanced words up to max_len.
Sft1D balanced_base_sft(std::int64_t max_len);

// Named 1D instances for the chain-diameter experiment.
Sft1D chain_instance(const std::string& name);

struct ChainDiameterRow {
  std::int64_t n = 0;
  std::size_t words = 0;
  int components = 0;
  int diameter = 0;
  std::int64_t radius = 0;
};

struct ChainDiameterResult {
  std::vector<ChainDiameterRow> rows;
  bool all_connected = true;
  std::string csv;  // header plus one row per n, with a seed comment line
};

ChainDiameterResult experiment_chain_diameter(const ExperimentSpec& spec);

struct SlopeMapResult {
  bool all_contain_generator = true;
  bool widths_monotone = true;
  std::string csv;
};

// Slope estimates for characteristic rows over a slope grid; asserts that
// every interval traps its generator and widths shrink with the length.
SlopeMapResult experiment_slope_map(const ExperimentSpec& spec);

}  // namespace shiftlab
