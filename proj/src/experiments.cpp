#include "shiftlab/experiments.hpp"

#include <sstream>
#include <stdexcept>

#include "shiftlab/spacer1d.hpp"
#include "shiftlab/words.hpp"

namespace shiftlab {

std::vector<std::string> minimal_unbalanced_words(std::int64_t max_len) {
  std::vector<std::string> out;
  std::vector<std::string> frontier = {""};
  for (std::int64_t len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const auto& w : frontier)
      for (char ch : {'0', '1'}) {
        std::string cand = w + ch;
        // minimality: every proper subword balanced, so a candidate whose
        // strict prefix/suffix is already unbalanced is skipped
        bool minimal_parent = true;
        if (cand.size() > 1) {
          Word suffix(cand.substr(1));
          if (!is_k_balanced(suffix, 1)) minimal_parent = false;
        }
        if (!minimal_parent) continue;
        if (!is_k_balanced(Word(cand), 1))
          out.push_back(cand);
        else
          next.push_back(cand);
      }
    frontier = std::move(next);
  }
  return out;
}

Sft1D balanced_base_sft(std::int64_t max_len) {
  std::vector<std::string> forb;
  for (auto w : minimal_unbalanced_words(max_len)) {
    for (auto& ch : w) ch = ch == '0' ? 'a' : 'b';
    forb.push_back(std::move(w));
  }
  return Sft1D("ab", std::move(forb));
}

Sft1D chain_instance(const std::string& name) {
  if (name == "golden") return Sft1D("01", {"11"});
  if (name == "full") return Sft1D("01", {});
  if (name == "spacer-balanced")
    return spacer_image_sft(balanced_base_sft(4));
  throw std::invalid_argument("chain_instance: unknown instance '" + name + "'");
}

ChainDiameterResult experiment_chain_diameter(const ExperimentSpec& spec) {
  Sft1D sft = chain_instance(spec.instance);
  ChainDiameterResult res;
  std::ostringstream csv;
  csv << "# instance=" << spec.instance << " seed=" << spec.seed << "\n";
  csv << "n,words,components,diameter,radius\n";
  for (std::int64_t n = spec.n_min; n <= spec.n_max; ++n) {
    std::int64_t radius = spec.radius > 0 ? spec.radius : n + 2 * sft.type_t + 4;
    ChainGraph cg = chain_graph(sft, n, radius);
    if (!cg.connected() && spec.radius == 0) {
      // one retry at a wider annulus before reporting disconnection
      radius = radius * 3 / 2 + 2;
      cg = chain_graph(sft, n, radius);
    }
    ChainDiameterRow row;
    row.n = n;
    row.words = cg.nodes.size();
    row.components = cg.component_count();
    row.diameter = cg.diameter();
    row.radius = radius;
    res.all_connected = res.all_connected && cg.connected();
    csv << row.n << "," << row.words << "," << row.components << ","
        << row.diameter << "," << row.radius << "\n";
    res.rows.push_back(row);
  }
  res.csv = csv.str();
  return res;
}

SlopeMapResult experiment_slope_map(const ExperimentSpec& spec) {
  SlopeMapResult res;
  std::ostringstream csv;
  csv << "# instance=slope-map seed=" << spec.seed << "\n";
  csv << "slope,length,lo,hi\n";
  for (std::int64_t k = 0; k <= 10; ++k) {
    Slope alpha = make_slope_rational(k, 10);
    ExactReal prev_width = ExactReal::rational(2);
    for (std::int64_t len = 10; len <= 100; len += 10) {
      Word row = lower_char_window(alpha, 0, len - 1);
      std::int64_t m = ones_count(row);
      ExactReal lo = ExactReal::rational(m - 2, len);
      ExactReal hi = ExactReal::rational(m + 2, len);
      if (lo < ExactReal::rational(0)) lo = ExactReal::rational(0);
      if (hi > ExactReal::rational(1)) hi = ExactReal::rational(1);
      if (!(lo <= alpha && alpha <= hi)) res.all_contain_generator = false;
      ExactReal width = hi - lo;
      if (width > prev_width) res.widths_monotone = false;
      prev_width = width;
      csv << alpha.str() << "," << len << "," << lo.str() << "," << hi.str() << "\n";
    }
  }
  res.csv = csv.str();
  return res;
}

}  // namespace shiftlab
