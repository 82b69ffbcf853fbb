#include "shiftlab/sft1d.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace shiftlab {

namespace {

bool contains_forbidden(const std::string& s,
                        const std::vector<std::string>& forbidden) {
  for (const auto& f : forbidden)
    if (s.find(f) != std::string::npos) return true;
  return false;
}

// True when some forbidden word is a suffix of s; enough when s grew by one
// letter from an already-clean word.
bool forbidden_suffix(const std::string& s,
                      const std::vector<std::string>& forbidden) {
  for (const auto& f : forbidden) {
    if (f.size() > s.size()) continue;
    if (std::equal(f.rbegin(), f.rend(), s.rbegin())) return true;
  }
  return false;
}

}  // namespace

Sft1D::Sft1D(std::string alpha, std::vector<std::string> forb)
    : alphabet(std::move(alpha)), forbidden(std::move(forb)) {
  if (alphabet.empty()) throw std::invalid_argument("Sft1D: empty alphabet");
  std::string sorted = alphabet;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("Sft1D: repeated alphabet letter");
  type_t = 1;
  for (const auto& f : forbidden) {
    if (f.empty()) throw std::invalid_argument("Sft1D: empty forbidden word");
    for (char ch : f)
      if (alphabet.find(ch) == std::string::npos)
        throw std::invalid_argument("Sft1D: forbidden word uses a letter outside the alphabet");
    type_t = std::max(type_t, static_cast<int>(f.size()));
  }
}

Sft1D Sft1D::from_text(const std::string& text) {
  std::istringstream in(text);
  std::string alpha;
  if (!std::getline(in, alpha)) throw std::invalid_argument("Sft1D: empty description");
  std::vector<std::string> forb;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) forb.push_back(line);
  }
  return Sft1D(alpha, forb);
}

std::string Sft1D::to_text() const {
  std::string out = alphabet + "\n";
  for (const auto& f : forbidden) out += f + "\n";
  return out;
}

TransferGraph::TransferGraph(const Sft1D& sft) {
  m_ = std::max(1, sft.type_t - 1);
  // Grow locally legal words letter by letter.
  std::vector<std::string> cur = {""};
  for (int len = 1; len <= m_; ++len) {
    std::vector<std::string> next;
    for (const auto& w : cur)
      for (char ch : sft.alphabet) {
        std::string cand = w + ch;
        if (!forbidden_suffix(cand, sft.forbidden)) next.push_back(cand);
      }
    cur = std::move(next);
  }
  words_ = std::move(cur);
  std::sort(words_.begin(), words_.end());
  for (int i = 0; i < static_cast<int>(words_.size()); ++i)
    index_[words_[static_cast<std::size_t>(i)]] = i;

  out_.resize(words_.size());
  in_.resize(words_.size());
  for (int v = 0; v < size(); ++v) {
    const std::string& w = words_[static_cast<std::size_t>(v)];
    for (char ch : sft.alphabet) {
      std::string ext = w + ch;
      if (forbidden_suffix(ext, sft.forbidden)) continue;
      std::string succ = ext.substr(1);
      auto it = index_.find(succ);
      if (it == index_.end()) continue;
      out_[static_cast<std::size_t>(v)].push_back({it->second, ch});
      in_[static_cast<std::size_t>(it->second)].push_back(v);
    }
  }

  // Essential vertices: reachable from a cycle and able to reach a cycle.
  int n = size();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  {
    // iterative Tarjan
    std::vector<int> idx(static_cast<std::size_t>(n), -1),
        low(static_cast<std::size_t>(n), 0);
    std::vector<bool> onstack(static_cast<std::size_t>(n), false);
    std::vector<int> stack;
    int counter = 0, comps = 0;
    struct Frame { int v; std::size_t ei; };
    for (int s = 0; s < n; ++s) {
      if (idx[static_cast<std::size_t>(s)] != -1) continue;
      std::vector<Frame> call{{s, 0}};
      idx[static_cast<std::size_t>(s)] = low[static_cast<std::size_t>(s)] = counter++;
      stack.push_back(s);
      onstack[static_cast<std::size_t>(s)] = true;
      while (!call.empty()) {
        auto& fr = call.back();
        auto sv = static_cast<std::size_t>(fr.v);
        if (fr.ei < out_[sv].size()) {
          int to = out_[sv][fr.ei++].first;
          auto st = static_cast<std::size_t>(to);
          if (idx[st] == -1) {
            idx[st] = low[st] = counter++;
            stack.push_back(to);
            onstack[st] = true;
            call.push_back({to, 0});
          } else if (onstack[st]) {
            low[sv] = std::min(low[sv], idx[st]);
          }
        } else {
          if (low[sv] == idx[sv]) {
            while (true) {
              int x = stack.back();
              stack.pop_back();
              onstack[static_cast<std::size_t>(x)] = false;
              comp[static_cast<std::size_t>(x)] = comps;
              if (x == fr.v) break;
            }
            ++comps;
          }
          call.pop_back();
          if (!call.empty()) {
            auto pv = static_cast<std::size_t>(call.back().v);
            low[pv] = std::min(low[pv], low[sv]);
          }
        }
      }
    }
  }
  // cyclic vertices: in an SCC with at least one internal edge
  std::vector<bool> cyclic(static_cast<std::size_t>(n), false);
  for (int v = 0; v < n; ++v)
    for (auto [to, ch] : out_[static_cast<std::size_t>(v)])
      if (comp[static_cast<std::size_t>(v)] == comp[static_cast<std::size_t>(to)])
        cyclic[static_cast<std::size_t>(v)] = true;
  for (int v = 0; v < n; ++v)
    if (cyclic[static_cast<std::size_t>(v)])
      for (auto [to, ch] : out_[static_cast<std::size_t>(v)])
        if (comp[static_cast<std::size_t>(v)] == comp[static_cast<std::size_t>(to)])
          cyclic[static_cast<std::size_t>(to)] = true;

  auto reach = [&](bool forward) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::deque<int> q;
    for (int v = 0; v < n; ++v)
      if (cyclic[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        q.push_back(v);
      }
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      if (forward) {
        for (auto [to, ch] : out_[static_cast<std::size_t>(v)])
          if (!seen[static_cast<std::size_t>(to)]) {
            seen[static_cast<std::size_t>(to)] = true;
            q.push_back(to);
          }
      } else {
        for (int to : in_[static_cast<std::size_t>(v)])
          if (!seen[static_cast<std::size_t>(to)]) {
            seen[static_cast<std::size_t>(to)] = true;
            q.push_back(to);
          }
      }
    }
    return seen;
  };
  auto from_cycle = reach(true);
  auto to_cycle = reach(false);
  essential_.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    essential_[static_cast<std::size_t>(v)] =
        from_cycle[static_cast<std::size_t>(v)] && to_cycle[static_cast<std::size_t>(v)];
    if (essential_[static_cast<std::size_t>(v)]) ++essential_count_;
  }
}

int TransferGraph::index_of(const std::string& w) const {
  auto it = index_.find(w);
  return it == index_.end() ? -1 : it->second;
}

std::vector<int> TransferGraph::essential_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < size(); ++v)
    if (essential_[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

std::vector<std::vector<int>> TransferGraph::essential_sccs() const {
  // Kosaraju on the essential subgraph; sizes here are small.
  std::vector<int> order;
  std::vector<bool> seen(static_cast<std::size_t>(size()), false);
  for (int s = 0; s < size(); ++s) {
    if (!essential(s) || seen[static_cast<std::size_t>(s)]) continue;
    std::vector<std::pair<int, std::size_t>> st{{s, 0}};
    seen[static_cast<std::size_t>(s)] = true;
    while (!st.empty()) {
      auto& [v, ei] = st.back();
      if (ei < out(v).size()) {
        int to = out(v)[ei++].first;
        if (essential(to) && !seen[static_cast<std::size_t>(to)]) {
          seen[static_cast<std::size_t>(to)] = true;
          st.push_back({to, 0});
        }
      } else {
        order.push_back(v);
        st.pop_back();
      }
    }
  }
  std::vector<std::vector<int>> sccs;
  std::vector<bool> used(static_cast<std::size_t>(size()), false);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (used[static_cast<std::size_t>(*it)]) continue;
    sccs.emplace_back();
    std::deque<int> q{*it};
    used[static_cast<std::size_t>(*it)] = true;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      sccs.back().push_back(v);
      for (int to : in(v))
        if (essential(to) && !used[static_cast<std::size_t>(to)]) {
          used[static_cast<std::size_t>(to)] = true;
          q.push_back(to);
        }
    }
  }
  return sccs;
}

bool is_empty_subshift(const Sft1D& sft) {
  return TransferGraph(sft).essential_count() == 0;
}

std::set<std::string> language(const Sft1D& sft, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("language: n must be positive");
  TransferGraph g(sft);
  int m = g.vertex_len();
  std::vector<std::string> cur;
  for (int v = 0; v < g.size(); ++v)
    if (g.essential(v)) cur.push_back(g.word_of(v));
  if (cur.empty()) return {};
  if (n <= m) {
    std::set<std::string> out;
    for (const auto& w : cur)
      for (std::int64_t i = 0; i + n <= m; ++i)
        out.insert(w.substr(static_cast<std::size_t>(i), static_cast<std::size_t>(n)));
    return out;
  }
  for (std::int64_t len = m; len < n; ++len) {
    std::vector<std::string> next;
    for (const auto& w : cur) {
      int v = g.index_of(w.substr(w.size() - static_cast<std::size_t>(m)));
      for (auto [to, ch] : g.out(v))
        if (g.essential(to)) next.push_back(w + ch);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    cur = std::move(next);
  }
  return std::set<std::string>(cur.begin(), cur.end());
}

bool is_irreducible(const Sft1D& sft) {
  TransferGraph g(sft);
  if (g.essential_count() == 0)
    throw std::domain_error("is_irreducible: empty subshift");
  return g.essential_sccs().size() == 1;
}

bool is_mixing(const Sft1D& sft) {
  TransferGraph g(sft);
  if (g.essential_count() == 0) throw std::domain_error("is_mixing: empty subshift");
  auto sccs = g.essential_sccs();
  if (sccs.size() != 1) return false;
  // gcd of cycle lengths: BFS levels, gcd of level[u]+1-level[v] over edges
  const auto& scc = sccs[0];
  std::vector<int> level(static_cast<std::size_t>(g.size()), -1);
  std::deque<int> q{scc[0]};
  level[static_cast<std::size_t>(scc[0])] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (auto [to, ch] : g.out(v))
      if (g.essential(to) && level[static_cast<std::size_t>(to)] == -1) {
        level[static_cast<std::size_t>(to)] = level[static_cast<std::size_t>(v)] + 1;
        q.push_back(to);
      }
  }
  std::int64_t period = 0;
  for (int v : scc)
    for (auto [to, ch] : g.out(v))
      if (g.essential(to))
        period = std::gcd(period,
                          static_cast<std::int64_t>(level[static_cast<std::size_t>(v)]) + 1 -
                              level[static_cast<std::size_t>(to)]);
  return period == 1;
}

double entropy(const Sft1D& sft) {
  TransferGraph g(sft);
  auto ess = g.essential_vertices();
  if (ess.empty()) throw std::domain_error("entropy: empty subshift");
  std::vector<int> pos(static_cast<std::size_t>(g.size()), -1);
  for (int i = 0; i < static_cast<int>(ess.size()); ++i)
    pos[static_cast<std::size_t>(ess[static_cast<std::size_t>(i)])] = i;
  std::size_t n = ess.size();
  // Power iteration on A + I; the +I shift makes periodic graphs converge.
  std::vector<double> v(n, 1.0), w(n, 0.0);
  double lambda = 0.0;
  for (int iter = 0; iter < 200000; ++iter) {
    std::fill(w.begin(), w.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double x = v[i];
      w[i] += x;  // identity part
      for (auto [to, ch] : g.out(ess[i])) {
        int j = pos[static_cast<std::size_t>(to)];
        if (j >= 0) w[static_cast<std::size_t>(j)] += x;
      }
    }
    double norm = 0.0;
    for (double x : w) norm += x;
    double next = norm / std::accumulate(v.begin(), v.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
    if (iter > 3 && std::abs(next - lambda) <= 1e-12 * std::max(1.0, std::abs(next))) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::log(lambda - 1.0);
}

namespace {

using Bits = std::vector<std::uint64_t>;

struct BitMatrix {
  std::size_t words_per_row = 0;
  std::vector<Bits> rows;  // per graph vertex: bitset over targets
};

// rows[y] = set of targets v such that y reaches v in exactly `steps` steps
// inside the essential subgraph.
BitMatrix exact_backward_reach(const TransferGraph& g,
                               const std::vector<int>& targets,
                               std::int64_t steps) {
  std::size_t T = targets.size();
  std::size_t wpr = (T + 63) / 64;
  BitMatrix cur;
  cur.words_per_row = wpr;
  cur.rows.assign(static_cast<std::size_t>(g.size()), Bits(wpr, 0));
  for (std::size_t t = 0; t < T; ++t)
    cur.rows[static_cast<std::size_t>(targets[t])][t / 64] |= 1ULL << (t % 64);
  for (std::int64_t k = 0; k < steps; ++k) {
    BitMatrix next;
    next.words_per_row = wpr;
    next.rows.assign(static_cast<std::size_t>(g.size()), Bits(wpr, 0));
    for (int y = 0; y < g.size(); ++y) {
      if (!g.essential(y)) continue;
      auto& row = next.rows[static_cast<std::size_t>(y)];
      for (auto [x, ch] : g.out(y)) {
        if (!g.essential(x)) continue;
        const auto& src = cur.rows[static_cast<std::size_t>(x)];
        for (std::size_t i = 0; i < wpr; ++i) row[i] |= src[i];
      }
    }
    cur = std::move(next);
  }
  return cur;
}

// rows[z] = set of targets v such that v reaches z in exactly `steps` steps.
BitMatrix exact_forward_reach(const TransferGraph& g,
                              const std::vector<int>& targets,
                              std::int64_t steps) {
  std::size_t T = targets.size();
  std::size_t wpr = (T + 63) / 64;
  BitMatrix cur;
  cur.words_per_row = wpr;
  cur.rows.assign(static_cast<std::size_t>(g.size()), Bits(wpr, 0));
  for (std::size_t t = 0; t < T; ++t)
    cur.rows[static_cast<std::size_t>(targets[t])][t / 64] |= 1ULL << (t % 64);
  for (std::int64_t k = 0; k < steps; ++k) {
    BitMatrix next;
    next.words_per_row = wpr;
    next.rows.assign(static_cast<std::size_t>(g.size()), Bits(wpr, 0));
    for (int x = 0; x < g.size(); ++x) {
      if (!g.essential(x)) continue;
      const auto& src = cur.rows[static_cast<std::size_t>(x)];
      for (auto [z, ch] : g.out(x)) {
        if (!g.essential(z)) continue;
        auto& row = next.rows[static_cast<std::size_t>(z)];
        for (std::size_t i = 0; i < wpr; ++i) row[i] |= src[i];
      }
    }
    cur = std::move(next);
  }
  return cur;
}

// Mid anchors of a word placed at S: pairs (entry vertex, exit vertex).
// For |w| >= m there is at most one rigid pair; otherwise one per essential
// vertex beginning with w.
std::vector<std::pair<int, int>> mid_anchors(const TransferGraph& g,
                                             const Sft1D& sft, const Word& w) {
  int m = g.vertex_len();
  std::vector<std::pair<int, int>> out;
  const std::string& s = w.letters();
  if (static_cast<int>(s.size()) >= m) {
    if (contains_forbidden(s, sft.forbidden)) return out;
    int v = g.index_of(s.substr(0, static_cast<std::size_t>(m)));
    if (v < 0 || !g.essential(v)) return out;
    int cur = v;
    for (std::size_t i = static_cast<std::size_t>(m); i < s.size(); ++i) {
      int nxt = -1;
      for (auto [to, ch] : g.out(cur))
        if (ch == s[i] && g.essential(to)) nxt = to;
      if (nxt < 0) return out;
      cur = nxt;
    }
    out.push_back({v, cur});
  } else {
    for (int v = 0; v < g.size(); ++v) {
      if (!g.essential(v)) continue;
      if (g.word_of(v).compare(0, s.size(), s) == 0) out.push_back({v, v});
    }
  }
  return out;
}

bool bits_intersect(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return true;
  return false;
}

int first_bit(const Bits& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) return static_cast<int>(i * 64 + static_cast<std::size_t>(std::countr_zero(a[i])));
  return -1;
}

// Builds the two collar words of an exchange witness from the shared collar
// vertices u (left) and z (right).
ExchangeWitness make_witness(const TransferGraph& g, int u_pick, int z_pick,
                             std::int64_t t, std::int64_t N) {
  int m = g.vertex_len();
  std::string left = g.word_of(u_pick);
  int cur = u_pick;
  for (std::int64_t k = 0; k < t - m; ++k) {
    int prev = -1;
    for (int p : g.in(cur))
      if (g.essential(p)) { prev = p; break; }
    if (prev < 0) throw std::logic_error("exchange witness: dead essential vertex");
    left.insert(left.begin(), g.word_of(prev)[0]);
    cur = prev;
  }
  std::string right = g.word_of(z_pick);
  cur = z_pick;
  for (std::int64_t k = 0; k < t - m; ++k) {
    int nxt = -1;
    char letter = 0;
    for (auto [to, ch] : g.out(cur))
      if (g.essential(to)) { nxt = to; letter = ch; break; }
    if (nxt < 0) throw std::logic_error("exchange witness: dead essential vertex");
    right.push_back(letter);
    cur = nxt;
  }
  return ExchangeWitness{Word(left.substr(left.size() - static_cast<std::size_t>(t)), -N),
                         Word(right.substr(0, static_cast<std::size_t>(t)), N - t + 1)};
}

}  // namespace

std::optional<ExchangeWitness> exchangeable(const Sft1D& sft, const Word& w,
                                            const Word& w_prime, std::int64_t N) {
  if (w.size() != w_prime.size() || w.offset() != w_prime.offset())
    throw std::invalid_argument("exchangeable: words must share their shape");
  if (w.empty()) throw std::invalid_argument("exchangeable: empty word");
  std::int64_t t = sft.type_t;
  std::int64_t s0 = w.lo(), s1 = w.hi();
  if (s0 < -N + t || s1 > N - t)
    throw std::invalid_argument("exchangeable: shape must lie in [-N+t, N-t]");

  TransferGraph g(sft);
  int m = g.vertex_len();
  auto mids_w = mid_anchors(g, sft, w);
  auto mids_wp = mid_anchors(g, sft, w_prime);
  if (mids_w.empty())
    throw std::invalid_argument("exchangeable: w is not in the language");
  if (mids_wp.empty())
    throw std::invalid_argument("exchangeable: w' is not in the language");

  std::int64_t pL = -N + t - m;  // vertex covering the collar's last m letters
  std::int64_t pR = N - t + 1;   // vertex covering the collar's first m letters
  std::int64_t entry_pos = s0;
  std::int64_t exit_pos = (w.size() >= m) ? s1 - m + 1 : s0;
  std::int64_t g1 = entry_pos - pL;
  std::int64_t g2 = pR - exit_pos;
  if (g1 < 0 || g2 < 0)
    throw std::invalid_argument("exchangeable: radius too small for this shape");

  std::vector<int> entry_targets, exit_targets;
  for (auto [a, b] : mids_w) { entry_targets.push_back(a); exit_targets.push_back(b); }
  for (auto [a, b] : mids_wp) { entry_targets.push_back(a); exit_targets.push_back(b); }

  BitMatrix back = exact_backward_reach(g, entry_targets, g1);
  BitMatrix fwd = exact_forward_reach(g, exit_targets, g2);

  // Collect, per anchor, the u-set and z-set.
  std::size_t vb = static_cast<std::size_t>((g.size() + 63) / 64);
  auto collect = [&](const BitMatrix& mat, std::size_t anchor) {
    Bits out(vb, 0);
    for (int y = 0; y < g.size(); ++y)
      if (mat.rows[static_cast<std::size_t>(y)][anchor / 64] & (1ULL << (anchor % 64)))
        out[static_cast<std::size_t>(y) / 64] |= 1ULL << (y % 64);
    return out;
  };

  for (std::size_t i = 0; i < mids_w.size(); ++i) {
    Bits ui = collect(back, i), zi = collect(fwd, i);
    for (std::size_t j = 0; j < mids_wp.size(); ++j) {
      std::size_t aj = mids_w.size() + j;
      Bits uj = collect(back, aj), zj = collect(fwd, aj);
      Bits uu(ui.size()), zz(zi.size());
      for (std::size_t k = 0; k < ui.size(); ++k) uu[k] = ui[k] & uj[k];
      for (std::size_t k = 0; k < zi.size(); ++k) zz[k] = zi[k] & zj[k];
      int u_pick = first_bit(uu), z_pick = first_bit(zz);
      if (u_pick < 0 || z_pick < 0) continue;
      return make_witness(g, u_pick, z_pick, t, N);
    }
  }
  return std::nullopt;
}

ChainGraph chain_graph(const Sft1D& sft, std::int64_t n, std::int64_t N) {
  if (n < 1) throw std::invalid_argument("chain_graph: n must be positive");
  if (N <= n + sft.type_t)
    throw std::invalid_argument("chain_graph: need N > n + t");
  ChainGraph cg;
  cg.n = n;
  cg.annulus_radius = N;
  auto lang = language(sft, n);
  cg.nodes.assign(lang.begin(), lang.end());
  cg.adjacency.assign(cg.nodes.size(), {});
  if (cg.nodes.empty()) return cg;

  TransferGraph g(sft);
  int m = g.vertex_len();
  std::int64_t t = sft.type_t;
  std::int64_t s0 = 0, s1 = n - 1;  // words placed at [0, n-1]
  std::int64_t pL = -N + t - m;
  std::int64_t pR = N - t + 1;
  std::int64_t entry_pos = s0;
  std::int64_t exit_pos = (n >= m) ? s1 - m + 1 : s0;
  std::int64_t g1 = entry_pos - pL;
  std::int64_t g2 = pR - exit_pos;

  // Anchors for every node, then shared exact-length reach DPs.
  std::vector<std::vector<std::pair<int, int>>> anchors(cg.nodes.size());
  std::vector<int> entry_targets, exit_targets;
  std::vector<std::vector<std::size_t>> anchor_ids(cg.nodes.size());
  for (std::size_t i = 0; i < cg.nodes.size(); ++i) {
    anchors[i] = mid_anchors(g, sft, Word(cg.nodes[i], s0));
    for (auto [a, b] : anchors[i]) {
      anchor_ids[i].push_back(entry_targets.size());
      entry_targets.push_back(a);
      exit_targets.push_back(b);
    }
  }
  BitMatrix back = exact_backward_reach(g, entry_targets, g1);
  BitMatrix fwd = exact_forward_reach(g, exit_targets, g2);

  std::size_t vb = static_cast<std::size_t>((g.size() + 63) / 64);
  auto collect = [&](const BitMatrix& mat, std::size_t anchor) {
    Bits out(vb, 0);
    for (int y = 0; y < g.size(); ++y)
      if (mat.rows[static_cast<std::size_t>(y)][anchor / 64] & (1ULL << (anchor % 64)))
        out[static_cast<std::size_t>(y) / 64] |= 1ULL << (y % 64);
    return out;
  };
  std::vector<std::vector<Bits>> usets(cg.nodes.size()), zsets(cg.nodes.size());
  for (std::size_t i = 0; i < cg.nodes.size(); ++i)
    for (std::size_t a : anchor_ids[i]) {
      usets[i].push_back(collect(back, a));
      zsets[i].push_back(collect(fwd, a));
    }

  for (std::size_t i = 0; i < cg.nodes.size(); ++i)
    for (std::size_t j = i + 1; j < cg.nodes.size(); ++j) {
      int u_pick = -1, z_pick = -1;
      for (std::size_t ai = 0; ai < usets[i].size() && u_pick < 0; ++ai)
        for (std::size_t aj = 0; aj < usets[j].size() && u_pick < 0; ++aj)
          if (bits_intersect(usets[i][ai], usets[j][aj]) &&
              bits_intersect(zsets[i][ai], zsets[j][aj])) {
            Bits uu(vb), zz(vb);
            for (std::size_t k = 0; k < vb; ++k) {
              uu[k] = usets[i][ai][k] & usets[j][aj][k];
              zz[k] = zsets[i][ai][k] & zsets[j][aj][k];
            }
            u_pick = first_bit(uu);
            z_pick = first_bit(zz);
          }
      if (u_pick >= 0) {
        cg.adjacency[i].push_back(static_cast<int>(j));
        cg.adjacency[j].push_back(static_cast<int>(i));
        cg.witnesses[{static_cast<int>(i), static_cast<int>(j)}] =
            make_witness(g, u_pick, z_pick, t, N);
      }
    }
  return cg;
}

int ChainGraph::component_count() const {
  auto comp = component_of_node();
  int mx = -1;
  for (int c : comp) mx = std::max(mx, c);
  return mx + 1;
}

std::vector<int> ChainGraph::component_of_node() const {
  std::vector<int> comp(nodes.size(), -1);
  int c = 0;
  for (std::size_t s = 0; s < nodes.size(); ++s) {
    if (comp[s] != -1) continue;
    std::deque<std::size_t> q{s};
    comp[s] = c;
    while (!q.empty()) {
      auto v = q.front();
      q.pop_front();
      for (int to : adjacency[v])
        if (comp[static_cast<std::size_t>(to)] == -1) {
          comp[static_cast<std::size_t>(to)] = c;
          q.push_back(static_cast<std::size_t>(to));
        }
    }
    ++c;
  }
  return comp;
}

std::vector<int> ChainGraph::component_diameters() const {
  auto comp = component_of_node();
  int nc = component_count();
  std::vector<int> diam(static_cast<std::size_t>(nc), 0);
  for (std::size_t s = 0; s < nodes.size(); ++s) {
    // BFS from s within its component
    std::vector<int> dist(nodes.size(), -1);
    std::deque<std::size_t> q{s};
    dist[s] = 0;
    int far = 0;
    while (!q.empty()) {
      auto v = q.front();
      q.pop_front();
      far = std::max(far, dist[v]);
      for (int to : adjacency[v])
        if (dist[static_cast<std::size_t>(to)] == -1) {
          dist[static_cast<std::size_t>(to)] = dist[v] + 1;
          q.push_back(static_cast<std::size_t>(to));
        }
    }
    auto ci = static_cast<std::size_t>(comp[s]);
    diam[ci] = std::max(diam[ci], far);
  }
  return diam;
}

int ChainGraph::diameter() const {
  auto d = component_diameters();
  return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

std::string ChainGraph::to_edge_list() const {
  std::ostringstream os;
  os << "# n=" << n << " radius=" << annulus_radius << " nodes=" << nodes.size() << "\n";
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (int j : adjacency[i])
      if (static_cast<std::size_t>(j) > i) os << nodes[i] << " " << nodes[static_cast<std::size_t>(j)] << "\n";
  return os.str();
}

std::string ChainGraph::to_dot() const {
  std::ostringstream os;
  os << "graph chain {\n";
  for (const auto& node : nodes) os << "  \"" << node << "\";\n";
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (int j : adjacency[i])
      if (static_cast<std::size_t>(j) > i)
        os << "  \"" << nodes[i] << "\" -- \"" << nodes[static_cast<std::size_t>(j)] << "\";\n";
  os << "}\n";
  return os.str();
}

char PeriodicWitness::at(std::int64_t index) const {
  std::int64_t L = period.size();
  std::int64_t r = (index - phase) % L;
  if (r < 0) r += L;
  return period.letters()[static_cast<std::size_t>(r)];
}

std::optional<PeriodicWitness> positive_frequency_witness(const Sft1D& sft,
                                                          const Word& w) {
  if (w.empty()) throw std::invalid_argument("positive_frequency_witness: empty word");
  TransferGraph g(sft);
  auto mids = mid_anchors(g, sft, w);
  if (mids.empty())
    throw std::invalid_argument("positive_frequency_witness: w not in the language");
  int m = g.vertex_len();
  for (auto [v_in, v_out] : mids) {
    // BFS from v_out back to v_in with at least one edge
    std::vector<int> prev(static_cast<std::size_t>(g.size()), -2);
    std::vector<char> letter(static_cast<std::size_t>(g.size()), 0);
    std::deque<int> q;
    for (auto [to, ch] : g.out(v_out))
      if (g.essential(to) && prev[static_cast<std::size_t>(to)] == -2) {
        prev[static_cast<std::size_t>(to)] = v_out;
        letter[static_cast<std::size_t>(to)] = ch;
        q.push_back(to);
      }
    while (!q.empty() && prev[static_cast<std::size_t>(v_in)] == -2) {
      int v = q.front();
      q.pop_front();
      for (auto [to, ch] : g.out(v))
        if (g.essential(to) && prev[static_cast<std::size_t>(to)] == -2) {
          prev[static_cast<std::size_t>(to)] = v;
          letter[static_cast<std::size_t>(to)] = ch;
          q.push_back(to);
        }
    }
    if (prev[static_cast<std::size_t>(v_in)] == -2) continue;
    std::string ret;
    int cur = v_in;
    while (true) {
      ret.insert(ret.begin(), letter[static_cast<std::size_t>(cur)]);
      int p = prev[static_cast<std::size_t>(cur)];
      if (p == v_out) break;
      cur = p;
    }
    // period letters: w beyond its first m letters (when longer than m),
    // then the return path; the cycle closes back at the entry vertex
    std::string interior =
        w.size() > m ? w.letters().substr(static_cast<std::size_t>(m)) : std::string();
    std::string period = interior + ret;
    if (period.empty()) continue;
    return PeriodicWitness{Word(period), w.lo() + m};
  }
  return std::nullopt;
}

ZtcpeReport ztcpe_report(const Sft1D& sft, std::int64_t n_max, std::int64_t N) {
  ZtcpeReport rep;
  rep.pass = true;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    ZtcpeRow row;
    row.n = n;
    // nonpositive N selects the default schedule n + 2t + 4
    row.radius = N > 0 ? std::max(N, n + sft.type_t + 1) : n + 2 * sft.type_t + 4;
    auto lang = language(sft, n);
    row.words = lang.size();
    row.all_words_have_periodic_witness = true;
    for (const auto& s : lang) {
      auto wit = positive_frequency_witness(sft, Word(s));
      if (!wit) {
        row.all_words_have_periodic_witness = false;
        break;
      }
    }
    ChainGraph cg = chain_graph(sft, n, row.radius);
    row.chain_connected = cg.connected();
    row.component_diameters = cg.component_diameters();
    rep.pass = rep.pass && row.all_words_have_periodic_witness && row.chain_connected;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

std::string ZtcpeReport::str() const {
  std::ostringstream os;
  for (const auto& row : rows) {
    os << "n=" << row.n << " radius=" << row.radius << " words=" << row.words
       << " periodic_witnesses=" << (row.all_words_have_periodic_witness ? "yes" : "NO")
       << " chain_connected=" << (row.chain_connected ? "yes" : "NO") << " diameters=[";
    for (std::size_t i = 0; i < row.component_diameters.size(); ++i)
      os << (i ? "," : "") << row.component_diameters[i];
    os << "]\n";
  }
  os << (pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace shiftlab
