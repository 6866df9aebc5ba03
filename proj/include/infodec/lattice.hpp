#pragma once

// The lattice of antichains under the partial-information order, for ground
// sets of up to four variables (1, 4, 18 and 166 nodes; one more variable
// would follow the Dedekind-number growth to 7578 nodes, which is past any
// use this library has).
//
// Two independent enumerations back each other up: a brute-force filter of
// the power set of the power set (cheap for n <= 3) and a recursive walk of
// the downsets of the nonempty-subset poset, canonicalized to their maximal
// elements (used for n = 4, bijective with antichains).

#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "infodec/antichain.hpp"

namespace infodec {

inline constexpr std::array<int, 4> kAntichainCount = {1, 4, 18, 166};

class PILattice {
 public:
  static constexpr int kMaxGround = 4;

  static PILattice build(int n) {
    if (n < 1) throw argument_error("ground set must have at least one variable");
    if (n > kMaxGround)
      throw capacity_error("antichain lattice for " + std::to_string(n) +
                           " variables not supported (node count grows like the "
                           "Dedekind numbers: 1, 4, 18, 166, 7578, ...)");
    std::vector<Antichain> nodes =
        n <= 3 ? enumerate_by_filter(n) : enumerate_by_downsets(n);
    return PILattice(n, std::move(nodes));
  }

  int ground() const noexcept { return n_; }
  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  const std::vector<Antichain>& nodes() const noexcept { return nodes_; }
  const Antichain& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }
  std::string label(int i) const { return node(i).label(); }

  int index_of(const Antichain& a) const {
    auto it = index_.find(a);
    if (it == index_.end()) throw argument_error("antichain not in this lattice");
    return it->second;
  }

  bool leq(int a, int b) const {
    return leq_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }

  /// Nodes strictly below i, in node order.
  const std::vector<int>& strict_downset(int i) const {
    return down_[static_cast<std::size_t>(i)];
  }

  /// Immediate predecessors of i (edges of the Hasse diagram).
  const std::vector<int>& covers_below(int i) const {
    return covers_[static_cast<std::size_t>(i)];
  }

  /// Longest-path distance from the top node; used as the drawing rank.
  int layer(int i) const { return layer_[static_cast<std::size_t>(i)]; }
  int layer_count() const noexcept { return layers_; }

  int top() const { return 0; }
  int bottom() const { return size() - 1; }

  /// Brute force: every subset of the family of nonempty ground subsets,
  /// kept when pairwise incomparable.  Exponential in 2^n; n <= 3 only.
  static std::vector<Antichain> enumerate_by_filter(int n) {
    if (n > 3) throw capacity_error("filter enumeration is limited to 3 variables");
    int subsets = (1 << n) - 1;  // nonempty ground subsets, masks 1..subsets
    std::vector<Antichain> out;
    for (std::uint32_t family = 1; family < (1u << subsets); ++family) {
      std::vector<Block> blocks;
      for (int s = 1; s <= subsets; ++s)
        if (family >> (s - 1) & 1) blocks.push_back(static_cast<Block>(s));
      bool ok = true;
      for (std::size_t i = 0; ok && i < blocks.size(); ++i)
        for (std::size_t j = 0; ok && j < blocks.size(); ++j)
          if (i != j && block_subset(blocks[i], blocks[j])) ok = false;
      if (ok) out.push_back(Antichain::make(n, std::move(blocks)));
    }
    return out;
  }

  /// Downset walk: subsets are visited in (size, value) order and a subset
  /// may join the family only when all its nonempty proper subsets already
  /// have.  Each complete downset is canonicalized to its maximal elements,
  /// which hits every antichain exactly once.
  static std::vector<Antichain> enumerate_by_downsets(int n) {
    std::vector<Block> order;
    for (int s = 1; s < (1 << n); ++s) order.push_back(static_cast<Block>(s));
    std::sort(order.begin(), order.end(), Antichain::block_order);
    std::vector<Antichain> out;
    std::vector<Block> chosen;
    walk_downsets(n, order, 0, chosen, out);
    return out;
  }

 private:
  PILattice(int n, std::vector<Antichain> nodes) : n_(n), nodes_(std::move(nodes)) {
    order_and_index();
  }

  static void walk_downsets(int n, const std::vector<Block>& order, std::size_t pos,
                            std::vector<Block>& chosen, std::vector<Antichain>& out) {
    if (pos == order.size()) {
      if (chosen.empty()) return;
      std::vector<Block> maximal;
      for (Block b : chosen) {
        bool top = true;
        for (Block c : chosen)
          if (c != b && block_subset(b, c)) { top = false; break; }
        if (top) maximal.push_back(b);
      }
      out.push_back(Antichain::make(n, std::move(maximal)));
      return;
    }
    Block next = order[pos];
    bool closed = true;  // all nonempty proper subsets already chosen?
    for (Block sub = (next - 1) & next; closed && sub; sub = (sub - 1) & next)
      if (!std::binary_search(chosen.begin(), chosen.end(), sub, Antichain::block_order))
        closed = false;
    walk_downsets(n, order, pos + 1, chosen, out);  // skip `next`
    if (closed) {
      chosen.push_back(next);  // order[] is sorted, so chosen stays sorted
      walk_downsets(n, order, pos + 1, chosen, out);
      chosen.pop_back();
    }
  }

  void order_and_index() {
    const std::size_t m = nodes_.size();
    std::vector<std::vector<bool>> rel(m, std::vector<bool>(m, false));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        rel[a][b] = infodec::leq(nodes_[a], nodes_[b]);
    // Longest chain up to the top node: fixpoint of
    // layer[a] = 1 + max layer[b] over all b strictly above a.
    std::vector<int> layer(m, 0);
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
          if (a != b && rel[a][b] && layer[a] < layer[b] + 1) {
            layer[a] = layer[b] + 1;
            grew = true;
          }
    }
    // Node order: top-down by layer, small families first, then by label.
    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
      if (layer[a] != layer[b]) return layer[a] < layer[b];
      if (nodes_[a].blocks.size() != nodes_[b].blocks.size())
        return nodes_[a].blocks.size() < nodes_[b].blocks.size();
      return nodes_[a].label() < nodes_[b].label();
    });
    std::vector<Antichain> sorted;
    sorted.reserve(m);
    layer_.resize(m);
    leq_.assign(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i) {
      sorted.push_back(nodes_[perm[i]]);
      layer_[i] = layer[perm[i]];
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) leq_[i][j] = rel[perm[i]][perm[j]];
    nodes_ = std::move(sorted);
    layers_ = m ? layer_[m - 1] + 1 : 0;
    down_.assign(m, {});
    covers_.assign(m, {});
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t a = 0; a < m; ++a) {
        if (a == b || !leq_[a][b]) continue;
        down_[b].push_back(static_cast<int>(a));
        bool cover = true;
        for (std::size_t c = 0; c < m && cover; ++c)
          if (c != a && c != b && leq_[a][c] && leq_[c][b]) cover = false;
        if (cover) covers_[b].push_back(static_cast<int>(a));
      }
    for (std::size_t i = 0; i < m; ++i) index_[nodes_[i]] = static_cast<int>(i);
  }

  int n_ = 0;
  int layers_ = 0;
  std::vector<int> layer_;
  std::vector<Antichain> nodes_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<int>> down_;
  std::vector<std::vector<int>> covers_;
  std::map<Antichain, int> index_;
};

}  // namespace infodec
