#pragma once

// Antichains of variable subsets: families of nonempty source groups with no
// group containing another.  Blocks are bitmasks over ground positions
// 0..n-1 and are kept in (size, value) order, which reproduces the usual
// juxtaposed-index labels: "1|23", "3|12", "12|13|23".

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "infodec/errors.hpp"

namespace infodec {

/// A source group as a bitmask over ground variable positions.
using Block = std::uint16_t;

inline bool block_subset(Block a, Block b) { return (a & ~b) == 0; }

inline int block_size(Block b) { return std::popcount(static_cast<unsigned>(b)); }

struct Antichain {
  int ground = 0;                // number of ground variables
  std::vector<Block> blocks;     // canonical (size, value) order

  /// Validates and canonicalizes: nonempty blocks inside the ground set,
  /// pairwise incomparable.
  static Antichain make(int ground, std::vector<Block> blocks) {
    if (ground < 1 || ground > 15) throw argument_error("bad ground size");
    if (blocks.empty()) throw argument_error("empty antichain");
    for (Block b : blocks) {
      if (b == 0) throw argument_error("empty block in antichain");
      if (b >> ground) throw argument_error("block outside ground set");
    }
    std::sort(blocks.begin(), blocks.end(), block_order);
    for (std::size_t i = 0; i < blocks.size(); ++i)
      for (std::size_t j = 0; j < blocks.size(); ++j)
        if (i != j && block_subset(blocks[i], blocks[j]))
          throw argument_error("blocks are not pairwise incomparable");
    return Antichain{ground, std::move(blocks)};
  }

  /// "12|13" notation, variable positions printed 1-based.
  std::string label() const {
    std::string out;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (i) out += "|";
      for (int v = 0; v < ground; ++v)
        if (blocks[i] >> v & 1) out += static_cast<char>('1' + v);
    }
    return out;
  }

  /// Inverse of label() for grounds up to 9; unknown characters or
  /// non-antichain families are argument errors.
  static Antichain parse(int ground, const std::string& text) {
    std::vector<Block> blocks;
    Block cur = 0;
    for (char c : text) {
      if (c == '|') {
        blocks.push_back(cur);
        cur = 0;
        continue;
      }
      if (c < '1' || c >= static_cast<char>('1' + ground))
        throw argument_error(std::string("bad variable index '") + c + "' in antichain");
      cur |= static_cast<Block>(1u << (c - '1'));
    }
    blocks.push_back(cur);
    return make(ground, std::move(blocks));
  }

  friend bool operator==(const Antichain& a, const Antichain& b) {
    return a.ground == b.ground && a.blocks == b.blocks;
  }
  friend bool operator<(const Antichain& a, const Antichain& b) {
    return a.blocks < b.blocks;
  }

  static bool block_order(Block a, Block b) {
    int sa = block_size(a), sb = block_size(b);
    return sa != sb ? sa < sb : a < b;
  }
};

/// Partial-information order: a <= b iff every block of b has some block of
/// a inside it (b's sources each "contain" a redundancy already counted by
/// a).  Top is the full-set singleton, bottom the all-singletons family.
inline bool leq(const Antichain& a, const Antichain& b) {
  if (a.ground != b.ground) throw argument_error("antichains over different ground sets");
  for (Block bb : b.blocks) {
    bool covered = false;
    for (Block ab : a.blocks)
      if (block_subset(ab, bb)) { covered = true; break; }
    if (!covered) return false;
  }
  return true;
}

}  // namespace infodec
