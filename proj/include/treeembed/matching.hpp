#pragma once

#include <algorithm>
#include <vector>

#include "treeembed/graph.hpp"

namespace treeembed {

/// Maximum bipartite matching between left slots 0..L-1 and right ids 0..R-1 by
/// augmenting paths (Kuhn). Candidate lists are tried in the given order.
class BipartiteMatcher {
 public:
  BipartiteMatcher(std::vector<std::vector<Vertex>> candidates, std::size_t right_count)
      : cand_(std::move(candidates)), left_(cand_.size(), kUnset), right_(right_count, kUnset) {}

  std::size_t solve() {
    std::size_t matched = 0;
    stamp_.assign(right_.size(), 0);
    for (std::size_t s = 0; s < cand_.size(); ++s) {
      ++round_;
      if (augment(static_cast<Vertex>(s))) ++matched;
    }
    size_ = matched;
    return matched;
  }

  std::size_t size() const { return size_; }
  bool saturates_left() const { return size_ == cand_.size(); }
  Vertex match_of_left(std::size_t s) const { return left_[s]; }

  /// Left set W with |N(W)| < |W| (Hall violator): left vertices reachable from an
  /// unmatched left vertex by alternating paths. Empty when the matching saturates.
  /// Returns the violator and its neighbourhood.
  std::pair<std::vector<Vertex>, std::vector<Vertex>> hall_violator() const {
    std::vector<Vertex> w, nbrs;
    Vertex start = kUnset;
    for (std::size_t s = 0; s < cand_.size(); ++s) {
      if (left_[s] == kUnset) {
        start = static_cast<Vertex>(s);
        break;
      }
    }
    if (start == kUnset) return {w, nbrs};
    std::vector<std::uint8_t> seen_left(cand_.size(), 0), seen_right(right_.size(), 0);
    w.push_back(start);
    seen_left[start] = 1;
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (Vertex r : cand_[w[i]]) {
        if (seen_right[r]) continue;
        seen_right[r] = 1;
        nbrs.push_back(r);
        Vertex back = right_[r];
        if (back != kUnset && !seen_left[back]) {
          seen_left[back] = 1;
          w.push_back(back);
        }
      }
    }
    std::sort(w.begin(), w.end());
    std::sort(nbrs.begin(), nbrs.end());
    return {w, nbrs};
  }

 private:
  bool augment(Vertex s) {
    for (Vertex r : cand_[s]) {
      if (stamp_[r] == round_) continue;
      stamp_[r] = round_;
      if (right_[r] == kUnset || augment(right_[r])) {
        right_[r] = s;
        left_[s] = r;
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<Vertex>> cand_;
  std::vector<Vertex> left_;
  std::vector<Vertex> right_;
  std::vector<std::size_t> stamp_;
  std::size_t round_ = 0;
  std::size_t size_ = 0;
};

}  // namespace treeembed
