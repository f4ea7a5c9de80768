#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "qst/lattice.hpp"

namespace qst {

/// A hereditarily finite set in canonical form: members sorted, deduplicated.
/// Value type with structural equality; the classical side of every
/// elementary-equivalence check.
class HFSet {
 public:
  HFSet() : members_(std::make_shared<std::vector<HFSet>>()) {}  // empty set
  static HFSet of(std::vector<HFSet> members);
  static HFSet ordinal(unsigned k);  // von Neumann numeral

  const std::vector<HFSet>& members() const { return *members_; }
  bool empty() const { return members_->empty(); }
  std::size_t rank() const { return rank_; }

  bool contains(const HFSet& x) const;
  bool subset_of(const HFSet& other) const;

  /// Total order compatible with structural equality.
  int compare(const HFSet& other) const;
  bool operator==(const HFSet& o) const { return compare(o) == 0; }
  bool operator<(const HFSet& o) const { return compare(o) < 0; }

  std::string to_string() const;  // {} / {{},{{}}} literal
  /// Parses a nested braces literal; depth-capped.
  static HFSet parse(const std::string& text, std::size_t max_depth = 32);

  static HFSet random(std::mt19937_64& rng, unsigned max_depth, unsigned max_width = 3);

 private:
  explicit HFSet(std::vector<HFSet> sorted);
  std::shared_ptr<const std::vector<HFSet>> members_;
  std::size_t rank_ = 0;
};

}  // namespace qst
