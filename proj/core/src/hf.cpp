#include "qst/hf.hpp"

#include <algorithm>

namespace qst {

HFSet::HFSet(std::vector<HFSet> sorted)
    : members_(std::make_shared<std::vector<HFSet>>(std::move(sorted))) {
  for (const HFSet& m : *members_) rank_ = std::max(rank_, m.rank_ + 1);
}

HFSet HFSet::of(std::vector<HFSet> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return HFSet(std::move(members));
}

HFSet HFSet::ordinal(unsigned k) {
  HFSet cur;
  std::vector<HFSet> acc;
  for (unsigned i = 0; i < k; ++i) {
    acc.push_back(cur);
    cur = HFSet::of(acc);
  }
  return cur;
}

bool HFSet::contains(const HFSet& x) const {
  return std::binary_search(members_->begin(), members_->end(), x);
}

bool HFSet::subset_of(const HFSet& other) const {
  for (const HFSet& m : *members_)
    if (!other.contains(m)) return false;
  return true;
}

int HFSet::compare(const HFSet& other) const {
  if (members_ == other.members_) return 0;
  if (rank_ != other.rank_) return rank_ < other.rank_ ? -1 : 1;
  std::size_t na = members_->size(), nb = other.members_->size();
  if (na != nb) return na < nb ? -1 : 1;
  for (std::size_t i = 0; i < na; ++i)
    if (int c = (*members_)[i].compare((*other.members_)[i])) return c;
  return 0;
}

std::string HFSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < members_->size(); ++i) {
    if (i) s += ',';
    s += (*members_)[i].to_string();
  }
  return s + "}";
}

namespace {
HFSet parse_at(const std::string& t, std::size_t& i, std::size_t depth, std::size_t cap) {
  if (depth > cap) throw Error("set literal exceeds depth cap");
  auto skip = [&] {
    while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
  };
  skip();
  if (i >= t.size() || t[i] != '{') throw Error("set literal: expected '{'");
  ++i;
  std::vector<HFSet> members;
  skip();
  while (i < t.size() && t[i] != '}') {
    members.push_back(parse_at(t, i, depth + 1, cap));
    skip();
    if (i < t.size() && t[i] == ',') {
      ++i;
      skip();
    }
  }
  if (i >= t.size()) throw Error("set literal: missing '}'");
  ++i;
  return HFSet::of(std::move(members));
}
}  // namespace

HFSet HFSet::parse(const std::string& text, std::size_t max_depth) {
  std::size_t i = 0;
  HFSet s = parse_at(text, i, 1, max_depth);
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i != text.size()) throw Error("set literal: trailing input");
  return s;
}

HFSet HFSet::random(std::mt19937_64& rng, unsigned max_depth, unsigned max_width) {
  if (max_depth == 0) return HFSet();
  std::size_t width = rng() % (max_width + 1);
  std::vector<HFSet> members;
  for (std::size_t i = 0; i < width; ++i)
    members.push_back(random(rng, max_depth - 1, max_width));
  return HFSet::of(std::move(members));
}

}  // namespace qst
