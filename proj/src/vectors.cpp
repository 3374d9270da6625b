#include "perop/vectors.hpp"

#include <set>
#include <stdexcept>

namespace perop {

void ExactVector::set(std::int64_t n, ComplexRat c) {
  if (n < 1) throw std::invalid_argument("ExactVector: index must be >= 1");
  if (c.is_zero())
    terms_.erase(n);
  else
    terms_[n] = std::move(c);
}

ExactVector ExactVector::operator+(const ExactVector& o) const {
  ExactVector out = *this;
  for (const auto& [n, c] : o.terms_) {
    auto it = out.terms_.find(n);
    if (it == out.terms_.end()) {
      out.terms_.emplace(n, c);
    } else {
      ComplexRat s = it->second + c;
      if (s.is_zero())
        out.terms_.erase(it);
      else
        it->second = std::move(s);
    }
  }
  return out;
}

GroupedVector GroupedVector::explicit_groups(
    std::vector<ExplicitGroup> groups) {
  std::set<std::int64_t> seen;
  for (auto& g : groups) {
    if (g.weight.is_zero())
      throw std::invalid_argument("GroupedVector: zero group weight");
    std::sort(g.indices.begin(), g.indices.end());
    for (std::int64_t n : g.indices) {
      if (n < 1) throw std::invalid_argument("GroupedVector: index < 1");
      if (!seen.insert(n).second)
        throw std::invalid_argument("GroupedVector: groups not disjoint");
    }
  }
  return GroupedVector(std::move(groups));
}

const std::vector<ExplicitGroup>& GroupedVector::groups() const {
  return std::get<std::vector<ExplicitGroup>>(v_);
}

}  // namespace perop
