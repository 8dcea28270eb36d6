#include "epe/common.hpp"

#include <algorithm>

namespace epe {

Region::Region(std::vector<Index> indices) : indices_(std::move(indices)) {
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 0) throw ValidationError("region index is negative");
    if (i > 0 && indices_[i] <= indices_[i - 1])
      throw ValidationError("region indices must be strictly increasing");
  }
}

Region Region::interval(Index begin, Index end) {
  if (begin < 0 || end < begin) throw ValidationError("invalid interval bounds");
  std::vector<Index> idx(static_cast<std::size_t>(end - begin));
  for (Index i = begin; i < end; ++i) idx[static_cast<std::size_t>(i - begin)] = i;
  return Region(std::move(idx));
}

bool Region::contains(Index mode) const {
  return std::binary_search(indices_.begin(), indices_.end(), mode);
}

bool Region::disjoint_from(const Region& other) const {
  std::size_t i = 0, j = 0;
  while (i < indices_.size() && j < other.indices_.size()) {
    if (indices_[i] == other.indices_[j]) return false;
    if (indices_[i] < other.indices_[j])
      ++i;
    else
      ++j;
  }
  return true;
}

Region Region::disjoint_union(const Region& other) const {
  std::vector<Index> merged;
  merged.reserve(indices_.size() + other.indices_.size());
  std::merge(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
             std::back_inserter(merged));
  for (std::size_t i = 1; i < merged.size(); ++i)
    if (merged[i] == merged[i - 1]) throw ValidationError("regions overlap");
  return Region(std::move(merged));
}

Region Region::complement_in(Index dim) const {
  require_within(dim, "region");
  std::vector<Index> rest;
  rest.reserve(static_cast<std::size_t>(dim) - indices_.size());
  std::size_t k = 0;
  for (Index i = 0; i < dim; ++i) {
    if (k < indices_.size() && indices_[k] == i) {
      ++k;
    } else {
      rest.push_back(i);
    }
  }
  return Region(std::move(rest));
}

void Region::require_within(Index dim, const std::string& what) const {
  if (!indices_.empty() && indices_.back() >= dim)
    throw ValidationError(what + ": index " + std::to_string(indices_.back()) +
                          " out of range for dimension " + std::to_string(dim));
}

void require_disjoint(const Region& a, const Region& b, const std::string& what) {
  if (!a.disjoint_from(b)) throw ValidationError(what + ": regions overlap");
}

}  // namespace epe
