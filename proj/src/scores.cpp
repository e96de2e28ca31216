#include "cliquescope/scores.hpp"

#include <algorithm>
#include <unordered_map>

namespace cliquescope {

Partition Partition::from_labels(const std::vector<std::size_t>& raw) {
  Partition p;
  p.assignment.reserve(raw.size());
  std::unordered_map<std::size_t, std::size_t> dense;
  for (const auto id : raw) {
    const auto [it, inserted] = dense.try_emplace(id, dense.size());
    p.assignment.push_back(it->second);
  }
  p.count = dense.size();
  return p;
}

Partition Partition::singletons(std::size_t n) {
  Partition p;
  p.assignment.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.assignment[i] = i;
  p.count = n;
  return p;
}

Partition Partition::single_community(std::size_t n) {
  Partition p;
  p.assignment.assign(n, 0);
  p.count = n == 0 ? 0 : 1;
  return p;
}

std::vector<std::vector<std::size_t>> Partition::blocks() const {
  std::vector<std::vector<std::size_t>> out(count);
  for (std::size_t i = 0; i < assignment.size(); ++i) out[assignment[i]].push_back(i);
  std::erase_if(out, [](const auto& b) { return b.empty(); });
  std::sort(out.begin(), out.end());
  return out;
}

bool same_partition(const Partition& a, const Partition& b) {
  return a.size() == b.size() && a.blocks() == b.blocks();
}

}  // namespace cliquescope
