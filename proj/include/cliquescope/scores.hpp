#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "cliquescope/graph.hpp"

namespace cliquescope {

enum class Direction { HigherIsCentral, LowerIsCentral };

// One score per node of the source graph for a single measure.
struct ScoreVector {
  std::shared_ptr<const LabelList> labels;
  std::vector<double> values;
  std::string measure;
  Direction direction = Direction::HigherIsCentral;

  std::size_t size() const noexcept { return values.size(); }
  const std::string& label(std::size_t i) const { return (*labels)[i]; }
};

// Per-node community assignment with dense ids 0..count-1.
struct Partition {
  std::vector<std::size_t> assignment;
  std::size_t count = 0;

  std::size_t size() const noexcept { return assignment.size(); }

  // Relabels arbitrary ids densely in order of first appearance.
  static Partition from_labels(const std::vector<std::size_t>& raw);
  static Partition singletons(std::size_t n);
  static Partition single_community(std::size_t n);

  // Communities as sorted member lists, themselves sorted; id-independent.
  std::vector<std::vector<std::size_t>> blocks() const;

  friend bool operator==(const Partition&, const Partition&) = default;
};

// True when both describe the same unordered set partition.
bool same_partition(const Partition& a, const Partition& b);

}  // namespace cliquescope
