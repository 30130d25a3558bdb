#pragma once

// Margin-preserving simplifications applied before solving: forcing pure
// exemplars in/out, splitting into independent components, and the collate /
// shatter transforms for one-red instances.

#include <vector>

#include "tap/instance.hpp"

namespace tap {

/// Result of reduce_pure. For every selection S of residual exemplars,
///   margin(original, map(S) ∪ forced_in) = margin(residual, S) + margin_offset.
/// All residual exemplars are purple (at least one blue and one red feature).
struct ReducedInstance {
  Instance residual;
  std::vector<int> forced_in;   // original exemplar ids always taken, ascending
  std::vector<int> forced_out;  // original exemplar ids never taken, ascending
  int margin_offset = 0;
  std::vector<int> feature_map;   // residual feature id -> original, [0] unused
  std::vector<int> exemplar_map;  // residual exemplar id -> original, [0] unused

  /// Translates a residual selection into original exemplar ids, including
  /// the forced-in exemplars.
  std::vector<int> to_original(const std::vector<int>& residual_selected) const;
};

/// Repeatedly forces all-blue exemplars in (banking their uncovered blue
/// features in margin_offset and deleting them everywhere), drops all-red
/// exemplars, and drops features left in no exemplar, until nothing changes.
ReducedInstance reduce_pure(const Instance& instance);

struct Component {
  Instance instance;
  std::vector<int> feature_map;   // component feature id -> original, [0] unused
  std::vector<int> exemplar_map;  // component exemplar id -> original, [0] unused
};

/// Partitions exemplars by the connected components of the feature
/// co-occurrence graph. The optimum of the instance is the sum of the
/// component optima. Components are ordered by smallest original feature id.
std::vector<Component> split_components(const Instance& instance);

/// An instance rebuilt from another; source_exemplars[j] lists the original
/// exemplar ids that new exemplar j stands for.
struct TransformedInstance {
  Instance instance;
  std::vector<std::vector<int>> source_exemplars;  // [0] unused
};

/// Merges all exemplars sharing a red feature into one exemplar, so each red
/// feature occurs exactly once. Requires a one-red instance; preserves the
/// optimal margin. Groups keep the order of their first member, so an
/// already-collated instance is returned unchanged.
TransformedInstance collate(const Instance& instance);

/// Splits each exemplar {r, b1..bk} into k weight-2 exemplars {r, bi}.
/// Requires a one-red instance with at least one blue feature per exemplar;
/// preserves the optimal margin.
TransformedInstance shatter(const Instance& instance);

}  // namespace tap
