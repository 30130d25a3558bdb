#pragma once

// Instance/solution model: feature universe split into blue (wanted) and red
// (unwanted) features, plus a list of exemplar feature sets. Selections of
// exemplars are scored by their margin: covered blue count minus covered red
// count.

#include <string>
#include <vector>

namespace tap {

/// A problem instance. Features are dense 1-based ids 1..n; every feature is
/// blue (in the target) or red (not). Exemplars are nonempty feature sets,
/// addressed by 1-based index. Instances are immutable after construction and
/// safe to share across threads.
///
/// Construction normalizes (sorts, dedups) but does not validate; call
/// validate() to get the list of invariant violations. Margin arithmetic is
/// defined even for invalid instances.
class Instance {
 public:
  Instance() = default;
  Instance(int n_features, std::vector<int> blue,
           std::vector<std::vector<int>> exemplars);

  int num_features() const { return n_features_; }
  int num_exemplars() const { return static_cast<int>(exemplars_.size()); }

  /// Blue feature ids, ascending.
  const std::vector<int>& blue() const { return blue_; }
  /// Red feature ids (complement of blue within 1..n), ascending.
  std::vector<int> red() const;
  int num_blue() const { return static_cast<int>(blue_.size()); }
  int num_red() const;

  bool is_blue(int feature) const;

  /// Features of exemplar `index` (1-based), ascending.
  const std::vector<int>& exemplar(int index) const;
  const std::vector<std::vector<int>>& exemplars() const { return exemplars_; }

  int weight(int index) const;
  int blue_weight(int index) const;
  int red_weight(int index) const;

  bool operator==(const Instance& other) const;

 private:
  int n_features_ = 0;
  std::vector<int> blue_;                    // sorted, unique
  std::vector<std::vector<int>> exemplars_;  // each sorted, unique
  std::vector<char> blue_flag_;              // size n_features_+1, in-range lookup
};

/// A selection of exemplars with its margin. `optimal` is set only by solvers
/// with an exactness guarantee for the instance class they ran on.
struct Solution {
  std::vector<int> selected;  // 1-based exemplar indices, ascending
  int margin = 0;
  bool optimal = false;
};

/// Structural classification of an instance.
struct InstanceStats {
  int max_weight = 0;      // w: largest exemplar size
  int max_occurrence = 0;  // k: most exemplars any feature appears in
  bool is_one_red = false;    // every exemplar has exactly one red feature
  bool is_separable = false;  // every exemplar is all-blue or all-red
  std::vector<int> exemplar_blue_weight;  // indexed by exemplar id, [0] unused
  std::vector<int> exemplar_red_weight;   // indexed by exemplar id, [0] unused
  std::vector<int> feature_occurrence;    // indexed by feature id, [0] unused
};

/// Returns one description per violated instance invariant; empty iff valid.
std::vector<std::string> validate(const Instance& instance);

/// Covered-blue count minus covered-red count for the union of the selected
/// exemplars. Empty selection yields 0. Throws std::out_of_range on a bad
/// exemplar index.
int margin(const Instance& instance, const std::vector<int>& selected);

struct CoveredFeatures {
  std::vector<int> blue;  // ascending
  std::vector<int> red;   // ascending
};

/// The union of the selected exemplars, split by color.
CoveredFeatures covered(const Instance& instance,
                        const std::vector<int>& selected);

InstanceStats classify(const Instance& instance);

}  // namespace tap
