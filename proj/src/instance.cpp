#include "tap/instance.hpp"

#include <algorithm>
#include <stdexcept>

namespace tap {

namespace {

std::vector<int> sorted_unique(std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

}  // namespace

Instance::Instance(int n_features, std::vector<int> blue,
                   std::vector<std::vector<int>> exemplars)
    : n_features_(n_features),
      blue_(sorted_unique(std::move(blue))),
      exemplars_(std::move(exemplars)) {
  if (n_features < 0) {
    throw std::invalid_argument("negative feature count");
  }
  for (auto& e : exemplars_) {
    e = sorted_unique(std::move(e));
  }
  blue_flag_.assign(static_cast<size_t>(n_features_) + 1, 0);
  for (int f : blue_) {
    if (f >= 1 && f <= n_features_) blue_flag_[static_cast<size_t>(f)] = 1;
  }
}

std::vector<int> Instance::red() const {
  std::vector<int> out;
  for (int f = 1; f <= n_features_; ++f) {
    if (!blue_flag_[static_cast<size_t>(f)]) out.push_back(f);
  }
  return out;
}

int Instance::num_red() const {
  int in_range_blue = 0;
  for (int f : blue_) {
    if (f >= 1 && f <= n_features_) ++in_range_blue;
  }
  return n_features_ - in_range_blue;
}

bool Instance::is_blue(int feature) const {
  if (feature >= 1 && feature <= n_features_) {
    return blue_flag_[static_cast<size_t>(feature)] != 0;
  }
  return std::binary_search(blue_.begin(), blue_.end(), feature);
}

const std::vector<int>& Instance::exemplar(int index) const {
  if (index < 1 || index > num_exemplars()) {
    throw std::out_of_range("exemplar index " + std::to_string(index) +
                            " out of range 1.." +
                            std::to_string(num_exemplars()));
  }
  return exemplars_[static_cast<size_t>(index - 1)];
}

int Instance::weight(int index) const {
  return static_cast<int>(exemplar(index).size());
}

int Instance::blue_weight(int index) const {
  int count = 0;
  for (int f : exemplar(index)) {
    if (is_blue(f)) ++count;
  }
  return count;
}

int Instance::red_weight(int index) const {
  return weight(index) - blue_weight(index);
}

bool Instance::operator==(const Instance& other) const {
  return n_features_ == other.n_features_ && blue_ == other.blue_ &&
         exemplars_ == other.exemplars_;
}

std::vector<std::string> validate(const Instance& instance) {
  std::vector<std::string> violations;
  const int n = instance.num_features();

  for (int f : instance.blue()) {
    if (f < 1 || f > n) {
      violations.push_back("blue feature " + std::to_string(f) +
                           " outside the universe 1.." + std::to_string(n));
    }
  }
  if (instance.blue().empty()) {
    violations.push_back("target is empty: no blue features");
  }

  std::vector<int> occurrence(static_cast<size_t>(n) + 1, 0);
  for (int j = 1; j <= instance.num_exemplars(); ++j) {
    const auto& e = instance.exemplar(j);
    if (e.empty()) {
      violations.push_back("exemplar " + std::to_string(j) + " is empty");
    }
    for (int f : e) {
      if (f < 1 || f > n) {
        violations.push_back("exemplar " + std::to_string(j) +
                             " contains feature " + std::to_string(f) +
                             " outside the universe 1.." + std::to_string(n));
      } else {
        ++occurrence[static_cast<size_t>(f)];
      }
    }
  }
  for (int f = 1; f <= n; ++f) {
    if (occurrence[static_cast<size_t>(f)] == 0) {
      violations.push_back("feature " + std::to_string(f) +
                           " appears in no exemplar");
    }
  }
  return violations;
}

int margin(const Instance& instance, const std::vector<int>& selected) {
  const int n = instance.num_features();
  std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
  std::vector<int> out_of_universe;  // ids outside 1..n, still scored
  int result = 0;
  for (int j : selected) {
    for (int f : instance.exemplar(j)) {
      if (f >= 1 && f <= n) {
        if (!seen[static_cast<size_t>(f)]) {
          seen[static_cast<size_t>(f)] = 1;
          result += instance.is_blue(f) ? 1 : -1;
        }
      } else {
        out_of_universe.push_back(f);
      }
    }
  }
  std::sort(out_of_universe.begin(), out_of_universe.end());
  out_of_universe.erase(
      std::unique(out_of_universe.begin(), out_of_universe.end()),
      out_of_universe.end());
  for (int f : out_of_universe) {
    result += instance.is_blue(f) ? 1 : -1;
  }
  return result;
}

CoveredFeatures covered(const Instance& instance,
                        const std::vector<int>& selected) {
  std::vector<int> all;
  for (int j : selected) {
    const auto& e = instance.exemplar(j);
    all.insert(all.end(), e.begin(), e.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  CoveredFeatures result;
  for (int f : all) {
    (instance.is_blue(f) ? result.blue : result.red).push_back(f);
  }
  return result;
}

InstanceStats classify(const Instance& instance) {
  InstanceStats stats;
  const int n = instance.num_features();
  const int m = instance.num_exemplars();
  stats.exemplar_blue_weight.assign(static_cast<size_t>(m) + 1, 0);
  stats.exemplar_red_weight.assign(static_cast<size_t>(m) + 1, 0);
  stats.feature_occurrence.assign(static_cast<size_t>(n) + 1, 0);
  stats.is_one_red = true;
  stats.is_separable = true;

  for (int j = 1; j <= m; ++j) {
    const auto& e = instance.exemplar(j);
    stats.max_weight = std::max(stats.max_weight, static_cast<int>(e.size()));
    int bw = 0;
    for (int f : e) {
      if (instance.is_blue(f)) ++bw;
      if (f >= 1 && f <= n) ++stats.feature_occurrence[static_cast<size_t>(f)];
    }
    const int rw = static_cast<int>(e.size()) - bw;
    stats.exemplar_blue_weight[static_cast<size_t>(j)] = bw;
    stats.exemplar_red_weight[static_cast<size_t>(j)] = rw;
    if (rw != 1) stats.is_one_red = false;
    if (bw != 0 && rw != 0) stats.is_separable = false;
  }
  for (int f = 1; f <= n; ++f) {
    stats.max_occurrence =
        std::max(stats.max_occurrence, stats.feature_occurrence[static_cast<size_t>(f)]);
  }
  return stats;
}

}  // namespace tap
