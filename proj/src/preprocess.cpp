#include "tap/preprocess.hpp"

#include <algorithm>
#include <numeric>

#include "tap/errors.hpp"

namespace tap {

namespace {

// Union-find with path halving.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<size_t>(x)] != x) {
      parent_[static_cast<size_t>(x)] =
          parent_[static_cast<size_t>(parent_[static_cast<size_t>(x)])];
      x = parent_[static_cast<size_t>(x)];
    }
    return x;
  }
  void merge(int a, int b) { parent_[static_cast<size_t>(find(a))] = find(b); }

 private:
  std::vector<int> parent_;
};

// Renumbers the kept original feature ids densely (1..n'), preserving order.
// Returns the new->old map; fills old_to_new (0 where dropped).
std::vector<int> build_feature_map(const std::vector<char>& keep, int n,
                                   std::vector<int>& old_to_new) {
  std::vector<int> new_to_old(1, 0);
  old_to_new.assign(static_cast<size_t>(n) + 1, 0);
  for (int f = 1; f <= n; ++f) {
    if (keep[static_cast<size_t>(f)]) {
      new_to_old.push_back(f);
      old_to_new[static_cast<size_t>(f)] =
          static_cast<int>(new_to_old.size()) - 1;
    }
  }
  return new_to_old;
}

}  // namespace

std::vector<int> ReducedInstance::to_original(
    const std::vector<int>& residual_selected) const {
  std::vector<int> out = forced_in;
  for (int j : residual_selected) {
    out.push_back(exemplar_map.at(static_cast<size_t>(j)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ReducedInstance reduce_pure(const Instance& instance) {
  const int n = instance.num_features();
  const int m = instance.num_exemplars();

  std::vector<char> feature_alive(static_cast<size_t>(n) + 1, 1);
  std::vector<char> exemplar_alive(static_cast<size_t>(m) + 1, 1);
  feature_alive[0] = 0;

  ReducedInstance result;

  auto alive_blue_weight = [&](int j) {
    int count = 0;
    for (int f : instance.exemplar(j)) {
      if (f >= 1 && f <= n && feature_alive[static_cast<size_t>(f)] &&
          instance.is_blue(f)) {
        ++count;
      }
    }
    return count;
  };
  auto alive_red_weight = [&](int j) {
    int count = 0;
    for (int f : instance.exemplar(j)) {
      if (f >= 1 && f <= n && feature_alive[static_cast<size_t>(f)] &&
          !instance.is_blue(f)) {
        ++count;
      }
    }
    return count;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    // All-blue exemplars: take them, bank and delete their remaining blues.
    for (int j = 1; j <= m; ++j) {
      if (!exemplar_alive[static_cast<size_t>(j)]) continue;
      if (alive_red_weight(j) != 0) continue;
      exemplar_alive[static_cast<size_t>(j)] = 0;
      result.forced_in.push_back(j);
      changed = true;
      for (int f : instance.exemplar(j)) {
        if (f >= 1 && f <= n && feature_alive[static_cast<size_t>(f)]) {
          ++result.margin_offset;
          feature_alive[static_cast<size_t>(f)] = 0;
        }
      }
    }
    // All-red exemplars: never worth taking.
    for (int j = 1; j <= m; ++j) {
      if (!exemplar_alive[static_cast<size_t>(j)]) continue;
      if (alive_blue_weight(j) != 0) continue;
      exemplar_alive[static_cast<size_t>(j)] = 0;
      result.forced_out.push_back(j);
      changed = true;
    }
    // Features no longer held by any exemplar are uncoverable; drop them.
    std::vector<char> occurs(static_cast<size_t>(n) + 1, 0);
    for (int j = 1; j <= m; ++j) {
      if (!exemplar_alive[static_cast<size_t>(j)]) continue;
      for (int f : instance.exemplar(j)) {
        if (f >= 1 && f <= n) occurs[static_cast<size_t>(f)] = 1;
      }
    }
    for (int f = 1; f <= n; ++f) {
      if (feature_alive[static_cast<size_t>(f)] && !occurs[static_cast<size_t>(f)]) {
        feature_alive[static_cast<size_t>(f)] = 0;
      }
    }
  }

  std::vector<int> old_to_new;
  result.feature_map = build_feature_map(feature_alive, n, old_to_new);

  result.exemplar_map.assign(1, 0);
  std::vector<std::vector<int>> residual_exemplars;
  for (int j = 1; j <= m; ++j) {
    if (!exemplar_alive[static_cast<size_t>(j)]) continue;
    std::vector<int> features;
    for (int f : instance.exemplar(j)) {
      if (f >= 1 && f <= n && feature_alive[static_cast<size_t>(f)]) {
        features.push_back(old_to_new[static_cast<size_t>(f)]);
      }
    }
    residual_exemplars.push_back(std::move(features));
    result.exemplar_map.push_back(j);
  }

  std::vector<int> residual_blue;
  for (size_t idx = 1; idx < result.feature_map.size(); ++idx) {
    if (instance.is_blue(result.feature_map[idx])) {
      residual_blue.push_back(static_cast<int>(idx));
    }
  }

  result.residual =
      Instance(static_cast<int>(result.feature_map.size()) - 1,
               std::move(residual_blue), std::move(residual_exemplars));
  std::sort(result.forced_in.begin(), result.forced_in.end());
  std::sort(result.forced_out.begin(), result.forced_out.end());
  return result;
}

std::vector<Component> split_components(const Instance& instance) {
  const int n = instance.num_features();
  const int m = instance.num_exemplars();

  DisjointSets sets(n + 1);
  for (int j = 1; j <= m; ++j) {
    const auto& e = instance.exemplar(j);
    for (size_t i = 1; i < e.size(); ++i) {
      sets.merge(e[0], e[i]);
    }
  }

  // Group exemplars by the root of their first feature; order groups by the
  // smallest original feature id they touch.
  std::vector<int> group_of_root(static_cast<size_t>(n) + 1, -1);
  struct Group {
    int min_feature;
    std::vector<int> exemplars;
    std::vector<int> features;
  };
  std::vector<Group> groups;
  for (int j = 1; j <= m; ++j) {
    const auto& e = instance.exemplar(j);
    if (e.empty()) continue;  // invalid input; nothing to place it by
    const int root = sets.find(e[0]);
    if (group_of_root[static_cast<size_t>(root)] < 0) {
      group_of_root[static_cast<size_t>(root)] = static_cast<int>(groups.size());
      groups.push_back({});
    }
    groups[static_cast<size_t>(group_of_root[static_cast<size_t>(root)])]
        .exemplars.push_back(j);
  }
  for (int f = 1; f <= n; ++f) {
    const int root = sets.find(f);
    const int g = group_of_root[static_cast<size_t>(root)];
    if (g >= 0) groups[static_cast<size_t>(g)].features.push_back(f);
  }
  for (auto& g : groups) {
    g.min_feature = g.features.empty() ? 0 : g.features.front();
  }
  std::sort(groups.begin(), groups.end(),
            [](const Group& a, const Group& b) {
              return a.min_feature < b.min_feature;
            });

  std::vector<Component> components;
  for (const auto& g : groups) {
    Component comp;
    comp.feature_map.assign(1, 0);
    std::vector<int> old_to_new(static_cast<size_t>(n) + 1, 0);
    for (int f : g.features) {
      comp.feature_map.push_back(f);
      old_to_new[static_cast<size_t>(f)] =
          static_cast<int>(comp.feature_map.size()) - 1;
    }
    comp.exemplar_map.assign(1, 0);
    std::vector<std::vector<int>> exemplars;
    std::vector<int> blue;
    for (int j : g.exemplars) {
      std::vector<int> features;
      for (int f : instance.exemplar(j)) {
        features.push_back(old_to_new[static_cast<size_t>(f)]);
      }
      exemplars.push_back(std::move(features));
      comp.exemplar_map.push_back(j);
    }
    for (size_t idx = 1; idx < comp.feature_map.size(); ++idx) {
      if (instance.is_blue(comp.feature_map[idx])) {
        blue.push_back(static_cast<int>(idx));
      }
    }
    comp.instance = Instance(static_cast<int>(comp.feature_map.size()) - 1,
                             std::move(blue), std::move(exemplars));
    components.push_back(std::move(comp));
  }
  return components;
}

namespace {

// The unique red feature of exemplar j in a one-red instance.
int red_feature_of(const Instance& instance, int j) {
  for (int f : instance.exemplar(j)) {
    if (!instance.is_blue(f)) return f;
  }
  throw PreconditionError("exemplar " + std::to_string(j) +
                          " has no red feature");
}

void require_one_red(const Instance& instance, const char* op) {
  if (!classify(instance).is_one_red) {
    throw PreconditionError(std::string(op) +
                            " requires a one-red instance (every exemplar "
                            "with exactly one red feature)");
  }
}

}  // namespace

TransformedInstance collate(const Instance& instance) {
  require_one_red(instance, "collate");
  const int m = instance.num_exemplars();

  // Group exemplars by red feature, keeping the order of first appearance.
  std::vector<int> group_of_red(static_cast<size_t>(instance.num_features()) + 1,
                                -1);
  std::vector<std::vector<int>> groups;
  for (int j = 1; j <= m; ++j) {
    const int r = red_feature_of(instance, j);
    if (group_of_red[static_cast<size_t>(r)] < 0) {
      group_of_red[static_cast<size_t>(r)] = static_cast<int>(groups.size());
      groups.push_back({});
    }
    groups[static_cast<size_t>(group_of_red[static_cast<size_t>(r)])].push_back(j);
  }

  TransformedInstance out;
  out.source_exemplars.assign(1, {});
  std::vector<std::vector<int>> exemplars;
  for (const auto& group : groups) {
    std::vector<int> merged;
    for (int j : group) {
      const auto& e = instance.exemplar(j);
      merged.insert(merged.end(), e.begin(), e.end());
    }
    exemplars.push_back(std::move(merged));
    out.source_exemplars.push_back(group);
  }
  out.instance = Instance(instance.num_features(), instance.blue(),
                          std::move(exemplars));
  return out;
}

TransformedInstance shatter(const Instance& instance) {
  require_one_red(instance, "shatter");

  TransformedInstance out;
  out.source_exemplars.assign(1, {});
  std::vector<std::vector<int>> exemplars;
  for (int j = 1; j <= instance.num_exemplars(); ++j) {
    const int r = red_feature_of(instance, j);
    bool any_blue = false;
    for (int f : instance.exemplar(j)) {
      if (!instance.is_blue(f)) continue;
      any_blue = true;
      exemplars.push_back({r, f});
      out.source_exemplars.push_back({j});
    }
    if (!any_blue) {
      throw PreconditionError("shatter: exemplar " + std::to_string(j) +
                              " has no blue features; run reduce_pure first");
    }
  }
  out.instance = Instance(instance.num_features(), instance.blue(),
                          std::move(exemplars));
  return out;
}

}  // namespace tap
