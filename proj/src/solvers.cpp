#include "tap/solvers.hpp"

#include <algorithm>
#include <bit>

#include "tap/errors.hpp"
#include "tap/greedy.hpp"
#include "tap/preprocess.hpp"

namespace tap {

namespace {

// Per-exemplar feature bitmasks for fast margin evaluation during
// enumeration. Requires all feature ids in 1..n (callers check validity).
struct MaskTable {
  int words = 0;
  std::vector<std::uint64_t> blue;  // m * words
  std::vector<std::uint64_t> red;   // m * words
};

MaskTable build_masks(const Instance& instance) {
  MaskTable table;
  const int n = instance.num_features();
  const int m = instance.num_exemplars();
  table.words = (n + 64) / 64;
  table.blue.assign(static_cast<size_t>(m) * table.words, 0);
  table.red.assign(static_cast<size_t>(m) * table.words, 0);
  for (int j = 1; j <= m; ++j) {
    for (int f : instance.exemplar(j)) {
      if (f < 1 || f > n) continue;
      auto& plane = instance.is_blue(f) ? table.blue : table.red;
      plane[static_cast<size_t>(j - 1) * table.words + f / 64] |=
          std::uint64_t{1} << (f % 64);
    }
  }
  return table;
}

int mask_margin(const MaskTable& table, std::uint64_t selection_mask, int m,
                std::vector<std::uint64_t>& blue_acc,
                std::vector<std::uint64_t>& red_acc) {
  std::fill(blue_acc.begin(), blue_acc.end(), 0);
  std::fill(red_acc.begin(), red_acc.end(), 0);
  for (int j = 0; j < m; ++j) {
    if (!(selection_mask >> j & 1)) continue;
    const size_t base = static_cast<size_t>(j) * table.words;
    for (int w = 0; w < table.words; ++w) {
      blue_acc[static_cast<size_t>(w)] |= table.blue[base + w];
      red_acc[static_cast<size_t>(w)] |= table.red[base + w];
    }
  }
  int result = 0;
  for (int w = 0; w < table.words; ++w) {
    result += std::popcount(blue_acc[static_cast<size_t>(w)]);
    result -= std::popcount(red_acc[static_cast<size_t>(w)]);
  }
  return result;
}

std::vector<int> decode_mask(std::uint64_t mask, int m) {
  std::vector<int> out;
  for (int j = 0; j < m; ++j) {
    if (mask >> j & 1) out.push_back(j + 1);
  }
  return out;
}

SolverReport make_report(const Instance& instance, std::vector<int> selected,
                         std::string name, bool exact, std::uint64_t work) {
  SolverReport report;
  std::sort(selected.begin(), selected.end());
  report.solution.selected = std::move(selected);
  report.solution.margin = margin(instance, report.solution.selected);
  report.solution.optimal = exact;
  report.solver_name = std::move(name);
  report.exact = exact;
  report.work = work;
  return report;
}

}  // namespace

SolverReport solve_separable(const Instance& instance) {
  const InstanceStats stats = classify(instance);
  if (!stats.is_separable) {
    throw PreconditionError(
        "separable solver requires every exemplar to be all-blue or all-red");
  }
  std::vector<int> selected;
  for (int j = 1; j <= instance.num_exemplars(); ++j) {
    if (stats.exemplar_red_weight[static_cast<size_t>(j)] == 0) {
      selected.push_back(j);
    }
  }
  return make_report(instance, std::move(selected), "separable", true,
                     static_cast<std::uint64_t>(instance.num_exemplars()));
}

SolverReport solve_one_occurrence(const Instance& instance) {
  const InstanceStats stats = classify(instance);
  if (stats.max_occurrence > 1) {
    throw PreconditionError(
        "one-occurrence solver requires every feature to occur at most once "
        "(max occurrence is " +
        std::to_string(stats.max_occurrence) + ")");
  }
  std::vector<int> selected;
  for (int j = 1; j <= instance.num_exemplars(); ++j) {
    if (stats.exemplar_blue_weight[static_cast<size_t>(j)] >
        stats.exemplar_red_weight[static_cast<size_t>(j)]) {
      selected.push_back(j);
    }
  }
  return make_report(instance, std::move(selected), "one-occ", true,
                     static_cast<std::uint64_t>(instance.num_exemplars()));
}

SolverReport solve_two_two(const Instance& instance) {
  const int n = instance.num_features();
  const int m = instance.num_exemplars();
  const InstanceStats stats = classify(instance);
  for (int j = 1; j <= m; ++j) {
    if (stats.exemplar_blue_weight[static_cast<size_t>(j)] != 1 ||
        stats.exemplar_red_weight[static_cast<size_t>(j)] != 1) {
      throw PreconditionError(
          "two-two solver requires every exemplar to hold exactly one blue "
          "and one red feature; run reduce_pure first");
    }
  }
  if (stats.max_occurrence > 2) {
    throw PreconditionError(
        "two-two solver requires every feature to occur at most twice (max "
        "occurrence is " +
        std::to_string(stats.max_occurrence) + ")");
  }

  // Occurrences of each blue feature: (exemplar, red) pairs.
  std::vector<std::vector<std::pair<int, int>>> holders(
      static_cast<size_t>(n) + 1);
  for (int j = 1; j <= m; ++j) {
    int blue = 0;
    int red = 0;
    for (int f : instance.exemplar(j)) {
      (instance.is_blue(f) ? blue : red) = f;
    }
    holders[static_cast<size_t>(blue)].push_back({j, red});
  }

  std::vector<char> forced(static_cast<size_t>(n) + 1, 0);
  struct Edge {
    int u, v;  // red endpoints
  };
  std::vector<Edge> maybe_edges;
  for (int b : instance.blue()) {
    const auto& h = holders[static_cast<size_t>(b)];
    if (h.empty()) continue;  // uncoverable blue; nothing to do
    if (h.size() == 1) {
      forced[static_cast<size_t>(h[0].second)] = 1;  // must take its only holder
    } else if (h[0].second == h[1].second) {
      forced[static_cast<size_t>(h[0].second)] = 1;  // self-loop
    } else {
      maybe_edges.push_back({h[0].second, h[1].second});
    }
  }

  // Remaining graph: edges whose endpoints are both unforced.
  std::vector<std::vector<std::pair<int, int>>> adjacency(
      static_cast<size_t>(n) + 1);  // node -> (edge id, other endpoint)
  std::vector<Edge> edges;
  for (const Edge& e : maybe_edges) {
    if (forced[static_cast<size_t>(e.u)] || forced[static_cast<size_t>(e.v)]) {
      continue;
    }
    const int id = static_cast<int>(edges.size());
    edges.push_back(e);
    adjacency[static_cast<size_t>(e.u)].push_back({id, e.v});
    adjacency[static_cast<size_t>(e.v)].push_back({id, e.u});
  }

  // Cover each path/cycle component by taking every second node along a walk:
  // paths start at their lower-id endpoint and skip it; cycles start at their
  // lowest-id node and take it.
  std::vector<char> cover(static_cast<size_t>(n) + 1, 0);
  std::vector<char> visited(static_cast<size_t>(n) + 1, 0);
  std::vector<char> edge_used(edges.size(), 0);
  for (int start = 1; start <= n; ++start) {
    if (adjacency[static_cast<size_t>(start)].empty() ||
        visited[static_cast<size_t>(start)]) {
      continue;
    }
    // Collect the component to find its lowest-id degree-1 node, if any.
    std::vector<int> nodes;
    std::vector<int> stack = {start};
    visited[static_cast<size_t>(start)] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      nodes.push_back(u);
      for (const auto& [eid, v] : adjacency[static_cast<size_t>(u)]) {
        if (!visited[static_cast<size_t>(v)]) {
          visited[static_cast<size_t>(v)] = 1;
          stack.push_back(v);
        }
      }
    }
    std::sort(nodes.begin(), nodes.end());
    int walk_from = nodes.front();  // cycle default: lowest id
    bool is_path = false;
    for (int u : nodes) {
      if (adjacency[static_cast<size_t>(u)].size() == 1) {
        walk_from = u;
        is_path = true;
        break;  // nodes are ascending, so this is the lower-id endpoint
      }
    }

    int position = 0;
    int current = walk_from;
    while (true) {
      const bool take = is_path ? (position % 2 == 1) : (position % 2 == 0);
      if (take) cover[static_cast<size_t>(current)] = 1;
      int next = -1;
      for (const auto& [eid, v] : adjacency[static_cast<size_t>(current)]) {
        if (!edge_used[static_cast<size_t>(eid)]) {
          edge_used[static_cast<size_t>(eid)] = 1;
          next = v;
          break;
        }
      }
      if (next < 0) break;                          // end of path
      if (next == walk_from && !is_path) break;     // closed the cycle
      current = next;
      ++position;
    }
  }

  std::vector<int> selected;
  for (int j = 1; j <= m; ++j) {
    for (int f : instance.exemplar(j)) {
      if (!instance.is_blue(f) &&
          (forced[static_cast<size_t>(f)] || cover[static_cast<size_t>(f)])) {
        selected.push_back(j);
      }
    }
  }
  return make_report(instance, std::move(selected), "two-two", true,
                     static_cast<std::uint64_t>(m + n));
}

SolverReport solve_brute_force(const Instance& instance, int max_exemplars) {
  const int m = instance.num_exemplars();
  if (m > max_exemplars) {
    throw PreconditionError("instance has " + std::to_string(m) +
                            " exemplars, above the brute-force limit of " +
                            std::to_string(max_exemplars));
  }
  if (m > 62) {
    throw PreconditionError("brute force is capped at 62 exemplars");
  }

  const MaskTable table = build_masks(instance);
  std::vector<std::uint64_t> blue_acc(static_cast<size_t>(table.words));
  std::vector<std::uint64_t> red_acc(static_cast<size_t>(table.words));

  int best_margin = 0;
  std::vector<int> best_selected;  // mask 0
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    const int value = mask_margin(table, mask, m, blue_acc, red_acc);
    if (value < best_margin) continue;
    std::vector<int> candidate = decode_mask(mask, m);
    if (value > best_margin ||
        std::lexicographical_compare(candidate.begin(), candidate.end(),
                                     best_selected.begin(),
                                     best_selected.end())) {
      best_margin = value;
      best_selected = std::move(candidate);
    }
  }
  return make_report(instance, std::move(best_selected), "brute", true, total);
}

SolverReport solve_one_red_enumeration(const Instance& instance,
                                       std::optional<int> max_red_chosen) {
  if (!classify(instance).is_one_red) {
    throw PreconditionError(
        "one-red enumeration requires a one-red instance");
  }
  const int n = instance.num_features();
  const std::vector<int> reds = instance.red();
  const int r_count = static_cast<int>(reds.size());
  const int budget =
      max_red_chosen ? std::min(*max_red_chosen, r_count) : r_count;
  if (budget < 0) {
    throw PreconditionError("red budget must be nonnegative");
  }

  std::vector<std::vector<int>> exemplars_of(static_cast<size_t>(n) + 1);
  for (int j = 1; j <= instance.num_exemplars(); ++j) {
    for (int f : instance.exemplar(j)) {
      if (!instance.is_blue(f)) exemplars_of[static_cast<size_t>(f)].push_back(j);
    }
  }

  int best_margin = 0;
  std::vector<int> best_selected;  // size-0 subset
  std::uint64_t work = 1;

  std::vector<int> choice;  // indices into reds
  auto evaluate = [&]() {
    ++work;
    std::vector<int> selected;
    for (int idx : choice) {
      const auto& js = exemplars_of[static_cast<size_t>(reds[static_cast<size_t>(idx)])];
      selected.insert(selected.end(), js.begin(), js.end());
    }
    std::sort(selected.begin(), selected.end());
    const int value = margin(instance, selected);
    if (value > best_margin ||
        (value == best_margin &&
         std::lexicographical_compare(selected.begin(), selected.end(),
                                      best_selected.begin(),
                                      best_selected.end()))) {
      best_margin = value;
      best_selected = std::move(selected);
    }
  };

  // Enumerate red subsets by size, each size in lexicographic order.
  for (int size = 1; size <= budget; ++size) {
    choice.resize(static_cast<size_t>(size));
    for (int i = 0; i < size; ++i) choice[static_cast<size_t>(i)] = i;
    while (true) {
      evaluate();
      int i = size - 1;
      while (i >= 0 && choice[static_cast<size_t>(i)] == r_count - size + i) {
        --i;
      }
      if (i < 0) break;
      ++choice[static_cast<size_t>(i)];
      for (int t = i + 1; t < size; ++t) {
        choice[static_cast<size_t>(t)] = choice[static_cast<size_t>(t - 1)] + 1;
      }
    }
  }

  const bool exact = budget >= r_count;
  return make_report(instance, std::move(best_selected), "one-red-enum", exact,
                     work);
}

SolverReport solve_auto(const Instance& instance, int fallback_limit) {
  const ReducedInstance reduced = reduce_pure(instance);
  const std::vector<Component> components = split_components(reduced.residual);

  std::vector<int> selected = reduced.forced_in;
  bool exact = true;
  std::uint64_t work = 0;

  for (const Component& component : components) {
    const InstanceStats stats = classify(component.instance);
    const int comp_m = component.instance.num_exemplars();
    bool two_two_shape = stats.max_occurrence <= 2;
    for (int j = 1; j <= comp_m && two_two_shape; ++j) {
      two_two_shape = stats.exemplar_blue_weight[static_cast<size_t>(j)] == 1 &&
                      stats.exemplar_red_weight[static_cast<size_t>(j)] == 1;
    }

    SolverReport report;
    if (stats.is_separable) {
      report = solve_separable(component.instance);
    } else if (stats.max_occurrence <= 1) {
      report = solve_one_occurrence(component.instance);
    } else if (two_two_shape) {
      report = solve_two_two(component.instance);
    } else if (comp_m <= fallback_limit) {
      report = solve_brute_force(component.instance, fallback_limit);
    } else if (stats.is_one_red) {
      const GreedyResult greedy = greedy_one_red(component.instance);
      report.solution = best_prefix(component.instance, greedy.trace);
      report.solver_name = "greedy";
      report.exact = false;
      report.work = static_cast<std::uint64_t>(greedy.trace.picked_red.size());
    } else {
      throw PreconditionError(
          "no applicable solver: a component has " + std::to_string(comp_m) +
          " exemplars (above the fallback limit of " +
          std::to_string(fallback_limit) + ") and is not one-red");
    }

    for (int j : report.solution.selected) {
      const int residual_id = component.exemplar_map[static_cast<size_t>(j)];
      selected.push_back(reduced.exemplar_map[static_cast<size_t>(residual_id)]);
    }
    exact = exact && report.exact;
    work += report.work;
  }

  return make_report(instance, std::move(selected), "auto", exact, work);
}

}  // namespace tap
