#include "tap/greedy.hpp"

#include <algorithm>
#include <random>

#include "tap/errors.hpp"

namespace tap {

namespace {

struct OneRedView {
  std::vector<int> reds;                     // distinct red ids, ascending
  std::vector<std::vector<int>> exemplars_of;  // indexed like reds
  std::vector<std::vector<int>> blues_of;      // union of blues, indexed like reds
};

OneRedView build_one_red_view(const Instance& instance, const char* op) {
  const int n = instance.num_features();
  std::vector<std::vector<int>> exemplars_by_red(static_cast<size_t>(n) + 1);
  for (int j = 1; j <= instance.num_exemplars(); ++j) {
    int red = 0;
    int red_count = 0;
    int blue_count = 0;
    for (int f : instance.exemplar(j)) {
      if (instance.is_blue(f)) {
        ++blue_count;
      } else {
        red = f;
        ++red_count;
      }
    }
    if (red_count != 1 || red < 1 || red > n) {
      throw PreconditionError(std::string(op) +
                              " requires a one-red instance; exemplar " +
                              std::to_string(j) + " has " +
                              std::to_string(red_count) + " red features");
    }
    if (blue_count == 0) {
      throw PreconditionError(std::string(op) + ": exemplar " +
                              std::to_string(j) +
                              " has no blue features; run reduce_pure first");
    }
    exemplars_by_red[static_cast<size_t>(red)].push_back(j);
  }

  OneRedView view;
  for (int f = 1; f <= n; ++f) {
    if (exemplars_by_red[static_cast<size_t>(f)].empty()) continue;
    view.reds.push_back(f);
    view.exemplars_of.push_back(exemplars_by_red[static_cast<size_t>(f)]);
    std::vector<int> blues;
    for (int j : exemplars_by_red[static_cast<size_t>(f)]) {
      for (int b : instance.exemplar(j)) {
        if (instance.is_blue(b)) blues.push_back(b);
      }
    }
    std::sort(blues.begin(), blues.end());
    blues.erase(std::unique(blues.begin(), blues.end()), blues.end());
    view.blues_of.push_back(std::move(blues));
  }
  return view;
}

void require_all_blue_covered(const Instance& instance, const char* op) {
  const int n = instance.num_features();
  std::vector<char> occurs(static_cast<size_t>(n) + 1, 0);
  for (const auto& e : instance.exemplars()) {
    for (int f : e) {
      if (f >= 1 && f <= n) occurs[static_cast<size_t>(f)] = 1;
    }
  }
  for (int b : instance.blue()) {
    if (b < 1 || b > n || !occurs[static_cast<size_t>(b)]) {
      throw PreconditionError(std::string(op) + ": blue feature " +
                              std::to_string(b) +
                              " occurs in no exemplar; cannot cover it");
    }
  }
}

}  // namespace

GreedyResult greedy_one_red(const Instance& instance, TieBreak tie) {
  const OneRedView view = build_one_red_view(instance, "greedy");
  require_all_blue_covered(instance, "greedy");

  const int n = instance.num_features();
  const int n_blue = instance.num_blue();
  std::vector<char> blue_covered(static_cast<size_t>(n) + 1, 0);
  std::vector<char> red_picked(view.reds.size(), 0);
  int covered_count = 0;

  std::mt19937_64 rng(tie.seed);
  GreedyResult result;

  while (covered_count < n_blue) {
    int best_gain = -1;
    std::vector<size_t> best;
    for (size_t i = 0; i < view.reds.size(); ++i) {
      if (red_picked[i]) continue;
      int gain = 0;
      for (int b : view.blues_of[i]) {
        if (!blue_covered[static_cast<size_t>(b)]) ++gain;
      }
      if (gain > best_gain) {
        best_gain = gain;
        best.clear();
      }
      if (gain == best_gain) best.push_back(i);
    }
    // A blue feature is still uncovered, so some red must gain at least one.
    size_t pick = best.front();
    switch (tie.rule) {
      case TieBreak::Rule::lowest_id:
        break;
      case TieBreak::Rule::highest_id:
        pick = best.back();
        break;
      case TieBreak::Rule::seeded_random:
        pick = best[static_cast<size_t>(rng() % best.size())];
        break;
    }

    red_picked[pick] = 1;
    for (int b : view.blues_of[pick]) {
      if (!blue_covered[static_cast<size_t>(b)]) {
        blue_covered[static_cast<size_t>(b)] = 1;
        ++covered_count;
      }
    }
    result.trace.picked_red.push_back(view.reds[pick]);
    result.trace.newly_covered.push_back(best_gain);
    result.trace.prefix_margins.push_back(
        covered_count - static_cast<int>(result.trace.picked_red.size()));
  }

  for (size_t i = 0; i < view.reds.size(); ++i) {
    if (!red_picked[i]) continue;
    result.solution.selected.insert(result.solution.selected.end(),
                                    view.exemplars_of[i].begin(),
                                    view.exemplars_of[i].end());
  }
  std::sort(result.solution.selected.begin(), result.solution.selected.end());
  result.solution.margin = margin(instance, result.solution.selected);
  result.solution.optimal = false;
  return result;
}

Solution best_prefix(const Instance& instance, const GreedyTrace& trace) {
  const OneRedView view = build_one_red_view(instance, "best_prefix");
  if (trace.picked_red.size() != trace.newly_covered.size() ||
      trace.picked_red.size() != trace.prefix_margins.size()) {
    throw PreconditionError("best_prefix: trace field lengths disagree");
  }

  std::vector<int> red_index(static_cast<size_t>(instance.num_features()) + 1,
                             -1);
  for (size_t i = 0; i < view.reds.size(); ++i) {
    red_index[static_cast<size_t>(view.reds[i])] = static_cast<int>(i);
  }

  // Recompute each prefix margin from the instance; a mismatch means the
  // trace was not produced by greedy_one_red on this instance.
  std::vector<char> blue_covered(
      static_cast<size_t>(instance.num_features()) + 1, 0);
  int covered_count = 0;
  int best_margin = 0;  // the empty prefix
  size_t best_length = 0;
  for (size_t i = 0; i < trace.picked_red.size(); ++i) {
    const int r = trace.picked_red[i];
    if (r < 1 || r > instance.num_features() ||
        red_index[static_cast<size_t>(r)] < 0) {
      throw PreconditionError("best_prefix: trace picks feature " +
                              std::to_string(r) +
                              " which is not a red feature of the instance");
    }
    for (int b :
         view.blues_of[static_cast<size_t>(red_index[static_cast<size_t>(r)])]) {
      if (!blue_covered[static_cast<size_t>(b)]) {
        blue_covered[static_cast<size_t>(b)] = 1;
        ++covered_count;
      }
    }
    const int prefix_margin = covered_count - static_cast<int>(i) - 1;
    if (prefix_margin != trace.prefix_margins[i]) {
      throw PreconditionError(
          "best_prefix: trace does not match the instance (prefix margin " +
          std::to_string(trace.prefix_margins[i]) + " recomputes to " +
          std::to_string(prefix_margin) + ")");
    }
    if (prefix_margin > best_margin) {
      best_margin = prefix_margin;
      best_length = i + 1;
    }
  }

  Solution out;
  for (size_t i = 0; i < best_length; ++i) {
    const int idx = red_index[static_cast<size_t>(trace.picked_red[i])];
    const auto& exemplars = view.exemplars_of[static_cast<size_t>(idx)];
    out.selected.insert(out.selected.end(), exemplars.begin(), exemplars.end());
  }
  std::sort(out.selected.begin(), out.selected.end());
  out.selected.erase(std::unique(out.selected.begin(), out.selected.end()),
                     out.selected.end());
  out.margin = margin(instance, out.selected);
  out.optimal = false;
  return out;
}

Solution augment_full_blue(const Instance& instance, const Solution& solution) {
  if (!classify(instance).is_one_red) {
    throw PreconditionError(
        "augment_full_blue requires a one-red instance");
  }
  require_all_blue_covered(instance, "augment_full_blue");

  const int n = instance.num_features();
  std::vector<char> selected_flag(
      static_cast<size_t>(instance.num_exemplars()) + 1, 0);
  std::vector<char> blue_covered(static_cast<size_t>(n) + 1, 0);
  for (int j : solution.selected) {
    const auto& e = instance.exemplar(j);  // validates the index
    selected_flag[static_cast<size_t>(j)] = 1;
    for (int f : e) {
      if (f >= 1 && f <= n && instance.is_blue(f)) {
        blue_covered[static_cast<size_t>(f)] = 1;
      }
    }
  }

  for (int b : instance.blue()) {
    if (blue_covered[static_cast<size_t>(b)]) continue;
    for (int j = 1; j <= instance.num_exemplars(); ++j) {
      const auto& e = instance.exemplar(j);
      if (!std::binary_search(e.begin(), e.end(), b)) continue;
      selected_flag[static_cast<size_t>(j)] = 1;
      for (int f : e) {
        if (instance.is_blue(f)) blue_covered[static_cast<size_t>(f)] = 1;
      }
      break;
    }
  }

  Solution out;
  for (int j = 1; j <= instance.num_exemplars(); ++j) {
    if (selected_flag[static_cast<size_t>(j)]) out.selected.push_back(j);
  }
  out.margin = margin(instance, out.selected);
  out.optimal = solution.optimal;
  return out;
}

bool check_parekh_slavik(const GreedyTrace& trace, int n_blue, int opt_sc) {
  if (opt_sc < 1) {
    throw PreconditionError("check_parekh_slavik requires opt_sc >= 1");
  }
  long long remaining = n_blue;
  for (int covered : trace.newly_covered) {
    const long long bound =
        remaining > 0 ? (remaining + opt_sc - 1) / opt_sc : 0;
    if (covered < bound) return false;
    remaining -= covered;
  }
  return true;
}

}  // namespace tap
