#pragma once

// Greedy covering for one-red instances: repeatedly pick the red feature
// covering the most uncovered blue features until all blue features are
// covered. On one-red instances the full run is a 0.5-approximation.

#include <cstdint>
#include <vector>

#include "tap/instance.hpp"

namespace tap {

/// Per-iteration record of a greedy run. With g picks, the full-run margin is
/// always num_blue - g.
struct GreedyTrace {
  std::vector<int> picked_red;      // red feature chosen at each iteration
  std::vector<int> newly_covered;   // blue features newly covered (non-increasing)
  std::vector<int> prefix_margins;  // margin after each iteration
};

/// Rule for breaking ties between equally good red features.
struct TieBreak {
  enum class Rule { lowest_id, highest_id, seeded_random };
  Rule rule = Rule::lowest_id;
  std::uint64_t seed = 0;

  static TieBreak lowest() { return {Rule::lowest_id, 0}; }
  static TieBreak highest() { return {Rule::highest_id, 0}; }
  static TieBreak random(std::uint64_t seed) {
    return {Rule::seeded_random, seed};
  }
};

struct GreedyResult {
  Solution solution;  // the full run: every exemplar whose red was picked
  GreedyTrace trace;
};

/// Runs greedy to completion. Requires every exemplar to have exactly one red
/// and at least one blue feature (reduce_pure output form), and every blue
/// feature to occur somewhere.
GreedyResult greedy_one_red(const Instance& instance, TieBreak tie = {});

/// The selection induced by the best prefix of a greedy trace (ties broken
/// toward the shortest prefix; the empty prefix counts with margin 0). Never
/// worse than the full run.
Solution best_prefix(const Instance& instance, const GreedyTrace& trace);

/// Extends a solution until every blue feature is covered, repeatedly adding
/// the lowest-index exemplar holding the lowest uncovered blue feature. On
/// one-red instances each addition costs at most one red, so the margin never
/// decreases.
Solution augment_full_blue(const Instance& instance, const Solution& solution);

/// Checks the per-iteration lower bound on greedy coverage:
///   m_i >= ceil((n_blue - sum_{j<i} m_j) / opt_sc)
/// where opt_sc is the minimum number of red features covering all blue.
bool check_parekh_slavik(const GreedyTrace& trace, int n_blue, int opt_sc);

}  // namespace tap
