#pragma once

// Exact solvers for the tractable instance classes, the brute-force
// enumerator, and a dispatcher that preprocesses, splits into components, and
// routes each component to the cheapest applicable solver.

#include <cstdint>
#include <optional>
#include <string>

#include "tap/instance.hpp"

namespace tap {

struct SolverReport {
  Solution solution;
  std::string solver_name;
  bool exact = false;      // true only with an optimality guarantee
  std::uint64_t work = 0;  // candidates evaluated or graph size; diagnostic
};

/// Instances whose exemplars are all-blue or all-red: take exactly the
/// all-blue ones.
SolverReport solve_separable(const Instance& instance);

/// Instances where every feature occurs once: exemplars are disjoint, so take
/// each exemplar whose blue weight exceeds its red weight.
SolverReport solve_one_occurrence(const Instance& instance);

/// Reduced instances where every exemplar is one blue + one red and no
/// feature occurs more than twice. Views red features as nodes and blue
/// features as edges; the optimum is all blue covered at the cost of a
/// minimum vertex cover, found by an alternating sweep over the path/cycle
/// components.
SolverReport solve_two_two(const Instance& instance);

/// Evaluates all 2^m selections. Ties break toward the lexicographically
/// smallest index set. Rejects instances with more than max_exemplars
/// exemplars.
SolverReport solve_brute_force(const Instance& instance, int max_exemplars = 20);

/// One-red instances: enumerates subsets of red features up to the given
/// size budget (all of them when absent) and takes every exemplar whose red
/// is in the subset. Exact when the budget is unbounded.
SolverReport solve_one_red_enumeration(
    const Instance& instance, std::optional<int> max_red_chosen = std::nullopt);

/// Preprocesses with reduce_pure, splits into components, and solves each
/// with the first applicable of: separable, one-occurrence, two-two, brute
/// force (when the component has at most fallback_limit exemplars), greedy
/// best-prefix (one-red components only, exact=false). Throws
/// PreconditionError when a component fits none of these.
SolverReport solve_auto(const Instance& instance, int fallback_limit = 20);

}  // namespace tap
