#pragma once

// Instance generators: encode Set Cover / Vertex Cover, Max-SAT, and
// k-dimensional matching problems as instances whose optimal margin carries
// the source optimum, with provenance metadata for mapping solutions back.
// Also a seeded random-instance generator for corpus construction.

#include <cstdint>
#include <vector>

#include "tap/instance.hpp"

namespace tap {

struct SetCoverSource {
  int universe_size = 0;
  std::vector<std::vector<int>> sets;  // element ids, 1-based
};

struct VertexCoverSource {
  int n_nodes = 0;
  std::vector<std::pair<int, int>> edges;  // node ids, 1-based
};

struct CnfSource {
  int n_vars = 0;
  std::vector<std::vector<int>> clauses;  // signed 1-based variable ids

  int max_clause_size() const;
  /// Literal occurrences of the busiest variable, counting duplicate
  /// literals within a clause once.
  int max_var_occurrence() const;
};

/// Penalty/reward preset reproducing the margin = satisfied + n construction.
int cnf_default_penalty(const CnfSource& source);   // m + 1
int cnf_default_reward(const CnfSource& source);    // m + 2
/// Preset where penalties and rewards cancel: margin = satisfied count.
int cnf_tightened_penalty_reward(const CnfSource& source);  // floor(a / 2)

struct KdmSource {
  int k = 0;
  std::vector<int> dimension_sizes;
  // Element ids are global: dimension d owns the contiguous range following
  // dimensions 1..d-1. Tuple component i must lie in dimension i's range.
  std::vector<std::vector<int>> tuples;

  int total_elements() const;
  /// First global id of dimension `dim` (1-based) minus one.
  int dimension_offset(int dim) const;
};

enum class ReductionKind { set_cover, cnf, kdm, vertex_cover };

struct FeatureProvenance {
  enum class Role {
    element,    // set cover / kdm: source element (vc: edge)
    set_choice, // set cover: the set this red feature prices (vc: node)
    clause,     // cnf: clause id
    reward,     // cnf: variable id
    penalty,    // cnf: exemplar id it penalizes
    tuple_cost  // kdm: tuple id
  };
  Role role = Role::element;
  int ref = 0;
};

struct ExemplarProvenance {
  // set cover: ref=set id, aux=element id
  // cnf:       ref=variable id, aux=1 for the true literal, 0 for false
  // kdm:       ref=tuple id, aux=slot (dimension) index
  int ref = 0;
  int aux = 0;
};

struct ReductionMeta {
  ReductionKind kind = ReductionKind::set_cover;
  std::vector<FeatureProvenance> features;    // indexed by feature id, [0] unused
  std::vector<ExemplarProvenance> exemplars;  // indexed by exemplar id, [0] unused
  int penalty_per_exemplar = 0;  // cnf
  int reward_per_variable = 0;   // cnf
  int n_vars = 0;                // cnf
  int k = 0;                     // kdm
  int n_tuples = 0;              // kdm
  int universe_size = 0;         // set cover / vc (edge count)
  int n_sets = 0;                // set cover / vc (node count)
};

struct GeneratedInstance {
  Instance instance;
  ReductionMeta meta;
};

/// One blue feature per element, one red feature per set, and a weight-2
/// exemplar {set's red, element's blue} per membership. The optimal margin is
/// universe_size minus the minimum cover size.
GeneratedInstance from_set_cover(const SetCoverSource& source);

/// The set-cover construction applied to a graph's edge/node incidence:
/// edges are elements, nodes are sets. Blue features occur exactly twice.
GeneratedInstance from_vertex_cover(const VertexCoverSource& source);

/// Augments to full blue coverage, then returns the set ids whose red
/// features are covered: a valid cover of size universe_size - margin.
std::vector<int> to_set_cover_solution(const ReductionMeta& meta,
                                       const Instance& instance,
                                       const Solution& solution);

/// Two exemplars per variable (true/false literal), clause features placed in
/// the exemplars of their satisfying literals, `penalty_per_exemplar` unique
/// red features per exemplar and `reward_per_variable` blue features shared
/// by each variable's pair. With the default preset the optimal margin is
/// maxsat + n_vars; with the tightened preset it is maxsat.
GeneratedInstance from_cnf(const CnfSource& source, int penalty_per_exemplar,
                           int reward_per_variable);

struct CnfAssignment {
  std::vector<char> value;  // indexed by variable id, [0] unused
  int satisfied = 0;
  Solution repaired;  // one exemplar per variable, margin never below input
};

/// Repairs a selection to one-exemplar-per-variable form (adding the true
/// literal when neither is chosen; dropping the literal with fewer clause
/// features when both are, ties dropping the false one) and reads off the
/// assignment and its satisfied-clause count.
CnfAssignment to_assignment(const ReductionMeta& meta, const Instance& instance,
                            const Solution& solution);

/// One blue feature per element, k-1 red features per tuple, and k exemplars
/// per tuple, each pairing one component's blue feature with all of the
/// tuple's reds. The optimal margin equals the maximum matching size.
GeneratedInstance from_kdm(const KdmSource& source);

/// Completes partially selected tuple groups, then drops the lower tuple of
/// any two selected groups sharing a blue feature until none do. The margin
/// never decreases and ends equal to the number of selected groups.
Solution canonicalize_kdm(const ReductionMeta& meta, const Instance& instance,
                          const Solution& solution);

/// Canonicalizes and returns the selected tuple ids: a set of pairwise
/// disjoint tuples of size margin(canonical solution).
std::vector<int> to_matching(const ReductionMeta& meta, const Instance& instance,
                             const Solution& solution);

struct RandomInstanceParams {
  std::uint64_t seed = 0;
  int n_features = 0;
  int m_exemplars = 0;
  double blue_fraction = 0.5;
  int max_weight = 3;
  int max_occurrence = 3;
  bool one_red = false;
};

/// Deterministic for a fixed seed. The result passes validate() and respects
/// the weight/occurrence caps and the one_red flag (one red plus at least one
/// blue per exemplar). Throws ValidationError when the parameters cannot be
/// satisfied.
Instance random_instance(const RandomInstanceParams& params);

}  // namespace tap
