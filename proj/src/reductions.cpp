#include "tap/reductions.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "tap/errors.hpp"
#include "tap/greedy.hpp"

namespace tap {

namespace {

std::vector<int> sorted_unique(std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

void require_kind(const ReductionMeta& meta, ReductionKind kind,
                  const Instance& instance, const char* op) {
  const bool kind_ok =
      meta.kind == kind ||
      // vertex cover instances are set cover instances
      (kind == ReductionKind::set_cover &&
       meta.kind == ReductionKind::vertex_cover);
  if (!kind_ok) {
    throw PreconditionError(std::string(op) +
                            ": metadata is for a different reduction kind");
  }
  if (static_cast<int>(meta.features.size()) != instance.num_features() + 1 ||
      static_cast<int>(meta.exemplars.size()) != instance.num_exemplars() + 1) {
    throw PreconditionError(std::string(op) +
                            ": metadata does not match the instance shape");
  }
}

}  // namespace

int CnfSource::max_clause_size() const {
  int result = 0;
  for (const auto& clause : clauses) {
    result = std::max(result,
                      static_cast<int>(sorted_unique(clause).size()));
  }
  return result;
}

int CnfSource::max_var_occurrence() const {
  std::vector<int> occurrence(static_cast<size_t>(n_vars) + 1, 0);
  for (const auto& clause : clauses) {
    for (int literal : sorted_unique(clause)) {
      const int var = literal > 0 ? literal : -literal;
      if (var >= 1 && var <= n_vars) ++occurrence[static_cast<size_t>(var)];
    }
  }
  int result = 0;
  for (int v = 1; v <= n_vars; ++v) {
    result = std::max(result, occurrence[static_cast<size_t>(v)]);
  }
  return result;
}

int cnf_default_penalty(const CnfSource& source) {
  return static_cast<int>(source.clauses.size()) + 1;
}

int cnf_default_reward(const CnfSource& source) {
  return static_cast<int>(source.clauses.size()) + 2;
}

int cnf_tightened_penalty_reward(const CnfSource& source) {
  return source.max_var_occurrence() / 2;
}

int KdmSource::total_elements() const {
  int total = 0;
  for (int s : dimension_sizes) total += s;
  return total;
}

int KdmSource::dimension_offset(int dim) const {
  int offset = 0;
  for (int d = 1; d < dim; ++d) {
    offset += dimension_sizes[static_cast<size_t>(d - 1)];
  }
  return offset;
}

GeneratedInstance from_set_cover(const SetCoverSource& source) {
  const int universe = source.universe_size;
  const int n_sets = static_cast<int>(source.sets.size());
  if (universe < 1) {
    throw ValidationError("set cover source has an empty universe");
  }

  std::vector<char> element_covered(static_cast<size_t>(universe) + 1, 0);
  std::vector<std::vector<int>> sets;
  for (int i = 1; i <= n_sets; ++i) {
    auto set = sorted_unique(source.sets[static_cast<size_t>(i - 1)]);
    if (set.empty()) {
      throw ValidationError("set " + std::to_string(i) + " is empty");
    }
    for (int element : set) {
      if (element < 1 || element > universe) {
        throw ValidationError("set " + std::to_string(i) + " contains element " +
                              std::to_string(element) + " outside 1.." +
                              std::to_string(universe));
      }
      element_covered[static_cast<size_t>(element)] = 1;
    }
    sets.push_back(std::move(set));
  }
  for (int element = 1; element <= universe; ++element) {
    if (!element_covered[static_cast<size_t>(element)]) {
      throw ValidationError("element " + std::to_string(element) +
                            " appears in no set");
    }
  }

  GeneratedInstance out;
  out.meta.kind = ReductionKind::set_cover;
  out.meta.universe_size = universe;
  out.meta.n_sets = n_sets;
  out.meta.features.assign(static_cast<size_t>(universe + n_sets) + 1, {});
  out.meta.exemplars.assign(1, {});

  std::vector<int> blue;
  for (int element = 1; element <= universe; ++element) {
    blue.push_back(element);
    out.meta.features[static_cast<size_t>(element)] = {
        FeatureProvenance::Role::element, element};
  }
  for (int i = 1; i <= n_sets; ++i) {
    out.meta.features[static_cast<size_t>(universe + i)] = {
        FeatureProvenance::Role::set_choice, i};
  }

  std::vector<std::vector<int>> exemplars;
  for (int i = 1; i <= n_sets; ++i) {
    for (int element : sets[static_cast<size_t>(i - 1)]) {
      exemplars.push_back({element, universe + i});
      out.meta.exemplars.push_back({i, element});
    }
  }
  out.instance = Instance(universe + n_sets, std::move(blue),
                          std::move(exemplars));
  return out;
}

GeneratedInstance from_vertex_cover(const VertexCoverSource& source) {
  if (source.n_nodes < 1) {
    throw ValidationError("graph has no nodes");
  }
  if (source.edges.empty()) {
    throw ValidationError("graph has no edges");
  }
  SetCoverSource cover;
  cover.universe_size = static_cast<int>(source.edges.size());
  cover.sets.assign(static_cast<size_t>(source.n_nodes), {});
  for (int e = 1; e <= cover.universe_size; ++e) {
    const auto& [u, v] = source.edges[static_cast<size_t>(e - 1)];
    for (int node : {u, v}) {
      if (node < 1 || node > source.n_nodes) {
        throw ValidationError("edge " + std::to_string(e) +
                              " touches node " + std::to_string(node) +
                              " outside 1.." + std::to_string(source.n_nodes));
      }
    }
    cover.sets[static_cast<size_t>(u - 1)].push_back(e);
    if (v != u) cover.sets[static_cast<size_t>(v - 1)].push_back(e);
  }
  for (int node = 1; node <= source.n_nodes; ++node) {
    if (cover.sets[static_cast<size_t>(node - 1)].empty()) {
      throw ValidationError("node " + std::to_string(node) +
                            " is isolated; its choice feature would occur in "
                            "no exemplar");
    }
  }
  GeneratedInstance out = from_set_cover(cover);
  out.meta.kind = ReductionKind::vertex_cover;
  return out;
}

std::vector<int> to_set_cover_solution(const ReductionMeta& meta,
                                       const Instance& instance,
                                       const Solution& solution) {
  require_kind(meta, ReductionKind::set_cover, instance, "to_set_cover_solution");
  const Solution full = augment_full_blue(instance, solution);
  std::vector<int> sets;
  for (int f : covered(instance, full.selected).red) {
    sets.push_back(meta.features[static_cast<size_t>(f)].ref);
  }
  return sorted_unique(std::move(sets));
}

namespace {

void validate_cnf(const CnfSource& source) {
  if (source.n_vars < 0) {
    throw ValidationError("negative variable count");
  }
  for (size_t c = 0; c < source.clauses.size(); ++c) {
    if (source.clauses[c].empty()) {
      throw ValidationError("clause " + std::to_string(c + 1) + " is empty");
    }
    for (int literal : source.clauses[c]) {
      const int var = literal > 0 ? literal : -literal;
      if (literal == 0 || var > source.n_vars) {
        throw ValidationError("clause " + std::to_string(c + 1) +
                              " contains literal " + std::to_string(literal) +
                              " outside the declared variables");
      }
    }
  }
}

}  // namespace

GeneratedInstance from_cnf(const CnfSource& source, int penalty_per_exemplar,
                           int reward_per_variable) {
  validate_cnf(source);
  if (penalty_per_exemplar < 0 || reward_per_variable < 0) {
    throw ValidationError("penalty and reward counts must be nonnegative");
  }
  const int n = source.n_vars;
  const int m = static_cast<int>(source.clauses.size());
  const int p = penalty_per_exemplar;
  const int q = reward_per_variable;

  // Feature layout: [1..m] clause, then n blocks of q rewards, then 2n blocks
  // of p penalties. Exemplar 2i-1 is variable i's true literal, 2i its false.
  const int reward_base = m;
  const int penalty_base = m + n * q;
  const int total_features = m + n * q + 2 * n * p;

  GeneratedInstance out;
  out.meta.kind = ReductionKind::cnf;
  out.meta.n_vars = n;
  out.meta.penalty_per_exemplar = p;
  out.meta.reward_per_variable = q;
  out.meta.features.assign(static_cast<size_t>(total_features) + 1, {});
  out.meta.exemplars.assign(static_cast<size_t>(2 * n) + 1, {});

  std::vector<int> blue;
  for (int c = 1; c <= m; ++c) {
    blue.push_back(c);
    out.meta.features[static_cast<size_t>(c)] = {FeatureProvenance::Role::clause,
                                                 c};
  }
  for (int i = 1; i <= n; ++i) {
    for (int t = 1; t <= q; ++t) {
      const int f = reward_base + (i - 1) * q + t;
      blue.push_back(f);
      out.meta.features[static_cast<size_t>(f)] = {
          FeatureProvenance::Role::reward, i};
    }
  }
  for (int e = 1; e <= 2 * n; ++e) {
    for (int t = 1; t <= p; ++t) {
      const int f = penalty_base + (e - 1) * p + t;
      out.meta.features[static_cast<size_t>(f)] = {
          FeatureProvenance::Role::penalty, e};
    }
  }

  std::vector<std::vector<int>> exemplars(static_cast<size_t>(2 * n));
  for (int i = 1; i <= n; ++i) {
    out.meta.exemplars[static_cast<size_t>(2 * i - 1)] = {i, 1};
    out.meta.exemplars[static_cast<size_t>(2 * i)] = {i, 0};
    for (int t = 1; t <= q; ++t) {
      const int f = reward_base + (i - 1) * q + t;
      exemplars[static_cast<size_t>(2 * i - 2)].push_back(f);
      exemplars[static_cast<size_t>(2 * i - 1)].push_back(f);
    }
    for (int t = 1; t <= p; ++t) {
      exemplars[static_cast<size_t>(2 * i - 2)].push_back(
          penalty_base + (2 * i - 2) * p + t);
      exemplars[static_cast<size_t>(2 * i - 1)].push_back(
          penalty_base + (2 * i - 1) * p + t);
    }
  }
  for (int c = 1; c <= m; ++c) {
    for (int literal : sorted_unique(source.clauses[static_cast<size_t>(c - 1)])) {
      const int var = literal > 0 ? literal : -literal;
      const int exemplar_id = literal > 0 ? 2 * var - 1 : 2 * var;
      exemplars[static_cast<size_t>(exemplar_id - 1)].push_back(c);
    }
  }

  out.instance = Instance(total_features, std::move(blue), std::move(exemplars));
  return out;
}

CnfAssignment to_assignment(const ReductionMeta& meta, const Instance& instance,
                            const Solution& solution) {
  require_kind(meta, ReductionKind::cnf, instance, "to_assignment");
  const int n = meta.n_vars;

  std::vector<char> selected(static_cast<size_t>(instance.num_exemplars()) + 1,
                             0);
  for (int j : solution.selected) {
    instance.exemplar(j);  // validates
    selected[static_cast<size_t>(j)] = 1;
  }

  auto clause_features_in = [&](int exemplar_id) {
    int count = 0;
    for (int f : instance.exemplar(exemplar_id)) {
      if (meta.features[static_cast<size_t>(f)].role ==
          FeatureProvenance::Role::clause) {
        ++count;
      }
    }
    return count;
  };

  for (int i = 1; i <= n; ++i) {
    const int true_id = 2 * i - 1;
    const int false_id = 2 * i;
    const bool has_true = selected[static_cast<size_t>(true_id)] != 0;
    const bool has_false = selected[static_cast<size_t>(false_id)] != 0;
    if (!has_true && !has_false) {
      selected[static_cast<size_t>(true_id)] = 1;
    } else if (has_true && has_false) {
      // Keep the literal carrying more clauses; ties keep the true literal.
      if (clause_features_in(true_id) < clause_features_in(false_id)) {
        selected[static_cast<size_t>(true_id)] = 0;
      } else {
        selected[static_cast<size_t>(false_id)] = 0;
      }
    }
  }

  CnfAssignment out;
  out.value.assign(static_cast<size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    const bool has_true = selected[static_cast<size_t>(2 * i - 1)] != 0;
    const bool has_false = selected[static_cast<size_t>(2 * i)] != 0;
    if (has_true == has_false) {
      throw Error("to_assignment: repair failed to reach one exemplar per "
                  "variable; this is a bug");
    }
    out.value[static_cast<size_t>(i)] = has_true ? 1 : 0;
  }
  for (int j = 1; j <= instance.num_exemplars(); ++j) {
    if (selected[static_cast<size_t>(j)]) out.repaired.selected.push_back(j);
  }
  out.repaired.margin = margin(instance, out.repaired.selected);
  out.repaired.optimal = false;

  // A clause is satisfied exactly when its feature is covered by the repaired
  // selection (its exemplars are the satisfying literals).
  std::vector<char> clause_satisfied;
  for (int f = 1; f <= instance.num_features(); ++f) {
    if (meta.features[static_cast<size_t>(f)].role ==
        FeatureProvenance::Role::clause) {
      clause_satisfied.push_back(0);
    }
  }
  for (int j = 1; j <= instance.num_exemplars(); ++j) {
    if (!selected[static_cast<size_t>(j)]) continue;
    for (int f : instance.exemplar(j)) {
      const auto& prov = meta.features[static_cast<size_t>(f)];
      if (prov.role == FeatureProvenance::Role::clause) {
        clause_satisfied[static_cast<size_t>(prov.ref - 1)] = 1;
      }
    }
  }
  for (char satisfied : clause_satisfied) out.satisfied += satisfied;
  return out;
}

GeneratedInstance from_kdm(const KdmSource& source) {
  const int k = source.k;
  if (k < 1) {
    throw ValidationError("tuple dimension must be at least 1");
  }
  if (static_cast<int>(source.dimension_sizes.size()) != k) {
    throw ValidationError("expected " + std::to_string(k) +
                          " dimension sizes, got " +
                          std::to_string(source.dimension_sizes.size()));
  }
  for (int d = 1; d <= k; ++d) {
    if (source.dimension_sizes[static_cast<size_t>(d - 1)] < 1) {
      throw ValidationError("dimension " + std::to_string(d) + " is empty");
    }
  }
  const int n_elements = source.total_elements();
  const int n_tuples = static_cast<int>(source.tuples.size());

  std::vector<char> element_used(static_cast<size_t>(n_elements) + 1, 0);
  for (int j = 1; j <= n_tuples; ++j) {
    const auto& tuple = source.tuples[static_cast<size_t>(j - 1)];
    if (static_cast<int>(tuple.size()) != k) {
      throw ValidationError("tuple " + std::to_string(j) + " has " +
                            std::to_string(tuple.size()) + " components, not " +
                            std::to_string(k));
    }
    for (int d = 1; d <= k; ++d) {
      const int element = tuple[static_cast<size_t>(d - 1)];
      const int low = source.dimension_offset(d) + 1;
      const int high =
          source.dimension_offset(d) + source.dimension_sizes[static_cast<size_t>(d - 1)];
      if (element < low || element > high) {
        throw ValidationError("tuple " + std::to_string(j) + " component " +
                              std::to_string(d) + " is " +
                              std::to_string(element) + ", outside dimension " +
                              std::to_string(d) + "'s range " +
                              std::to_string(low) + ".." + std::to_string(high));
      }
      element_used[static_cast<size_t>(element)] = 1;
    }
  }
  for (int element = 1; element <= n_elements; ++element) {
    if (!element_used[static_cast<size_t>(element)]) {
      throw ValidationError("element " + std::to_string(element) +
                            " appears in no tuple");
    }
  }

  GeneratedInstance out;
  out.meta.kind = ReductionKind::kdm;
  out.meta.k = k;
  out.meta.n_tuples = n_tuples;
  const int total_features = n_elements + (k - 1) * n_tuples;
  out.meta.features.assign(static_cast<size_t>(total_features) + 1, {});
  out.meta.exemplars.assign(static_cast<size_t>(k * n_tuples) + 1, {});

  std::vector<int> blue;
  for (int element = 1; element <= n_elements; ++element) {
    blue.push_back(element);
    out.meta.features[static_cast<size_t>(element)] = {
        FeatureProvenance::Role::element, element};
  }
  for (int j = 1; j <= n_tuples; ++j) {
    for (int t = 1; t <= k - 1; ++t) {
      out.meta.features[static_cast<size_t>(n_elements + (j - 1) * (k - 1) + t)] =
          {FeatureProvenance::Role::tuple_cost, j};
    }
  }

  std::vector<std::vector<int>> exemplars;
  for (int j = 1; j <= n_tuples; ++j) {
    std::vector<int> reds;
    for (int t = 1; t <= k - 1; ++t) {
      reds.push_back(n_elements + (j - 1) * (k - 1) + t);
    }
    for (int d = 1; d <= k; ++d) {
      std::vector<int> features = reds;
      features.push_back(source.tuples[static_cast<size_t>(j - 1)][static_cast<size_t>(d - 1)]);
      exemplars.push_back(std::move(features));
      out.meta.exemplars[static_cast<size_t>((j - 1) * k + d)] = {j, d};
    }
  }
  out.instance = Instance(total_features, std::move(blue), std::move(exemplars));
  return out;
}

Solution canonicalize_kdm(const ReductionMeta& meta, const Instance& instance,
                          const Solution& solution) {
  require_kind(meta, ReductionKind::kdm, instance, "canonicalize_kdm");
  const int n_tuples = meta.n_tuples;

  std::vector<std::vector<int>> group_members(static_cast<size_t>(n_tuples) + 1);
  for (int j = 1; j <= instance.num_exemplars(); ++j) {
    group_members[static_cast<size_t>(meta.exemplars[static_cast<size_t>(j)].ref)]
        .push_back(j);
  }

  // Selecting any member of a group stands for selecting the whole group
  // (completion never loses margin: the group's reds are already paid).
  std::vector<char> group_selected(static_cast<size_t>(n_tuples) + 1, 0);
  for (int j : solution.selected) {
    instance.exemplar(j);  // validates
    group_selected[static_cast<size_t>(meta.exemplars[static_cast<size_t>(j)].ref)] =
        1;
  }

  auto blues_of_group = [&](int tuple) {
    std::vector<int> blues;
    for (int j : group_members[static_cast<size_t>(tuple)]) {
      for (int f : instance.exemplar(j)) {
        if (instance.is_blue(f)) blues.push_back(f);
      }
    }
    return sorted_unique(std::move(blues));
  };

  // While two selected groups share an element, drop the lowest tuple id
  // involved in any conflict. The shared element stays covered by the other
  // group, so each drop trades k-1 reds for at most k-1 blues.
  while (true) {
    std::vector<int> element_owner(
        static_cast<size_t>(instance.num_features()) + 1, 0);
    int drop = 0;
    for (int tuple = 1; tuple <= n_tuples; ++tuple) {
      if (!group_selected[static_cast<size_t>(tuple)]) continue;
      for (int b : blues_of_group(tuple)) {
        const int other = element_owner[static_cast<size_t>(b)];
        if (other != 0) {
          const int lower = std::min(other, tuple);
          if (drop == 0 || lower < drop) drop = lower;
        } else {
          element_owner[static_cast<size_t>(b)] = tuple;
        }
      }
    }
    if (drop == 0) break;
    group_selected[static_cast<size_t>(drop)] = 0;
  }

  Solution out;
  for (int tuple = 1; tuple <= n_tuples; ++tuple) {
    if (!group_selected[static_cast<size_t>(tuple)]) continue;
    for (int j : group_members[static_cast<size_t>(tuple)]) {
      out.selected.push_back(j);
    }
  }
  std::sort(out.selected.begin(), out.selected.end());
  out.margin = margin(instance, out.selected);
  out.optimal = solution.optimal;
  return out;
}

std::vector<int> to_matching(const ReductionMeta& meta, const Instance& instance,
                             const Solution& solution) {
  const Solution canonical = canonicalize_kdm(meta, instance, solution);
  std::vector<int> tuples;
  for (int j : canonical.selected) {
    tuples.push_back(meta.exemplars[static_cast<size_t>(j)].ref);
  }
  return sorted_unique(std::move(tuples));
}

namespace {

// One constructive sampling attempt; returns false when it paints itself into
// a corner (caller retries with a different stream).
bool try_random_instance(const RandomInstanceParams& params,
                         std::mt19937_64& rng, Instance& out) {
  const int n = params.n_features;
  const int m = params.m_exemplars;
  const int cap = params.max_occurrence;
  const int max_weight = params.max_weight;

  // Color the universe.
  int n_blue = static_cast<int>(params.blue_fraction * n + 0.5);
  n_blue = std::min(std::max(n_blue, 1), n);
  if (params.one_red) {
    n_blue = std::min(n_blue, n - 1);
    // Reds must each be some exemplar's red and every exemplar needs one red
    // and one blue seed, so both colors need at least ceil(m/cap) features.
    int n_red = n - n_blue;
    const int min_red = (m + cap - 1) / cap;
    const int max_red = std::min(m, n - min_red);
    if (min_red > max_red) return false;
    n_red = std::min(std::max(n_red, min_red), max_red);
    n_blue = n - n_red;
    if (n_blue < 1) return false;
  }

  std::vector<int> ids(static_cast<size_t>(n));
  for (int f = 1; f <= n; ++f) ids[static_cast<size_t>(f - 1)] = f;
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<char> is_blue(static_cast<size_t>(n) + 1, 0);
  std::vector<int> blues, reds;
  for (int i = 0; i < n; ++i) {
    if (i < n_blue) {
      is_blue[static_cast<size_t>(ids[static_cast<size_t>(i)])] = 1;
      blues.push_back(ids[static_cast<size_t>(i)]);
    } else {
      reds.push_back(ids[static_cast<size_t>(i)]);
    }
  }
  std::sort(blues.begin(), blues.end());
  std::sort(reds.begin(), reds.end());

  std::vector<int> occurrence(static_cast<size_t>(n) + 1, 0);
  std::vector<std::set<int>> exemplars(static_cast<size_t>(m));

  auto pick_from = [&](const std::vector<int>& pool) -> int {
    // Prefer uncovered features so the repair pass stays small.
    std::vector<int> fresh, open;
    for (int f : pool) {
      if (occurrence[static_cast<size_t>(f)] == 0) fresh.push_back(f);
      else if (occurrence[static_cast<size_t>(f)] < cap) open.push_back(f);
    }
    const auto& candidates = fresh.empty() ? open : fresh;
    if (candidates.empty()) return 0;
    return candidates[static_cast<size_t>(rng() % candidates.size())];
  };

  // Seed every exemplar: one red (one_red) or one feature (general), plus one
  // blue for one_red so exemplars stay purple.
  if (params.one_red) {
    const int n_red = static_cast<int>(reds.size());
    std::vector<int> red_order = reds;
    std::shuffle(red_order.begin(), red_order.end(), rng);
    for (int j = 0; j < m; ++j) {
      int red;
      if (j < n_red) {
        red = red_order[static_cast<size_t>(j)];  // cover every red once
      } else {
        red = pick_from(reds);
        if (red == 0) return false;
      }
      ++occurrence[static_cast<size_t>(red)];
      exemplars[static_cast<size_t>(j)].insert(red);
      const int blue = pick_from(blues);
      if (blue == 0) return false;
      ++occurrence[static_cast<size_t>(blue)];
      exemplars[static_cast<size_t>(j)].insert(blue);
    }
  } else {
    std::vector<int> all = blues;
    all.insert(all.end(), reds.begin(), reds.end());
    std::sort(all.begin(), all.end());
    for (int j = 0; j < m; ++j) {
      const int f = pick_from(all);
      if (f == 0) return false;
      ++occurrence[static_cast<size_t>(f)];
      exemplars[static_cast<size_t>(j)].insert(f);
    }
  }

  // Repair first: inject features that never occurred into exemplars with
  // room, while the spare capacity is still intact.
  for (int f = 1; f <= n; ++f) {
    if (occurrence[static_cast<size_t>(f)] > 0) continue;
    if (params.one_red && !is_blue[static_cast<size_t>(f)]) {
      return false;  // an uncovered red cannot be injected without a new slot
    }
    std::vector<int> hosts;
    for (int j = 0; j < m; ++j) {
      if (static_cast<int>(exemplars[static_cast<size_t>(j)].size()) < max_weight &&
          !exemplars[static_cast<size_t>(j)].count(f)) {
        hosts.push_back(j);
      }
    }
    if (hosts.empty()) return false;
    const int j = hosts[static_cast<size_t>(rng() % hosts.size())];
    ++occurrence[static_cast<size_t>(f)];
    exemplars[static_cast<size_t>(j)].insert(f);
  }

  // Optional density: grow exemplars with random features under both caps.
  // One-red exemplars may only grow by blue features.
  for (int j = 0; j < m; ++j) {
    auto& exemplar = exemplars[static_cast<size_t>(j)];
    while (static_cast<int>(exemplar.size()) < max_weight && (rng() & 1)) {
      std::vector<int> candidates;
      for (int f : blues) {
        if (occurrence[static_cast<size_t>(f)] < cap && !exemplar.count(f)) {
          candidates.push_back(f);
        }
      }
      if (!params.one_red) {
        for (int f : reds) {
          if (occurrence[static_cast<size_t>(f)] < cap && !exemplar.count(f)) {
            candidates.push_back(f);
          }
        }
      }
      if (candidates.empty()) break;
      const int f = candidates[static_cast<size_t>(rng() % candidates.size())];
      ++occurrence[static_cast<size_t>(f)];
      exemplar.insert(f);
    }
  }

  std::vector<std::vector<int>> exemplar_lists;
  for (const auto& exemplar : exemplars) {
    exemplar_lists.emplace_back(exemplar.begin(), exemplar.end());
  }
  out = Instance(n, blues, std::move(exemplar_lists));
  return validate(out).empty();
}

}  // namespace

Instance random_instance(const RandomInstanceParams& params) {
  const int n = params.n_features;
  const int m = params.m_exemplars;
  if (n < 1 || m < 1) {
    throw ValidationError("need at least one feature and one exemplar");
  }
  if (params.max_weight < 1 || params.max_occurrence < 1) {
    throw ValidationError("weight and occurrence caps must be at least 1");
  }
  if (params.blue_fraction < 0.0 || params.blue_fraction > 1.0) {
    throw ValidationError("blue fraction must lie in [0, 1]");
  }
  if (params.one_red && params.max_weight < 2) {
    throw ValidationError("one-red exemplars need weight at least 2");
  }
  if (params.one_red && n < 2) {
    throw ValidationError("one-red instances need a blue and a red feature");
  }
  if (static_cast<long long>(m) * params.max_weight < n) {
    throw ValidationError("cannot cover " + std::to_string(n) +
                          " features with " + std::to_string(m) +
                          " exemplars of weight at most " +
                          std::to_string(params.max_weight));
  }
  if (static_cast<long long>(n) * params.max_occurrence <
      static_cast<long long>(m) * (params.one_red ? 2 : 1)) {
    throw ValidationError("not enough feature occurrences to fill " +
                          std::to_string(m) + " exemplars");
  }

  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    std::mt19937_64 rng(params.seed * 0x9e3779b97f4a7c15ULL + attempt);
    Instance out;
    if (try_random_instance(params, rng, out)) return out;
  }
  throw ValidationError(
      "could not sample an instance with the requested caps; parameters are "
      "too tight");
}

}  // namespace tap
