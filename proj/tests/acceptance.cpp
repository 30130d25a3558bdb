// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Every margin comparison is exact integer equality against brute force.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tap/greedy.hpp"
#include "tap/io.hpp"
#include "tap/preprocess.hpp"
#include "tap/reductions.hpp"
#include "tap/solvers.hpp"
#include "test_support.hpp"

using namespace tap;
using namespace tap::testing;

namespace {

int g_failed_criteria = 0;

void report(int number, const std::string& name, int failures, long long total) {
  const bool ok = failures == 0;
  if (!ok) ++g_failed_criteria;
  std::printf("criterion %d (%s): %s (%lld checks, %d failed)\n", number,
              name.c_str(), ok ? "PASS" : "FAIL", total, failures);
  std::fflush(stdout);
}

RandomInstanceParams mixed_params(std::uint64_t seed) {
  RandomInstanceParams params;
  params.seed = seed;
  params.n_features = 6 + static_cast<int>(seed % 9);   // 6..14
  params.m_exemplars = 3 + static_cast<int>(seed % 10); // 3..12
  params.blue_fraction = 0.3 + 0.1 * static_cast<double>(seed % 5);
  params.max_weight = 2 + static_cast<int>(seed % 3);   // 2..4
  params.max_occurrence = 1 + static_cast<int>(seed % 4);
  params.one_red = seed % 3 == 0;
  // Lift the caps until the combination is satisfiable.
  const int seeds_per_exemplar = params.one_red ? 2 : 1;
  while (params.m_exemplars * params.max_weight < params.n_features) {
    ++params.max_weight;
  }
  while (params.n_features * params.max_occurrence <
         params.m_exemplars * seeds_per_exemplar) {
    ++params.max_occurrence;
  }
  if (params.one_red) {
    params.max_weight = std::max(params.max_weight, 2);
    params.max_occurrence = std::max(params.max_occurrence, 2);
    auto min_color = [&] {
      return (params.m_exemplars + params.max_occurrence - 1) /
             params.max_occurrence;
    };
    while (2 * min_color() > params.n_features) ++params.max_occurrence;
    while (params.m_exemplars * (params.max_weight - 1) <
           params.n_features - min_color()) {
      ++params.max_weight;
    }
  }
  return params;
}

RandomInstanceParams one_red_params(std::uint64_t seed) {
  RandomInstanceParams params;
  params.seed = seed;
  params.n_features = 8 + static_cast<int>(seed % 6);   // 8..13
  params.m_exemplars = 5 + static_cast<int>(seed % 8);  // 5..12
  params.blue_fraction = 0.5 + 0.05 * static_cast<double>(seed % 5);
  params.max_weight = 3 + static_cast<int>(seed % 2);
  params.max_occurrence = 3;
  params.one_red = true;
  return params;
}

// Random instance whose exemplars are all pure (all-blue or all-red).
Instance random_separable(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = 6 + static_cast<int>(rng() % 6);
  const int n_blue = 1 + static_cast<int>(rng() % (n - 1));
  std::vector<int> blue;
  for (int f = 1; f <= n_blue; ++f) blue.push_back(f);

  std::vector<std::vector<int>> exemplars;
  std::vector<char> used(static_cast<size_t>(n) + 1, 0);
  const int m = 3 + static_cast<int>(rng() % 5);
  for (int j = 0; j < m; ++j) {
    const bool make_blue = rng() & 1;
    const int low = make_blue ? 1 : n_blue + 1;
    const int high = make_blue ? n_blue : n;
    if (low > high) continue;
    std::vector<int> features;
    const int weight = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < weight; ++t) {
      const int f = low + static_cast<int>(rng() % (high - low + 1));
      features.push_back(f);
      used[static_cast<size_t>(f)] = 1;
    }
    exemplars.push_back(std::move(features));
  }
  for (int f = 1; f <= n; ++f) {  // cover leftovers with singletons
    if (!used[static_cast<size_t>(f)]) exemplars.push_back({f});
  }
  return Instance(n, std::move(blue), std::move(exemplars));
}

bool criterion_1() {
  int failures = 0;
  long long checks = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Instance instance = random_instance(mixed_params(seed));
    const SolverReport automatic = solve_auto(instance, 12);
    const SolverReport brute = solve_brute_force(instance, 12);
    ++checks;
    if (!automatic.exact ||
        automatic.solution.margin != brute.solution.margin ||
        margin(instance, automatic.solution.selected) !=
            automatic.solution.margin) {
      ++failures;
    }
  }
  report(1, "auto matches brute force on 1000 mixed instances", failures,
         checks);
  return failures == 0;
}

bool criterion_2() {
  int failures = 0;
  long long checks = 0;

  for (std::uint64_t seed = 0; seed < 300; ++seed) {  // separable
    const Instance instance = random_separable(seed);
    ++checks;
    if (solve_separable(instance).solution.margin !=
        solve_brute_force(instance, 20).solution.margin) {
      ++failures;
    }
  }
  for (std::uint64_t seed = 0; seed < 300; ++seed) {  // one occurrence
    RandomInstanceParams params;
    params.seed = seed;
    params.n_features = 9 + static_cast<int>(seed % 4);
    params.m_exemplars = 3 + static_cast<int>(seed % 3);
    params.max_weight =
        std::max(3, (params.n_features + params.m_exemplars - 1) /
                        params.m_exemplars);
    params.max_occurrence = 1;
    const Instance instance = random_instance(params);
    ++checks;
    if (solve_one_occurrence(instance).solution.margin !=
        solve_brute_force(instance, 20).solution.margin) {
      ++failures;
    }
  }
  for (std::uint64_t seed = 0; seed < 300; ++seed) {  // two-two after reduce
    RandomInstanceParams params;
    params.seed = seed;
    params.n_features = 8 + static_cast<int>(seed % 5);
    params.m_exemplars = 6 + static_cast<int>(seed % 5);
    params.max_weight = 2;
    params.max_occurrence = 2;
    params.one_red = seed % 2 == 0;
    const Instance instance = random_instance(params);
    const ReducedInstance reduced = reduce_pure(instance);
    ++checks;
    if (solve_two_two(reduced.residual).solution.margin !=
        solve_brute_force(reduced.residual, 20).solution.margin) {
      ++failures;
    }
  }
  report(2, "class solvers match brute force, 300 instances each", failures,
         checks);
  return failures == 0;
}

// Shared corpus for criteria 3-5: greedy runs plus their traces.
struct GreedyRun {
  Instance instance;
  GreedyTrace trace;
  int full_margin;
  int optimum;
  int opt_sc;
};

std::vector<GreedyRun> greedy_corpus() {
  std::vector<GreedyRun> runs;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const Instance instance = random_instance(one_red_params(seed));
    const int optimum = solve_brute_force(instance, 12).solution.margin;
    const int opt_sc = oracle_min_red_cover(instance);
    for (TieBreak tie :
         {TieBreak::lowest(), TieBreak::highest(), TieBreak::random(seed)}) {
      const GreedyResult result = greedy_one_red(instance, tie);
      runs.push_back({instance, result.trace, result.solution.margin, optimum,
                      opt_sc});
    }
  }
  return runs;
}

bool criterion_3(const std::vector<GreedyRun>& runs) {
  int failures = 0;
  long long checks = 0;
  for (const GreedyRun& run : runs) {
    ++checks;
    if (2 * run.full_margin < run.optimum) ++failures;
  }

  // Tightness: the relabeled worked example is exactly a factor of two off.
  const Instance adversarial = greedy_tightness_instance_relabeled();
  const GreedyResult greedy = greedy_one_red(adversarial, TieBreak::lowest());
  const int optimum = solve_brute_force(adversarial, 6).solution.margin;
  ++checks;
  if (greedy.solution.margin != 1 || optimum != 2) ++failures;

  report(3, "greedy half-approximation plus exact tightness example", failures,
         checks);
  return failures == 0;
}

bool criterion_4(const std::vector<GreedyRun>& runs) {
  int failures = 0;
  long long checks = 0;
  for (const GreedyRun& run : runs) {
    ++checks;
    if (run.opt_sc < 1 ||
        !check_parekh_slavik(run.trace, run.instance.num_blue(), run.opt_sc)) {
      ++failures;
    }
  }
  report(4, "per-iteration coverage bound on every greedy trace", failures,
         checks);
  return failures == 0;
}

bool criterion_5(const std::vector<GreedyRun>& runs) {
  int failures = 0;
  long long checks = 0;
  for (const GreedyRun& run : runs) {
    const int n_blue = run.instance.num_blue();
    const int big_k = (n_blue - run.opt_sc + 1) / 2;  // ceil((n - opt) / 2)
    int sum = 0;
    for (size_t i = 0;
         i < run.trace.newly_covered.size() && i < static_cast<size_t>(big_k);
         ++i) {
      sum += run.trace.newly_covered[i];
    }
    ++checks;
    if (sum < 2 * big_k) ++failures;
  }
  report(5, "first K greedy picks cover at least 2K blue features", failures,
         checks);
  return failures == 0;
}

bool criterion_6() {
  int failures = 0;
  long long checks = 0;

  for (std::uint64_t seed = 0; seed < 100; ++seed) {  // set cover
    const SetCoverSource source = random_set_cover(seed);
    const GeneratedInstance generated = from_set_cover(source);
    ++checks;
    if (solve_brute_force(generated.instance, 20).solution.margin !=
        source.universe_size - oracle_min_set_cover(source)) {
      ++failures;
    }
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) {  // cnf, both presets
    const CnfSource source = random_cnf(seed);
    const int maxsat = oracle_max_sat(source);
    const GeneratedInstance defaults = from_cnf(
        source, cnf_default_penalty(source), cnf_default_reward(source));
    ++checks;
    if (solve_brute_force(defaults.instance, 20).solution.margin !=
        maxsat + source.n_vars) {
      ++failures;
    }
    const int pq = cnf_tightened_penalty_reward(source);
    const GeneratedInstance tightened = from_cnf(source, pq, pq);
    ++checks;
    if (solve_brute_force(tightened.instance, 20).solution.margin != maxsat) {
      ++failures;
    }
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) {  // 3-dimensional matching
    const KdmSource source = random_3dm(seed, 6);
    const GeneratedInstance generated = from_kdm(source);
    ++checks;
    if (solve_brute_force(generated.instance, 20).solution.margin !=
        oracle_max_matching(source)) {
      ++failures;
    }
  }

  // The worked seven-triple example, including its exact shape.
  const GeneratedInstance worked = from_kdm(worked_3dm_source());
  ++checks;
  if (worked.instance.num_blue() != 12 || worked.instance.num_red() != 14 ||
      worked.instance.num_exemplars() != 21 ||
      solve_brute_force(worked.instance, 21).solution.margin != 3 ||
      oracle_max_matching(worked_3dm_source()) != 3) {
    ++failures;
  }

  report(6, "reduction correspondences, 100 sources per construction",
         failures, checks);
  return failures == 0;
}

bool criterion_7() {
  int failures = 0;
  long long checks = 0;

  for (std::uint64_t seed = 0; seed < 200; ++seed) {  // collate / shatter
    RandomInstanceParams params;
    params.seed = seed;
    params.n_features = 7 + static_cast<int>(seed % 3);
    params.m_exemplars = 4 + static_cast<int>(seed % 3);
    params.max_weight = 4;
    params.max_occurrence = 3;
    params.one_red = true;
    const Instance instance = random_instance(params);
    const int best = solve_brute_force(instance, 20).solution.margin;
    ++checks;
    if (solve_brute_force(collate(instance).instance, 20).solution.margin !=
            best ||
        solve_brute_force(shatter(instance).instance, 24).solution.margin !=
            best) {
      ++failures;
    }
  }
  for (std::uint64_t seed = 0; seed < 500; ++seed) {  // reduce_pure offset
    const Instance instance = random_instance(mixed_params(seed + 5000));
    const ReducedInstance reduced = reduce_pure(instance);
    ++checks;
    if (solve_brute_force(instance, 12).solution.margin !=
        solve_brute_force(reduced.residual, 12).solution.margin +
            reduced.margin_offset) {
      ++failures;
    }
  }
  report(7, "margin-preserving transforms keep the optimum", failures, checks);
  return failures == 0;
}

bool criterion_8() {
  int failures = 0;
  long long checks = 0;
  for (int edges = 1; edges <= 10; ++edges) {
    const Instance path = path_instance(edges);
    ++checks;
    if (solve_two_two(path).solution.margin != edges / 2 ||
        solve_brute_force(path, 20).solution.margin != edges / 2) {
      ++failures;
    }
  }
  for (int nodes = 3; nodes <= 10; ++nodes) {
    const Instance cycle = cycle_instance(nodes);
    ++checks;
    if (solve_two_two(cycle).solution.margin != nodes / 2 ||
        solve_brute_force(cycle, 20).solution.margin != nodes / 2) {
      ++failures;
    }
  }
  report(8, "path and cycle margins match the closed forms", failures, checks);
  return failures == 0;
}

// ---------------------------------------------------------------------------
// Criterion 9 drives the CLI binary over a generated corpus.

struct Cli {
  std::string dir;

  std::string file(const std::string& name) const { return dir + "/" + name; }

  int run(const std::string& args) const {
    const std::string command = std::string(TAP_CLI_PATH) + " " + args +
                                " > " + file("__out") + " 2> " +
                                file("__err");
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string slurp(const std::string& name) const {
    std::ifstream in(file(name), std::ios::binary);
    std::ostringstream content;
    content << in.rdbuf();
    return content.str();
  }

  void spit(const std::string& name, const std::string& content) const {
    std::ofstream out(file(name), std::ios::binary);
    out << content;
  }
};

bool criterion_9() {
  int failures = 0;
  long long checks = 0;

  char name[] = "/tmp/tap_acceptance_XXXXXX";
  if (!mkdtemp(name)) {
    report(9, "CLI contract", 1, 1);
    return false;
  }
  const Cli cli{name};

  // Build a corpus through the binary: every generator kind.
  std::vector<std::string> corpus;
  auto generate = [&](const std::string& stem, const std::string& args) {
    ++checks;
    if (cli.run("generate " + args + " --output " + cli.file(stem + ".tap")) !=
        0) {
      ++failures;
    } else {
      corpus.push_back(stem + ".tap");
    }
  };

  cli.spit("s1.sc", "p sc 4 3\ns 2 1 2\ns 3 2 3 4\ns 1 4\n");
  cli.spit("s2.sc", "p sc 5 4\ns 2 1 2\ns 2 2 3\ns 2 3 4\ns 2 4 5\n");
  generate("sc1", "setcover --input " + cli.file("s1.sc"));
  generate("sc2", "setcover --input " + cli.file("s2.sc"));

  cli.spit("f1.cnf", "p cnf 2 2\n1 2 0\n-1 2 0\n");
  cli.spit("f2.cnf", "p cnf 3 4\n1 -2 0\n2 3 0\n-1 -3 0\n-2 0\n");
  generate("cnf1", "cnf --input " + cli.file("f1.cnf"));
  generate("cnf2", "cnf --input " + cli.file("f2.cnf"));
  generate("cnf3", "cnf --tightened --input " + cli.file("f2.cnf"));

  cli.spit("m1.kdm",
           "p kdm 3\nd 4 4 4\nt 1 5 9\nt 2 5 10\nt 2 7 11\nt 3 6 10\n"
           "t 3 8 12\nt 4 7 9\nt 4 6 11\n");
  generate("kdm1", "kdm --input " + cli.file("m1.kdm"));

  cli.spit("g1.graph", "p edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n");
  generate("vc1", "vc --input " + cli.file("g1.graph"));

  for (int i = 0; i < 5; ++i) {
    generate("rand" + std::to_string(i),
             "random --seed " + std::to_string(100 + i) +
                 " --n 12 --m 9 --max-weight 3 --max-occurrence 3" +
                 (i % 2 ? " --one-red" : ""));
  }

  // Round trip: every generated file re-parses to byte-identical text.
  for (const std::string& stem : corpus) {
    ++checks;
    try {
      const std::string text = cli.slurp(stem);
      if (write_instance(parse_instance(text)) != text) ++failures;
    } catch (const std::exception&) {
      ++failures;
    }
  }

  // Verification: solve each instance, verify, then perturb the margin by +-1.
  for (const std::string& stem : corpus) {
    const std::string solution = stem + ".sol";
    ++checks;
    if (cli.run("solve --solver auto --fallback-limit 21 --input " +
                cli.file(stem) + " --output " + cli.file(solution)) != 0) {
      ++failures;
      continue;
    }
    if (cli.run("verify --input " + cli.file(stem) + " --solution " +
                cli.file(solution)) != 0) {
      ++failures;
      continue;
    }
    const Instance instance = parse_instance(cli.slurp(stem));
    const Solution parsed = parse_solution(cli.slurp(solution), instance);
    for (int delta : {-1, 1}) {
      Solution tampered = parsed;
      tampered.margin += delta;
      cli.spit("tampered.sol", write_solution(tampered));
      ++checks;
      if (cli.run("verify --input " + cli.file(stem) + " --solution " +
                  cli.file("tampered.sol")) == 0) {
        ++failures;
      }
    }
  }

  // Determinism: byte-identical regeneration and re-solving for fixed seeds.
  ++checks;
  if (cli.run("generate random --seed 100 --n 12 --m 9 --max-weight 3 "
              "--max-occurrence 3 --output " + cli.file("again.tap")) != 0 ||
      cli.slurp("again.tap") != cli.slurp("rand0.tap")) {
    ++failures;
  }
  ++checks;
  if (cli.run("solve --solver greedy --tie-break random --seed 4 --input " +
              cli.file("rand1.tap") + " --output " + cli.file("g1.sol")) != 0 ||
      cli.run("solve --solver greedy --tie-break random --seed 4 --input " +
              cli.file("rand1.tap") + " --output " + cli.file("g2.sol")) != 0 ||
      cli.slurp("g1.sol") != cli.slurp("g2.sol")) {
    ++failures;
  }

  const int cleanup = std::system(("rm -rf " + cli.dir).c_str());
  (void)cleanup;
  report(9, "CLI round trips, verification, and determinism", failures, checks);
  return failures == 0;
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  const std::vector<GreedyRun> runs = greedy_corpus();
  criterion_3(runs);
  criterion_4(runs);
  criterion_5(runs);
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failed_criteria == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", g_failed_criteria);
  }
  return g_failed_criteria;
}
