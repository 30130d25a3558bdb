// Command-line front end: solve, classify, preprocess, generate, verify,
// bench, and map subcommands over the text formats described in the README.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tap/errors.hpp"
#include "tap/greedy.hpp"
#include "tap/io.hpp"
#include "tap/preprocess.hpp"
#include "tap/reductions.hpp"
#include "tap/solvers.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitValidation = 3;
constexpr int kExitPrecondition = 4;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream content;
  content << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return content.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("cannot write " + path);
}

// ---------------------------------------------------------------------------
// Solver dispatch shared by `solve` and `bench`.

struct SolveOptions {
  std::string solver = "auto";
  tap::TieBreak tie;
  std::optional<int> budget;
  int fallback_limit = 20;
};

struct TraceRow {
  int iteration;
  int red;
  int newly_covered;
  int prefix_margin;
};

struct SolveOutcome {
  tap::SolverReport report;
  std::vector<TraceRow> trace;  // greedy only, original feature ids
};

SolveOutcome run_solver(const tap::Instance& instance,
                        const SolveOptions& options) {
  SolveOutcome outcome;
  if (options.solver == "auto") {
    outcome.report = tap::solve_auto(instance, options.fallback_limit);
  } else if (options.solver == "brute") {
    outcome.report = tap::solve_brute_force(instance, options.fallback_limit);
  } else if (options.solver == "separable") {
    outcome.report = tap::solve_separable(instance);
  } else if (options.solver == "one-occ") {
    outcome.report = tap::solve_one_occurrence(instance);
  } else if (options.solver == "one-red-enum") {
    outcome.report = tap::solve_one_red_enumeration(instance, options.budget);
  } else if (options.solver == "two-two") {
    // The solver expects the reduced form; reduce here and map back.
    const tap::ReducedInstance reduced = tap::reduce_pure(instance);
    const tap::SolverReport inner = tap::solve_two_two(reduced.residual);
    outcome.report.solution.selected =
        reduced.to_original(inner.solution.selected);
    outcome.report.solution.margin =
        tap::margin(instance, outcome.report.solution.selected);
    outcome.report.solution.optimal = inner.exact;
    outcome.report.exact = inner.exact;
    outcome.report.solver_name = "two-two";
    outcome.report.work = inner.work;
  } else if (options.solver == "greedy") {
    const tap::ReducedInstance reduced = tap::reduce_pure(instance);
    const tap::GreedyResult greedy =
        tap::greedy_one_red(reduced.residual, options.tie);
    outcome.report.solution.selected =
        reduced.to_original(greedy.solution.selected);
    outcome.report.solution.margin =
        tap::margin(instance, outcome.report.solution.selected);
    outcome.report.solution.optimal = false;
    outcome.report.exact = false;
    outcome.report.solver_name = "greedy";
    outcome.report.work =
        static_cast<std::uint64_t>(greedy.trace.picked_red.size());
    for (size_t i = 0; i < greedy.trace.picked_red.size(); ++i) {
      const int residual_red = greedy.trace.picked_red[i];
      outcome.trace.push_back(
          {static_cast<int>(i) + 1,
           reduced.feature_map[static_cast<size_t>(residual_red)],
           greedy.trace.newly_covered[i],
           greedy.trace.prefix_margins[i] + reduced.margin_offset});
    }
  } else {
    throw CLI::ValidationError("--solver", "unknown solver " + options.solver);
  }
  return outcome;
}

// ---------------------------------------------------------------------------
// Subcommand implementations.

int cmd_solve(const std::string& input, const std::string& output,
              const SolveOptions& options, bool as_json) {
  const tap::Instance instance = tap::parse_instance(read_file(input));
  const SolveOutcome outcome = run_solver(instance, options);

  std::string text;
  if (as_json) {
    nlohmann::json doc;
    doc["solver"] = outcome.report.solver_name;
    doc["exact"] = outcome.report.exact;
    doc["margin"] = outcome.report.solution.margin;
    doc["selected"] = outcome.report.solution.selected;
    doc["work"] = outcome.report.work;
    if (!outcome.trace.empty()) {
      nlohmann::json rows = nlohmann::json::array();
      for (const TraceRow& row : outcome.trace) {
        rows.push_back({{"iteration", row.iteration},
                        {"red", row.red},
                        {"newly_covered", row.newly_covered},
                        {"prefix_margin", row.prefix_margin}});
      }
      doc["trace"] = std::move(rows);
    }
    text = doc.dump(2) + "\n";
  } else {
    text = "c solver " + outcome.report.solver_name + "\n";
    text += std::string("c exact ") + (outcome.report.exact ? "true" : "false") +
            "\n";
    for (const TraceRow& row : outcome.trace) {
      text += "c trace " + std::to_string(row.iteration) + ' ' +
              std::to_string(row.red) + ' ' +
              std::to_string(row.newly_covered) + ' ' +
              std::to_string(row.prefix_margin) + '\n';
    }
    text += tap::write_solution(outcome.report.solution);
  }
  write_output(output, text);
  return 0;
}

int cmd_classify(const std::string& input, const std::string& output) {
  const tap::Instance instance = tap::parse_instance(read_file(input));
  const tap::InstanceStats stats = tap::classify(instance);
  nlohmann::json doc;
  doc["n_features"] = instance.num_features();
  doc["n_exemplars"] = instance.num_exemplars();
  doc["n_blue"] = instance.num_blue();
  doc["n_red"] = instance.num_red();
  doc["max_weight"] = stats.max_weight;
  doc["max_occurrence"] = stats.max_occurrence;
  doc["one_red"] = stats.is_one_red;
  doc["separable"] = stats.is_separable;
  doc["exemplar_blue_weight"] = std::vector<int>(
      stats.exemplar_blue_weight.begin() + 1, stats.exemplar_blue_weight.end());
  doc["exemplar_red_weight"] = std::vector<int>(
      stats.exemplar_red_weight.begin() + 1, stats.exemplar_red_weight.end());
  doc["feature_occurrence"] = std::vector<int>(
      stats.feature_occurrence.begin() + 1, stats.feature_occurrence.end());
  write_output(output, doc.dump(2) + "\n");
  return 0;
}

int cmd_preprocess(const std::string& input, const std::string& output,
                   bool as_json) {
  const tap::Instance instance = tap::parse_instance(read_file(input));
  const tap::ReducedInstance reduced = tap::reduce_pure(instance);

  const auto id_list = [](const std::vector<int>& ids, size_t from = 0) {
    std::string text = std::to_string(ids.size() - from);
    for (size_t i = from; i < ids.size(); ++i) {
      text += ' ';
      text += std::to_string(ids[i]);
    }
    return text;
  };

  std::string text;
  if (as_json) {
    nlohmann::json doc;
    doc["margin_offset"] = reduced.margin_offset;
    doc["forced_in"] = reduced.forced_in;
    doc["forced_out"] = reduced.forced_out;
    doc["feature_map"] = std::vector<int>(reduced.feature_map.begin() + 1,
                                          reduced.feature_map.end());
    doc["exemplar_map"] = std::vector<int>(reduced.exemplar_map.begin() + 1,
                                           reduced.exemplar_map.end());
    doc["residual"] = tap::write_instance(reduced.residual);
    text = doc.dump(2) + "\n";
  } else {
    text = "c margin_offset " + std::to_string(reduced.margin_offset) + '\n';
    text += "c forced_in " + id_list(reduced.forced_in) + '\n';
    text += "c forced_out " + id_list(reduced.forced_out) + '\n';
    text += "c feature_map " + id_list(reduced.feature_map, 1) + '\n';
    text += "c exemplar_map " + id_list(reduced.exemplar_map, 1) + '\n';
    text += tap::write_instance(reduced.residual);
  }
  write_output(output, text);
  return 0;
}

struct GenerateOptions {
  std::string kind;
  std::string input;
  std::string output;
  std::string meta_output;
  std::optional<int> penalty;
  std::optional<int> reward;
  bool tightened = false;
  tap::RandomInstanceParams random;
};

int cmd_generate(const GenerateOptions& options) {
  tap::Instance instance;
  std::optional<tap::ReductionMeta> meta;

  if (options.kind == "random") {
    instance = tap::random_instance(options.random);
  } else {
    const std::string content = read_file(options.input);
    std::istringstream in(content);
    tap::GeneratedInstance generated;
    if (options.kind == "setcover") {
      generated = tap::from_set_cover(tap::parse_set_system(in));
    } else if (options.kind == "vc") {
      generated = tap::from_vertex_cover(tap::parse_graph(in));
    } else if (options.kind == "kdm") {
      generated = tap::from_kdm(tap::parse_kdm(in));
    } else if (options.kind == "cnf") {
      const tap::CnfSource source = tap::parse_dimacs_cnf(in);
      int p = tap::cnf_default_penalty(source);
      int q = tap::cnf_default_reward(source);
      if (options.tightened) p = q = tap::cnf_tightened_penalty_reward(source);
      if (options.penalty) p = *options.penalty;
      if (options.reward) q = *options.reward;
      generated = tap::from_cnf(source, p, q);
    } else {
      throw CLI::ValidationError("generate",
                                 "unknown kind " + options.kind);
    }
    instance = std::move(generated.instance);
    meta = std::move(generated.meta);
  }

  const std::vector<std::string> violations = tap::validate(instance);
  if (!violations.empty()) {
    std::string message = "generated instance is invalid:";
    for (const auto& violation : violations) message += "\n  " + violation;
    throw tap::ValidationError(message);
  }

  write_output(options.output, tap::write_instance(instance));
  if (meta) {
    std::string meta_path = options.meta_output;
    if (meta_path.empty() && !options.output.empty()) {
      meta_path = options.output + ".meta.json";
    }
    if (!meta_path.empty()) {
      write_output(meta_path, tap::write_meta(*meta));
    }
  }
  return 0;
}

int cmd_verify(const std::string& input, const std::string& solution_path) {
  const tap::Instance instance = tap::parse_instance(read_file(input));
  const tap::Solution solution =
      tap::parse_solution(read_file(solution_path), instance);
  std::cout << "verified: margin " << solution.margin << ", "
            << solution.selected.size() << " exemplars\n";
  return 0;
}

int cmd_map(const std::string& kind, const std::string& input,
            const std::string& meta_path, const std::string& solution_path,
            const std::string& output) {
  const tap::Instance instance = tap::parse_instance(read_file(input));
  const tap::ReductionMeta meta = tap::parse_meta(read_file(meta_path));
  const tap::Solution solution =
      tap::parse_solution(read_file(solution_path), instance);

  std::string text;
  if (kind == "setcover") {
    const std::vector<int> cover =
        tap::to_set_cover_solution(meta, instance, solution);
    text = "cover " + std::to_string(cover.size());
    for (int id : cover) text += ' ' + std::to_string(id);
    text += '\n';
  } else if (kind == "cnf") {
    const tap::CnfAssignment assignment =
        tap::to_assignment(meta, instance, solution);
    text = "assignment";
    for (int var = 1; var <= meta.n_vars; ++var) {
      text += ' ';
      text += std::to_string(assignment.value[static_cast<size_t>(var)] ? var
                                                                        : -var);
    }
    text += "\nsatisfied " + std::to_string(assignment.satisfied) + '\n';
  } else if (kind == "kdm") {
    const std::vector<int> matching =
        tap::to_matching(meta, instance, solution);
    text = "matching " + std::to_string(matching.size());
    for (int id : matching) text += ' ' + std::to_string(id);
    text += '\n';
  } else {
    throw CLI::ValidationError("map", "unknown kind " + kind);
  }
  write_output(output, text);
  return 0;
}

struct BenchOptions {
  std::string input_dir;
  std::string output;
  std::vector<std::string> solvers;
  SolveOptions solve;
};

int cmd_bench(const BenchOptions& options) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  {
    std::error_code ec;
    fs::directory_iterator it(options.input_dir, ec);
    if (ec) throw IoError("cannot list " + options.input_dir);
    for (const auto& entry : it) {
      if (entry.path().extension() == ".tap") files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw IoError("no .tap instances under " + options.input_dir);
  }

  std::string csv =
      "instance,solver,margin,exact,oracle_margin,ratio,time_ms,n,m,"
      "max_occurrence,max_weight\n";
  for (const fs::path& path : files) {
    tap::Instance instance;
    try {
      instance = tap::parse_instance(read_file(path.string()));
    } catch (const std::exception& e) {
      std::cerr << "bench: skipping " << path.string() << ": " << e.what()
                << '\n';
      continue;
    }
    const tap::InstanceStats stats = tap::classify(instance);

    std::optional<int> oracle;
    if (instance.num_exemplars() <= options.solve.fallback_limit) {
      oracle =
          tap::solve_brute_force(instance, options.solve.fallback_limit)
              .solution.margin;
    }

    for (const std::string& solver : options.solvers) {
      SolveOptions solve_options = options.solve;
      solve_options.solver = solver;
      const auto start = std::chrono::steady_clock::now();
      SolveOutcome outcome;
      try {
        outcome = run_solver(instance, solve_options);
      } catch (const std::exception& e) {
        std::cerr << "bench: " << solver << " on " << path.filename().string()
                  << ": " << e.what() << '\n';
        continue;
      }
      const double elapsed_ms =
          std::chrono::duration<double, std::milli>(
              std::chrono::steady_clock::now() - start)
              .count();

      csv += path.filename().string();
      csv += ',' + outcome.report.solver_name;
      csv += ',' + std::to_string(outcome.report.solution.margin);
      csv += outcome.report.exact ? ",true" : ",false";
      if (oracle) {
        csv += ',' + std::to_string(*oracle);
        if (*oracle > 0) {
          char ratio[32];
          std::snprintf(ratio, sizeof ratio, ",%.6f",
                        static_cast<double>(outcome.report.solution.margin) /
                            *oracle);
          csv += ratio;
        } else {
          csv += ',';
        }
      } else {
        csv += ",,";
      }
      char time_field[32];
      std::snprintf(time_field, sizeof time_field, ",%.3f", elapsed_ms);
      csv += time_field;
      csv += ',' + std::to_string(instance.num_features());
      csv += ',' + std::to_string(instance.num_exemplars());
      csv += ',' + std::to_string(stats.max_occurrence);
      csv += ',' + std::to_string(stats.max_weight);
      csv += '\n';
    }
  }
  write_output(options.output, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Margin-maximizing exemplar selection: solvers, instance "
               "generators, and verification"};
  app.require_subcommand(1);

  std::string input, output, solution_path, meta_path;
  bool as_json = false;
  SolveOptions solve_options;
  std::string tie_break = "lowest";
  std::uint64_t seed = 0;
  std::optional<int> budget;

  auto add_tie_flags = [&](CLI::App* cmd) {
    cmd->add_option("--tie-break", tie_break,
                    "greedy tie break: lowest|highest|random")
        ->check(CLI::IsMember({"lowest", "highest", "random"}));
    cmd->add_option("--seed", seed, "seed for --tie-break random");
  };

  // solve
  CLI::App* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("--input", input, "instance file")->required();
  solve->add_option("--output", output, "write the solution here");
  solve->add_option("--solver", solve_options.solver,
                    "auto|brute|greedy|one-occ|two-two|separable|one-red-enum")
      ->check(CLI::IsMember({"auto", "brute", "greedy", "one-occ", "two-two",
                             "separable", "one-red-enum"}));
  solve->add_option("--budget", budget, "red budget for one-red-enum");
  solve->add_option("--fallback-limit", solve_options.fallback_limit,
                    "exemplar cap for brute force (also the auto fallback)");
  solve->add_flag("--json", as_json, "emit JSON instead of a solution line");
  add_tie_flags(solve);

  // classify
  CLI::App* classify = app.add_subcommand("classify", "print instance stats");
  classify->add_option("--input", input, "instance file")->required();
  classify->add_option("--output", output, "write the JSON here");

  // preprocess
  CLI::App* preprocess =
      app.add_subcommand("preprocess", "print the reduced instance");
  preprocess->add_option("--input", input, "instance file")->required();
  preprocess->add_option("--output", output, "write the result here");
  preprocess->add_flag("--json", as_json, "emit JSON");

  // generate
  GenerateOptions generate_options;
  CLI::App* generate =
      app.add_subcommand("generate", "build an instance from a source");
  generate->add_option("kind", generate_options.kind,
                       "setcover|cnf|kdm|vc|random")
      ->required()
      ->check(CLI::IsMember({"setcover", "cnf", "kdm", "vc", "random"}));
  generate->add_option("--input", generate_options.input,
                       "source file (not used by random)");
  generate->add_option("--output", generate_options.output, "instance file");
  generate->add_option("--meta-output", generate_options.meta_output,
                       "provenance sidecar path (default <output>.meta.json)");
  generate->add_option("--penalty", generate_options.penalty,
                       "cnf: penalty features per exemplar");
  generate->add_option("--reward", generate_options.reward,
                       "cnf: reward features per variable");
  generate->add_flag("--tightened", generate_options.tightened,
                     "cnf: penalty = reward = floor(max occurrence / 2)");
  generate->add_option("--seed", generate_options.random.seed, "random: seed");
  generate->add_option("--n", generate_options.random.n_features,
                       "random: features");
  generate->add_option("--m", generate_options.random.m_exemplars,
                       "random: exemplars");
  generate->add_option("--blue-fraction", generate_options.random.blue_fraction,
                       "random: fraction of blue features");
  generate->add_option("--max-weight", generate_options.random.max_weight,
                       "random: exemplar weight cap");
  generate->add_option("--max-occurrence",
                       generate_options.random.max_occurrence,
                       "random: feature occurrence cap");
  generate->add_flag("--one-red", generate_options.random.one_red,
                     "random: one red feature per exemplar");

  // verify
  CLI::App* verify = app.add_subcommand("verify", "check a solution file");
  verify->add_option("--input", input, "instance file")->required();
  verify->add_option("--solution", solution_path, "solution file")->required();

  // bench
  BenchOptions bench_options;
  CLI::App* bench =
      app.add_subcommand("bench", "run solvers over a directory of instances");
  bench->add_option("--input", bench_options.input_dir,
                    "directory of .tap files")
      ->required();
  bench->add_option("--output", bench_options.output, "CSV path");
  bench->add_option("--solver", bench_options.solvers,
                    "solvers to run (repeatable)")
      ->check(CLI::IsMember({"auto", "brute", "greedy", "one-occ", "two-two",
                             "separable", "one-red-enum"}));
  bench->add_option("--fallback-limit", bench_options.solve.fallback_limit,
                    "brute-force cap; also gates the oracle column");
  bench->add_option("--budget", budget, "red budget for one-red-enum");
  add_tie_flags(bench);

  // map
  std::string map_kind;
  CLI::App* map = app.add_subcommand(
      "map", "translate a solution back to the source problem");
  map->add_option("kind", map_kind, "setcover|cnf|kdm")
      ->required()
      ->check(CLI::IsMember({"setcover", "cnf", "kdm"}));
  map->add_option("--input", input, "instance file")->required();
  map->add_option("--meta", meta_path, "provenance sidecar")->required();
  map->add_option("--solution", solution_path, "solution file")->required();
  map->add_option("--output", output, "write the result here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (tie_break == "highest") {
      solve_options.tie = tap::TieBreak::highest();
    } else if (tie_break == "random") {
      solve_options.tie = tap::TieBreak::random(seed);
    }
    solve_options.budget = budget;
    bench_options.solve.tie = solve_options.tie;
    bench_options.solve.budget = budget;

    if (solve->parsed()) return cmd_solve(input, output, solve_options, as_json);
    if (classify->parsed()) return cmd_classify(input, output);
    if (preprocess->parsed()) return cmd_preprocess(input, output, as_json);
    if (generate->parsed()) return cmd_generate(generate_options);
    if (verify->parsed()) return cmd_verify(input, solution_path);
    if (bench->parsed()) {
      if (bench_options.solvers.empty()) bench_options.solvers = {"auto"};
      std::sort(bench_options.solvers.begin(), bench_options.solvers.end());
      return cmd_bench(bench_options);
    }
    if (map->parsed()) {
      return cmd_map(map_kind, input, meta_path, solution_path, output);
    }
  } catch (const tap::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const tap::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
