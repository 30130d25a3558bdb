#include "tap/io.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "tap/errors.hpp"

namespace tap {

namespace {

// Significant (non-comment, non-blank) lines of a stream, with line numbers.
struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> significant_lines(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::istringstream tokens(raw);
    Line line{number, {}};
    std::string token;
    while (tokens >> token) line.tokens.push_back(token);
    if (line.tokens.empty() || line.tokens[0] == "c") continue;
    lines.push_back(std::move(line));
  }
  return lines;
}

int parse_int(const Line& line, size_t index, const char* what) {
  if (index >= line.tokens.size()) {
    throw ParseError(line.number, std::string("missing ") + what);
  }
  const std::string& token = line.tokens[index];
  try {
    size_t used = 0;
    const int value = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw ParseError(line.number,
                     std::string("expected an integer for ") + what +
                         ", got '" + token + "'");
  }
}

// Reads `count` ids from the line starting at `first`, checks range and
// duplicates.
std::vector<int> parse_id_list(const Line& line, size_t first, int count,
                               int max_id, const char* what) {
  if (static_cast<int>(line.tokens.size() - first) != count) {
    throw ParseError(line.number,
                     "declared " + std::to_string(count) + " " + what +
                         " ids but found " +
                         std::to_string(line.tokens.size() - first));
  }
  std::vector<int> ids;
  std::vector<char> seen(static_cast<size_t>(max_id) + 1, 0);
  for (int i = 0; i < count; ++i) {
    const int id = parse_int(line, first + static_cast<size_t>(i), what);
    if (id < 1 || id > max_id) {
      throw ParseError(line.number, std::string(what) + " id " +
                                        std::to_string(id) +
                                        " outside 1.." + std::to_string(max_id));
    }
    if (seen[static_cast<size_t>(id)]) {
      throw ParseError(line.number,
                       std::string("duplicate ") + what + " id " +
                           std::to_string(id));
    }
    seen[static_cast<size_t>(id)] = 1;
    ids.push_back(id);
  }
  return ids;
}

void expect_tag(const Line& line, const std::string& tag) {
  if (line.tokens[0] != tag) {
    throw ParseError(line.number, "expected a '" + tag + "' line, got '" +
                                      line.tokens[0] + "'");
  }
}

void append_ids(std::string& out, const std::vector<int>& ids) {
  out += std::to_string(ids.size());
  for (int id : ids) {
    out += ' ';
    out += std::to_string(id);
  }
}

}  // namespace

std::string write_instance(const Instance& instance) {
  std::string out = "p tap " + std::to_string(instance.num_features()) + ' ' +
                    std::to_string(instance.num_exemplars()) + "\nb ";
  append_ids(out, instance.blue());
  out += '\n';
  for (int j = 1; j <= instance.num_exemplars(); ++j) {
    out += "e ";
    append_ids(out, instance.exemplar(j));
    out += '\n';
  }
  return out;
}

Instance parse_instance(std::istream& in) {
  const std::vector<Line> lines = significant_lines(in);
  if (lines.empty()) {
    throw ParseError("empty instance: missing 'p tap <n> <m>' header");
  }
  size_t at = 0;
  const Line& header = lines[at++];
  expect_tag(header, "p");
  if (header.tokens.size() < 2 || header.tokens[1] != "tap") {
    throw ParseError(header.number, "expected 'p tap <n> <m>'");
  }
  const int n = parse_int(header, 2, "feature count");
  const int m = parse_int(header, 3, "exemplar count");
  if (n < 0 || m < 0) {
    throw ParseError(header.number, "counts must be nonnegative");
  }
  if (header.tokens.size() != 4) {
    throw ParseError(header.number, "trailing tokens after 'p tap <n> <m>'");
  }

  if (at >= lines.size()) {
    throw ParseError("missing 'b' line");
  }
  const Line& blue_line = lines[at++];
  expect_tag(blue_line, "b");
  const int blue_count = parse_int(blue_line, 1, "blue count");
  std::vector<int> blue = parse_id_list(blue_line, 2, blue_count, n, "blue");

  std::vector<std::vector<int>> exemplars;
  for (int j = 1; j <= m; ++j) {
    if (at >= lines.size()) {
      throw ParseError("expected " + std::to_string(m) +
                       " exemplar lines, found " + std::to_string(j - 1));
    }
    const Line& line = lines[at++];
    expect_tag(line, "e");
    const int weight = parse_int(line, 1, "exemplar weight");
    exemplars.push_back(parse_id_list(line, 2, weight, n, "feature"));
  }
  if (at != lines.size()) {
    throw ParseError(lines[at].number, "unexpected extra line");
  }

  Instance instance(n, std::move(blue), std::move(exemplars));
  const std::vector<std::string> violations = validate(instance);
  if (!violations.empty()) {
    std::string message = "invalid instance:";
    for (const auto& violation : violations) message += "\n  " + violation;
    throw ValidationError(message);
  }
  return instance;
}

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

std::string write_solution(const Solution& solution) {
  std::string out = "s " + std::to_string(solution.margin) + ' ';
  append_ids(out, solution.selected);
  out += '\n';
  return out;
}

Solution parse_solution(std::istream& in, const Instance& instance) {
  const std::vector<Line> lines = significant_lines(in);
  if (lines.size() != 1) {
    throw ParseError(lines.empty() ? 0 : lines[1].number,
                     "expected exactly one 's' line");
  }
  const Line& line = lines[0];
  expect_tag(line, "s");
  const int stated_margin = parse_int(line, 1, "margin");
  const int count = parse_int(line, 2, "selection count");
  Solution solution;
  solution.selected = parse_id_list(line, 3, count, instance.num_exemplars(),
                                    "exemplar");
  std::sort(solution.selected.begin(), solution.selected.end());
  solution.margin = margin(instance, solution.selected);
  if (solution.margin != stated_margin) {
    throw ValidationError("stated margin " + std::to_string(stated_margin) +
                          " does not match recomputed margin " +
                          std::to_string(solution.margin));
  }
  return solution;
}

Solution parse_solution(const std::string& text, const Instance& instance) {
  std::istringstream in(text);
  return parse_solution(in, instance);
}

CnfSource parse_dimacs_cnf(std::istream& in) {
  CnfSource source;
  int declared_clauses = -1;
  std::vector<int> current;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::istringstream tokens(raw);
    std::string token;
    std::vector<std::string> parts;
    while (tokens >> token) parts.push_back(token);
    if (parts.empty() || parts[0] == "c") continue;
    Line line{number, parts};
    if (parts[0] == "p") {
      if (declared_clauses >= 0) {
        throw ParseError(number, "duplicate 'p cnf' header");
      }
      if (parts.size() != 4 || parts[1] != "cnf") {
        throw ParseError(number, "expected 'p cnf <vars> <clauses>'");
      }
      source.n_vars = parse_int(line, 2, "variable count");
      declared_clauses = parse_int(line, 3, "clause count");
      if (source.n_vars < 0 || declared_clauses < 0) {
        throw ParseError(number, "counts must be nonnegative");
      }
      continue;
    }
    if (declared_clauses < 0) {
      throw ParseError(number, "literals before the 'p cnf' header");
    }
    for (size_t i = 0; i < parts.size(); ++i) {
      const int literal = parse_int(line, i, "literal");
      if (literal == 0) {
        if (current.empty()) {
          throw ParseError(number, "empty clause");
        }
        std::sort(current.begin(), current.end());
        current.erase(std::unique(current.begin(), current.end()),
                      current.end());
        source.clauses.push_back(std::move(current));
        current.clear();
      } else {
        const int var = literal > 0 ? literal : -literal;
        if (var > source.n_vars) {
          throw ParseError(number, "literal " + std::to_string(literal) +
                                       " exceeds the declared " +
                                       std::to_string(source.n_vars) +
                                       " variables");
        }
        current.push_back(literal);
      }
    }
  }
  if (!current.empty()) {
    throw ParseError(number, "last clause is not terminated by 0");
  }
  if (declared_clauses < 0) {
    throw ParseError("missing 'p cnf' header");
  }
  if (static_cast<int>(source.clauses.size()) != declared_clauses) {
    throw ParseError("header declares " + std::to_string(declared_clauses) +
                     " clauses but " + std::to_string(source.clauses.size()) +
                     " were given");
  }
  return source;
}

SetCoverSource parse_set_system(std::istream& in) {
  const std::vector<Line> lines = significant_lines(in);
  if (lines.empty()) {
    throw ParseError("empty set system: missing 'p sc <n> <k>' header");
  }
  const Line& header = lines[0];
  expect_tag(header, "p");
  if (header.tokens.size() != 4 || header.tokens[1] != "sc") {
    throw ParseError(header.number, "expected 'p sc <n> <k>'");
  }
  SetCoverSource source;
  source.universe_size = parse_int(header, 2, "universe size");
  const int n_sets = parse_int(header, 3, "set count");
  if (static_cast<int>(lines.size()) - 1 != n_sets) {
    throw ParseError(header.number,
                     "header declares " + std::to_string(n_sets) +
                         " sets but " + std::to_string(lines.size() - 1) +
                         " were given");
  }
  for (int i = 1; i <= n_sets; ++i) {
    const Line& line = lines[static_cast<size_t>(i)];
    expect_tag(line, "s");
    const int count = parse_int(line, 1, "element count");
    source.sets.push_back(
        parse_id_list(line, 2, count, source.universe_size, "element"));
  }
  return source;
}

KdmSource parse_kdm(std::istream& in) {
  const std::vector<Line> lines = significant_lines(in);
  if (lines.size() < 2) {
    throw ParseError("expected 'p kdm <k>' and a 'd' dimension line");
  }
  const Line& header = lines[0];
  expect_tag(header, "p");
  if (header.tokens.size() != 3 || header.tokens[1] != "kdm") {
    throw ParseError(header.number, "expected 'p kdm <k>'");
  }
  KdmSource source;
  source.k = parse_int(header, 2, "tuple dimension");
  if (source.k < 1) {
    throw ParseError(header.number, "dimension must be at least 1");
  }

  const Line& dims = lines[1];
  expect_tag(dims, "d");
  if (static_cast<int>(dims.tokens.size()) - 1 != source.k) {
    throw ParseError(dims.number, "expected " + std::to_string(source.k) +
                                      " dimension sizes");
  }
  for (int d = 1; d <= source.k; ++d) {
    const int size = parse_int(dims, static_cast<size_t>(d), "dimension size");
    if (size < 1) {
      throw ParseError(dims.number, "dimension sizes must be positive");
    }
    source.dimension_sizes.push_back(size);
  }

  const int total = source.total_elements();
  for (size_t at = 2; at < lines.size(); ++at) {
    const Line& line = lines[at];
    expect_tag(line, "t");
    if (static_cast<int>(line.tokens.size()) - 1 != source.k) {
      throw ParseError(line.number, "expected " + std::to_string(source.k) +
                                        " components");
    }
    std::vector<int> tuple;
    for (int d = 1; d <= source.k; ++d) {
      const int element = parse_int(line, static_cast<size_t>(d), "element");
      if (element < 1 || element > total) {
        throw ParseError(line.number, "element " + std::to_string(element) +
                                          " outside 1.." + std::to_string(total));
      }
      tuple.push_back(element);
    }
    source.tuples.push_back(std::move(tuple));
  }
  return source;
}

VertexCoverSource parse_graph(std::istream& in) {
  const std::vector<Line> lines = significant_lines(in);
  if (lines.empty()) {
    throw ParseError("empty graph: missing 'p edge <n> <m>' header");
  }
  const Line& header = lines[0];
  expect_tag(header, "p");
  if (header.tokens.size() != 4 || header.tokens[1] != "edge") {
    throw ParseError(header.number, "expected 'p edge <nodes> <edges>'");
  }
  VertexCoverSource source;
  source.n_nodes = parse_int(header, 2, "node count");
  const int n_edges = parse_int(header, 3, "edge count");
  if (static_cast<int>(lines.size()) - 1 != n_edges) {
    throw ParseError(header.number,
                     "header declares " + std::to_string(n_edges) +
                         " edges but " + std::to_string(lines.size() - 1) +
                         " were given");
  }
  for (size_t at = 1; at < lines.size(); ++at) {
    const Line& line = lines[at];
    expect_tag(line, "e");
    if (line.tokens.size() != 3) {
      throw ParseError(line.number, "expected 'e <u> <v>'");
    }
    const int u = parse_int(line, 1, "node");
    const int v = parse_int(line, 2, "node");
    for (int node : {u, v}) {
      if (node < 1 || node > source.n_nodes) {
        throw ParseError(line.number, "node " + std::to_string(node) +
                                          " outside 1.." +
                                          std::to_string(source.n_nodes));
      }
    }
    source.edges.push_back({u, v});
  }
  return source;
}

namespace {

const char* kind_name(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::set_cover: return "set_cover";
    case ReductionKind::cnf: return "cnf";
    case ReductionKind::kdm: return "kdm";
    case ReductionKind::vertex_cover: return "vertex_cover";
  }
  return "unknown";
}

const char* role_name(FeatureProvenance::Role role) {
  switch (role) {
    case FeatureProvenance::Role::element: return "element";
    case FeatureProvenance::Role::set_choice: return "set";
    case FeatureProvenance::Role::clause: return "clause";
    case FeatureProvenance::Role::reward: return "reward";
    case FeatureProvenance::Role::penalty: return "penalty";
    case FeatureProvenance::Role::tuple_cost: return "tuple";
  }
  return "unknown";
}

FeatureProvenance::Role role_from_name(const std::string& name) {
  if (name == "element") return FeatureProvenance::Role::element;
  if (name == "set") return FeatureProvenance::Role::set_choice;
  if (name == "clause") return FeatureProvenance::Role::clause;
  if (name == "reward") return FeatureProvenance::Role::reward;
  if (name == "penalty") return FeatureProvenance::Role::penalty;
  if (name == "tuple") return FeatureProvenance::Role::tuple_cost;
  throw ParseError("unknown feature role '" + name + "'");
}

ReductionKind kind_from_name(const std::string& name) {
  if (name == "set_cover") return ReductionKind::set_cover;
  if (name == "cnf") return ReductionKind::cnf;
  if (name == "kdm") return ReductionKind::kdm;
  if (name == "vertex_cover") return ReductionKind::vertex_cover;
  throw ParseError("unknown reduction kind '" + name + "'");
}

}  // namespace

std::string write_meta(const ReductionMeta& meta) {
  nlohmann::json doc;
  doc["kind"] = kind_name(meta.kind);
  doc["params"] = {
      {"penalty", meta.penalty_per_exemplar},
      {"reward", meta.reward_per_variable},
      {"n_vars", meta.n_vars},
      {"k", meta.k},
      {"n_tuples", meta.n_tuples},
      {"universe_size", meta.universe_size},
      {"n_sets", meta.n_sets},
  };
  nlohmann::json features = nlohmann::json::array();
  for (size_t f = 1; f < meta.features.size(); ++f) {
    features.push_back({{"id", f},
                        {"role", role_name(meta.features[f].role)},
                        {"ref", meta.features[f].ref}});
  }
  doc["features"] = std::move(features);
  nlohmann::json exemplars = nlohmann::json::array();
  for (size_t j = 1; j < meta.exemplars.size(); ++j) {
    exemplars.push_back({{"id", j},
                         {"ref", meta.exemplars[j].ref},
                         {"aux", meta.exemplars[j].aux}});
  }
  doc["exemplars"] = std::move(exemplars);
  return doc.dump(2) + "\n";
}

ReductionMeta parse_meta(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad meta JSON: ") + e.what());
  }
  try {
    ReductionMeta meta;
    meta.kind = kind_from_name(doc.at("kind").get<std::string>());
    const auto& params = doc.at("params");
    meta.penalty_per_exemplar = params.at("penalty").get<int>();
    meta.reward_per_variable = params.at("reward").get<int>();
    meta.n_vars = params.at("n_vars").get<int>();
    meta.k = params.at("k").get<int>();
    meta.n_tuples = params.at("n_tuples").get<int>();
    meta.universe_size = params.at("universe_size").get<int>();
    meta.n_sets = params.at("n_sets").get<int>();
    meta.features.assign(doc.at("features").size() + 1, {});
    for (const auto& entry : doc.at("features")) {
      const size_t id = entry.at("id").get<size_t>();
      if (id < 1 || id >= meta.features.size()) {
        throw ParseError("feature id " + std::to_string(id) +
                         " outside the provenance table");
      }
      meta.features[id] = {role_from_name(entry.at("role").get<std::string>()),
                           entry.at("ref").get<int>()};
    }
    meta.exemplars.assign(doc.at("exemplars").size() + 1, {});
    for (const auto& entry : doc.at("exemplars")) {
      const size_t id = entry.at("id").get<size_t>();
      if (id < 1 || id >= meta.exemplars.size()) {
        throw ParseError("exemplar id " + std::to_string(id) +
                         " outside the provenance table");
      }
      meta.exemplars[id] = {entry.at("ref").get<int>(),
                            entry.at("aux").get<int>()};
    }
    return meta;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad meta JSON: ") + e.what());
  }
}

}  // namespace tap
