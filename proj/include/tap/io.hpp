#pragma once

// Text serialization. Instance files:
//   p tap <n> <m>
//   b <count> <blue ids...>
//   e <weight> <feature ids...>     (m lines)
// Solution files: a single `s <margin> <count> <exemplar ids...>` line.
// Lines starting with `c ` are comments. All ids 1-based, output ascending.

#include <iosfwd>
#include <string>

#include "tap/instance.hpp"
#include "tap/reductions.hpp"

namespace tap {

std::string write_instance(const Instance& instance);

/// Parses and validates. Throws ParseError with a line number on malformed
/// input and ValidationError when an invariant fails.
Instance parse_instance(const std::string& text);
Instance parse_instance(std::istream& in);

std::string write_solution(const Solution& solution);

/// Parses a solution and cross-checks the stated margin against the instance;
/// a mismatch is a ValidationError (verification semantics).
Solution parse_solution(const std::string& text, const Instance& instance);
Solution parse_solution(std::istream& in, const Instance& instance);

/// DIMACS CNF: `p cnf <vars> <clauses>`, clauses as 0-terminated literal runs.
CnfSource parse_dimacs_cnf(std::istream& in);

/// Set system: `p sc <n> <k>` then k lines `s <count> <element ids...>`.
SetCoverSource parse_set_system(std::istream& in);

/// Tuples: `p kdm <k>`, a line `d <size_1> ... <size_k>`, then lines
/// `t <id_1> ... <id_k>` with global element ids.
KdmSource parse_kdm(std::istream& in);

/// DIMACS graph: `p edge <nodes> <edges>` then `e <u> <v>` lines.
VertexCoverSource parse_graph(std::istream& in);

/// Provenance sidecar, serialized as JSON.
std::string write_meta(const ReductionMeta& meta);
ReductionMeta parse_meta(const std::string& text);

}  // namespace tap
