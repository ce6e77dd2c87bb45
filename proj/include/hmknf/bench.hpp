#pragma once

// Synthetic knowledge bases and a phase-timed pipeline run.
//
// The generated KB has a small ontology core (a subsumption chain, an
// existential axiom, an optional disjointness axiom and assertions), unary
// base predicates with sparse facts, a sparse binary `edge` relation, and
// n_rules rules over derived predicates p0, p1, ...: definite rules, rules
// with default negation, joins through `edge`, and recursive chains of
// chain_depth rules closed by a back edge.  Constants are c0 .. c(n-1).

#include <cstdint>
#include <string>
#include <vector>

#include "hmknf/ground.hpp"
#include "hmknf/kb.hpp"

namespace hmknf {

struct BenchConfig {
    std::size_t n_rules = 100;
    std::size_t n_constants = 20;
    std::uint64_t seed = 1;
    std::size_t chain_depth = 3;
    bool disjointness = true;
};

/// Pure function of the config.
KnowledgeBase generate_bench(const BenchConfig& config);

/// Queries over the unary and binary predicates of `kb`, some selective
/// (ground arguments).
std::vector<std::string> generate_queries(const KnowledgeBase& kb, std::size_t count, std::uint64_t seed);

struct PhaseTiming {
    std::string name;
    double ms = 0;
};

struct QueryReport {
    std::string query;
    double ms = 0;
    std::size_t consistent = 0;
    std::size_t contradictory = 0;
    std::size_t undefined = 0;
    std::string error;  // non-empty when the query failed
};

struct RunReport {
    std::vector<PhaseTiming> phases;  // parse, translate, transform, ground, afp
    std::size_t program_rules = 0;
    std::size_t ground_rules = 0;
    std::size_t ground_atoms = 0;
    std::size_t afp_iterations = 0;
    std::size_t inconsistencies = 0;
    std::vector<QueryReport> queries;
    double wall_ms = 0;
};

struct RunOptions {
    GroundOptions ground;
    /// Evaluate queries concurrently; rows are reported in input order.
    bool parallel_queries = false;
};

/// Parses, compiles, grounds and solves `kb_text`, then answers each query
/// (mode all) against the cached model.  Compile-stage errors propagate.
RunReport run_bench(const std::string& kb_text, const std::vector<std::string>& queries,
                    const RunOptions& options = {});

/// Fixed-width text table of the phases and queries.
std::string format_report(const RunReport& report);

}  // namespace hmknf
