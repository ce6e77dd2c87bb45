#include <gtest/gtest.h>

#include "hmknf/bench.hpp"
#include "hmknf/parser.hpp"
#include "hmknf/printer.hpp"
#include "hmknf/query.hpp"
#include "hmknf/wfs.hpp"
#include "oracle.hpp"

namespace hmknf {
namespace {

TEST(Generate, Deterministic) {
    BenchConfig c;
    c.n_rules = 10;
    EXPECT_EQ(to_string(generate_bench(c)), to_string(generate_bench(c)));
    BenchConfig other = c;
    other.seed = 2;
    EXPECT_NE(to_string(generate_bench(c)), to_string(generate_bench(other)));
}

TEST(Generate, ZeroRules) {
    BenchConfig c;
    c.n_rules = 0;
    KnowledgeBase kb = generate_bench(c);
    EXPECT_FALSE(kb.ontology.empty());
    for (const auto& r : kb.rules) EXPECT_TRUE(r.is_fact());
}

TEST(Generate, RuleCount) {
    BenchConfig c;
    c.n_rules = 200;
    KnowledgeBase kb = generate_bench(c);
    std::size_t rules = 0;
    for (const auto& r : kb.rules) rules += !r.is_fact();
    EXPECT_EQ(rules, 200u);
}

TEST(Generate, ReparsesAndValidates) {
    BenchConfig c;
    c.n_rules = 300;
    KnowledgeBase kb = generate_bench(c);
    EXPECT_EQ(parse_program(to_string(kb)), kb);
}

TEST(Generate, NoDisjointness) {
    BenchConfig c;
    c.disjointness = false;
    KnowledgeModel m(compile(generate_bench(c)));
    for (const auto& r : m.program().rules) EXPECT_NE(r.level, RuleLevel::N);
}

// Model of the default config, compared with the brute-force oracle on every
// small slice.
TEST(Generate, SmallSlicesMatchBruteForce) {
    BenchConfig c;
    DoubledProgram p = compile(generate_bench(c));
    KnowledgeModel full(p);
    EXPECT_EQ(full.model(), testing::unfounded_set_wfs(full.ground()));
    std::size_t checked = 0;
    for (const auto& e : p.symbols.entries()) {
        DoubledProgram s = relevance_slice(p, std::vector<std::string>{e.name});
        GroundProgram g = ground(s);
        if (g.atom_count() > kBruteForceLimit) continue;
        ++checked;
        ThreeValuedModel bf = brute_force_wfs(g);
        EXPECT_EQ(alternating_fixed_point(g), bf);
        for (AtomId a = 0; a < g.atom_count(); ++a) {
            EXPECT_EQ(full.truth(g.atom(a)), bf.value(a)) << g.atom_string(a);
        }
    }
    EXPECT_GT(checked, 0u);
}

TEST(RunBench, Report) {
    BenchConfig c;
    c.n_rules = 10;
    KnowledgeBase kb = generate_bench(c);
    std::string text = to_string(kb);
    auto queries = generate_queries(kb, 4, 1);
    RunOptions o;
    RunReport serial = run_bench(text, queries, o);
    ASSERT_EQ(serial.phases.size(), 5u);
    double sum = 0;
    for (const auto& p : serial.phases) {
        EXPECT_GE(p.ms, 0.0);
        sum += p.ms;
    }
    EXPECT_LE(sum, serial.wall_ms);
    ASSERT_EQ(serial.queries.size(), 4u);
    o.parallel_queries = true;
    RunReport parallel = run_bench(text, queries, o);
    for (std::size_t i = 0; i < queries.size(); ++i) {
        EXPECT_EQ(parallel.queries[i].query, serial.queries[i].query);
        EXPECT_EQ(parallel.queries[i].consistent, serial.queries[i].consistent);
        EXPECT_EQ(parallel.queries[i].contradictory, serial.queries[i].contradictory);
        EXPECT_EQ(parallel.queries[i].undefined, serial.queries[i].undefined);
    }
    EXPECT_NE(format_report(serial).find("afp"), std::string::npos);
}

}  // namespace
}  // namespace hmknf
