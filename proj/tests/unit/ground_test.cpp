#include <gtest/gtest.h>

#include <cmath>

#include "hmknf/bench.hpp"
#include "hmknf/error.hpp"
#include "hmknf/parser.hpp"
#include "hmknf/transform.hpp"
#include "hmknf/tuple_set.hpp"
#include "hmknf/wfs.hpp"
#include "oracle.hpp"

namespace hmknf {
namespace {

using testing::named;
using testing::read_fixture;

DoubledProgram compiled(const std::string& fixture) { return compile(parse_program(read_fixture(fixture))); }

// number of substitutions of a rule's variables over `constants` constants
std::size_t substitutions(const ProgramRule& r, std::size_t constants) {
    std::vector<std::string> vars;
    collect_variables(r.head, vars);
    for (const auto& a : r.positive) collect_variables(a, vars);
    for (const auto& a : r.negative) collect_variables(a, vars);
    return static_cast<std::size_t>(std::pow(constants, vars.size()));
}

TEST(TupleSet, InsertFind) {
    TupleSet s(2);
    std::uint32_t a[2] = {1, 2}, b[2] = {2, 1};
    EXPECT_EQ(s.insert(a), std::make_pair(0u, true));
    EXPECT_EQ(s.insert(b), std::make_pair(1u, true));
    EXPECT_EQ(s.insert(a), std::make_pair(0u, false));
    EXPECT_EQ(s.find(b), 1u);
    std::uint32_t c[2] = {3, 3};
    EXPECT_FALSE(s.find(c).has_value());
    for (std::uint32_t i = 0; i < 1000; ++i) {
        std::uint32_t t[2] = {i, i * 7};
        s.insert(t);
    }
    EXPECT_EQ(s.size(), 1002u);
    EXPECT_EQ(s.tuple(1)[0], 2u);
}

TEST(TupleSet, ZeroArity) {
    TupleSet s(0);
    EXPECT_TRUE(s.insert(nullptr).second);
    EXPECT_FALSE(s.insert(nullptr).second);
    EXPECT_EQ(s.size(), 1u);
}

TEST(Ground, OneRuleOneConstant) {
    DoubledProgram p = double_program(parse_program("#rules rwy(X) :- opnRwy(X). opnRwy(rw1).").rules, {});
    GroundProgram g = ground(p);
    EXPECT_NE(g.to_string().find("drwy(rw1) :- dopnRwy(rw1), not nrwy(rw1)."), std::string::npos);
}

TEST(Ground, Kb1Count) {
    DoubledProgram p = compiled("kb1.kb");
    std::size_t expected = 0;
    for (const auto& r : p.rules) expected += substitutions(r, 1);
    GroundProgram g = ground(p);
    EXPECT_EQ(g.rule_count(), expected);
    EXPECT_EQ(ground_exhaustive(p).rule_count(), expected);
}

TEST(Ground, PropositionalPassThrough) {
    DoubledProgram p = compile(parse_program("#rules p. q :- p, not r. r :- not q."));
    GroundProgram g = ground(p);
    EXPECT_EQ(g.constant_count(), 0u);
    EXPECT_EQ(g.rule_count(), p.rules.size());
}

TEST(Ground, LocalNegativeVariable) {
    DoubledProgram p = compile(parse_program("#rules p(X) :- q(X), not r(X, Y). q(a). q(c). r(a, b). r(a, c)."));
    KnowledgeModel m(p);
    EXPECT_EQ(m.truth(Atom{"ap", {Term::constant("a")}, {}}), Truth::False);
    EXPECT_EQ(m.truth(Atom{"ap", {Term::constant("c")}, {}}), Truth::True);
    EXPECT_EQ(m.truth(Atom{"dp", {Term::constant("c")}, {}}), Truth::True);
}

TEST(Ground, UnsafeRule) {
    DoubledProgram p;
    ProgramRule r;
    r.head = Atom{"p", {Term::variable("X")}, {}};
    p.rules.push_back(r);
    EXPECT_THROW(ground(p), GroundingError);
}

TEST(Ground, Budget) {
    DoubledProgram p = compiled("notam_demo.kb");
    GroundOptions o;
    o.rule_budget = 10;
    EXPECT_THROW(ground(p, o), GroundingError);
    EXPECT_THROW(ground_exhaustive(p, 10), GroundingError);
}

TEST(Ground, SerialEqualsParallel) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        BenchConfig c;
        c.seed = seed;
        c.n_rules = 300;
        c.n_constants = 30;
        DoubledProgram p = compile(generate_bench(c));
        GroundOptions serial, parallel;
        serial.parallel = false;
        parallel.parallel = true;
        EXPECT_EQ(ground(p, serial).to_string(), ground(p, parallel).to_string());
    }
}

void expect_same_wfs(const DoubledProgram& p) {
    GroundProgram fast = ground(p);
    GroundProgram full = ground_exhaustive(p);
    EXPECT_LE(fast.rule_count(), full.rule_count());
    EXPECT_EQ(named(fast, alternating_fixed_point(fast)), named(full, alternating_fixed_point(full)));
}

TEST(Ground, SeminaiveMatchesExhaustiveOnFixtures) {
    for (const auto& name : testing::kb_fixtures()) {
        SCOPED_TRACE(name);
        expect_same_wfs(compiled(name));
    }
}

TEST(Ground, SeminaiveMatchesExhaustiveOnGenerated) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SCOPED_TRACE(seed);
        BenchConfig c;
        c.seed = seed;
        c.n_rules = 12;
        c.n_constants = 3;
        c.chain_depth = 2;
        expect_same_wfs(compile(generate_bench(c)));
    }
}

TEST(Ground, Deterministic) {
    DoubledProgram p = compiled("notam_demo.kb");
    EXPECT_EQ(ground(p).to_string(), ground(p).to_string());
}

}  // namespace
}  // namespace hmknf
