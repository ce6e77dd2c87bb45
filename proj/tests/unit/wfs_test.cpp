#include <gtest/gtest.h>

#include "hmknf/parser.hpp"
#include "hmknf/printer.hpp"
#include "hmknf/query.hpp"
#include "hmknf/transform.hpp"
#include "hmknf/wfs.hpp"
#include "oracle.hpp"

namespace hmknf {
namespace {

using testing::read_fixture;

DoubledProgram compiled(const std::string& fixture) { return compile(parse_program(read_fixture(fixture))); }

// Propositional programs written as "h :- b1, not b2" lines.
GroundProgram propositional(const std::vector<std::string>& rules, const std::vector<std::string>& atoms = {}) {
    GroundProgram g;
    auto id = [&](const std::string& a) { return g.intern_atom(g.intern_predicate(a, 0), nullptr); };
    for (const auto& a : atoms) id(a);
    for (const auto& text : rules) {
        auto colon = text.find(":-");
        AtomId head = id(std::string(text.substr(0, text.find_first_of(" :"))));
        std::vector<AtomId> pos, neg;
        if (colon != std::string::npos) {
            std::string body = text.substr(colon + 2);
            std::size_t start = 0;
            while (start < body.size()) {
                std::size_t end = body.find(',', start);
                if (end == std::string::npos) end = body.size();
                std::string lit = body.substr(start, end - start);
                lit.erase(0, lit.find_first_not_of(' '));
                lit.erase(lit.find_last_not_of(' ') + 1);
                if (lit.rfind("not ", 0) == 0) {
                    neg.push_back(id(lit.substr(4)));
                } else {
                    pos.push_back(id(lit));
                }
                start = end + 1;
            }
        }
        g.add_rule(head, pos, neg);
    }
    return g;
}

std::set<std::string> names(const GroundProgram& g, const Interpretation& i) {
    std::set<std::string> out;
    for (AtomId a = 0; a < i.size(); ++a) {
        if (i[a]) out.insert(g.atom_string(a));
    }
    return out;
}

Interpretation of(const GroundProgram& g, const std::set<std::string>& atoms) {
    Interpretation out(g.atom_count(), false);
    for (AtomId a = 0; a < g.atom_count(); ++a) out[a] = atoms.count(g.atom_string(a)) > 0;
    return out;
}

Truth truth(const KnowledgeModel& m, const std::string& pred, const std::vector<std::string>& args) {
    Atom a{pred, {}, {}};
    for (const auto& c : args) a.args.push_back(Term::constant(c));
    return m.truth(a);
}

TEST(LeastModel, Simple) {
    GroundProgram g = propositional({"p :- q", "q"});
    EXPECT_EQ(names(g, least_model(g)), (std::set<std::string>{"p", "q"}));
    EXPECT_TRUE(least_model(GroundProgram{}).empty());
    EXPECT_THROW(least_model(propositional({"p :- not q"})), std::invalid_argument);
}

TEST(LeastModel, TransitiveClosure) {
    const std::vector<std::string> nodes = {"n1", "n2", "n3", "n4"};
    DoubledProgram p;
    auto atom = [](std::string pred, std::vector<Term> args) { return Atom{std::move(pred), std::move(args), {}}; };
    Term x = Term::variable("X"), y = Term::variable("Y"), z = Term::variable("Z");
    p.rules.push_back({atom("tc", {x, y}), {atom("e", {x, y})}, {}, RuleLevel::A, 0});
    p.rules.push_back({atom("tc", {x, z}), {atom("e", {x, y}), atom("tc", {y, z})}, {}, RuleLevel::A, 0});
    std::vector<std::pair<std::string, std::vector<std::string>>> clauses;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        p.rules.push_back({atom("e", {Term::constant(nodes[i]), Term::constant(nodes[i + 1])}), {}, {}, RuleLevel::A, 0});
        clauses.push_back({"e(" + nodes[i] + ", " + nodes[i + 1] + ")", {}});
    }
    for (const auto& a : nodes) {
        for (const auto& b : nodes) {
            clauses.push_back({"tc(" + a + ", " + b + ")", {"e(" + a + ", " + b + ")"}});
            for (const auto& c : nodes) {
                clauses.push_back({"tc(" + a + ", " + c + ")", {"e(" + a + ", " + b + ")", "tc(" + b + ", " + c + ")"}});
            }
        }
    }
    auto expected = testing::naive_closure(clauses);
    GroundProgram g = ground(p);
    auto got = names(g, least_model(g));
    EXPECT_EQ(got, expected);
    std::size_t tc = 0;
    for (const auto& s : got) tc += s.rfind("tc(", 0) == 0;
    EXPECT_EQ(tc, 6u);
}

TEST(Gamma, Reduct) {
    GroundProgram g = propositional({"p :- not q"}, {"p", "q"});
    EXPECT_EQ(names(g, gamma(g, of(g, {}))), std::set<std::string>{"p"});
    EXPECT_TRUE(names(g, gamma(g, of(g, {"q"}))).empty());
}

TEST(Gamma, Kb1AllAtoms) {
    GroundProgram g = ground(compiled("kb1.kb"));
    Interpretation all(g.atom_count(), true);
    std::vector<std::pair<std::string, std::vector<std::string>>> clauses;
    for (const auto& r : g.rules()) {
        if (r.neg_count > 0) continue;
        std::vector<std::string> body;
        for (AtomId a : g.positive(r)) body.push_back(g.atom_string(a));
        clauses.push_back({g.atom_string(r.head), body});
    }
    EXPECT_EQ(names(g, gamma(g, all)), testing::naive_closure(clauses));
    EXPECT_EQ(names(g, gamma(g, all)), std::set<std::string>{"arwy(rw1)"});
}

TEST(Afp, Kb1) {
    KnowledgeModel m(compiled("kb1.kb"));
    for (const char* p : {"arwy", "drwy", "aopnRwy", "dopnRwy"}) EXPECT_EQ(truth(m, p, {"rw1"}), Truth::True) << p;
    EXPECT_EQ(truth(m, "acldRwy", {"rw1"}), Truth::False);
    EXPECT_EQ(truth(m, "dcldRwy", {"rw1"}), Truth::False);
    EXPECT_TRUE(m.model().undefined_atoms().empty());
    EXPECT_EQ(m.model(), brute_force_wfs(m.ground()));
}

TEST(Afp, OddLoopUndefined) {
    GroundProgram g = propositional({"p :- not p"});
    ThreeValuedModel m = alternating_fixed_point(g);
    EXPECT_EQ(m.value(0), Truth::Undefined);
    EXPECT_EQ(brute_force_wfs(g), m);
}

TEST(Afp, Contradiction) {
    KnowledgeModel m(compiled("contradiction.kb"));
    EXPECT_EQ(truth(m, "arwy", {"rw1"}), Truth::True);
    EXPECT_EQ(truth(m, "drwy", {"rw1"}), Truth::False);
}

TEST(Afp, DefiniteCollapse) {
    GroundProgram g = propositional({"a", "b :- a", "c :- b, d", "d :- c"});
    ThreeValuedModel m = alternating_fixed_point(g);
    EXPECT_TRUE(m.undefined_atoms().empty());
    EXPECT_EQ(names(g, least_model(g)), (std::set<std::string>{"a", "b"}));
    EXPECT_EQ(m, brute_force_wfs(g));
}

TEST(BruteForce, Limit) {
    std::vector<std::string> rules;
    for (int i = 0; i < 15; ++i) rules.push_back("p" + std::to_string(i));
    EXPECT_THROW(brute_force_wfs(propositional(rules)), std::invalid_argument);
}

TEST(Afp, EvenLoop) {
    GroundProgram g = propositional({"p :- not q", "q :- not p", "r :- p", "r :- q", "s :- not r"});
    ThreeValuedModel m = alternating_fixed_point(g);
    EXPECT_EQ(m.undefined_atoms().size(), 4u);
    EXPECT_EQ(m, brute_force_wfs(g));
    EXPECT_EQ(m, testing::unfounded_set_wfs(g));
}

TEST(Afp, OracleEquivalence) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        testing::RandomProgramConfig c;
        c.negation_density = 0.6 * static_cast<double>(seed % 7) / 6.0;
        GroundProgram g = testing::random_ground_program(seed, c);
        SCOPED_TRACE(g.to_string());
        ThreeValuedModel afp = alternating_fixed_point(g);
        EXPECT_EQ(afp, brute_force_wfs(g));
        EXPECT_EQ(afp, testing::unfounded_set_wfs(g));
    }
}

TEST(Afp, UnfoundedOracleOnFixtures) {
    for (const auto& name : testing::kb_fixtures()) {
        SCOPED_TRACE(name);
        KnowledgeModel m(compiled(name));
        EXPECT_EQ(m.model(), testing::unfounded_set_wfs(m.ground()));
    }
}

TEST(Consistency, Contradiction) {
    KnowledgeModel m(compiled("contradiction.kb"));
    auto report = m.check();
    std::set<std::string> atoms;
    for (const auto& inc : report.atoms) atoms.insert(to_string(inc.literal.atom));
    EXPECT_EQ(atoms, (std::set<std::string>{"rwy(rw1)", "opnRwy(rw1)", "cldRwy(rw1)"}));
    // oracle: every source atom with a-level true and d-level false in the brute-force model
    ThreeValuedModel bf = brute_force_wfs(m.ground());
    std::set<std::string> expected;
    for (AtomId a = 0; a < m.ground().atom_count(); ++a) {
        Atom at = m.ground().atom(a);
        auto r = m.program().symbols.resolve(at.predicate);
        if (!r || r->level != Level::A || bf.value(a) != Truth::True) continue;
        Atom d = at;
        d.predicate = mangle(at.predicate.substr(1), Level::D);
        auto id = m.ground().find(d);
        if (!id || bf.value(*id) == Truth::False) {
            at.predicate = r->source;
            expected.insert(to_string(at));
        }
    }
    EXPECT_EQ(atoms, expected);
}

TEST(Consistency, Consistent) {
    EXPECT_TRUE(KnowledgeModel(compiled("kb1.kb")).check().empty());
    EXPECT_TRUE(KnowledgeModel(DoubledProgram{}).check().empty());
}

TEST(Consistency, PrimedLiteral) {
    KnowledgeModel m(compiled("kb2_obstacle.kb"));
    std::set<std::string> atoms;
    for (const auto& inc : m.check().atoms) atoms.insert(to_string(inc.literal));
    EXPECT_TRUE(atoms.count("ob(lfbo, rw1)"));
    EXPECT_TRUE(atoms.count("-ob(lfbo, rw1)"));
    EXPECT_TRUE(atoms.count("opnRwy(rw1)"));
}

TEST(Guard, NegationBlocksDoubled) {
    for (const auto& name : testing::kb_fixtures()) {
        SCOPED_TRACE(name);
        KnowledgeModel m(compiled(name));
        const GroundProgram& g = m.ground();
        for (AtomId a = 0; a < g.atom_count(); ++a) {
            auto r = m.program().symbols.resolve(g.predicate_name(g.atom_predicate(a)));
            if (!r || r->level != Level::N || m.truth(a) != Truth::True) continue;
            Atom d = g.atom(a);
            d.predicate = SymbolTable::names(r->source, r->primed).d;
            EXPECT_NE(m.truth(d), Truth::True) << g.atom_string(a);
        }
    }
}

std::size_t count_origin(const DoubledProgram& p, const std::string& needle) {
    std::size_t n = 0;
    for (const auto& r : p.rules) n += p.origins[r.origin].text.find(needle) != std::string::npos;
    return n;
}

TEST(Slice, ExcludesUnrelatedRules) {
    DoubledProgram full = compiled("notam_demo.kb");
    DoubledProgram s = relevance_slice(full, parse_query("recommendDelay(X)"));
    EXPECT_LT(s.rules.size(), full.rules.size());
    EXPECT_EQ(count_origin(s, "notifyOps"), 0u);
    EXPECT_EQ(count_origin(s, "equipmentOut"), 0u);
    EXPECT_EQ(count_origin(s, "hasAlternateAirport"), 0u);
    EXPECT_GT(count_origin(s, "cldRwy(Y) :-"), 0u);
}

TEST(Slice, FactsOnly) {
    DoubledProgram full = compiled("notam_demo.kb");
    DoubledProgram s = relevance_slice(full, std::vector<std::string>{"equipmentOut"});
    ASSERT_EQ(s.rules.size(), 2u);
    for (const auto& r : s.rules) EXPECT_TRUE(r.positive.empty());
    EXPECT_TRUE(relevance_slice(full, std::vector<std::string>{"nothing"}).rules.empty());
}

TEST(Slice, EveryPredicateIsIdentity) {
    for (const auto& name : testing::kb_fixtures()) {
        SCOPED_TRACE(name);
        DoubledProgram full = compiled(name);
        std::vector<std::string> all;
        for (const auto& e : full.symbols.entries()) all.push_back(e.name);
        EXPECT_EQ(relevance_slice(full, all).rules, full.rules);
    }
}

TEST(Slice, SameAnswersOnFixtures) {
    for (const auto& name : testing::kb_fixtures()) {
        DoubledProgram full = compiled(name);
        KnowledgeModel fm(full);
        for (const auto& e : full.symbols.entries()) {
            std::string q = e.name;
            if (e.arity > 0) {
                q += "(";
                for (std::size_t i = 0; i < e.arity; ++i) q += (i ? ", V" : "V") + std::to_string(i);
                q += ")";
            }
            SCOPED_TRACE(name + ": " + q);
            ConjunctiveQuery cq = parse_query(q);
            KnowledgeModel sm(relevance_slice(full, cq));
            EXPECT_EQ(testing::sorted(answer(cq, sm, Mode::All)), testing::sorted(answer(cq, fm, Mode::All)));
        }
    }
}

// Disjointness of open and closed runways together with the default rule
// for open runways loops through the guard: aopnRwy(r) depends negatively on
// dcldRwy(r), which depends negatively on ncldRwy(r), which needs aopnRwy(r).
TEST(Demo, DisjointnessLoopLeavesOpenRunwayUndefined) {
    std::string text = read_fixture("notam_demo.kb");
    text.insert(text.find("#rules"), "subclass(and(cldRwy, opnRwy), bot).\n");
    KnowledgeModel m(compile(parse_program(text)));
    EXPECT_EQ(truth(m, "aopnRwy", {"rw1"}), Truth::Undefined);
    EXPECT_EQ(truth(m, "dopnRwy", {"rw1"}), Truth::False);
    EXPECT_EQ(truth(m, "aopnRwy", {"rw2"}), Truth::True);
    EXPECT_EQ(m.model(), testing::unfounded_set_wfs(m.ground()));
}

}  // namespace
}  // namespace hmknf
