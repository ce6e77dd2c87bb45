// End-to-end acceptance checks.  One PASS/FAIL line per criterion; the exit
// status is non-zero when any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "hmknf/bench.hpp"
#include "hmknf/cli.hpp"
#include "hmknf/export.hpp"
#include "hmknf/parser.hpp"
#include "hmknf/query.hpp"
#include "oracle.hpp"

using namespace hmknf;
using testing::fixture_path;
using testing::read_fixture;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Failure {
    std::string what;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure{what};
}

KnowledgeModel model_of(const std::string& fixture) { return KnowledgeModel(compile(parse_program(read_fixture(fixture)))); }

std::string cli(std::vector<std::string> args) {
    args.insert(args.begin(), "hmknf");
    std::istringstream in;
    std::ostringstream out, err;
    int code = run_cli(args, in, out, err);
    require(code == kExitOk, "exit code " + std::to_string(code) + ": " + err.str());
    return out.str();
}

std::vector<std::string> bindings(const AnswerSet& s) {
    std::vector<std::string> out;
    for (const auto& a : s.answers) out.push_back(binding_string(s, a));
    return out;
}

std::string full_query(const SymbolEntry& e) {
    std::string q = e.name;
    if (e.arity == 0) return q;
    q += "(";
    for (std::size_t i = 0; i < e.arity; ++i) q += (i ? ", V" : "V") + std::to_string(i);
    return q + ")";
}

void kb1_model() {
    const auto t0 = Clock::now();
    KnowledgeModel m = model_of("kb1.kb");
    std::set<std::string> t;
    for (AtomId a : m.model().true_atoms()) t.insert(m.ground().atom_string(a));
    require(t == std::set<std::string>{"arwy(rw1)", "drwy(rw1)", "aopnRwy(rw1)", "dopnRwy(rw1)"}, "true atoms");
    require(m.truth(Atom{"acldRwy", {Term::constant("rw1")}, {}}) == Truth::False, "acldRwy");
    require(m.truth(Atom{"dcldRwy", {Term::constant("rw1")}, {}}) == Truth::False, "dcldRwy");
    require(m.model().undefined_atoms().empty(), "undefined atoms");
    require(m.check().empty(), "consistency report");
    require(seconds_since(t0) < 1.0, "time");
}

void contradiction_queries() {
    const auto t0 = Clock::now();
    std::string kb = fixture_path("contradiction.kb");
    require(cli({"query", kb, "rwy(X)", "--mode", "consistent"}).empty(), "consistent rows");
    require(cli({"query", kb, "rwy(X)", "--mode", "inconsistent"}) == "X=rw1  contradictory\n", "inconsistent rows");
    require(seconds_since(t0) < 1.0, "time");
}

void negation_program() {
    const auto t0 = Clock::now();
    DoubledProgram p = compile(parse_program(read_fixture("kb2.kb")));
    require(write_native(p) == read_fixture("kb2.golden.native"), "native golden");
    require(write_prolog(p) == read_fixture("kb2.golden.pl"), "prolog golden");
    std::set<std::string> rules;
    for (const auto& r : p.rules) rules.insert(to_string(r));
    for (const char* r : {"aopnRwy(X) :- arwy(X), anonob(A, X), not dcldRwy(X).",
                          "dopnRwy(X) :- drwy(X), dnonob(A, X), not acldRwy(X), not nopnRwy(X).",
                          "nob(X1, X2) :- anonob(X1, X2).", "nnonob(X1, X2) :- aob(X1, X2).", "anonob(lfbo, rw1).",
                          "dnonob(lfbo, rw1) :- not nnonob(lfbo, rw1)."}) {
        require(rules.count(r) == 1, std::string("missing rule ") + r);
    }

    KnowledgeModel m(std::move(p));
    require(bindings(consistent_answers(parse_query("opnRwy(X)"), m)) == std::vector<std::string>{"X=rw1"},
            "opnRwy consistent");
    KnowledgeModel ob = model_of("kb2_obstacle.kb");
    AnswerSet inc = inconsistent_answers(parse_query("ob(A, X)"), ob);
    require(bindings(inc) == std::vector<std::string>{"A=lfbo, X=rw1"}, "ob contradictory");
    require(consistent_answers(parse_query("opnRwy(rw1)"), ob).answers.empty(), "opnRwy no longer consistent");
    require(seconds_since(t0) < 1.0, "time");
}

void integrity_constraint() {
    const auto t0 = Clock::now();
    KnowledgeModel m = model_of("ic.kb");
    auto q = parse_query("notam(X)");
    require(bindings(consistent_answers(q, m)) == std::vector<std::string>{"X=notam001"}, "consistent");
    require(bindings(inconsistent_answers(q, m)) == std::vector<std::string>{"X=notam002"}, "inconsistent");
    require(seconds_since(t0) < 1.0, "time");
}

void oracle_equivalence() {
    const auto t0 = Clock::now();
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        testing::RandomProgramConfig c;
        c.max_atoms = 14;
        c.max_rules = 30;
        c.negation_density = 0.6 * static_cast<double>(seed % 13) / 12.0;
        GroundProgram g = testing::random_ground_program(1000 + seed, c);
        require(alternating_fixed_point(g) == brute_force_wfs(g), "seed " + std::to_string(seed));
    }
    require(seconds_since(t0) < 60.0, "time");
}

void collapse() {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        BenchConfig c;
        c.seed = seed;
        c.n_rules = 40;
        c.n_constants = 8;
        c.disjointness = false;
        KnowledgeBase kb = generate_bench(c);
        KnowledgeModel m(compile(kb));
        const GroundProgram& g = m.ground();
        for (AtomId a = 0; a < g.atom_count(); ++a) {
            auto r = m.program().symbols.resolve(g.predicate_name(g.atom_predicate(a)));
            if (!r || r->level == Level::N) continue;
            Atom other = g.atom(a);
            LevelNames names = SymbolTable::names(r->source, r->primed);
            other.predicate = r->level == Level::A ? names.d : names.a;
            require(m.truth(a) == m.truth(other), "seed " + std::to_string(seed) + ": " + g.atom_string(a));
        }
        for (const auto& q : generate_queries(kb, 20, seed)) {
            require(inconsistent_answers(parse_query(q), m).answers.empty(), "seed " + std::to_string(seed) + ": " + q);
        }
    }
}

void slice_soundness() {
    auto same = [](const DoubledProgram& p, const KnowledgeModel& full, const std::string& q, const std::string& where) {
        ConjunctiveQuery cq = parse_query(q);
        KnowledgeModel sliced(relevance_slice(p, cq));
        require(testing::sorted(answer(cq, sliced, Mode::All)) == testing::sorted(answer(cq, full, Mode::All)),
                where + ": " + q);
    };
    for (const auto& name : testing::kb_fixtures()) {
        DoubledProgram p = compile(parse_program(read_fixture(name)));
        KnowledgeModel full(p);
        for (const auto& e : p.symbols.entries()) same(p, full, full_query(e), name);
    }
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        BenchConfig c;
        c.seed = seed;
        c.n_rules = 60;
        c.n_constants = 10;
        KnowledgeBase kb = generate_bench(c);
        DoubledProgram p = compile(kb);
        KnowledgeModel full(p);
        for (const auto& q : generate_queries(kb, 10, seed)) same(p, full, q, "seed " + std::to_string(seed));
    }
}

std::string performance_detail;

void desk_scale() {
    BenchConfig c;
    c.n_rules = 10000;
    c.n_constants = 200;
    KnowledgeBase kb = generate_bench(c);
    const auto t0 = Clock::now();
    KnowledgeModel m(compile(kb));
    const double build = seconds_since(t0);
    require(build < 60.0, "compile, ground and model took " + std::to_string(build) + " s");

    std::string selective;
    for (const auto& q : generate_queries(kb, 50, 7)) {
        if (q.find('X') == std::string::npos) {
            selective = q;
            break;
        }
    }
    require(!selective.empty(), "no selective query generated");
    const auto t1 = Clock::now();
    AnswerSet s = answer(parse_query(selective), m, Mode::All);
    const double latency = seconds_since(t1);
    require(latency < 1.0, "query took " + std::to_string(latency) + " s");
    std::ostringstream os;
    os << " (" << m.ground().rule_count() << " ground rules, build " << build << " s, " << selective << " in "
       << latency * 1000 << " ms)";
    performance_detail = os.str();
}

void prolog_round_trip() {
    for (const auto& name : testing::kb_fixtures()) {
        DoubledProgram p = compile(parse_program(read_fixture(name)));
        DoubledProgram back = read_compiled(write_prolog(p));
        KnowledgeModel a(p), b(back);
        require(testing::named(a.ground(), a.model()) == testing::named(b.ground(), b.model()), name);
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
        {"kb1 model", kb1_model},
        {"contradiction queries", contradiction_queries},
        {"classical negation program and answers", negation_program},
        {"integrity constraint answers", integrity_constraint},
        {"alternating fixed point equals brute force on 500 programs", oracle_equivalence},
        {"collapse without negation sources", collapse},
        {"relevance slice soundness", slice_soundness},
        {"desk-scale performance", desk_scale},
        {"prolog export round trip", prolog_round_trip},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        std::string detail;
        bool ok = true;
        try {
            criteria[i].second();
        } catch (const Failure& f) {
            ok = false;
            detail = ": " + f.what;
        } catch (const std::exception& e) {
            ok = false;
            detail = ": exception: " + std::string(e.what());
        }
        if (ok && criteria[i].first == "desk-scale performance") detail = performance_detail;
        std::ostringstream line;
        line.precision(3);
        line << (ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << detail << " [" << std::fixed
             << seconds_since(t0) << " s]";
        std::cout << line.str() << std::endl;
        failed += !ok;
    }
    return failed == 0 ? 0 : 1;
}
