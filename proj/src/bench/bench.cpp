#include "hmknf/bench.hpp"

#include <chrono>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

#include "hmknf/dl_translator.hpp"
#include "hmknf/error.hpp"
#include "hmknf/printer.hpp"
#include "hmknf/parser.hpp"
#include "hmknf/query.hpp"
#include "hmknf/transform.hpp"

namespace hmknf {

namespace {

// Raw engine output reduced by modulo; std distributions are not portable
// across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(gen_() % n); }
    bool chance(std::size_t num, std::size_t den) { return below(den) < num; }

private:
    std::mt19937_64 gen_;
};

Atom unary(const std::string& p, const std::string& arg, bool var = true) {
    return Atom{p, {var ? Term::variable(arg) : Term::constant(arg)}, {}};
}

Atom binary(const std::string& p, const std::string& a, const std::string& b) {
    return Atom{p, {Term::variable(a), Term::variable(b)}, {}};
}

MknfRule rule(Atom head, std::vector<Atom> pos, std::vector<Atom> neg = {}) {
    MknfRule r;
    r.head = {std::move(head), false};
    for (auto& a : pos) r.positive_body.push_back({std::move(a), false});
    r.negative_body = std::move(neg);
    return r;
}

DlAxiom axiom(DlAxiom::Body body) { return DlAxiom{std::move(body), {}}; }

struct Vocabulary {
    std::size_t base = 0;
    std::size_t derived = 0;
};

Vocabulary vocabulary(const BenchConfig& c) {
    return {std::max<std::size_t>(2, c.n_rules / 25), std::max<std::size_t>(1, c.n_rules / 3)};
}

std::string constant(std::size_t i) { return "c" + std::to_string(i); }

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

KnowledgeBase generate_bench(const BenchConfig& config) {
    Rng rng(config.seed);
    KnowledgeBase kb;
    const std::size_t n = config.n_constants;
    const Vocabulary voc = vocabulary(config);

    for (int i = 0; i < 3; ++i) {
        kb.ontology.push_back(axiom(SubClass{{ConceptConjunct::atomic("cls" + std::to_string(i))},
                                             ConceptConjunct::atomic("cls" + std::to_string(i + 1))}));
    }
    kb.ontology.push_back(axiom(SubClass{
        {ConceptConjunct::atomic("cls1"), ConceptConjunct::exists("link", "cls0")}, ConceptConjunct::atomic("hub")}));
    if (config.disjointness) {
        kb.ontology.push_back(
            axiom(SubClass{{ConceptConjunct::atomic("cls2"), ConceptConjunct::atomic("excl")}, std::nullopt}));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (rng.chance(1, 4)) kb.ontology.push_back(axiom(ConceptAssertion{"cls0", constant(i)}));
        if (rng.chance(1, 6)) kb.ontology.push_back(axiom(ConceptAssertion{"excl", constant(i)}));
        if (rng.chance(1, 2)) kb.ontology.push_back(axiom(RoleAssertion{"link", constant(i), constant(rng.below(n))}));
    }

    for (std::size_t b = 0; b < voc.base; ++b) {
        for (std::size_t i = 0; i < n; ++i) {
            if (rng.chance(1, 4)) kb.rules.push_back(rule(unary("base" + std::to_string(b), constant(i), false), {}));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = rng.below(3); k > 0; --k) {
            Atom e{"edge", {Term::constant(constant(i)), Term::constant(constant(rng.below(n)))}, {}};
            kb.rules.push_back(rule(std::move(e), {}));
        }
    }

    auto derived = [&]() { return "p" + std::to_string(rng.below(voc.derived)); };
    auto any_unary = [&]() -> std::string {
        switch (rng.below(10)) {
            case 0: return "cls" + std::to_string(rng.below(4));
            case 1: return "hub";
            case 2:
            case 3:
            case 4: return "base" + std::to_string(rng.below(voc.base));
            default: return derived();
        }
    };

    std::size_t emitted = 0, chains = 0;
    while (emitted < config.n_rules) {
        std::size_t kind = rng.below(100);
        const std::size_t left = config.n_rules - emitted;
        if (kind >= 92 && config.chain_depth > 0 && left >= config.chain_depth + 1) {
            std::string prefix = "ch" + std::to_string(chains++) + "_";
            auto link = [&](std::size_t j) { return prefix + std::to_string(j); };
            kb.rules.push_back(rule(unary(link(0), "X"), {unary("base" + std::to_string(rng.below(voc.base)), "X")}));
            for (std::size_t j = 1; j <= config.chain_depth; ++j) {
                std::size_t from = j == config.chain_depth ? 0 : j;
                std::size_t to = j == config.chain_depth ? config.chain_depth - 1 : j - 1;
                kb.rules.push_back(rule(unary(link(from), "X"), {binary("edge", "X", "Y"), unary(link(to), "Y")}));
            }
            emitted += config.chain_depth + 1;
            continue;
        }
        if (kind < 45) {
            std::vector<Atom> body{unary(any_unary(), "X")};
            if (rng.chance(1, 2)) body.push_back(unary(any_unary(), "X"));
            kb.rules.push_back(rule(unary(derived(), "X"), std::move(body)));
        } else if (kind < 70) {
            kb.rules.push_back(rule(unary(derived(), "X"), {unary(any_unary(), "X")}, {unary(any_unary(), "X")}));
        } else if (kind < 85) {
            std::vector<Atom> neg;
            if (rng.chance(1, 3)) neg.push_back(unary(any_unary(), "X"));
            kb.rules.push_back(
                rule(unary(derived(), "X"), {binary("edge", "X", "Y"), unary(any_unary(), "Y")}, std::move(neg)));
        } else {
            std::string head = rng.chance(1, 3) ? std::string("excl") : "cls" + std::to_string(rng.below(4));
            kb.rules.push_back(rule(unary(head, "X"), {unary(derived(), "X")}));
        }
        ++emitted;
    }
    return kb;
}

std::vector<std::string> generate_queries(const KnowledgeBase& kb, std::size_t count, std::uint64_t seed) {
    std::vector<std::string> unary, binary;
    std::set<std::string> seen;
    auto note = [&](const Atom& a) {
        if (a.arity() > 2 || !seen.insert(a.predicate).second) return;
        (a.arity() == 1 ? unary : binary).push_back(a.predicate);
    };
    auto note_rule = [&](const MknfRule& r) {
        note(r.head.atom);
        for (const auto& l : r.positive_body) note(l.atom);
        for (const auto& a : r.negative_body) note(a);
    };
    for (const auto& r : translate_ontology(kb.ontology).rules) note_rule(r);
    for (const auto& r : kb.rules) note_rule(r);
    const std::vector<std::string> constants = kb.constants();
    std::vector<std::string> out;
    if (unary.empty()) return out;

    Rng rng(seed);
    auto pred = [&]() { return unary[rng.below(unary.size())]; };
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t shape = rng.below(4);
        if (shape == 0 && constants.empty()) shape = 3;
        if (shape == 2 && binary.empty()) shape = 1;
        switch (shape) {
            case 0: out.push_back(pred() + "(" + to_string(Term::constant(constants[rng.below(constants.size())])) + ")"); break;
            case 1: out.push_back(pred() + "(X), not " + pred() + "(X)"); break;
            case 2: out.push_back(binary[rng.below(binary.size())] + "(X, Y), " + pred() + "(Y)"); break;
            default: out.push_back(pred() + "(X)"); break;
        }
    }
    return out;
}

RunReport run_bench(const std::string& kb_text, const std::vector<std::string>& queries, const RunOptions& options) {
    RunReport report;
    const auto wall = std::chrono::steady_clock::now();

    auto t0 = std::chrono::steady_clock::now();
    KnowledgeBase kb = parse_program(kb_text);
    report.phases.push_back({"parse", ms_since(t0)});

    t0 = std::chrono::steady_clock::now();
    TranslationResult tr = translate_ontology(kb.ontology);
    report.phases.push_back({"translate", ms_since(t0)});

    t0 = std::chrono::steady_clock::now();
    DoubledProgram program = compile(kb, std::move(tr));
    report.phases.push_back({"transform", ms_since(t0)});
    report.program_rules = program.rules.size();

    t0 = std::chrono::steady_clock::now();
    GroundProgram g = ground(program, options.ground);
    report.phases.push_back({"ground", ms_since(t0)});
    report.ground_rules = g.rule_count();
    report.ground_atoms = g.atom_count();

    t0 = std::chrono::steady_clock::now();
    ThreeValuedModel m = alternating_fixed_point(g);
    report.phases.push_back({"afp", ms_since(t0)});
    report.afp_iterations = m.iterations;

    const KnowledgeModel model(std::move(program), std::move(g), std::move(m));
    report.inconsistencies = model.check().atoms.size();

    report.queries.resize(queries.size());
    const auto nq = static_cast<std::ptrdiff_t>(queries.size());
#pragma omp parallel for schedule(dynamic) if (options.parallel_queries)
    for (std::ptrdiff_t i = 0; i < nq; ++i) {
        QueryReport& q = report.queries[i];
        q.query = queries[i];
        const auto start = std::chrono::steady_clock::now();
        try {
            AnswerSet set = answer(parse_query(queries[i]), model, Mode::All);
            for (const auto& a : set.answers) {
                switch (a.classification) {
                    case Classification::Consistent: ++q.consistent; break;
                    case Classification::Contradictory: ++q.contradictory; break;
                    case Classification::Undefined: ++q.undefined; break;
                    case Classification::False: break;
                }
            }
        } catch (const Error& e) {
            q.error = e.what();
        }
        q.ms = ms_since(start);
    }
    report.wall_ms = ms_since(wall);
    return report;
}

std::string format_report(const RunReport& r) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3);
    os << std::left << std::setw(12) << "phase" << std::right << std::setw(14) << "ms" << '\n';
    for (const auto& p : r.phases) os << std::left << std::setw(12) << p.name << std::right << std::setw(14) << p.ms << '\n';
    os << std::left << std::setw(12) << "wall" << std::right << std::setw(14) << r.wall_ms << '\n';
    os << "program rules " << r.program_rules << ", ground rules " << r.ground_rules << ", ground atoms "
       << r.ground_atoms << ", afp iterations " << r.afp_iterations << ", inconsistencies " << r.inconsistencies
       << '\n';
    if (!r.queries.empty()) {
        os << '\n'
           << std::left << std::setw(40) << "query" << std::right << std::setw(12) << "ms" << std::setw(12)
           << "consistent" << std::setw(15) << "contradictory" << std::setw(11) << "undefined" << '\n';
        for (const auto& q : r.queries) {
            os << std::left << std::setw(40) << q.query << std::right << std::setw(12) << q.ms;
            if (!q.error.empty()) {
                os << "  error: " << q.error << '\n';
                continue;
            }
            os << std::setw(12) << q.consistent << std::setw(15) << q.contradictory << std::setw(11) << q.undefined
               << '\n';
        }
    }
    return os.str();
}

}  // namespace hmknf
