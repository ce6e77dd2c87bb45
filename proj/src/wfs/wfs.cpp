#include "hmknf/wfs.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace hmknf {

namespace {

constexpr std::uint32_t kDisabled = 0xffffffffu;

// Counter-based least model of a reduct: a rule fires once all of its
// positive occurrences have been derived.
class Reduct {
public:
    explicit Reduct(const GroundProgram& p) : p_(p) {
        const std::size_t n = p.atom_count();
        begin_.assign(n + 1, 0);
        for (const auto& r : p.rules())
            for (AtomId a : p.positive(r)) ++begin_[a + 1];
        for (std::size_t a = 0; a < n; ++a) begin_[a + 1] += begin_[a];
        occ_.resize(begin_[n]);
        std::vector<std::uint32_t> fill(begin_.begin(), begin_.end() - 1);
        for (std::uint32_t ri = 0; ri < p.rules().size(); ++ri)
            for (AtomId a : p.positive(p.rules()[ri])) occ_[fill[a]++] = ri;
    }

    Interpretation gamma(const Interpretation* blocked) const {
        const auto& rules = p_.rules();
        Interpretation out(p_.atom_count(), false);
        std::vector<std::uint32_t> counter(rules.size());
        std::vector<AtomId> queue;
        auto derive = [&](AtomId a) {
            if (!out[a]) {
                out[a] = true;
                queue.push_back(a);
            }
        };
        for (std::size_t ri = 0; ri < rules.size(); ++ri) {
            const GroundRule& r = rules[ri];
            bool off = false;
            if (blocked) {
                for (AtomId b : p_.negative(r)) {
                    if ((*blocked)[b]) {
                        off = true;
                        break;
                    }
                }
            }
            counter[ri] = off ? kDisabled : r.pos_count;
            if (!off && r.pos_count == 0) derive(r.head);
        }
        while (!queue.empty()) {
            AtomId a = queue.back();
            queue.pop_back();
            for (std::uint32_t k = begin_[a]; k < begin_[a + 1]; ++k) {
                std::uint32_t ri = occ_[k];
                if (counter[ri] != kDisabled && --counter[ri] == 0) derive(rules[ri].head);
            }
        }
        return out;
    }

private:
    const GroundProgram& p_;
    std::vector<std::uint32_t> begin_;
    std::vector<std::uint32_t> occ_;
};

bool subset(const Interpretation& a, const Interpretation& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && !b[i]) return false;
    return true;
}

}  // namespace

const char* to_string(Truth t) {
    switch (t) {
        case Truth::False: return "false";
        case Truth::Undefined: return "undefined";
        case Truth::True: return "true";
    }
    return "";
}

std::vector<AtomId> ThreeValuedModel::true_atoms() const {
    std::vector<AtomId> out;
    for (AtomId a = 0; a < values.size(); ++a)
        if (values[a] == Truth::True) out.push_back(a);
    return out;
}

std::vector<AtomId> ThreeValuedModel::undefined_atoms() const {
    std::vector<AtomId> out;
    for (AtomId a = 0; a < values.size(); ++a)
        if (values[a] == Truth::Undefined) out.push_back(a);
    return out;
}

Interpretation least_model(const GroundProgram& program) {
    for (const auto& r : program.rules()) {
        if (r.neg_count != 0) throw std::invalid_argument("least_model: program has negative literals");
    }
    return Reduct(program).gamma(nullptr);
}

Interpretation gamma(const GroundProgram& program, const Interpretation& interpretation) {
    if (interpretation.size() != program.atom_count()) {
        throw std::invalid_argument("gamma: interpretation size does not match the atom table");
    }
    return Reduct(program).gamma(&interpretation);
}

ThreeValuedModel alternating_fixed_point(const GroundProgram& program) {
    Reduct reduct(program);
    const std::size_t n = program.atom_count();
    Interpretation t(n, false);
    Interpretation u = reduct.gamma(&t);
    ThreeValuedModel m;
    for (;;) {
        Interpretation t2 = reduct.gamma(&u);
        Interpretation u2 = reduct.gamma(&t2);
        ++m.iterations;
        if (!subset(t, t2) || !subset(u2, u) || !subset(t2, u2)) {
            throw std::logic_error("alternating fixed point lost monotonicity at iteration " +
                                   std::to_string(m.iterations));
        }
        bool stable = t2 == t && u2 == u;
        t = std::move(t2);
        u = std::move(u2);
        if (stable) break;
    }
    m.values.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        m.values[a] = t[a] ? Truth::True : (u[a] ? Truth::Undefined : Truth::False);
    }
    return m;
}

ThreeValuedModel brute_force_wfs(const GroundProgram& program) {
    const std::size_t n = program.atom_count();
    if (n > kBruteForceLimit) {
        throw std::invalid_argument("brute_force_wfs: " + std::to_string(n) + " atoms exceeds the limit of " +
                                    std::to_string(kBruteForceLimit));
    }
    struct MaskRule {
        std::uint32_t head, pos, neg;
    };
    std::vector<MaskRule> rules;
    for (const auto& r : program.rules()) {
        MaskRule m{1u << r.head, 0, 0};
        for (AtomId a : program.positive(r)) m.pos |= 1u << a;
        for (AtomId a : program.negative(r)) m.neg |= 1u << a;
        rules.push_back(m);
    }
    // Naive iteration of the reduct's immediate consequence operator.
    auto g = [&](std::uint32_t s) {
        std::uint32_t m = 0;
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& r : rules) {
                if ((r.neg & s) == 0 && (r.pos & m) == r.pos && (m & r.head) == 0) {
                    m |= r.head;
                    changed = true;
                }
            }
        }
        return m;
    };

    std::vector<std::pair<std::uint32_t, std::uint32_t>> stable;
    for (std::uint32_t u = 0; u < (1u << n); ++u) {
        std::uint32_t t = g(u);
        if ((t & ~u) != 0) continue;
        if (g(t) == u) stable.emplace_back(t, u);
    }
    for (const auto& [t, u] : stable) {
        bool least = std::all_of(stable.begin(), stable.end(), [&](const auto& o) {
            return (t & ~o.first) == 0 && (o.second & ~u) == 0;
        });
        if (!least) continue;
        ThreeValuedModel m;
        m.values.resize(n);
        for (std::size_t a = 0; a < n; ++a) {
            bool in_t = t >> a & 1u, in_u = u >> a & 1u;
            m.values[a] = in_t ? Truth::True : (in_u ? Truth::Undefined : Truth::False);
        }
        return m;
    }
    throw std::logic_error("brute_force_wfs: no knowledge-least partial stable model");
}

InconsistencyReport mknf_consistency_check(const DoubledProgram& program, const GroundProgram& ground,
                                           const ThreeValuedModel& model) {
    InconsistencyReport report;
    std::map<AtomId, std::vector<std::size_t>> by_head;
    auto body_true = [&](const GroundRule& r) {
        for (AtomId a : ground.positive(r))
            if (model.value(a) != Truth::True) return false;
        for (AtomId a : ground.negative(r))
            if (model.value(a) != Truth::False) return false;
        return true;
    };
    for (std::size_t ri = 0; ri < ground.rules().size(); ++ri) by_head[ground.rules()[ri].head].push_back(ri);

    for (AtomId a = 0; a < ground.atom_count(); ++a) {
        if (model.value(a) != Truth::True) continue;
        const std::string& pred = ground.predicate_name(ground.atom_predicate(a));
        auto resolved = program.symbols.resolve(pred);
        if (!resolved || resolved->level != Level::A) continue;

        LevelNames names = SymbolTable::names(resolved->source, resolved->primed);
        auto args = ground.atom_args(a);
        auto level_atom = [&](const std::string& name) -> std::optional<AtomId> {
            auto p = ground.find_predicate(name);
            if (!p) return std::nullopt;
            return ground.find(*p, args.data());
        };
        auto d = level_atom(names.d);
        if (d && model.value(*d) != Truth::False) continue;

        Inconsistency inc;
        inc.literal.atom = ground.atom(a);
        inc.literal.atom.predicate = resolved->source;
        inc.literal.classically_negated = resolved->primed;
        std::set<std::size_t> origins;
        auto collect = [&](AtomId head, std::vector<std::size_t>& into) {
            auto it = by_head.find(head);
            if (it == by_head.end()) return;
            for (std::size_t ri : it->second) {
                const GroundRule& r = ground.rules()[ri];
                if (!body_true(r)) continue;
                into.push_back(ri);
                if (r.source < program.rules.size()) origins.insert(program.rules[r.source].origin);
            }
        };
        collect(a, inc.support);
        if (auto nl = level_atom(names.n)) collect(*nl, inc.blocking);
        inc.origins.assign(origins.begin(), origins.end());
        report.atoms.push_back(std::move(inc));
    }
    return report;
}

DoubledProgram relevance_slice(const DoubledProgram& program,
                               const std::vector<std::string>& source_predicates) {
    std::map<std::string, std::vector<std::size_t>> by_head;
    for (std::size_t i = 0; i < program.rules.size(); ++i) by_head[program.rules[i].head.predicate].push_back(i);

    std::set<std::string> reached;
    std::deque<std::string> work;
    auto reach = [&](const std::string& p) {
        if (reached.insert(p).second) work.push_back(p);
    };
    auto seed = [&](const LevelNames& n) {
        reach(n.a);
        reach(n.d);
        reach(n.n);
    };
    for (const auto& p : source_predicates) {
        seed(SymbolTable::names(p));
        const SymbolEntry* e = program.symbols.find(p);
        if (e && e->negated) seed(SymbolTable::names(p, true));
    }
    while (!work.empty()) {
        std::string p = work.front();
        work.pop_front();
        auto it = by_head.find(p);
        if (it == by_head.end()) continue;
        for (std::size_t i : it->second) {
            for (const auto& a : program.rules[i].positive) reach(a.predicate);
            for (const auto& a : program.rules[i].negative) reach(a.predicate);
        }
    }

    DoubledProgram out;
    out.symbols = program.symbols;
    out.origins = program.origins;
    out.unsupported = program.unsupported;
    for (const auto& r : program.rules)
        if (reached.count(r.head.predicate)) out.rules.push_back(r);
    return out;
}

DoubledProgram relevance_slice(const DoubledProgram& program, const ConjunctiveQuery& query) {
    std::vector<std::string> preds;
    for (const auto& a : query.positive) preds.push_back(a.predicate);
    for (const auto& a : query.negative) preds.push_back(a.predicate);
    return relevance_slice(program, preds);
}

KnowledgeModel::KnowledgeModel(DoubledProgram program, const GroundOptions& options)
    : program_(std::move(program)), ground_(hmknf::ground(program_, options)),
      model_(alternating_fixed_point(ground_)) {}

KnowledgeModel::KnowledgeModel(DoubledProgram program, GroundProgram ground, ThreeValuedModel model)
    : program_(std::move(program)), ground_(std::move(ground)), model_(std::move(model)) {}

Truth KnowledgeModel::truth(const Atom& atom) const {
    auto id = ground_.find(atom);
    return id ? model_.value(*id) : Truth::False;
}

InconsistencyReport KnowledgeModel::check() const { return mknf_consistency_check(program_, ground_, model_); }

}  // namespace hmknf
