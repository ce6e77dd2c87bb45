#include "hmknf/query.hpp"

#include <algorithm>
#include <map>

#include "hmknf/error.hpp"

namespace hmknf {

namespace {

constexpr std::uint32_t kUnbound = 0xffffffffu;
constexpr std::uint32_t kMissing = 0xfffffffeu;  // constant absent from the program

struct QArg {
    bool is_var = false;
    std::uint32_t value = 0;  // variable slot or constant id (kMissing if unknown)
};

struct QAtom {
    std::optional<SymbolId> pred;
    std::vector<QArg> args;
};

class Evaluator {
public:
    Evaluator(const ConjunctiveQuery& q, const KnowledgeModel& m) : m_(m), g_(m.ground()) {
        for (const auto& v : q.answer_vars) slot(v);
        for (const auto& a : q.positive) pos_.push_back(convert(a));
        positive_vars_ = slots_.size();
        for (const auto& a : q.negative) neg_.push_back(convert(a));
        if (slots_.size() != positive_vars_) {
            throw QueryError("unsafe query: every variable must occur in a positive literal");
        }
        for (const auto& v : q.answer_vars) {
            bool found = false;
            for (const auto& a : q.positive) {
                std::vector<std::string> vs;
                collect_variables(a, vs);
                found |= std::find(vs.begin(), vs.end(), v) != vs.end();
            }
            if (!found) throw QueryError("answer variable " + v + " does not occur in a positive literal");
        }
        answers_ = q.answer_vars.size();
        binding_.assign(slots_.size(), kUnbound);
        order();
    }

    std::map<std::vector<std::uint32_t>, Truth> run() {
        std::map<std::vector<std::uint32_t>, Truth> rows;
        for (const auto& a : pos_)
            if (!a.pred) return rows;
        search(0, Truth::True, rows);
        return rows;
    }

private:
    std::uint32_t slot(const std::string& v) {
        auto it = slots_.try_emplace(v, static_cast<std::uint32_t>(slots_.size())).first;
        return it->second;
    }

    QAtom convert(const Atom& a) {
        QAtom qa;
        auto p = g_.find_predicate(a.predicate);
        if (p && g_.predicate_arity(*p) == a.arity()) qa.pred = p;
        for (const auto& t : a.args) {
            if (t.is_variable()) {
                qa.args.push_back({true, slot(t.name)});
            } else {
                auto c = g_.find_constant(t.name);
                qa.args.push_back({false, c ? *c : kMissing});
            }
        }
        return qa;
    }

    // Greedy join order: most bound arguments first.
    void order() {
        std::vector<bool> bound(slots_.size(), false), used(pos_.size(), false);
        for (std::size_t n = 0; n < pos_.size(); ++n) {
            std::size_t best = 0, best_score = 0;
            bool have = false;
            for (std::size_t i = 0; i < pos_.size(); ++i) {
                if (used[i]) continue;
                std::size_t s = 0;
                for (const auto& arg : pos_[i].args)
                    if (!arg.is_var || bound[arg.value]) ++s;
                if (!have || s > best_score) {
                    best = i;
                    best_score = s;
                    have = true;
                }
            }
            used[best] = true;
            order_.push_back(best);
            for (const auto& arg : pos_[best].args)
                if (arg.is_var) bound[arg.value] = true;
        }
    }

    bool matches(const QAtom& qa, AtomId atom, std::vector<std::uint32_t>& newly) {
        auto args = g_.atom_args(atom);
        for (std::size_t c = 0; c < args.size(); ++c) {
            const QArg& a = qa.args[c];
            if (!a.is_var) {
                if (a.value != args[c]) return false;
            } else if (binding_[a.value] == kUnbound) {
                binding_[a.value] = args[c];
                newly.push_back(a.value);
            } else if (binding_[a.value] != args[c]) {
                return false;
            }
        }
        return true;
    }

    void search(std::size_t k, Truth acc, std::map<std::vector<std::uint32_t>, Truth>& rows) {
        if (k == order_.size()) {
            Truth t = acc;
            for (const auto& qa : neg_) {
                Truth v = Truth::False;
                if (qa.pred) {
                    std::vector<std::uint32_t> ids;
                    bool known = true;
                    for (const auto& a : qa.args) {
                        std::uint32_t id = a.is_var ? binding_[a.value] : a.value;
                        known &= id != kMissing;
                        ids.push_back(id);
                    }
                    if (known) {
                        if (auto atom = g_.find(*qa.pred, ids.data())) v = m_.truth(*atom);
                    }
                }
                t = min(t, !v);
            }
            if (t == Truth::False) return;
            std::vector<std::uint32_t> key(binding_.begin(), binding_.begin() + answers_);
            auto [it, fresh] = rows.emplace(std::move(key), t);
            if (!fresh) it->second = max(it->second, t);
            return;
        }
        const QAtom& qa = pos_[order_[k]];
        // Fully bound atoms are looked up directly.
        bool all_bound = true;
        std::vector<std::uint32_t> ids;
        for (const auto& a : qa.args) {
            std::uint32_t id = a.is_var ? binding_[a.value] : a.value;
            if (id == kUnbound) all_bound = false;
            ids.push_back(id);
        }
        std::vector<std::uint32_t> newly;
        if (all_bound) {
            if (std::find(ids.begin(), ids.end(), kMissing) != ids.end()) return;
            auto atom = g_.find(*qa.pred, ids.data());
            if (!atom) return;
            Truth v = m_.truth(*atom);
            if (v != Truth::False) search(k + 1, min(acc, v), rows);
            return;
        }
        for (AtomId atom : g_.atoms_of(*qa.pred)) {
            Truth v = m_.truth(atom);
            if (v == Truth::False) continue;
            newly.clear();
            if (matches(qa, atom, newly)) search(k + 1, min(acc, v), rows);
            for (auto s : newly) binding_[s] = kUnbound;
        }
    }

    const KnowledgeModel& m_;
    const GroundProgram& g_;
    std::map<std::string, std::uint32_t> slots_;
    std::vector<QAtom> pos_;
    std::vector<QAtom> neg_;
    std::vector<std::size_t> order_;
    std::vector<std::uint32_t> binding_;
    std::size_t positive_vars_ = 0;
    std::size_t answers_ = 0;
};

Atom level_atom(const Atom& a, Level level) {
    Atom out = a;
    out.predicate = mangle(a.predicate, level);
    return out;
}

std::map<std::vector<std::uint32_t>, std::pair<Truth, Truth>> doubled_rows(const ConjunctiveQuery& q,
                                                                           const KnowledgeModel& model) {
    auto [qa, qd] = double_query(q, model.program().symbols);
    std::map<std::vector<std::uint32_t>, std::pair<Truth, Truth>> rows;
    for (const auto& [k, v] : Evaluator(qa, model).run()) rows[k].first = v;
    for (const auto& [k, v] : Evaluator(qd, model).run()) {
        auto [it, fresh] = rows.try_emplace(k, Truth::False, v);
        if (!fresh) it->second.second = v;
    }
    return rows;
}

AnswerSet collect(const ConjunctiveQuery& q, const KnowledgeModel& model,
                  bool (*keep)(Classification)) {
    AnswerSet out;
    out.answer_vars = q.answer_vars;
    const GroundProgram& g = model.ground();
    for (const auto& [key, truths] : doubled_rows(q, model)) {
        Classification c = classify(truths.first, truths.second);
        if (!keep(c)) continue;
        Answer a;
        for (auto id : key) a.binding.push_back(g.constant_name(id));
        a.a = truths.first;
        a.d = truths.second;
        a.classification = c;
        out.answers.push_back(std::move(a));
    }
    return out;
}

}  // namespace

const char* to_string(Classification c) {
    switch (c) {
        case Classification::Consistent: return "consistent";
        case Classification::Contradictory: return "contradictory";
        case Classification::Undefined: return "undefined";
        case Classification::False: return "false";
    }
    return "";
}

Classification classify(Truth a, Truth d) {
    if (a == Truth::True && d == Truth::True) return Classification::Consistent;
    if (a == Truth::True && d == Truth::False) return Classification::Contradictory;
    if (a == Truth::False || d == Truth::False) return Classification::False;
    return Classification::Undefined;
}

Mode parse_mode(std::string_view text) {
    if (text == "consistent") return Mode::Consistent;
    if (text == "inconsistent") return Mode::Inconsistent;
    if (text == "all") return Mode::All;
    throw QueryError("unknown mode '" + std::string(text) + "'; expected consistent, inconsistent or all");
}

const char* to_string(Mode m) {
    switch (m) {
        case Mode::Consistent: return "consistent";
        case Mode::Inconsistent: return "inconsistent";
        case Mode::All: return "all";
    }
    return "";
}

std::pair<ConjunctiveQuery, ConjunctiveQuery> double_query(const ConjunctiveQuery& q,
                                                           const SymbolTable& symbols) {
    auto check = [&](const Atom& a) {
        const SymbolEntry* e = symbols.find(a.predicate);
        if (!e) throw QueryError("unknown predicate " + a.predicate + "/" + std::to_string(a.arity()));
        if (e->arity != a.arity()) {
            throw QueryError("predicate " + a.predicate + " has arity " + std::to_string(e->arity) +
                             ", not " + std::to_string(a.arity()));
        }
    };
    ConjunctiveQuery qa, qd;
    qa.answer_vars = qd.answer_vars = q.answer_vars;
    for (const auto& a : q.positive) {
        check(a);
        qa.positive.push_back(level_atom(a, Level::A));
        qd.positive.push_back(level_atom(a, Level::D));
    }
    for (const auto& a : q.negative) {
        check(a);
        qa.negative.push_back(level_atom(a, Level::D));
        qd.negative.push_back(level_atom(a, Level::A));
    }
    return {qa, qd};
}

std::vector<EvaluatedRow> evaluate(const ConjunctiveQuery& q, const KnowledgeModel& model, bool include_false) {
    auto rows = Evaluator(q, model).run();
    std::vector<EvaluatedRow> out;
    if (!include_false) {
        for (auto& [k, v] : rows) out.push_back({k, v});
        return out;
    }
    const std::size_t n = q.answer_vars.size();
    const auto constants = static_cast<std::uint32_t>(model.ground().constant_count());
    if (n > 0 && constants == 0) return out;
    std::vector<std::uint32_t> key(n, 0);
    for (;;) {
        auto it = rows.find(key);
        out.push_back({key, it == rows.end() ? Truth::False : it->second});
        std::size_t i = n;
        while (i > 0 && ++key[i - 1] == constants) key[--i] = 0;
        if (i == 0) break;
    }
    return out;
}

AnswerSet consistent_answers(const ConjunctiveQuery& q, const KnowledgeModel& model) {
    return collect(q, model, [](Classification c) {
        return c == Classification::Consistent || c == Classification::Undefined;
    });
}

AnswerSet inconsistent_answers(const ConjunctiveQuery& q, const KnowledgeModel& model) {
    return collect(q, model, [](Classification c) { return c == Classification::Contradictory; });
}

AnswerSet answer(const ConjunctiveQuery& q, const KnowledgeModel& model, Mode mode) {
    switch (mode) {
        case Mode::Consistent: return consistent_answers(q, model);
        case Mode::Inconsistent: return inconsistent_answers(q, model);
        case Mode::All: break;
    }
    return collect(q, model, [](Classification c) { return c != Classification::False; });
}

std::string binding_string(const AnswerSet& set, const Answer& answer) {
    std::string out;
    for (std::size_t i = 0; i < set.answer_vars.size(); ++i) {
        if (i > 0) out += ", ";
        out += set.answer_vars[i] + "=" + answer.binding[i];
    }
    return out;
}

}  // namespace hmknf
