#include "hmknf/ground.hpp"

#include <algorithm>
#include <atomic>
#include <map>

#include "hmknf/error.hpp"

namespace hmknf {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct Arg {
    bool is_var = false;
    std::uint32_t value = 0;  // variable slot or constant id
};

struct CAtom {
    SymbolId pred = 0;
    std::vector<Arg> args;
};

// A program rule over interned predicates and constants.  Slots below
// `positive_vars` are bound by the positive body; the rest are local to a
// single negative literal.
struct CRule {
    std::uint32_t source = 0;
    CAtom head;
    std::vector<CAtom> pos;
    std::vector<CAtom> neg;
    std::vector<bool> neg_local;
    std::size_t positive_vars = 0;
    std::size_t vars = 0;
};

std::vector<CRule> compile_rules(const DoubledProgram& program, GroundProgram& gp) {
    std::vector<CRule> out;
    out.reserve(program.rules.size());
    for (std::size_t ri = 0; ri < program.rules.size(); ++ri) {
        const ProgramRule& r = program.rules[ri];
        std::map<std::string, std::uint32_t> slots;
        std::map<std::string, std::size_t> local_owner;
        CRule c;
        c.source = static_cast<std::uint32_t>(ri);

        // Interning order follows the rule text: head, positive, negative.
        c.head.pred = gp.intern_predicate(r.head.predicate, r.head.arity());
        for (const auto& t : r.head.args)
            if (t.is_constant()) gp.intern_constant(t.name);

        for (const auto& a : r.positive) {
            CAtom ca;
            ca.pred = gp.intern_predicate(a.predicate, a.arity());
            for (const auto& t : a.args) {
                if (t.is_constant()) {
                    ca.args.push_back({false, gp.intern_constant(t.name)});
                } else {
                    auto it = slots.try_emplace(t.name, static_cast<std::uint32_t>(slots.size())).first;
                    ca.args.push_back({true, it->second});
                }
            }
            c.pos.push_back(std::move(ca));
        }
        c.positive_vars = slots.size();

        for (const auto& t : r.head.args) {
            if (t.is_constant()) {
                c.head.args.push_back({false, gp.intern_constant(t.name)});
                continue;
            }
            auto it = slots.find(t.name);
            if (it == slots.end()) {
                throw GroundingError("unsafe rule: head variable " + t.name +
                                     " does not occur in the positive body: " + to_string(r));
            }
            c.head.args.push_back({true, it->second});
        }

        for (std::size_t j = 0; j < r.negative.size(); ++j) {
            const Atom& a = r.negative[j];
            CAtom ca;
            ca.pred = gp.intern_predicate(a.predicate, a.arity());
            bool local = false;
            for (const auto& t : a.args) {
                if (t.is_constant()) {
                    ca.args.push_back({false, gp.intern_constant(t.name)});
                    continue;
                }
                auto [it, fresh] = slots.try_emplace(t.name, static_cast<std::uint32_t>(slots.size()));
                if (fresh) local_owner.emplace(t.name, j);
                if (it->second >= c.positive_vars) {
                    if (local_owner.at(t.name) != j) {
                        throw GroundingError("unsafe rule: variable " + t.name +
                                             " occurs only under 'not' but in more than one literal: " +
                                             to_string(r));
                    }
                    local = true;
                }
                ca.args.push_back({true, it->second});
            }
            c.neg.push_back(std::move(ca));
            c.neg_local.push_back(local);
        }
        c.vars = slots.size();
        out.push_back(std::move(c));
    }
    return out;
}

// Relation of possibly-true tuples with column indexes keyed by the bound
// columns.  Postings hold tuple indices in ascending order, so a tuple-index
// range [lo, hi) selects old, delta or full tuples by binary search.
struct Index {
    std::uint64_t mask = 0;
    std::vector<unsigned> cols;
    TupleSet keys;
    std::vector<std::vector<std::uint32_t>> postings;
    std::size_t upto = 0;
};

struct Relation {
    TupleSet tuples;
    std::vector<Index> indexes;
    std::size_t old_end = 0;
    std::size_t delta_end = 0;

    explicit Relation(std::size_t arity) : tuples(arity) {}

    std::size_t index_for(std::uint64_t mask) {
        for (std::size_t i = 0; i < indexes.size(); ++i)
            if (indexes[i].mask == mask) return i;
        Index ix;
        ix.mask = mask;
        for (unsigned c = 0; c < tuples.arity(); ++c)
            if (mask >> c & 1u) ix.cols.push_back(c);
        ix.keys = TupleSet(ix.cols.size());
        indexes.push_back(std::move(ix));
        return indexes.size() - 1;
    }

    void refresh() {
        for (auto& ix : indexes) {
            std::vector<std::uint32_t> key(ix.cols.size());
            for (; ix.upto < tuples.size(); ++ix.upto) {
                const std::uint32_t* t = tuples.tuple(ix.upto);
                for (std::size_t k = 0; k < ix.cols.size(); ++k) key[k] = t[ix.cols[k]];
                auto [kid, fresh] = ix.keys.insert(key.data());
                if (fresh) ix.postings.emplace_back();
                ix.postings[kid].push_back(static_cast<std::uint32_t>(ix.upto));
            }
        }
    }
};

// One lookup in a join: which columns form the key, which bind fresh
// variables and which re-check a variable bound earlier in the same atom.
struct Step {
    std::size_t atom = 0;
    std::size_t index = npos;  // npos: scan, or probe the tuple set when full_key
    bool full_key = false;
    std::vector<Arg> key;
    std::size_t key_offset = 0;  // into the per-thread key scratch
    std::vector<std::pair<unsigned, std::uint32_t>> binds;
    std::vector<std::pair<unsigned, std::uint32_t>> checks;
};

Step make_step(std::size_t atom_index, const CAtom& a, std::vector<char>& bound, Relation& rel,
               std::size_t& scratch) {
    Step s;
    s.atom = atom_index;
    std::uint64_t mask = 0;
    std::vector<char> here(bound.size(), 0);
    for (unsigned c = 0; c < a.args.size(); ++c) {
        const Arg& arg = a.args[c];
        if (!arg.is_var || bound[arg.value]) {
            mask |= std::uint64_t{1} << c;
            s.key.push_back(arg);
        } else if (here[arg.value]) {
            s.checks.emplace_back(c, arg.value);
        } else {
            here[arg.value] = 1;
            s.binds.emplace_back(c, arg.value);
        }
    }
    for (std::size_t v = 0; v < bound.size(); ++v)
        if (here[v]) bound[v] = 1;
    s.full_key = !a.args.empty() && s.key.size() == a.args.size();
    if (mask != 0 && !s.full_key) s.index = rel.index_for(mask);
    s.key_offset = scratch;
    scratch += s.key.size();
    return s;
}

struct Plan {
    std::vector<Step> steps;
};

std::size_t bound_score(const CAtom& a, const std::vector<char>& bound) {
    std::size_t n = 0;
    for (const auto& arg : a.args)
        if (!arg.is_var || bound[arg.value]) ++n;
    return n;
}

/// Positive body join order: `first` (if any), then greedily the atom with
/// the most bound arguments, earliest on ties.
Plan make_plan(const CRule& r, std::size_t first, std::vector<Relation>& rels, std::size_t& scratch) {
    Plan plan;
    std::vector<char> bound(r.vars, 0);
    std::vector<char> used(r.pos.size(), 0);
    auto take = [&](std::size_t i) {
        used[i] = 1;
        plan.steps.push_back(make_step(i, r.pos[i], bound, rels[r.pos[i].pred], scratch));
    };
    if (first != npos) take(first);
    for (std::size_t n = plan.steps.size(); n < r.pos.size(); ++n) {
        std::size_t best = npos, best_score = 0;
        for (std::size_t i = 0; i < r.pos.size(); ++i) {
            if (used[i]) continue;
            std::size_t s = bound_score(r.pos[i], bound);
            if (best == npos || s > best_score) {
                best = i;
                best_score = s;
            }
        }
        take(best);
    }
    return plan;
}

struct Range {
    std::size_t lo = 0;
    std::size_t hi = 0;
};

struct Scratch {
    std::vector<std::uint32_t> binding;
    std::vector<std::uint32_t> keys;
};

void fill_key(const Step& s, Scratch& sc) {
    std::uint32_t* k = sc.keys.data() + s.key_offset;
    for (std::size_t i = 0; i < s.key.size(); ++i) {
        k[i] = s.key[i].is_var ? sc.binding[s.key[i].value] : s.key[i].value;
    }
}

/// Calls visit(tuple index) for every tuple of `rel` in `range` matching the
/// key of `s`; stops when visit returns false.
template <class Visit>
bool lookup(const Step& s, const Relation& rel, Range range, Scratch& sc, Visit&& visit) {
    if (s.full_key) {
        fill_key(s, sc);
        auto ti = rel.tuples.find(sc.keys.data() + s.key_offset);
        if (ti && *ti >= range.lo && *ti < range.hi) return visit(*ti);
        return true;
    }
    if (s.index == npos) {
        for (std::size_t ti = range.lo; ti < range.hi; ++ti)
            if (!visit(static_cast<std::uint32_t>(ti))) return false;
        return true;
    }
    fill_key(s, sc);
    const Index& ix = rel.indexes[s.index];
    auto kid = ix.keys.find(sc.keys.data() + s.key_offset);
    if (!kid) return true;
    const auto& post = ix.postings[*kid];
    auto it = std::lower_bound(post.begin(), post.end(), static_cast<std::uint32_t>(range.lo));
    for (; it != post.end() && *it < range.hi; ++it)
        if (!visit(*it)) return false;
    return true;
}

bool apply(const Step& s, const std::uint32_t* t, Scratch& sc) {
    for (auto [c, slot] : s.binds) sc.binding[slot] = t[c];
    for (auto [c, slot] : s.checks)
        if (sc.binding[slot] != t[c]) return false;
    return true;
}

template <class Emit>
bool join(const CRule& r, const Plan& plan, const std::vector<Relation>& rels,
          const std::vector<Range>& ranges, std::size_t k, Scratch& sc, Emit& emit) {
    if (k == plan.steps.size()) return emit();
    const Step& s = plan.steps[k];
    const Relation& rel = rels[r.pos[s.atom].pred];
    return lookup(s, rel, ranges[s.atom], sc, [&](std::uint32_t ti) {
        if (!apply(s, rel.tuples.tuple(ti), sc)) return true;
        return join(r, plan, rels, ranges, k + 1, sc, emit);
    });
}

void instantiate(const CAtom& a, const Scratch& sc, std::vector<std::uint32_t>& out) {
    for (const auto& arg : a.args) out.push_back(arg.is_var ? sc.binding[arg.value] : arg.value);
}

struct RulePlans {
    std::vector<Plan> delta;        // one per positive atom
    Plan full;
    std::vector<Step> neg_lookups;  // one per negative atom; used when local
    std::size_t scratch = 0;        // key scratch size
};

class Grounder {
public:
    Grounder(const DoubledProgram& program, const GroundOptions& options)
        : options_(options) {
        rules_ = compile_rules(program, gp_);
        for (SymbolId p = 0; p < gp_.predicate_count(); ++p) rels_.emplace_back(gp_.predicate_arity(p));
        for (const auto& a : rules_)
            for (const auto& atom : a.pos)
                if (atom.args.size() > 64) throw GroundingError("arity above 64 is not supported");
        plans_.resize(rules_.size());
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            const CRule& r = rules_[i];
            RulePlans& rp = plans_[i];
            for (std::size_t j = 0; j < r.pos.size(); ++j) rp.delta.push_back(make_plan(r, j, rels_, rp.scratch));
            rp.full = make_plan(r, npos, rels_, rp.scratch);
            std::vector<char> bound(r.vars, 0);
            for (std::size_t v = 0; v < r.positive_vars; ++v) bound[v] = 1;
            for (std::size_t j = 0; j < r.neg.size(); ++j) {
                std::vector<char> b = bound;
                rp.neg_lookups.push_back(make_step(j, r.neg[j], b, rels_[r.neg[j].pred], rp.scratch));
            }
        }
    }

    GroundProgram run() {
        possibly_true();
        instantiate_all();
        return std::move(gp_);
    }

private:
    Scratch make_scratch(std::size_t ri) const {
        Scratch sc;
        sc.binding.assign(rules_[ri].vars, 0);
        sc.keys.assign(plans_[ri].scratch, 0);
        return sc;
    }

    void refresh_all() {
        for (auto& rel : rels_) rel.refresh();
    }

    [[noreturn]] void over_budget(const char* what) const {
        throw GroundingError(std::string("grounding exceeds the budget of ") +
                             std::to_string(options_.rule_budget) + " " + what);
    }

    // Least model of the program with negative bodies dropped.
    void possibly_true() {
        std::vector<std::uint32_t> buf;
        for (const auto& r : rules_) {
            if (!r.pos.empty()) continue;
            buf.clear();
            for (const auto& arg : r.head.args) buf.push_back(arg.value);
            rels_[r.head.pred].tuples.insert(buf.data());
        }
        for (auto& rel : rels_) rel.delta_end = rel.tuples.size();
        refresh_all();

        struct Buffer {
            std::vector<std::uint32_t> data;
            std::size_t count = 0;
        };
        std::vector<Buffer> out(rules_.size());
        std::atomic<std::size_t> derivations{0};
        std::atomic<bool> overflow{false};
        const std::size_t budget = options_.rule_budget;

        for (;;) {
            bool any_delta = false;
            for (const auto& rel : rels_) any_delta |= rel.old_end < rel.delta_end;
            if (!any_delta) break;

            const auto n = static_cast<std::ptrdiff_t>(rules_.size());
#pragma omp parallel for schedule(dynamic, 8) if (options_.parallel)
            for (std::ptrdiff_t ri = 0; ri < n; ++ri) {
                const CRule& r = rules_[ri];
                Buffer& buffer = out[ri];
                buffer = {};
                if (r.pos.empty()) continue;
                Scratch sc = make_scratch(ri);
                std::vector<Range> ranges(r.pos.size());
                auto emit = [&]() {
                    if (derivations.fetch_add(1, std::memory_order_relaxed) >= budget) {
                        overflow.store(true, std::memory_order_relaxed);
                        return false;
                    }
                    instantiate(r.head, sc, buffer.data);
                    ++buffer.count;
                    return true;
                };
                for (std::size_t i = 0; i < r.pos.size(); ++i) {
                    const Relation& di = rels_[r.pos[i].pred];
                    if (di.old_end == di.delta_end) continue;
                    for (std::size_t j = 0; j < r.pos.size(); ++j) {
                        const Relation& rj = rels_[r.pos[j].pred];
                        if (j < i) ranges[j] = {0, rj.old_end};
                        else if (j == i) ranges[j] = {rj.old_end, rj.delta_end};
                        else ranges[j] = {0, rj.delta_end};
                    }
                    if (!join(r, plans_[ri].delta[i], rels_, ranges, 0, sc, emit)) break;
                }
            }
            if (overflow) over_budget("possibly-true derivations");

            for (auto& rel : rels_) rel.old_end = rel.delta_end;
            for (std::size_t ri = 0; ri < rules_.size(); ++ri) {
                Relation& rel = rels_[rules_[ri].head.pred];
                const std::size_t arity = rel.tuples.arity();
                const Buffer& buffer = out[ri];
                for (std::size_t k = 0; k < buffer.count; ++k) rel.tuples.insert(buffer.data.data() + k * arity);
            }
            for (auto& rel : rels_) rel.delta_end = rel.tuples.size();
            refresh_all();
        }
    }

    void instantiate_all() {
        struct Buffer {
            std::vector<std::uint32_t> data;
            std::size_t count = 0;
        };
        std::vector<Buffer> out(rules_.size());
        std::atomic<std::size_t> total{0};
        std::atomic<bool> overflow{false};
        const std::size_t budget = options_.rule_budget;
        const auto n = static_cast<std::ptrdiff_t>(rules_.size());

#pragma omp parallel for schedule(dynamic, 8) if (options_.parallel)
        for (std::ptrdiff_t ri = 0; ri < n; ++ri) {
            const CRule& r = rules_[ri];
            const RulePlans& rp = plans_[ri];
            Buffer& buf = out[ri];
            Scratch sc = make_scratch(ri);
            std::vector<Range> ranges(r.pos.size());
            for (std::size_t j = 0; j < r.pos.size(); ++j) ranges[j] = {0, rels_[r.pos[j].pred].tuples.size()};
            std::vector<std::uint32_t> negs;
            auto emit = [&]() {
                if (total.fetch_add(1, std::memory_order_relaxed) >= budget) {
                    overflow.store(true, std::memory_order_relaxed);
                    return false;
                }
                instantiate(r.head, sc, buf.data);
                for (const auto& a : r.pos) instantiate(a, sc, buf.data);
                negs.clear();
                std::uint32_t count = 0;
                for (std::size_t j = 0; j < r.neg.size(); ++j) {
                    if (!r.neg_local[j]) {
                        negs.push_back(static_cast<std::uint32_t>(j));
                        instantiate(r.neg[j], sc, negs);
                        ++count;
                        continue;
                    }
                    const Step& s = rp.neg_lookups[j];
                    const Relation& rel = rels_[r.neg[j].pred];
                    lookup(s, rel, {0, rel.tuples.size()}, sc, [&](std::uint32_t ti) {
                        if (apply(s, rel.tuples.tuple(ti), sc)) {
                            negs.push_back(static_cast<std::uint32_t>(j));
                            instantiate(r.neg[j], sc, negs);
                            ++count;
                        }
                        return true;
                    });
                }
                buf.data.push_back(count);
                buf.data.insert(buf.data.end(), negs.begin(), negs.end());
                ++buf.count;
                return true;
            };
            if (r.pos.empty()) {
                emit();
            } else {
                join(r, rp.full, rels_, ranges, 0, sc, emit);
            }
        }
        if (overflow) over_budget("ground rules");

        std::vector<AtomId> pos, neg;
        for (std::size_t ri = 0; ri < rules_.size(); ++ri) {
            const CRule& r = rules_[ri];
            const std::uint32_t* p = out[ri].data.data();
            for (std::size_t k = 0; k < out[ri].count; ++k) {
                AtomId head = gp_.intern_atom(r.head.pred, p);
                p += r.head.args.size();
                pos.clear();
                for (const auto& a : r.pos) {
                    pos.push_back(gp_.intern_atom(a.pred, p));
                    p += a.args.size();
                }
                neg.clear();
                const std::uint32_t count = *p++;
                for (std::uint32_t m = 0; m < count; ++m) {
                    const CAtom& a = r.neg[*p++];
                    neg.push_back(gp_.intern_atom(a.pred, p));
                    p += a.args.size();
                }
                gp_.add_rule(head, pos, neg, r.source);
            }
            out[ri] = {};
        }
    }

    GroundOptions options_;
    GroundProgram gp_;
    std::vector<CRule> rules_;
    std::vector<Relation> rels_;
    std::vector<RulePlans> plans_;
};

}  // namespace

GroundProgram ground(const DoubledProgram& program, const GroundOptions& options) {
    return Grounder(program, options).run();
}

}  // namespace hmknf
