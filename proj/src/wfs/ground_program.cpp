#include <sstream>

#include "hmknf/error.hpp"
#include "hmknf/ground.hpp"
#include "hmknf/printer.hpp"

namespace hmknf {

SymbolId GroundProgram::intern_predicate(std::string_view name, std::size_t arity) {
    auto it = pred_lookup_.find(std::string(name));
    if (it != pred_lookup_.end()) {
        if (pred_tuples_[it->second].arity() != arity) {
            throw GroundingError("predicate " + std::string(name) + " used with arity " +
                                 std::to_string(pred_tuples_[it->second].arity()) + " and " +
                                 std::to_string(arity));
        }
        return it->second;
    }
    auto id = static_cast<SymbolId>(pred_names_.size());
    pred_names_.emplace_back(name);
    pred_tuples_.emplace_back(arity);
    pred_atoms_.emplace_back();
    pred_lookup_.emplace(std::string(name), id);
    return id;
}

SymbolId GroundProgram::intern_constant(std::string_view name) {
    auto [it, fresh] = const_lookup_.try_emplace(std::string(name), const_names_.size());
    if (fresh) const_names_.emplace_back(name);
    return it->second;
}

AtomId GroundProgram::intern_atom(SymbolId predicate, const std::uint32_t* args) {
    auto [local, fresh] = pred_tuples_[predicate].insert(args);
    if (!fresh) return pred_atoms_[predicate][local];
    auto id = static_cast<AtomId>(atom_pred_.size());
    atom_pred_.push_back(predicate);
    atom_local_.push_back(local);
    pred_atoms_[predicate].push_back(id);
    return id;
}

AtomId GroundProgram::intern_atom(const Atom& atom) {
    if (!atom.is_ground()) throw GroundingError("atom is not ground: " + hmknf::to_string(atom));
    SymbolId p = intern_predicate(atom.predicate, atom.arity());
    std::vector<std::uint32_t> args;
    for (const auto& t : atom.args) args.push_back(intern_constant(t.name));
    return intern_atom(p, args.data());
}

void GroundProgram::add_rule(AtomId head, std::span<const AtomId> positive,
                             std::span<const AtomId> negative, std::uint32_t source) {
    GroundRule r;
    r.head = head;
    r.source = source;
    r.pos_begin = static_cast<std::uint32_t>(literals_.size());
    r.pos_count = static_cast<std::uint32_t>(positive.size());
    literals_.insert(literals_.end(), positive.begin(), positive.end());
    r.neg_begin = static_cast<std::uint32_t>(literals_.size());
    r.neg_count = static_cast<std::uint32_t>(negative.size());
    literals_.insert(literals_.end(), negative.begin(), negative.end());
    rules_.push_back(r);
}

std::span<const std::uint32_t> GroundProgram::atom_args(AtomId a) const {
    const TupleSet& ts = pred_tuples_[atom_pred_[a]];
    return {ts.tuple(atom_local_[a]), ts.arity()};
}

std::optional<SymbolId> GroundProgram::find_predicate(std::string_view name) const {
    auto it = pred_lookup_.find(std::string(name));
    if (it == pred_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<SymbolId> GroundProgram::find_constant(std::string_view name) const {
    auto it = const_lookup_.find(std::string(name));
    if (it == const_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<AtomId> GroundProgram::find(SymbolId predicate, const std::uint32_t* args) const {
    auto local = pred_tuples_[predicate].find(args);
    if (!local) return std::nullopt;
    return pred_atoms_[predicate][*local];
}

std::optional<AtomId> GroundProgram::find(std::string_view predicate,
                                          const std::vector<std::string>& args) const {
    auto p = find_predicate(predicate);
    if (!p || predicate_arity(*p) != args.size()) return std::nullopt;
    std::vector<std::uint32_t> ids;
    for (const auto& a : args) {
        auto c = find_constant(a);
        if (!c) return std::nullopt;
        ids.push_back(*c);
    }
    return find(*p, ids.data());
}

std::optional<AtomId> GroundProgram::find(const Atom& atom) const {
    std::vector<std::string> args;
    for (const auto& t : atom.args) {
        if (t.is_variable()) return std::nullopt;
        args.push_back(t.name);
    }
    return find(atom.predicate, args);
}

Atom GroundProgram::atom(AtomId a) const {
    Atom out{pred_names_[atom_pred_[a]], {}, {}};
    for (auto c : atom_args(a)) out.args.push_back(Term::constant(const_names_[c]));
    return out;
}

std::string GroundProgram::atom_string(AtomId a) const { return hmknf::to_string(atom(a)); }

std::string GroundProgram::rule_string(const GroundRule& r) const {
    std::string out = atom_string(r.head);
    if (r.pos_count == 0 && r.neg_count == 0) return out + ".";
    out += " :- ";
    bool first = true;
    for (AtomId a : positive(r)) {
        if (!first) out += ", ";
        first = false;
        out += atom_string(a);
    }
    for (AtomId a : negative(r)) {
        if (!first) out += ", ";
        first = false;
        out += "not " + atom_string(a);
    }
    return out + ".";
}

std::string GroundProgram::to_string() const {
    std::ostringstream os;
    for (const auto& r : rules_) os << rule_string(r) << '\n';
    return os.str();
}

}  // namespace hmknf
