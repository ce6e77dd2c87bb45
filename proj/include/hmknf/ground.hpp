#pragma once

// Grounding of a doubled program over its Herbrand universe.
//
// ground() instantiates only rules whose positive body is satisfiable by
// possibly-true atoms: the least model of the program with negative bodies
// dropped, computed seminaively.  Negative literals are kept as written,
// except that a variable occurring only inside one negative literal is read
// existentially, `not p(X, Y)` with local Y becoming the conjunction of
// `not p(x, c)` over the possibly-true instances.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hmknf/transform.hpp"
#include "hmknf/tuple_set.hpp"

namespace hmknf {

using AtomId = std::uint32_t;
using SymbolId = std::uint32_t;

struct GroundRule {
    static constexpr std::uint32_t kNoSource = std::numeric_limits<std::uint32_t>::max();

    AtomId head = 0;
    std::uint32_t pos_begin = 0;
    std::uint32_t pos_count = 0;
    std::uint32_t neg_begin = 0;
    std::uint32_t neg_count = 0;
    std::uint32_t source = kNoSource;  // index of the instantiated ProgramRule
};

/// Interned ground atoms and rules over them.  Atom, predicate and constant
/// ids are dense and assigned in first-occurrence order.
class GroundProgram {
public:
    SymbolId intern_predicate(std::string_view name, std::size_t arity);
    SymbolId intern_constant(std::string_view name);
    AtomId intern_atom(SymbolId predicate, const std::uint32_t* args);
    /// `atom` must be ground.
    AtomId intern_atom(const Atom& atom);

    void add_rule(AtomId head, std::span<const AtomId> positive, std::span<const AtomId> negative,
                  std::uint32_t source = GroundRule::kNoSource);

    std::size_t atom_count() const { return atom_pred_.size(); }
    std::size_t rule_count() const { return rules_.size(); }
    std::size_t predicate_count() const { return pred_names_.size(); }
    std::size_t constant_count() const { return const_names_.size(); }

    SymbolId atom_predicate(AtomId a) const { return atom_pred_[a]; }
    std::span<const std::uint32_t> atom_args(AtomId a) const;
    const std::vector<AtomId>& atoms_of(SymbolId predicate) const { return pred_atoms_[predicate]; }

    const std::string& predicate_name(SymbolId p) const { return pred_names_[p]; }
    std::size_t predicate_arity(SymbolId p) const { return pred_tuples_[p].arity(); }
    const std::string& constant_name(SymbolId c) const { return const_names_[c]; }

    std::optional<SymbolId> find_predicate(std::string_view name) const;
    std::optional<SymbolId> find_constant(std::string_view name) const;
    std::optional<AtomId> find(SymbolId predicate, const std::uint32_t* args) const;
    std::optional<AtomId> find(std::string_view predicate, const std::vector<std::string>& args) const;
    std::optional<AtomId> find(const Atom& atom) const;

    const std::vector<GroundRule>& rules() const { return rules_; }
    std::span<const AtomId> positive(const GroundRule& r) const {
        return {literals_.data() + r.pos_begin, r.pos_count};
    }
    std::span<const AtomId> negative(const GroundRule& r) const {
        return {literals_.data() + r.neg_begin, r.neg_count};
    }

    Atom atom(AtomId a) const;
    std::string atom_string(AtomId a) const;
    std::string rule_string(const GroundRule& r) const;
    /// One rule per line in the native syntax.
    std::string to_string() const;

private:
    std::vector<std::string> pred_names_;
    std::vector<TupleSet> pred_tuples_;
    std::vector<std::vector<AtomId>> pred_atoms_;  // tuple index -> atom id
    std::vector<std::string> const_names_;
    std::vector<SymbolId> atom_pred_;
    std::vector<std::uint32_t> atom_local_;  // tuple index within its predicate
    std::vector<GroundRule> rules_;
    std::vector<AtomId> literals_;
    std::unordered_map<std::string, SymbolId> pred_lookup_;
    std::unordered_map<std::string, SymbolId> const_lookup_;
};

struct GroundOptions {
    std::size_t rule_budget = 10'000'000;
    /// Instantiate rules with OpenMP threads.  The output is identical to the
    /// serial run.
    bool parallel = true;
};

/// Throws GroundingError for unsafe rules or when the number of ground rules
/// (or possibly-true derivations) exceeds the budget.
GroundProgram ground(const DoubledProgram& program, const GroundOptions& options = {});

/// Every substitution over the program's constants, no pruning.  Test oracle;
/// same WFS as ground() on the atoms both programs share, all others false.
GroundProgram ground_exhaustive(const DoubledProgram& program,
                                std::size_t rule_budget = GroundOptions{}.rule_budget);

}  // namespace hmknf
