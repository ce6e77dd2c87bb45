#pragma once

// Well-founded model of a ground program by the alternating fixed point
//   T0 = {}, U0 = gamma({}), T(i+1) = gamma(U(i)), U(i+1) = gamma(T(i+1))
// where gamma(I) is the least model of the reduct of the program by I.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hmknf/ground.hpp"
#include "hmknf/transform.hpp"

namespace hmknf {

enum class Truth : std::uint8_t { False = 0, Undefined = 1, True = 2 };

inline Truth operator!(Truth t) { return static_cast<Truth>(2 - static_cast<int>(t)); }
inline Truth min(Truth a, Truth b) { return a < b ? a : b; }
inline Truth max(Truth a, Truth b) { return a < b ? b : a; }
const char* to_string(Truth t);

/// Indexed by atom id.
using Interpretation = std::vector<bool>;

struct ThreeValuedModel {
    std::vector<Truth> values;
    std::size_t iterations = 0;

    Truth value(AtomId a) const { return a < values.size() ? values[a] : Truth::False; }
    std::vector<AtomId> true_atoms() const;
    std::vector<AtomId> undefined_atoms() const;

    friend bool operator==(const ThreeValuedModel& a, const ThreeValuedModel& b) {
        return a.values == b.values;
    }
};

/// Least model of a negation-free program.  Throws std::invalid_argument if
/// some rule has a negative body.
Interpretation least_model(const GroundProgram& program);

/// Least model of the reduct of `program` by `interpretation`.
Interpretation gamma(const GroundProgram& program, const Interpretation& interpretation);

/// Throws std::logic_error if an iteration breaks monotonicity.
ThreeValuedModel alternating_fixed_point(const GroundProgram& program);

/// Exhaustive search over partial stable models; at most kBruteForceLimit
/// atoms, otherwise std::invalid_argument.
inline constexpr std::size_t kBruteForceLimit = 14;
ThreeValuedModel brute_force_wfs(const GroundProgram& program);

/// A source atom L with aL true and dL false.
struct Inconsistency {
    Literal literal;                     // -p(...) for a primed predicate
    std::vector<std::size_t> support;    // ground rules deriving aL with a true body
    std::vector<std::size_t> blocking;   // ground rules deriving nL with a true body
    std::vector<std::size_t> origins;    // DoubledProgram origins of the above
};

struct InconsistencyReport {
    std::vector<Inconsistency> atoms;
    bool empty() const { return atoms.empty(); }
};

InconsistencyReport mknf_consistency_check(const DoubledProgram& program, const GroundProgram& ground,
                                           const ThreeValuedModel& model);

/// Rules whose head predicate is reachable from the a, d and n levels of the
/// given source predicates (and of their primed twins), in program order.
DoubledProgram relevance_slice(const DoubledProgram& program,
                               const std::vector<std::string>& source_predicates);
DoubledProgram relevance_slice(const DoubledProgram& program, const ConjunctiveQuery& query);

/// A compiled program with its ground program and model.  Immutable; safe to
/// query from several threads.
class KnowledgeModel {
public:
    explicit KnowledgeModel(DoubledProgram program, const GroundOptions& options = {});
    KnowledgeModel(DoubledProgram program, GroundProgram ground, ThreeValuedModel model);

    const DoubledProgram& program() const { return program_; }
    const GroundProgram& ground() const { return ground_; }
    const ThreeValuedModel& model() const { return model_; }

    /// Truth of a ground atom over mangled names; unknown atoms are false.
    Truth truth(const Atom& atom) const;
    Truth truth(AtomId atom) const { return model_.value(atom); }

    InconsistencyReport check() const;

private:
    DoubledProgram program_;
    GroundProgram ground_;
    ThreeValuedModel model_;
};

}  // namespace hmknf
