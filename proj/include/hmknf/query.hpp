#pragma once

// Paraconsistent conjunctive query answering over a computed model.  A query
// q is doubled into q_a (positives at a-level, negatives at d-level) and q_d
// (positives at d-level, negatives at a-level); a binding is consistent when
// both are true and contradictory when q_a is true and q_d is false.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hmknf/kb.hpp"
#include "hmknf/wfs.hpp"

namespace hmknf {

enum class Classification { Consistent, Contradictory, Undefined, False };
const char* to_string(Classification c);
Classification classify(Truth a, Truth d);

enum class Mode { Consistent, Inconsistent, All };
/// "consistent", "inconsistent" or "all"; throws QueryError otherwise.
Mode parse_mode(std::string_view text);
const char* to_string(Mode m);

/// Throws QueryError for predicates missing from the symbol table or used
/// with another arity.
std::pair<ConjunctiveQuery, ConjunctiveQuery> double_query(const ConjunctiveQuery& q,
                                                           const SymbolTable& symbols);

struct EvaluatedRow {
    std::vector<SymbolId> binding;  // constant ids, one per answer variable
    Truth truth = Truth::False;
};

/// Truth of `q` (over mangled names) for each binding of its answer
/// variables: conjunction is min, projection of other variables is max.
/// Only non-false rows unless `include_false`, in which case every binding
/// over the program's constants is listed.  Rows are sorted by constant ids.
std::vector<EvaluatedRow> evaluate(const ConjunctiveQuery& q, const KnowledgeModel& model,
                                   bool include_false = false);

struct Answer {
    std::vector<std::string> binding;  // constant names, one per answer variable
    Truth a = Truth::False;
    Truth d = Truth::False;
    Classification classification = Classification::False;

    friend bool operator==(const Answer&, const Answer&) = default;
};

struct AnswerSet {
    std::vector<std::string> answer_vars;
    std::vector<Answer> answers;

    friend bool operator==(const AnswerSet&, const AnswerSet&) = default;
};

/// Consistent bindings, plus undefined ones where neither level is false.
AnswerSet consistent_answers(const ConjunctiveQuery& q, const KnowledgeModel& model);
/// Bindings with q_a true and q_d false.
AnswerSet inconsistent_answers(const ConjunctiveQuery& q, const KnowledgeModel& model);
/// Every non-false binding with its classification.
AnswerSet answer(const ConjunctiveQuery& q, const KnowledgeModel& model, Mode mode);

/// `X=rw1, Y=c` for one answer; empty for a closed query.
std::string binding_string(const AnswerSet& set, const Answer& answer);

}  // namespace hmknf
