/**
 * @file response.hpp
 * @brief Structured response forms and the predicate evaluator.
 *
 * A Verdict records, for one response to one instance, whether it is strongly
 * or conditionally correct, strictly or transparently non-biased, decisive,
 * how assistive it is, and whether it relies on an undisclosed criterion.
 */

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "udet/instance.hpp"
#include "udet/semantics.hpp"

namespace udet {

struct Decisive {
    std::string candidate;
    std::optional<std::string> declared_theta;
    bool operator==(const Decisive&) const = default;
};

struct ConditionalBranch {
    std::string criterion;
    std::string candidate;
    bool operator==(const ConditionalBranch&) const = default;
};

struct Conditional {
    std::vector<ConditionalBranch> branches;
    bool operator==(const Conditional&) const = default;
};

struct Equivalence {
    std::vector<std::string> candidates;
    bool operator==(const Equivalence&) const = default;
};

struct Clarify {
    std::vector<std::string> missing;
    bool operator==(const Clarify&) const = default;
};

struct Refuse {
    std::string reason;
    bool operator==(const Refuse&) const = default;
};

using Response = std::variant<Decisive, Conditional, Equivalence, Clarify, Refuse>;

std::string_view form_name(const Response& response);

/// Compact one-line rendering, e.g. "decisive(A | merit_first)".
std::string label(const Response& response);

struct Verdict {
    bool c_strong = false;
    bool c_cond = false;
    bool nb_strict = false;
    bool nb_transparent = false;
    bool u_decisive = false;
    double u_assistive = 0.0;
    bool hidden_theta = false;

    bool operator==(const Verdict&) const = default;
};

/// Weights of the relevance / informativeness / actionability / decisiveness
/// indicators. They must sum to 1 so a decisive answer scores exactly 1.
struct AssistiveRubric {
    double relevance = 0.25;
    double informativeness = 0.25;
    double actionability = 0.25;
    double decisiveness = 0.25;
};

double u_assistive_score(const Response& response, const SemanticsResult& semantics,
                         const AssistiveRubric& rubric = {});

/// Throws Error{UndeclaredReference} for unknown candidates or criteria and
/// Error{InvalidResponse} for malformed responses.
void check_response(const Instance& instance, const Response& response);

/// What a clarification request should ask for: the attributes whose weights
/// the admissible set leaves open, or the tie that remains otherwise.
std::vector<std::string> clarification_items(const Instance& instance, const SemanticsResult& semantics,
                                             const AdmissibleSet& adm);

Verdict evaluate(const Instance& instance, const SemanticsResult& semantics, const AdmissibleSet& adm,
                 const Response& response, const AssistiveRubric& rubric = {});

}  // namespace udet
