#include "udet/policy.hpp"

#include <algorithm>
#include <sstream>

namespace udet {

std::string_view to_string(PolicyBranch branch) {
    switch (branch) {
        case PolicyBranch::direct: return "direct";
        case PolicyBranch::clarify: return "clarify";
        case PolicyBranch::conditional: return "conditional";
        case PolicyBranch::recommend_with_assumptions: return "recommend_with_assumptions";
    }
    return "?";
}

namespace {

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
    return out;
}

std::string preamble(const Instance& instance, const SemanticsResult& semantics) {
    std::vector<std::string> names;
    for (const auto& c : instance.criteria) names.push_back(c.name);
    std::ostringstream os;
    os << "compatible answers: " << semantics.compatible.size() << " (" << join(semantics.compatible) << ")"
       << "; declared criteria: " << (names.empty() ? "none" : join(names))
       << "; decision required: " << (instance.decisiveness_required ? "yes" : "no") << ". ";
    return os.str();
}

}  // namespace

PolicyDecision decide(const Instance& instance, const SemanticsResult& semantics, const AdmissibleSet& adm) {
    PolicyDecision d;
    std::string why = preamble(instance, semantics);

    if (semantics.compatible.size() == 1) {
        d.branch = PolicyBranch::direct;
        d.response = Decisive{semantics.compatible.front(), adm.pinned_criterion};
        d.rationale = why + "The premises determine a single answer.";
        return d;
    }

    if (instance.decisiveness_required) {
        const CriterionSpec uniform = uniform_default_criterion(instance);
        const WinnerOutcome tied = winners_at(semantics.matrix, uniform);
        const WinnerOutcome chosen = selection_at(semantics.matrix, uniform);
        d.branch = PolicyBranch::recommend_with_assumptions;
        d.response = Decisive{chosen.winners.front(), uniform.name};
        why += "A decision is required; recommending under the disclosed uniform weighting (" +
               std::string(kUniformDefault) + ").";
        if (!tied.unique())
            why += " Uniform weights tie between " + join(tied.winners) +
                   "; tie broken lexicographically by candidate identifier in favour of " + chosen.winners.front() +
                   ".";
        d.rationale = why;
        return d;
    }

    if (!instance.criteria.empty()) {
        Conditional cond;
        for (const auto& c : instance.criteria) {
            const WinnerOutcome w = winners_at(semantics.matrix, c);
            if (w.unique()) cond.branches.push_back({c.name, w.winners.front()});
        }
        if (!cond.branches.empty()) {
            d.branch = PolicyBranch::conditional;
            d.response = std::move(cond);
            d.rationale = why + "Several criteria are plausible; answering conditionally on each.";
            return d;
        }
        why += "No declared criterion selects a unique answer. ";
    }

    d.branch = PolicyBranch::clarify;
    d.response = Clarify{clarification_items(instance, semantics, adm)};
    d.rationale = why + "No criterion resolves the choice; asking for the missing weighting.";
    return d;
}

}  // namespace udet
