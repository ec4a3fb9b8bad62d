/**
 * @file policy.hpp
 * @brief Four-branch response policy: answer directly when the premises
 *        determine the answer; otherwise ask for clarification, answer
 *        conditionally per declared criterion, or recommend under a disclosed
 *        default criterion when a decision is required.
 */

#pragma once

#include <string>

#include "udet/response.hpp"

namespace udet {

enum class PolicyBranch { direct, clarify, conditional, recommend_with_assumptions };

std::string_view to_string(PolicyBranch branch);

struct PolicyDecision {
    PolicyBranch branch = PolicyBranch::direct;
    Response response;
    std::string rationale;
};

PolicyDecision decide(const Instance& instance, const SemanticsResult& semantics, const AdmissibleSet& adm);

}  // namespace udet
