#include "udet/response.hpp"

#include <algorithm>
#include <set>

#include "udet/errors.hpp"

namespace udet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string join(const std::vector<std::string>& items, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

CriterionSpec require_criterion(const Instance& instance, const std::string& name) {
    auto c = resolve_criterion(instance, name);
    if (!c) throw Error(ErrorKind::UndeclaredReference, "unknown criterion '" + name + "'");
    return *c;
}

void require_candidate(const Instance& instance, const std::string& name) {
    if (!instance.candidate_index(name))
        throw Error(ErrorKind::UndeclaredReference, "unknown candidate '" + name + "'");
}

bool selects_only(const ScoreMatrix& matrix, const CriterionSpec& theta, const std::string& candidate) {
    const WinnerOutcome outcome = selection_at(matrix, theta);
    return outcome.unique() && outcome.winners.front() == candidate;
}

}  // namespace

std::string_view form_name(const Response& response) {
    return std::visit(overloaded{
                          [](const Decisive&) { return std::string_view("decisive"); },
                          [](const Conditional&) { return std::string_view("conditional"); },
                          [](const Equivalence&) { return std::string_view("equivalence"); },
                          [](const Clarify&) { return std::string_view("clarify"); },
                          [](const Refuse&) { return std::string_view("refuse"); },
                      },
                      response);
}

std::string label(const Response& response) {
    return std::visit(overloaded{
                          [](const Decisive& r) {
                              std::string s = "decisive(" + r.candidate;
                              if (r.declared_theta) s += " | " + *r.declared_theta;
                              return s + ")";
                          },
                          [](const Conditional& r) {
                              std::vector<std::string> parts;
                              for (const auto& b : r.branches) parts.push_back(b.criterion + " -> " + b.candidate);
                              return "conditional(" + join(parts, "; ") + ")";
                          },
                          [](const Equivalence& r) { return "equivalence(" + join(r.candidates, ", ") + ")"; },
                          [](const Clarify& r) { return "clarify(" + join(r.missing, ", ") + ")"; },
                          [](const Refuse& r) { return "refuse(\"" + r.reason + "\")"; },
                      },
                      response);
}

double u_assistive_score(const Response& response, const SemanticsResult&, const AssistiveRubric& rubric) {
    // relevance is granted to every well-formed response
    bool informative = true;
    bool actionable = false;
    bool decisive = false;
    std::visit(overloaded{
                   [&](const Decisive&) { actionable = decisive = true; },
                   [&](const Conditional& r) { actionable = !r.branches.empty(); },
                   [&](const Equivalence&) {},
                   [&](const Clarify& r) { actionable = !r.missing.empty(); },
                   [&](const Refuse&) { informative = false; },
               },
               response);
    double u = rubric.relevance;
    if (informative) u += rubric.informativeness;
    if (actionable) u += rubric.actionability;
    if (decisive) u += rubric.decisiveness;
    return std::clamp(u, 0.0, 1.0);
}

void check_response(const Instance& instance, const Response& response) {
    std::visit(overloaded{
                   [&](const Decisive& r) {
                       require_candidate(instance, r.candidate);
                       if (r.declared_theta) require_criterion(instance, *r.declared_theta);
                   },
                   [&](const Conditional& r) {
                       if (r.branches.empty()) throw Error(ErrorKind::InvalidResponse, "conditional without branches");
                       std::set<std::string> seen;
                       for (const auto& b : r.branches) {
                           require_criterion(instance, b.criterion);
                           require_candidate(instance, b.candidate);
                           if (!seen.insert(b.criterion).second)
                               throw Error(ErrorKind::InvalidResponse,
                                           "conditional repeats criterion '" + b.criterion + "'");
                       }
                   },
                   [&](const Equivalence& r) {
                       std::set<std::string> distinct(r.candidates.begin(), r.candidates.end());
                       if (distinct.size() < 2 || distinct.size() != r.candidates.size())
                           throw Error(ErrorKind::InvalidResponse, "equivalence needs at least 2 distinct candidates");
                       for (const auto& c : r.candidates) require_candidate(instance, c);
                   },
                   [&](const Clarify& r) {
                       if (r.missing.empty()) throw Error(ErrorKind::InvalidResponse, "clarify lists nothing");
                   },
                   [&](const Refuse&) {},
               },
               response);
}

std::vector<std::string> clarification_items(const Instance&, const SemanticsResult& semantics,
                                             const AdmissibleSet& adm) {
    if (!adm.varying.empty()) return adm.varying;
    if (semantics.underdetermined) return {"preference among " + join(semantics.compatible, ", ")};
    return {"criterion"};
}

Verdict evaluate(const Instance& instance, const SemanticsResult& semantics, const AdmissibleSet& adm,
                 const Response& response, const AssistiveRubric& rubric) {
    check_response(instance, response);
    const ScoreMatrix& m = semantics.matrix;
    Verdict v;
    std::visit(
        overloaded{
            [&](const Decisive& r) {
                v.u_decisive = true;
                v.c_strong = semantics.entailed == r.candidate;
                v.nb_strict = v.c_strong;
                v.hidden_theta = !r.declared_theta.has_value();
                if (r.declared_theta) {
                    const bool selected = selects_only(m, require_criterion(instance, *r.declared_theta), r.candidate);
                    v.nb_transparent = v.c_strong || selected;
                    v.c_cond = v.c_strong || selected;
                } else {
                    v.nb_transparent = v.c_strong;
                    bool some = false;
                    for (const auto& c : instance.criteria) some = some || selects_only(m, c, r.candidate);
                    if (adm.pinned_criterion)
                        some = some || selects_only(m, require_criterion(instance, *adm.pinned_criterion), r.candidate);
                    // entailment survives adjoining any criterion
                    v.c_cond = v.c_strong || some;
                }
            },
            [&](const Conditional& r) {
                bool all = true;
                std::set<std::string> answers, named;
                for (const auto& b : r.branches) {
                    all = all && selects_only(m, require_criterion(instance, b.criterion), b.candidate);
                    answers.insert(b.candidate);
                    named.insert(b.criterion);
                }
                bool silent_exclusion = false;
                for (const auto& c : instance.criteria) {
                    if (named.count(c.name)) continue;
                    const WinnerOutcome w = winners_at(m, c);
                    if (w.unique() && !answers.count(w.winners.front())) silent_exclusion = true;
                }
                v.c_strong = all;
                v.c_cond = all;
                v.nb_strict = all && !silent_exclusion;
                v.nb_transparent = true;
            },
            [&](const Equivalence& r) {
                bool all = true;
                for (std::size_t i = 0; i < r.candidates.size(); ++i) {
                    for (std::size_t j = i + 1; j < r.candidates.size(); ++j) {
                        const std::size_t a = *instance.candidate_index(r.candidates[i]);
                        const std::size_t b = *instance.candidate_index(r.candidates[j]);
                        all = all && semantics.always_tied[a][b] && !semantics.closure[a][b] &&
                              !semantics.closure[b][a];
                    }
                }
                v.c_strong = v.c_cond = v.nb_strict = v.nb_transparent = all;
            },
            [&](const Clarify&) { v.c_strong = v.c_cond = v.nb_strict = v.nb_transparent = true; },
            [&](const Refuse&) { v.c_strong = v.c_cond = v.nb_strict = v.nb_transparent = true; },
        },
        response);
    v.u_assistive = u_assistive_score(response, semantics, rubric);
    return v;
}

}  // namespace udet
