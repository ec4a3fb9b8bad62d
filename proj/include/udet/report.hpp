/**
 * @file report.hpp
 * @brief Whole-instance analysis and its text / JSON renderings, plus the
 *        two-attribute threshold sweep table.
 *
 * JSON schema (top-level keys, frozen):
 *   version   "udet-report/1"
 *   engine    enumeration, grid, admissible_points, alpha_interval,
 *             pinned_criterion, epsilon_score, epsilon_weight, tool_version
 *   instance  id, question, candidates, attributes, criteria, decisiveness_required
 *   semantics compatible, underdetermined, entailed, preference_closure, weak_fallback
 *   verdicts  [{label, response, c_strong, c_cond, nb_strict, nb_transparent,
 *               u_decisive, u_assistive, hidden_theta}]
 *   policy    branch, label, response, rationale, verdict
 *   trilemma  underdetermined, responses_evaluated, counterexamples, pairwise,
 *             conflict_free_witness, caveat
 *   generated_at (only with timestamps enabled)
 */

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "udet/policy.hpp"
#include "udet/trilemma.hpp"

namespace udet {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kReportVersion = "udet-report/1";

struct AnalysisOptions {
    std::size_t grid = 0;  ///< 0 selects the default grid
    bool require_decision = false;
    std::optional<std::string> timestamp;
};

struct AnalysisReport {
    Instance instance;
    AdmissibleSet admissible;
    SemanticsResult semantics;
    TrilemmaReport trilemma;
    PolicyDecision policy;
    Verdict policy_verdict;
    std::optional<std::string> timestamp;
};

/// Runs every stage. Throws Error on infeasible or contradictory premises.
AnalysisReport analyze(Instance instance, const AnalysisOptions& options = {});

nlohmann::ordered_json response_json(const Response& response);
nlohmann::ordered_json verdict_json(const Verdict& verdict);
nlohmann::ordered_json trilemma_json(const TrilemmaReport& report);
nlohmann::ordered_json report_json(const AnalysisReport& report);

std::string render_text(const AnalysisReport& report);
std::string render_json(const AnalysisReport& report);

/// Multi-line pairwise table for one trilemma report.
std::string render_trilemma_text(const TrilemmaReport& report);
std::string render_policy_text(const PolicyDecision& decision, const Verdict& verdict);

/// Renders a boolean as the text report does ("1" / "0").
std::string flag(bool value);

struct SweepTable {
    std::string instance_id;
    std::string first;   ///< attribute weighted by alpha
    std::string second;  ///< attribute weighted by 1 - alpha
    std::vector<Region> regions;
    std::vector<std::string> candidates;
    std::vector<double> thresholds;
    std::optional<std::pair<double, double>> admissible;
};

/// Throws Error{InvalidArgument} when the instance cannot be reduced to the
/// two attributes (none named and not exactly two declared, or unknown names).
SweepTable sweep(const Instance& instance, const std::optional<std::pair<std::string, std::string>>& attributes);

std::string render_region(const Region& region, const std::vector<std::string>& candidates);
std::string render_sweep_text(const SweepTable& table);

}  // namespace udet
