/**
 * @file trilemma.hpp
 * @brief Exhaustive check that no structured response is simultaneously
 *        strongly correct, strictly non-biased and decisive on an
 *        underdetermined instance.
 *
 * The check is closed-world: it quantifies over the enumerated response
 * space (every decisive answer with and without each declared criterion,
 * every conditional over a criterion subset, every pairwise equivalence,
 * one clarification and one refusal), not over arbitrary text.
 */

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "udet/generator.hpp"
#include "udet/response.hpp"

namespace udet {

/// Maximum number of declared criteria the enumeration accepts.
inline constexpr std::size_t kMaxEnumeratedCriteria = 12;

inline constexpr std::string_view kClosedWorldCaveat =
    "closed world: checked over the enumerated structured response space only";

struct ResponseSpace {
    std::vector<Response> responses;
};

/// Upper bound n*(1+m) + 2^m + C(n,2) + 2 for n candidates and m criteria.
std::size_t response_space_bound(std::size_t candidates, std::size_t criteria);

/// Throws Error{ResponseSpaceTooLarge} when more than 12 criteria are declared.
ResponseSpace enumerate_responses(const Instance& instance, const SemanticsResult& semantics,
                                  const AdmissibleSet& adm);

enum class PairwiseForm {
    correct_and_unbiased_not_decisive,  ///< C_strong & NB_strict => !U_decisive
    unbiased_and_decisive_not_correct,  ///< NB_strict & U_decisive => !C_strong
    correct_and_decisive_not_unbiased,  ///< C_strong & U_decisive => !NB_strict
};

std::string_view to_string(PairwiseForm form);

struct PairwiseWitness {
    std::size_t response = 0;  ///< index into TrilemmaReport::responses
    bool consequent = false;
};

struct PairwiseResult {
    PairwiseForm form{};
    std::vector<PairwiseWitness> antecedent;
    /// Witnesses whose consequent fails while the instance is underdetermined.
    std::size_t violations = 0;
};

struct TrilemmaReport {
    std::string instance_id;
    bool underdetermined = false;
    std::vector<Response> responses;
    std::vector<Verdict> verdicts;
    std::vector<Response> counterexamples;
    std::array<PairwiseResult, 3> pairwise;
    std::optional<Response> conflict_free_witness;
    std::optional<Verdict> witness_verdict;
    std::string caveat{kClosedWorldCaveat};
};

/// Pairwise forms as implications on one verdict; vacuous when determined.
bool pairwise_holds(PairwiseForm form, const Verdict& verdict, bool underdetermined);

TrilemmaReport check_trilemma(const Instance& instance, const AdmissibleSet& adm, const SemanticsResult& semantics);
TrilemmaReport check_trilemma(const Instance& instance, std::size_t grid = 0);

struct BatchSummary {
    std::size_t instances = 0;
    std::size_t underdetermined = 0;
    std::size_t responses = 0;
    std::size_t counterexamples = 0;
    std::size_t pairwise_violations = 0;
    std::size_t determined_without_witness = 0;
};

BatchSummary summarize(const std::vector<TrilemmaReport>& reports);

/// Checks generated instances [0, count) with up to `workers` threads.
/// Reports come back in index order whatever the scheduling.
std::vector<TrilemmaReport> check_random_batch(const GeneratorConfig& config, std::size_t count,
                                               std::size_t grid = 0, std::size_t workers = 1);

}  // namespace udet
