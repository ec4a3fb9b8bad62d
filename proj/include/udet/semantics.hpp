/**
 * @file semantics.hpp
 * @brief Normalization, weighted scoring, admissible criteria, winner sets and
 *        the premise-compatible answer set of an instance.
 *
 * Scores are weighted sums of min-max normalized attribute values. The set of
 * admissible weight vectors is either an exact interval (two attributes), a
 * grid over the weight simplex, or a single pinned vector. A candidate is
 * compatible with the premises when it is the unique argmax somewhere in that
 * set; the instance is underdetermined when more than one candidate is.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "udet/instance.hpp"

namespace udet {

/// Absolute tolerance for score comparisons.
inline constexpr double kScoreEpsilon = 1e-9;

/// Largest default grid so that the simplex grid has at most this many points.
inline constexpr std::size_t kDefaultGridBudget = 100'000;

using WeightVector = std::vector<double>;

/// Normalized scores in [0, 1], row-major (candidate, attribute).
class ScoreMatrix {
public:
    ScoreMatrix() = default;
    ScoreMatrix(std::vector<std::string> candidates, std::vector<std::string> attributes);

    const std::vector<std::string>& candidates() const { return candidates_; }
    const std::vector<std::string>& attributes() const { return attributes_; }
    std::size_t candidate_count() const { return candidates_.size(); }
    std::size_t attribute_count() const { return attributes_.size(); }

    double at(std::size_t candidate, std::size_t attribute) const {
        return values_[candidate * attributes_.size() + attribute];
    }
    double& at(std::size_t candidate, std::size_t attribute) {
        return values_[candidate * attributes_.size() + attribute];
    }
    double at(const std::string& candidate, const std::string& attribute) const;

    bool operator==(const ScoreMatrix&) const = default;

private:
    std::vector<std::string> candidates_;
    std::vector<std::string> attributes_;
    std::vector<double> values_;
};

ScoreMatrix normalize(const Instance& instance);

/// Weighted score of one candidate; weights follow the matrix's attribute order.
double score(const ScoreMatrix& matrix, const WeightVector& weights, std::size_t candidate);
double score(const ScoreMatrix& matrix, const CriterionSpec& theta, const std::string& candidate);

/// Candidate indices within kScoreEpsilon of the best score, in candidate order.
std::vector<std::size_t> winners_at(const ScoreMatrix& matrix, const WeightVector& weights);

struct WinnerOutcome {
    std::vector<std::string> winners;
    bool unique() const { return winners.size() == 1; }
    bool operator==(const WinnerOutcome&) const = default;
};

WinnerOutcome winners_at(const ScoreMatrix& matrix, const CriterionSpec& theta);

/// Winner set after applying the criterion's own tie-break, if it has one.
WinnerOutcome selection_at(const ScoreMatrix& matrix, const CriterionSpec& theta);

enum class Enumeration { exact_threshold, grid, singleton };

std::string_view to_string(Enumeration e);

/// Number of grid points on the k-attribute simplex with G subdivisions.
std::size_t simplex_grid_size(std::size_t attributes, std::size_t subdivisions);

/// Largest G whose grid stays within kDefaultGridBudget points.
std::size_t default_grid(std::size_t attributes);

/// The set of criteria consistent with the instance's constraints.
struct AdmissibleSet {
    std::vector<std::string> attributes;
    std::vector<WeightConstraint> constraints;
    Enumeration enumeration = Enumeration::grid;
    std::size_t grid = 1;  ///< subdivisions per dimension (grid mode)

    /// Exact mode: admissible weights on the first attribute, [alpha_lo, alpha_hi].
    double alpha_lo = 0.0;
    double alpha_hi = 1.0;

    /// Singleton mode.
    std::optional<std::string> pinned_criterion;
    WeightVector pinned_weights;

    /// Grid points passing the constraints (1 in singleton mode, 0 in exact mode).
    std::size_t point_count = 0;
    /// Attributes whose weight is not constant across the set.
    std::vector<std::string> varying;

    bool contains(const WeightVector& w) const;

    /// Calls f(weights) for every admissible grid point (or the pinned vector).
    /// Not used in exact mode, which is handled analytically.
    template <typename F>
    void for_each_point(F&& f) const;
};

bool satisfies_bounds(const std::vector<WeightConstraint>& constraints,
                      const std::vector<std::string>& attributes, const WeightVector& w);

struct AdmissibleOptions {
    std::size_t grid = 0;           ///< 0 selects default_grid
    bool force_grid = false;        ///< grid even for two attributes
};

/// Throws Error{InfeasibleConstraints} when nothing survives the constraints.
AdmissibleSet admissible_set(const Instance& instance, const AdmissibleOptions& options = {});
AdmissibleSet admissible_set(const Instance& instance, std::size_t grid);

/// One maximal stretch of the two-attribute sweep with a constant winner set.
struct Region {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = true;
    bool hi_closed = true;
    std::vector<std::size_t> winners;

    bool is_point() const { return lo == hi; }
    bool operator==(const Region&) const = default;
};

/// Crossing points in (lo, hi) of the per-candidate score lines, ascending.
std::vector<double> crossing_thresholds(const ScoreMatrix& matrix, std::size_t first, std::size_t second,
                                        double lo, double hi);

/// Winner regions as alpha (weight on `first`, 1 - alpha on `second`) runs
/// over [lo, hi], computed from the pairwise crossing points.
std::vector<Region> threshold_regions(const ScoreMatrix& matrix, std::size_t first, std::size_t second,
                                      double lo = 0.0, double hi = 1.0);

struct SemanticsResult {
    std::vector<std::string> compatible;  ///< candidate order
    bool underdetermined = false;
    std::optional<std::string> entailed;
    std::vector<std::pair<std::string, std::string>> preference_closure;

    /// Compatibility fell back to the union of tied winner sets.
    bool weak_fallback = false;
    ScoreMatrix matrix;
    /// beats[a][b]: a outscores b by more than kScoreEpsilon everywhere in the set.
    std::vector<std::vector<bool>> score_unanimous;
    /// tied[a][b]: scores within kScoreEpsilon everywhere in the set.
    std::vector<std::vector<bool>> always_tied;
    /// closure[a][b]: (a, b) is in preference_closure.
    std::vector<std::vector<bool>> closure;

    bool operator==(const SemanticsResult&) const = default;
};

/// Throws Error{ContradictoryPremises} when the preferences contradict the
/// scores or filter every candidate away.
SemanticsResult compatible_answers(const Instance& instance, const AdmissibleSet& adm);

bool entails_preference(const Instance& instance, const AdmissibleSet& adm, const std::string& a,
                        const std::string& b);
bool entails_preference(const Instance& instance, const SemanticsResult& semantics, const std::string& a,
                        const std::string& b);

// ---------------------------------------------------------------------------

namespace detail {

template <typename F>
void for_each_composition(std::size_t parts, std::size_t total, F&& f) {
    std::vector<std::size_t> counts(parts, 0);
    WeightVector w(parts, 0.0);
    const double denom = static_cast<double>(total);
    // counts[0..parts-2] are free, the last part takes the remainder.
    auto emit = [&](std::size_t used) {
        counts[parts - 1] = total - used;
        for (std::size_t i = 0; i < parts; ++i) w[i] = static_cast<double>(counts[i]) / denom;
        f(static_cast<const WeightVector&>(w));
    };
    if (parts == 1) {
        emit(0);
        return;
    }
    std::size_t used = 0;
    while (true) {
        emit(used);
        // advance the odometer over the free parts, last free part fastest
        std::size_t i = parts - 2;
        while (true) {
            if (used < total) {
                ++counts[i];
                ++used;
                break;
            }
            used -= counts[i];
            counts[i] = 0;
            if (i == 0) return;
            --i;
        }
    }
}

}  // namespace detail

template <typename F>
void AdmissibleSet::for_each_point(F&& f) const {
    if (enumeration == Enumeration::singleton) {
        f(static_cast<const WeightVector&>(pinned_weights));
        return;
    }
    if (enumeration == Enumeration::exact_threshold) return;
    const bool filter = std::any_of(constraints.begin(), constraints.end(), [](const WeightConstraint& c) {
        return std::holds_alternative<BoundConstraint>(c);
    });
    detail::for_each_composition(attributes.size(), grid, [&](const WeightVector& w) {
        if (!filter || satisfies_bounds(constraints, attributes, w)) f(w);
    });
}

}  // namespace udet
