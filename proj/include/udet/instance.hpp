/**
 * @file instance.hpp
 * @brief The formal decision instance: candidates, attribute schemas, facts,
 *        named criteria, weight constraints and explicit preference premises.
 *
 * An Instance is a plain value. Nothing here computes scores; see
 * semantics.hpp for that.
 */

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace udet {

/// Weight vectors must sum to one within this tolerance.
inline constexpr double kWeightEpsilon = 1e-9;

/// Name of the built-in disclosed default criterion (uniform weights).
inline constexpr std::string_view kUniformDefault = "uniform_default";

bool is_identifier(std::string_view text);

struct OrdinalScale {
    std::string name;
    std::vector<std::string> levels;  ///< lowest first

    std::optional<std::size_t> rank(std::string_view level) const;

    bool operator==(const OrdinalScale&) const = default;
};

enum class AttributeKind { numeric, ordinal };
enum class Direction { higher_better, lower_better };

struct AttributeSchema {
    std::string name;
    AttributeKind kind = AttributeKind::numeric;
    std::string scale;  ///< only meaningful for ordinal attributes
    Direction direction = Direction::higher_better;

    bool operator==(const AttributeSchema&) const = default;
};

using FactValue = std::variant<double, std::string>;

struct Fact {
    std::string candidate;
    std::string attribute;
    FactValue value;

    bool operator==(const Fact&) const = default;
};

struct PreferencePremise {
    std::string winner;
    std::string loser;

    bool operator==(const PreferencePremise&) const = default;
};

enum class TieBreak { none, lexicographic };

struct CriterionSpec {
    std::string name;
    std::map<std::string, double> weights;
    /// Only the built-in uniform default uses a tie-break; it is part of
    /// what gets disclosed along with the weights.
    TieBreak tie_break = TieBreak::none;

    bool operator==(const CriterionSpec&) const = default;
};

enum class BoundOp { le, ge, eq };

struct PinConstraint {
    std::string criterion;
    bool operator==(const PinConstraint&) const = default;
};

struct BoundConstraint {
    std::string attribute;
    BoundOp op = BoundOp::ge;
    double value = 0.0;
    bool operator==(const BoundConstraint&) const = default;
};

using WeightConstraint = std::variant<PinConstraint, BoundConstraint>;

struct Instance {
    std::string id;
    std::string question;
    std::vector<std::string> candidates;
    std::vector<OrdinalScale> scales;
    std::vector<AttributeSchema> attributes;
    std::vector<Fact> facts;
    std::vector<CriterionSpec> criteria;
    std::vector<WeightConstraint> constraints;
    std::vector<PreferencePremise> preferences;
    bool decisiveness_required = false;

    bool operator==(const Instance&) const = default;

    const OrdinalScale* find_scale(std::string_view name) const;
    const AttributeSchema* find_attribute(std::string_view name) const;
    const CriterionSpec* find_criterion(std::string_view name) const;
    std::optional<std::size_t> candidate_index(std::string_view name) const;
    std::optional<std::size_t> attribute_index(std::string_view name) const;
    const Fact* find_fact(std::string_view candidate, std::string_view attribute) const;
};

struct Violation {
    std::string rule;     ///< stable rule code, e.g. "candidate_count"
    std::string subject;  ///< offending element, e.g. "B.gpa"
    std::string message;

    bool operator==(const Violation&) const = default;
};

/// Checks every structural invariant. The result is empty iff the instance
/// is well formed; ordering follows the declaration order of the instance.
std::vector<Violation> validate(const Instance& instance);

/// Copy with facts in canonical order (candidate-major, attributes as declared).
Instance canonicalized(const Instance& instance);

/// Equality up to fact ordering.
bool structurally_equal(const Instance& a, const Instance& b);

/// Weight vector of `criterion` laid out in the instance's attribute order.
std::vector<double> weight_vector(const Instance& instance, const CriterionSpec& criterion);

/// The uniform weight criterion disclosed by the decision policy.
CriterionSpec uniform_default_criterion(const Instance& instance);

/// Looks up a declared criterion, falling back to the built-in uniform default.
std::optional<CriterionSpec> resolve_criterion(const Instance& instance, std::string_view name);

std::string_view to_string(Direction direction);
std::string_view to_string(BoundOp op);

}  // namespace udet
