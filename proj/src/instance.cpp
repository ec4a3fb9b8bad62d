#include "udet/instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "udet/errors.hpp"

namespace udet {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InfeasibleConstraints: return "InfeasibleConstraints";
        case ErrorKind::ContradictoryPremises: return "ContradictoryPremises";
        case ErrorKind::UndeclaredReference: return "UndeclaredReference";
        case ErrorKind::InvalidResponse: return "InvalidResponse";
        case ErrorKind::ResponseSpaceTooLarge: return "ResponseSpaceTooLarge";
        case ErrorKind::NoUsableBranch: return "NoUsableBranch";
        case ErrorKind::CorpusCorrupt: return "CorpusCorrupt";
        case ErrorKind::InvalidInstance: return "InvalidInstance";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

std::string_view to_string(Direction direction) {
    return direction == Direction::higher_better ? "higher_better" : "lower_better";
}

std::string_view to_string(BoundOp op) {
    switch (op) {
        case BoundOp::le: return "<=";
        case BoundOp::ge: return ">=";
        case BoundOp::eq: return "=";
    }
    return "?";
}

bool is_identifier(std::string_view text) {
    if (text.empty()) return false;
    auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(text.front())) return false;
    return std::all_of(text.begin(), text.end(), [&](char c) { return alpha(c) || digit(c); });
}

std::optional<std::size_t> OrdinalScale::rank(std::string_view level) const {
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i] == level) return i;
    }
    return std::nullopt;
}

const OrdinalScale* Instance::find_scale(std::string_view name) const {
    for (const auto& s : scales)
        if (s.name == name) return &s;
    return nullptr;
}

const AttributeSchema* Instance::find_attribute(std::string_view name) const {
    for (const auto& a : attributes)
        if (a.name == name) return &a;
    return nullptr;
}

const CriterionSpec* Instance::find_criterion(std::string_view name) const {
    for (const auto& c : criteria)
        if (c.name == name) return &c;
    return nullptr;
}

std::optional<std::size_t> Instance::candidate_index(std::string_view name) const {
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (candidates[i] == name) return i;
    return std::nullopt;
}

std::optional<std::size_t> Instance::attribute_index(std::string_view name) const {
    for (std::size_t i = 0; i < attributes.size(); ++i)
        if (attributes[i].name == name) return i;
    return std::nullopt;
}

const Fact* Instance::find_fact(std::string_view candidate, std::string_view attribute) const {
    for (const auto& f : facts)
        if (f.candidate == candidate && f.attribute == attribute) return &f;
    return nullptr;
}

namespace {

class ViolationSink {
public:
    void add(std::string rule, std::string subject, std::string message) {
        out_.push_back({std::move(rule), std::move(subject), std::move(message)});
    }
    std::vector<Violation> take() { return std::move(out_); }

private:
    std::vector<Violation> out_;
};

void check_scales(const Instance& in, ViolationSink& sink) {
    std::set<std::string> seen;
    for (const auto& scale : in.scales) {
        if (!is_identifier(scale.name))
            sink.add("identifier", "scale " + scale.name, "scale name is not an identifier");
        if (!seen.insert(scale.name).second)
            sink.add("duplicate_scale", "scale " + scale.name, "scale declared more than once");
        if (scale.levels.size() < 2)
            sink.add("scale_levels", "scale " + scale.name, "an ordinal scale needs at least 2 levels");
        std::set<std::string> levels;
        for (const auto& level : scale.levels) {
            if (!is_identifier(level))
                sink.add("identifier", "scale " + scale.name, "level '" + level + "' is not an identifier");
            if (!levels.insert(level).second)
                sink.add("duplicate_level", "scale " + scale.name, "level '" + level + "' repeated");
        }
    }
}

void check_attributes(const Instance& in, ViolationSink& sink) {
    if (in.attributes.empty())
        sink.add("attribute_count", "attributes", "at least one attribute is required");
    std::set<std::string> seen;
    for (const auto& attr : in.attributes) {
        if (!is_identifier(attr.name))
            sink.add("identifier", "attribute " + attr.name, "attribute name is not an identifier");
        if (!seen.insert(attr.name).second)
            sink.add("duplicate_attribute", "attribute " + attr.name, "attribute declared more than once");
        if (attr.kind == AttributeKind::ordinal && in.find_scale(attr.scale) == nullptr)
            sink.add("unknown_scale", "attribute " + attr.name,
                     "ordinal attribute references undeclared scale '" + attr.scale + "'");
    }
}

void check_candidates(const Instance& in, ViolationSink& sink) {
    if (in.candidates.size() < 2)
        sink.add("candidate_count", "candidates", "at least 2 candidates are required");
    std::set<std::string> seen;
    for (const auto& c : in.candidates) {
        if (!is_identifier(c)) sink.add("identifier", "candidate " + c, "candidate is not an identifier");
        if (!seen.insert(c).second) sink.add("duplicate_candidate", "candidate " + c, "candidate listed twice");
    }
}

void check_facts(const Instance& in, ViolationSink& sink) {
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& fact : in.facts) {
        const std::string subject = fact.candidate + "." + fact.attribute;
        if (!in.candidate_index(fact.candidate)) {
            sink.add("unknown_candidate", subject, "fact names undeclared candidate '" + fact.candidate + "'");
            continue;
        }
        const AttributeSchema* attr = in.find_attribute(fact.attribute);
        if (attr == nullptr) {
            sink.add("unknown_attribute", subject, "fact names undeclared attribute '" + fact.attribute + "'");
            continue;
        }
        if (!seen.insert({fact.candidate, fact.attribute}).second)
            sink.add("duplicate_fact", subject, "more than one fact for (" + fact.candidate + ", " + fact.attribute + ")");
        if (attr->kind == AttributeKind::numeric) {
            const double* v = std::get_if<double>(&fact.value);
            if (v == nullptr)
                sink.add("fact_kind", subject, "numeric attribute needs a number");
            else if (!std::isfinite(*v))
                sink.add("fact_value", subject, "numeric value must be finite");
        } else {
            const std::string* level = std::get_if<std::string>(&fact.value);
            const OrdinalScale* scale = in.find_scale(attr->scale);
            if (level == nullptr)
                sink.add("fact_kind", subject, "ordinal attribute needs a level name");
            else if (scale != nullptr && !scale->rank(*level))
                sink.add("unknown_level", subject, "'" + *level + "' is not a level of scale '" + scale->name + "'");
        }
    }
    for (const auto& c : in.candidates) {
        for (const auto& a : in.attributes) {
            if (!seen.count({c, a.name}))
                sink.add("incomplete_matrix", c + "." + a.name, "missing fact for (" + c + ", " + a.name + ")");
        }
    }
}

void check_criteria(const Instance& in, ViolationSink& sink) {
    std::set<std::string> seen;
    for (const auto& crit : in.criteria) {
        const std::string subject = "criterion " + crit.name;
        if (!is_identifier(crit.name)) sink.add("identifier", subject, "criterion name is not an identifier");
        if (crit.name == kUniformDefault)
            sink.add("reserved_name", subject, "'uniform_default' is reserved for the built-in default criterion");
        if (!seen.insert(crit.name).second) sink.add("duplicate_criterion", subject, "criterion declared twice");
        double sum = 0.0;
        bool finite = true;
        for (const auto& [attr, w] : crit.weights) {
            if (in.find_attribute(attr) == nullptr)
                sink.add("unknown_attribute", subject, "weight for undeclared attribute '" + attr + "'");
            if (!std::isfinite(w)) {
                finite = false;
                sink.add("weight_value", subject, "weight for '" + attr + "' is not finite");
            } else if (w < 0.0) {
                sink.add("weight_value", subject, "weight for '" + attr + "' is negative");
            }
            sum += w;
        }
        for (const auto& a : in.attributes) {
            if (!crit.weights.count(a.name))
                sink.add("weight_missing", subject, "no weight for attribute '" + a.name + "'");
        }
        if (finite && std::abs(sum - 1.0) > kWeightEpsilon)
            sink.add("weight_sum", subject, "weights sum to " + std::to_string(sum) + ", expected 1");
    }
}

void check_constraints(const Instance& in, ViolationSink& sink) {
    for (const auto& c : in.constraints) {
        if (const auto* pin = std::get_if<PinConstraint>(&c)) {
            if (in.find_criterion(pin->criterion) == nullptr)
                sink.add("unknown_criterion", "assume criterion " + pin->criterion,
                         "pinned criterion '" + pin->criterion + "' is not declared");
        } else {
            const auto& bound = std::get<BoundConstraint>(c);
            const std::string subject = "assume weight " + bound.attribute;
            if (in.find_attribute(bound.attribute) == nullptr)
                sink.add("unknown_attribute", subject, "bound on undeclared attribute '" + bound.attribute + "'");
            if (!(bound.value >= 0.0 && bound.value <= 1.0))
                sink.add("bound_value", subject, "bound value must lie in [0, 1]");
        }
    }
}

void check_preferences(const Instance& in, ViolationSink& sink) {
    const std::size_t n = in.candidates.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    bool usable = true;
    for (const auto& p : in.preferences) {
        const std::string subject = "prefer " + p.winner + " over " + p.loser;
        auto w = in.candidate_index(p.winner);
        auto l = in.candidate_index(p.loser);
        if (!w || !l) {
            sink.add("unknown_candidate", subject, "preference names an undeclared candidate");
            usable = false;
            continue;
        }
        if (*w == *l) {
            sink.add("self_preference", subject, "a candidate cannot be preferred over itself");
            continue;
        }
        reach[*w][*l] = true;
    }
    if (!usable) return;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (reach[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (reach[k][j]) reach[i][j] = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (reach[i][i]) {
            sink.add("preference_cycle", "prefer " + in.candidates[i],
                     "explicit preferences form a cycle through '" + in.candidates[i] + "'");
            break;
        }
    }
}

}  // namespace

std::vector<Violation> validate(const Instance& in) {
    ViolationSink sink;
    if (!is_identifier(in.id)) sink.add("identifier", "instance", "instance id '" + in.id + "' is not an identifier");
    if (in.question.find_first_of("\"\n\r") != std::string::npos)
        sink.add("question_text", "question", "question text may not contain quotes or line breaks");
    check_scales(in, sink);
    check_attributes(in, sink);
    check_candidates(in, sink);
    check_facts(in, sink);
    check_criteria(in, sink);
    check_constraints(in, sink);
    check_preferences(in, sink);
    return sink.take();
}

Instance canonicalized(const Instance& instance) {
    Instance out = instance;
    auto key = [&](const Fact& f) {
        auto c = instance.candidate_index(f.candidate).value_or(instance.candidates.size());
        auto a = instance.attribute_index(f.attribute).value_or(instance.attributes.size());
        return std::pair{c, a};
    };
    std::stable_sort(out.facts.begin(), out.facts.end(),
                     [&](const Fact& x, const Fact& y) { return key(x) < key(y); });
    return out;
}

bool structurally_equal(const Instance& a, const Instance& b) {
    return canonicalized(a) == canonicalized(b);
}

std::vector<double> weight_vector(const Instance& instance, const CriterionSpec& criterion) {
    std::vector<double> w;
    w.reserve(instance.attributes.size());
    for (const auto& attr : instance.attributes) {
        auto it = criterion.weights.find(attr.name);
        if (it == criterion.weights.end())
            throw Error(ErrorKind::UndeclaredReference,
                        "criterion '" + criterion.name + "' has no weight for '" + attr.name + "'");
        w.push_back(it->second);
    }
    return w;
}

CriterionSpec uniform_default_criterion(const Instance& instance) {
    CriterionSpec spec;
    spec.name = std::string(kUniformDefault);
    spec.tie_break = TieBreak::lexicographic;
    const double w = 1.0 / static_cast<double>(std::max<std::size_t>(1, instance.attributes.size()));
    for (const auto& attr : instance.attributes) spec.weights[attr.name] = w;
    return spec;
}

std::optional<CriterionSpec> resolve_criterion(const Instance& instance, std::string_view name) {
    if (const CriterionSpec* c = instance.find_criterion(name)) return *c;
    if (name == kUniformDefault) return uniform_default_criterion(instance);
    return std::nullopt;
}

}  // namespace udet
