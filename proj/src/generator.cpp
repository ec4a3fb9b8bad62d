#include "udet/generator.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "udet/errors.hpp"
#include "udet/semantics.hpp"

namespace udet {

namespace {

/// Draws straight from the engine's output so results do not depend on the
/// standard library's distribution implementations.
class Draw {
public:
    Draw(std::uint64_t seed, std::uint64_t index) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
        engine_.seed(seq);
    }

    std::size_t between(std::size_t lo, std::size_t hi) {
        return lo + static_cast<std::size_t>(engine_() % (hi - lo + 1));
    }

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

void check_range(const std::pair<std::size_t, std::size_t>& r, std::size_t min, std::size_t max, const char* what) {
    if (r.first > r.second || r.first < min || r.second > max)
        throw Error(ErrorKind::InvalidArgument, std::string("invalid ") + what + " range");
}

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidArgument, std::string(what) + " must lie in [0, 1]");
}

}  // namespace

void check_config(const GeneratorConfig& config) {
    check_range(config.candidates, 2, 26, "candidate count");
    check_range(config.attributes, 1, 64, "attribute count");
    check_range(config.criteria, 0, 64, "criteria count");
    check_probability(config.pin_probability, "pin probability");
    check_probability(config.bound_probability, "bound probability");
    check_probability(config.preference_probability, "preference probability");
    check_probability(config.decision_probability, "decision probability");
    check_probability(config.ordinal_probability, "ordinal probability");
}

Instance generate_instance(const GeneratorConfig& config, std::uint64_t index) {
    check_config(config);
    Draw draw(config.seed, index);
    Instance in;
    in.id = "gen_" + std::to_string(config.seed) + "_" + std::to_string(index);
    in.question = "Which candidate should be selected?";

    const std::size_t n = draw.between(config.candidates.first, config.candidates.second);
    const std::size_t k = draw.between(config.attributes.first, config.attributes.second);
    const std::size_t m = draw.between(config.criteria.first, config.criteria.second);

    for (std::size_t i = 0; i < n; ++i) in.candidates.push_back(std::string(1, static_cast<char>('A' + i)));

    for (std::size_t j = 0; j < k; ++j) {
        AttributeSchema attr;
        attr.name = "attr" + std::to_string(j + 1);
        attr.direction = draw.chance(0.5) ? Direction::higher_better : Direction::lower_better;
        if (draw.chance(config.ordinal_probability)) {
            attr.kind = AttributeKind::ordinal;
            OrdinalScale scale;
            scale.name = "scale" + std::to_string(j + 1);
            const std::size_t levels = draw.between(3, 5);
            for (std::size_t l = 0; l < levels; ++l) scale.levels.push_back("l" + std::to_string(l));
            attr.scale = scale.name;
            in.scales.push_back(std::move(scale));
        }
        in.attributes.push_back(std::move(attr));
    }

    for (const auto& c : in.candidates) {
        for (const auto& attr : in.attributes) {
            Fact fact{c, attr.name, 0.0};
            if (attr.kind == AttributeKind::ordinal) {
                const OrdinalScale* scale = in.find_scale(attr.scale);
                fact.value = scale->levels[draw.between(0, scale->levels.size() - 1)];
            } else {
                fact.value = static_cast<double>(draw.between(0, 20)) / 2.0;
            }
            in.facts.push_back(std::move(fact));
        }
    }

    for (std::size_t c = 0; c < m; ++c) {
        // stars and bars over 10 tenths
        std::vector<std::size_t> cuts;
        for (std::size_t j = 0; j + 1 < k; ++j) cuts.push_back(draw.between(0, 10));
        std::sort(cuts.begin(), cuts.end());
        CriterionSpec crit;
        crit.name = "crit" + std::to_string(c + 1);
        std::size_t prev = 0;
        for (std::size_t j = 0; j < k; ++j) {
            const std::size_t next = j + 1 < k ? cuts[j] : 10;
            crit.weights[in.attributes[j].name] = static_cast<double>(next - prev) / 10.0;
            prev = next;
        }
        in.criteria.push_back(std::move(crit));
    }

    if (!in.criteria.empty() && draw.chance(config.pin_probability)) {
        in.constraints.emplace_back(PinConstraint{in.criteria[draw.between(0, in.criteria.size() - 1)].name});
    } else if (draw.chance(config.bound_probability) && k > 1) {
        BoundConstraint bound;
        bound.attribute = in.attributes[draw.between(0, k - 1)].name;
        if (draw.chance(0.5)) {
            bound.op = BoundOp::ge;
            bound.value = static_cast<double>(draw.between(0, 5)) / 10.0;
        } else {
            bound.op = BoundOp::le;
            bound.value = static_cast<double>(draw.between(5, 10)) / 10.0;
        }
        in.constraints.emplace_back(std::move(bound));
    }

    if (draw.chance(config.preference_probability)) {
        const ScoreMatrix matrix = normalize(in);
        std::vector<PreferencePremise> dominating;
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                if (a == b) continue;
                bool weak = true, strict = false;
                for (std::size_t j = 0; j < k; ++j) {
                    weak = weak && matrix.at(a, j) >= matrix.at(b, j);
                    strict = strict || matrix.at(a, j) > matrix.at(b, j);
                }
                if (weak && strict) dominating.push_back({in.candidates[a], in.candidates[b]});
            }
        }
        if (!dominating.empty()) in.preferences.push_back(dominating[draw.between(0, dominating.size() - 1)]);
    }

    in.decisiveness_required = draw.chance(config.decision_probability);
    return in;
}

}  // namespace udet
