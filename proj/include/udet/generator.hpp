/**
 * @file generator.hpp
 * @brief Seeded random instances for property suites and `check --random`.
 *
 * Instances are a pure function of (seed, index). Raw values:
 *  - numeric facts are k / 2 for k uniform in {0, ..., 20};
 *  - ordinal facts are uniform over a 3 to 5 level scale;
 *  - criterion weights are compositions of 10 tenths;
 *  - at most one weight bound (>= v with v in {0, .1, .., .5} or <= v with
 *    v in {.5, .., 1}), never together with a pin;
 *  - `prefer a over b` only when a strictly dominates b after normalization.
 */

#pragma once

#include <cstdint>
#include <utility>

#include "udet/instance.hpp"

namespace udet {

struct GeneratorConfig {
    std::uint64_t seed = 1;
    std::pair<std::size_t, std::size_t> candidates{2, 4};
    std::pair<std::size_t, std::size_t> attributes{1, 4};
    std::pair<std::size_t, std::size_t> criteria{0, 3};
    double pin_probability = 0.15;
    double bound_probability = 0.2;
    double preference_probability = 0.2;
    double decision_probability = 0.25;
    double ordinal_probability = 0.3;
};

/// Throws Error{InvalidArgument} for empty ranges or probabilities outside [0, 1].
void check_config(const GeneratorConfig& config);

Instance generate_instance(const GeneratorConfig& config, std::uint64_t index);

}  // namespace udet
