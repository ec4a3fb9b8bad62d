#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "support.hpp"
#include "udet/errors.hpp"
#include "udet/semantics.hpp"

using namespace udet;

namespace {

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

WeightVector alpha_weights(double alpha) { return {alpha, 1.0 - alpha}; }

// Rescales every numeric attribute by v -> 3v + 7.
Instance rescaled(Instance in) {
    for (auto& f : in.facts)
        if (auto* v = std::get_if<double>(&f.value)) *v = 3.0 * *v + 7.0;
    return in;
}

const char* const kDominance = R"(instance "dominance"
question "q"
attribute gpa: numeric, higher_better
attribute need: numeric, higher_better
candidates A, B
fact A.gpa = 9.5
fact A.need = 3
fact B.gpa = 8.7
fact B.need = 3
)";

}  // namespace

TEST_CASE("normalization of the scholarship matrix") {
    const ScoreMatrix m = normalize(test::scholarship());
    CHECK(m.at("A", "gpa") == 1.0);
    CHECK(m.at("B", "gpa") == 0.0);
    CHECK(m.at("A", "need") == 0.0);
    CHECK(m.at("B", "need") == 1.0);
}

TEST_CASE("tied attribute normalizes to one half") {
    Instance in = test::scholarship();
    for (auto& f : in.facts)
        if (f.attribute == "gpa") f.value = 9.0;
    const ScoreMatrix m = normalize(in);
    CHECK(m.at("A", "gpa") == 0.5);
    CHECK(m.at("B", "gpa") == 0.5);
}

TEST_CASE("normalization agrees with the reference on random instances") {
    GeneratorConfig config;
    config.seed = 17;
    for (std::uint64_t i = 0; i < 500; ++i) {
        const Instance in = generate_instance(config, i);
        const ScoreMatrix m = normalize(in);
        const auto ref = oracle::normalize(in);
        for (std::size_t c = 0; c < ref.size(); ++c)
            for (std::size_t a = 0; a < ref[c].size(); ++a) CHECK(m.at(c, a) == doctest::Approx(ref[c][a]).epsilon(1e-12));
    }
}

TEST_CASE("lower_better flips the scaled value") {
    const ScoreMatrix m = normalize(test::corpus("city").instance);
    // cost: Delhi 60 is cheapest, Mumbai 85 is dearest.
    CHECK(m.at("Delhi", "cost") == 1.0);
    CHECK(m.at("Mumbai", "cost") == 0.0);
    CHECK(m.at("Bengaluru", "cost") == doctest::Approx(0.6));
}

TEST_CASE("scores along alpha follow the line alpha * gpa + (1 - alpha) * need") {
    const Instance in = test::scholarship();
    const ScoreMatrix m = normalize(in);
    for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        CHECK(score(m, alpha_weights(alpha), 0) == doctest::Approx(alpha));
        CHECK(score(m, alpha_weights(alpha), 1) == doctest::Approx(1.0 - alpha));
    }
    CHECK(score(m, in.criteria[0], "A") == 1.0);
    CHECK(score(m, in.criteria[1], "A") == 0.0);
}

TEST_CASE("winners under the scholarship criteria") {
    const Instance in = test::scholarship();
    const ScoreMatrix m = normalize(in);
    CHECK(winners_at(m, in.criteria[0]).winners == std::vector<std::string>{"A"});
    CHECK(winners_at(m, in.criteria[1]).winners == std::vector<std::string>{"B"});
    CHECK(winners_at(m, alpha_weights(0.5)) == std::vector<std::size_t>{0, 1});
    const auto uniform = selection_at(m, uniform_default_criterion(in));
    CHECK(uniform.winners == std::vector<std::string>{"A"});
}

TEST_CASE("winner sets agree with the reference on random weights") {
    GeneratorConfig config;
    config.seed = 23;
    for (std::uint64_t i = 0; i < 300; ++i) {
        const Instance in = generate_instance(config, i);
        const ScoreMatrix m = normalize(in);
        const auto ref = oracle::normalize(in);
        oracle::simplex(in.attributes.size(), 6, [&](const std::vector<double>& w) {
            CHECK(winners_at(m, w) == oracle::winners(ref, w));
        });
    }
}

TEST_CASE("grid sizes") {
    CHECK(simplex_grid_size(3, 10) == 66);
    std::size_t count = 0;
    oracle::simplex(3, 10, [&](const std::vector<double>&) { ++count; });
    CHECK(count == 66);
    for (std::size_t k = 1; k <= 6; ++k)
        for (std::size_t g = 1; g <= 12; ++g) CHECK(simplex_grid_size(k, g) == oracle::binomial(g + k - 1, k - 1));

    for (std::size_t k = 2; k <= 6; ++k) {
        const std::size_t g = default_grid(k);
        CHECK(oracle::binomial(g + k - 1, k - 1) <= kDefaultGridBudget);
        CHECK(oracle::binomial(g + k, k - 1) > kDefaultGridBudget);
    }
}

TEST_CASE("admissible set modes") {
    SUBCASE("unconstrained two attributes use exact thresholds over [0, 1]") {
        const AdmissibleSet adm = admissible_set(test::scholarship());
        CHECK(adm.enumeration == Enumeration::exact_threshold);
        CHECK(adm.alpha_lo == 0.0);
        CHECK(adm.alpha_hi == 1.0);
        CHECK(adm.varying == std::vector<std::string>{"gpa", "need"});
    }
    SUBCASE("pin gives the singleton") {
        const AdmissibleSet adm = admissible_set(test::scholarship("assume criterion = merit_first\n"));
        CHECK(adm.enumeration == Enumeration::singleton);
        CHECK(adm.pinned_weights == WeightVector{1.0, 0.0});
        CHECK(adm.pinned_criterion == "merit_first");
        CHECK(adm.varying.empty());
    }
    SUBCASE("bounds narrow the interval") {
        const AdmissibleSet adm =
            admissible_set(test::scholarship("assume weight gpa >= 0.2\nassume weight need >= 0.3\n"));
        CHECK(adm.alpha_lo == doctest::Approx(0.2));
        CHECK(adm.alpha_hi == doctest::Approx(0.7));
    }
    SUBCASE("three attributes with G = 10 give 66 points") {
        const Instance in = test::corpus("company").instance;
        const AdmissibleSet adm = admissible_set(in, 10);
        CHECK(adm.enumeration == Enumeration::grid);
        CHECK(adm.point_count == 66);
        std::set<WeightVector> seen;
        adm.for_each_point([&](const WeightVector& w) { seen.insert(w); });
        std::set<WeightVector> ref;
        oracle::simplex(3, 10, [&](const std::vector<double>& w) { ref.insert(w); });
        CHECK(seen == ref);
    }
    SUBCASE("bounds filter grid points like the reference") {
        Instance in = test::corpus("company").instance;
        in.constraints.push_back(BoundConstraint{"employee_welfare", BoundOp::ge, 0.4});
        in.constraints.push_back(BoundConstraint{"financial_return", BoundOp::le, 0.3});
        const AdmissibleSet adm = admissible_set(in, 20);
        CHECK(adm.point_count == oracle::points(in, 20).size());
    }
    SUBCASE("infeasible bounds") {
        CHECK_THROWS_AS(admissible_set(test::scholarship("assume weight gpa >= 0.7\nassume weight need >= 0.7\n")),
                        Error);
        try {
            admissible_set(test::scholarship("assume weight gpa >= 0.7\nassume weight need >= 0.7\n"));
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::InfeasibleConstraints);
        }
    }
    SUBCASE("conflicting pins") {
        const Instance in = test::scholarship("assume criterion = merit_first\nassume criterion = need_first\n");
        CHECK_THROWS_AS(admissible_set(in), Error);
    }
}

TEST_CASE("compatible answers on the scholarship instance") {
    SUBCASE("unconstrained") {
        const auto s = test::semantics(test::scholarship());
        CHECK(s.compatible == std::vector<std::string>{"A", "B"});
        CHECK(s.underdetermined);
        CHECK_FALSE(s.entailed.has_value());
    }
    SUBCASE("merit pinned") {
        const auto s = test::semantics(test::scholarship("assume criterion = merit_first\n"));
        CHECK(s.compatible == std::vector<std::string>{"A"});
        CHECK_FALSE(s.underdetermined);
        CHECK(s.entailed == "A");
    }
    SUBCASE("need pinned") {
        const auto s = test::semantics(test::scholarship("assume criterion = need_first\n"));
        CHECK(s.compatible == std::vector<std::string>{"B"});
        CHECK(s.entailed == "B");
    }
    SUBCASE("bound that keeps only the merit side") {
        const auto s = test::semantics(test::scholarship("assume weight gpa >= 0.6\n"));
        CHECK(s.compatible == std::vector<std::string>{"A"});
        CHECK(s.entailed == "A");
    }
}

TEST_CASE("weak dominance leaves only the dominator") {
    const Instance in = test::parse(kDominance);
    const auto s = test::semantics(in);
    CHECK(s.compatible == std::vector<std::string>{"A"});
    CHECK(oracle::compatible(in, 1000) == std::set<std::string>{"A"});
    CHECK(s.entailed == "A");
}

TEST_CASE("preference premises") {
    const char* const three = R"(instance "three"
question "q"
attribute x: numeric, higher_better
attribute y: numeric, higher_better
candidates A, B, C
fact A.x = 1
fact A.y = 0
fact B.x = 0
fact B.y = 1
fact C.x = 0.6
fact C.y = 0.6
)";
    SUBCASE("transitive closure") {
        const Instance in = test::parse(std::string(three) + "prefer A over B\nprefer B over C\n");
        const auto adm = admissible_set(in);
        CHECK(entails_preference(in, adm, "A", "C"));
        CHECK(entails_preference(in, adm, "A", "B"));
        CHECK_FALSE(entails_preference(in, adm, "C", "A"));
        const auto s = compatible_answers(in, adm);
        CHECK(s.compatible == std::vector<std::string>{"A"});
    }
    SUBCASE("score unanimity enters the closure") {
        const Instance in = test::corpus("scholarship_dominant").instance;
        CHECK(entails_preference(in, admissible_set(in), "A", "B"));
        CHECK_FALSE(entails_preference(in, admissible_set(in), "B", "A"));
    }
    SUBCASE("weak dominance ties at one end, so it is not unanimity") {
        const Instance in = test::parse(kDominance);
        CHECK_FALSE(entails_preference(in, admissible_set(in), "A", "B"));
    }
    SUBCASE("a preference against unanimity is contradictory") {
        const Instance in = test::parse(std::string(kDominance) + "prefer B over A\n");
        try {
            compatible_answers(in, admissible_set(in));
            FAIL("expected ContradictoryPremises");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::ContradictoryPremises);
        }
    }
}

TEST_CASE("compatible agrees with the brute-force reference") {
    GeneratorConfig config;
    config.seed = 31;
    for (std::uint64_t i = 0; i < 400; ++i) {
        const Instance in = generate_instance(config, i);
        if (in.attributes.size() == 2) continue;  // exact mode is covered below
        const std::size_t G = in.attributes.size() == 1 ? 1 : 12;
        const auto s = compatible_answers(in, admissible_set(in, G));
        CAPTURE(i);
        CHECK(as_set(s.compatible) == oracle::compatible(in, G));
    }
}

TEST_CASE("exact thresholds and a fine grid agree on two-attribute instances") {
    GeneratorConfig config;
    config.seed = 37;
    config.attributes = {2, 2};
    for (std::uint64_t i = 0; i < 300; ++i) {
        const Instance in = generate_instance(config, i);
        const auto exact = compatible_answers(in, admissible_set(in));
        AdmissibleOptions opts;
        opts.grid = 1000;
        opts.force_grid = true;
        const auto grid = compatible_answers(in, admissible_set(in, opts));
        CAPTURE(i);
        CHECK(exact.compatible == grid.compatible);
        CHECK(as_set(exact.compatible) == oracle::compatible(in, 1000));
    }
}

TEST_CASE("entailed is always compatible and compatible is never empty") {
    GeneratorConfig config;
    config.seed = 41;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const Instance in = generate_instance(config, i);
        const auto s = test::semantics(in);
        CHECK_FALSE(s.compatible.empty());
        CHECK(s.underdetermined == (s.compatible.size() > 1));
        if (s.entailed) CHECK(std::find(s.compatible.begin(), s.compatible.end(), *s.entailed) != s.compatible.end());
    }
}

TEST_CASE("dominated candidates are never unique winners") {
    GeneratorConfig config;
    config.seed = 43;
    config.candidates = {3, 3};
    int dominated_pairs = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const Instance in = generate_instance(config, i);
        const auto ref = oracle::normalize(in);
        const ScoreMatrix m = normalize(in);
        std::vector<std::size_t> dominated;
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b)
                if (a != b && oracle::dominates(ref, a, b)) dominated.push_back(b);
        if (dominated.empty()) continue;
        ++dominated_pairs;
        oracle::simplex(in.attributes.size(), 10, [&](const std::vector<double>& w) {
            const auto win = winners_at(m, w);
            if (win.size() == 1) CHECK(std::find(dominated.begin(), dominated.end(), win[0]) == dominated.end());
        });
    }
    CHECK(dominated_pairs > 100);
}

TEST_CASE("affine rescaling of numeric attributes changes nothing at argmax level") {
    GeneratorConfig config;
    config.seed = 47;
    for (std::uint64_t i = 0; i < 300; ++i) {
        const Instance in = generate_instance(config, i);
        const Instance scaled = rescaled(in);
        const ScoreMatrix m1 = normalize(in), m2 = normalize(scaled);
        for (std::size_t c = 0; c < m1.candidate_count(); ++c)
            for (std::size_t a = 0; a < m1.attribute_count(); ++a) CHECK(m1.at(c, a) == doctest::Approx(m2.at(c, a)));
        const auto s1 = test::semantics(in, 10), s2 = test::semantics(scaled, 10);
        CHECK(s1.compatible == s2.compatible);
        CHECK(s1.entailed == s2.entailed);
        oracle::simplex(in.attributes.size(), 5, [&](const std::vector<double>& w) {
            CHECK(winners_at(m1, w) == winners_at(m2, w));
        });
    }
}

TEST_CASE("threshold regions for the scholarship sweep") {
    const ScoreMatrix m = normalize(test::scholarship());
    const auto th = crossing_thresholds(m, 0, 1, 0.0, 1.0);
    REQUIRE(th.size() == 1);
    CHECK(th[0] == doctest::Approx(0.5));
    const auto regions = threshold_regions(m, 0, 1);
    REQUIRE(regions.size() == 3);
    CHECK(regions[0] == Region{0.0, 0.5, true, false, {1}});
    CHECK(regions[1] == Region{0.5, 0.5, true, true, {0, 1}});
    CHECK(regions[2] == Region{0.5, 1.0, false, true, {0}});
}

TEST_CASE("dominant candidate fills the whole sweep") {
    const ScoreMatrix m = normalize(test::corpus("scholarship_dominant").instance);
    const auto regions = threshold_regions(m, 0, 1);
    REQUIRE(regions.size() == 1);
    CHECK(regions[0] == Region{0.0, 1.0, true, true, {0}});

    const auto weak = threshold_regions(normalize(test::parse(kDominance)), 0, 1);
    REQUIRE(weak.size() == 2);
    CHECK(weak[0] == Region{0.0, 0.0, true, true, {0, 1}});
    CHECK(weak[1] == Region{0.0, 1.0, false, true, {0}});
}

TEST_CASE("sweep regions: crossings match the algebraic reference and unique-winner regions are contiguous") {
    GeneratorConfig config;
    config.seed = 53;
    config.attributes = {2, 2};
    config.candidates = {2, 5};
    for (std::uint64_t i = 0; i < 500; ++i) {
        const Instance in = generate_instance(config, i);
        const ScoreMatrix m = normalize(in);
        const auto ref = oracle::normalize(in);
        const auto th = crossing_thresholds(m, 0, 1, 0.0, 1.0);
        auto expected = oracle::crossings(ref, 0, 1);
        expected.erase(std::unique(expected.begin(), expected.end(),
                                   [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                       expected.end());
        REQUIRE(th.size() == expected.size());
        for (std::size_t k = 0; k < th.size(); ++k) CHECK(th[k] == doctest::Approx(expected[k]));

        const auto regions = threshold_regions(m, 0, 1);
        REQUIRE_FALSE(regions.empty());
        CHECK(regions.front().lo == 0.0);
        CHECK(regions.back().hi == 1.0);
        std::map<std::size_t, int> runs;
        std::optional<std::size_t> prev;
        for (std::size_t r = 0; r < regions.size(); ++r) {
            if (r > 0) CHECK(regions[r].lo == regions[r - 1].hi);
            const auto& w = regions[r].winners;
            CHECK(w == oracle::winners(ref, {(regions[r].lo + regions[r].hi) / 2, 1 - (regions[r].lo + regions[r].hi) / 2}));
            if (w.size() != 1 || regions[r].is_point()) continue;
            if (!prev || *prev != w[0]) ++runs[w[0]];
            prev = w[0];
        }
        for (auto [cand, n] : runs) CHECK(n == 1);
    }
}
