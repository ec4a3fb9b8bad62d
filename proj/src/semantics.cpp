#include "udet/semantics.hpp"

#include <cmath>
#include <limits>

#include "udet/errors.hpp"

namespace udet {

ScoreMatrix::ScoreMatrix(std::vector<std::string> candidates, std::vector<std::string> attributes)
    : candidates_(std::move(candidates)),
      attributes_(std::move(attributes)),
      values_(candidates_.size() * attributes_.size(), 0.0) {}

double ScoreMatrix::at(const std::string& candidate, const std::string& attribute) const {
    auto c = std::find(candidates_.begin(), candidates_.end(), candidate);
    auto a = std::find(attributes_.begin(), attributes_.end(), attribute);
    if (c == candidates_.end() || a == attributes_.end())
        throw Error(ErrorKind::UndeclaredReference, "no score for (" + candidate + ", " + attribute + ")");
    return at(static_cast<std::size_t>(c - candidates_.begin()), static_cast<std::size_t>(a - attributes_.begin()));
}

ScoreMatrix normalize(const Instance& instance) {
    std::vector<std::string> attr_names;
    for (const auto& a : instance.attributes) attr_names.push_back(a.name);
    ScoreMatrix m(instance.candidates, attr_names);

    std::vector<double> raw(instance.candidates.size());
    for (std::size_t j = 0; j < instance.attributes.size(); ++j) {
        const AttributeSchema& attr = instance.attributes[j];
        const OrdinalScale* scale = attr.kind == AttributeKind::ordinal ? instance.find_scale(attr.scale) : nullptr;
        for (std::size_t i = 0; i < instance.candidates.size(); ++i) {
            const Fact* fact = instance.find_fact(instance.candidates[i], attr.name);
            if (fact == nullptr)
                throw Error(ErrorKind::InvalidInstance,
                            "missing fact for (" + instance.candidates[i] + ", " + attr.name + ")");
            if (scale != nullptr)
                raw[i] = static_cast<double>(scale->rank(std::get<std::string>(fact->value)).value_or(0));
            else
                raw[i] = std::get<double>(fact->value);
        }
        const auto [lo_it, hi_it] = std::minmax_element(raw.begin(), raw.end());
        const double lo = *lo_it;
        const double hi = *hi_it;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            double v = 0.5;
            if (hi != lo) {
                v = (raw[i] - lo) / (hi - lo);
                if (attr.direction == Direction::lower_better) v = 1.0 - v;
            }
            m.at(i, j) = v;
        }
    }
    return m;
}

double score(const ScoreMatrix& matrix, const WeightVector& weights, std::size_t candidate) {
    double s = 0.0;
    for (std::size_t j = 0; j < matrix.attribute_count(); ++j) s += weights[j] * matrix.at(candidate, j);
    return s;
}

namespace {

WeightVector weights_for(const ScoreMatrix& matrix, const CriterionSpec& theta) {
    WeightVector w(matrix.attribute_count(), 0.0);
    for (std::size_t j = 0; j < matrix.attribute_count(); ++j) {
        auto it = theta.weights.find(matrix.attributes()[j]);
        if (it == theta.weights.end())
            throw Error(ErrorKind::UndeclaredReference,
                        "criterion '" + theta.name + "' has no weight for '" + matrix.attributes()[j] + "'");
        w[j] = it->second;
    }
    return w;
}

}  // namespace

double score(const ScoreMatrix& matrix, const CriterionSpec& theta, const std::string& candidate) {
    auto it = std::find(matrix.candidates().begin(), matrix.candidates().end(), candidate);
    if (it == matrix.candidates().end())
        throw Error(ErrorKind::UndeclaredReference, "unknown candidate '" + candidate + "'");
    return score(matrix, weights_for(matrix, theta), static_cast<std::size_t>(it - matrix.candidates().begin()));
}

std::vector<std::size_t> winners_at(const ScoreMatrix& matrix, const WeightVector& weights) {
    std::vector<double> s(matrix.candidate_count());
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.size(); ++i) {
        s[i] = score(matrix, weights, i);
        best = std::max(best, s[i]);
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] >= best - kScoreEpsilon) out.push_back(i);
    return out;
}

WinnerOutcome winners_at(const ScoreMatrix& matrix, const CriterionSpec& theta) {
    WinnerOutcome outcome;
    for (std::size_t i : winners_at(matrix, weights_for(matrix, theta)))
        outcome.winners.push_back(matrix.candidates()[i]);
    return outcome;
}

WinnerOutcome selection_at(const ScoreMatrix& matrix, const CriterionSpec& theta) {
    WinnerOutcome outcome = winners_at(matrix, theta);
    if (theta.tie_break == TieBreak::lexicographic && outcome.winners.size() > 1) {
        auto first = std::min_element(outcome.winners.begin(), outcome.winners.end());
        outcome.winners = {*first};
    }
    return outcome;
}

std::string_view to_string(Enumeration e) {
    switch (e) {
        case Enumeration::exact_threshold: return "exact_threshold";
        case Enumeration::grid: return "grid";
        case Enumeration::singleton: return "singleton";
    }
    return "?";
}

std::size_t simplex_grid_size(std::size_t attributes, std::size_t subdivisions) {
    if (attributes == 0) return 0;
    // C(G + k - 1, k - 1), saturating
    const std::size_t k = attributes - 1;
    const std::size_t n = subdivisions + k;
    std::size_t result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        const std::size_t factor = n - k + i;
        if (result > std::numeric_limits<std::size_t>::max() / factor) return std::numeric_limits<std::size_t>::max();
        result = result * factor / i;
    }
    return result;
}

std::size_t default_grid(std::size_t attributes) {
    if (attributes <= 1) return 1;
    if (attributes == 2) return kDefaultGridBudget - 1;
    std::size_t g = 1;
    while (simplex_grid_size(attributes, g + 1) <= kDefaultGridBudget) ++g;
    return g;
}

bool satisfies_bounds(const std::vector<WeightConstraint>& constraints, const std::vector<std::string>& attributes,
                      const WeightVector& w) {
    for (const auto& c : constraints) {
        const auto* bound = std::get_if<BoundConstraint>(&c);
        if (bound == nullptr) continue;
        auto it = std::find(attributes.begin(), attributes.end(), bound->attribute);
        if (it == attributes.end()) continue;
        const double x = w[static_cast<std::size_t>(it - attributes.begin())];
        switch (bound->op) {
            case BoundOp::le:
                if (x > bound->value + kWeightEpsilon) return false;
                break;
            case BoundOp::ge:
                if (x < bound->value - kWeightEpsilon) return false;
                break;
            case BoundOp::eq:
                if (std::abs(x - bound->value) > kWeightEpsilon) return false;
                break;
        }
    }
    return true;
}

bool AdmissibleSet::contains(const WeightVector& w) const {
    if (w.size() != attributes.size()) return false;
    double sum = 0.0;
    for (double x : w) {
        if (x < -kWeightEpsilon) return false;
        sum += x;
    }
    if (std::abs(sum - 1.0) > kWeightEpsilon) return false;
    switch (enumeration) {
        case Enumeration::singleton:
            for (std::size_t i = 0; i < w.size(); ++i)
                if (std::abs(w[i] - pinned_weights[i]) > kWeightEpsilon) return false;
            return true;
        case Enumeration::exact_threshold:
            return w[0] >= alpha_lo - kWeightEpsilon && w[0] <= alpha_hi + kWeightEpsilon;
        case Enumeration::grid:
            return satisfies_bounds(constraints, attributes, w);
    }
    return false;
}

AdmissibleSet admissible_set(const Instance& instance, std::size_t grid) {
    return admissible_set(instance, AdmissibleOptions{grid, false});
}

AdmissibleSet admissible_set(const Instance& instance, const AdmissibleOptions& options) {
    AdmissibleSet adm;
    for (const auto& a : instance.attributes) adm.attributes.push_back(a.name);
    adm.constraints = instance.constraints;
    const std::size_t k = adm.attributes.size();
    if (k == 0) throw Error(ErrorKind::InvalidInstance, "instance has no attributes");

    for (const auto& c : instance.constraints) {
        const auto* pin = std::get_if<PinConstraint>(&c);
        if (pin == nullptr) continue;
        const CriterionSpec* crit = instance.find_criterion(pin->criterion);
        if (crit == nullptr)
            throw Error(ErrorKind::UndeclaredReference, "pinned criterion '" + pin->criterion + "' is not declared");
        WeightVector w = weight_vector(instance, *crit);
        if (adm.pinned_criterion) {
            for (std::size_t i = 0; i < k; ++i) {
                if (std::abs(w[i] - adm.pinned_weights[i]) > kWeightEpsilon)
                    throw Error(ErrorKind::InfeasibleConstraints, "criteria '" + *adm.pinned_criterion + "' and '" +
                                                                      pin->criterion + "' are both pinned");
            }
            continue;
        }
        adm.pinned_criterion = pin->criterion;
        adm.pinned_weights = std::move(w);
    }

    if (adm.pinned_criterion) {
        if (!satisfies_bounds(adm.constraints, adm.attributes, adm.pinned_weights))
            throw Error(ErrorKind::InfeasibleConstraints,
                        "pinned criterion '" + *adm.pinned_criterion + "' violates a weight bound");
        adm.enumeration = Enumeration::singleton;
        adm.point_count = 1;
        return adm;
    }

    if (k == 2 && !options.force_grid) {
        adm.enumeration = Enumeration::exact_threshold;
        double lo = 0.0;
        double hi = 1.0;
        for (const auto& c : instance.constraints) {
            const auto* b = std::get_if<BoundConstraint>(&c);
            if (b == nullptr) continue;
            // bounds on the second attribute act on 1 - alpha
            const bool first = b->attribute == adm.attributes[0];
            BoundOp op = b->op;
            double v = b->value;
            if (!first) {
                v = 1.0 - v;
                if (op == BoundOp::le)
                    op = BoundOp::ge;
                else if (op == BoundOp::ge)
                    op = BoundOp::le;
            }
            if (op == BoundOp::ge || op == BoundOp::eq) lo = std::max(lo, v);
            if (op == BoundOp::le || op == BoundOp::eq) hi = std::min(hi, v);
        }
        if (lo > hi + kWeightEpsilon)
            throw Error(ErrorKind::InfeasibleConstraints, "weight bounds leave no admissible criterion");
        if (lo > hi) hi = lo;
        adm.alpha_lo = lo;
        adm.alpha_hi = hi;
        if (hi - lo > kWeightEpsilon) adm.varying = adm.attributes;
        return adm;
    }

    adm.enumeration = Enumeration::grid;
    adm.grid = options.grid != 0 ? options.grid : default_grid(k);
    const bool has_bounds = std::any_of(adm.constraints.begin(), adm.constraints.end(), [](const auto& c) {
        return std::holds_alternative<BoundConstraint>(c);
    });
    if (!has_bounds) {
        adm.point_count = simplex_grid_size(k, adm.grid);
        if (k >= 2) adm.varying = adm.attributes;
        return adm;
    }
    std::vector<double> lo(k, 2.0), hi(k, -1.0);
    std::size_t count = 0;
    adm.for_each_point([&](const WeightVector& w) {
        ++count;
        for (std::size_t i = 0; i < k; ++i) {
            lo[i] = std::min(lo[i], w[i]);
            hi[i] = std::max(hi[i], w[i]);
        }
    });
    if (count == 0)
        throw Error(ErrorKind::InfeasibleConstraints,
                    "no grid point with G=" + std::to_string(adm.grid) + " satisfies the weight bounds");
    adm.point_count = count;
    for (std::size_t i = 0; i < k; ++i)
        if (hi[i] - lo[i] > kWeightEpsilon) adm.varying.push_back(adm.attributes[i]);
    return adm;
}

std::vector<double> crossing_thresholds(const ScoreMatrix& matrix, std::size_t first, std::size_t second, double lo,
                                        double hi) {
    const std::size_t n = matrix.candidate_count();
    std::vector<double> out;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            // s(alpha) = y + alpha * (x - y)
            const double slope_a = matrix.at(a, first) - matrix.at(a, second);
            const double slope_b = matrix.at(b, first) - matrix.at(b, second);
            if (slope_a == slope_b) continue;
            const double alpha = (matrix.at(b, second) - matrix.at(a, second)) / (slope_a - slope_b);
            if (alpha > lo && alpha < hi) out.push_back(alpha);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(), [](double x, double y) { return std::abs(x - y) <= 1e-12; }),
              out.end());
    return out;
}

std::vector<Region> threshold_regions(const ScoreMatrix& matrix, std::size_t first, std::size_t second, double lo,
                                      double hi) {
    WeightVector w(matrix.attribute_count(), 0.0);
    auto winners = [&](double alpha) {
        w[first] = alpha;
        w[second] = 1.0 - alpha;
        return winners_at(matrix, w);
    };
    std::vector<double> points{lo};
    for (double t : crossing_thresholds(matrix, first, second, lo, hi)) points.push_back(t);
    if (hi > lo) points.push_back(hi);

    std::vector<Region> pieces;
    for (std::size_t i = 0; i < points.size(); ++i) {
        pieces.push_back({points[i], points[i], true, true, winners(points[i])});
        if (i + 1 < points.size()) {
            const double mid = 0.5 * (points[i] + points[i + 1]);
            pieces.push_back({points[i], points[i + 1], false, false, winners(mid)});
        }
    }
    std::vector<Region> merged;
    for (auto& piece : pieces) {
        if (!merged.empty() && merged.back().winners == piece.winners) {
            merged.back().hi = piece.hi;
            merged.back().hi_closed = piece.hi_closed;
        } else {
            merged.push_back(std::move(piece));
        }
    }
    return merged;
}

namespace {

using BoolMatrix = std::vector<std::vector<bool>>;

void transitive_close(BoolMatrix& m) {
    const std::size_t n = m.size();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (m[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (m[k][j]) m[i][j] = true;
}

}  // namespace

SemanticsResult compatible_answers(const Instance& instance, const AdmissibleSet& adm) {
    SemanticsResult out;
    out.matrix = normalize(instance);
    const ScoreMatrix& m = out.matrix;
    const std::size_t n = m.candidate_count();
    const std::size_t k = m.attribute_count();

    std::vector<bool> unique(n, false), any(n, false);
    BoolMatrix beats(n, std::vector<bool>(n, true));
    BoolMatrix tied(n, std::vector<bool>(n, true));
    for (std::size_t i = 0; i < n; ++i) beats[i][i] = false;

    if (adm.enumeration == Enumeration::exact_threshold) {
        for (const Region& r : threshold_regions(m, 0, 1, adm.alpha_lo, adm.alpha_hi)) {
            if (r.winners.size() == 1) unique[r.winners.front()] = true;
            for (std::size_t c : r.winners) any[c] = true;
        }
        // score differences are linear in alpha: the extremes sit at the ends
        for (double alpha : {adm.alpha_lo, adm.alpha_hi}) {
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = 0; b < n; ++b) {
                    if (a == b) continue;
                    const double d = alpha * (m.at(a, 0) - m.at(b, 0)) + (1.0 - alpha) * (m.at(a, 1) - m.at(b, 1));
                    if (!(d > kScoreEpsilon)) beats[a][b] = false;
                    if (std::abs(d) > kScoreEpsilon) tied[a][b] = false;
                }
            }
        }
    } else {
        std::vector<double> s(n);
        adm.for_each_point([&](const WeightVector& w) {
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0.0;
                for (std::size_t j = 0; j < k; ++j) acc += w[j] * m.at(i, j);
                s[i] = acc;
                best = std::max(best, acc);
            }
            std::size_t count = 0, last = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (s[i] >= best - kScoreEpsilon) {
                    any[i] = true;
                    ++count;
                    last = i;
                }
            }
            if (count == 1) unique[last] = true;
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = a + 1; b < n; ++b) {
                    const double d = s[a] - s[b];
                    if (!(d > kScoreEpsilon)) beats[a][b] = false;
                    if (!(-d > kScoreEpsilon)) beats[b][a] = false;
                    if (std::abs(d) > kScoreEpsilon) tied[a][b] = tied[b][a] = false;
                }
            }
        });
    }

    BoolMatrix closure = beats;
    for (const auto& p : instance.preferences) {
        auto w = instance.candidate_index(p.winner);
        auto l = instance.candidate_index(p.loser);
        if (!w || !l) throw Error(ErrorKind::UndeclaredReference, "preference names an undeclared candidate");
        closure[*w][*l] = true;
    }
    transitive_close(closure);
    for (std::size_t i = 0; i < n; ++i) {
        if (closure[i][i])
            throw Error(ErrorKind::ContradictoryPremises,
                        "preference premises contradict the scores: '" + m.candidates()[i] +
                            "' would be preferred over itself");
    }

    const bool any_unique = std::find(unique.begin(), unique.end(), true) != unique.end();
    out.weak_fallback = !any_unique;
    const std::vector<bool>& base = any_unique ? unique : any;
    for (std::size_t c = 0; c < n; ++c) {
        if (!base[c]) continue;
        bool dominated = false;
        for (std::size_t a = 0; a < n; ++a) dominated = dominated || closure[a][c];
        if (!dominated) out.compatible.push_back(m.candidates()[c]);
    }
    if (out.compatible.empty())
        throw Error(ErrorKind::ContradictoryPremises, "preference premises exclude every premise-compatible answer");

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (closure[a][b]) out.preference_closure.emplace_back(m.candidates()[a], m.candidates()[b]);

    out.underdetermined = out.compatible.size() > 1;
    if (out.compatible.size() == 1) out.entailed = out.compatible.front();
    out.score_unanimous = std::move(beats);
    out.always_tied = std::move(tied);
    out.closure = std::move(closure);
    return out;
}

bool entails_preference(const Instance& instance, const SemanticsResult& semantics, const std::string& a,
                        const std::string& b) {
    auto i = instance.candidate_index(a);
    auto j = instance.candidate_index(b);
    if (!i || !j) throw Error(ErrorKind::UndeclaredReference, "unknown candidate in preference query");
    return semantics.closure[*i][*j];
}

bool entails_preference(const Instance& instance, const AdmissibleSet& adm, const std::string& a,
                        const std::string& b) {
    return entails_preference(instance, compatible_answers(instance, adm), a, b);
}

}  // namespace udet
