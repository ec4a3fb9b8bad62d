#include "udet/report.hpp"

#include <algorithm>
#include <sstream>

#include "udet/dsl.hpp"
#include "udet/errors.hpp"

namespace udet {

namespace {

using ojson = nlohmann::ordered_json;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

/// Numbers go through the same 12-digit rendering as the text output so the
/// two formats carry identical values.
double rounded(double value) { return std::stod(format_number(value)); }

std::string join(const std::vector<std::string>& items, std::string_view sep = ", ") {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string flag(bool value) { return value ? "1" : "0"; }

AnalysisReport analyze(Instance instance, const AnalysisOptions& options) {
    if (options.require_decision) instance.decisiveness_required = true;
    AnalysisReport r;
    r.admissible = admissible_set(instance, options.grid);
    r.semantics = compatible_answers(instance, r.admissible);
    r.trilemma = check_trilemma(instance, r.admissible, r.semantics);
    r.policy = decide(instance, r.semantics, r.admissible);
    r.policy_verdict = evaluate(instance, r.semantics, r.admissible, r.policy.response);
    r.timestamp = options.timestamp;
    r.instance = std::move(instance);
    return r;
}

ojson response_json(const Response& response) {
    return std::visit(overloaded{
                          [](const Decisive& r) {
                              ojson j{{"form", "decisive"}, {"candidate", r.candidate}};
                              j["declared_theta"] = r.declared_theta ? ojson(*r.declared_theta) : ojson(nullptr);
                              return j;
                          },
                          [](const Conditional& r) {
                              ojson branches = ojson::array();
                              for (const auto& b : r.branches)
                                  branches.push_back({{"criterion", b.criterion}, {"candidate", b.candidate}});
                              return ojson{{"form", "conditional"}, {"branches", branches}};
                          },
                          [](const Equivalence& r) {
                              return ojson{{"form", "equivalence"}, {"candidates", r.candidates}};
                          },
                          [](const Clarify& r) { return ojson{{"form", "clarify"}, {"missing", r.missing}}; },
                          [](const Refuse& r) { return ojson{{"form", "refuse"}, {"reason", r.reason}}; },
                      },
                      response);
}

ojson verdict_json(const Verdict& v) {
    return ojson{{"c_strong", v.c_strong},     {"c_cond", v.c_cond},
                 {"nb_strict", v.nb_strict},   {"nb_transparent", v.nb_transparent},
                 {"u_decisive", v.u_decisive}, {"u_assistive", rounded(v.u_assistive)},
                 {"hidden_theta", v.hidden_theta}};
}

ojson trilemma_json(const TrilemmaReport& t) {
    ojson j;
    j["instance"] = t.instance_id;
    j["underdetermined"] = t.underdetermined;
    j["responses_evaluated"] = t.responses.size();
    ojson counter = ojson::array();
    for (const auto& c : t.counterexamples) counter.push_back(label(c));
    j["counterexamples"] = counter;
    ojson pairwise = ojson::array();
    for (const auto& p : t.pairwise) {
        const auto holds = static_cast<std::size_t>(
            std::count_if(p.antecedent.begin(), p.antecedent.end(), [](const auto& w) { return w.consequent; }));
        pairwise.push_back({{"form", std::string(to_string(p.form))},
                            {"antecedent", p.antecedent.size()},
                            {"consequent_holds", holds},
                            {"violations", p.violations}});
    }
    j["pairwise"] = pairwise;
    j["conflict_free_witness"] = t.conflict_free_witness ? ojson(label(*t.conflict_free_witness)) : ojson(nullptr);
    j["caveat"] = t.caveat;
    return j;
}

ojson report_json(const AnalysisReport& r) {
    ojson j;
    j["version"] = std::string(kReportVersion);

    const AdmissibleSet& adm = r.admissible;
    ojson engine;
    engine["enumeration"] = std::string(to_string(adm.enumeration));
    engine["grid"] = adm.enumeration == Enumeration::grid ? ojson(adm.grid) : ojson(nullptr);
    engine["admissible_points"] = adm.enumeration == Enumeration::exact_threshold ? ojson(nullptr) : ojson(adm.point_count);
    engine["alpha_interval"] = adm.enumeration == Enumeration::exact_threshold
                                   ? ojson::array({rounded(adm.alpha_lo), rounded(adm.alpha_hi)})
                                   : ojson(nullptr);
    engine["pinned_criterion"] = adm.pinned_criterion ? ojson(*adm.pinned_criterion) : ojson(nullptr);
    engine["epsilon_score"] = kScoreEpsilon;
    engine["epsilon_weight"] = kWeightEpsilon;
    engine["tool_version"] = std::string(kToolVersion);
    j["engine"] = engine;

    const Instance& in = r.instance;
    ojson inst;
    inst["id"] = in.id;
    inst["question"] = in.question;
    inst["candidates"] = in.candidates;
    std::vector<std::string> attrs, crits;
    for (const auto& a : in.attributes) attrs.push_back(a.name);
    for (const auto& c : in.criteria) crits.push_back(c.name);
    inst["attributes"] = attrs;
    inst["criteria"] = crits;
    inst["decisiveness_required"] = in.decisiveness_required;
    j["instance"] = inst;

    const SemanticsResult& s = r.semantics;
    ojson sem;
    sem["compatible"] = s.compatible;
    sem["underdetermined"] = s.underdetermined;
    sem["entailed"] = s.entailed ? ojson(*s.entailed) : ojson(nullptr);
    ojson closure = ojson::array();
    for (const auto& [a, b] : s.preference_closure) closure.push_back({a, b});
    sem["preference_closure"] = closure;
    sem["weak_fallback"] = s.weak_fallback;
    j["semantics"] = sem;

    ojson verdicts = ojson::array();
    for (std::size_t i = 0; i < r.trilemma.responses.size(); ++i) {
        ojson row{{"label", label(r.trilemma.responses[i])}, {"response", response_json(r.trilemma.responses[i])}};
        const ojson flags = verdict_json(r.trilemma.verdicts[i]);
        for (const auto& [key, value] : flags.items()) row[key] = value;
        verdicts.push_back(row);
    }
    j["verdicts"] = verdicts;

    j["policy"] = ojson{{"branch", std::string(to_string(r.policy.branch))},
                        {"label", label(r.policy.response)},
                        {"response", response_json(r.policy.response)},
                        {"rationale", r.policy.rationale},
                        {"verdict", verdict_json(r.policy_verdict)}};

    ojson tri = trilemma_json(r.trilemma);
    tri.erase("instance");
    j["trilemma"] = tri;
    if (r.timestamp) j["generated_at"] = *r.timestamp;
    return j;
}

std::string render_json(const AnalysisReport& report) { return report_json(report).dump(2) + "\n"; }

std::string render_trilemma_text(const TrilemmaReport& t) {
    std::ostringstream os;
    os << "trilemma: underdetermined=" << flag(t.underdetermined) << " responses=" << t.responses.size()
       << " counterexamples=" << t.counterexamples.size() << "\n";
    for (const auto& c : t.counterexamples) os << "  counterexample: " << label(c) << "\n";
    os << "  pairwise forms:\n";
    for (const auto& p : t.pairwise) {
        const auto holds =
            std::count_if(p.antecedent.begin(), p.antecedent.end(), [](const auto& w) { return w.consequent; });
        os << "    " << pad(std::string(to_string(p.form)), 38) << " antecedent=" << p.antecedent.size()
           << " consequent_holds=" << holds << " violations=" << p.violations << "\n";
    }
    os << "  conflict-free witness: " << (t.conflict_free_witness ? label(*t.conflict_free_witness) : "none") << "\n";
    os << "  " << t.caveat << "\n";
    return os.str();
}

std::string render_policy_text(const PolicyDecision& d, const Verdict& v) {
    std::ostringstream os;
    os << "policy: " << to_string(d.branch) << "\n";
    os << "  response: " << label(d.response) << "\n";
    os << "  rationale: " << d.rationale << "\n";
    os << "  verdict: c_strong=" << flag(v.c_strong) << " c_cond=" << flag(v.c_cond) << " nb_strict=" << flag(v.nb_strict)
       << " nb_transparent=" << flag(v.nb_transparent) << " u_decisive=" << flag(v.u_decisive)
       << " u_assistive=" << format_number(v.u_assistive) << " hidden_theta=" << flag(v.hidden_theta) << "\n";
    return os.str();
}

std::string render_text(const AnalysisReport& r) {
    std::ostringstream os;
    const AdmissibleSet& adm = r.admissible;
    os << "instance: " << r.instance.id << "\n";
    os << "question: " << r.instance.question << "\n";
    os << "engine: enumeration=" << to_string(adm.enumeration);
    if (adm.enumeration == Enumeration::grid) os << " grid=" << adm.grid;
    if (adm.enumeration == Enumeration::exact_threshold)
        os << " alpha_interval=[" << format_number(adm.alpha_lo) << ", " << format_number(adm.alpha_hi) << "]";
    else
        os << " admissible_points=" << adm.point_count;
    if (adm.pinned_criterion) os << " pinned=" << *adm.pinned_criterion;
    os << " epsilon_score=" << format_number(kScoreEpsilon) << " epsilon_weight=" << format_number(kWeightEpsilon)
       << " version=" << kToolVersion << "\n";
    if (r.timestamp) os << "generated_at: " << *r.timestamp << "\n";

    const SemanticsResult& s = r.semantics;
    os << "compatible: " << join(s.compatible) << "\n";
    os << "underdetermined: " << flag(s.underdetermined) << "\n";
    os << "entailed: " << s.entailed.value_or("none") << "\n";
    std::vector<std::string> pairs;
    for (const auto& [a, b] : s.preference_closure) pairs.push_back(a + " > " + b);
    os << "preference closure: " << (pairs.empty() ? "none" : join(pairs)) << "\n";
    if (s.weak_fallback) os << "note: no unique winner anywhere; compatible set is the union of tied winners\n";

    os << render_policy_text(r.policy, r.policy_verdict);

    std::size_t width = 8;
    for (const auto& resp : r.trilemma.responses) width = std::max(width, label(resp).size());
    os << "verdicts:\n";
    os << "  " << pad("response", width) << "  c_strong c_cond nb_strict nb_transparent u_decisive u_assistive hidden_theta\n";
    for (std::size_t i = 0; i < r.trilemma.responses.size(); ++i) {
        const Verdict& v = r.trilemma.verdicts[i];
        os << "  " << pad(label(r.trilemma.responses[i]), width) << "  " << pad(flag(v.c_strong), 8) << " "
           << pad(flag(v.c_cond), 6) << " " << pad(flag(v.nb_strict), 9) << " " << pad(flag(v.nb_transparent), 14)
           << " " << pad(flag(v.u_decisive), 10) << " " << pad(format_number(v.u_assistive), 11) << " "
           << flag(v.hidden_theta) << "\n";
    }
    os << render_trilemma_text(r.trilemma);
    return os.str();
}

SweepTable sweep(const Instance& instance, const std::optional<std::pair<std::string, std::string>>& attributes) {
    SweepTable table;
    table.instance_id = instance.id;
    table.candidates = instance.candidates;
    std::size_t first = 0, second = 1;
    if (attributes) {
        auto a = instance.attribute_index(attributes->first);
        auto b = instance.attribute_index(attributes->second);
        if (!a || !b || *a == *b)
            throw Error(ErrorKind::InvalidArgument,
                        "sweep needs two distinct declared attributes, got '" + attributes->first + "' and '" +
                            attributes->second + "'");
        first = *a;
        second = *b;
    } else if (instance.attributes.size() != 2) {
        throw Error(ErrorKind::InvalidArgument, "instance has " + std::to_string(instance.attributes.size()) +
                                                    " attributes; name two with --attributes to project");
    }
    table.first = instance.attributes[first].name;
    table.second = instance.attributes[second].name;
    const ScoreMatrix matrix = normalize(instance);
    table.regions = threshold_regions(matrix, first, second, 0.0, 1.0);
    table.thresholds = crossing_thresholds(matrix, first, second, 0.0, 1.0);
    if (instance.attributes.size() == 2 && !instance.constraints.empty()) {
        const AdmissibleSet adm = admissible_set(instance);
        if (adm.enumeration == Enumeration::exact_threshold) {
            const bool swapped = first == 1;
            table.admissible = swapped ? std::pair{1.0 - adm.alpha_hi, 1.0 - adm.alpha_lo}
                                       : std::pair{adm.alpha_lo, adm.alpha_hi};
        } else {
            const double w = adm.pinned_weights[first];
            table.admissible = std::pair{w, w};
        }
    }
    return table;
}

std::string render_region(const Region& region, const std::vector<std::string>& candidates) {
    std::vector<std::string> names;
    for (std::size_t i : region.winners) names.push_back(candidates[i]);
    const std::string who = names.size() == 1 ? names.front() : "tie (" + join(names) + ")";
    if (region.is_point()) return "α = " + format_number(region.lo) + ": " + who;
    return std::string("α ∈ ") + (region.lo_closed ? "[" : "(") + format_number(region.lo) + ", " +
           format_number(region.hi) + (region.hi_closed ? "]" : ")") + ": " + who;
}

std::string render_sweep_text(const SweepTable& t) {
    std::ostringstream os;
    os << "sweep: " << t.instance_id << " (α weights " << t.first << ", 1 - α weights " << t.second << ")\n";
    std::vector<std::string> th;
    for (double x : t.thresholds) th.push_back(format_number(x));
    os << "thresholds: " << (th.empty() ? "none" : join(th)) << "\n";
    if (t.admissible)
        os << "admissible: α ∈ [" << format_number(t.admissible->first) << ", " << format_number(t.admissible->second)
           << "]\n";
    std::vector<std::string> parts;
    for (const auto& r : t.regions) {
        os << render_region(r, t.candidates) << "\n";
        parts.push_back(render_region(r, t.candidates));
    }
    os << "summary: " << join(parts, "; ") << "\n";
    return os.str();
}

}  // namespace udet
