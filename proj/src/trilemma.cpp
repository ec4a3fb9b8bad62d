#include "udet/trilemma.hpp"

#include <atomic>
#include <thread>

#include "udet/errors.hpp"

namespace udet {

std::string_view to_string(PairwiseForm form) {
    switch (form) {
        case PairwiseForm::correct_and_unbiased_not_decisive: return "C_strong & NB_strict => !U_decisive";
        case PairwiseForm::unbiased_and_decisive_not_correct: return "NB_strict & U_decisive => !C_strong";
        case PairwiseForm::correct_and_decisive_not_unbiased: return "C_strong & U_decisive => !NB_strict";
    }
    return "?";
}

std::size_t response_space_bound(std::size_t candidates, std::size_t criteria) {
    return candidates * (1 + criteria) + (std::size_t{1} << criteria) + candidates * (candidates - 1) / 2 + 2;
}

ResponseSpace enumerate_responses(const Instance& instance, const SemanticsResult& semantics,
                                  const AdmissibleSet& adm) {
    const std::size_t m = instance.criteria.size();
    if (m > kMaxEnumeratedCriteria)
        throw Error(ErrorKind::ResponseSpaceTooLarge,
                    std::to_string(m) + " criteria declared; at most " + std::to_string(kMaxEnumeratedCriteria) +
                        " can be enumerated");
    ResponseSpace space;
    auto& out = space.responses;
    out.reserve(response_space_bound(instance.candidates.size(), m));

    for (const auto& c : instance.candidates) {
        out.emplace_back(Decisive{c, std::nullopt});
        for (const auto& crit : instance.criteria) out.emplace_back(Decisive{c, crit.name});
    }

    // each criterion maps to its unique winner, or the first of a tie
    std::vector<std::string> answer(m);
    for (std::size_t i = 0; i < m; ++i) answer[i] = winners_at(semantics.matrix, instance.criteria[i]).winners.front();
    for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
        Conditional cond;
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (std::size_t{1} << i)) cond.branches.push_back({instance.criteria[i].name, answer[i]});
        out.emplace_back(std::move(cond));
    }

    for (std::size_t a = 0; a < instance.candidates.size(); ++a)
        for (std::size_t b = a + 1; b < instance.candidates.size(); ++b)
            out.emplace_back(Equivalence{{instance.candidates[a], instance.candidates[b]}});

    out.emplace_back(Clarify{clarification_items(instance, semantics, adm)});
    out.emplace_back(Refuse{"cannot determine the best candidate without knowing the selection criterion"});
    return space;
}

bool pairwise_holds(PairwiseForm form, const Verdict& v, bool underdetermined) {
    if (!underdetermined) return true;
    switch (form) {
        case PairwiseForm::correct_and_unbiased_not_decisive: return !(v.c_strong && v.nb_strict) || !v.u_decisive;
        case PairwiseForm::unbiased_and_decisive_not_correct: return !(v.nb_strict && v.u_decisive) || !v.c_strong;
        case PairwiseForm::correct_and_decisive_not_unbiased: return !(v.c_strong && v.u_decisive) || !v.nb_strict;
    }
    return false;
}

namespace {

bool antecedent(PairwiseForm form, const Verdict& v) {
    switch (form) {
        case PairwiseForm::correct_and_unbiased_not_decisive: return v.c_strong && v.nb_strict;
        case PairwiseForm::unbiased_and_decisive_not_correct: return v.nb_strict && v.u_decisive;
        case PairwiseForm::correct_and_decisive_not_unbiased: return v.c_strong && v.u_decisive;
    }
    return false;
}

bool consequent(PairwiseForm form, const Verdict& v) {
    switch (form) {
        case PairwiseForm::correct_and_unbiased_not_decisive: return !v.u_decisive;
        case PairwiseForm::unbiased_and_decisive_not_correct: return !v.c_strong;
        case PairwiseForm::correct_and_decisive_not_unbiased: return !v.nb_strict;
    }
    return false;
}

}  // namespace

TrilemmaReport check_trilemma(const Instance& instance, const AdmissibleSet& adm, const SemanticsResult& semantics) {
    TrilemmaReport report;
    report.instance_id = instance.id;
    report.underdetermined = semantics.underdetermined;
    report.responses = enumerate_responses(instance, semantics, adm).responses;
    report.verdicts.reserve(report.responses.size());
    for (const auto& r : report.responses) report.verdicts.push_back(evaluate(instance, semantics, adm, r));

    const std::array forms{PairwiseForm::correct_and_unbiased_not_decisive,
                           PairwiseForm::unbiased_and_decisive_not_correct,
                           PairwiseForm::correct_and_decisive_not_unbiased};
    for (std::size_t f = 0; f < forms.size(); ++f) report.pairwise[f].form = forms[f];

    for (std::size_t i = 0; i < report.responses.size(); ++i) {
        const Verdict& v = report.verdicts[i];
        if (semantics.underdetermined && v.c_strong && v.nb_strict && v.u_decisive)
            report.counterexamples.push_back(report.responses[i]);
        for (auto& p : report.pairwise) {
            if (!antecedent(p.form, v)) continue;
            p.antecedent.push_back({i, consequent(p.form, v)});
            if (!pairwise_holds(p.form, v, semantics.underdetermined)) ++p.violations;
        }
    }

    if (!semantics.underdetermined && semantics.entailed) {
        Response witness = Decisive{*semantics.entailed, std::nullopt};
        const Verdict v = evaluate(instance, semantics, adm, witness);
        if (v.c_strong && v.nb_strict && v.u_decisive) {
            report.conflict_free_witness = std::move(witness);
            report.witness_verdict = v;
        }
    }
    return report;
}

TrilemmaReport check_trilemma(const Instance& instance, std::size_t grid) {
    const AdmissibleSet adm = admissible_set(instance, grid);
    return check_trilemma(instance, adm, compatible_answers(instance, adm));
}

BatchSummary summarize(const std::vector<TrilemmaReport>& reports) {
    BatchSummary s;
    for (const auto& r : reports) {
        ++s.instances;
        if (r.underdetermined) ++s.underdetermined;
        s.responses += r.responses.size();
        s.counterexamples += r.counterexamples.size();
        for (const auto& p : r.pairwise) s.pairwise_violations += p.violations;
        if (!r.underdetermined && !r.conflict_free_witness) ++s.determined_without_witness;
    }
    return s;
}

std::vector<TrilemmaReport> check_random_batch(const GeneratorConfig& config, std::size_t count, std::size_t grid,
                                               std::size_t workers) {
    check_config(config);
    std::vector<TrilemmaReport> reports(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                reports[i] = check_trilemma(generate_instance(config, i), grid);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, count));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return reports;
}

}  // namespace udet
