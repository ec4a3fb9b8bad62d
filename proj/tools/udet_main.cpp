// udet command-line front end.
//
// Exit codes: 0 ok, 1 parse / validation / usage error, 2 semantic error
// (infeasible or contradictory premises, sweep not reducible), 3 a trilemma
// counterexample was found by `check`.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "udet/corpus.hpp"
#include "udet/dsl.hpp"
#include "udet/errors.hpp"
#include "udet/generator.hpp"
#include "udet/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitSemantic = 2;
constexpr int kExitCounterexample = 3;

struct Failure {
    int code;
};

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

udet::Instance load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << path << ": cannot read file\n";
        throw Failure{kExitParse};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    auto parsed = udet::parse_instance({buf.str(), path});
    if (auto* err = std::get_if<udet::ParseError>(&parsed)) {
        std::cerr << err->describe(path) << "\n";
        throw Failure{kExitParse};
    }
    return std::get<udet::Instance>(std::move(parsed));
}

int semantic_exit(const udet::Error& e) {
    std::cerr << "error (" << udet::to_string(e.kind()) << "): " << e.what() << "\n";
    switch (e.kind()) {
        case udet::ErrorKind::InvalidInstance:
        case udet::ErrorKind::UndeclaredReference:
            return kExitParse;
        default:
            return kExitSemantic;
    }
}

struct CommonOptions {
    std::string format = "text";
    std::size_t grid = 0;
    bool require_decision = false;
    bool timestamps = false;

    udet::AnalysisOptions analysis() const {
        udet::AnalysisOptions o;
        o.grid = grid;
        o.require_decision = require_decision;
        if (timestamps) o.timestamp = utc_now();
        return o;
    }
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--grid", opts.grid, "Simplex grid subdivisions (0 = default budget)");
    cmd->add_flag("--require-decision", opts.require_decision, "Treat the instance as requiring a decision");
    cmd->add_flag("--timestamps", opts.timestamps, "Include generation time in the output");
}

int run_analyze(const std::string& path, const CommonOptions& opts) {
    const auto report = udet::analyze(load(path), opts.analysis());
    std::cout << (opts.format == "json" ? udet::render_json(report) : udet::render_text(report));
    return kExitOk;
}

int run_policy(const std::string& path, const CommonOptions& opts) {
    const auto report = udet::analyze(load(path), opts.analysis());
    if (opts.format == "json") {
        nlohmann::ordered_json j = udet::report_json(report)["policy"];
        j["instance"] = report.instance.id;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "instance: " << report.instance.id << "\n"
                  << udet::render_policy_text(report.policy, report.policy_verdict);
    }
    return kExitOk;
}

nlohmann::ordered_json summary_json(const udet::BatchSummary& s) {
    return {{"instances", s.instances},
            {"underdetermined", s.underdetermined},
            {"responses", s.responses},
            {"counterexamples", s.counterexamples},
            {"pairwise_violations", s.pairwise_violations},
            {"determined_without_witness", s.determined_without_witness}};
}

std::string summary_text(const udet::BatchSummary& s) {
    std::ostringstream os;
    os << "summary: instances=" << s.instances << " underdetermined=" << s.underdetermined
       << " responses=" << s.responses << " counterexamples=" << s.counterexamples
       << " pairwise_violations=" << s.pairwise_violations
       << " determined_without_witness=" << s.determined_without_witness << "\n";
    return os.str();
}

struct CheckOptions {
    std::vector<std::string> paths;
    std::size_t random = 0;
    std::uint64_t seed = 1;
    std::size_t jobs = 0;
};

int run_check(const CheckOptions& check, const CommonOptions& opts) {
    if (check.paths.empty() && check.random == 0) {
        std::cerr << "check: give instance files or --random N\n";
        return kExitParse;
    }
    std::vector<udet::TrilemmaReport> reports;
    for (const auto& path : check.paths) {
        auto instance = load(path);
        if (opts.require_decision) instance.decisiveness_required = true;
        reports.push_back(udet::check_trilemma(instance, opts.grid));
    }
    if (check.random > 0) {
        udet::GeneratorConfig config;
        config.seed = check.seed;
        const std::size_t workers = check.jobs ? check.jobs : std::max(1u, std::thread::hardware_concurrency());
        auto batch = udet::check_random_batch(config, check.random, opts.grid, workers);
        reports.insert(reports.end(), std::make_move_iterator(batch.begin()), std::make_move_iterator(batch.end()));
    }
    const auto summary = udet::summarize(reports);

    if (opts.format == "json") {
        nlohmann::ordered_json j;
        j["version"] = std::string(udet::kReportVersion);
        if (check.random > 0) j["seed"] = check.seed;
        j["summary"] = summary_json(summary);
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        for (const auto& r : reports) list.push_back(udet::trilemma_json(r));
        j["reports"] = list;
        if (opts.timestamps) j["generated_at"] = utc_now();
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& r : reports) std::cout << "instance: " << r.instance_id << "\n" << udet::render_trilemma_text(r);
        if (opts.timestamps) std::cout << "generated_at: " << utc_now() << "\n";
        std::cout << summary_text(summary);
    }
    return summary.counterexamples == 0 ? kExitOk : kExitCounterexample;
}

int run_sweep(const std::string& path, const std::vector<std::string>& attributes, const std::string& format) {
    const auto instance = load(path);
    std::optional<std::pair<std::string, std::string>> pair;
    if (!attributes.empty()) {
        if (attributes.size() != 2) {
            std::cerr << "sweep: --attributes takes exactly two names\n";
            return kExitSemantic;
        }
        pair = std::pair{attributes[0], attributes[1]};
    }
    const auto table = udet::sweep(instance, pair);
    if (format == "json") {
        nlohmann::ordered_json j;
        j["instance"] = table.instance_id;
        j["alpha_attribute"] = table.first;
        j["complement_attribute"] = table.second;
        nlohmann::ordered_json th = nlohmann::ordered_json::array();
        for (double x : table.thresholds) th.push_back(std::stod(udet::format_number(x)));
        j["thresholds"] = th;
        nlohmann::ordered_json regions = nlohmann::ordered_json::array();
        for (const auto& r : table.regions) {
            std::vector<std::string> names;
            for (auto i : r.winners) names.push_back(table.candidates[i]);
            regions.push_back({{"lo", std::stod(udet::format_number(r.lo))},
                               {"hi", std::stod(udet::format_number(r.hi))},
                               {"lo_closed", r.lo_closed},
                               {"hi_closed", r.hi_closed},
                               {"winners", names},
                               {"text", udet::render_region(r, table.candidates)}});
        }
        j["regions"] = regions;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << udet::render_sweep_text(table);
    }
    return kExitOk;
}

int run_export(const std::string& dir) {
    for (const auto& path : udet::export_corpus(dir)) std::cout << path.string() << "\n";
    return kExitOk;
}

int run_list() {
    for (const auto& entry : udet::load_corpus()) {
        std::cout << entry.id << "  " << entry.filename << "  " << entry.instance.question << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Correctness / non-bias / utility analysis of underdetermined decision questions", "udet"};
    app.set_version_flag("--version", std::string(udet::kToolVersion));
    app.require_subcommand(1);

    CommonOptions common;
    std::string path;

    auto* analyze = app.add_subcommand("analyze", "Full report: semantics, verdict table, policy, trilemma");
    analyze->add_option("instance", path, "Instance file (.udet)")->required();
    add_common(analyze, common);

    CheckOptions check;
    auto* check_cmd = app.add_subcommand("check", "Exhaustive trilemma check over files or random instances");
    check_cmd->add_option("instances", check.paths, "Instance files (.udet)");
    check_cmd->add_option("--random", check.random, "Number of generated instances");
    check_cmd->add_option("--seed", check.seed, "Generator seed");
    check_cmd->add_option("--jobs", check.jobs, "Worker threads (0 = hardware concurrency)");
    add_common(check_cmd, common);

    auto* policy = app.add_subcommand("policy", "Apply the underdetermination-aware response policy");
    policy->add_option("instance", path, "Instance file (.udet)")->required();
    add_common(policy, common);

    std::vector<std::string> sweep_attrs;
    std::string sweep_format = "text";
    auto* sweep = app.add_subcommand("sweep", "Winner regions as alpha runs over [0, 1] for two attributes");
    sweep->add_option("instance", path, "Instance file (.udet)")->required();
    sweep->add_option("--attributes", sweep_attrs, "Two attributes to project onto")->delimiter(',');
    sweep->add_option("--format", sweep_format, "Output format")->check(CLI::IsMember({"text", "json"}));

    std::string export_dir;
    auto* corpus = app.add_subcommand("corpus", "Built-in worked instances");
    corpus->require_subcommand(1);
    auto* export_cmd = corpus->add_subcommand("export", "Write the corpus as .udet files");
    export_cmd->add_option("dir", export_dir, "Target directory")->required();
    auto* list_cmd = corpus->add_subcommand("list", "List corpus entries");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (*analyze) return run_analyze(path, common);
        if (*check_cmd) return run_check(check, common);
        if (*policy) return run_policy(path, common);
        if (*sweep) return run_sweep(path, sweep_attrs, sweep_format);
        if (*export_cmd) return run_export(export_dir);
        if (*list_cmd) return run_list();
    } catch (const Failure& f) {
        return f.code;
    } catch (const udet::Error& e) {
        return semantic_exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSemantic;
    }
    return kExitParse;
}
