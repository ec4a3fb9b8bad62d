#include "udet/corpus.hpp"

#include <fstream>
#include <map>
#include <string_view>
#include <utility>

#include "udet/dsl.hpp"
#include "udet/errors.hpp"

namespace udet {

// Generated at configure time from corpus/*.udet.
std::vector<std::pair<std::string_view, std::string_view>> embedded_corpus_files();

namespace {

const std::map<std::string, ExpectedSummary>& expectations() {
    using B = PolicyBranch;
    static const std::map<std::string, ExpectedSummary> table{
        {"scholarship", {{"A", "B"}, true, B::conditional}},
        {"scholarship_merit", {{"A"}, false, B::direct}},
        {"scholarship_need", {{"B"}, false, B::direct}},
        {"scholarship_decide", {{"A", "B"}, true, B::recommend_with_assumptions}},
        {"scholarship_open", {{"A", "B"}, true, B::clarify}},
        {"scholarship_dominant", {{"A"}, false, B::direct}},
        {"city", {{"Bengaluru", "Mumbai", "Delhi"}, true, B::conditional}},
        {"company", {{"profit", "employee_well_being", "balanced"}, true, B::conditional}},
        {"company_welfare", {{"employee_well_being"}, false, B::direct}},
    };
    return table;
}

}  // namespace

std::vector<CorpusEntry> load_corpus() {
    std::vector<CorpusEntry> out;
    for (const auto& [filename, text] : embedded_corpus_files()) {
        ParseResult parsed = parse_instance({std::string(text), std::string(filename)});
        if (const auto* err = std::get_if<ParseError>(&parsed))
            throw Error(ErrorKind::CorpusCorrupt, err->describe(std::string(filename)));
        CorpusEntry entry;
        entry.instance = std::get<Instance>(std::move(parsed));
        entry.id = entry.instance.id;
        entry.filename = std::string(filename);
        entry.source = std::string(text);
        auto it = expectations().find(entry.id);
        if (it == expectations().end())
            throw Error(ErrorKind::CorpusCorrupt, "no expected summary for corpus entry '" + entry.id + "'");
        entry.expected = it->second;
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<std::filesystem::path> export_corpus(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (const auto& entry : load_corpus()) {
        const auto path = dir / entry.filename;
        std::ofstream os(path, std::ios::binary);
        os << entry.source;
        if (!os) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
        written.push_back(path);
    }
    return written;
}

}  // namespace udet
