/**
 * @file corpus.hpp
 * @brief Built-in worked instances (scholarship, city, company and their
 *        determined variants) shipped as `.udet` sources.
 */

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "udet/instance.hpp"
#include "udet/policy.hpp"

namespace udet {

struct ExpectedSummary {
    std::vector<std::string> compatible;
    bool underdetermined = false;
    PolicyBranch branch = PolicyBranch::direct;
};

struct CorpusEntry {
    std::string id;
    std::string filename;
    std::string source;
    Instance instance;
    ExpectedSummary expected;
};

/// Throws Error{CorpusCorrupt} if an embedded source fails to parse.
std::vector<CorpusEntry> load_corpus();

/// Writes every entry as `<dir>/<filename>`; returns the paths written.
std::vector<std::filesystem::path> export_corpus(const std::filesystem::path& dir);

}  // namespace udet
