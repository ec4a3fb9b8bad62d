#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "udet/dsl.hpp"

using namespace udet;

namespace {

ParseError parse_error(const std::string& text) {
    auto r = parse_instance({text, "<test>"});
    REQUIRE(std::holds_alternative<ParseError>(r));
    return std::get<ParseError>(r);
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) out.push_back(line);
    return out;
}

std::string join_lines(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
}

}  // namespace

TEST_CASE("parses the scholarship document") {
    const Instance in = test::scholarship();
    CHECK(in.id == "scholarship");
    CHECK(in.candidates == std::vector<std::string>{"A", "B"});
    REQUIRE(in.attributes.size() == 2);
    CHECK(in.attributes[0].name == "gpa");
    CHECK(in.attributes[1].name == "need");
    CHECK(in.attributes[1].kind == AttributeKind::ordinal);
    CHECK(in.attributes[1].scale == "need_scale");
    CHECK(std::get<double>(in.find_fact("A", "gpa")->value) == 9.5);
    CHECK(std::get<std::string>(in.find_fact("B", "need")->value) == "severe");
    CHECK(in.criteria.size() == 2);
    CHECK_FALSE(in.decisiveness_required);
}

TEST_CASE("optional declarations") {
    const Instance in = test::scholarship(
        "assume criterion = merit_first\nassume weight gpa >= 0.25\nprefer A over B  # trailing comment\nrequire decision\n");
    REQUIRE(in.constraints.size() == 2);
    CHECK(std::get<PinConstraint>(in.constraints[0]).criterion == "merit_first");
    const auto& b = std::get<BoundConstraint>(in.constraints[1]);
    CHECK(b.attribute == "gpa");
    CHECK(b.op == BoundOp::ge);
    CHECK(b.value == 0.25);
    REQUIRE(in.preferences.size() == 1);
    CHECK(in.preferences[0].winner == "A");
    CHECK(in.decisiveness_required);
}

TEST_CASE("empty document reports a missing header on line 1") {
    for (const std::string text : {"", "\n\n", "# only a comment\n"}) {
        const ParseError e = parse_error(text);
        CHECK(e.line == 1);
        CHECK(e.message.find("missing instance header") != std::string::npos);
    }
}

TEST_CASE("undeclared attribute is named in the error") {
    const ParseError e = parse_error(std::string(test::kScholarship) + "fact A.height = 180\n");
    CHECK(e.line == 13);
    CHECK(e.message.find("height") != std::string::npos);
    CHECK(e.describe("x.udet").rfind("x.udet:13:", 0) == 0);
}

TEST_CASE("representative errors point at the offending line") {
    struct Case {
        std::string extra;
        std::string fragment;
    };
    const Case cases[] = {
        {"fact A.gpa = 9.0\n", "duplicate fact"},
        {"fact C.gpa = 9.0\n", "unknown candidate"},
        {"criterion merit_first { gpa: 1.0, need: 0.0 }\n", "duplicate criterion"},
        {"criterion uniform_default { gpa: 0.5, need: 0.5 }\n", "reserved"},
        {"criterion lopsided { gpa: 0.9, need: 0.0 }\n", "sum"},
        {"assume criterion = luck_first\n", "unknown criterion"},
        {"assume weight gpa >= 1.5\n", "[0, 1]"},
        {"prefer A over A\n", "itself"},
        {"frobnicate A\n", "unknown declaration"},
        {"assume weight gpa >= 0.5.1\n", "unexpected '.'"},
        {"assume weight gpa >= 9x\n", "malformed number"},
        {"question \"again\"\n", "duplicate question"},
    };
    for (const auto& c : cases) {
        CAPTURE(c.extra);
        const ParseError e = parse_error(std::string(test::kScholarship) + c.extra);
        CHECK(e.line == 13);
        CHECK(e.message.find(c.fragment) != std::string::npos);
        CHECK(e.column >= 1);
    }
}

TEST_CASE("undeclared ordinal level") {
    const ParseError e = parse_error(R"(instance "x"
question "q"
scale s: lo, hi
attribute n: ordinal(s), higher_better
candidates A, B
fact A.n = extreme
)");
    CHECK(e.line == 6);
    CHECK(e.column == 12);
    CHECK(e.message.find("undeclared level 'extreme'") != std::string::npos);
}

TEST_CASE("validation failures map back to a source line") {
    const std::string text = R"(instance "x"
question "q"
attribute gpa: numeric, higher_better
candidates A, B
fact A.gpa = 1
)";
    const ParseError e = parse_error(text);
    CHECK(e.message.find("B") != std::string::npos);
    CHECK(e.line >= 1);
    CHECK(e.line <= 6);
}

TEST_CASE("serialize is deterministic and canonical") {
    const Instance in = test::scholarship("assume weight need <= 0.75\nprefer B over A\n");
    const std::string once = serialize_instance(in);
    CHECK(once == serialize_instance(in));
    CHECK(once == serialize_instance(test::parse(once)));
}

TEST_CASE("shuffled fact order serializes in candidate-major order") {
    GeneratorConfig config;
    config.seed = 99;
    std::mt19937 rng(5);
    for (std::uint64_t i = 0; i < 50; ++i) {
        Instance in = generate_instance(config, i);
        std::shuffle(in.facts.begin(), in.facts.end(), rng);
        // Reference ordering by sort keys.
        std::vector<std::pair<std::size_t, std::size_t>> keys;
        for (const auto& f : in.facts) keys.emplace_back(*in.candidate_index(f.candidate), *in.attribute_index(f.attribute));
        std::sort(keys.begin(), keys.end());
        std::vector<std::string> expected;
        for (auto [c, a] : keys) expected.push_back(in.candidates[c] + "." + in.attributes[a].name);

        std::vector<std::string> actual;
        for (const auto& line : lines_of(serialize_instance(in))) {
            if (line.rfind("fact ", 0) != 0) continue;
            actual.push_back(line.substr(5, line.find(' ', 5) - 5));
        }
        CHECK(actual == expected);
    }
}

TEST_CASE("round trip holds on random instances") {
    GeneratorConfig config;
    config.seed = 2024;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const Instance in = generate_instance(config, i);
        const std::string text = serialize_instance(in);
        auto back = parse_instance({text, "<rt>"});
        if (auto* e = std::get_if<ParseError>(&back)) FAIL(e->describe("<rt>") << "\n" << text);
        CHECK(structurally_equal(std::get<Instance>(back), in));
    }
}

TEST_CASE("round trip holds on the corpus") {
    for (const auto& entry : load_corpus()) {
        CAPTURE(entry.id);
        CHECK(structurally_equal(test::parse(serialize_instance(entry.instance)), entry.instance));
    }
}

TEST_CASE("format_number") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(9.5) == "9.5");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(-0.0) == "0");
}

TEST_CASE("single token corruption is reported on the corrupted line") {
    std::mt19937_64 rng(11);
    const char* junk[] = {"@", "$", "!", "9x", "%%", "{", "}"};
    std::vector<std::string> sources;
    for (const auto& e : load_corpus()) sources.push_back(e.source);
    GeneratorConfig config;
    for (std::uint64_t i = 0; i < 40; ++i) sources.push_back(serialize_instance(generate_instance(config, i)));

    int checked = 0;
    for (const auto& src : sources) {
        const auto lines = lines_of(src);
        for (std::size_t li = 0; li < lines.size(); ++li) {
            const std::string& line = lines[li];
            if (line.empty() || line[0] == '#') continue;
            // Token boundaries outside quotes and before any comment.
            std::vector<std::size_t> cuts{0};
            bool quoted = false;
            for (std::size_t k = 0; k < line.size(); ++k) {
                if (line[k] == '"') quoted = !quoted;
                if (!quoted && line[k] == '#') break;
                if (!quoted && line[k] == ' ') cuts.push_back(k);
            }
            const std::size_t at = cuts[rng() % cuts.size()];
            const std::string token = junk[rng() % std::size(junk)];
            auto mutated = lines;
            mutated[li] = line.substr(0, at) + " " + token + " " + line.substr(at);
            auto r = parse_instance({join_lines(mutated), "<mut>"});
            CAPTURE(mutated[li]);
            REQUIRE(std::holds_alternative<ParseError>(r));
            CHECK(std::get<ParseError>(r).line == li + 1);
            ++checked;
        }
    }
    CHECK(checked > 300);
}

TEST_CASE("arbitrary bytes never escape as exceptions") {
    std::mt19937_64 rng(3);
    const std::string corpus_text = load_corpus().front().source;
    for (int i = 0; i < 3000; ++i) {
        std::string text;
        if (i % 2 == 0) {
            const std::size_t n = rng() % 200;
            for (std::size_t k = 0; k < n; ++k) text.push_back(static_cast<char>(rng() % 256));
        } else {
            text = corpus_text;
            const int edits = 1 + static_cast<int>(rng() % 6);
            for (int k = 0; k < edits; ++k) {
                const std::size_t pos = rng() % text.size();
                switch (rng() % 3) {
                    case 0: text[pos] = static_cast<char>(rng() % 256); break;
                    case 1: text.erase(pos, 1 + rng() % 8); break;
                    default: text.insert(pos, 1, static_cast<char>(rng() % 256)); break;
                }
                if (text.empty()) text = "x";
            }
        }
        ParseResult r;
        CHECK_NOTHROW(r = parse_instance({text, "<fuzz>"}));
        if (const auto* e = std::get_if<ParseError>(&r)) {
            CHECK_FALSE(e->message.empty());
            const auto line_count = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1;
            CHECK(e->line >= 1);
            CHECK(e->line <= line_count);
            CHECK(e->column >= 1);
        } else {
            CHECK(validate(std::get<Instance>(r)).empty());
        }
    }
}
