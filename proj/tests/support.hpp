#pragma once

#include <stdexcept>
#include <string>

#include "udet/corpus.hpp"
#include "udet/dsl.hpp"
#include "udet/generator.hpp"
#include "udet/semantics.hpp"

namespace test {

inline const char* const kScholarship = R"(instance "scholarship"
question "Who should receive the scholarship?"
scale need_scale: low, moderate, severe
attribute gpa: numeric, higher_better
attribute need: ordinal(need_scale), higher_better
candidates A, B
fact A.gpa = 9.5
fact A.need = moderate
fact B.gpa = 8.7
fact B.need = severe
criterion merit_first { gpa: 1.0, need: 0.0 }
criterion need_first { gpa: 0.0, need: 1.0 }
)";

inline udet::Instance parse(const std::string& text) {
    auto r = udet::parse_instance({text, "<test>"});
    if (auto* e = std::get_if<udet::ParseError>(&r)) throw std::runtime_error(e->describe("<test>"));
    return std::get<udet::Instance>(std::move(r));
}

inline udet::Instance scholarship(const std::string& extra = "") { return parse(kScholarship + extra); }

inline udet::CorpusEntry corpus(const std::string& id) {
    for (auto& e : udet::load_corpus())
        if (e.id == id) return e;
    throw std::runtime_error("no corpus entry " + id);
}

inline udet::SemanticsResult semantics(const udet::Instance& in, std::size_t grid = 0) {
    return udet::compatible_answers(in, udet::admissible_set(in, grid));
}

}  // namespace test
