/**
 * @file dsl.hpp
 * @brief Line-oriented `.udet` instance format: parser and canonical serializer.
 *
 * Grammar, one declaration per line, `#` starts a comment:
 *
 *     instance "scholarship"
 *     question "Who should receive the scholarship?"
 *     scale need_scale: low, moderate, severe
 *     attribute gpa: numeric, higher_better
 *     attribute need: ordinal(need_scale), higher_better
 *     candidates A, B
 *     fact A.gpa = 9.5
 *     fact A.need = moderate
 *     criterion merit_first { gpa: 1.0, need: 0.0 }
 *     assume criterion = merit_first
 *     assume weight gpa >= 0.7
 *     prefer A over B
 *     require decision
 *
 * Names must be declared before they are referenced.
 */

#pragma once

#include <string>
#include <variant>

#include "udet/instance.hpp"

namespace udet {

struct ParseError {
    std::size_t line = 1;    ///< 1-based
    std::size_t column = 1;  ///< 1-based, in bytes
    std::string message;
    std::string snippet;

    /// "origin:line:column: message"
    std::string describe(const std::string& origin) const;
};

struct SourceDocument {
    std::string text;
    std::string origin = "<memory>";
};

using ParseResult = std::variant<Instance, ParseError>;

/// Parses a document. On success the instance has no validation violations.
ParseResult parse_instance(const SourceDocument& doc);

/// Canonical text: scales, attributes, candidates, facts (candidate-major),
/// criteria, constraints, preferences. Numbers use up to 12 significant digits.
std::string serialize_instance(const Instance& instance);

/// "%.12g" rendering shared by the serializer and the reports.
std::string format_number(double value);

}  // namespace udet
