#include "udet/dsl.hpp"

#include <charconv>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string_view>
#include <vector>

namespace udet {

std::string ParseError::describe(const std::string& origin) const {
    std::ostringstream os;
    os << origin << ":" << line << ":" << column << ": " << message;
    if (!snippet.empty()) os << " near '" << snippet << "'";
    return os.str();
}

std::string format_number(double value) {
    if (value == 0.0) value = 0.0;  // drop the sign of -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

namespace {

enum class TokenKind { identifier, number, string, punct, end };

struct Token {
    TokenKind kind = TokenKind::end;
    std::string text;
    double number = 0.0;
    std::size_t column = 1;
};

/// Thrown internally, converted to ParseError at the API boundary.
struct Failure {
    ParseError error;
};

bool ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(char c) { return c >= '0' && c <= '9'; }

std::string printable(std::string_view s) {
    std::string out;
    for (unsigned char c : s) {
        if (c >= 0x20 && c < 0x7f) {
            out += static_cast<char>(c);
        } else {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\x%02x", c);
            out += buf;
        }
    }
    return out;
}

[[noreturn]] void fail(std::size_t line, std::size_t column, std::string message, std::string_view snippet) {
    throw Failure{ParseError{line, column, std::move(message), printable(snippet)}};
}

std::vector<Token> tokenize(std::string_view text, std::size_t line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        const std::size_t col = i + 1;
        if (c == ' ' || c == '\t') {
            ++i;
        } else if (c == '#') {
            break;
        } else if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            out.push_back({TokenKind::identifier, std::string(text.substr(i, j - i)), 0.0, col});
            i = j;
        } else if (digit(c) || ((c == '-' || c == '+') && i + 1 < text.size() && digit(text[i + 1]))) {
            std::size_t j = i + 1;
            while (j < text.size() && digit(text[j])) ++j;
            if (j < text.size() && text[j] == '.') {
                ++j;
                if (j >= text.size() || !digit(text[j])) fail(line, col, "malformed number", text.substr(i, j - i));
                while (j < text.size() && digit(text[j])) ++j;
            }
            if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
                if (k >= text.size() || !digit(text[k])) fail(line, col, "malformed number", text.substr(i, k - i));
                while (k < text.size() && digit(text[k])) ++k;
                j = k;
            }
            if (j < text.size() && ident_char(text[j])) fail(line, col, "malformed number", text.substr(i, j - i + 1));
            std::string_view lexeme = text.substr(i, j - i);
            std::string_view digits = lexeme.front() == '+' ? lexeme.substr(1) : lexeme;
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
            if (ec != std::errc() || ptr != digits.data() + digits.size())
                fail(line, col, "number out of range", lexeme);
            out.push_back({TokenKind::number, std::string(lexeme), v, col});
            i = j;
        } else if (c == '"') {
            std::size_t j = text.find('"', i + 1);
            if (j == std::string_view::npos) fail(line, col, "unterminated string", text.substr(i));
            out.push_back({TokenKind::string, std::string(text.substr(i + 1, j - i - 1)), 0.0, col});
            i = j + 1;
        } else if ((c == '>' || c == '<') && i + 1 < text.size() && text[i + 1] == '=') {
            out.push_back({TokenKind::punct, std::string(text.substr(i, 2)), 0.0, col});
            i += 2;
        } else if (std::string_view(":,.={}()").find(c) != std::string_view::npos) {
            out.push_back({TokenKind::punct, std::string(1, c), 0.0, col});
            ++i;
        } else {
            fail(line, col, "unexpected character", text.substr(i, 1));
        }
    }
    out.push_back({TokenKind::end, "", 0.0, text.size() + 1});
    return out;
}

std::string describe(const Token& t) {
    switch (t.kind) {
        case TokenKind::identifier: return "'" + t.text + "'";
        case TokenKind::number: return "number " + t.text;
        case TokenKind::string: return "string";
        case TokenKind::punct: return "'" + t.text + "'";
        case TokenKind::end: return "end of line";
    }
    return "token";
}

/// Cursor over the tokens of one line.
class LineCursor {
public:
    LineCursor(std::vector<Token> tokens, std::size_t line, std::string_view source)
        : tokens_(std::move(tokens)), line_(line), source_(source) {}

    const Token& peek() const { return tokens_[pos_]; }
    std::size_t line() const { return line_; }

    [[noreturn]] void error_at(const Token& t, const std::string& message) const {
        std::string_view snippet = t.kind == TokenKind::end ? source_ : std::string_view(t.text);
        std::size_t col = std::min(t.column, std::max<std::size_t>(1, source_.size()));
        fail(line_, col, message, snippet);
    }

    const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    std::string identifier(const char* what) {
        const Token& t = peek();
        if (t.kind != TokenKind::identifier) error_at(t, std::string("expected ") + what + ", found " + describe(t));
        return next().text;
    }

    void keyword(const char* word) {
        const Token& t = peek();
        if (t.kind != TokenKind::identifier || t.text != word)
            error_at(t, std::string("expected '") + word + "', found " + describe(t));
        next();
    }

    void punct(const char* p) {
        const Token& t = peek();
        if (t.kind != TokenKind::punct || t.text != p)
            error_at(t, std::string("expected '") + p + "', found " + describe(t));
        next();
    }

    bool accept(const char* p) {
        const Token& t = peek();
        if (t.kind == TokenKind::punct && t.text == p) {
            next();
            return true;
        }
        return false;
    }

    double number(const char* what) {
        const Token& t = peek();
        if (t.kind != TokenKind::number) error_at(t, std::string("expected ") + what + ", found " + describe(t));
        return next().number;
    }

    std::string string(const char* what) {
        const Token& t = peek();
        if (t.kind != TokenKind::string) error_at(t, std::string("expected ") + what + ", found " + describe(t));
        return next().text;
    }

    void end() {
        const Token& t = peek();
        if (t.kind != TokenKind::end) error_at(t, "unexpected " + describe(t) + " at end of declaration");
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::string_view source_;
};

class Parser {
public:
    Instance run(std::string_view text) {
        std::size_t line_no = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t stop = text.find('\n', start);
            if (stop == std::string_view::npos) stop = text.size();
            std::string_view line = text.substr(start, stop - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            ++line_no;
            statement(line, line_no);
            start = stop + 1;
        }
        if (!header_line_) fail(1, 1, "missing instance header", "");
        post_validate();
        return std::move(instance_);
    }

private:
    void statement(std::string_view text, std::size_t line_no) {
        LineCursor cur(tokenize(text, line_no), line_no, text);
        if (cur.peek().kind == TokenKind::end) return;
        const Token& head = cur.peek();
        if (head.kind != TokenKind::identifier) cur.error_at(head, "expected a declaration keyword, found " + describe(head));
        const std::string keyword = head.text;
        if (!header_line_ && keyword != "instance") cur.error_at(head, "missing instance header");
        cur.next();
        if (keyword == "instance") return parse_header(cur);
        if (keyword == "question") return parse_question(cur);
        if (keyword == "scale") return parse_scale(cur);
        if (keyword == "attribute") return parse_attribute(cur);
        if (keyword == "candidates") return parse_candidates(cur);
        if (keyword == "fact") return parse_fact(cur);
        if (keyword == "criterion") return parse_criterion(cur);
        if (keyword == "assume") return parse_assume(cur);
        if (keyword == "prefer") return parse_prefer(cur);
        if (keyword == "require") return parse_require(cur);
        cur.error_at(head, "unknown declaration '" + keyword + "'");
    }

    void parse_header(LineCursor& cur) {
        if (header_line_) cur.error_at(cur.peek(), "duplicate instance header");
        const Token& t = cur.peek();
        std::string id = cur.string("quoted instance id");
        if (!is_identifier(id)) cur.error_at(t, "instance id must be an identifier");
        cur.end();
        instance_.id = std::move(id);
        header_line_ = cur.line();
        lines_["instance"] = cur.line();
    }

    void parse_question(LineCursor& cur) {
        if (lines_.count("question")) cur.error_at(cur.peek(), "duplicate question");
        instance_.question = cur.string("quoted question text");
        cur.end();
        lines_["question"] = cur.line();
    }

    void parse_scale(LineCursor& cur) {
        const Token name_tok = cur.peek();
        OrdinalScale scale;
        scale.name = cur.identifier("scale name");
        if (instance_.find_scale(scale.name)) cur.error_at(name_tok, "duplicate scale '" + scale.name + "'");
        cur.punct(":");
        do {
            const Token level_tok = cur.peek();
            std::string level = cur.identifier("level name");
            if (scale.rank(level)) cur.error_at(level_tok, "duplicate level '" + level + "'");
            scale.levels.push_back(std::move(level));
        } while (cur.accept(","));
        cur.end();
        if (scale.levels.size() < 2) cur.error_at(name_tok, "scale '" + scale.name + "' needs at least 2 levels");
        lines_["scale " + scale.name] = cur.line();
        instance_.scales.push_back(std::move(scale));
    }

    void parse_attribute(LineCursor& cur) {
        const Token name_tok = cur.peek();
        AttributeSchema attr;
        attr.name = cur.identifier("attribute name");
        if (instance_.find_attribute(attr.name)) cur.error_at(name_tok, "duplicate attribute '" + attr.name + "'");
        cur.punct(":");
        const Token kind_tok = cur.peek();
        std::string kind = cur.identifier("attribute kind");
        if (kind == "numeric") {
            attr.kind = AttributeKind::numeric;
        } else if (kind == "ordinal") {
            attr.kind = AttributeKind::ordinal;
            cur.punct("(");
            const Token scale_tok = cur.peek();
            attr.scale = cur.identifier("scale name");
            if (!instance_.find_scale(attr.scale)) cur.error_at(scale_tok, "unknown scale '" + attr.scale + "'");
            cur.punct(")");
        } else {
            cur.error_at(kind_tok, "expected 'numeric' or 'ordinal', found " + describe(kind_tok));
        }
        cur.punct(",");
        const Token dir_tok = cur.peek();
        std::string dir = cur.identifier("direction");
        if (dir == "higher_better") {
            attr.direction = Direction::higher_better;
        } else if (dir == "lower_better") {
            attr.direction = Direction::lower_better;
        } else {
            cur.error_at(dir_tok, "expected 'higher_better' or 'lower_better', found " + describe(dir_tok));
        }
        cur.end();
        lines_["attribute " + attr.name] = cur.line();
        instance_.attributes.push_back(std::move(attr));
    }

    void parse_candidates(LineCursor& cur) {
        do {
            const Token tok = cur.peek();
            std::string name = cur.identifier("candidate name");
            if (instance_.candidate_index(name)) cur.error_at(tok, "duplicate candidate '" + name + "'");
            lines_["candidate " + name] = cur.line();
            instance_.candidates.push_back(std::move(name));
        } while (cur.accept(","));
        cur.end();
        if (!lines_.count("candidates")) lines_["candidates"] = cur.line();
    }

    void parse_fact(LineCursor& cur) {
        const Token cand_tok = cur.peek();
        Fact fact;
        fact.candidate = cur.identifier("candidate name");
        if (!instance_.candidate_index(fact.candidate))
            cur.error_at(cand_tok, "unknown candidate '" + fact.candidate + "'");
        cur.punct(".");
        const Token attr_tok = cur.peek();
        fact.attribute = cur.identifier("attribute name");
        const AttributeSchema* attr = instance_.find_attribute(fact.attribute);
        if (attr == nullptr) cur.error_at(attr_tok, "unknown attribute '" + fact.attribute + "'");
        if (instance_.find_fact(fact.candidate, fact.attribute))
            cur.error_at(cand_tok, "duplicate fact for (" + fact.candidate + ", " + fact.attribute + ")");
        cur.punct("=");
        const Token value_tok = cur.peek();
        if (attr->kind == AttributeKind::numeric) {
            if (value_tok.kind != TokenKind::number)
                cur.error_at(value_tok, "attribute '" + attr->name + "' is numeric, found " + describe(value_tok));
            fact.value = cur.number("number");
        } else {
            if (value_tok.kind != TokenKind::identifier)
                cur.error_at(value_tok, "attribute '" + attr->name + "' is ordinal, found " + describe(value_tok));
            std::string level = cur.identifier("level name");
            const OrdinalScale* scale = instance_.find_scale(attr->scale);
            if (!scale->rank(level))
                cur.error_at(value_tok, "undeclared level '" + level + "' for scale '" + scale->name + "'");
            fact.value = std::move(level);
        }
        cur.end();
        lines_[fact.candidate + "." + fact.attribute] = cur.line();
        instance_.facts.push_back(std::move(fact));
    }

    void parse_criterion(LineCursor& cur) {
        const Token name_tok = cur.peek();
        CriterionSpec crit;
        crit.name = cur.identifier("criterion name");
        if (instance_.find_criterion(crit.name)) cur.error_at(name_tok, "duplicate criterion '" + crit.name + "'");
        if (crit.name == kUniformDefault) cur.error_at(name_tok, "'uniform_default' is a reserved criterion name");
        cur.punct("{");
        if (!cur.accept("}")) {
            do {
                const Token attr_tok = cur.peek();
                std::string attr = cur.identifier("attribute name");
                if (!instance_.find_attribute(attr)) cur.error_at(attr_tok, "unknown attribute '" + attr + "'");
                if (crit.weights.count(attr)) cur.error_at(attr_tok, "duplicate weight for '" + attr + "'");
                cur.punct(":");
                const Token w_tok = cur.peek();
                double w = cur.number("weight");
                if (w < 0.0) cur.error_at(w_tok, "weights must be non-negative");
                crit.weights[attr] = w;
            } while (cur.accept(","));
            cur.punct("}");
        }
        cur.end();
        lines_["criterion " + crit.name] = cur.line();
        instance_.criteria.push_back(std::move(crit));
    }

    void parse_assume(LineCursor& cur) {
        const Token what = cur.peek();
        std::string form = cur.identifier("'criterion' or 'weight'");
        if (form == "criterion") {
            cur.punct("=");
            const Token name_tok = cur.peek();
            std::string name = cur.identifier("criterion name");
            if (!instance_.find_criterion(name)) cur.error_at(name_tok, "unknown criterion '" + name + "'");
            cur.end();
            lines_["assume criterion " + name] = cur.line();
            instance_.constraints.emplace_back(PinConstraint{std::move(name)});
        } else if (form == "weight") {
            const Token attr_tok = cur.peek();
            BoundConstraint bound;
            bound.attribute = cur.identifier("attribute name");
            if (!instance_.find_attribute(bound.attribute))
                cur.error_at(attr_tok, "unknown attribute '" + bound.attribute + "'");
            const Token op = cur.peek();
            if (op.kind == TokenKind::punct && op.text == "<=") {
                bound.op = BoundOp::le;
            } else if (op.kind == TokenKind::punct && op.text == ">=") {
                bound.op = BoundOp::ge;
            } else if (op.kind == TokenKind::punct && op.text == "=") {
                bound.op = BoundOp::eq;
            } else {
                cur.error_at(op, "expected '<=', '>=' or '=', found " + describe(op));
            }
            cur.next();
            const Token v_tok = cur.peek();
            bound.value = cur.number("bound value");
            if (!(bound.value >= 0.0 && bound.value <= 1.0)) cur.error_at(v_tok, "bound value must lie in [0, 1]");
            cur.end();
            lines_["assume weight " + bound.attribute] = cur.line();
            instance_.constraints.emplace_back(std::move(bound));
        } else {
            cur.error_at(what, "expected 'criterion' or 'weight', found " + describe(what));
        }
    }

    void parse_prefer(LineCursor& cur) {
        const Token w_tok = cur.peek();
        PreferencePremise p;
        p.winner = cur.identifier("candidate name");
        if (!instance_.candidate_index(p.winner)) cur.error_at(w_tok, "unknown candidate '" + p.winner + "'");
        cur.keyword("over");
        const Token l_tok = cur.peek();
        p.loser = cur.identifier("candidate name");
        if (!instance_.candidate_index(p.loser)) cur.error_at(l_tok, "unknown candidate '" + p.loser + "'");
        if (p.winner == p.loser) cur.error_at(l_tok, "a candidate cannot be preferred over itself");
        cur.end();
        lines_["prefer " + p.winner + " over " + p.loser] = cur.line();
        last_prefer_line_ = cur.line();
        instance_.preferences.push_back(std::move(p));
    }

    void parse_require(LineCursor& cur) {
        cur.keyword("decision");
        cur.end();
        instance_.decisiveness_required = true;
    }

    void post_validate() {
        const auto violations = validate(instance_);
        if (violations.empty()) return;
        const Violation& v = violations.front();
        std::size_t line = header_line_.value_or(1);
        if (auto it = lines_.find(v.subject); it != lines_.end()) {
            line = it->second;
        } else if (v.rule == "preference_cycle" && last_prefer_line_) {
            line = *last_prefer_line_;
        } else if (v.rule == "incomplete_matrix" || v.rule == "candidate_count") {
            if (auto c = lines_.find("candidates"); c != lines_.end()) line = c->second;
        }
        fail(line, 1, v.message, v.subject);
    }

    Instance instance_;
    std::optional<std::size_t> header_line_;
    std::optional<std::size_t> last_prefer_line_;
    std::map<std::string, std::size_t> lines_;
};

std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ", ";
        out += names[i];
    }
    return out;
}

}  // namespace

ParseResult parse_instance(const SourceDocument& doc) {
    try {
        return Parser{}.run(doc.text);
    } catch (const Failure& f) {
        return f.error;
    }
}

std::string serialize_instance(const Instance& in) {
    std::ostringstream os;
    os << "instance \"" << in.id << "\"\n";
    os << "question \"" << in.question << "\"\n";
    for (const auto& scale : in.scales) os << "scale " << scale.name << ": " << join_names(scale.levels) << "\n";
    for (const auto& attr : in.attributes) {
        os << "attribute " << attr.name << ": ";
        if (attr.kind == AttributeKind::numeric)
            os << "numeric";
        else
            os << "ordinal(" << attr.scale << ")";
        os << ", " << to_string(attr.direction) << "\n";
    }
    os << "candidates " << join_names(in.candidates) << "\n";
    const Instance canonical = canonicalized(in);
    for (const auto& fact : canonical.facts) {
        os << "fact " << fact.candidate << "." << fact.attribute << " = ";
        if (const double* v = std::get_if<double>(&fact.value))
            os << format_number(*v);
        else
            os << std::get<std::string>(fact.value);
        os << "\n";
    }
    for (const auto& crit : in.criteria) {
        os << "criterion " << crit.name << " { ";
        bool first = true;
        for (const auto& attr : in.attributes) {
            auto it = crit.weights.find(attr.name);
            if (it == crit.weights.end()) continue;
            os << (first ? "" : ", ") << attr.name << ": " << format_number(it->second);
            first = false;
        }
        os << " }\n";
    }
    for (const auto& c : in.constraints) {
        if (const auto* pin = std::get_if<PinConstraint>(&c)) {
            os << "assume criterion = " << pin->criterion << "\n";
        } else {
            const auto& b = std::get<BoundConstraint>(c);
            os << "assume weight " << b.attribute << " " << to_string(b.op) << " " << format_number(b.value) << "\n";
        }
    }
    for (const auto& p : in.preferences) os << "prefer " << p.winner << " over " << p.loser << "\n";
    if (in.decisiveness_required) os << "require decision\n";
    return os.str();
}

}  // namespace udet
