#pragma once

#include <cctype>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tbsym/boardman.hpp"
#include "tbsym/errors.hpp"
#include "tbsym/germs.hpp"
#include "tbsym/polynomial.hpp"

namespace tbsym {

namespace detail {

inline bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline bool is_identifier(std::string_view s) {
    if (s.empty() || !is_ident_start(s[0])) return false;
    for (char c : s)
        if (!is_ident_char(c)) return false;
    return true;
}

// Character (not byte) column of a byte offset in UTF-8 text, 1-based.
inline std::size_t column_of(std::string_view text, std::size_t pos) {
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos && i < text.size(); ++i)
        if ((static_cast<unsigned char>(text[i]) & 0xC0u) != 0x80u) ++col;
    return col;
}

constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";

// Recursive descent over the expression grammar:
//   expr   := term (('+' | '-') term)*
//   term   := ('+' | '-')? factor ('*' factor)*
//   factor := rational | identifier ('^' natural)? | '(' expr ')'
class ExprParser {
public:
    ExprParser(std::string_view text, const VarListPtr& vars, std::size_t line, std::size_t column_offset)
        : text_(text), vars_(vars), line_(line), column_offset_(column_offset) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what, std::optional<std::size_t> at = std::nullopt) const {
        throw ParseError(what, line_, column_offset_ + column_of(text_, at.value_or(pos_)) - 1);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    // Returns '+', '-' or 0 without consuming anything else.
    char peek_sign() {
        skip_ws();
        if (pos_ >= text_.size()) return 0;
        if (text_[pos_] == '+' || text_[pos_] == '-') return text_[pos_];
        if (text_.substr(pos_, kUnicodeMinus.size()) == kUnicodeMinus) return '-';
        return 0;
    }

    void consume_sign() { pos_ += (text_[pos_] == '+' || text_[pos_] == '-') ? 1 : kUnicodeMinus.size(); }

    Polynomial expr() {
        Polynomial sum = term();
        while (char s = peek_sign()) {
            consume_sign();
            Polynomial t = term();
            sum = s == '+' ? sum + t : sum - t;
        }
        return sum;
    }

    Polynomial term() {
        bool negate = false;
        if (char s = peek_sign()) {
            consume_sign();
            negate = s == '-';
        }
        Polynomial prod = factor();
        while (true) {
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '*') {
                ++pos_;
                prod *= factor();
            } else {
                break;
            }
        }
        return negate ? -prod : prod;
    }

    std::string digits() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    Polynomial factor() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        const std::size_t start = pos_;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits();
            std::string den = "1";
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                skip_ws();
                const std::size_t den_at = pos_;
                den = digits();
                if (den.empty()) fail("expected a denominator");
                if (BigInt(den, 10) == 0) fail("zero denominator", den_at);
            }
            return Polynomial::constant(vars_, Rational(BigInt(num, 10), BigInt(den, 10)));
        }
        if (is_ident_start(c)) {
            while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
            const std::string name(text_.substr(start, pos_ - start));
            const auto& vs = *vars_;
            const auto it = std::find(vs.begin(), vs.end(), name);
            if (it == vs.end()) fail("unknown identifier '" + name + "'", start);
            Polynomial v = Polynomial::variable(vars_, static_cast<std::size_t>(it - vs.begin()));
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '^') {
                ++pos_;
                skip_ws();
                const std::size_t exp_at = pos_;
                const std::string e = digits();
                if (e.empty()) fail("expected an exponent");
                if (e.size() > 9) fail("exponent too large", exp_at);
                return pow(v, static_cast<std::uint32_t>(std::stoul(e)));
            }
            return v;
        }
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
            ++pos_;
            return inner;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    const VarListPtr& vars_;
    std::size_t line_;
    std::size_t column_offset_;
    std::size_t pos_ = 0;
};

inline std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace detail

inline Polynomial parse_poly(std::string_view text, const VarListPtr& vars) {
    return detail::ExprParser(text, vars, 1, 1).parse();
}

inline std::string print_monomial(const Monomial& m, const VarList& vars) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += vars[i];
        if (m[i] > 1) out += '^' + std::to_string(m[i]);
    }
    return out;
}

// Canonical rendering, terms in descending graded lex order.
inline std::string print_poly(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, coef] : p.terms()) {
        const bool negative = coef.sign() < 0;
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        const Rational mag = negative ? -coef : coef;
        if (mono.is_one()) {
            out += mag.to_string();
        } else {
            if (!mag.is_one()) out += mag.to_string() + "*";
            out += print_monomial(mono, p.vars());
        }
    }
    return out;
}

// Ideal file: '#' starts a comment, blank lines are ignored, the first
// remaining line is "vars: x, y, z" and each later one is "gen: <expr>".
inline IdealPresentation parse_ideal_file(std::string_view text) {
    std::optional<VarListPtr> vars;
    std::vector<Polynomial> gens;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const std::string content = detail::trim(line);
        if (content.empty()) {
            if (end == text.size()) break;
            continue;
        }
        const std::size_t indent = line.find_first_not_of(" \t");
        const std::size_t colon = line.find(':');
        const std::string key = colon == std::string_view::npos ? "" : detail::trim(line.substr(0, colon));

        if (!vars) {
            if (key != "vars") throw ParseError("missing 'vars:' line before generators", line_no, indent + 1);
            VarList names;
            std::set<std::string> seen;
            std::size_t item_start = colon + 1;
            const std::string_view list = line;
            if (!detail::trim(list.substr(item_start)).empty()) {
                while (true) {
                    std::size_t comma = list.find(',', item_start);
                    if (comma == std::string_view::npos) comma = list.size();
                    const std::string name = detail::trim(list.substr(item_start, comma - item_start));
                    const std::size_t col = list.find_first_not_of(" \t", item_start);
                    if (!detail::is_identifier(name))
                        throw ParseError("invalid variable name '" + name + "'", line_no,
                                         detail::column_of(list, col == std::string_view::npos ? item_start : col));
                    if (!seen.insert(name).second)
                        throw ParseError("duplicate variable '" + name + "'", line_no, detail::column_of(list, col));
                    names.push_back(name);
                    if (comma == list.size()) break;
                    item_start = comma + 1;
                }
            }
            vars = make_vars(std::move(names));
        } else {
            if (key != "gen") throw ParseError("expected 'gen: <expr>'", line_no, indent + 1);
            const std::string_view expr = line.substr(colon + 1);
            gens.push_back(detail::ExprParser(expr, *vars, line_no, detail::column_of(line, colon + 1)).parse());
        }
        if (end == text.size()) break;
    }
    if (!vars) throw ParseError("missing 'vars:' line", line_no == 0 ? 1 : line_no, 1);
    return IdealPresentation(*vars, std::move(gens));
}

inline std::string print_ideal_file(const IdealPresentation& ideal) {
    std::string out = "vars:";
    for (std::size_t i = 0; i < ideal.num_vars(); ++i) out += (i == 0 ? " " : ", ") + ideal.vars()[i];
    out += '\n';
    for (const auto& g : ideal.generators()) out += "gen: " + print_poly(g) + '\n';
    return out;
}

// spec := (block ',')* tail ; block := nat '^' nat ; tail := nat '*'
inline SymbolSpec parse_symbol_spec(std::string_view text) {
    SymbolSpec spec;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& what, std::size_t at) -> void {
        throw ParseError(what, 1, detail::column_of(text, at));
    };
    auto nat = [&]() -> std::size_t {
        skip_ws();
        const std::size_t b = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (b == pos) fail("expected a natural number", b);
        if (pos - b > 9) fail("number too large", b);
        return std::stoul(std::string(text.substr(b, pos - b)));
    };

    while (true) {
        skip_ws();
        const std::size_t item_at = pos;
        const std::size_t value = nat();
        skip_ws();
        if (pos < text.size() && text[pos] == '*') {
            ++pos;
            skip_ws();
            if (pos != text.size()) fail("unexpected text after the tail", pos);
            spec.tail = value;
            break;
        }
        if (pos >= text.size() || text[pos] != '^') fail("expected '^' or '*'", pos);
        ++pos;
        const std::size_t mult_at = pos;
        const std::size_t mult = nat();
        if (mult == 0) fail("multiplicity must be positive", mult_at);
        if (!spec.blocks.empty() && value >= spec.blocks.back().first)
            throw DomainError("block values must strictly decrease (column " +
                              std::to_string(detail::column_of(text, item_at)) + ")");
        spec.blocks.emplace_back(value, mult);
        skip_ws();
        if (pos >= text.size() || text[pos] != ',') fail("expected ','", pos);
        ++pos;
    }
    validate(spec);
    return spec;
}

inline std::string format_symbol_spec(const SymbolSpec& spec) {
    std::string out;
    for (const auto& [value, mult] : spec.blocks) out += std::to_string(value) + "^" + std::to_string(mult) + ",";
    return out + std::to_string(spec.tail) + "*";
}

// Run-length form of a symbol with proven tail, e.g. "5^1,2^2,1^2,0*".
inline std::string format_run_length(const TBSymbol& s) {
    std::string out;
    for (std::size_t i = 0; i < s.prefix.size();) {
        std::size_t j = i;
        while (j < s.prefix.size() && s.prefix[j] == s.prefix[i]) ++j;
        if (!(s.tail_proven && j == s.prefix.size() && s.prefix[i] == s.tail_value))
            out += std::to_string(s.prefix[i]) + "^" + std::to_string(j - i) + ",";
        i = j;
    }
    return s.tail_proven ? out + std::to_string(s.tail_value) + "*" : out + "?";
}

// Human-readable symbol, e.g. "(1, 0, 0, …) tail=0 proven".
inline std::string format_symbol(const TBSymbol& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.prefix.size(); ++i) out += (i ? ", " : "") + std::to_string(s.prefix[i]);
    if (s.tail_proven) {
        out += (s.prefix.empty() ? "" : ", ") + std::to_string(s.tail_value) + ", …) tail=" +
               std::to_string(s.tail_value) + " proven";
    } else {
        out += ", …) tail unproven";
    }
    return out;
}

struct SymbolReport {
    std::size_t num_vars = 0;
    std::size_t depth = 0;
    TBSymbol symbol;
    std::vector<ExtensionStep> steps;
};

inline SymbolReport make_report(const ChainResult& run) { return {run.num_vars, run.depth, run.symbol, run.steps}; }

inline nlohmann::ordered_json symbol_report_object(const SymbolReport& report) {
    nlohmann::ordered_json j;
    j["num_vars"] = report.num_vars;
    j["depth"] = report.depth;
    j["prefix"] = report.symbol.prefix;
    j["tail_proven"] = report.symbol.tail_proven;
    j["tail_value"] = report.symbol.tail_proven ? nlohmann::ordered_json(report.symbol.tail_value) : nlohmann::ordered_json();
    auto steps = nlohmann::ordered_json::array();
    for (const auto& s : report.steps) {
        nlohmann::ordered_json o;
        o["corank"] = s.corank;
        o["minor_order"] = s.minor_order ? nlohmann::ordered_json(*s.minor_order) : nlohmann::ordered_json();
        o["generators_before"] = s.generators_before;
        o["generators_after"] = s.generators_after;
        steps.push_back(std::move(o));
    }
    j["steps"] = std::move(steps);
    return j;
}

// Compact JSON with a fixed key order.
inline std::string symbol_report_json(const SymbolReport& report) { return symbol_report_object(report).dump(); }

}  // namespace tbsym
