/*
   Copyright 2026 The tmod Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "tmod/input.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <variant>

#include <nlohmann/json.hpp>

#include "tmod/errors.hpp"

namespace tmod {

namespace {

constexpr int kMaxTauPower = 4096;

class ExprParser {
   public:
    ExprParser(std::string_view text, const FieldConfig& k, std::size_t line, std::size_t column)
        : s_(text), k_(k), f_(k.fq_ptr()), line_(line), column_(column) {}

    SkewTauPoly parse() {
        SkewTauPoly v = expr();
        skip();
        if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

   private:
    struct Atom {
        SkewTauPoly value;
        bool bare_theta = false;
    };

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, column_ + pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    SkewTauPoly scalar(const PerfectFieldElement& x) const { return SkewTauPoly::constant(x); }

    PerfectFieldElement tau_free(const SkewTauPoly& p, std::size_t at, const char* where) const {
        if (p.degree() > 0) throw ParseError(std::string(where) + " must not contain tau", line_, column_ + at);
        return p.is_zero() ? PerfectFieldElement::zero(f_) : p.coefficient(0);
    }

    Exponent integer() {
        skip();
        const std::size_t start = pos_;
        Exponent v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            if (pos_ - start >= 30) fail("integer too large");
            v = v * 10 + (s_[pos_] - '0');
            ++pos_;
        }
        if (pos_ == start) fail("expected an integer");
        return v;
    }

    SkewTauPoly expr() {
        const bool negate = accept('-');
        SkewTauPoly v = term();
        if (negate) v = -v;
        for (;;) {
            if (accept('+'))
                v = v + term();
            else if (accept('-'))
                v = v - term();
            else
                return v;
        }
    }

    SkewTauPoly term() {
        SkewTauPoly v = factor();
        for (;;) {
            if (accept('*')) {
                v = v * factor();
            } else if (accept('/')) {
                skip();
                const std::size_t at = pos_;
                const PerfectFieldElement c = tau_free(factor(), at, "a divisor");
                if (c.is_zero()) throw ParseError("division by zero", line_, column_ + at);
                v = v * scalar(c.inverse());
            } else {
                return v;
            }
        }
    }

    SkewTauPoly factor() {
        if (accept('-')) return -factor();
        skip();
        const std::size_t at = pos_;
        Atom a = atom();
        if (!accept('^')) return a.value;
        const bool negative = accept('-');
        const Exponent n = integer();
        if (a.bare_theta) return scalar(PerfectFieldElement::theta(f_, negative ? -n : n));
        if (negative || a.value.degree() <= 0) {
            PerfectFieldElement c = tau_free(a.value, at, "a base with a negative exponent");
            if (n > std::numeric_limits<std::int64_t>::max() / 2) fail("exponent too large");
            if (negative && c.is_zero()) throw ParseError("division by zero", line_, column_ + at);
            return scalar(c.pow(negative ? -static_cast<std::int64_t>(n) : static_cast<std::int64_t>(n)));
        }
        if (n * a.value.degree() > kMaxTauPower) fail("tau-degree too large");
        SkewTauPoly r = SkewTauPoly::constant(PerfectFieldElement::one(f_));
        for (Exponent i = 0; i < n; ++i) r = r * a.value;
        return r;
    }

    Atom atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            // Reduce digit by digit so that long literals cannot overflow.
            std::int64_t v = 0;
            const std::int64_t p = k_.p();
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                v = (v * 10 + (s_[pos_] - '0')) % p;
                ++pos_;
            }
            return {scalar(PerfectFieldElement::from_int(f_, v))};
        }
        if (c == '(') {
            ++pos_;
            SkewTauPoly v = expr();
            expect(')');
            return {v};
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        const std::string_view word = s_.substr(start, pos_ - start);
        if (word == "tau") return {SkewTauPoly::monomial(PerfectFieldElement::one(f_), 1)};
        if (word == "th") {
            if (k_.mode() == FieldMode::FiniteField)
                throw ParseError("th is not available when K = F_q", line_, column_ + start);
            return {scalar(PerfectFieldElement::theta(f_, 1)), true};
        }
        if (word == "g") return {scalar(PerfectFieldElement::constant(f_, f_->generator()))};
        if (word == "root") {
            expect('(');
            skip();
            const std::size_t at = pos_;
            const PerfectFieldElement x = tau_free(expr(), at, "the argument of root()");
            expect(',');
            const Exponent m = integer();
            if (m > 64) fail("root level too large");
            expect(')');
            return {scalar(x.twist(-static_cast<std::int64_t>(m)))};
        }
        pos_ = start;
        fail("unknown symbol '" + std::string(word) + "'");
    }

    std::string_view s_;
    const FieldConfig& k_;
    const GaloisField* f_;
    std::size_t line_;
    std::size_t column_;
    std::size_t pos_ = 0;
};

// ---- key/value documents -------------------------------------------------

struct Token {
    enum class Kind { Ident, Int, String, True, False, LBracket, RBracket, Comma, Equals, Newline, End };
    Kind kind;
    std::string text;
    std::int64_t value = 0;
    std::size_t line;
    std::size_t column;
};

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t i = 0;
    auto advance = [&] {
        if (s[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    };
    while (i < s.size()) {
        const char c = s[i];
        const std::size_t l = line;
        const std::size_t cl = col;
        if (c == '\n') {
            out.push_back({Token::Kind::Newline, "", 0, l, cl});
            advance();
        } else if (c == ' ' || c == '\t' || c == '\r') {
            advance();
        } else if (c == '#') {
            while (i < s.size() && s[i] != '\n') advance();
        } else if (c == '[' || c == ']' || c == ',' || c == '=') {
            const Token::Kind k = c == '['   ? Token::Kind::LBracket
                                  : c == ']' ? Token::Kind::RBracket
                                  : c == ',' ? Token::Kind::Comma
                                             : Token::Kind::Equals;
            out.push_back({k, std::string(1, c), 0, l, cl});
            advance();
        } else if (c == '"') {
            advance();
            std::string text;
            for (;;) {
                if (i >= s.size() || s[i] == '\n') throw ParseError("unterminated string", l, cl);
                if (s[i] == '"') break;
                if (s[i] == '\\') {
                    advance();
                    if (i >= s.size() || (s[i] != '"' && s[i] != '\\')) throw ParseError("unknown escape", line, col);
                }
                text += s[i];
                advance();
            }
            advance();
            // The entry parser reports columns from the first character inside the quotes.
            out.push_back({Token::Kind::String, text, 0, l, cl + 1});
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
            std::string text(1, c);
            advance();
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                text += s[i];
                advance();
            }
            if (text == "-" || text.size() > 18) throw ParseError("bad integer '" + text + "'", l, cl);
            out.push_back({Token::Kind::Int, text, std::stoll(text), l, cl});
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string text;
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
                text += s[i];
                advance();
            }
            const Token::Kind k = text == "true"    ? Token::Kind::True
                                  : text == "false" ? Token::Kind::False
                                                    : Token::Kind::Ident;
            out.push_back({k, text, 0, l, cl});
        } else {
            throw ParseError("unexpected character '" + std::string(1, c) + "'", l, cl);
        }
    }
    out.push_back({Token::Kind::End, "", 0, line, col});
    return out;
}

// A parsed value; arrays hold nested values.
struct Value {
    std::variant<std::int64_t, std::string, bool, std::vector<Value>> v;
    std::size_t line = 0;
    std::size_t column = 0;
};

class DocParser {
   public:
    explicit DocParser(std::vector<Token> tokens) : t_(std::move(tokens)) {}

    std::map<std::string, Value> parse() {
        std::map<std::string, Value> out;
        for (;;) {
            while (peek().kind == Token::Kind::Newline) ++i_;
            if (peek().kind == Token::Kind::End) return out;
            const Token key = next();
            if (key.kind != Token::Kind::Ident) throw ParseError("expected a key", key.line, key.column);
            const Token eq = next();
            if (eq.kind != Token::Kind::Equals) throw ParseError("expected '='", eq.line, eq.column);
            Value v = value();
            if (!out.emplace(key.text, std::move(v)).second)
                throw ParseError("duplicate key '" + key.text + "'", key.line, key.column);
            const Token end = next();
            if (end.kind != Token::Kind::Newline && end.kind != Token::Kind::End)
                throw ParseError("expected end of line", end.line, end.column);
            if (end.kind == Token::Kind::End) return out;
        }
    }

   private:
    const Token& peek() const { return t_[i_]; }
    Token next() { return t_[i_ < t_.size() - 1 ? i_++ : i_]; }

    void skip_newlines() {
        while (peek().kind == Token::Kind::Newline) ++i_;
    }

    Value value() {
        const Token t = next();
        switch (t.kind) {
            case Token::Kind::Int:
                return {t.value, t.line, t.column};
            case Token::Kind::String:
                return {t.text, t.line, t.column};
            case Token::Kind::True:
                return {true, t.line, t.column};
            case Token::Kind::False:
                return {false, t.line, t.column};
            case Token::Kind::LBracket: {
                std::vector<Value> items;
                for (;;) {
                    skip_newlines();
                    if (peek().kind == Token::Kind::RBracket) {
                        ++i_;
                        break;
                    }
                    items.push_back(value());
                    skip_newlines();
                    const Token sep = next();
                    if (sep.kind == Token::Kind::RBracket) break;
                    if (sep.kind != Token::Kind::Comma) throw ParseError("expected ',' or ']'", sep.line, sep.column);
                }
                return {std::move(items), t.line, t.column};
            }
            default:
                throw ParseError("expected a value", t.line, t.column);
        }
    }

    std::vector<Token> t_;
    std::size_t i_ = 0;
};

Value from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return {j.get<std::int64_t>()};
    if (j.is_string()) return {j.get<std::string>()};
    if (j.is_boolean()) return {j.get<bool>()};
    if (j.is_array()) {
        std::vector<Value> items;
        for (const auto& x : j) items.push_back(from_json(x));
        return {std::move(items)};
    }
    if (j.is_null()) throw ParseError("null values are not allowed", 1, 1);
    throw ParseError("unsupported JSON value", 1, 1);
}

std::map<std::string, Value> parse_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("invalid JSON", line, col);
    }
    if (!j.is_object()) throw ParseError("expected a JSON object", 1, 1);
    std::map<std::string, Value> out;
    for (const auto& [key, v] : j.items()) out.emplace(key, from_json(v));
    return out;
}

[[noreturn]] void type_error(const std::string& key, const Value& v, const char* expected) {
    throw ParseError("'" + key + "' must be " + expected, v.line, v.column);
}

std::int64_t get_int(const std::string& key, const Value& v) {
    if (!std::holds_alternative<std::int64_t>(v.v)) type_error(key, v, "an integer");
    return std::get<std::int64_t>(v.v);
}

std::string get_string(const std::string& key, const Value& v) {
    if (!std::holds_alternative<std::string>(v.v)) type_error(key, v, "a string");
    return std::get<std::string>(v.v);
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

SkewTauPoly parse_entry(std::string_view text, const FieldConfig& k, std::size_t line, std::size_t column) {
    return ExprParser(text, k, line, column).parse();
}

PerfectFieldElement parse_scalar(std::string_view text, const FieldConfig& k, std::size_t line, std::size_t column) {
    const SkewTauPoly p = parse_entry(text, k, line, column);
    if (p.degree() > 0) throw ParseError("expected an expression without tau", line, column);
    return p.is_zero() ? PerfectFieldElement::zero(k.fq_ptr()) : p.coefficient(0);
}

InputDocument parse_document(std::string_view text) {
    std::size_t first = 0;
    while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
    const std::map<std::string, Value> kv =
        first < text.size() && text[first] == '{' ? parse_json(text) : DocParser(lex(text)).parse();

    InputDocument doc;
    for (const auto& [key, v] : kv) {
        if (key != "q" && key != "mode" && key != "d" && key != "phi_t" && key != "char" && key != "precision" &&
            key != "precision_cap" && key != "max_n" && key != "check")
            throw ParseError("unknown key '" + key + "'", v.line, v.column);
    }
    auto require = [&](const char* key) -> const Value& {
        auto it = kv.find(key);
        if (it == kv.end()) throw ParseError(std::string("missing key '") + key + "'", 1, 1);
        return it->second;
    };

    const Value& qv = require("q");
    const std::int64_t q = get_int("q", qv);
    if (q < 2 || q > 1 << 16) throw ParseError("q out of range", qv.line, qv.column);
    doc.q = static_cast<std::uint32_t>(q);
    if (auto it = kv.find("mode"); it != kv.end()) {
        const std::string m = get_string("mode", it->second);
        if (m == "rational")
            doc.mode = FieldMode::RationalPerfection;
        else if (m == "finite")
            doc.mode = FieldMode::FiniteField;
        else
            throw ParseError("mode must be \"rational\" or \"finite\"", it->second.line, it->second.column);
    }
    const Value& dv = require("d");
    const std::int64_t d = get_int("d", dv);
    if (d < 1 || d > 64) throw ParseError("d out of range", dv.line, dv.column);
    doc.d = static_cast<int>(d);

    FieldConfig k = [&] {
        try {
            return FieldConfig::make(doc.q, doc.mode);
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(e.what(), qv.line, qv.column);
        }
    }();

    const Value& pv = require("phi_t");
    if (!std::holds_alternative<std::vector<Value>>(pv.v)) type_error("phi_t", pv, "an array of rows");
    const auto& rows = std::get<std::vector<Value>>(pv.v);
    if (static_cast<int>(rows.size()) != doc.d)
        throw ParseError("phi_t has " + std::to_string(rows.size()) + " rows, expected d = " + std::to_string(doc.d),
                         pv.line, pv.column);
    for (const Value& row : rows) {
        if (!std::holds_alternative<std::vector<Value>>(row.v)) type_error("phi_t", row, "an array of rows");
        const auto& cells = std::get<std::vector<Value>>(row.v);
        if (static_cast<int>(cells.size()) != doc.d)
            throw ParseError("row has " + std::to_string(cells.size()) + " entries, expected d = " +
                                 std::to_string(doc.d),
                             row.line, row.column);
        std::vector<std::string> out;
        for (const Value& cell : cells) {
            const std::string text = get_string("phi_t entry", cell);
            out.push_back(parse_entry(text, k, cell.line, cell.column).to_string());
        }
        doc.phi_t.push_back(std::move(out));
    }
    if (auto it = kv.find("char"); it != kv.end()) {
        const std::string text = get_string("char", it->second);
        doc.characteristic = parse_scalar(text, k, it->second.line, it->second.column).to_string();
    }
    auto positive = [&](const char* key) -> std::optional<std::int64_t> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        const std::int64_t v = get_int(key, it->second);
        if (v < 1) throw ParseError(std::string("'") + key + "' must be positive", it->second.line, it->second.column);
        return v;
    };
    doc.precision = positive("precision");
    doc.precision_cap = positive("precision_cap");
    if (auto n = positive("max_n")) doc.max_n = static_cast<int>(*n);
    if (auto it = kv.find("check"); it != kv.end()) {
        if (!std::holds_alternative<bool>(it->second.v)) type_error("check", it->second, "true or false");
        doc.check = std::get<bool>(it->second.v);
    }
    return doc;
}

std::string render_document(const InputDocument& doc) {
    std::ostringstream out;
    out << "q = " << doc.q << "\n";
    out << "mode = " << (doc.mode == FieldMode::FiniteField ? "\"finite\"" : "\"rational\"") << "\n";
    out << "d = " << doc.d << "\n";
    out << "phi_t = [\n";
    for (const auto& row : doc.phi_t) {
        out << "  [";
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? ", " : "") << quote(row[j]);
        out << "],\n";
    }
    out << "]\n";
    if (doc.characteristic) out << "char = " << quote(*doc.characteristic) << "\n";
    if (doc.precision) out << "precision = " << *doc.precision << "\n";
    if (doc.precision_cap) out << "precision_cap = " << *doc.precision_cap << "\n";
    if (doc.max_n) out << "max_n = " << *doc.max_n << "\n";
    if (doc.check) out << "check = true\n";
    return out.str();
}

FieldConfig field_of(const InputDocument& doc) { return FieldConfig::make(doc.q, doc.mode); }

TModule build_module(const InputDocument& doc) {
    const FieldConfig k = field_of(doc);
    TauMatrix phi(doc.d);
    for (int i = 0; i < doc.d; ++i)
        for (int j = 0; j < doc.d; ++j) phi(i, j) = parse_entry(doc.phi_t[i][j], k);
    TModule m{k, phi, PerfectFieldElement::zero(k.fq_ptr())};
    if (doc.characteristic) {
        m.characteristic = parse_scalar(*doc.characteristic, k);
    } else if (k.mode() == FieldMode::RationalPerfection) {
        m.characteristic = PerfectFieldElement::theta(k.fq_ptr(), 1);
    } else {
        // Over F_q the only admissible l(t) is the eigenvalue of D_0.
        bool found = false;
        for (Fq c = 0; c < k.q() && !found; ++c) {
            m.characteristic = PerfectFieldElement::constant(k.fq_ptr(), c);
            try {
                validate(m);
                found = true;
            } catch (const NotATModule&) {
            }
        }
        if (!found) throw NotATModule("no constant l(t) in F_q makes D_0 - l(t) nilpotent");
    }
    return m;
}

AnalysisOptions options_of(const InputDocument& doc) {
    AnalysisOptions o;
    if (doc.precision) o.precision = *doc.precision;
    if (doc.precision_cap) o.precision_cap = *doc.precision_cap;
    o.max_n = doc.max_n;
    o.check = doc.check;
    return o;
}

}  // namespace tmod
