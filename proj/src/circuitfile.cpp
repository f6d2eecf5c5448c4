// Copyright 2026 The somdms Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "somdms/circuitfile.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>

#include "somdms/format.hpp"

namespace somdms {

namespace {

enum class Tok { Word, LParen, RParen, Comma, Equals, Arrow };

struct Token {
    Tok type;
    std::string text;
    int column;  // 1-based
};

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '+' || c == '-';
}

std::vector<Token> lex(std::string_view line, int line_no) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = line.size();
    while (i < n) {
        const char c = line[i];
        const int col = static_cast<int>(i) + 1;
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
        } else if (c == '-' && i + 1 < n && line[i + 1] == '>') {
            out.push_back({Tok::Arrow, "->", col});
            i += 2;
        } else if (c == '(' || c == ')' || c == ',' || c == '=') {
            const Tok t = c == '(' ? Tok::LParen : c == ')' ? Tok::RParen : c == ',' ? Tok::Comma : Tok::Equals;
            out.push_back({t, std::string(1, c), col});
            ++i;
        } else if (is_word_char(c)) {
            std::size_t j = i;
            while (j < n && is_word_char(line[j]) && !(line[j] == '-' && j + 1 < n && line[j + 1] == '>')) ++j;
            out.push_back({Tok::Word, std::string(line.substr(i, j - i)), col});
            i = j;
        } else {
            throw ParseError(line_no, col, std::string(1, c), "unexpected character");
        }
    }
    return out;
}

bool valid_path_name(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
    });
}

std::optional<double> to_number(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

// One argument of an element: its tokens and where it starts.
struct Arg {
    std::vector<Token> tokens;
    int column;
};

class LineParser {
   public:
    LineParser(std::vector<Token> tokens, int line_no, int end_column)
        : t_(std::move(tokens)), line_(line_no), end_column_(end_column) {}

    bool done() const { return pos_ == t_.size(); }
    const Token* peek() const { return done() ? nullptr : &t_[pos_]; }

    [[noreturn]] void fail(const Token& tok, const std::string& message) const {
        throw ParseError(line_, tok.column, tok.text, message);
    }
    [[noreturn]] void fail_at_end(const std::string& message) const {
        throw ParseError(line_, end_column_, "", message);
    }

    const Token& expect(Tok type, const char* what) {
        if (done()) fail_at_end(std::string("expected ") + what);
        const Token& tok = t_[pos_];
        if (tok.type != type) fail(tok, std::string("expected ") + what);
        ++pos_;
        return tok;
    }

    bool accept_word(const char* word) {
        if (!done() && t_[pos_].type == Tok::Word && t_[pos_].text == word) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect_end() {
        if (!done()) fail(t_[pos_], "unexpected token");
    }

    int line() const { return line_; }
    const Token& first() const { return t_.front(); }
    const Token& last() const { return t_.back(); }

    // Arguments between parentheses, split on top-level commas.
    std::vector<Arg> arguments() {
        std::vector<Arg> args;
        if (done() || t_[pos_].type != Tok::LParen) return args;
        const Token& open = t_[pos_++];
        int depth = 0;
        Arg current{{}, open.column + 1};
        while (true) {
            if (done()) fail(open, "unclosed '('");
            const Token& tok = t_[pos_++];
            if (tok.type == Tok::LParen) ++depth;
            if (tok.type == Tok::RParen) {
                if (depth == 0) break;
                --depth;
            }
            if (tok.type == Tok::Comma && depth == 0) {
                if (current.tokens.empty()) fail(tok, "empty argument");
                args.push_back(std::move(current));
                current = Arg{{}, tok.column + 1};
                continue;
            }
            if (current.tokens.empty()) current.column = tok.column;
            current.tokens.push_back(tok);
        }
        if (!current.tokens.empty()) {
            args.push_back(std::move(current));
        } else if (!args.empty()) {
            fail(t_[pos_ - 1], "empty argument");
        }
        return args;
    }

    double real(const Arg& a) const {
        const auto& tk = a.tokens;
        if (tk.size() == 1 && tk[0].type == Tok::Word) {
            if (auto v = to_number(tk[0].text)) return *v;
            fail(tk[0], "expected a number");
        }
        if (tk.size() == 4 && tk[0].type == Tok::Word && tk[0].text == "sqrt" && tk[1].type == Tok::LParen &&
            tk[2].type == Tok::Word && tk[3].type == Tok::RParen) {
            const auto v = to_number(tk[2].text);
            if (!v || *v < 0.0) fail(tk[2], "sqrt needs a non-negative number");
            return std::sqrt(*v);
        }
        fail(tk[0], "expected a number or sqrt(<number>)");
    }

    double angle(const Arg& a) const {
        const auto& tk = a.tokens;
        if (tk.size() == 1 && tk[0].type == Tok::Word && tk[0].text.size() > 3 &&
            tk[0].text.ends_with("deg")) {
            const auto v = to_number(std::string_view(tk[0].text).substr(0, tk[0].text.size() - 3));
            if (!v) fail(tk[0], "expected an angle");
            return degrees_to_radians(*v);
        }
        return real(a);
    }

    const Token& word(const Arg& a) const {
        if (a.tokens.size() != 1 || a.tokens[0].type != Tok::Word) fail(a.tokens[0], "expected a single word");
        return a.tokens[0];
    }

   private:
    std::vector<Token> t_;
    std::size_t pos_ = 0;
    int line_;
    int end_column_;
};

class DocumentParser {
   public:
    explicit DocumentParser(CircuitDocument& doc) : doc_(doc) {}

    void statement(LineParser& p) {
        const Token& keyword = p.expect(Tok::Word, "a statement keyword");
        if (keyword.text == "version") {
            if (have_version_) p.fail(keyword, "duplicate version header");
            const Token& v = p.expect(Tok::Word, "a version number");
            if (v.text != "1") p.fail(v, "unsupported version");
            p.expect_end();
            have_version_ = true;
            record(p, StatementKind::Version);
            return;
        }
        if (!have_version_) p.fail(keyword, "missing 'version 1' header");
        if (keyword.text == "path") {
            const Token& name = path_name(p);
            if (circuit().has_path(name.text)) p.fail(name, "path already declared");
            p.expect_end();
            circuit().declare_path(name.text);
            record(p, StatementKind::Path);
        } else if (keyword.text == "source") {
            source(p);
            record(p, StatementKind::Source);
        } else if (keyword.text == "element") {
            element(p);
            record(p, StatementKind::Element);
        } else if (keyword.text == "sink") {
            const Token& name = declared_path(p);
            if (std::find(circuit().sinks.begin(), circuit().sinks.end(), name.text) != circuit().sinks.end()) {
                p.fail(name, "duplicate sink");
            }
            p.expect_end();
            circuit().sinks.push_back(name.text);
            record(p, StatementKind::Sink);
        } else {
            p.fail(keyword, "unknown statement");
        }
    }

    void finish(int last_line) {
        if (!have_version_) throw ParseError(last_line, 1, "", "missing 'version 1' header");
    }

   private:
    Circuit& circuit() { return doc_.circuit; }

    void record(const LineParser& p, StatementKind kind) {
        const Token& last = p.last();
        doc_.statements.push_back(
            {kind, p.line(), p.first().column, last.column + static_cast<int>(last.text.size()) - 1});
    }

    const Token& path_name(LineParser& p) {
        const Token& name = p.expect(Tok::Word, "a path name");
        if (!valid_path_name(name.text)) p.fail(name, "invalid path name");
        return name;
    }

    const Token& declared_path(LineParser& p) {
        const Token& name = path_name(p);
        if (!circuit().has_path(name.text)) p.fail(name, "undeclared path");
        return name;
    }

    void source(LineParser& p) {
        const Token& name = path_name(p);
        Source s{name.text, 1.0, Polarization::H, Mode::h};
        bool seen_weight = false, seen_pol = false, seen_mode = false;
        while (!p.done()) {
            const Token& key = p.expect(Tok::Word, "a key");
            p.expect(Tok::Equals, "'='");
            const Token& value = p.expect(Tok::Word, "a value");
            bool* seen = nullptr;
            if (key.text == "weight") {
                seen = &seen_weight;
                const auto v = to_number(value.text);
                if (!v || *v < 0.0 || *v > 1.0) p.fail(value, "weight must be a number in [0, 1]");
                s.weight = *v;
            } else if (key.text == "pol") {
                seen = &seen_pol;
                if (value.text != "H" && value.text != "V") p.fail(value, "pol must be H or V");
                s.pol = value.text == "H" ? Polarization::H : Polarization::V;
            } else if (key.text == "mode") {
                seen = &seen_mode;
                if (value.text != "h" && value.text != "v") p.fail(value, "mode must be h or v");
                s.mode = value.text == "h" ? Mode::h : Mode::v;
            } else {
                p.fail(key, "unknown source key");
            }
            if (*seen) p.fail(key, "duplicate key");
            *seen = true;
        }
        if (!seen_pol) p.fail_at_end("source needs pol=<H|V>");
        if (!seen_mode) p.fail_at_end("source needs mode=<h|v>");
        circuit().declare_path(s.path);
        circuit().sources.push_back(s);
    }

    void element(LineParser& p) {
        const Token& kind = p.expect(Tok::Word, "an element kind");
        const std::vector<Arg> args = p.arguments();
        const auto arity = [&](std::size_t n) {
            if (args.size() != n) {
                p.fail(kind, kind.text + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s") + ", got " +
                                 std::to_string(args.size()));
            }
        };

        ElementSpec spec;
        if (kind.text == "HWP") {
            arity(1);
            spec = HalfWavePlate{p.angle(args[0])};
        } else if (kind.text == "DP") {
            arity(1);
            spec = DovePrism{p.angle(args[0])};
        } else if (kind.text == "PHASE") {
            arity(1);
            spec = PhaseShift{p.angle(args[0])};
        } else if (kind.text == "PBS") {
            arity(0);
            spec = PolarizingBeamSplitter{};
        } else if (kind.text == "BS") {
            arity(2);
            const double r = p.real(args[0]);
            const double t = p.real(args[1]);
            if (r < 0.0 || t < 0.0 || r * r + t * t > 1.0 + 1e-12) {
                p.fail(args[0].tokens[0], "BS needs r, t >= 0 and r^2 + t^2 <= 1");
            }
            spec = BeamSplitter{r, t};
        } else if (kind.text == "NF") {
            arity(1);
            const double t = p.real(args[0]);
            if (t < 0.0 || t > 1.0) p.fail(args[0].tokens[0], "NF transmission must lie in [0, 1]");
            spec = NeutralFilter{t};
        } else if (kind.text == "MASK") {
            arity(1);
            const Token& m = p.word(args[0]);
            if (m.text != "h" && m.text != "v") p.fail(m, "MASK takes h or v");
            spec = ModeMask{m.text == "h" ? Mode::h : Mode::v};
        } else if (kind.text == "POLPREP") {
            arity(1);
            const Token& m = p.word(args[0]);
            if (m.text != "H" && m.text != "V") p.fail(m, "POLPREP takes H or V");
            spec = PolarizationPrep{m.text == "H" ? Polarization::H : Polarization::V};
        } else if (kind.text == "BLOCK") {
            arity(0);
            spec = Block{};
        } else if (kind.text == "MIRROR") {
            arity(0);
            spec = Mirror{};
        } else {
            p.fail(kind, "unknown element kind");
        }

        if (!p.accept_word("on")) {
            if (p.done()) p.fail_at_end("expected 'on <path>'");
            p.fail(*p.peek(), "expected 'on <path>'");
        }
        const Token& on = declared_path(p);
        Element e{spec, on.text, {}};
        if (p.accept_word("routes")) {
            const Token& from = path_name(p);
            if (from.text != on.text) p.fail(from, "routes must start from the element's path");
            p.expect(Tok::Arrow, "'->'");
            const Token& t = path_name(p);
            p.expect(Tok::Comma, "','");
            const Token& r = path_name(p);
            if (t.text == r.text) p.fail(r, "both ports routed to one path");
            if (!is_splitter(spec)) p.fail(from, kind.text + " does not route");
            e.routes = Routes{t.text, r.text};
        } else if (is_splitter(spec)) {
            if (p.done()) p.fail_at_end(kind.text + " needs 'routes <path>-><path>,<path>'");
        }
        p.expect_end();
        if (e.routes) {
            circuit().declare_path(e.routes->transmitted);
            circuit().declare_path(e.routes->reflected);
        }
        circuit().elements.push_back(std::move(e));
    }

    CircuitDocument& doc_;
    bool have_version_ = false;
};

std::string angle_text(double radians) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6fdeg", radians_to_degrees(radians));
    return buf;
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string args_text(const ElementSpec& spec) {
    return std::visit(overloaded{
                          [](const HalfWavePlate& e) { return angle_text(e.theta); },
                          [](const DovePrism& e) { return angle_text(e.alpha); },
                          [](const PhaseShift& e) { return angle_text(e.phi); },
                          [](const BeamSplitter& e) { return format_real(e.r) + ", " + format_real(e.t); },
                          [](const NeutralFilter& e) { return format_real(e.t); },
                          [](const ModeMask& e) { return std::string(e.mode == Mode::h ? "h" : "v"); },
                          [](const PolarizationPrep& e) { return std::string(e.pol == Polarization::H ? "H" : "V"); },
                          [](const auto&) { return std::string(); },
                      },
                      spec);
}

}  // namespace

ParseError::ParseError(int line, int column, std::string token, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message +
                         (token.empty() ? "" : " (at '" + token + "')")),
      line_(line),
      column_(column),
      token_(std::move(token)),
      message_(message) {}

double degrees_to_radians(double degrees) { return degrees * (M_PI / 180.0); }
double radians_to_degrees(double radians) { return radians / (M_PI / 180.0); }

CircuitDocument parse_document(std::string_view text, std::string file_name) {
    CircuitDocument doc;
    doc.file_name = std::move(file_name);
    DocumentParser parser(doc);
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string_view line = text.substr(start, end - start);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        std::vector<Token> tokens = lex(line, line_no);
        if (!tokens.empty()) {
            LineParser p(std::move(tokens), line_no, static_cast<int>(line.size()) + 1);
            parser.statement(p);
        }
        if (end == text.size()) break;
        start = end + 1;
    }
    parser.finish(line_no);
    return doc;
}

Circuit parse_circuit(std::string_view text) { return parse_document(text).circuit; }

std::string serialize_circuit(const Circuit& c) {
    std::string out = "version 1\n";
    for (const std::string& p : c.paths) out += "path " + p + "\n";
    for (const Source& s : c.sources) {
        out += "source " + s.path + " weight=" + format_real(s.weight) +
               " pol=" + (s.pol == Polarization::H ? "H" : "V") + " mode=" + (s.mode == Mode::h ? "h" : "v") + "\n";
    }
    for (const Element& e : c.elements) {
        out += "element " + kind_name(e.spec) + "(" + args_text(e.spec) + ") on " + e.path;
        if (e.routes) out += " routes " + e.path + "->" + e.routes->transmitted + "," + e.routes->reflected;
        out += "\n";
    }
    for (const std::string& s : c.sinks) out += "sink " + s + "\n";
    return out;
}

}  // namespace somdms
