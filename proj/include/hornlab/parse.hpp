#pragma once

// Text formats for theories (.uhs), structures (.fst) and grammars (.cfg).
// LL(1), '#' line comments, LF or CRLF input, LF output. Printing is
// canonical: parse(print(v)) == v.

#include <hornlab/cfg_types.hpp>
#include <hornlab/core.hpp>

#include <cctype>
#include <string>
#include <vector>

namespace hornlab::parse {

class parse_error : public error {
public:
    parse_error(int line, int col, const std::string& what)
        : error(std::to_string(line) + ":" + std::to_string(col) + ": " + what),
          line(line),
          col(col) {}
    int line;
    int col;
};

namespace detail {

struct Token {
    enum Kind { Ident, Number, Punct, End } kind = End;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw parse_error(tok_.line, tok_.col, what);
    }

    Token expect_ident(const std::string& what) {
        if (tok_.kind != Token::Ident) fail("expected " + what);
        return next();
    }

    void expect_punct(const std::string& p) {
        if (tok_.kind != Token::Punct || tok_.text != p)
            fail("expected '" + p + "'");
        advance();
    }

    bool accept_punct(const std::string& p) {
        if (tok_.kind == Token::Punct && tok_.text == p) {
            advance();
            return true;
        }
        return false;
    }

    bool at_ident(const std::string& word) const {
        return tok_.kind == Token::Ident && tok_.text == word;
    }

    bool at_end() const { return tok_.kind == Token::End; }

private:
    void advance() {
        skip_space();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_ = Token{Token::End, "", line_, col_};
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string text;
            while (pos_ < src_.size()) {
                char d = src_[pos_];
                if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '#') {
                    // '#' continues an element tag like a#1 only when glued
                    // to the identifier and followed by a digit.
                    if (d == '#') {
                        if (pos_ + 1 >= src_.size() ||
                            !std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))
                            break;
                    }
                    text += d;
                    take();
                } else {
                    break;
                }
            }
            tok_ = Token{Token::Ident, text, tok_.line, tok_.col};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string text;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                text += src_[pos_];
                take();
            }
            tok_ = Token{Token::Number, text, tok_.line, tok_.col};
            return;
        }
        if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            take();
            take();
            tok_ = Token{Token::Punct, "->", tok_.line, tok_.col};
            return;
        }
        static const std::string singles = "{}(),;/|=";
        if (singles.find(c) != std::string::npos) {
            take();
            tok_ = Token{Token::Punct, std::string(1, c), tok_.line, tok_.col};
            return;
        }
        throw parse_error(line_, col_, std::string("unexpected character '") + c + "'");
    }

    void skip_space() {
        for (;;) {
            while (pos_ < src_.size() &&
                   (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\r' ||
                    src_[pos_] == '\n'))
                take();
            if (pos_ < src_.size() && src_[pos_] == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') take();
                continue;
            }
            break;
        }
    }

    void take() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

inline Atom parse_atom(Lexer& lex, const Signature& sig) {
    Token name = lex.expect_ident("relation symbol");
    if (!sig.has(name.text))
        throw parse_error(name.line, name.col, "unknown relation symbol '" + name.text + "'");
    lex.expect_punct("(");
    Atom a{name.text, {}};
    for (;;) {
        Token arg = lex.expect_ident("argument");
        a.args.push_back(arg.text);
        if (lex.accept_punct(")")) break;
        lex.expect_punct(",");
    }
    if (static_cast<int>(a.args.size()) != sig.arity(name.text))
        throw parse_error(name.line, name.col,
                          "arity mismatch: '" + name.text + "' takes " +
                              std::to_string(sig.arity(name.text)) + " arguments, got " +
                              std::to_string(a.args.size()));
    return a;
}

// Atom list up to '->'; rejects equality atoms with a dedicated message.
inline std::vector<Atom> parse_premise(Lexer& lex, const Signature& sig) {
    std::vector<Atom> atoms;
    if (lex.accept_punct("->")) return atoms;
    for (;;) {
        Token name = lex.expect_ident("atom");
        if (lex.peek().kind == Token::Punct && lex.peek().text == "=")
            throw parse_error(name.line, name.col,
                              "equality atoms are not permitted in this language");
        if (!sig.has(name.text))
            throw parse_error(name.line, name.col,
                              "unknown relation symbol '" + name.text + "'");
        lex.expect_punct("(");
        Atom a{name.text, {}};
        for (;;) {
            Token arg = lex.expect_ident("argument");
            a.args.push_back(arg.text);
            if (lex.accept_punct(")")) break;
            lex.expect_punct(",");
        }
        if (static_cast<int>(a.args.size()) != sig.arity(name.text))
            throw parse_error(name.line, name.col,
                              "arity mismatch: '" + name.text + "' takes " +
                                  std::to_string(sig.arity(name.text)) + " arguments, got " +
                                  std::to_string(a.args.size()));
        atoms.push_back(std::move(a));
        if (lex.accept_punct("->")) break;
        lex.expect_punct(",");
    }
    return atoms;
}

}  // namespace detail

inline UniversalSentence parse_theory(const std::string& text) {
    detail::Lexer lex(text);
    UniversalSentence out;
    if (!lex.at_ident("signature")) lex.fail("expected 'signature'");
    lex.next();
    lex.expect_punct("{");
    if (!lex.accept_punct("}")) {
        for (;;) {
            if (lex.peek().kind == detail::Token::Punct && lex.peek().text == "=")
                lex.fail("'=' is not a legal relation symbol: equality atoms are not permitted");
            detail::Token name = lex.expect_ident("relation symbol");
            lex.expect_punct("/");
            detail::Token num = lex.next();
            if (num.kind != detail::Token::Number)
                throw parse_error(num.line, num.col, "expected arity");
            int arity = std::stoi(num.text);
            if (arity < 1) throw parse_error(num.line, num.col, "arity must be >= 1");
            if (out.signature.has(name.text))
                throw parse_error(name.line, name.col,
                                  "duplicate relation symbol '" + name.text + "'");
            out.signature.add(name.text, arity);
            if (lex.accept_punct("}")) break;
            lex.expect_punct(";");
            if (lex.accept_punct("}")) break;
        }
    }
    while (!lex.at_end()) {
        if (!lex.at_ident("clause")) lex.fail("expected 'clause'");
        lex.next();
        std::vector<Atom> negatives = detail::parse_premise(lex, out.signature);
        std::vector<Atom> positives;
        if (lex.at_ident("false")) {
            lex.next();
        } else {
            for (;;) {
                positives.push_back(detail::parse_atom(lex, out.signature));
                if (!lex.accept_punct("|")) break;
            }
        }
        lex.expect_punct(";");
        out.clauses.push_back(GeneralClause::make(std::move(negatives), std::move(positives)));
    }
    return out;
}

inline FinStructure parse_structure(const std::string& text, const Signature& sig) {
    detail::Lexer lex(text);
    if (!lex.at_ident("domain")) lex.fail("expected 'domain'");
    lex.next();
    lex.expect_punct("{");
    std::vector<std::string> dom;
    if (!lex.accept_punct("}")) {
        for (;;) {
            detail::Token e = lex.expect_ident("element name");
            dom.push_back(e.text);
            if (lex.accept_punct("}")) break;
            lex.expect_punct(",");
        }
    }
    FinStructure s = FinStructure::make(sig, std::move(dom));
    while (!lex.at_end()) {
        detail::Token name = lex.expect_ident("relation symbol");
        if (!sig.has(name.text))
            throw parse_error(name.line, name.col,
                              "unknown relation symbol '" + name.text + "'");
        lex.expect_punct("(");
        Tuple t;
        for (;;) {
            detail::Token arg = lex.expect_ident("element name");
            if (!s.has_element(arg.text))
                throw parse_error(arg.line, arg.col, "unknown element '" + arg.text + "'");
            t.push_back(arg.text);
            if (lex.accept_punct(")")) break;
            lex.expect_punct(",");
        }
        if (static_cast<int>(t.size()) != sig.arity(name.text))
            throw parse_error(name.line, name.col,
                              "arity mismatch: '" + name.text + "' takes " +
                                  std::to_string(sig.arity(name.text)) + " arguments, got " +
                                  std::to_string(t.size()));
        lex.expect_punct(";");
        s.relations[name.text].insert(std::move(t));
    }
    return s;
}

inline cfg::Grammar parse_grammar(const std::string& text) {
    detail::Lexer lex(text);
    cfg::Grammar g;
    if (!lex.at_ident("start")) lex.fail("expected 'start'");
    lex.next();
    g.start = lex.expect_ident("start symbol").text;
    lex.expect_punct(";");
    if (!lex.at_ident("terminals")) lex.fail("expected 'terminals'");
    lex.next();
    for (;;) {
        detail::Token t = lex.expect_ident("terminal symbol");
        for (const auto& prev : g.terminals)
            if (prev == t.text)
                throw parse_error(t.line, t.col, "duplicate terminal '" + t.text + "'");
        g.terminals.push_back(t.text);
        if (lex.accept_punct(";")) break;
        lex.expect_punct(",");
    }
    while (!lex.at_end()) {
        detail::Token lhs = lex.expect_ident("nonterminal");
        for (const auto& t : g.terminals)
            if (t == lhs.text)
                throw parse_error(lhs.line, lhs.col,
                                  "left-hand side '" + lhs.text + "' is a terminal");
        lex.expect_punct("->");
        std::vector<std::string> rhs;
        while (lex.peek().kind == detail::Token::Ident) rhs.push_back(lex.next().text);
        if (rhs.empty())
            lex.fail("empty right-hand side: epsilon rules are not permitted");
        lex.expect_punct(";");
        g.productions.emplace_back(lhs.text, std::move(rhs));
    }
    g.validate();
    return g;
}

inline std::string print_atom(const Atom& a) { return a.str(); }

inline std::string print_clause_body(const GeneralClause& c) {
    std::string out;
    for (std::size_t i = 0; i < c.negatives.size(); ++i) {
        if (i) out += ", ";
        out += print_atom(c.negatives[i]);
    }
    out += c.negatives.empty() ? "-> " : " -> ";
    if (c.positives.empty()) {
        out += "false";
    } else {
        for (std::size_t i = 0; i < c.positives.size(); ++i) {
            if (i) out += " | ";
            out += print_atom(c.positives[i]);
        }
    }
    return out;
}

inline std::string print_theory(const UniversalSentence& phi) {
    std::string out = "signature { ";
    bool first = true;
    for (const auto& [name, arity] : phi.signature.symbols()) {
        if (!first) out += "; ";
        out += name + "/" + std::to_string(arity);
        first = false;
    }
    if (first) out += "}";
    out += first ? "\n" : " }\n";
    for (const auto& c : phi.clauses) out += "clause " + print_clause_body(c) + ";\n";
    return out;
}

inline std::string print_theory(const HornSentence& phi) {
    return print_theory(phi.to_universal());
}

inline std::string print_structure(const FinStructure& s) {
    std::string out = "domain { ";
    for (std::size_t i = 0; i < s.domain.size(); ++i) {
        if (i) out += ", ";
        out += s.domain[i];
    }
    out += s.domain.empty() ? "}\n" : " }\n";
    for (const auto& [sym, tuples] : s.relations)
        for (const auto& t : tuples) {
            out += sym + "(";
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (i) out += ",";
                out += t[i];
            }
            out += ");\n";
        }
    return out;
}

inline std::string print_grammar(const cfg::Grammar& g) {
    std::string out = "start " + g.start + ";\n";
    out += "terminals ";
    for (std::size_t i = 0; i < g.terminals.size(); ++i) {
        if (i) out += ", ";
        out += g.terminals[i];
    }
    out += ";\n";
    for (const auto& [lhs, rhs] : g.productions) {
        out += lhs + " ->";
        for (const auto& s : rhs) out += " " + s;
        out += ";\n";
    }
    return out;
}

// Single clause in theory syntax (no 'clause' keyword, no ';'), used by the
// certificate formats.
inline GeneralClause parse_clause_fragment(const std::string& text, const Signature& sig) {
    detail::Lexer lex(text);
    std::vector<Atom> negatives = detail::parse_premise(lex, sig);
    std::vector<Atom> positives;
    if (lex.at_ident("false")) {
        lex.next();
    } else {
        for (;;) {
            positives.push_back(detail::parse_atom(lex, sig));
            if (!lex.accept_punct("|")) break;
        }
    }
    if (!lex.at_end()) lex.fail("trailing input after clause");
    return GeneralClause::make(std::move(negatives), std::move(positives));
}

}  // namespace hornlab::parse
