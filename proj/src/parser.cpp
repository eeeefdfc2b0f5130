#include <cctype>
#include <charconv>
#include <set>

#include "imx/error.hpp"
#include "imx/knowledge_base.hpp"

namespace imx {

std::vector<SymbolId> KnowledgeBase::goals() const {
    std::vector<SymbolId> out;
    for (auto id : vocabulary->ids())
        if (vocab()[id].goal) out.push_back(id);
    return out;
}

namespace {

enum class Tok {
    Ident, Int, LBrace, RBrace, LParen, RParen, LBracket, RBracket, Colon, Comma, Dot, DotDot,
    Not, And, Or, Implies, Iff, Eq, Ne, Lt, Le, Gt, Ge, End
};

struct Token {
    Tok kind = Tok::End;
    std::string_view text;
    SourceSpan span;
};

const char* describe(Tok t) {
    switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Colon: return "':'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::DotDot: return "'..'";
    case Tok::Not: return "'~'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Implies: return "'=>'";
    case Tok::Iff: return "'<=>'";
    case Tok::Eq: return "'='";
    case Tok::Ne: return "'!='";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Gt: return "'>'";
    case Tok::Ge: return "'>='";
    case Tok::End: return "end of input";
    }
    return "?";
}

const std::set<std::string_view> kKeywords = {"vocabulary", "theory", "environment", "solution", "env",  "dec",
                                              "goal",       "define", "Bool",        "Int",      "true", "false"};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t;
            t.span = here();
            if (pos_ >= text_.size()) {
                t.kind = Tok::End;
                out.push_back(t);
                return out;
            }
            const char c = text_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t end = pos_;
                while (end < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
                    ++end;
                t.kind = Tok::Ident;
                take(t, end - pos_);
            } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                       (c == '-' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
                std::size_t end = pos_ + 1;
                while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
                t.kind = Tok::Int;
                take(t, end - pos_);
            } else if (match("<=>")) {
                t.kind = Tok::Iff;
                take(t, 3);
            } else if (match("=>")) {
                t.kind = Tok::Implies;
                take(t, 2);
            } else if (match("!=")) {
                t.kind = Tok::Ne;
                take(t, 2);
            } else if (match("<=")) {
                t.kind = Tok::Le;
                take(t, 2);
            } else if (match(">=")) {
                t.kind = Tok::Ge;
                take(t, 2);
            } else if (match("..")) {
                t.kind = Tok::DotDot;
                take(t, 2);
            } else {
                switch (c) {
                case '{': t.kind = Tok::LBrace; break;
                case '}': t.kind = Tok::RBrace; break;
                case '(': t.kind = Tok::LParen; break;
                case ')': t.kind = Tok::RParen; break;
                case '[': t.kind = Tok::LBracket; break;
                case ']': t.kind = Tok::RBracket; break;
                case ':': t.kind = Tok::Colon; break;
                case ',': t.kind = Tok::Comma; break;
                case '.': t.kind = Tok::Dot; break;
                case '~': t.kind = Tok::Not; break;
                case '&': t.kind = Tok::And; break;
                case '|': t.kind = Tok::Or; break;
                case '=': t.kind = Tok::Eq; break;
                case '<': t.kind = Tok::Lt; break;
                case '>': t.kind = Tok::Gt; break;
                default: {
                    auto span = here();
                    span.end = span.begin + 1;
                    throw ParseError(std::string("unexpected character '") + c + "'", span);
                }
                }
                take(t, 1);
            }
            out.push_back(t);
        }
    }

private:
    bool match(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

    SourceSpan here() const { return {line_, pos_ - line_start_ + 1, pos_, pos_}; }

    void take(Token& t, std::size_t n) {
        t.text = text_.substr(pos_, n);
        pos_ += n;
        t.span.end = pos_;
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '\n') {
                ++pos_;
                ++line_;
                line_start_ = pos_;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos_;
            } else if (match("//")) {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t line_start_ = 0;
};

class KbParser {
public:
    explicit KbParser(std::string_view text) : tokens_(Lexer(text).run()) {}

    KnowledgeBase run() {
        KnowledgeBase kb;
        kb.vocabulary = std::make_shared<const Vocabulary>(parse_vocabulary());
        vocab_ = kb.vocabulary.get();
        expect_keyword("theory");
        expect_keyword("environment");
        kb.tenv = parse_theory(true);
        expect_keyword("theory");
        expect_keyword("solution");
        kb.tsol = parse_theory(false);
        expect(Tok::End);
        return kb;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const std::string& msg, const Token& at) const { throw ParseError(msg, at.span); }

    const Token& expect(Tok kind) {
        if (peek().kind != kind)
            fail(std::string("expected ") + describe(kind) + ", found " + found(peek()), peek());
        return advance();
    }

    static std::string found(const Token& t) {
        if (t.kind == Tok::End) return "end of input";
        return "'" + std::string(t.text) + "'";
    }

    bool is_keyword(std::string_view kw) const { return peek().kind == Tok::Ident && peek().text == kw; }

    void expect_keyword(std::string_view kw) {
        if (!is_keyword(kw)) fail("expected '" + std::string(kw) + "', found " + found(peek()), peek());
        advance();
    }

    std::string expect_name(const char* what) {
        const auto& t = expect(Tok::Ident);
        if (kKeywords.count(t.text)) fail(std::string("reserved word '") + std::string(t.text) + "' used as " + what, t);
        return std::string(t.text);
    }

    long long expect_int() {
        const auto& t = expect(Tok::Int);
        long long n = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), n);
        if (ec != std::errc{}) fail("integer out of range: " + std::string(t.text), t);
        return n;
    }

    Vocabulary parse_vocabulary() {
        expect_keyword("vocabulary");
        expect(Tok::LBrace);
        std::vector<SymbolDecl> decls;
        std::set<std::string> names;
        while (peek().kind != Tok::RBrace) {
            SymbolDecl d;
            if (is_keyword("env")) {
                d.kind = SymbolKind::Environmental;
            } else if (is_keyword("dec")) {
                d.kind = SymbolKind::Decision;
            } else {
                fail("expected 'env' or 'dec', found " + found(peek()), peek());
            }
            advance();
            const Token name_tok = peek();
            d.name = expect_name("symbol name");
            if (!names.insert(d.name).second) fail("duplicate symbol '" + d.name + "'", name_tok);
            expect(Tok::Colon);
            d.domain = parse_domain();
            if (is_keyword("goal")) {
                advance();
                d.goal = true;
            }
            decls.push_back(std::move(d));
        }
        expect(Tok::RBrace);
        return Vocabulary(std::move(decls));
    }

    Domain parse_domain() {
        const Token start = peek();
        if (is_keyword("Bool")) {
            advance();
            return Domain::boolean();
        }
        if (is_keyword("Int")) {
            advance();
            expect(Tok::LBracket);
            const long long lo = expect_int();
            expect(Tok::DotDot);
            const long long hi = expect_int();
            expect(Tok::RBracket);
            if (lo > hi) fail("empty integer range", start);
            return Domain::int_range(lo, hi);
        }
        if (peek().kind == Tok::LBrace) {
            advance();
            std::vector<std::string> names;
            std::set<std::string> seen;
            do {
                const Token t = peek();
                names.push_back(expect_name("enumeration value"));
                if (!seen.insert(names.back()).second) fail("duplicate enumeration value '" + names.back() + "'", t);
            } while (peek().kind == Tok::Comma && (advance(), true));
            expect(Tok::RBrace);
            return Domain::enumeration(std::move(names));
        }
        fail("expected a domain (Bool, {...} or Int[lo..hi]), found " + found(peek()), peek());
    }

    Theory parse_theory(bool environment) {
        in_environment_ = environment;
        expect(Tok::LBrace);
        Theory theory;
        while (peek().kind != Tok::RBrace) {
            Sentence s;
            if (is_keyword("define")) {
                const Token def_tok = advance();
                s.is_definition = true;
                s.formula = parse_formula();
                const auto& f = s.formula;
                if (f.kind() != Formula::Kind::Iff || f.children()[0].kind() != Formula::Kind::Atom)
                    fail("a definition must have the form 'atom <=> definiens'", def_tok);
                s.defined = f.children()[0].symbol();
            } else {
                s.formula = parse_formula();
            }
            expect(Tok::Dot);
            theory.sentences.push_back(std::move(s));
        }
        expect(Tok::RBrace);
        return theory;
    }

    Formula parse_formula() {
        Formula lhs = parse_implies();
        while (peek().kind == Tok::Iff) {
            advance();
            lhs = Formula::iff(std::move(lhs), parse_implies());
        }
        return lhs;
    }

    Formula parse_implies() {
        Formula lhs = parse_or();
        if (peek().kind == Tok::Implies) {
            advance();
            return Formula::implies(std::move(lhs), parse_implies());
        }
        return lhs;
    }

    Formula parse_or() {
        std::vector<Formula> parts{parse_and()};
        while (peek().kind == Tok::Or) {
            advance();
            parts.push_back(parse_and());
        }
        return parts.size() == 1 ? std::move(parts.front()) : Formula::disjunction(std::move(parts));
    }

    Formula parse_and() {
        std::vector<Formula> parts{parse_unary()};
        while (peek().kind == Tok::And) {
            advance();
            parts.push_back(parse_unary());
        }
        return parts.size() == 1 ? std::move(parts.front()) : Formula::conjunction(std::move(parts));
    }

    Formula parse_unary() {
        if (peek().kind == Tok::Not) {
            advance();
            return Formula::negation(parse_unary());
        }
        return parse_primary();
    }

    static std::optional<CompareOp> compare_op(Tok t) {
        switch (t) {
        case Tok::Eq: return CompareOp::Eq;
        case Tok::Ne: return CompareOp::Ne;
        case Tok::Lt: return CompareOp::Lt;
        case Tok::Le: return CompareOp::Le;
        case Tok::Gt: return CompareOp::Gt;
        case Tok::Ge: return CompareOp::Ge;
        default: return std::nullopt;
        }
    }

    Formula parse_primary() {
        if (peek().kind == Tok::LParen) {
            advance();
            Formula f = parse_formula();
            expect(Tok::RParen);
            return f;
        }
        if (is_keyword("true") || is_keyword("false")) {
            const bool v = advance().text == "true";
            return Formula::constant(v);
        }
        const Token name_tok = expect(Tok::Ident);
        const auto id = vocab_->find(name_tok.text);
        if (!id) fail("undeclared symbol '" + std::string(name_tok.text) + "'", name_tok);
        const auto& decl = (*vocab_)[*id];
        if (in_environment_ && decl.kind == SymbolKind::Decision)
            fail("decision symbol '" + decl.name + "' in the environment theory", name_tok);

        const auto op = compare_op(peek().kind);
        if (!op) {
            if (decl.domain.type() != Domain::Type::Bool)
                fail("symbol '" + decl.name + "' is not Boolean; compare it against a value", name_tok);
            return Formula::boolean_atom(*id);
        }
        const Token op_tok = advance();
        if (decl.domain.type() != Domain::Type::IntRange && *op != CompareOp::Eq && *op != CompareOp::Ne)
            fail("ordering comparison on non-integer symbol '" + decl.name + "'", op_tok);
        const Token lit = peek();
        if (lit.kind != Tok::Ident && lit.kind != Tok::Int)
            fail("expected a value after " + found(op_tok) + ", found " + found(lit), lit);
        advance();
        const auto v = decl.domain.parse(lit.text);
        if (!v)
            fail("value '" + std::string(lit.text) + "' is not in the domain " + decl.domain.to_string() +
                     " of '" + decl.name + "'",
                 lit);
        return Formula::atom(*id, *op, *v);
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    const Vocabulary* vocab_ = nullptr;
    bool in_environment_ = false;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

KnowledgeBase parse_kb(std::string_view text) { return KbParser(text).run(); }

PartialStructure parse_structure(std::string_view text, const VocabularyPtr& vocab) {
    PartialStructure s(vocab);
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        ++line_no;
        const std::size_t nl = text.find('\n', start);
        const std::size_t stop = nl == std::string_view::npos ? text.size() : nl;
        std::string_view line = text.substr(start, stop - start);
        const auto span_of = [&](std::string_view part) {
            const std::size_t col = static_cast<std::size_t>(part.data() - line.data());
            return SourceSpan{line_no, col + 1, start + col, start + col + part.size()};
        };
        if (auto c = line.find("//"); c != std::string_view::npos) line = line.substr(0, c);
        const std::string_view body = trim(line);
        if (!body.empty()) {
            const auto eq = body.find('=');
            if (eq == std::string_view::npos) throw ParseError("expected 'name = value'", span_of(body));
            const auto name = trim(body.substr(0, eq));
            const auto value = trim(body.substr(eq + 1));
            if (name.empty()) throw ParseError("missing symbol name", span_of(body));
            const auto id = vocab->find(name);
            if (!id) throw ParseError("unknown symbol '" + std::string(name) + "'", span_of(name));
            const auto& decl = (*vocab)[*id];
            if (value.empty()) throw ParseError("missing value for '" + decl.name + "'", span_of(body));
            const auto v = decl.domain.parse(value);
            if (!v)
                throw ParseError("value '" + std::string(value) + "' is not in the domain " +
                                     decl.domain.to_string() + " of '" + decl.name + "'",
                                 span_of(value));
            if (s.is_interpreted(*id)) throw ParseError("duplicate assignment to '" + decl.name + "'", span_of(name));
            s.set(*id, *v);
        }
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    return s;
}

std::string serialize_structure(const PartialStructure& s) {
    std::string out;
    for (const auto& f : s.facts()) {
        if (!out.empty()) out += '\n';
        const auto& decl = s.vocabulary()[f.symbol];
        out += decl.name + " = " + decl.domain.format(f.value);
    }
    return out;
}

std::string print_kb(const KnowledgeBase& kb) {
    std::string out = "vocabulary {\n";
    for (const auto& d : kb.vocab().symbols()) {
        out += "  ";
        out += d.kind == SymbolKind::Environmental ? "env " : "dec ";
        out += d.name + " : " + d.domain.to_string();
        if (d.goal) out += " goal";
        out += '\n';
    }
    out += "}\n";
    const auto theory = [&](const char* name, const Theory& t) {
        out += "\ntheory ";
        out += name;
        out += " {\n";
        for (const auto& s : t.sentences) {
            out += "  ";
            if (s.is_definition) out += "define ";
            out += to_string(s.formula, kb.vocab()) + ".\n";
        }
        out += "}\n";
    };
    theory("environment", kb.tenv);
    theory("solution", kb.tsol);
    return out;
}

Fact parse_fact(const Vocabulary& vocab, std::string_view symbol, std::string_view value) {
    const auto id = vocab.find(symbol);
    if (!id) throw Error("unknown symbol '" + std::string(symbol) + "'");
    const auto& decl = vocab[*id];
    const auto v = decl.domain.parse(value);
    if (!v)
        throw Error("value '" + std::string(value) + "' is not in the domain " + decl.domain.to_string() + " of '" +
                    decl.name + "'");
    return {*id, *v};
}

}  // namespace imx
