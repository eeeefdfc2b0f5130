#include "imx/formula.hpp"

#include <algorithm>

#include "domains.hpp"
#include "imx/error.hpp"

namespace imx {

struct Formula::Node {
    Kind kind = Kind::Constant;
    bool value = true;
    SymbolId symbol{};
    CompareOp op = CompareOp::Eq;
    ValueIndex operand = 0;
    std::vector<Formula> children;
};

namespace {

const std::vector<Formula> kNoChildren;

}  // namespace

std::shared_ptr<const Formula::Node> Formula::constant_node(bool v) {
    static const auto t = [] {
        auto n = std::make_shared<Node>();
        n->value = true;
        return std::shared_ptr<const Node>(n);
    }();
    static const auto f = [] {
        auto n = std::make_shared<Node>();
        n->value = false;
        return std::shared_ptr<const Node>(n);
    }();
    return v ? t : f;
}

Formula::Formula() : node_(constant_node(true)) {}

Formula Formula::constant(bool value) { return Formula(constant_node(value)); }

Formula Formula::atom(SymbolId symbol, CompareOp op, ValueIndex operand) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->symbol = symbol;
    n->op = op;
    n->operand = operand;
    return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Not;
    n->children.push_back(std::move(f));
    return Formula(std::move(n));
}

namespace {

std::vector<Formula> flatten(Formula::Kind kind, std::vector<Formula> fs) {
    std::vector<Formula> out;
    out.reserve(fs.size());
    for (auto& f : fs) {
        if (f.kind() == kind) {
            for (const auto& c : f.children()) out.push_back(c);
        } else {
            out.push_back(std::move(f));
        }
    }
    return out;
}

}  // namespace

Formula Formula::conjunction(std::vector<Formula> fs) {
    if (fs.empty()) return constant(true);
    if (fs.size() == 1) return std::move(fs.front());
    auto n = std::make_shared<Node>();
    n->kind = Kind::And;
    n->children = flatten(Kind::And, std::move(fs));
    return Formula(std::move(n));
}

Formula Formula::disjunction(std::vector<Formula> fs) {
    if (fs.empty()) return constant(false);
    if (fs.size() == 1) return std::move(fs.front());
    auto n = std::make_shared<Node>();
    n->kind = Kind::Or;
    n->children = flatten(Kind::Or, std::move(fs));
    return Formula(std::move(n));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Implies;
    n->children = {std::move(lhs), std::move(rhs)};
    return Formula(std::move(n));
}

Formula Formula::iff(Formula lhs, Formula rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Iff;
    n->children = {std::move(lhs), std::move(rhs)};
    return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }
bool Formula::constant_value() const { return node_->value; }
SymbolId Formula::symbol() const { return node_->symbol; }
CompareOp Formula::op() const { return node_->op; }
ValueIndex Formula::operand() const { return node_->operand; }
const std::vector<Formula>& Formula::children() const {
    return node_->kind == Kind::Constant || node_->kind == Kind::Atom ? kNoChildren : node_->children;
}

void Formula::collect_symbols(std::vector<bool>& seen) const {
    if (kind() == Kind::Atom) {
        if (seen.size() <= symbol().value()) seen.resize(symbol().value() + 1, false);
        seen[symbol().value()] = true;
        return;
    }
    for (const auto& c : children()) c.collect_symbols(seen);
}

std::vector<SymbolId> Formula::symbols() const {
    std::vector<bool> seen;
    collect_symbols(seen);
    std::vector<SymbolId> out;
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i]) out.emplace_back(i);
    return out;
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Formula::Kind::Constant: return a.constant_value() == b.constant_value();
    case Formula::Kind::Atom:
        return a.symbol() == b.symbol() && a.op() == b.op() && a.operand() == b.operand();
    default: return a.children() == b.children();
    }
}

const char* to_string(CompareOp op) {
    switch (op) {
    case CompareOp::Eq: return "=";
    case CompareOp::Ne: return "!=";
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
    }
    return "?";
}

const char* to_string(Truth t) {
    switch (t) {
    case Truth::True: return "t";
    case Truth::False: return "f";
    case Truth::Unknown: return "u";
    }
    return "?";
}

bool compare(ValueIndex lhs, CompareOp op, ValueIndex rhs) {
    switch (op) {
    case CompareOp::Eq: return lhs == rhs;
    case CompareOp::Ne: return lhs != rhs;
    case CompareOp::Lt: return lhs < rhs;
    case CompareOp::Le: return lhs <= rhs;
    case CompareOp::Gt: return lhs > rhs;
    case CompareOp::Ge: return lhs >= rhs;
    }
    return false;
}

bool eval(const Formula& f, const PartialStructure& total) {
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::Constant: return f.constant_value();
    case K::Atom: {
        auto v = total.get(f.symbol());
        if (!v)
            throw ContractViolation("eval: symbol '" + total.vocabulary()[f.symbol()].name +
                                    "' is uninterpreted");
        return compare(*v, f.op(), f.operand());
    }
    case K::Not: return !eval(f.children()[0], total);
    case K::And:
        return std::all_of(f.children().begin(), f.children().end(),
                           [&](const Formula& c) { return eval(c, total); });
    case K::Or:
        return std::any_of(f.children().begin(), f.children().end(),
                           [&](const Formula& c) { return eval(c, total); });
    case K::Implies: return !eval(f.children()[0], total) || eval(f.children()[1], total);
    case K::Iff: return eval(f.children()[0], total) == eval(f.children()[1], total);
    }
    return false;
}

bool eval(const Theory& t, const PartialStructure& total) {
    return std::all_of(t.sentences.begin(), t.sentences.end(),
                       [&](const Sentence& s) { return eval(s.formula, total); });
}

Truth eval3(const Formula& f, const PartialStructure& s) {
    return detail::eval3(f, detail::DomainState(s));
}

namespace {

enum Level { kIff = 1, kImplies = 2, kOr = 3, kAnd = 4, kNot = 5, kPrimary = 6 };

int level(const Formula& f) {
    switch (f.kind()) {
    case Formula::Kind::Iff: return kIff;
    case Formula::Kind::Implies: return kImplies;
    case Formula::Kind::Or: return kOr;
    case Formula::Kind::And: return kAnd;
    case Formula::Kind::Not: return kNot;
    default: return kPrimary;
    }
}

void print(const Formula& f, const Vocabulary& vocab, int min_level, std::string& out) {
    const bool parens = level(f) < min_level;
    if (parens) out += '(';
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::Constant: out += f.constant_value() ? "true" : "false"; break;
    case K::Atom: {
        const auto& decl = vocab[f.symbol()];
        out += decl.name;
        if (!(decl.domain.type() == Domain::Type::Bool && f.op() == CompareOp::Eq && f.operand() == 1)) {
            out += ' ';
            out += to_string(f.op());
            out += ' ';
            out += decl.domain.format(f.operand());
        }
        break;
    }
    case K::Not:
        out += '~';
        print(f.children()[0], vocab, kNot, out);
        break;
    case K::And:
    case K::Or: {
        const char* sep = f.kind() == K::And ? " & " : " | ";
        const int child_level = level(f) + 1;
        for (std::size_t i = 0; i < f.children().size(); ++i) {
            if (i) out += sep;
            print(f.children()[i], vocab, child_level, out);
        }
        break;
    }
    case K::Implies:
        // right-associative
        print(f.children()[0], vocab, kImplies + 1, out);
        out += " => ";
        print(f.children()[1], vocab, kImplies, out);
        break;
    case K::Iff:
        // left-associative
        print(f.children()[0], vocab, kIff, out);
        out += " <=> ";
        print(f.children()[1], vocab, kIff + 1, out);
        break;
    }
    if (parens) out += ')';
}

}  // namespace

std::string to_string(const Formula& f, const Vocabulary& vocab) {
    std::string out;
    print(f, vocab, 0, out);
    return out;
}

namespace detail {

DomainState::DomainState(const PartialStructure& s) {
    const auto& vocab = s.vocabulary();
    const std::size_t n = vocab.size();
    offset_.resize(n);
    size_.resize(n);
    remaining_.resize(n);
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        offset_[i] = static_cast<std::uint32_t>(total);
        size_[i] = static_cast<std::uint32_t>(vocab.symbols()[i].domain.size());
        total += size_[i];
    }
    alive_.assign(total, 1);
    for (std::size_t i = 0; i < n; ++i) {
        remaining_[i] = size_[i];
        if (s.raw()[i] >= 0) assign(i, s.raw()[i]);
    }
}

ValueIndex DomainState::first(std::size_t sym) const {
    for (std::uint32_t v = 0; v < size_[sym]; ++v)
        if (alive_[offset_[sym] + v]) return static_cast<ValueIndex>(v);
    return -1;
}

void DomainState::remove(std::size_t sym, ValueIndex v) {
    auto& cell = alive_[offset_[sym] + v];
    if (cell) {
        cell = 0;
        --remaining_[sym];
    }
}

void DomainState::assign(std::size_t sym, ValueIndex v) {
    std::fill_n(alive_.begin() + offset_[sym], size_[sym], std::uint8_t{0});
    alive_[offset_[sym] + v] = 1;
    remaining_[sym] = 1;
}

namespace {

Truth negate(Truth t) {
    if (t == Truth::True) return Truth::False;
    if (t == Truth::False) return Truth::True;
    return Truth::Unknown;
}

template <typename AtomFn>
Truth kleene(const Formula& f, const AtomFn& atom) {
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::Constant: return f.constant_value() ? Truth::True : Truth::False;
    case K::Atom: return atom(f);
    case K::Not: return negate(kleene(f.children()[0], atom));
    case K::And: {
        Truth acc = Truth::True;
        for (const auto& c : f.children()) {
            auto t = kleene(c, atom);
            if (t == Truth::False) return Truth::False;
            if (t == Truth::Unknown) acc = Truth::Unknown;
        }
        return acc;
    }
    case K::Or: {
        Truth acc = Truth::False;
        for (const auto& c : f.children()) {
            auto t = kleene(c, atom);
            if (t == Truth::True) return Truth::True;
            if (t == Truth::Unknown) acc = Truth::Unknown;
        }
        return acc;
    }
    case K::Implies: {
        auto a = kleene(f.children()[0], atom);
        if (a == Truth::False) return Truth::True;
        auto b = kleene(f.children()[1], atom);
        if (b == Truth::True) return Truth::True;
        if (a == Truth::True) return b;
        return Truth::Unknown;
    }
    case K::Iff: {
        auto a = kleene(f.children()[0], atom);
        if (a == Truth::Unknown) return Truth::Unknown;
        auto b = kleene(f.children()[1], atom);
        if (b == Truth::Unknown) return Truth::Unknown;
        return a == b ? Truth::True : Truth::False;
    }
    }
    return Truth::Unknown;
}

Truth atom_over(const Formula& a, const DomainState& d) {
    const auto sym = a.symbol().value();
    bool some_true = false;
    bool some_false = false;
    const auto size = static_cast<ValueIndex>(d.domain_size(sym));
    for (ValueIndex v = 0; v < size; ++v) {
        if (!d.allowed(sym, v)) continue;
        (compare(v, a.op(), a.operand()) ? some_true : some_false) = true;
        if (some_true && some_false) return Truth::Unknown;
    }
    if (some_true) return Truth::True;
    if (some_false) return Truth::False;
    return Truth::Unknown;  // empty domain: the caller has a conflict anyway
}

}  // namespace

Truth eval3(const Formula& f, const DomainState& d) {
    return kleene(f, [&](const Formula& a) { return atom_over(a, d); });
}

Truth eval3_with(const Formula& f, const DomainState& d, std::size_t sym, ValueIndex v) {
    return kleene(f, [&](const Formula& a) {
        if (a.symbol().value() == sym) return compare(v, a.op(), a.operand()) ? Truth::True : Truth::False;
        return atom_over(a, d);
    });
}

}  // namespace detail

}  // namespace imx
