#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "imx/structure.hpp"
#include "imx/vocabulary.hpp"

namespace imx {

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

/// Strong-Kleene truth value.
enum class Truth { False, True, Unknown };

const char* to_string(CompareOp op);
const char* to_string(Truth t);

/// Compares two value indices of the same domain. Ordering operators are only
/// meaningful for integer ranges, whose indices ascend with the integers.
bool compare(ValueIndex lhs, CompareOp op, ValueIndex rhs);

/// Immutable quantifier-free formula over a finite-domain vocabulary.
///
/// Atoms compare a symbol against a constant of its domain; a bare Boolean
/// atom `p` is the atom `p = true`. Conjunction and disjunction are n-ary.
/// Formulas share structure and are cheap to copy.
class Formula {
public:
    enum class Kind { Constant, Atom, Not, And, Or, Implies, Iff };

    Formula();  // the constant true

    static Formula constant(bool value);
    static Formula atom(SymbolId symbol, CompareOp op, ValueIndex operand);
    static Formula boolean_atom(SymbolId symbol) { return atom(symbol, CompareOp::Eq, 1); }
    static Formula negation(Formula f);
    static Formula conjunction(std::vector<Formula> fs);
    static Formula disjunction(std::vector<Formula> fs);
    static Formula implies(Formula lhs, Formula rhs);
    static Formula iff(Formula lhs, Formula rhs);

    Kind kind() const;
    bool is_constant() const { return kind() == Kind::Constant; }
    bool constant_value() const;
    SymbolId symbol() const;
    CompareOp op() const;
    ValueIndex operand() const;
    /// Operands of Not/And/Or/Implies/Iff.
    const std::vector<Formula>& children() const;

    /// Symbols occurring in the formula, canonical order, no duplicates.
    std::vector<SymbolId> symbols() const;
    void collect_symbols(std::vector<bool>& seen) const;

    friend bool operator==(const Formula& a, const Formula& b);

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static std::shared_ptr<const Node> constant_node(bool v);
    std::shared_ptr<const Node> node_;
};

/// Two-valued evaluation over a total structure. Throws ContractViolation on
/// an uninterpreted symbol.
bool eval(const Formula& f, const PartialStructure& total);

/// Sound three-valued evaluation: True (False) only if every total expansion
/// of `s` makes f true (false). An atom over an uninterpreted symbol is decided
/// when all values of the symbol's domain agree on it.
Truth eval3(const Formula& f, const PartialStructure& s);

/// Source text with minimal parentheses, parseable by the .kb reader.
std::string to_string(const Formula& f, const Vocabulary& vocab);

struct Sentence {
    Formula formula;
    bool is_definition = false;
    /// Set for definitions: the symbol of the atom on the left of the equivalence.
    std::optional<SymbolId> defined;
};

struct Theory {
    std::vector<Sentence> sentences;

    std::size_t size() const { return sentences.size(); }
    bool empty() const { return sentences.empty(); }
};

/// Conjunction of every sentence evaluated over a total structure.
bool eval(const Theory& t, const PartialStructure& total);

}  // namespace imx
