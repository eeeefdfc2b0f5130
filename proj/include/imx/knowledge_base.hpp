#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "imx/formula.hpp"
#include "imx/structure.hpp"
#include "imx/vocabulary.hpp"

namespace imx {

/// Vocabulary split into environmental and decision symbols, the theory of
/// possible environments (`tenv`, environmental symbols only) and the theory
/// of acceptable solutions (`tsol`, any symbol). Goal flags live on the
/// symbol declarations.
struct KnowledgeBase {
    VocabularyPtr vocabulary;
    Theory tenv;
    Theory tsol;

    const Vocabulary& vocab() const { return *vocabulary; }
    PartialStructure empty_structure() const { return PartialStructure(vocabulary); }
    std::vector<SymbolId> goals() const;
};

/// Parses the `.kb` text format:
///
///     vocabulary { (env|dec) Name : Bool | {A, B} | Int[lo..hi] [goal] ... }
///     theory environment { [define] formula. ... }
///     theory solution { [define] formula. ... }
///
/// Operators by decreasing precedence: `~`, `&`, `|`, `=>` (right
/// associative), `<=>`. Atoms are Boolean symbol names, `true`/`false`, or
/// comparisons `Name op literal` with op among `= != < <= > >=`.
/// `//` starts a line comment. Throws ParseError with a source span.
KnowledgeBase parse_kb(std::string_view text);

/// Parses `name = value` lines (blank lines and `//` comments allowed).
/// Unknown names, ill-typed values and duplicate assignments are rejected.
PartialStructure parse_structure(std::string_view text, const VocabularyPtr& vocab);

/// `name = value` lines in canonical order, each terminated by a newline
/// except the last. The empty structure serializes to "".
std::string serialize_structure(const PartialStructure& s);

/// Canonical re-print of a knowledge base in the `.kb` format.
std::string print_kb(const KnowledgeBase& kb);

/// Parses a single `name = value` fact against a vocabulary.
/// Throws imx::Error naming the symbol on failure.
Fact parse_fact(const Vocabulary& vocab, std::string_view symbol, std::string_view value);

}  // namespace imx
