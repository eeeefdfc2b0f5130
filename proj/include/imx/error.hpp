#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace imx {

/// Position of a diagnostic inside a source text. Lines and columns are 1-based,
/// offsets are byte offsets into the input.
struct SourceSpan {
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t begin = 0;
    std::size_t end = 0;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke an operation's contract (e.g. evaluating over a partial structure).
class ContractViolation : public Error {
public:
    using Error::Error;
};

class VocabularyMismatch : public Error {
public:
    VocabularyMismatch() : Error("structures are over different vocabularies") {}
};

class OverlapError : public Error {
public:
    explicit OverlapError(std::vector<std::string> shared);
    const std::vector<std::string>& shared_symbols() const { return shared_; }

private:
    std::vector<std::string> shared_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, SourceSpan span);
    const SourceSpan& span() const { return span_; }
    /// Message without the "line:column:" prefix.
    const std::string& detail() const { return detail_; }

private:
    SourceSpan span_;
    std::string detail_;
};

/// The state (or base structure) admits no model of the selected theories.
class InconsistentState : public Error {
public:
    using Error::Error;
};

/// Exact relevance was requested on a vocabulary too large for enumeration.
class SizeGuardExceeded : public Error {
public:
    SizeGuardExceeded(std::size_t symbols, std::size_t limit);
};

}  // namespace imx
