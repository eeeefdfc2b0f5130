#include "imx/vocabulary.hpp"

#include <charconv>
#include <set>

#include "imx/error.hpp"

namespace imx {

OverlapError::OverlapError(std::vector<std::string> shared)
    : Error([&] {
          std::string msg = "structures overlap on:";
          for (const auto& s : shared) msg += " " + s;
          return msg;
      }()),
      shared_(std::move(shared)) {}

ParseError::ParseError(const std::string& message, SourceSpan span)
    : Error(std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message),
      span_(span),
      detail_(message) {}

SizeGuardExceeded::SizeGuardExceeded(std::size_t symbols, std::size_t limit)
    : Error("exact mode unavailable: " + std::to_string(symbols) + " symbols exceed the limit of " +
            std::to_string(limit)) {}

Domain Domain::boolean() { return Domain{}; }

Domain Domain::enumeration(std::vector<std::string> names) {
    if (names.empty()) throw Error("enumeration domain needs at least one value");
    std::set<std::string> seen;
    for (const auto& n : names)
        if (!seen.insert(n).second) throw Error("duplicate enumeration value '" + n + "'");
    Domain d;
    d.type_ = Type::Enum;
    d.names_ = std::move(names);
    d.lo_ = 0;
    d.hi_ = static_cast<long long>(d.names_.size()) - 1;
    return d;
}

Domain Domain::int_range(long long lo, long long hi) {
    if (lo > hi) throw Error("empty integer range [" + std::to_string(lo) + ".." + std::to_string(hi) + "]");
    Domain d;
    d.type_ = Type::IntRange;
    d.lo_ = lo;
    d.hi_ = hi;
    return d;
}

std::size_t Domain::size() const {
    switch (type_) {
    case Type::Bool: return 2;
    case Type::Enum: return names_.size();
    case Type::IntRange: return static_cast<std::size_t>(hi_ - lo_ + 1);
    }
    return 0;
}

std::string Domain::format(ValueIndex v) const {
    switch (type_) {
    case Type::Bool: return v ? "true" : "false";
    case Type::Enum: return names_.at(static_cast<std::size_t>(v));
    case Type::IntRange: return std::to_string(lo_ + v);
    }
    return {};
}

std::optional<ValueIndex> Domain::index_of_int(long long n) const {
    if (type_ != Type::IntRange || n < lo_ || n > hi_) return std::nullopt;
    return static_cast<ValueIndex>(n - lo_);
}

std::optional<ValueIndex> Domain::parse(std::string_view text) const {
    switch (type_) {
    case Type::Bool:
        if (text == "true") return 1;
        if (text == "false") return 0;
        return std::nullopt;
    case Type::Enum:
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == text) return static_cast<ValueIndex>(i);
        return std::nullopt;
    case Type::IntRange: {
        long long n = 0;
        const char* first = text.data();
        const char* last = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(first, last, n);
        if (ec != std::errc{} || ptr != last || text.empty()) return std::nullopt;
        return index_of_int(n);
    }
    }
    return std::nullopt;
}

std::string Domain::to_string() const {
    switch (type_) {
    case Type::Bool: return "Bool";
    case Type::Enum: {
        std::string s = "{";
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (i) s += ", ";
            s += names_[i];
        }
        return s + "}";
    }
    case Type::IntRange: return "Int[" + std::to_string(lo_) + ".." + std::to_string(hi_) + "]";
    }
    return {};
}

Vocabulary::Vocabulary(std::vector<SymbolDecl> symbols) : symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (!by_name_.emplace(symbols_[i].name, SymbolId{i}).second)
            throw Error("duplicate symbol '" + symbols_[i].name + "'");
    }
}

std::optional<SymbolId> Vocabulary::find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

SymbolId Vocabulary::at(std::string_view name) const {
    if (auto id = find(name)) return *id;
    throw Error("unknown symbol '" + std::string(name) + "'");
}

std::vector<SymbolId> Vocabulary::ids() const {
    std::vector<SymbolId> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.emplace_back(i);
    return out;
}

std::vector<SymbolId> Vocabulary::ids_of(SymbolKind kind) const {
    std::vector<SymbolId> out;
    for (std::size_t i = 0; i < size(); ++i)
        if (symbols_[i].kind == kind) out.emplace_back(i);
    return out;
}

const char* to_string(SymbolKind kind) {
    return kind == SymbolKind::Environmental ? "environmental" : "decision";
}

}  // namespace imx
