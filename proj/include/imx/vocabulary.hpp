#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace imx {

/// Index of a symbol in its vocabulary. Declaration order is the canonical order.
struct SymbolId {
    std::uint32_t index = 0;

    constexpr SymbolId() = default;
    constexpr explicit SymbolId(std::size_t i) : index(static_cast<std::uint32_t>(i)) {}
    constexpr std::size_t value() const { return index; }
    friend constexpr auto operator<=>(SymbolId, SymbolId) = default;
};

/// Index of a value in a symbol's domain, in declared order.
/// Bool domains are ordered (false, true); integer ranges ascend from lo.
using ValueIndex = int;

enum class SymbolKind { Environmental, Decision };

class Domain {
public:
    enum class Type { Bool, Enum, IntRange };

    static Domain boolean();
    /// Throws imx::Error on an empty list or duplicate names.
    static Domain enumeration(std::vector<std::string> names);
    /// Throws imx::Error when lo > hi.
    static Domain int_range(long long lo, long long hi);

    Type type() const { return type_; }
    std::size_t size() const;
    const std::vector<std::string>& names() const { return names_; }
    long long lo() const { return lo_; }
    long long hi() const { return hi_; }

    /// Canonical text of a value: true/false, the enum name, or the decimal integer.
    std::string format(ValueIndex v) const;
    /// Inverse of format(); nullopt if the text is not a member of the domain.
    std::optional<ValueIndex> parse(std::string_view text) const;
    std::optional<ValueIndex> index_of_int(long long n) const;
    long long int_value(ValueIndex v) const { return lo_ + v; }
    bool contains(ValueIndex v) const { return v >= 0 && static_cast<std::size_t>(v) < size(); }

    /// Source form used in .kb files: Bool, {A, B}, Int[lo..hi].
    std::string to_string() const;

    friend bool operator==(const Domain&, const Domain&) = default;

private:
    Type type_ = Type::Bool;
    std::vector<std::string> names_;
    long long lo_ = 0;
    long long hi_ = 1;
};

struct SymbolDecl {
    std::string name;
    SymbolKind kind = SymbolKind::Environmental;
    Domain domain = Domain::boolean();
    bool goal = false;
};

class Vocabulary {
public:
    Vocabulary() = default;
    /// Throws imx::Error on duplicate names.
    explicit Vocabulary(std::vector<SymbolDecl> symbols);

    std::size_t size() const { return symbols_.size(); }
    const SymbolDecl& operator[](SymbolId id) const { return symbols_[id.value()]; }
    const std::vector<SymbolDecl>& symbols() const { return symbols_; }
    std::optional<SymbolId> find(std::string_view name) const;
    /// Throws imx::Error for an undeclared name.
    SymbolId at(std::string_view name) const;

    bool is_environmental(SymbolId id) const { return (*this)[id].kind == SymbolKind::Environmental; }
    bool is_decision(SymbolId id) const { return (*this)[id].kind == SymbolKind::Decision; }
    std::vector<SymbolId> ids() const;
    std::vector<SymbolId> ids_of(SymbolKind kind) const;

private:
    std::vector<SymbolDecl> symbols_;
    std::unordered_map<std::string, SymbolId> by_name_;
};

using VocabularyPtr = std::shared_ptr<const Vocabulary>;

const char* to_string(SymbolKind kind);

}  // namespace imx

template <>
struct std::hash<imx::SymbolId> {
    std::size_t operator()(imx::SymbolId id) const noexcept { return id.index; }
};
