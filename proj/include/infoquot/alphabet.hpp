#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace infoquot {

using Symbol = std::size_t;

// Finite ordered alphabet. The declaration order of the symbols defines the
// total order used by every lexicographic comparison in the library.
class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> symbols);

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(Symbol s) const;
    std::optional<Symbol> find(std::string_view name) const noexcept;
    const std::vector<std::string>& names() const noexcept { return names_; }

    bool operator==(const Alphabet& other) const noexcept {
        return names_ == other.names_;
    }
    bool operator!=(const Alphabet& other) const noexcept {
        return !(*this == other);
    }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, Symbol> index_;
};

// Symbols of a paired (two-tape) alphabet are flattened row-major: the pair
// (a, b) over a base of size n becomes the single symbol a*n + b.
constexpr Symbol pairSymbol(Symbol first, Symbol second, std::size_t base) noexcept {
    return first * base + second;
}
constexpr Symbol pairFirst(Symbol pair, std::size_t base) noexcept {
    return pair / base;
}
constexpr Symbol pairSecond(Symbol pair, std::size_t base) noexcept {
    return pair % base;
}

}  // namespace infoquot
