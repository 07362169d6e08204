#include "infoquot/alphabet.hpp"

#include "infoquot/errors.hpp"

namespace infoquot {

Alphabet::Alphabet(std::vector<std::string> symbols) : names_(std::move(symbols)) {
    if (names_.empty()) {
        throw InputError("alphabet must not be empty");
    }
    for (Symbol s = 0; s < names_.size(); ++s) {
        if (names_[s].empty()) {
            throw InputError("alphabet symbol must not be empty");
        }
        auto [it, fresh] = index_.emplace(names_[s], s);
        if (!fresh) {
            throw InputError("duplicate alphabet symbol '" + names_[s] + "'");
        }
    }
}

const std::string& Alphabet::name(Symbol s) const {
    if (s >= names_.size()) {
        throw InputError("symbol id " + std::to_string(s) + " out of range");
    }
    return names_[s];
}

std::optional<Symbol> Alphabet::find(std::string_view name) const noexcept {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

}  // namespace infoquot
