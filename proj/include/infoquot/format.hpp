#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "infoquot/automaton.hpp"

namespace infoquot {

// Error with a position in the parsed text. Line and column are 1-based;
// file-level semantic errors (e.g. a missing transition) carry line 0.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error(line == 0 ? what
                          : std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

struct ParseOptions {
    // Complete a partial relation with one fresh non-accepting sink instead of
    // rejecting it. Mealy machines must always be total.
    bool completeWithSink = false;
};

using ParsedAutomaton = std::variant<TwoTapeDfa, MealyMachine>;

// Text format, one section per line, `#` starts a comment:
//
//   relation                          mealy
//   alphabet a b                      alphabet a b
//   states q1 q2 bot                  observations 1 2
//   initial q1                        states p1 p2
//   accepting q1 q2                   initial p1
//   q1 a a -> q1                      p1 a -> p1 : 1
//   ...                               ...
//
// Alphabet declaration order is semantically significant. Duplicate
// transitions are errors; so are missing ones (see ParseOptions).
ParsedAutomaton parseAutomaton(std::string_view text, const ParseOptions& opts = {});

std::string serialize(const TwoTapeDfa& rel);
std::string serialize(const MealyMachine& m);

std::string exportDot(const TwoTapeDfa& rel);
std::string exportDot(const MealyMachine& m);

}  // namespace infoquot
