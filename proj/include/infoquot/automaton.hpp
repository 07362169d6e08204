#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "infoquot/alphabet.hpp"
#include "infoquot/errors.hpp"

namespace infoquot {

using State = std::size_t;
using Word = std::vector<Symbol>;

inline constexpr State kNoState = static_cast<State>(-1);
inline constexpr Symbol kNoSymbol = static_cast<Symbol>(-1);

// A pair of same-length words, read synchronously on two tapes.
struct PairWord {
    Word first;
    Word second;

    bool operator==(const PairWord& other) const {
        return first == other.first && second == other.second;
    }
};

// Deterministic finite automaton over an anonymous alphabet of `symbolCount`
// symbols. Two-tape automata flatten their paired alphabet row-major, see
// pairSymbol(). Transitions are total unless an entry is kNoState; partial
// automata only arise from trim() and from parsing without completion.
struct Dfa {
    std::size_t symbolCount = 0;
    State initial = 0;
    std::vector<bool> accepting;
    std::vector<State> transitions;       // state * symbolCount + symbol
    std::vector<std::string> stateNames;  // empty or one name per state

    std::size_t stateCount() const noexcept { return accepting.size(); }
    State next(State q, Symbol s) const { return transitions[q * symbolCount + s]; }
    bool total() const noexcept;
    std::string stateName(State q) const;
};

struct NfaEdge {
    State to = kNoState;
    Symbol decoration = kNoSymbol;

    bool operator==(const NfaEdge& other) const {
        return to == other.to && decoration == other.decoration;
    }
    bool operator<(const NfaEdge& other) const {
        return to != other.to ? to < other.to : decoration < other.decoration;
    }
};

// Nondeterministic automaton. Edges may carry a decoration symbol; projected
// two-tape automata use it to remember the dropped tape.
struct Nfa {
    std::size_t symbolCount = 0;
    State initial = 0;
    std::vector<bool> accepting;
    std::vector<std::vector<NfaEdge>> transitions;  // state * symbolCount + symbol

    std::size_t stateCount() const noexcept { return accepting.size(); }
    const std::vector<NfaEdge>& edges(State q, Symbol s) const {
        return transitions[q * symbolCount + s];
    }
};

// Acceptor over pairs of moves; recognizes a length-preserving relation on
// words over the base alphabet.
struct TwoTapeDfa {
    Alphabet base;
    Dfa dfa;  // dfa.symbolCount == base.size() * base.size()
};

// Deterministic transducer: reads moves, emits one observation per move.
struct MealyMachine {
    Alphabet input;
    Alphabet output;
    State initial = 0;
    std::vector<State> transitions;  // state * input.size() + symbol
    std::vector<Symbol> outputs;     // aligned with transitions
    std::vector<std::string> stateNames;

    std::size_t stateCount() const noexcept {
        return input.size() == 0 ? 0 : transitions.size() / input.size();
    }
    State next(State q, Symbol s) const { return transitions[q * input.size() + s]; }
    Symbol outputOf(State q, Symbol s) const { return outputs[q * input.size() + s]; }
    std::string stateName(State q) const;
};

// --- word helpers -----------------------------------------------------------

// Interleaves two same-length words into a word over the paired alphabet.
Word zipWords(const Word& first, const Word& second, std::size_t base);
PairWord unzipWord(const Word& pairWord, std::size_t base);

// --- runs -------------------------------------------------------------------

// Extended transition function from an arbitrary state; the empty word stays put.
State runFrom(const Dfa& dfa, State from, const Word& word);
State run(const Dfa& dfa, const Word& word);
bool accepts(const Dfa& dfa, const Word& word);
bool acceptsPair(const TwoTapeDfa& rel, const Word& first, const Word& second);
bool nfaAccepts(const Nfa& nfa, const Word& word);

// Observation history of a nonempty move word: position t holds the output of
// the transition taken at step t. Empty input is rejected; the empty history
// trivially maps to the empty observation sequence.
Word observationHistory(const MealyMachine& m, const Word& word);

// Transition structure of a Mealy machine as an all-accepting DFA.
Dfa underlyingSemiAutomaton(const MealyMachine& m);

// --- products ---------------------------------------------------------------

// Both factors read the same symbol. State ids form the full grid q1*n2+q2;
// a state accepts when both components do.
Dfa synchronisedProduct(const Dfa& a, const Dfa& b);

// Factors read independent tapes; the product alphabet is the flattened pair
// alphabet s1*|S2|+s2. Grid state ids as above.
Dfa parallelProduct(const Dfa& a, const Dfa& b);

// --- closure and normal forms ------------------------------------------------

// Subset construction. Decorations are dropped; result is complete, states
// numbered in breadth-first discovery order.
Dfa determinize(const Nfa& nfa, std::size_t maxStates = kDefaultMaxStates);

Dfa complement(const Dfa& dfa);

// Restriction to useful states (reachable and co-reachable to an accepting
// state). May return a partial automaton; the initial state is always kept.
Dfa trim(const Dfa& dfa);
Nfa trim(const Nfa& nfa);

// Completes a partial automaton by routing holes into one fresh non-accepting
// sink. Total automata are returned unchanged.
Dfa completeToSink(const Dfa& dfa, const std::string& sinkName = "sink");

// Canonical minimal complete DFA: reachable part, partition refinement,
// breadth-first renumbering. Merged states keep the name of the member with
// the smallest input id.
Dfa minimize(const Dfa& dfa);
TwoTapeDfa minimize(const TwoTapeDfa& rel);

// --- two-tape specific ------------------------------------------------------

// Swaps the two tape components of every symbol.
TwoTapeDfa transpose(const TwoTapeDfa& rel);

// Projection onto one tape; the dropped tape's symbol is kept as decoration.
Nfa projectFirst(const TwoTapeDfa& rel);
Nfa projectSecond(const TwoTapeDfa& rel);

// Relational composition { (t, p) | exists r: (t, r) in L(a) and (r, p) in L(b) }.
TwoTapeDfa compose(const TwoTapeDfa& a, const TwoTapeDfa& b,
                   std::size_t maxStates = kDefaultMaxStates);

// --- comparisons ------------------------------------------------------------

bool languageEquivalent(const Dfa& a, const Dfa& b);
bool languageEquivalent(const TwoTapeDfa& a, const TwoTapeDfa& b);

// Shortest distinguishing word; ties broken lexicographically. nullopt when
// the languages agree.
std::optional<Word> distinguishingWord(const Dfa& a, const Dfa& b);

// Shortest distinguishing pair; among shortest, the first tape is minimized
// lexicographically, then the second.
std::optional<PairWord> distinguishingPair(const TwoTapeDfa& a, const TwoTapeDfa& b);

// --- minimal witness search --------------------------------------------------

// Shortlex-least word from the initial state into a target state, expanding
// symbols in declaration order.
std::optional<Word> leastWordTo(const Dfa& dfa, const std::vector<bool>& target);

// Least pair word (length, then first tape, then second tape) from the
// initial state of a pair-alphabet DFA into a target state.
std::optional<PairWord> leastPairWordTo(const Dfa& pairDfa, std::size_t base,
                                        const std::vector<bool>& target);

}  // namespace infoquot
