#pragma once

#include <optional>
#include <vector>

#include "infoquot/automaton.hpp"

namespace infoquot {

// Partition of a minimal relation automaton's states. Reflexive states are the
// ones reachable from the initial state on diagonal pair symbols; ambiguous
// states are the ones from which the reject sink is reachable on diagonal pair
// symbols. On a minimal valid relation automaton the two sets partition the
// state space.
struct StateClassification {
    std::vector<State> reflexive;   // sorted
    std::vector<State> ambiguous;   // sorted
    std::vector<bool> isReflexive;  // one flag per state
    std::optional<State> sink;      // absent when the relation is total
};

StateClassification classifyStates(const TwoTapeDfa& minimalRel);

// Two same-length histories are interchangeable when the automaton cannot
// tell them apart against any third word; equivalently, their pair run ends
// in a reflexive state.
bool interchangeable(const TwoTapeDfa& minimalRel, const StateClassification& cls,
                     const Word& t1, const Word& t2);

// Three-state acceptor for the synchronous lexicographic order on equal-length
// words: undecided / first-smaller / first-larger.
TwoTapeDfa lexOrderDfa(const Alphabet& base, bool strict);

// Acceptor for the words that are lexicographically least within their
// interchangeability class.
Dfa representativesDfa(const TwoTapeDfa& minimalRel, const StateClassification& cls,
                       std::size_t maxStates = kDefaultMaxStates);

// Restriction of the relation to pairs whose second component is a
// representative.
TwoTapeDfa representationRelation(const TwoTapeDfa& minimalRel,
                                  const StateClassification& cls,
                                  std::size_t maxStates = kDefaultMaxStates);

// Nondeterministic acceptor over the base alphabet whose accepting runs on a
// word correspond one-to-one with that word's representatives: each state
// remembers the representation-relation state together with the last symbol
// guessed on the representative tape. Trimmed to its useful part.
Nfa decisionAutomaton(const TwoTapeDfa& minimalRel, const StateClassification& cls,
                      std::size_t maxStates = kDefaultMaxStates);

// Certificate that the decision automaton is infinitely ambiguous: a nonempty
// word v and useful states p != q with simultaneous runs p -v-> p, p -v-> q
// and q -v-> q.
struct PumpingWitness {
    State p = kNoState;
    State q = kNoState;
    Word word;
};

struct BranchingVerdict {
    enum class Kind { Bounded, Unbounded };

    Kind kind = Kind::Bounded;
    // Largest ambiguous-clique size observed, i.e. the maximal matrix
    // dimension of the synthesis closure. Present for Bounded verdicts.
    std::optional<std::size_t> bound;
    // Present for Unbounded verdicts; replays in decisionAutomaton().
    std::optional<PumpingWitness> witness;
};

// Decides whether the information tree of a validated relation has bounded
// branching. The input is minimized internally; the witness refers to the
// decision automaton built from that minimized automaton.
BranchingVerdict decideBoundedBranching(const TwoTapeDfa& validatedRel,
                                        std::size_t maxStates = kDefaultMaxStates);

// Least infinite-ambiguity witness of an NFA (word shortlex-least, then state
// pair), or nullopt when the automaton is finitely ambiguous. Exposed for
// witness replay; decideBoundedBranching uses it internally.
std::optional<PumpingWitness> infiniteAmbiguityWitness(const Nfa& trimmedNfa);

}  // namespace infoquot
