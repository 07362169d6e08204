#pragma once

#include <cstddef>
#include <vector>

#include "infoquot/automaton.hpp"
#include "infoquot/structure.hpp"

namespace infoquot {

// Square matrix of relation-automaton states. Rows and columns stand for the
// interchangeability classes inside one relation class, ordered by their
// lexicographically least members; entry (i, j) is the state reached on a
// pair of members of classes i and j. Diagonal entries are reflexive states,
// off-diagonal entries ambiguous ones, and no two columns coincide.
struct StateMatrix {
    std::size_t dim = 0;
    std::vector<State> entries;  // row-major, dim * dim

    State at(std::size_t row, std::size_t col) const { return entries[row * dim + col]; }
    bool operator==(const StateMatrix& other) const {
        return dim == other.dim && entries == other.entries;
    }
};

// A matrix together with the 1-based column of the tracked history's class.
struct MatrixIndexState {
    StateMatrix matrix;
    std::size_t index = 1;

    bool operator==(const MatrixIndexState& other) const {
        return index == other.index && matrix == other.matrix;
    }
};

// Deterministic semi-automaton over the move alphabet whose states are the
// matrix-index pairs reachable from the one-cell initial matrix.
struct ClosureAutomaton {
    std::vector<MatrixIndexState> states;  // breadth-first discovery order
    State initial = 0;
    std::size_t moveCount = 0;
    std::vector<State> transitions;  // state * moveCount + move
    std::size_t maxDimension = 0;

    State next(State q, Symbol move) const { return transitions[q * moveCount + move]; }
};

// Blow each entry up into the full block of its one-step successors; block
// rows and columns follow alphabet declaration order.
StateMatrix transform(const StateMatrix& m, const TwoTapeDfa& minimalRel);

// One construction step: transform, reposition the index at the diagonal cell
// of the chosen move, drop rows/columns whose entry in the index column is the
// sink, then repeatedly drop the later of two identical columns.
MatrixIndexState successor(const StateMatrix& m, std::size_t index, Symbol move,
                           const TwoTapeDfa& minimalRel);

// Closure of the initial one-cell state under successor for every move.
// Requires a Bounded verdict; termination is then guaranteed and the state
// budget is defense in depth.
ClosureAutomaton buildClosure(const TwoTapeDfa& minimalRel,
                              const BranchingVerdict& verdict,
                              std::size_t maxStates = kDefaultMaxStates);

// Same construction without the verdict check; used by the decision procedure
// itself once boundedness is established.
ClosureAutomaton buildClosureUnchecked(const TwoTapeDfa& minimalRel,
                                       std::size_t maxStates = kDefaultMaxStates);

// Equality/disequality constraints over one variable per (closure state,
// move). Variable x_{p,a} has id p * moveCount + a.
struct ConstraintSet {
    using Var = std::size_t;

    std::size_t variableCount = 0;
    std::size_t moveCount = 0;
    std::vector<std::pair<Var, Var>> equalities;     // normalized u < v, sorted
    std::vector<std::pair<Var, Var>> disequalities;  // normalized u <= v, sorted
};

// Walks the reachable part of the closure self-product synchronised with the
// relation; every reachable non-rejecting triple contributes one constraint
// per letter pair.
ConstraintSet generateConstraints(const ClosureAutomaton& closure,
                                  const TwoTapeDfa& minimalRel);

struct ConstraintSolution {
    // Equality class of each variable, numbered by first occurrence.
    std::vector<std::size_t> classOf;
    // Observation symbol per variable, positive integers; classes are colored
    // greedily in first-occurrence order, so unrelated classes may share a
    // symbol and the used symbols form a contiguous range 1..symbolCount.
    std::vector<std::size_t> assignment;
    std::size_t symbolCount = 0;
};

// Thrown when a disequality lands inside one equality class. Cannot happen
// for constraints generated from a validated bounded relation.
class InfeasibleError : public Error {
public:
    InfeasibleError(std::string what, std::pair<std::size_t, std::size_t> violated,
                    std::vector<std::size_t> chain)
        : Error(std::move(what)), violated_(violated), chain_(std::move(chain)) {}

    std::pair<std::size_t, std::size_t> violatedPair() const { return violated_; }
    const std::vector<std::size_t>& mergingChain() const { return chain_; }

private:
    std::pair<std::size_t, std::size_t> violated_;
    std::vector<std::size_t> chain_;
};

ConstraintSolution solveConstraints(const ConstraintSet& constraints);

// Thrown by synthesizeMealy when the information tree branches unboundedly.
class UnrepresentableError : public Error {
public:
    UnrepresentableError(std::string what, PumpingWitness witness)
        : Error(std::move(what)), witness_(std::move(witness)) {}

    const PumpingWitness& witness() const { return witness_; }

private:
    PumpingWitness witness_;
};

// Full pipeline: validate, minimize, classify, decide branching, close,
// constrain, solve. The produced machine's observation-history kernel equals
// the input relation.
MealyMachine synthesizeMealy(const TwoTapeDfa& rel,
                             std::size_t maxStates = kDefaultMaxStates);

}  // namespace infoquot
