#pragma once

#include <optional>

#include "infoquot/automaton.hpp"

namespace infoquot {

// Outcome of one relation axiom check. Counterexamples are minimal: shortest,
// then lexicographically least on the first tape, then on the second.
struct CheckResult {
    bool ok = false;
    std::optional<PairWord> counterexample;
};

struct ValidationReport {
    CheckResult reflexive;
    CheckResult symmetric;
    CheckResult transitive;
    CheckResult perfectRecall;

    // Synchronicity holds structurally for every two-tape acceptor.
    bool valid() const noexcept {
        return reflexive.ok && symmetric.ok && transitive.ok && perfectRecall.ok;
    }
};

// Runs the machine on both tapes at once; pairs whose observation outputs ever
// diverge fall into a single reject sink. The accepted pairs are exactly the
// pairs of words with equal observation histories. The non-sink state space
// embeds into the square of the machine's state space.
TwoTapeDfa mealyToRelation(const MealyMachine& m);

// Every state reachable on diagonal pair symbols must accept (the initial
// state covers the empty word).
CheckResult checkReflexive(const TwoTapeDfa& rel);

// Language equality with the transposed relation.
CheckResult checkSymmetric(const TwoTapeDfa& rel);

// Inclusion of the relational self-composition.
CheckResult checkTransitive(const TwoTapeDfa& rel,
                            std::size_t maxStates = kDefaultMaxStates);

// No accepted pair may extend a rejected one: the counterexample is an
// accepted pair whose immediate prefix pair is rejected.
CheckResult checkPerfectRecall(const TwoTapeDfa& rel);

ValidationReport validate(const TwoTapeDfa& rel,
                          std::size_t maxStates = kDefaultMaxStates);

}  // namespace infoquot
