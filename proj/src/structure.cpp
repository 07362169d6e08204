#include "infoquot/structure.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "infoquot/synthesis.hpp"

namespace infoquot {

StateClassification classifyStates(const TwoTapeDfa& minimalRel) {
    const Dfa& d = minimalRel.dfa;
    const std::size_t g = minimalRel.base.size();
    const std::size_t n = d.stateCount();

    StateClassification cls;
    cls.isReflexive.assign(n, false);

    // Forward reachability from the initial state along diagonal symbols.
    std::deque<State> work{d.initial};
    cls.isReflexive[d.initial] = true;
    while (!work.empty()) {
        State q = work.front();
        work.pop_front();
        for (Symbol c = 0; c < g; ++c) {
            State t = d.next(q, pairSymbol(c, c, g));
            if (!cls.isReflexive[t]) {
                cls.isReflexive[t] = true;
                work.push_back(t);
            }
        }
    }

    // The reject sink is the unique non-accepting state of a minimal valid
    // relation automaton; a total relation has none.
    for (State q = 0; q < n; ++q) {
        if (d.accepting[q]) continue;
        if (cls.sink) {
            throw InternalError(
                "state classification expects a minimal relation automaton with a "
                "single rejecting sink");
        }
        cls.sink = q;
    }

    // Backward reachability from the sink along diagonal symbols.
    std::vector<bool> isAmbiguous(n, false);
    if (cls.sink) {
        std::vector<std::vector<State>> rev(n);
        for (State q = 0; q < n; ++q) {
            for (Symbol c = 0; c < g; ++c) {
                rev[d.next(q, pairSymbol(c, c, g))].push_back(q);
            }
        }
        isAmbiguous[*cls.sink] = true;
        work.push_back(*cls.sink);
        while (!work.empty()) {
            State q = work.front();
            work.pop_front();
            for (State p : rev[q]) {
                if (!isAmbiguous[p]) {
                    isAmbiguous[p] = true;
                    work.push_back(p);
                }
            }
        }
    }

    for (State q = 0; q < n; ++q) {
        if (cls.isReflexive[q] == isAmbiguous[q]) {
            throw InternalError(
                "reflexive/ambiguous state partition violated at state '" +
                d.stateName(q) + "': the input is not a minimal valid relation");
        }
        (cls.isReflexive[q] ? cls.reflexive : cls.ambiguous).push_back(q);
    }
    return cls;
}

bool interchangeable(const TwoTapeDfa& minimalRel, const StateClassification& cls,
                     const Word& t1, const Word& t2) {
    if (t1.size() != t2.size()) {
        throw InputError("interchangeability is defined for equal-length words");
    }
    State q = run(minimalRel.dfa, zipWords(t1, t2, minimalRel.base.size()));
    return cls.isReflexive[q];
}

TwoTapeDfa lexOrderDfa(const Alphabet& base, bool strict) {
    const std::size_t g = base.size();
    Dfa d;
    d.symbolCount = g * g;
    d.initial = 0;
    d.accepting = strict ? std::vector<bool>{false, true, false}
                         : std::vector<bool>{true, true, false};
    d.stateNames = {"eq", "lt", "gt"};
    d.transitions.resize(3 * g * g);
    for (Symbol a = 0; a < g; ++a) {
        for (Symbol b = 0; b < g; ++b) {
            const Symbol s = pairSymbol(a, b, g);
            d.transitions[0 * d.symbolCount + s] = a == b ? 0 : (a < b ? 1 : 2);
            d.transitions[1 * d.symbolCount + s] = 1;
            d.transitions[2 * d.symbolCount + s] = 2;
        }
    }
    return {base, d};
}

Dfa representativesDfa(const TwoTapeDfa& minimalRel, const StateClassification& cls,
                       std::size_t maxStates) {
    // A word is a representative unless some interchangeable word is strictly
    // lexicographically smaller. Pairs (u, w) with u interchangeable with w
    // and u < w are regular; the non-representatives are the projection of
    // that relation onto the second tape.
    Dfa interAut = minimalRel.dfa;
    interAut.accepting.assign(interAut.stateCount(), false);
    for (State q : cls.reflexive) interAut.accepting[q] = true;

    TwoTapeDfa smaller = lexOrderDfa(minimalRel.base, /*strict=*/true);
    Dfa product = synchronisedProduct(interAut, smaller.dfa);
    Nfa nonReps = projectSecond({minimalRel.base, product});
    // The subset construction tends to be far from minimal; canonicalize.
    return minimize(complement(determinize(nonReps, maxStates)));
}

TwoTapeDfa representationRelation(const TwoTapeDfa& minimalRel,
                                  const StateClassification& cls,
                                  std::size_t maxStates) {
    Dfa reps = representativesDfa(minimalRel, cls, maxStates);
    // Lift the representatives acceptor to the second tape and synchronise.
    const std::size_t g = minimalRel.base.size();
    Dfa lifted;
    lifted.symbolCount = g * g;
    lifted.initial = reps.initial;
    lifted.accepting = reps.accepting;
    lifted.transitions.resize(reps.stateCount() * g * g);
    for (State q = 0; q < reps.stateCount(); ++q) {
        for (Symbol a = 0; a < g; ++a) {
            for (Symbol b = 0; b < g; ++b) {
                lifted.transitions[q * lifted.symbolCount + pairSymbol(a, b, g)] =
                    reps.next(q, b);
            }
        }
    }
    return {minimalRel.base, synchronisedProduct(minimalRel.dfa, lifted)};
}

Nfa decisionAutomaton(const TwoTapeDfa& minimalRel, const StateClassification& cls,
                      std::size_t maxStates) {
    // Run counts depend only on the recognized relation and on determinism,
    // both of which minimization preserves; the smaller automaton keeps the
    // ambiguity scan cheap.
    TwoTapeDfa rr = minimize(representationRelation(minimalRel, cls, maxStates));
    const std::size_t g = minimalRel.base.size();
    const std::size_t n = rr.dfa.stateCount();

    // One state per (relation state, last symbol guessed on the second tape),
    // plus a dedicated start. A run on a word then spells out exactly one
    // candidate representative, so run counts equal representative counts.
    Nfa out;
    out.symbolCount = g;
    out.initial = 0;
    out.accepting.assign(1 + n * g, false);
    out.accepting[0] = rr.dfa.accepting[rr.dfa.initial];
    out.transitions.assign((1 + n * g) * g, {});
    auto stateOf = [&](State q, Symbol b) { return 1 + q * g + b; };
    for (State q = 0; q < n; ++q) {
        for (Symbol b = 0; b < g; ++b) {
            out.accepting[stateOf(q, b)] = rr.dfa.accepting[q];
        }
    }
    auto addEdges = [&](State from, State rrState) {
        for (Symbol a = 0; a < g; ++a) {
            for (Symbol b = 0; b < g; ++b) {
                State t = rr.dfa.next(rrState, pairSymbol(a, b, g));
                out.transitions[from * g + a].push_back({stateOf(t, b), b});
            }
        }
    };
    addEdges(0, rr.dfa.initial);
    for (State q = 0; q < n; ++q) {
        for (Symbol b = 0; b < g; ++b) addEdges(stateOf(q, b), q);
    }
    for (auto& edges : out.transitions) std::sort(edges.begin(), edges.end());
    return trim(out);
}

std::optional<PumpingWitness> infiniteAmbiguityWitness(const Nfa& nfa) {
    const std::size_t n = nfa.stateCount();
    const std::size_t g = nfa.symbolCount;

    // Deduplicated successor sets per (state, symbol).
    std::vector<std::vector<State>> adj(n * g);
    for (State q = 0; q < n; ++q) {
        for (Symbol s = 0; s < g; ++s) {
            std::vector<State> targets;
            for (const NfaEdge& e : nfa.edges(q, s)) targets.push_back(e.to);
            std::sort(targets.begin(), targets.end());
            targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
            adj[q * g + s] = std::move(targets);
        }
    }

    // Reachability closure and the states lying on a nonempty cycle; only
    // cyclic p and q with q reachable from p can carry the pattern, and a
    // triple (x, y, z) is worth expanding only while x can still return to p
    // and y, z can still reach q.
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (State from = 0; from < n; ++from) {
        std::deque<State> work{from};
        reach[from][from] = true;
        while (!work.empty()) {
            State q = work.front();
            work.pop_front();
            for (Symbol s = 0; s < g; ++s) {
                for (State t : adj[q * g + s]) {
                    if (!reach[from][t]) {
                        reach[from][t] = true;
                        work.push_back(t);
                    }
                }
            }
        }
    }
    std::vector<bool> cyclic(n, false);
    for (State p = 0; p < n; ++p) {
        for (Symbol s = 0; s < g && !cyclic[p]; ++s) {
            for (State t : adj[p * g + s]) {
                if (reach[t][p]) {
                    cyclic[p] = true;
                    break;
                }
            }
        }
    }

    std::optional<PumpingWitness> best;
    auto better = [&](const PumpingWitness& w) {
        if (!best) return true;
        if (w.word.size() != best->word.size()) return w.word.size() < best->word.size();
        if (w.word != best->word) return w.word < best->word;
        if (w.p != best->p) return w.p < best->p;
        return w.q < best->q;
    };

    // For each surviving ordered state pair, search the synchronized triple
    // product for a path from (p, p, q) to (p, q, q); breadth-first discovery
    // yields the shortlex-least pumping word for that pair.
    for (State p = 0; p < n; ++p) {
        if (!cyclic[p]) continue;
        for (State q = 0; q < n; ++q) {
            if (p == q || !cyclic[q] || !reach[p][q]) continue;
            auto enc = [&](State x, State y, State z) { return (x * n + y) * n + z; };
            const std::size_t source = enc(p, p, q);
            const std::size_t goal = enc(p, q, q);
            std::unordered_map<std::size_t, std::pair<std::size_t, Symbol>> parent;
            parent.emplace(source, std::make_pair(source, kNoSymbol));
            std::deque<std::size_t> work{source};
            bool found = false;
            while (!work.empty() && !found) {
                std::size_t cur = work.front();
                work.pop_front();
                const State x = cur / (n * n), y = (cur / n) % n, z = cur % n;
                for (Symbol s = 0; s < g && !found; ++s) {
                    for (State xt : adj[x * g + s]) {
                        if (!reach[xt][p]) continue;
                        for (State yt : adj[y * g + s]) {
                            if (!reach[yt][q]) continue;
                            for (State zt : adj[z * g + s]) {
                                if (!reach[zt][q]) continue;
                                std::size_t nxt = enc(xt, yt, zt);
                                if (parent.count(nxt)) continue;
                                parent.emplace(nxt, std::make_pair(cur, s));
                                if (nxt == goal) {
                                    found = true;
                                    break;
                                }
                                work.push_back(nxt);
                            }
                            if (found) break;
                        }
                        if (found) break;
                    }
                }
            }
            if (!found) continue;
            Word v;
            for (std::size_t cur = goal; cur != source;) {
                auto [prev, s] = parent.at(cur);
                v.push_back(s);
                cur = prev;
            }
            std::reverse(v.begin(), v.end());
            PumpingWitness w{p, q, std::move(v)};
            if (better(w)) best = std::move(w);
        }
    }
    return best;
}

BranchingVerdict decideBoundedBranching(const TwoTapeDfa& validatedRel,
                                        std::size_t maxStates) {
    TwoTapeDfa minimal = minimize(validatedRel);
    StateClassification cls = classifyStates(minimal);
    Nfa decision = decisionAutomaton(minimal, cls, maxStates);
    if (auto witness = infiniteAmbiguityWitness(decision)) {
        BranchingVerdict verdict;
        verdict.kind = BranchingVerdict::Kind::Unbounded;
        verdict.witness = std::move(witness);
        return verdict;
    }
    // Bounded: the closure terminates and its largest matrix dimension is the
    // exact clique bound.
    ClosureAutomaton closure = buildClosureUnchecked(minimal, maxStates);
    BranchingVerdict verdict;
    verdict.kind = BranchingVerdict::Kind::Bounded;
    verdict.bound = closure.maxDimension;
    return verdict;
}

}  // namespace infoquot
