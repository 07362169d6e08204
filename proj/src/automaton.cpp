#include "infoquot/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

namespace infoquot {

namespace {

void requireTotal(const Dfa& dfa, const char* op) {
    if (!dfa.total()) {
        throw InputError(std::string(op) + " requires a complete automaton");
    }
}

void requireValidSymbol(std::size_t symbolCount, Symbol s) {
    if (s >= symbolCount) {
        throw InputError("unknown symbol id " + std::to_string(s));
    }
}

std::string composeName(const Dfa& a, State qa, const Dfa& b, State qb) {
    return a.stateName(qa) + "," + b.stateName(qb);
}

}  // namespace

bool Dfa::total() const noexcept {
    for (State t : transitions) {
        if (t == kNoState) return false;
    }
    return true;
}

std::string Dfa::stateName(State q) const {
    if (q < stateNames.size() && !stateNames[q].empty()) return stateNames[q];
    return "s" + std::to_string(q);
}

std::string MealyMachine::stateName(State q) const {
    if (q < stateNames.size() && !stateNames[q].empty()) return stateNames[q];
    return "s" + std::to_string(q);
}

Word zipWords(const Word& first, const Word& second, std::size_t base) {
    if (first.size() != second.size()) {
        throw InputError("tape length mismatch: " + std::to_string(first.size()) +
                         " vs " + std::to_string(second.size()));
    }
    Word out;
    out.reserve(first.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        requireValidSymbol(base, first[i]);
        requireValidSymbol(base, second[i]);
        out.push_back(pairSymbol(first[i], second[i], base));
    }
    return out;
}

PairWord unzipWord(const Word& pairWord, std::size_t base) {
    PairWord out;
    out.first.reserve(pairWord.size());
    out.second.reserve(pairWord.size());
    for (Symbol s : pairWord) {
        out.first.push_back(pairFirst(s, base));
        out.second.push_back(pairSecond(s, base));
    }
    return out;
}

State runFrom(const Dfa& dfa, State from, const Word& word) {
    if (from >= dfa.stateCount()) {
        throw InputError("state id " + std::to_string(from) + " out of range");
    }
    State q = from;
    for (Symbol s : word) {
        requireValidSymbol(dfa.symbolCount, s);
        q = dfa.next(q, s);
        if (q == kNoState) {
            throw InputError("run hit a hole of a partial automaton");
        }
    }
    return q;
}

State run(const Dfa& dfa, const Word& word) { return runFrom(dfa, dfa.initial, word); }

bool accepts(const Dfa& dfa, const Word& word) { return dfa.accepting[run(dfa, word)]; }

bool acceptsPair(const TwoTapeDfa& rel, const Word& first, const Word& second) {
    return accepts(rel.dfa, zipWords(first, second, rel.base.size()));
}

bool nfaAccepts(const Nfa& nfa, const Word& word) {
    std::vector<bool> cur(nfa.stateCount(), false);
    cur[nfa.initial] = true;
    for (Symbol s : word) {
        requireValidSymbol(nfa.symbolCount, s);
        std::vector<bool> nxt(nfa.stateCount(), false);
        for (State q = 0; q < nfa.stateCount(); ++q) {
            if (!cur[q]) continue;
            for (const NfaEdge& e : nfa.edges(q, s)) nxt[e.to] = true;
        }
        cur = std::move(nxt);
    }
    for (State q = 0; q < nfa.stateCount(); ++q) {
        if (cur[q] && nfa.accepting[q]) return true;
    }
    return false;
}

Word observationHistory(const MealyMachine& m, const Word& word) {
    if (word.empty()) {
        throw InputError("observation history is defined for nonempty words only");
    }
    Word out;
    out.reserve(word.size());
    State q = m.initial;
    for (Symbol s : word) {
        requireValidSymbol(m.input.size(), s);
        out.push_back(m.outputOf(q, s));
        q = m.next(q, s);
    }
    return out;
}

Dfa underlyingSemiAutomaton(const MealyMachine& m) {
    Dfa dfa;
    dfa.symbolCount = m.input.size();
    dfa.initial = m.initial;
    dfa.accepting.assign(m.stateCount(), true);
    dfa.transitions = m.transitions;
    dfa.stateNames = m.stateNames;
    return dfa;
}

Dfa synchronisedProduct(const Dfa& a, const Dfa& b) {
    if (a.symbolCount != b.symbolCount) {
        throw InputError("synchronised product requires matching alphabets");
    }
    requireTotal(a, "synchronisedProduct");
    requireTotal(b, "synchronisedProduct");
    const std::size_t n1 = a.stateCount(), n2 = b.stateCount();
    Dfa out;
    out.symbolCount = a.symbolCount;
    out.initial = a.initial * n2 + b.initial;
    out.accepting.resize(n1 * n2);
    out.transitions.resize(n1 * n2 * out.symbolCount);
    out.stateNames.resize(n1 * n2);
    for (State q1 = 0; q1 < n1; ++q1) {
        for (State q2 = 0; q2 < n2; ++q2) {
            const State q = q1 * n2 + q2;
            out.accepting[q] = a.accepting[q1] && b.accepting[q2];
            out.stateNames[q] = composeName(a, q1, b, q2);
            for (Symbol s = 0; s < out.symbolCount; ++s) {
                out.transitions[q * out.symbolCount + s] =
                    a.next(q1, s) * n2 + b.next(q2, s);
            }
        }
    }
    return out;
}

Dfa parallelProduct(const Dfa& a, const Dfa& b) {
    requireTotal(a, "parallelProduct");
    requireTotal(b, "parallelProduct");
    const std::size_t n1 = a.stateCount(), n2 = b.stateCount();
    const std::size_t s1 = a.symbolCount, s2 = b.symbolCount;
    Dfa out;
    out.symbolCount = s1 * s2;
    out.initial = a.initial * n2 + b.initial;
    out.accepting.resize(n1 * n2);
    out.transitions.resize(n1 * n2 * out.symbolCount);
    out.stateNames.resize(n1 * n2);
    for (State q1 = 0; q1 < n1; ++q1) {
        for (State q2 = 0; q2 < n2; ++q2) {
            const State q = q1 * n2 + q2;
            out.accepting[q] = a.accepting[q1] && b.accepting[q2];
            out.stateNames[q] = composeName(a, q1, b, q2);
            for (Symbol c1 = 0; c1 < s1; ++c1) {
                for (Symbol c2 = 0; c2 < s2; ++c2) {
                    out.transitions[q * out.symbolCount + c1 * s2 + c2] =
                        a.next(q1, c1) * n2 + b.next(q2, c2);
                }
            }
        }
    }
    return out;
}

Dfa determinize(const Nfa& nfa, std::size_t maxStates) {
    using Subset = std::vector<State>;
    std::map<Subset, State> ids;
    std::vector<Subset> subsets;
    auto intern = [&](Subset s) -> State {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        if (subsets.size() >= maxStates) {
            throw ResourceLimitError(
                "determinization exceeded the state budget of " + std::to_string(maxStates),
                maxStates);
        }
        State id = subsets.size();
        ids.emplace(s, id);
        subsets.push_back(std::move(s));
        return id;
    };

    Dfa out;
    out.symbolCount = nfa.symbolCount;
    out.initial = intern({nfa.initial});
    std::deque<State> work{out.initial};
    while (!work.empty()) {
        State id = work.front();
        work.pop_front();
        const Subset cur = subsets[id];
        for (Symbol s = 0; s < nfa.symbolCount; ++s) {
            std::set<State> targets;
            for (State q : cur) {
                for (const NfaEdge& e : nfa.edges(q, s)) targets.insert(e.to);
            }
            Subset nxt(targets.begin(), targets.end());
            const std::size_t before = subsets.size();
            State nid = intern(std::move(nxt));
            out.transitions.resize(subsets.size() * out.symbolCount, kNoState);
            out.transitions[id * out.symbolCount + s] = nid;
            if (subsets.size() > before) work.push_back(nid);
        }
    }
    out.accepting.assign(subsets.size(), false);
    for (State id = 0; id < subsets.size(); ++id) {
        for (State q : subsets[id]) {
            if (nfa.accepting[q]) {
                out.accepting[id] = true;
                break;
            }
        }
    }
    out.transitions.resize(subsets.size() * out.symbolCount, kNoState);
    return out;
}

Dfa complement(const Dfa& dfa) {
    requireTotal(dfa, "complement");
    Dfa out = dfa;
    for (std::size_t q = 0; q < out.accepting.size(); ++q) {
        out.accepting[q] = !out.accepting[q];
    }
    return out;
}

namespace {

std::vector<bool> reachableStates(const Dfa& dfa) {
    std::vector<bool> seen(dfa.stateCount(), false);
    std::deque<State> work{dfa.initial};
    seen[dfa.initial] = true;
    while (!work.empty()) {
        State q = work.front();
        work.pop_front();
        for (Symbol s = 0; s < dfa.symbolCount; ++s) {
            State t = dfa.next(q, s);
            if (t != kNoState && !seen[t]) {
                seen[t] = true;
                work.push_back(t);
            }
        }
    }
    return seen;
}

std::vector<bool> coaccessibleStates(const Dfa& dfa) {
    std::vector<std::vector<State>> rev(dfa.stateCount());
    for (State q = 0; q < dfa.stateCount(); ++q) {
        for (Symbol s = 0; s < dfa.symbolCount; ++s) {
            State t = dfa.next(q, s);
            if (t != kNoState) rev[t].push_back(q);
        }
    }
    std::vector<bool> co(dfa.stateCount(), false);
    std::deque<State> work;
    for (State q = 0; q < dfa.stateCount(); ++q) {
        if (dfa.accepting[q]) {
            co[q] = true;
            work.push_back(q);
        }
    }
    while (!work.empty()) {
        State q = work.front();
        work.pop_front();
        for (State p : rev[q]) {
            if (!co[p]) {
                co[p] = true;
                work.push_back(p);
            }
        }
    }
    return co;
}

}  // namespace

Dfa trim(const Dfa& dfa) {
    std::vector<bool> reach = reachableStates(dfa);
    std::vector<bool> co = coaccessibleStates(dfa);
    std::vector<bool> useful(dfa.stateCount());
    for (State q = 0; q < dfa.stateCount(); ++q) useful[q] = reach[q] && co[q];

    std::vector<State> remap(dfa.stateCount(), kNoState);
    std::vector<State> order;
    // Breadth-first numbering over the useful part; the initial state is kept
    // even when useless so the result stays a well-formed automaton.
    remap[dfa.initial] = 0;
    order.push_back(dfa.initial);
    std::deque<State> work{dfa.initial};
    while (!work.empty()) {
        State q = work.front();
        work.pop_front();
        if (!useful[q]) continue;
        for (Symbol s = 0; s < dfa.symbolCount; ++s) {
            State t = dfa.next(q, s);
            if (t == kNoState || !useful[t] || remap[t] != kNoState) continue;
            remap[t] = order.size();
            order.push_back(t);
            work.push_back(t);
        }
    }

    Dfa out;
    out.symbolCount = dfa.symbolCount;
    out.initial = 0;
    out.accepting.resize(order.size());
    out.transitions.assign(order.size() * dfa.symbolCount, kNoState);
    out.stateNames.resize(order.size());
    for (State nq = 0; nq < order.size(); ++nq) {
        State q = order[nq];
        out.accepting[nq] = dfa.accepting[q];
        out.stateNames[nq] = dfa.stateName(q);
        if (!useful[q]) continue;
        for (Symbol s = 0; s < dfa.symbolCount; ++s) {
            State t = dfa.next(q, s);
            if (t != kNoState && useful[t]) {
                out.transitions[nq * dfa.symbolCount + s] = remap[t];
            }
        }
    }
    return out;
}

Nfa trim(const Nfa& nfa) {
    const std::size_t n = nfa.stateCount();
    std::vector<bool> reach(n, false);
    std::deque<State> work{nfa.initial};
    reach[nfa.initial] = true;
    while (!work.empty()) {
        State q = work.front();
        work.pop_front();
        for (Symbol s = 0; s < nfa.symbolCount; ++s) {
            for (const NfaEdge& e : nfa.edges(q, s)) {
                if (!reach[e.to]) {
                    reach[e.to] = true;
                    work.push_back(e.to);
                }
            }
        }
    }
    std::vector<std::vector<State>> rev(n);
    for (State q = 0; q < n; ++q) {
        for (Symbol s = 0; s < nfa.symbolCount; ++s) {
            for (const NfaEdge& e : nfa.edges(q, s)) rev[e.to].push_back(q);
        }
    }
    std::vector<bool> co(n, false);
    for (State q = 0; q < n; ++q) {
        if (nfa.accepting[q]) {
            co[q] = true;
            work.push_back(q);
        }
    }
    while (!work.empty()) {
        State q = work.front();
        work.pop_front();
        for (State p : rev[q]) {
            if (!co[p]) {
                co[p] = true;
                work.push_back(p);
            }
        }
    }
    std::vector<bool> useful(n);
    for (State q = 0; q < n; ++q) useful[q] = reach[q] && co[q];

    std::vector<State> remap(n, kNoState);
    std::vector<State> order;
    remap[nfa.initial] = 0;
    order.push_back(nfa.initial);
    std::deque<State> bfs{nfa.initial};
    while (!bfs.empty()) {
        State q = bfs.front();
        bfs.pop_front();
        if (!useful[q]) continue;
        for (Symbol s = 0; s < nfa.symbolCount; ++s) {
            for (const NfaEdge& e : nfa.edges(q, s)) {
                if (!useful[e.to] || remap[e.to] != kNoState) continue;
                remap[e.to] = order.size();
                order.push_back(e.to);
                bfs.push_back(e.to);
            }
        }
    }

    Nfa out;
    out.symbolCount = nfa.symbolCount;
    out.initial = 0;
    out.accepting.resize(order.size());
    out.transitions.assign(order.size() * nfa.symbolCount, {});
    for (State nq = 0; nq < order.size(); ++nq) {
        State q = order[nq];
        out.accepting[nq] = nfa.accepting[q];
        if (!useful[q]) continue;
        for (Symbol s = 0; s < nfa.symbolCount; ++s) {
            std::vector<NfaEdge> kept;
            for (const NfaEdge& e : nfa.edges(q, s)) {
                if (useful[e.to]) kept.push_back({remap[e.to], e.decoration});
            }
            std::sort(kept.begin(), kept.end());
            out.transitions[nq * nfa.symbolCount + s] = std::move(kept);
        }
    }
    return out;
}

Dfa completeToSink(const Dfa& dfa, const std::string& sinkName) {
    if (dfa.total()) return dfa;
    Dfa out = dfa;
    const State sink = out.stateCount();
    out.accepting.push_back(false);
    std::string name = sinkName;
    for (int i = 2; std::find(out.stateNames.begin(), out.stateNames.end(), name) !=
                    out.stateNames.end();
         ++i) {
        name = sinkName + std::to_string(i);
    }
    out.stateNames.resize(out.accepting.size(), "");
    out.stateNames[sink] = name;
    out.transitions.resize(out.accepting.size() * out.symbolCount, kNoState);
    for (State& t : out.transitions) {
        if (t == kNoState) t = sink;
    }
    return out;
}

Dfa minimize(const Dfa& dfa) {
    requireTotal(dfa, "minimize");

    // Restrict to the reachable part first, numbered in discovery order.
    std::vector<State> order;
    std::vector<State> remap(dfa.stateCount(), kNoState);
    remap[dfa.initial] = 0;
    order.push_back(dfa.initial);
    std::deque<State> work{dfa.initial};
    while (!work.empty()) {
        State q = work.front();
        work.pop_front();
        for (Symbol s = 0; s < dfa.symbolCount; ++s) {
            State t = dfa.next(q, s);
            if (remap[t] == kNoState) {
                remap[t] = order.size();
                order.push_back(t);
                work.push_back(t);
            }
        }
    }
    const std::size_t n = order.size();
    std::vector<State> trans(n * dfa.symbolCount);
    std::vector<bool> acc(n);
    std::vector<std::string> names(n);
    for (State q = 0; q < n; ++q) {
        acc[q] = dfa.accepting[order[q]];
        names[q] = dfa.stateName(order[q]);
        for (Symbol s = 0; s < dfa.symbolCount; ++s) {
            trans[q * dfa.symbolCount + s] = remap[dfa.next(order[q], s)];
        }
    }

    // Partition refinement by transition signatures.
    std::vector<std::size_t> block(n);
    for (State q = 0; q < n; ++q) block[q] = acc[q] ? 0 : 1;
    std::size_t blockCount = 2;
    for (;;) {
        std::map<std::vector<std::size_t>, std::size_t> sigIds;
        std::vector<std::size_t> nextBlock(n);
        for (State q = 0; q < n; ++q) {
            std::vector<std::size_t> sig;
            sig.reserve(dfa.symbolCount + 1);
            sig.push_back(block[q]);
            for (Symbol s = 0; s < dfa.symbolCount; ++s) {
                sig.push_back(block[trans[q * dfa.symbolCount + s]]);
            }
            auto [it, fresh] = sigIds.emplace(std::move(sig), sigIds.size());
            nextBlock[q] = it->second;
            (void)fresh;
        }
        if (sigIds.size() == blockCount) {
            block = std::move(nextBlock);
            break;
        }
        blockCount = sigIds.size();
        block = std::move(nextBlock);
    }

    // Representative per block: the member with the least id in the reachable
    // numbering; merged states keep that member's name.
    std::vector<State> repOf(blockCount, kNoState);
    for (State q = 0; q < n; ++q) {
        if (repOf[block[q]] == kNoState) repOf[block[q]] = q;
    }

    // Quotient, renumbered breadth-first from the initial block.
    std::vector<State> blockId(blockCount, kNoState);
    std::vector<std::size_t> blockOrder;
    blockId[block[0]] = 0;
    blockOrder.push_back(block[0]);
    std::deque<std::size_t> bwork{block[0]};
    while (!bwork.empty()) {
        std::size_t b = bwork.front();
        bwork.pop_front();
        State rep = repOf[b];
        for (Symbol s = 0; s < dfa.symbolCount; ++s) {
            std::size_t tb = block[trans[rep * dfa.symbolCount + s]];
            if (blockId[tb] == kNoState) {
                blockId[tb] = blockOrder.size();
                blockOrder.push_back(tb);
                bwork.push_back(tb);
            }
        }
    }

    Dfa out;
    out.symbolCount = dfa.symbolCount;
    out.initial = 0;
    out.accepting.resize(blockOrder.size());
    out.transitions.resize(blockOrder.size() * dfa.symbolCount);
    out.stateNames.resize(blockOrder.size());
    for (std::size_t nb = 0; nb < blockOrder.size(); ++nb) {
        State rep = repOf[blockOrder[nb]];
        out.accepting[nb] = acc[rep];
        out.stateNames[nb] = names[rep];
        for (Symbol s = 0; s < dfa.symbolCount; ++s) {
            out.transitions[nb * dfa.symbolCount + s] =
                blockId[block[trans[rep * dfa.symbolCount + s]]];
        }
    }
    return out;
}

TwoTapeDfa minimize(const TwoTapeDfa& rel) { return {rel.base, minimize(rel.dfa)}; }

TwoTapeDfa transpose(const TwoTapeDfa& rel) {
    const std::size_t g = rel.base.size();
    TwoTapeDfa out{rel.base, rel.dfa};
    for (State q = 0; q < rel.dfa.stateCount(); ++q) {
        for (Symbol a = 0; a < g; ++a) {
            for (Symbol b = 0; b < g; ++b) {
                out.dfa.transitions[q * out.dfa.symbolCount + pairSymbol(a, b, g)] =
                    rel.dfa.next(q, pairSymbol(b, a, g));
            }
        }
    }
    return out;
}

namespace {

Nfa projectTape(const TwoTapeDfa& rel, bool keepFirst) {
    const std::size_t g = rel.base.size();
    Nfa out;
    out.symbolCount = g;
    out.initial = rel.dfa.initial;
    out.accepting = rel.dfa.accepting;
    out.transitions.assign(rel.dfa.stateCount() * g, {});
    for (State q = 0; q < rel.dfa.stateCount(); ++q) {
        for (Symbol a = 0; a < g; ++a) {
            for (Symbol b = 0; b < g; ++b) {
                State t = rel.dfa.next(q, pairSymbol(a, b, g));
                if (t == kNoState) continue;
                Symbol kept = keepFirst ? a : b;
                Symbol dropped = keepFirst ? b : a;
                out.transitions[q * g + kept].push_back({t, dropped});
            }
        }
    }
    for (auto& edges : out.transitions) std::sort(edges.begin(), edges.end());
    return out;
}

}  // namespace

Nfa projectFirst(const TwoTapeDfa& rel) { return projectTape(rel, true); }
Nfa projectSecond(const TwoTapeDfa& rel) { return projectTape(rel, false); }

TwoTapeDfa compose(const TwoTapeDfa& a, const TwoTapeDfa& b, std::size_t maxStates) {
    if (a.base != b.base) {
        throw InputError("compose requires relations over the same base alphabet");
    }
    const std::size_t g = a.base.size();
    const std::size_t n2 = b.dfa.stateCount();
    requireTotal(a.dfa, "compose");
    requireTotal(b.dfa, "compose");

    // Subset construction over pair states (q1, q2): q1 tracks (t, r) on the
    // first relation, q2 tracks (r, p) on the second, r being guessed.
    using Subset = std::vector<State>;  // encoded q1 * n2 + q2
    std::map<Subset, State> ids;
    std::vector<Subset> subsets;
    auto intern = [&](Subset s) -> State {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        if (subsets.size() >= maxStates) {
            throw ResourceLimitError(
                "composition exceeded the state budget of " + std::to_string(maxStates),
                maxStates);
        }
        State id = subsets.size();
        ids.emplace(s, id);
        subsets.push_back(std::move(s));
        return id;
    };

    Dfa out;
    out.symbolCount = g * g;
    out.initial = intern({a.dfa.initial * n2 + b.dfa.initial});
    std::deque<State> work{out.initial};
    while (!work.empty()) {
        State id = work.front();
        work.pop_front();
        const Subset cur = subsets[id];
        for (Symbol t = 0; t < g; ++t) {
            for (Symbol p = 0; p < g; ++p) {
                std::set<State> targets;
                for (State enc : cur) {
                    State q1 = enc / n2, q2 = enc % n2;
                    for (Symbol r = 0; r < g; ++r) {
                        State t1 = a.dfa.next(q1, pairSymbol(t, r, g));
                        State t2 = b.dfa.next(q2, pairSymbol(r, p, g));
                        targets.insert(t1 * n2 + t2);
                    }
                }
                Subset nxt(targets.begin(), targets.end());
                const std::size_t before = subsets.size();
                State nid = intern(std::move(nxt));
                out.transitions.resize(subsets.size() * out.symbolCount, kNoState);
                out.transitions[id * out.symbolCount + pairSymbol(t, p, g)] = nid;
                if (subsets.size() > before) work.push_back(nid);
            }
        }
    }
    out.accepting.assign(subsets.size(), false);
    for (State id = 0; id < subsets.size(); ++id) {
        for (State enc : subsets[id]) {
            if (a.dfa.accepting[enc / n2] && b.dfa.accepting[enc % n2]) {
                out.accepting[id] = true;
                break;
            }
        }
    }
    out.transitions.resize(subsets.size() * out.symbolCount, kNoState);
    return {a.base, out};
}

namespace {

// Reachable part of the product of two complete DFAs, states in breadth-first
// discovery order. targetOut[q] is set by `pred` on the component acceptance.
template <typename Pred>
Dfa reachableProduct(const Dfa& a, const Dfa& b, std::vector<bool>& targetOut,
                     Pred&& pred) {
    if (a.symbolCount != b.symbolCount) {
        throw InputError("product requires matching alphabets");
    }
    const std::size_t n2 = b.stateCount();
    std::unordered_map<std::size_t, State> ids;
    std::vector<std::size_t> pairs;
    auto intern = [&](std::size_t enc) -> State {
        auto it = ids.find(enc);
        if (it != ids.end()) return it->second;
        State id = pairs.size();
        ids.emplace(enc, id);
        pairs.push_back(enc);
        return id;
    };
    Dfa out;
    out.symbolCount = a.symbolCount;
    out.initial = intern(a.initial * n2 + b.initial);
    std::deque<State> work{out.initial};
    while (!work.empty()) {
        State id = work.front();
        work.pop_front();
        const std::size_t enc = pairs[id];
        const State q1 = enc / n2, q2 = enc % n2;
        for (Symbol s = 0; s < out.symbolCount; ++s) {
            const std::size_t before = pairs.size();
            State nid = intern(a.next(q1, s) * n2 + b.next(q2, s));
            out.transitions.resize(pairs.size() * out.symbolCount, kNoState);
            out.transitions[id * out.symbolCount + s] = nid;
            if (pairs.size() > before) work.push_back(nid);
        }
    }
    out.accepting.assign(pairs.size(), false);
    targetOut.assign(pairs.size(), false);
    for (State id = 0; id < pairs.size(); ++id) {
        const State q1 = pairs[id] / n2, q2 = pairs[id] % n2;
        out.accepting[id] = a.accepting[q1] && b.accepting[q2];
        targetOut[id] = pred(a.accepting[q1], b.accepting[q2]);
    }
    out.transitions.resize(pairs.size() * out.symbolCount, kNoState);
    return out;
}

}  // namespace

bool languageEquivalent(const Dfa& a, const Dfa& b) {
    requireTotal(a, "languageEquivalent");
    requireTotal(b, "languageEquivalent");
    std::vector<bool> target;
    Dfa prod = reachableProduct(a, b, target, [](bool x, bool y) { return x != y; });
    for (State q = 0; q < prod.stateCount(); ++q) {
        if (target[q]) return false;
    }
    return true;
}

bool languageEquivalent(const TwoTapeDfa& a, const TwoTapeDfa& b) {
    if (a.base != b.base) {
        throw InputError("equivalence requires the same base alphabet");
    }
    return languageEquivalent(a.dfa, b.dfa);
}

std::optional<Word> distinguishingWord(const Dfa& a, const Dfa& b) {
    requireTotal(a, "distinguishingWord");
    requireTotal(b, "distinguishingWord");
    std::vector<bool> target;
    Dfa prod = reachableProduct(a, b, target, [](bool x, bool y) { return x != y; });
    return leastWordTo(prod, target);
}

std::optional<PairWord> distinguishingPair(const TwoTapeDfa& a, const TwoTapeDfa& b) {
    if (a.base != b.base) {
        throw InputError("equivalence requires the same base alphabet");
    }
    std::vector<bool> target;
    Dfa prod =
        reachableProduct(a.dfa, b.dfa, target, [](bool x, bool y) { return x != y; });
    return leastPairWordTo(prod, a.base.size(), target);
}

std::optional<Word> leastWordTo(const Dfa& dfa, const std::vector<bool>& target) {
    // Breadth-first discovery with declaration-order expansion visits states
    // in shortlex order of their least witness word.
    std::vector<State> parent(dfa.stateCount(), kNoState);
    std::vector<Symbol> via(dfa.stateCount(), kNoSymbol);
    std::vector<bool> seen(dfa.stateCount(), false);
    std::deque<State> work{dfa.initial};
    seen[dfa.initial] = true;
    auto build = [&](State q) {
        Word w;
        while (q != dfa.initial || via[q] != kNoSymbol) {
            w.push_back(via[q]);
            q = parent[q];
            if (w.size() > dfa.stateCount()) break;  // cycle guard
        }
        std::reverse(w.begin(), w.end());
        return w;
    };
    if (target[dfa.initial]) return Word{};
    while (!work.empty()) {
        State q = work.front();
        work.pop_front();
        for (Symbol s = 0; s < dfa.symbolCount; ++s) {
            State t = dfa.next(q, s);
            if (t == kNoState || seen[t]) continue;
            seen[t] = true;
            parent[t] = q;
            via[t] = s;
            if (target[t]) return build(t);
            work.push_back(t);
        }
    }
    return std::nullopt;
}

std::optional<PairWord> leastPairWordTo(const Dfa& pairDfa, std::size_t base,
                                        const std::vector<bool>& target) {
    if (target[pairDfa.initial]) return PairWord{};

    // Shortest length to any target state.
    std::vector<std::size_t> dist(pairDfa.stateCount(), static_cast<std::size_t>(-1));
    dist[pairDfa.initial] = 0;
    std::deque<State> work{pairDfa.initial};
    std::size_t best = static_cast<std::size_t>(-1);
    while (!work.empty()) {
        State q = work.front();
        work.pop_front();
        if (best != static_cast<std::size_t>(-1) && dist[q] >= best) continue;
        for (Symbol s = 0; s < pairDfa.symbolCount; ++s) {
            State t = pairDfa.next(q, s);
            if (t == kNoState || dist[t] != static_cast<std::size_t>(-1)) continue;
            dist[t] = dist[q] + 1;
            if (target[t] && dist[t] < best) best = dist[t];
            work.push_back(t);
        }
    }
    if (best == static_cast<std::size_t>(-1)) return std::nullopt;
    const std::size_t len = best;

    // alive[t]: states from which a target is reachable in exactly len-t steps.
    std::vector<std::vector<bool>> alive(len + 1,
                                         std::vector<bool>(pairDfa.stateCount(), false));
    alive[len] = target;
    for (std::size_t t = len; t-- > 0;) {
        for (State q = 0; q < pairDfa.stateCount(); ++q) {
            for (Symbol s = 0; s < pairDfa.symbolCount && !alive[t][q]; ++s) {
                State to = pairDfa.next(q, s);
                if (to != kNoState && alive[t + 1][to]) alive[t][q] = true;
            }
        }
    }

    // First pass: minimize the first tape, tracking all states reachable with
    // the committed first-tape prefix and an arbitrary second tape.
    Word firstTape;
    std::vector<bool> cur(pairDfa.stateCount(), false);
    cur[pairDfa.initial] = true;
    for (std::size_t t = 0; t < len; ++t) {
        for (Symbol a = 0; a < base; ++a) {
            std::vector<bool> nxt(pairDfa.stateCount(), false);
            bool any = false;
            for (State q = 0; q < pairDfa.stateCount(); ++q) {
                if (!cur[q]) continue;
                for (Symbol b = 0; b < base; ++b) {
                    State to = pairDfa.next(q, pairSymbol(a, b, base));
                    if (to != kNoState && alive[t + 1][to]) {
                        nxt[to] = true;
                        any = true;
                    }
                }
            }
            if (any) {
                firstTape.push_back(a);
                cur = std::move(nxt);
                break;
            }
        }
    }

    // Second pass: with the first tape fixed, recompute the alive levels and
    // pick the least feasible second-tape symbol at each step.
    std::vector<std::vector<bool>> aliveFixed(
        len + 1, std::vector<bool>(pairDfa.stateCount(), false));
    aliveFixed[len] = target;
    for (std::size_t t = len; t-- > 0;) {
        for (State q = 0; q < pairDfa.stateCount(); ++q) {
            for (Symbol b = 0; b < base && !aliveFixed[t][q]; ++b) {
                State to = pairDfa.next(q, pairSymbol(firstTape[t], b, base));
                if (to != kNoState && aliveFixed[t + 1][to]) aliveFixed[t][q] = true;
            }
        }
    }
    Word secondTape;
    State q = pairDfa.initial;
    for (std::size_t t = 0; t < len; ++t) {
        for (Symbol b = 0; b < base; ++b) {
            State to = pairDfa.next(q, pairSymbol(firstTape[t], b, base));
            if (to != kNoState && aliveFixed[t + 1][to]) {
                secondTape.push_back(b);
                q = to;
                break;
            }
        }
    }
    if (secondTape.size() != len) {
        throw InternalError("pair witness search lost the target");
    }
    return PairWord{std::move(firstTape), std::move(secondTape)};
}

}  // namespace infoquot
