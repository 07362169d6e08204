#include "infoquot/relation_check.hpp"

#include <deque>
#include <unordered_map>

namespace infoquot {

TwoTapeDfa mealyToRelation(const MealyMachine& m) {
    const std::size_t g = m.input.size();
    const std::size_t n = m.stateCount();

    std::unordered_map<std::size_t, State> ids;
    std::vector<std::size_t> pairs;  // encoded p * n + p'
    auto intern = [&](std::size_t enc) -> State {
        auto it = ids.find(enc);
        if (it != ids.end()) return it->second;
        State id = pairs.size();
        ids.emplace(enc, id);
        pairs.push_back(enc);
        return id;
    };

    Dfa out;
    out.symbolCount = g * g;
    out.initial = intern(m.initial * n + m.initial);
    bool needSink = false;
    std::deque<State> work{out.initial};
    while (!work.empty()) {
        State id = work.front();
        work.pop_front();
        const State p1 = pairs[id] / n, p2 = pairs[id] % n;
        for (Symbol a = 0; a < g; ++a) {
            for (Symbol b = 0; b < g; ++b) {
                State target = kNoState;  // stands for the sink until it gets an id
                if (m.outputOf(p1, a) == m.outputOf(p2, b)) {
                    const std::size_t before = pairs.size();
                    target = intern(m.next(p1, a) * n + m.next(p2, b));
                    if (pairs.size() > before) work.push_back(target);
                } else {
                    needSink = true;
                }
                out.transitions.resize(pairs.size() * out.symbolCount, kNoState);
                out.transitions[id * out.symbolCount + pairSymbol(a, b, g)] = target;
            }
        }
    }
    const std::size_t reachable = pairs.size();
    const std::size_t total = reachable + (needSink ? 1 : 0);
    out.accepting.assign(total, true);
    out.transitions.resize(total * out.symbolCount, kNoState);
    if (needSink) {
        const State sink = reachable;
        out.accepting[sink] = false;
        for (State& t : out.transitions) {
            if (t == kNoState) t = sink;
        }
    }
    out.stateNames.resize(total);
    for (State id = 0; id < reachable; ++id) {
        out.stateNames[id] =
            m.stateName(pairs[id] / n) + "," + m.stateName(pairs[id] % n);
    }
    if (needSink) out.stateNames[reachable] = "bot";
    return {m.input, out};
}

CheckResult checkReflexive(const TwoTapeDfa& rel) {
    const std::size_t g = rel.base.size();
    const Dfa& d = rel.dfa;

    // Breadth-first walk over diagonal symbols only; discovery order is the
    // shortlex order of the diagonal witness words.
    std::vector<bool> seen(d.stateCount(), false);
    std::vector<State> parent(d.stateCount(), kNoState);
    std::vector<Symbol> via(d.stateCount(), kNoSymbol);
    std::deque<State> work{d.initial};
    seen[d.initial] = true;
    auto witness = [&](State q) {
        Word w;
        while (!(q == d.initial && via[q] == kNoSymbol)) {
            w.push_back(via[q]);
            q = parent[q];
        }
        std::reverse(w.begin(), w.end());
        return PairWord{w, w};
    };
    if (!d.accepting[d.initial]) {
        return {false, witness(d.initial)};
    }
    while (!work.empty()) {
        State q = work.front();
        work.pop_front();
        for (Symbol c = 0; c < g; ++c) {
            State t = d.next(q, pairSymbol(c, c, g));
            if (seen[t]) continue;
            seen[t] = true;
            parent[t] = q;
            via[t] = c;
            if (!d.accepting[t]) return {false, witness(t)};
            work.push_back(t);
        }
    }
    return {true, std::nullopt};
}

CheckResult checkSymmetric(const TwoTapeDfa& rel) {
    TwoTapeDfa tr = transpose(rel);
    auto cex = distinguishingPair(rel, tr);
    if (!cex) return {true, std::nullopt};
    return {false, std::move(cex)};
}

CheckResult checkTransitive(const TwoTapeDfa& rel, std::size_t maxStates) {
    TwoTapeDfa comp = compose(rel, rel, maxStates);
    // A violation is a pair accepted by the composition but rejected by the
    // relation itself; search the reachable product for one.
    std::vector<bool> target;
    const std::size_t n2 = rel.dfa.stateCount();
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
    Dfa prod;
    prod.symbolCount = rel.dfa.symbolCount;
    prod.initial = intern(comp.dfa.initial * n2 + rel.dfa.initial);
    std::deque<State> work{prod.initial};
    while (!work.empty()) {
        State id = work.front();
        work.pop_front();
        const State q1 = pairs[id] / n2, q2 = pairs[id] % n2;
        for (Symbol s = 0; s < prod.symbolCount; ++s) {
            const std::size_t before = pairs.size();
            State nid = intern(comp.dfa.next(q1, s) * n2 + rel.dfa.next(q2, s));
            prod.transitions.resize(pairs.size() * prod.symbolCount, kNoState);
            prod.transitions[id * prod.symbolCount + s] = nid;
            if (pairs.size() > before) work.push_back(nid);
        }
    }
    prod.accepting.assign(pairs.size(), false);
    target.assign(pairs.size(), false);
    for (State id = 0; id < pairs.size(); ++id) {
        target[id] = comp.dfa.accepting[pairs[id] / n2] &&
                     !rel.dfa.accepting[pairs[id] % n2];
    }
    prod.transitions.resize(pairs.size() * prod.symbolCount, kNoState);
    auto cex = leastPairWordTo(prod, rel.base.size(), target);
    if (!cex) return {true, std::nullopt};
    return {false, std::move(cex)};
}

CheckResult checkPerfectRecall(const TwoTapeDfa& rel) {
    const Dfa& d = rel.dfa;
    // Augmented automaton remembering whether the prefix before the last step
    // was accepted; a violation state accepts while that flag is down.
    Dfa aug;
    aug.symbolCount = d.symbolCount;
    const std::size_t n = d.stateCount();
    aug.accepting.assign(n * 2, false);
    aug.transitions.resize(n * 2 * d.symbolCount);
    for (State q = 0; q < n; ++q) {
        for (int f = 0; f < 2; ++f) {
            const State id = q * 2 + f;
            aug.accepting[id] = d.accepting[q];
            for (Symbol s = 0; s < d.symbolCount; ++s) {
                aug.transitions[id * d.symbolCount + s] =
                    d.next(q, s) * 2 + (d.accepting[q] ? 1 : 0);
            }
        }
    }
    // The empty word has no prefix step, so the start carries a raised flag.
    aug.initial = d.initial * 2 + 1;
    std::vector<bool> target(n * 2, false);
    for (State q = 0; q < n; ++q) target[q * 2 + 0] = d.accepting[q];
    auto cex = leastPairWordTo(aug, rel.base.size(), target);
    if (!cex) return {true, std::nullopt};
    return {false, std::move(cex)};
}

ValidationReport validate(const TwoTapeDfa& rel, std::size_t maxStates) {
    ValidationReport report;
    report.reflexive = checkReflexive(rel);
    report.symmetric = checkSymmetric(rel);
    report.transitive = checkTransitive(rel, maxStates);
    report.perfectRecall = checkPerfectRecall(rel);
    return report;
}

}  // namespace infoquot
