#include "infoquot/synthesis.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "infoquot/relation_check.hpp"

namespace infoquot {

namespace {

std::optional<State> findSink(const Dfa& d) {
    std::optional<State> sink;
    for (State q = 0; q < d.stateCount(); ++q) {
        if (d.accepting[q]) continue;
        if (sink) {
            throw InternalError(
                "expected a minimal relation automaton with one rejecting sink");
        }
        sink = q;
    }
    return sink;
}

}  // namespace

StateMatrix transform(const StateMatrix& m, const TwoTapeDfa& minimalRel) {
    const std::size_t g = minimalRel.base.size();
    StateMatrix out;
    out.dim = m.dim * g;
    out.entries.resize(out.dim * out.dim);
    for (std::size_t i = 0; i < m.dim; ++i) {
        for (std::size_t j = 0; j < m.dim; ++j) {
            const State q = m.at(i, j);
            for (Symbol a = 0; a < g; ++a) {
                for (Symbol b = 0; b < g; ++b) {
                    out.entries[(i * g + a) * out.dim + (j * g + b)] =
                        minimalRel.dfa.next(q, pairSymbol(a, b, g));
                }
            }
        }
    }
    return out;
}

MatrixIndexState successor(const StateMatrix& m, std::size_t index, Symbol move,
                           const TwoTapeDfa& minimalRel) {
    if (index < 1 || index > m.dim) {
        throw InputError("matrix index out of range");
    }
    const std::size_t g = minimalRel.base.size();
    if (move >= g) {
        throw InputError("unknown move symbol");
    }
    const std::optional<State> sink = findSink(minimalRel.dfa);

    StateMatrix n = transform(m, minimalRel);
    std::size_t j = (index - 1) * g + move;  // 0-based column of the tracked class

    // Drop every row/column whose entry in column j is the sink: those classes
    // leave the relation class of the tracked history.
    if (sink) {
        if (n.at(j, j) == *sink) {
            throw InternalError("diagonal entry fell into the sink; invalid input");
        }
        std::vector<std::size_t> keep;
        std::size_t newJ = 0;
        for (std::size_t k = 0; k < n.dim; ++k) {
            if (n.at(k, j) == *sink) continue;
            if (k == j) newJ = keep.size();
            keep.push_back(k);
        }
        StateMatrix reduced;
        reduced.dim = keep.size();
        reduced.entries.resize(reduced.dim * reduced.dim);
        for (std::size_t r = 0; r < keep.size(); ++r) {
            for (std::size_t c = 0; c < keep.size(); ++c) {
                reduced.entries[r * reduced.dim + c] = n.at(keep[r], keep[c]);
            }
        }
        n = std::move(reduced);
        j = newJ;
    }

    // Merge duplicate columns, always dropping the one at the larger position,
    // until all columns are distinct.
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t k2 = 1; k2 < n.dim && !changed; ++k2) {
            for (std::size_t k1 = 0; k1 < k2 && !changed; ++k1) {
                bool same = true;
                for (std::size_t r = 0; r < n.dim; ++r) {
                    if (n.at(r, k1) != n.at(r, k2)) {
                        same = false;
                        break;
                    }
                }
                if (!same) continue;
                StateMatrix reduced;
                reduced.dim = n.dim - 1;
                reduced.entries.resize(reduced.dim * reduced.dim);
                for (std::size_t r = 0, rr = 0; r < n.dim; ++r) {
                    if (r == k2) continue;
                    for (std::size_t c = 0, cc = 0; c < n.dim; ++c) {
                        if (c == k2) continue;
                        reduced.entries[rr * reduced.dim + cc] = n.at(r, c);
                        ++cc;
                    }
                    ++rr;
                }
                if (j == k2) {
                    j = k1;
                } else if (j > k2) {
                    --j;
                }
                n = std::move(reduced);
                changed = true;
            }
        }
    }
    return {std::move(n), j + 1};
}

ClosureAutomaton buildClosureUnchecked(const TwoTapeDfa& minimalRel,
                                       std::size_t maxStates) {
    const std::size_t g = minimalRel.base.size();
    ClosureAutomaton out;
    out.moveCount = g;

    // Deterministic interning keyed by (dim, entries, index).
    std::map<std::pair<std::vector<State>, std::size_t>, State> ids;
    auto intern = [&](const MatrixIndexState& s) -> std::pair<State, bool> {
        auto key = std::make_pair(s.matrix.entries, s.index);
        auto it = ids.find(key);
        if (it != ids.end()) return {it->second, false};
        if (out.states.size() >= maxStates) {
            throw ResourceLimitError(
                "closure exceeded the state budget of " + std::to_string(maxStates),
                maxStates);
        }
        State id = out.states.size();
        ids.emplace(std::move(key), id);
        out.states.push_back(s);
        out.maxDimension = std::max(out.maxDimension, s.matrix.dim);
        return {id, true};
    };

    MatrixIndexState init{{1, {minimalRel.dfa.initial}}, 1};
    out.initial = intern(init).first;
    std::deque<State> work{out.initial};
    while (!work.empty()) {
        State id = work.front();
        work.pop_front();
        const MatrixIndexState cur = out.states[id];
        for (Symbol move = 0; move < g; ++move) {
            MatrixIndexState nxt = successor(cur.matrix, cur.index, move, minimalRel);
            auto [nid, fresh] = intern(nxt);
            out.transitions.resize(out.states.size() * g, kNoState);
            out.transitions[id * g + move] = nid;
            if (fresh) work.push_back(nid);
        }
    }
    out.transitions.resize(out.states.size() * g, kNoState);
    return out;
}

ClosureAutomaton buildClosure(const TwoTapeDfa& minimalRel,
                              const BranchingVerdict& verdict,
                              std::size_t maxStates) {
    if (verdict.kind != BranchingVerdict::Kind::Bounded) {
        throw InputError("closure construction requires a Bounded verdict");
    }
    return buildClosureUnchecked(minimalRel, maxStates);
}

ConstraintSet generateConstraints(const ClosureAutomaton& closure,
                                  const TwoTapeDfa& minimalRel) {
    const std::size_t g = closure.moveCount;
    if (g != minimalRel.base.size()) {
        throw InputError("closure and relation disagree on the move alphabet");
    }
    const std::optional<State> sink = findSink(minimalRel.dfa);

    ConstraintSet out;
    out.variableCount = closure.states.size() * g;
    out.moveCount = g;

    std::set<std::pair<std::size_t, std::size_t>> eq, diseq;
    auto var = [&](State p, Symbol a) { return p * g + a; };

    // Reachable triples ((p1, p2), q) of the closure self-product synchronised
    // with the relation. Rejected triples stay rejected and contribute
    // nothing, so they are not expanded.
    std::set<std::tuple<State, State, State>> seen;
    std::deque<std::tuple<State, State, State>> work;
    auto push = [&](State p1, State p2, State q) {
        if (sink && q == *sink) return;
        if (seen.emplace(p1, p2, q).second) work.emplace_back(p1, p2, q);
    };
    push(closure.initial, closure.initial, minimalRel.dfa.initial);
    while (!work.empty()) {
        auto [p1, p2, q] = work.front();
        work.pop_front();
        for (Symbol a = 0; a < g; ++a) {
            for (Symbol b = 0; b < g; ++b) {
                State t = minimalRel.dfa.next(q, pairSymbol(a, b, g));
                std::size_t u = var(p1, a), v = var(p2, b);
                if (u > v) std::swap(u, v);
                if (sink && t == *sink) {
                    diseq.emplace(u, v);
                } else {
                    if (u != v) eq.emplace(u, v);
                    push(closure.next(p1, a), closure.next(p2, b), t);
                }
            }
        }
    }
    out.equalities.assign(eq.begin(), eq.end());
    out.disequalities.assign(diseq.begin(), diseq.end());
    return out;
}

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        // Smaller id wins, keeping roots deterministic.
        if (a > b) std::swap(a, b);
        parent_[b] = a;
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

ConstraintSolution solveConstraints(const ConstraintSet& constraints) {
    const std::size_t n = constraints.variableCount;

    // Contradictory pair present in both sets?
    {
        std::set<std::pair<std::size_t, std::size_t>> eqSet(
            constraints.equalities.begin(), constraints.equalities.end());
        for (const auto& d : constraints.disequalities) {
            if (d.first == d.second) {
                throw InfeasibleError("variable required to differ from itself",
                                      d, {d.first});
            }
            if (eqSet.count(d)) {
                throw InfeasibleError("pair constrained both equal and distinct", d,
                                      {d.first, d.second});
            }
        }
    }

    DisjointSets dsu(n);
    for (const auto& [u, v] : constraints.equalities) dsu.unite(u, v);

    // Verify the disequalities; on failure recover a chain of equalities
    // connecting the two variables.
    std::vector<std::vector<std::size_t>> eqAdj(n);
    for (const auto& [u, v] : constraints.equalities) {
        eqAdj[u].push_back(v);
        eqAdj[v].push_back(u);
    }
    for (const auto& d : constraints.disequalities) {
        if (dsu.find(d.first) != dsu.find(d.second)) continue;
        std::vector<std::size_t> prev(n, static_cast<std::size_t>(-1));
        std::deque<std::size_t> work{d.first};
        prev[d.first] = d.first;
        while (!work.empty()) {
            std::size_t x = work.front();
            work.pop_front();
            if (x == d.second) break;
            for (std::size_t y : eqAdj[x]) {
                if (prev[y] == static_cast<std::size_t>(-1)) {
                    prev[y] = x;
                    work.push_back(y);
                }
            }
        }
        std::vector<std::size_t> chain;
        for (std::size_t x = d.second; x != d.first; x = prev[x]) chain.push_back(x);
        chain.push_back(d.first);
        std::reverse(chain.begin(), chain.end());
        throw InfeasibleError(
            "disequality between variables merged by the equalities", d, chain);
    }

    // Classes in first-occurrence order.
    ConstraintSolution sol;
    sol.classOf.resize(n);
    std::unordered_map<std::size_t, std::size_t> classIdx;
    std::vector<std::size_t> classes;
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t root = dsu.find(v);
        auto [it, fresh] = classIdx.emplace(root, classes.size());
        if (fresh) classes.push_back(root);
        sol.classOf[v] = it->second;
    }

    // Disequality graph over classes, colored greedily with the smallest
    // feasible positive integer.
    std::vector<std::set<std::size_t>> neighbors(classes.size());
    for (const auto& [u, v] : constraints.disequalities) {
        neighbors[sol.classOf[u]].insert(sol.classOf[v]);
        neighbors[sol.classOf[v]].insert(sol.classOf[u]);
    }
    std::vector<std::size_t> color(classes.size(), 0);
    std::size_t maxColor = 0;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        std::set<std::size_t> used;
        for (std::size_t nb : neighbors[c]) {
            if (color[nb] != 0) used.insert(color[nb]);
        }
        std::size_t pick = 1;
        while (used.count(pick)) ++pick;
        color[c] = pick;
        maxColor = std::max(maxColor, pick);
    }
    sol.assignment.resize(n);
    for (std::size_t v = 0; v < n; ++v) sol.assignment[v] = color[sol.classOf[v]];
    sol.symbolCount = maxColor;
    return sol;
}

MealyMachine synthesizeMealy(const TwoTapeDfa& rel, std::size_t maxStates) {
    ValidationReport report = validate(rel, maxStates);
    if (!report.valid()) {
        std::string what = "input does not define an indistinguishability relation:";
        if (!report.reflexive.ok) what += " not reflexive;";
        if (!report.symmetric.ok) what += " not symmetric;";
        if (!report.transitive.ok) what += " not transitive;";
        if (!report.perfectRecall.ok) what += " perfect recall violated;";
        throw InputError(what);
    }

    TwoTapeDfa minimal = minimize(rel);
    StateClassification cls = classifyStates(minimal);
    Nfa decision = decisionAutomaton(minimal, cls, maxStates);
    if (auto witness = infiniteAmbiguityWitness(decision)) {
        std::string word;
        for (Symbol s : witness->word) {
            if (!word.empty()) word += " ";
            word += minimal.base.name(s);
        }
        throw UnrepresentableError(
            "the information tree branches unboundedly; pumping witness word: " + word,
            std::move(*witness));
    }

    ClosureAutomaton closure = buildClosureUnchecked(minimal, maxStates);
    ConstraintSet constraints = generateConstraints(closure, minimal);
    ConstraintSolution sol = solveConstraints(constraints);

    const std::size_t g = minimal.base.size();
    std::vector<std::string> obsNames;
    obsNames.reserve(sol.symbolCount);
    for (std::size_t i = 1; i <= sol.symbolCount; ++i) {
        obsNames.push_back(std::to_string(i));
    }
    MealyMachine m{minimal.base, Alphabet(std::move(obsNames)), 0, {}, {}, {}};
    m.initial = closure.initial;
    m.transitions = closure.transitions;
    m.outputs.resize(closure.states.size() * g);
    for (std::size_t v = 0; v < sol.assignment.size(); ++v) {
        m.outputs[v] = sol.assignment[v] - 1;
    }
    m.stateNames.resize(closure.states.size());
    for (State q = 0; q < closure.states.size(); ++q) {
        m.stateNames[q] = "s" + std::to_string(q);
    }
    return m;
}

}  // namespace infoquot
