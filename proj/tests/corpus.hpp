#pragma once

#include <random>
#include <string>
#include <vector>

#include "infoquot/automaton.hpp"

// Hand-built automata shared across the test binaries. The fig* builders
// mirror the files shipped under data/.
namespace corpus {

using namespace infoquot;

inline Alphabet ab() { return Alphabet({"a", "b"}); }
inline Alphabet abc() { return Alphabet({"a", "b", "c"}); }

// Observation machine: b always outputs 1 and toggles the state, a outputs 1
// in p1 and 2 in p2.
inline MealyMachine fig1a() {
    MealyMachine m{ab(), Alphabet({"1", "2"}), 0, {}, {}, {"p1", "p2"}};
    // state * 2 + symbol, symbols a=0, b=1
    m.transitions = {0, 1, 1, 0};
    m.outputs = {0, 0, 1, 0};
    return m;
}

// The induced indistinguishability relation of fig1a, with reject sink `bot`.
inline TwoTapeDfa fig1b() {
    Alphabet base = ab();
    Dfa d;
    d.symbolCount = 4;  // (a,a) (a,b) (b,a) (b,b)
    d.initial = 0;
    d.accepting = {true, true, true, true, false};
    d.stateNames = {"q1", "q2", "q3", "q4", "bot"};
    const State q1 = 0, q2 = 1, q3 = 2, q4 = 3, bot = 4;
    d.transitions = {
        // (a,a) (a,b) (b,a) (b,b)
        q1, q3, q4, q2,   // q1
        q2, bot, bot, q1, // q2
        bot, q1, bot, q4, // q3
        bot, bot, q1, q3, // q4
        bot, bot, bot, bot,
    };
    return {base, d};
}

// Histories related iff equal or both free of the letter c; unbounded
// branching.
inline TwoTapeDfa fig2() {
    Alphabet base = abc();
    Dfa d;
    d.symbolCount = 9;
    d.initial = 0;
    d.accepting = {true, true, true, false};
    d.stateNames = {"q1", "q2", "q3", "bot"};
    const State q1 = 0, q2 = 1, q3 = 2, bot = 3;
    auto set = [&](State from, Symbol x, Symbol y, State to) {
        d.transitions[from * 9 + x * 3 + y] = to;
    };
    d.transitions.assign(4 * 9, bot);
    set(q1, 0, 0, q1);
    set(q1, 1, 1, q1);
    set(q1, 0, 1, q3);
    set(q1, 1, 0, q3);
    set(q1, 2, 2, q2);
    for (Symbol x = 0; x < 3; ++x) set(q2, x, x, q2);
    for (Symbol x = 0; x < 2; ++x) {
        for (Symbol y = 0; y < 2; ++y) set(q3, x, y, q3);
    }
    return {base, d};
}

// Pairs shorter than k are all related; from length k on only equal ones are.
// States: e_t tracks equal prefixes, d_t tracks diverged ones, plus a sink.
inline TwoTapeDfa fig3(std::size_t k) {
    Alphabet base = ab();
    const std::size_t n = 2 * k;  // e_0..e_{k-1}, d_1..d_{k-1}, bot
    Dfa d;
    d.symbolCount = 4;
    d.initial = 0;
    d.accepting.assign(n, true);
    d.accepting[n - 1] = false;
    d.stateNames.resize(n);
    auto e = [&](std::size_t t) { return t; };                  // 0..k-1
    auto dd = [&](std::size_t t) { return k + t - 1; };         // t in 1..k-1
    const State bot = n - 1;
    for (std::size_t t = 0; t < k; ++t) d.stateNames[e(t)] = "e" + std::to_string(t);
    for (std::size_t t = 1; t < k; ++t) d.stateNames[dd(t)] = "d" + std::to_string(t);
    d.stateNames[bot] = "bot";
    d.transitions.assign(n * 4, bot);
    auto set = [&](State from, Symbol x, Symbol y, State to) {
        d.transitions[from * 4 + x * 2 + y] = to;
    };
    for (std::size_t t = 0; t < k; ++t) {
        State eqNext = t + 1 < k ? e(t + 1) : e(k - 1);
        State neNext = t + 1 < k ? dd(t + 1) : bot;
        set(e(t), 0, 0, eqNext);
        set(e(t), 1, 1, eqNext);
        set(e(t), 0, 1, neNext);
        set(e(t), 1, 0, neNext);
    }
    for (std::size_t t = 1; t < k; ++t) {
        State nxt = t + 1 < k ? dd(t + 1) : bot;
        for (Symbol s = 0; s < 4; ++s) d.transitions[dd(t) * 4 + s] = nxt;
    }
    return {base, d};
}

// Histories are related iff all their differences lie within the final `lag`
// positions: perfect information delayed by `lag` stages. The automaton
// tracks the offset of the oldest difference, so it has lag + 2 states.
inline TwoTapeDfa delayRelation(const Alphabet& base, std::size_t lag = 1) {
    const std::size_t g = base.size();
    const std::size_t n = lag + 2;  // none, oldest at 1..lag, bot
    Dfa d;
    d.symbolCount = g * g;
    d.initial = 0;
    d.accepting.assign(n, true);
    d.accepting[n - 1] = false;
    d.stateNames.resize(n);
    d.stateNames[0] = "eq";
    for (std::size_t i = 1; i <= lag; ++i) d.stateNames[i] = "d" + std::to_string(i);
    d.stateNames[n - 1] = "bot";
    d.transitions.assign(n * g * g, n - 1);
    for (Symbol x = 0; x < g; ++x) {
        for (Symbol y = 0; y < g; ++y) {
            d.transitions[0 * g * g + x * g + y] = x == y ? 0 : 1;
            for (std::size_t i = 1; i < lag; ++i) {
                d.transitions[i * g * g + x * g + y] = i + 1;
            }
        }
    }
    return {base, d};
}

// Only equal histories are related: perfect information.
inline TwoTapeDfa equalityRelation(const Alphabet& base) {
    const std::size_t g = base.size();
    Dfa d;
    d.symbolCount = g * g;
    d.initial = 0;
    d.accepting = {true, false};
    d.stateNames = {"eq", "bot"};
    d.transitions.assign(2 * g * g, 1);
    for (Symbol c = 0; c < g; ++c) d.transitions[0 * g * g + c * g + c] = 0;
    return {base, d};
}

// All same-length histories are related: no information.
inline TwoTapeDfa totalRelation(const Alphabet& base) {
    const std::size_t g = base.size();
    Dfa d;
    d.symbolCount = g * g;
    d.initial = 0;
    d.accepting = {true};
    d.stateNames = {"all"};
    d.transitions.assign(g * g, 0);
    return {base, d};
}

// fig1b with q2 rejecting (breaks reflexivity).
inline TwoTapeDfa fig1bNonReflexive() {
    TwoTapeDfa rel = fig1b();
    rel.dfa.accepting[1] = false;
    return rel;
}

// fig1b with q3 -(b,b)-> q1 instead of q4 (breaks symmetry and transitivity).
inline TwoTapeDfa fig1bNonTransitive() {
    TwoTapeDfa rel = fig1b();
    rel.dfa.transitions[2 * 4 + 3] = 0;
    return rel;
}

// fig1b with q3 rejecting (breaks perfect recall).
inline TwoTapeDfa fig1bNoRecall() {
    TwoTapeDfa rel = fig1b();
    rel.dfa.accepting[2] = false;
    return rel;
}

inline std::vector<Word> wordsOfLength(std::size_t alphabet, std::size_t len) {
    std::vector<Word> out;
    Word w(len, 0);
    for (;;) {
        out.push_back(w);
        std::size_t i = len;
        while (i > 0 && w[i - 1] == alphabet - 1) {
            w[i - 1] = 0;
            --i;
        }
        if (i == 0) break;
        ++w[i - 1];
    }
    return out;
}

inline MealyMachine randomMealy(std::mt19937& rng) {
    std::uniform_int_distribution<std::size_t> statesDist(1, 4);
    std::uniform_int_distribution<std::size_t> inDist(1, 3);
    std::uniform_int_distribution<std::size_t> outDist(1, 3);
    const std::size_t n = statesDist(rng);
    const std::size_t g = inDist(rng);
    const std::size_t o = outDist(rng);
    std::vector<std::string> inNames, outNames, stateNames;
    for (std::size_t i = 0; i < g; ++i) inNames.push_back(std::string(1, char('a' + i)));
    for (std::size_t i = 0; i < o; ++i) outNames.push_back(std::to_string(i + 1));
    for (std::size_t i = 0; i < n; ++i) stateNames.push_back("p" + std::to_string(i + 1));
    MealyMachine m{Alphabet(inNames), Alphabet(outNames), 0, {}, {}, stateNames};
    std::uniform_int_distribution<std::size_t> stateDist(0, n - 1);
    std::uniform_int_distribution<std::size_t> obsDist(0, o - 1);
    m.transitions.resize(n * g);
    m.outputs.resize(n * g);
    for (std::size_t i = 0; i < n * g; ++i) {
        m.transitions[i] = stateDist(rng);
        m.outputs[i] = obsDist(rng);
    }
    return m;
}

}  // namespace corpus
