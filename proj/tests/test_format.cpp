#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "infoquot/format.hpp"
#include "infoquot/relation_check.hpp"
#include "infoquot/synthesis.hpp"

using namespace infoquot;

namespace {

std::string dataFile(const std::string& name) {
    std::ifstream in(std::string(INFOQUOT_DATA_DIR) + "/" + name, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

TwoTapeDfa parseRel(const std::string& text, bool complete = false) {
    ParseOptions opts;
    opts.completeWithSink = complete;
    return std::get<TwoTapeDfa>(parseAutomaton(text, opts));
}

}  // namespace

TEST_CASE("shipped relation file parses to the expected automaton") {
    TwoTapeDfa rel = parseRel(dataFile("fig1b.rel"));
    CHECK(rel.dfa.stateCount() == 5);
    CHECK(rel.base.names() == std::vector<std::string>{"a", "b"});
    CHECK(languageEquivalent(rel, corpus::fig1b()));
    CHECK(rel.dfa.stateNames ==
          std::vector<std::string>{"q1", "q2", "q3", "q4", "bot"});
}

TEST_CASE("shipped mealy file parses to the expected machine") {
    auto parsed = parseAutomaton(dataFile("fig1a.mealy"));
    const MealyMachine& m = std::get<MealyMachine>(parsed);
    CHECK(m.stateCount() == 2);
    CHECK(m.output.names() == std::vector<std::string>{"1", "2"});
    CHECK(languageEquivalent(mealyToRelation(m), corpus::fig1b()));
}

TEST_CASE("empty file is a syntax error at line one") {
    try {
        parseAutomaton("");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
    }
}

TEST_CASE("errors carry positions") {
    // Unknown state in a transition.
    std::string text = dataFile("fig1b.rel") + "qX a a -> q1\n";
    CHECK_THROWS_AS(parseAutomaton(text), ParseError);

    // Wrong keyword order.
    try {
        parseAutomaton("relation\nstates q\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("alphabet") != std::string::npos);
    }
}

TEST_CASE("duplicate transitions are rejected") {
    std::string text = dataFile("fig1b.rel") + "q1 a a -> q1\n";
    try {
        parseAutomaton(text);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("duplicate transition") != std::string::npos);
    }
}

TEST_CASE("missing transitions name the hole") {
    // Drop the last bot line.
    std::string text = dataFile("fig1b.rel");
    text = text.substr(0, text.rfind("bot b b -> bot"));
    try {
        parseAutomaton(text);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        std::string what = e.what();
        CHECK(what.find("bot") != std::string::npos);
        CHECK(what.find("(b, b)") != std::string::npos);
    }

    // With completion the hole is routed into a fresh sink.
    TwoTapeDfa rel = parseRel(text, true);
    CHECK(rel.dfa.stateCount() == 6);
    CHECK(languageEquivalent(rel, corpus::fig1b()));
}

TEST_CASE("serialize then parse is the identity") {
    for (const TwoTapeDfa& rel : {corpus::fig1b(), corpus::fig2(), corpus::fig3(3)}) {
        TwoTapeDfa back = parseRel(serialize(rel));
        CHECK(back.base == rel.base);
        CHECK(back.dfa.initial == rel.dfa.initial);
        CHECK(back.dfa.accepting == rel.dfa.accepting);
        CHECK(back.dfa.transitions == rel.dfa.transitions);
        CHECK(back.dfa.stateNames == rel.dfa.stateNames);
    }
    MealyMachine m = corpus::fig1a();
    auto parsed = parseAutomaton(serialize(m));
    const MealyMachine& back = std::get<MealyMachine>(parsed);
    CHECK(back.transitions == m.transitions);
    CHECK(back.outputs == m.outputs);
    CHECK(back.stateNames == m.stateNames);
}

TEST_CASE("serialization is stable under reserialization") {
    std::string once = serialize(corpus::fig1b());
    CHECK(serialize(parseRel(once)) == once);
}

TEST_CASE("dot export of the sample machine") {
    std::string dot = exportDot(corpus::fig1a());
    CHECK(dot.find("b/1") != std::string::npos);
    CHECK(dot.find("\"p1\" -> \"p2\"") != std::string::npos);
    CHECK(dot.find("digraph") != std::string::npos);
}

TEST_CASE("dot export of the synthesized machine matches the expected topology") {
    MealyMachine m = synthesizeMealy(corpus::fig1b());
    std::string dot = exportDot(m);
    // Four states and self-loops on two of them.
    CHECK(dot.find("\"s1\" -> \"s1\"") != std::string::npos);
    CHECK(dot.find("\"s3\" -> \"s3\"") != std::string::npos);
    int circles = 0;
    for (std::size_t pos = 0; (pos = dot.find("shape=circle", pos)) != std::string::npos;
         ++pos) {
        ++circles;
    }
    CHECK(circles == 4);
}

TEST_CASE("dot export of a relation doubles accepting states") {
    std::string dot = exportDot(corpus::fig1b());
    CHECK(dot.find("doublecircle") != std::string::npos);
    CHECK(dot.find("a,b") != std::string::npos);
}
