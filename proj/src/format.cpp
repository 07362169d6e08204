#include "infoquot/format.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace infoquot {

namespace {

struct Token {
    std::string text;
    std::size_t line;
    std::size_t column;
};

// Tokenized non-empty lines; comments stripped at the first '#'.
std::vector<std::vector<Token>> tokenize(std::string_view text) {
    std::vector<std::vector<Token>> lines;
    std::size_t lineNo = 1;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        std::vector<Token> toks;
        std::size_t i = 0;
        while (i < line.size()) {
            if (std::isspace(static_cast<unsigned char>(line[i]))) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) {
                ++j;
            }
            toks.push_back({std::string(line.substr(i, j - i)), lineNo, i + 1});
            i = j;
        }
        if (!toks.empty()) lines.push_back(std::move(toks));
        ++lineNo;
        start = end + 1;
        if (end == text.size()) break;
    }
    return lines;
}

class Parser {
public:
    Parser(std::string_view text, const ParseOptions& opts)
        : lines_(tokenize(text)), opts_(opts) {}

    ParsedAutomaton parse() {
        const std::vector<Token>& kind = expectLine("'relation' or 'mealy'");
        if (kind[0].text == "relation") {
            ++cursor_;
            return parseRelation();
        }
        if (kind[0].text == "mealy") {
            ++cursor_;
            return parseMealy();
        }
        throw ParseError(kind[0].line, kind[0].column, "expected 'relation' or 'mealy'");
    }

private:
    const std::vector<Token>& expectLine(const std::string& what) {
        if (cursor_ >= lines_.size()) {
            std::size_t line = lines_.empty() ? 1 : lines_.back()[0].line + 1;
            throw ParseError(line, 1, "expected " + what);
        }
        return lines_[cursor_];
    }

    std::vector<Token> sectionLine(const std::string& keyword, std::size_t minArgs) {
        const std::vector<Token>& toks = expectLine("'" + keyword + "' line");
        if (toks[0].text != keyword) {
            throw ParseError(toks[0].line, toks[0].column, "expected '" + keyword + "'");
        }
        if (toks.size() - 1 < minArgs) {
            throw ParseError(toks[0].line, toks[0].column,
                             "'" + keyword + "' needs at least " +
                                 std::to_string(minArgs) + " entries");
        }
        ++cursor_;
        return toks;
    }

    static std::vector<std::string> tailNames(const std::vector<Token>& toks) {
        std::vector<std::string> out;
        for (std::size_t i = 1; i < toks.size(); ++i) out.push_back(toks[i].text);
        return out;
    }

    Alphabet parseAlphabet(const std::string& keyword) {
        std::vector<Token> toks = sectionLine(keyword, 1);
        try {
            return Alphabet(tailNames(toks));
        } catch (const InputError& e) {
            throw ParseError(toks[0].line, toks[0].column, e.what());
        }
    }

    void parseStates(std::vector<std::string>& names,
                     std::map<std::string, State>& ids) {
        std::vector<Token> toks = sectionLine("states", 1);
        for (std::size_t i = 1; i < toks.size(); ++i) {
            auto [it, fresh] = ids.emplace(toks[i].text, names.size());
            if (!fresh) {
                throw ParseError(toks[i].line, toks[i].column,
                                 "duplicate state '" + toks[i].text + "'");
            }
            names.push_back(toks[i].text);
        }
    }

    State lookupState(const std::map<std::string, State>& ids, const Token& tok) {
        auto it = ids.find(tok.text);
        if (it == ids.end()) {
            throw ParseError(tok.line, tok.column, "unknown state '" + tok.text + "'");
        }
        return it->second;
    }

    Symbol lookupSymbol(const Alphabet& alphabet, const Token& tok) {
        auto s = alphabet.find(tok.text);
        if (!s) {
            throw ParseError(tok.line, tok.column, "unknown symbol '" + tok.text + "'");
        }
        return *s;
    }

    ParsedAutomaton parseRelation() {
        Alphabet base = parseAlphabet("alphabet");
        std::vector<std::string> names;
        std::map<std::string, State> ids;
        parseStates(names, ids);
        std::vector<Token> initLine = sectionLine("initial", 1);
        if (initLine.size() != 2) {
            throw ParseError(initLine[0].line, initLine[0].column,
                             "'initial' takes exactly one state");
        }
        State initial = lookupState(ids, initLine[1]);
        std::vector<Token> accLine = sectionLine("accepting", 0);
        std::vector<bool> accepting(names.size(), false);
        for (std::size_t i = 1; i < accLine.size(); ++i) {
            accepting[lookupState(ids, accLine[i])] = true;
        }

        const std::size_t g = base.size();
        Dfa dfa;
        dfa.symbolCount = g * g;
        dfa.initial = initial;
        dfa.accepting = accepting;
        dfa.stateNames = names;
        dfa.transitions.assign(names.size() * g * g, kNoState);
        while (cursor_ < lines_.size()) {
            const std::vector<Token>& toks = lines_[cursor_++];
            if (toks.size() != 5 || toks[3].text != "->") {
                throw ParseError(toks[0].line, toks[0].column,
                                 "expected 'STATE SYM SYM -> STATE'");
            }
            State from = lookupState(ids, toks[0]);
            Symbol a = lookupSymbol(base, toks[1]);
            Symbol b = lookupSymbol(base, toks[2]);
            State to = lookupState(ids, toks[4]);
            State& slot = dfa.transitions[from * dfa.symbolCount + pairSymbol(a, b, g)];
            if (slot != kNoState) {
                throw ParseError(toks[0].line, toks[0].column,
                                 "duplicate transition from '" + toks[0].text + "' on (" +
                                     toks[1].text + ", " + toks[2].text + ")");
            }
            slot = to;
        }
        if (!dfa.total()) {
            if (opts_.completeWithSink) {
                dfa = completeToSink(dfa);
            } else {
                for (State q = 0; q < dfa.stateCount(); ++q) {
                    for (Symbol s = 0; s < dfa.symbolCount; ++s) {
                        if (dfa.next(q, s) != kNoState) continue;
                        throw ParseError(
                            0, 0,
                            "missing transition from '" + names[q] + "' on (" +
                                base.name(pairFirst(s, g)) + ", " +
                                base.name(pairSecond(s, g)) +
                                "); pass --complete-with-sink to add a reject sink");
                    }
                }
            }
        }
        return TwoTapeDfa{std::move(base), std::move(dfa)};
    }

    ParsedAutomaton parseMealy() {
        Alphabet input = parseAlphabet("alphabet");
        Alphabet output = parseAlphabet("observations");
        std::vector<std::string> names;
        std::map<std::string, State> ids;
        parseStates(names, ids);
        std::vector<Token> initLine = sectionLine("initial", 1);
        if (initLine.size() != 2) {
            throw ParseError(initLine[0].line, initLine[0].column,
                             "'initial' takes exactly one state");
        }
        State initial = lookupState(ids, initLine[1]);

        const std::size_t g = input.size();
        MealyMachine m{std::move(input), std::move(output), initial, {}, {}, names};
        m.transitions.assign(names.size() * g, kNoState);
        m.outputs.assign(names.size() * g, kNoSymbol);
        while (cursor_ < lines_.size()) {
            const std::vector<Token>& toks = lines_[cursor_++];
            if (toks.size() != 6 || toks[2].text != "->" || toks[4].text != ":") {
                throw ParseError(toks[0].line, toks[0].column,
                                 "expected 'STATE SYM -> STATE : OBS'");
            }
            State from = lookupState(ids, toks[0]);
            Symbol a = lookupSymbol(m.input, toks[1]);
            State to = lookupState(ids, toks[3]);
            Symbol obs = lookupSymbol(m.output, toks[5]);
            if (m.transitions[from * g + a] != kNoState) {
                throw ParseError(toks[0].line, toks[0].column,
                                 "duplicate transition from '" + toks[0].text + "' on " +
                                     toks[1].text);
            }
            m.transitions[from * g + a] = to;
            m.outputs[from * g + a] = obs;
        }
        for (State q = 0; q < names.size(); ++q) {
            for (Symbol s = 0; s < g; ++s) {
                if (m.transitions[q * g + s] == kNoState) {
                    throw ParseError(0, 0,
                                     "missing transition from '" + names[q] + "' on " +
                                         m.input.name(s));
                }
            }
        }
        return m;
    }

    std::vector<std::vector<Token>> lines_;
    ParseOptions opts_;
    std::size_t cursor_ = 0;
};

void writeNames(std::ostringstream& out, const std::vector<std::string>& names) {
    for (const std::string& n : names) out << " " << n;
    out << "\n";
}

}  // namespace

ParsedAutomaton parseAutomaton(std::string_view text, const ParseOptions& opts) {
    return Parser(text, opts).parse();
}

std::string serialize(const TwoTapeDfa& rel) {
    const std::size_t g = rel.base.size();
    std::ostringstream out;
    out << "relation\n";
    out << "alphabet";
    writeNames(out, rel.base.names());
    out << "states";
    for (State q = 0; q < rel.dfa.stateCount(); ++q) out << " " << rel.dfa.stateName(q);
    out << "\n";
    out << "initial " << rel.dfa.stateName(rel.dfa.initial) << "\n";
    out << "accepting";
    for (State q = 0; q < rel.dfa.stateCount(); ++q) {
        if (rel.dfa.accepting[q]) out << " " << rel.dfa.stateName(q);
    }
    out << "\n";
    for (State q = 0; q < rel.dfa.stateCount(); ++q) {
        for (Symbol s = 0; s < rel.dfa.symbolCount; ++s) {
            State t = rel.dfa.next(q, s);
            if (t == kNoState) continue;
            out << rel.dfa.stateName(q) << " " << rel.base.name(pairFirst(s, g)) << " "
                << rel.base.name(pairSecond(s, g)) << " -> " << rel.dfa.stateName(t)
                << "\n";
        }
    }
    return out.str();
}

std::string serialize(const MealyMachine& m) {
    std::ostringstream out;
    out << "mealy\n";
    out << "alphabet";
    writeNames(out, m.input.names());
    out << "observations";
    writeNames(out, m.output.names());
    out << "states";
    for (State q = 0; q < m.stateCount(); ++q) out << " " << m.stateName(q);
    out << "\n";
    out << "initial " << m.stateName(m.initial) << "\n";
    for (State q = 0; q < m.stateCount(); ++q) {
        for (Symbol s = 0; s < m.input.size(); ++s) {
            out << m.stateName(q) << " " << m.input.name(s) << " -> "
                << m.stateName(m.next(q, s)) << " : " << m.output.name(m.outputOf(q, s))
                << "\n";
        }
    }
    return out.str();
}

namespace {

std::string dotQuote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

// Merges parallel edges into one arrow with stacked labels.
template <typename NameFn, typename NextFn, typename LabelFn>
std::string dotGraph(std::size_t stateCount, State initial,
                     const std::vector<bool>& accepting, NameFn&& nameOf,
                     std::size_t symbolCount, NextFn&& nextOf, LabelFn&& label) {
    std::ostringstream out;
    out << "digraph automaton {\n  rankdir=LR;\n  __init [shape=point];\n";
    for (State q = 0; q < stateCount; ++q) {
        out << "  " << dotQuote(nameOf(q)) << " [shape="
            << (accepting[q] ? "doublecircle" : "circle") << "];\n";
    }
    out << "  __init -> " << dotQuote(nameOf(initial)) << ";\n";
    for (State q = 0; q < stateCount; ++q) {
        std::map<State, std::string> merged;
        for (Symbol s = 0; s < symbolCount; ++s) {
            State t = nextOf(q, s);
            if (t == kNoState) continue;
            std::string& lab = merged[t];
            if (!lab.empty()) lab += "\\n";
            lab += label(q, s);
        }
        for (const auto& [t, lab] : merged) {
            out << "  " << dotQuote(nameOf(q)) << " -> " << dotQuote(nameOf(t))
                << " [label=" << dotQuote(lab) << "];\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace

std::string exportDot(const TwoTapeDfa& rel) {
    const std::size_t g = rel.base.size();
    return dotGraph(
        rel.dfa.stateCount(), rel.dfa.initial, rel.dfa.accepting,
        [&](State q) { return rel.dfa.stateName(q); }, rel.dfa.symbolCount,
        [&](State q, Symbol s) { return rel.dfa.next(q, s); },
        [&](State, Symbol s) {
            return rel.base.name(pairFirst(s, g)) + "," + rel.base.name(pairSecond(s, g));
        });
}

std::string exportDot(const MealyMachine& m) {
    std::vector<bool> accepting(m.stateCount(), false);
    return dotGraph(
        m.stateCount(), m.initial, accepting, [&](State q) { return m.stateName(q); },
        m.input.size(), [&](State q, Symbol s) { return m.next(q, s); },
        [&](State q, Symbol s) {
            return m.input.name(s) + "/" + m.output.name(m.outputOf(q, s));
        });
}

}  // namespace infoquot
