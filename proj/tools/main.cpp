#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "infoquot/format.hpp"
#include "infoquot/oracle.hpp"
#include "infoquot/relation_check.hpp"
#include "infoquot/structure.hpp"
#include "infoquot/synthesis.hpp"

namespace {

using namespace infoquot;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;  // invalid / unbounded / not equivalent
constexpr int kExitUsage = 2;     // usage, parse and resource-budget failures

struct Options {
    bool completeWithSink = false;
    std::size_t maxStates = kDefaultMaxStates;
    std::size_t depth = 4;
    bool dot = false;
    bool jsonOut = false;
    std::string outPath;
};

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void writeResult(const Options& opts, const std::string& text) {
    if (opts.outPath.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.outPath, std::ios::binary);
    if (!out) {
        throw Error("cannot write '" + opts.outPath + "'");
    }
    out << text;
}

ParsedAutomaton parseFile(const std::string& path, const Options& opts) {
    ParseOptions po;
    po.completeWithSink = opts.completeWithSink;
    return parseAutomaton(readFile(path), po);
}

TwoTapeDfa relationFromFile(const std::string& path, const Options& opts) {
    ParsedAutomaton parsed = parseFile(path, opts);
    if (auto* rel = std::get_if<TwoTapeDfa>(&parsed)) return std::move(*rel);
    throw InputError("'" + path + "' holds a Mealy machine; a relation is required");
}

MealyMachine mealyFromFile(const std::string& path, const Options& opts) {
    ParsedAutomaton parsed = parseFile(path, opts);
    if (auto* m = std::get_if<MealyMachine>(&parsed)) return std::move(*m);
    throw InputError("'" + path + "' holds a relation; a Mealy machine is required");
}

// Relation view of any input file: Mealy machines are converted.
TwoTapeDfa anyRelationFromFile(const std::string& path, const Options& opts) {
    ParsedAutomaton parsed = parseFile(path, opts);
    if (auto* rel = std::get_if<TwoTapeDfa>(&parsed)) return std::move(*rel);
    return mealyToRelation(std::get<MealyMachine>(parsed));
}

std::string renderWord(const Alphabet& alphabet, const Word& word) {
    if (word.empty()) return "eps";
    bool compact = true;
    for (const std::string& n : alphabet.names()) compact = compact && n.size() == 1;
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (!compact && i > 0) out += ".";
        out += alphabet.name(word[i]);
    }
    return out;
}

std::string renderPair(const Alphabet& alphabet, const PairWord& pair) {
    return "(" + renderWord(alphabet, pair.first) + ", " +
           renderWord(alphabet, pair.second) + ")";
}

json wordJson(const Alphabet& alphabet, const Word& word) {
    json arr = json::array();
    for (Symbol s : word) arr.push_back(alphabet.name(s));
    return arr;
}

json pairJson(const Alphabet& alphabet, const PairWord& pair) {
    return json{{"first", wordJson(alphabet, pair.first)},
                {"second", wordJson(alphabet, pair.second)}};
}

json checkJson(const Alphabet& alphabet, const CheckResult& check) {
    json j{{"ok", check.ok}};
    j["counterexample"] =
        check.counterexample ? pairJson(alphabet, *check.counterexample) : json(nullptr);
    return j;
}

int cmdValidate(const std::string& path, const Options& opts) {
    TwoTapeDfa rel = relationFromFile(path, opts);
    ValidationReport report = validate(rel, opts.maxStates);
    if (opts.jsonOut) {
        json j{{"formatVersion", 1},
               {"kind", "validation"},
               {"valid", report.valid()},
               {"checks",
                {{"reflexive", checkJson(rel.base, report.reflexive)},
                 {"symmetric", checkJson(rel.base, report.symmetric)},
                 {"transitive", checkJson(rel.base, report.transitive)},
                 {"perfectRecall", checkJson(rel.base, report.perfectRecall)},
                 {"synchronous", {{"ok", true}, {"inherent", true}}}}}};
        std::cout << j.dump(2) << "\n";
    } else {
        auto line = [&](const char* name, const CheckResult& check) {
            std::cout << name << ": " << (check.ok ? "ok" : "fail");
            if (check.counterexample) {
                std::cout << " counterexample=" << renderPair(rel.base, *check.counterexample);
            }
            std::cout << "\n";
        };
        line("reflexive", report.reflexive);
        line("symmetric", report.symmetric);
        line("transitive", report.transitive);
        line("perfect-recall", report.perfectRecall);
        std::cout << "synchronous: ok (two-tape by construction)\n";
        std::cout << "result: " << (report.valid() ? "valid" : "invalid") << "\n";
    }
    return report.valid() ? kExitOk : kExitNegative;
}

int cmdFromMealy(const std::string& path, const Options& opts) {
    MealyMachine m = mealyFromFile(path, opts);
    TwoTapeDfa rel = mealyToRelation(m);
    writeResult(opts, opts.dot ? exportDot(rel) : serialize(rel));
    return kExitOk;
}

int cmdToMealy(const std::string& path, const Options& opts) {
    TwoTapeDfa rel = relationFromFile(path, opts);
    try {
        MealyMachine m = synthesizeMealy(rel, opts.maxStates);
        writeResult(opts, opts.dot ? exportDot(m) : serialize(m));
        return kExitOk;
    } catch (const UnrepresentableError& e) {
        std::cerr << "to-mealy: " << e.what() << "\n";
        return kExitNegative;
    }
}

int cmdCheckBounded(const std::string& path, const Options& opts) {
    TwoTapeDfa rel = relationFromFile(path, opts);
    ValidationReport report = validate(rel, opts.maxStates);
    if (!report.valid()) {
        throw InputError("'" + path + "' is not a valid indistinguishability relation; "
                         "run 'validate' for details");
    }
    BranchingVerdict verdict = decideBoundedBranching(rel, opts.maxStates);
    const bool bounded = verdict.kind == BranchingVerdict::Kind::Bounded;
    if (opts.jsonOut) {
        json j{{"formatVersion", 1},
               {"kind", "branching"},
               {"verdict", bounded ? "bounded" : "unbounded"}};
        j["bound"] = verdict.bound ? json(*verdict.bound) : json(nullptr);
        if (verdict.witness) {
            j["witness"] = {{"p", verdict.witness->p},
                            {"q", verdict.witness->q},
                            {"word", wordJson(rel.base, verdict.witness->word)}};
        } else {
            j["witness"] = nullptr;
        }
        std::cout << j.dump(2) << "\n";
    } else if (bounded) {
        std::cout << "bounded bound=" << *verdict.bound << "\n";
    } else {
        std::cout << "unbounded witness: word=" << renderWord(rel.base, verdict.witness->word)
                  << " p=" << verdict.witness->p << " q=" << verdict.witness->q << "\n";
    }
    return bounded ? kExitOk : kExitNegative;
}

int cmdMinimize(const std::string& path, const Options& opts) {
    TwoTapeDfa rel = relationFromFile(path, opts);
    TwoTapeDfa minimal = minimize(rel);
    writeResult(opts, opts.dot ? exportDot(minimal) : serialize(minimal));
    return kExitOk;
}

int cmdEquiv(const std::string& path1, const std::string& path2, const Options& opts) {
    TwoTapeDfa r1 = anyRelationFromFile(path1, opts);
    TwoTapeDfa r2 = anyRelationFromFile(path2, opts);
    auto cex = distinguishingPair(r1, r2);
    if (opts.jsonOut) {
        json j{{"formatVersion", 1},
               {"kind", "equivalence"},
               {"equivalent", !cex.has_value()}};
        j["counterexample"] = cex ? pairJson(r1.base, *cex) : json(nullptr);
        std::cout << j.dump(2) << "\n";
    } else if (cex) {
        std::cout << "not equivalent: " << renderPair(r1.base, *cex) << "\n";
    } else {
        std::cout << "equivalent\n";
    }
    return cex ? kExitNegative : kExitOk;
}

int cmdTree(const std::string& path, const Options& opts) {
    TwoTapeDfa rel = relationFromFile(path, opts);
    std::size_t budget = std::max(opts.depth, oracle::kPartitionDepthBudget);
    oracle::InfoTreeSlice slice = oracle::infoTree(rel, opts.depth, budget);
    if (opts.dot) {
        std::ostringstream out;
        out << "digraph informationtree {\n  rankdir=TB;\n";
        for (std::size_t d = 0; d < slice.levels.size(); ++d) {
            for (std::size_t i = 0; i < slice.levels[d].size(); ++i) {
                const oracle::TreeNode& node = slice.levels[d][i];
                std::string label;
                for (const Word& w : node.members) {
                    if (!label.empty()) label += ",";
                    label += renderWord(rel.base, w);
                }
                out << "  \"n" << d << "_" << i << "\" [label=\"{" << label << "}\"];\n";
                if (node.parent) {
                    out << "  \"n" << d - 1 << "_" << *node.parent << "\" -> \"n" << d
                        << "_" << i << "\";\n";
                }
            }
        }
        out << "}\n";
        writeResult(opts, out.str());
    } else if (opts.jsonOut) {
        json levels = json::array();
        for (std::size_t d = 0; d < slice.levels.size(); ++d) {
            json level = json::array();
            for (std::size_t i = 0; i < slice.levels[d].size(); ++i) {
                const oracle::TreeNode& node = slice.levels[d][i];
                json members = json::array();
                for (const Word& w : node.members) members.push_back(renderWord(rel.base, w));
                json nj{{"id", i},
                        {"members", members},
                        {"branching", node.branching}};
                nj["parent"] = node.parent ? json(*node.parent) : json(nullptr);
                level.push_back(nj);
            }
            levels.push_back(level);
        }
        json j{{"formatVersion", 1}, {"kind", "tree"}, {"depth", slice.depth},
               {"levels", levels}};
        std::cout << j.dump(2) << "\n";
    } else {
        for (std::size_t d = 0; d < slice.levels.size(); ++d) {
            for (std::size_t i = 0; i < slice.levels[d].size(); ++i) {
                const oracle::TreeNode& node = slice.levels[d][i];
                std::cout << "depth " << d << " class " << i << ": {";
                for (std::size_t k = 0; k < node.members.size(); ++k) {
                    if (k) std::cout << ",";
                    std::cout << renderWord(rel.base, node.members[k]);
                }
                std::cout << "} -> branching " << node.branching << "\n";
            }
        }
    }
    return kExitOk;
}

int cmdOraclePartition(const std::string& path, const Options& opts) {
    TwoTapeDfa rel = relationFromFile(path, opts);
    std::size_t budget = std::max(opts.depth, oracle::kPartitionDepthBudget);
    oracle::PartitionTable table = oracle::enumeratePartition(rel, opts.depth, budget);
    if (opts.jsonOut) {
        json lengths = json::array();
        for (std::size_t len = 0; len < table.classesByLength.size(); ++len) {
            json classes = json::array();
            for (const auto& cls : table.classesByLength[len]) {
                json members = json::array();
                for (const Word& w : cls) members.push_back(renderWord(rel.base, w));
                classes.push_back(members);
            }
            lengths.push_back(json{{"length", len}, {"classes", classes}});
        }
        json j{{"formatVersion", 1}, {"kind", "partition"}, {"depth", table.depth},
               {"lengths", lengths}};
        std::cout << j.dump(2) << "\n";
    } else {
        for (std::size_t len = 0; len < table.classesByLength.size(); ++len) {
            std::cout << "length " << len << ": ";
            for (std::size_t c = 0; c < table.classesByLength[len].size(); ++c) {
                if (c) std::cout << ",";
                std::cout << "{";
                const auto& cls = table.classesByLength[len][c];
                for (std::size_t k = 0; k < cls.size(); ++k) {
                    if (k) std::cout << ",";
                    std::cout << renderWord(rel.base, cls[k]);
                }
                std::cout << "}";
            }
            std::cout << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-state models of imperfect information: observation machines "
                 "and indistinguishability relations"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opts;
    app.add_flag("--complete-with-sink", opts.completeWithSink,
                 "complete partial relations with a fresh reject sink");
    app.add_option("--max-states", opts.maxStates,
                   "state budget for subset constructions and closures")
        ->envname("INFOQUOT_MAX_STATES");
    app.add_option("--depth", opts.depth, "enumeration depth for tree/oracle-partition")
        ->capture_default_str();
    app.add_flag("--dot", opts.dot, "emit Graphviz DOT instead of the text format");
    app.add_flag("--json", opts.jsonOut, "emit machine-readable JSON reports");

    std::string file1, file2;
    auto addFileArg = [&](CLI::App* cmd) {
        cmd->add_option("FILE", file1, "automaton file")->required();
    };
    auto addOutOpt = [&](CLI::App* cmd) {
        cmd->add_option("-o,--output", opts.outPath, "write the result here");
    };

    CLI::App* validateCmd = app.add_subcommand("validate",
        "check that a relation file defines an indistinguishability relation");
    addFileArg(validateCmd);
    CLI::App* fromMealyCmd = app.add_subcommand("from-mealy",
        "derive the indistinguishability relation of a Mealy machine");
    addFileArg(fromMealyCmd);
    addOutOpt(fromMealyCmd);
    CLI::App* toMealyCmd = app.add_subcommand("to-mealy",
        "synthesize an observation Mealy machine for a relation");
    addFileArg(toMealyCmd);
    addOutOpt(toMealyCmd);
    CLI::App* checkBoundedCmd = app.add_subcommand("check-bounded",
        "decide whether the information tree has bounded branching");
    addFileArg(checkBoundedCmd);
    CLI::App* minimizeCmd = app.add_subcommand("minimize", "minimize a relation automaton");
    addFileArg(minimizeCmd);
    addOutOpt(minimizeCmd);
    CLI::App* equivCmd = app.add_subcommand("equiv",
        "compare the relations induced by two files");
    equivCmd->add_option("FILE1", file1, "first automaton")->required();
    equivCmd->add_option("FILE2", file2, "second automaton")->required();
    CLI::App* treeCmd = app.add_subcommand("tree",
        "information tree slice with branching degrees");
    addFileArg(treeCmd);
    CLI::App* partitionCmd = app.add_subcommand("oracle-partition",
        "brute-force information partition per history length");
    addFileArg(partitionCmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (validateCmd->parsed()) return cmdValidate(file1, opts);
        if (fromMealyCmd->parsed()) return cmdFromMealy(file1, opts);
        if (toMealyCmd->parsed()) return cmdToMealy(file1, opts);
        if (checkBoundedCmd->parsed()) return cmdCheckBounded(file1, opts);
        if (minimizeCmd->parsed()) return cmdMinimize(file1, opts);
        if (equivCmd->parsed()) return cmdEquiv(file1, file2, opts);
        if (treeCmd->parsed()) return cmdTree(file1, opts);
        if (partitionCmd->parsed()) return cmdOraclePartition(file1, opts);
        std::cerr << "no subcommand selected\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
