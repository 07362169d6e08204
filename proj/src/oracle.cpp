#include "infoquot/oracle.hpp"

#include <algorithm>

namespace infoquot::oracle {

namespace {

void checkDepth(std::size_t depth, std::size_t maxDepth) {
    if (depth > maxDepth) {
        throw InputError("depth " + std::to_string(depth) +
                         " over budget (max " + std::to_string(maxDepth) + ")");
    }
}

// All words of the given length in lexicographic order.
std::vector<Word> wordsOfLength(std::size_t alphabet, std::size_t len) {
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

bool relAccepts(const TwoTapeDfa& rel, const Word& a, const Word& b) {
    return accepts(rel.dfa, zipWords(a, b, rel.base.size()));
}

std::vector<std::vector<Word>> classesAtLength(const TwoTapeDfa& rel, std::size_t len) {
    std::vector<std::vector<Word>> classes;
    for (const Word& w : wordsOfLength(rel.base.size(), len)) {
        bool placed = false;
        for (auto& cls : classes) {
            if (relAccepts(rel, cls.front(), w)) {
                cls.push_back(w);
                placed = true;
                break;
            }
        }
        if (!placed) classes.push_back({w});
    }
    return classes;
}

std::size_t classIndexOf(const std::vector<std::vector<Word>>& classes, const Word& w) {
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (std::binary_search(classes[i].begin(), classes[i].end(), w)) return i;
    }
    throw InternalError("history missing from its partition level");
}

}  // namespace

PartitionTable enumeratePartition(const TwoTapeDfa& rel, std::size_t depth,
                                  std::size_t maxDepth) {
    checkDepth(depth, maxDepth);
    PartitionTable table;
    table.depth = depth;
    table.classesByLength.reserve(depth + 1);
    for (std::size_t len = 0; len <= depth; ++len) {
        table.classesByLength.push_back(classesAtLength(rel, len));
    }
    return table;
}

InfoTreeSlice infoTree(const TwoTapeDfa& rel, std::size_t depth, std::size_t maxDepth) {
    checkDepth(depth, maxDepth);
    // One extra level so the branching of the deepest slice is known.
    PartitionTable table = enumeratePartition(rel, depth + 1, maxDepth + 1);

    InfoTreeSlice slice;
    slice.depth = depth;
    slice.levels.resize(depth + 1);
    for (std::size_t len = 0; len <= depth; ++len) {
        for (const auto& members : table.classesByLength[len]) {
            slice.levels[len].push_back(TreeNode{members, std::nullopt, 0});
        }
    }
    for (std::size_t len = 1; len <= depth + 1; ++len) {
        const auto& parents = table.classesByLength[len - 1];
        std::vector<std::size_t> childCount(parents.size(), 0);
        for (std::size_t ci = 0; ci < table.classesByLength[len].size(); ++ci) {
            const auto& cls = table.classesByLength[len][ci];
            std::optional<std::size_t> parent;
            for (const Word& w : cls) {
                Word prefix(w.begin(), w.end() - 1);
                std::size_t pi = classIndexOf(parents, prefix);
                if (parent && *parent != pi) {
                    throw InternalError(
                        "information structure is not a tree: a class has two parents");
                }
                parent = pi;
            }
            ++childCount[*parent];
            if (len <= depth) slice.levels[len][ci].parent = parent;
        }
        for (std::size_t pi = 0; pi < parents.size(); ++pi) {
            slice.levels[len - 1][pi].branching = childCount[pi];
        }
    }
    return slice;
}

std::map<Word, std::size_t> rankObservation(const TwoTapeDfa& rel, std::size_t depth,
                                            std::size_t maxDepth) {
    checkDepth(depth, maxDepth);
    std::map<Word, std::size_t> ranks;
    std::vector<std::vector<Word>> parents = classesAtLength(rel, 0);
    for (std::size_t len = 1; len <= depth; ++len) {
        std::vector<std::vector<Word>> classes = classesAtLength(rel, len);
        // Children of each parent, ordered by lexicographically least member;
        // class lists are already in that order globally.
        std::vector<std::size_t> nextRank(parents.size(), 1);
        for (const auto& cls : classes) {
            Word prefix(cls.front().begin(), cls.front().end() - 1);
            std::size_t pi = classIndexOf(parents, prefix);
            std::size_t rank = nextRank[pi]++;
            for (const Word& w : cls) ranks[w] = rank;
        }
        parents = std::move(classes);
    }
    return ranks;
}

std::pair<StateMatrix, std::size_t> bruteMatrix(const TwoTapeDfa& rel, const Word& history,
                                                std::size_t maxDepth) {
    checkDepth(history.size(), maxDepth);
    const std::size_t g = rel.base.size();
    const std::size_t len = history.size();

    // The relation class of the history.
    std::vector<Word> relClass;
    std::vector<Word> all = wordsOfLength(g, len);
    for (const Word& w : all) {
        if (relAccepts(rel, history, w)) relClass.push_back(w);
    }
    if (relClass.empty()) {
        throw InputError("history is not related to itself; relation is not reflexive");
    }

    // Split into interchangeability classes by the definitional check: two
    // words agree when they reach the same state against every third word.
    auto signature = [&](const Word& w) {
        std::vector<State> sig;
        sig.reserve(all.size());
        for (const Word& pi : all) {
            sig.push_back(run(rel.dfa, zipWords(w, pi, g)));
        }
        return sig;
    };
    std::vector<std::vector<Word>> interClasses;
    std::vector<std::vector<State>> signatures;
    std::size_t index = 0;
    for (const Word& w : relClass) {
        std::vector<State> sig = signature(w);
        bool placed = false;
        for (std::size_t i = 0; i < interClasses.size(); ++i) {
            if (signatures[i] == sig) {
                interClasses[i].push_back(w);
                placed = true;
                break;
            }
        }
        if (!placed) {
            interClasses.push_back({w});
            signatures.push_back(std::move(sig));
        }
    }
    for (std::size_t i = 0; i < interClasses.size(); ++i) {
        if (std::binary_search(interClasses[i].begin(), interClasses[i].end(), history)) {
            index = i + 1;
        }
    }

    StateMatrix matrix;
    matrix.dim = interClasses.size();
    matrix.entries.resize(matrix.dim * matrix.dim);
    for (std::size_t i = 0; i < matrix.dim; ++i) {
        for (std::size_t j = 0; j < matrix.dim; ++j) {
            matrix.entries[i * matrix.dim + j] = run(
                rel.dfa, zipWords(interClasses[i].front(), interClasses[j].front(), g));
        }
    }
    return {std::move(matrix), index};
}

KernelCheck kernelEqual(const MealyMachine& m, const TwoTapeDfa& rel, std::size_t depth,
                        std::size_t maxDepth) {
    checkDepth(depth, maxDepth);
    if (m.input != rel.base) {
        throw InputError("machine and relation disagree on the move alphabet");
    }
    const std::size_t g = rel.base.size();
    for (std::size_t len = 1; len <= depth; ++len) {
        std::vector<Word> words = wordsOfLength(g, len);
        std::vector<Word> histories;
        histories.reserve(words.size());
        for (const Word& w : words) histories.push_back(observationHistory(m, w));
        for (std::size_t i = 0; i < words.size(); ++i) {
            for (std::size_t j = 0; j < words.size(); ++j) {
                const bool sameObs = histories[i] == histories[j];
                const bool related = relAccepts(rel, words[i], words[j]);
                if (sameObs != related) {
                    return {false, PairWord{words[i], words[j]}};
                }
            }
        }
    }
    return {true, std::nullopt};
}

}  // namespace infoquot::oracle
