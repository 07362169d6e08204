#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "infoquot/automaton.hpp"
#include "infoquot/synthesis.hpp"

// Brute-force reference implementations used as ground truth in tests and
// behind the partition/tree commands. Everything here drives the relation
// exclusively through `run`; none of the product or closure machinery of the
// main pipeline is shared.
namespace infoquot::oracle {

inline constexpr std::size_t kPartitionDepthBudget = 8;
inline constexpr std::size_t kMatrixDepthBudget = 6;
inline constexpr std::size_t kKernelDepthBudget = 6;

// Information partition per history length. Classes are ordered by their
// lexicographically least member, members lexicographically.
struct PartitionTable {
    std::size_t depth = 0;
    std::vector<std::vector<std::vector<Word>>> classesByLength;  // [len][class][member]
};

PartitionTable enumeratePartition(const TwoTapeDfa& rel, std::size_t depth,
                                  std::size_t maxDepth = kPartitionDepthBudget);

struct TreeNode {
    std::vector<Word> members;
    // Index of the parent class one level up; absent at the root.
    std::optional<std::size_t> parent;
    std::size_t branching = 0;  // number of child classes one level down
};

// Quotient of the history tree, sliced at the given depth. Branching degrees
// are computed against level depth+1. Fails if a node would have two parents.
struct InfoTreeSlice {
    std::size_t depth = 0;
    std::vector<std::vector<TreeNode>> levels;  // [len][class]
};

InfoTreeSlice infoTree(const TwoTapeDfa& rel, std::size_t depth,
                       std::size_t maxDepth = kPartitionDepthBudget);

// Rank of every nonempty history up to the depth: the position of its class
// among the child classes of its prefix's class, children ordered by their
// lexicographically least member. Ranks are 1-based.
std::map<Word, std::size_t> rankObservation(const TwoTapeDfa& rel, std::size_t depth,
                                            std::size_t maxDepth = kPartitionDepthBudget);

// Matrix and 1-based index of a history, built by enumerating its relation
// class and splitting it into interchangeability classes with the
// definitional all-third-words check.
std::pair<StateMatrix, std::size_t> bruteMatrix(const TwoTapeDfa& rel, const Word& history,
                                                std::size_t maxDepth = kMatrixDepthBudget);

struct KernelCheck {
    bool equal = false;
    std::optional<PairWord> counterexample;  // first disagreeing pair
};

// Exhaustively compares observation-history equality under the machine with
// acceptance by the relation, over all same-length pairs up to the depth.
KernelCheck kernelEqual(const MealyMachine& m, const TwoTapeDfa& rel, std::size_t depth,
                        std::size_t maxDepth = kKernelDepthBudget);

}  // namespace infoquot::oracle
