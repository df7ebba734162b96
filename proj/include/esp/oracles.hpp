#pragma once

#include <memory>
#include <optional>

#include "esp/core.hpp"

namespace esp {

/// Rooted subtree of an instance, with cached length and collected weight.
struct TreeSolution {
    std::vector<int> edge_indices; // indices into Instance::edges()
    std::vector<int> vertices;     // sorted, always contains the root
    Length length = 0;
    Weight collected = 0;
};

struct TreeTarget {
    enum class Kind { vertex_count, quota };
    Kind kind;
    std::int64_t value;

    static TreeTarget vertices(std::int64_t k) { return {Kind::vertex_count, k}; }
    static TreeTarget quota(Weight q) { return {Kind::quota, q}; }
};

/// Pluggable rooted-tree solver. `factor()` is the advertised approximation
/// guarantee, or nullopt when the oracle makes no promise.
class TreeOracle {
public:
    virtual ~TreeOracle() = default;
    virtual TreeSolution solve(const Instance& inst, TreeTarget target) const = 0;
    virtual std::optional<double> factor() const = 0;
    virtual std::string name() const = 0;
};

/// Minimum-length rooted tree with exactly k vertices. Subset enumeration;
/// throws SizeLimitError above max_n.
TreeSolution exact_kmst(const Instance& inst, int k, int max_n = 16);

/// Minimum-length rooted tree collecting weight >= q.
TreeSolution exact_quota_tree(const Instance& inst, Weight q, int max_n = 16);

/// Greedy shortest-path growth until the target is met. Always feasible,
/// no guarantee advertised.
TreeSolution heuristic_tree_oracle(const Instance& inst, TreeTarget target);

class ExactOracle final : public TreeOracle {
public:
    explicit ExactOracle(int max_n = 16) : max_n_(max_n) {}
    TreeSolution solve(const Instance& inst, TreeTarget target) const override;
    std::optional<double> factor() const override { return 1.0; }
    std::string name() const override { return "exact"; }

private:
    int max_n_;
};

class HeuristicOracle final : public TreeOracle {
public:
    TreeSolution solve(const Instance& inst, TreeTarget target) const override {
        return heuristic_tree_oracle(inst, target);
    }
    std::optional<double> factor() const override { return std::nullopt; }
    std::string name() const override { return "heuristic"; }
};

std::unique_ptr<TreeOracle> make_oracle(const std::string& name, int max_n = 16);

struct BruteForceResult {
    SearchPattern pattern;
    std::int64_t total_latency = 0;
};

/// Optimal expanding search by dynamic programming over explored vertex sets.
/// Zero-weight vertices are included only when they pay for themselves.
BruteForceResult brute_force_esp(const Instance& inst, int max_n = 8);

/// Unit-weight instance where each weight-w vertex gains 2n*w zero-length
/// pendants; quota q corresponds to a vertex-count target of 2nq.
Instance split_vertices_for_quota(const Instance& inst);

} // namespace esp
