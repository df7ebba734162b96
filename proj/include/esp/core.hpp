#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace esp {

using Weight = std::int64_t;
using Length = std::int64_t;

/// Thrown when an instance exceeds a configured desk-scale size bound.
class SizeLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a solver cannot produce a solution (oracle failure, infeasible target).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rooted undirected graph with integer edge lengths and integer vertex weights.
/// Vertex ids are opaque strings mapped to dense indices; immutable after construction.
class Instance {
public:
    struct Edge {
        int u;
        int v;
        Length length;
    };

    Instance(std::vector<std::string> ids, std::vector<Weight> weights,
             std::vector<Edge> edges, int root);

    int size() const { return static_cast<int>(weights_.size()); }
    int root() const { return root_; }
    const std::string& id(int v) const { return ids_.at(v); }
    int index_of(const std::string& id) const;
    Weight weight(int v) const { return weights_.at(v); }
    const std::vector<Weight>& weights() const { return weights_; }
    Weight total_weight() const { return total_weight_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& incident(int v) const { return incident_.at(v); }

    /// Index of the edge joining u and v, or -1.
    int find_edge(int u, int v) const;

    /// Number of weighted vertices (V*).
    int num_weighted() const;

    /// Copy with replaced vertex weights.
    Instance with_weights(std::vector<Weight> weights) const;
    /// Copy with the root weight forced to zero.
    Instance with_zero_root_weight() const;
    /// Copy with all weights set to one.
    Instance with_unit_weights() const;

private:
    std::vector<std::string> ids_;
    std::vector<Weight> weights_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> incident_;
    int root_;
    Weight total_weight_;
};

/// Ordered edge sequence; every prefix must form a tree containing the root.
struct SearchPattern {
    std::vector<std::pair<int, int>> edges;

    bool empty() const { return edges.empty(); }
    std::size_t size() const { return edges.size(); }
};

enum class Violation {
    none,
    root_miss,
    cycle,
    disconnected,
    unknown_edge,
    uncovered,
};

struct PatternVerdict {
    bool valid = true;
    Violation kind = Violation::none;
    int index = 0;   // 1-based index of the first violating edge (m+1 for coverage)
    int vertex = -1; // uncovered weighted vertex, if any
};

/// Prefix-tree check over an implicit vertex set {0..n-1}: every prefix must be a
/// tree containing the root. If `coverage` is non-null, all vertices with positive
/// weight must additionally be visited. Edge existence is not checked here.
PatternVerdict validate_prefix_tree(int n, int root,
                                    std::span<const std::pair<int, int>> edges,
                                    const std::vector<Weight>* coverage);

/// Accepts iff every prefix is a tree containing the root and all of V* is covered.
PatternVerdict validate_pattern(const Instance& inst, const SearchPattern& pat);

std::string describe(const PatternVerdict& verdict, const Instance& inst);

struct LatencyReport {
    std::vector<Length> latency; // per vertex; -1 if unexplored
    std::int64_t total = 0;      // sum of w_v * L_v
    Length pattern_length = 0;   // sum of edge lengths of the pattern
};

/// Computes per-vertex latencies and the total latency. Throws std::invalid_argument
/// on invalid patterns.
LatencyReport total_latency(const Instance& inst, const SearchPattern& pat);

/// Concatenation: `first` followed by `second` with cycle-closing edges skipped.
SearchPattern concat_patterns(const SearchPattern& first, const SearchPattern& second,
                              const Instance& inst);

/// Concatenation over raw endpoint sequences (no instance needed); used for
/// point patterns on complete metrics.
std::vector<std::pair<int, int>> concat_edge_sequences(
    int root, std::span<const std::pair<int, int>> first,
    std::span<const std::pair<int, int>> second);

} // namespace esp
