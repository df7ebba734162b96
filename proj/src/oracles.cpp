#include "esp/oracles.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>

namespace esp {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

struct DSU {
    std::vector<int> parent;
    explicit DSU(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

// Minimum spanning tree of the subgraph induced by `mask`, or nullopt if
// disconnected. Ties broken by edge index for determinism.
std::optional<TreeSolution> mst_on_subset(const Instance& inst, std::uint32_t mask) {
    std::vector<int> order;
    for (int i = 0; i < static_cast<int>(inst.edges().size()); ++i) {
        const auto& e = inst.edges()[i];
        if ((mask >> e.u & 1) && (mask >> e.v & 1)) order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return inst.edges()[a].length < inst.edges()[b].length;
    });
    TreeSolution sol;
    DSU dsu(inst.size());
    int vertex_count = 0;
    for (int v = 0; v < inst.size(); ++v)
        if (mask >> v & 1) {
            sol.vertices.push_back(v);
            sol.collected += inst.weight(v);
            ++vertex_count;
        }
    for (int i : order) {
        const auto& e = inst.edges()[i];
        if (dsu.unite(e.u, e.v)) {
            sol.edge_indices.push_back(i);
            sol.length += e.length;
        }
    }
    if (static_cast<int>(sol.edge_indices.size()) != vertex_count - 1) return std::nullopt;
    return sol;
}

bool better(const TreeSolution& a, const TreeSolution& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.edge_indices < b.edge_indices;
}

TreeSolution best_subset_tree(const Instance& inst, int max_n,
                              const std::function<bool(std::uint32_t, Weight)>& feasible) {
    const int n = inst.size();
    if (n > max_n)
        throw SizeLimitError("exact oracle limited to " + std::to_string(max_n) +
                             " vertices, got " + std::to_string(n));
    std::optional<TreeSolution> best;
    const std::uint32_t root_bit = 1u << inst.root();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        if (!(mask & root_bit)) continue;
        Weight w = 0;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1) w += inst.weight(v);
        if (!feasible(mask, w)) continue;
        auto tree = mst_on_subset(inst, mask);
        if (tree && (!best || better(*tree, *best))) best = std::move(tree);
    }
    if (!best) throw SolverError("no feasible rooted tree for the given target");
    return *best;
}

} // namespace

TreeSolution exact_kmst(const Instance& inst, int k, int max_n) {
    if (k < 1 || k > inst.size())
        throw std::invalid_argument("k out of range: " + std::to_string(k));
    return best_subset_tree(inst, max_n, [k](std::uint32_t mask, Weight) {
        return std::popcount(mask) == k;
    });
}

TreeSolution exact_quota_tree(const Instance& inst, Weight q, int max_n) {
    if (q > inst.total_weight())
        throw SolverError("quota exceeds total weight");
    return best_subset_tree(inst, max_n,
                            [q](std::uint32_t, Weight w) { return w >= q; });
}

TreeSolution heuristic_tree_oracle(const Instance& inst, TreeTarget target) {
    const int n = inst.size();
    std::vector<char> in_tree(n, false);
    in_tree[inst.root()] = true;
    TreeSolution sol;
    sol.vertices.push_back(inst.root());
    sol.collected = inst.weight(inst.root());
    int count = 1;

    auto satisfied = [&] {
        return target.kind == TreeTarget::Kind::vertex_count
                   ? count >= target.value
                   : sol.collected >= target.value;
    };
    if (target.kind == TreeTarget::Kind::quota && target.value > inst.total_weight())
        throw SolverError("quota exceeds total weight");

    while (!satisfied()) {
        // Multi-source Dijkstra from the current tree.
        std::vector<Length> dist(n, kInf);
        std::vector<int> via(n, -1); // edge index used to reach the vertex
        using Item = std::pair<Length, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        for (int v = 0; v < n; ++v)
            if (in_tree[v]) {
                dist[v] = 0;
                pq.push({0, v});
            }
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (d != dist[u]) continue;
            for (int ei : inst.incident(u)) {
                const auto& e = inst.edges()[ei];
                int w = e.u == u ? e.v : e.u;
                if (in_tree[w]) continue;
                if (dist[u] + e.length < dist[w]) {
                    dist[w] = dist[u] + e.length;
                    via[w] = ei;
                    pq.push({dist[w], w});
                }
            }
        }
        // Cheapest useful vertex: any new vertex for a count target, a
        // weighted one for a quota target.
        int pick = -1;
        for (int v = 0; v < n; ++v) {
            if (in_tree[v] || dist[v] >= kInf) continue;
            if (target.kind == TreeTarget::Kind::quota && inst.weight(v) == 0) continue;
            if (pick == -1 || dist[v] < dist[pick]) pick = v;
        }
        if (pick == -1) throw SolverError("heuristic oracle: no reachable vertex meets target");
        // Walk the path back into the tree, adding edges and vertices.
        for (int v = pick; !in_tree[v];) {
            int ei = via[v];
            const auto& e = inst.edges()[ei];
            sol.edge_indices.push_back(ei);
            sol.length += e.length;
            in_tree[v] = true;
            sol.vertices.push_back(v);
            sol.collected += inst.weight(v);
            ++count;
            v = e.u == v ? e.v : e.u;
        }
    }
    std::sort(sol.vertices.begin(), sol.vertices.end());
    std::sort(sol.edge_indices.begin(), sol.edge_indices.end());
    return sol;
}

TreeSolution ExactOracle::solve(const Instance& inst, TreeTarget target) const {
    if (target.kind == TreeTarget::Kind::vertex_count)
        return exact_kmst(inst, static_cast<int>(target.value), max_n_);
    return exact_quota_tree(inst, target.value, max_n_);
}

std::unique_ptr<TreeOracle> make_oracle(const std::string& name, int max_n) {
    if (name == "exact") return std::make_unique<ExactOracle>(max_n);
    if (name == "heuristic") return std::make_unique<HeuristicOracle>();
    throw std::invalid_argument("unknown oracle: " + name);
}

BruteForceResult brute_force_esp(const Instance& inst, int max_n) {
    const int n = inst.size();
    if (n > max_n)
        throw SizeLimitError("brute force limited to " + std::to_string(max_n) +
                             " vertices, got " + std::to_string(n));
    const Weight W = inst.total_weight();
    const std::uint32_t root_bit = 1u << inst.root();
    const std::uint32_t full = (1u << n) - 1;

    // cost[S] = best total latency for exploring exactly the set S, starting
    // from the root. Adding v to S costs l_e * (W - w(S)): every vertex not
    // yet explored waits for the new edge.
    std::vector<std::int64_t> cost(full + 1, kInf);
    std::vector<Weight> setw(full + 1, 0);
    for (std::uint32_t s = 1; s <= full; ++s) {
        int v = std::countr_zero(s);
        setw[s] = setw[s & (s - 1)] + inst.weight(v);
    }
    struct Back {
        int vertex = -1;
        int edge = -1;
    };
    std::vector<Back> back(full + 1);
    cost[root_bit] = 0;

    // Cheapest attachment edge dominates among edges joining the same vertex
    // to the explored set, so one edge per (set, vertex) transition suffices.
    for (std::uint32_t s = root_bit; s <= full; ++s) {
        if (!(s & root_bit) || cost[s] >= kInf) continue;
        const std::int64_t pending = W - setw[s];
        for (int ei = 0; ei < static_cast<int>(inst.edges().size()); ++ei) {
            const auto& e = inst.edges()[ei];
            int inside = (s >> e.u & 1) + (s >> e.v & 1);
            if (inside != 1) continue;
            int v = (s >> e.u & 1) ? e.v : e.u;
            std::uint32_t t = s | (1u << v);
            std::int64_t c = cost[s] + e.length * pending;
            if (c < cost[t]) {
                cost[t] = c;
                back[t] = {v, ei};
            }
        }
    }

    std::uint32_t required = root_bit;
    for (int v = 0; v < n; ++v)
        if (inst.weight(v) > 0) required |= 1u << v;

    std::uint32_t best_set = 0;
    std::int64_t best = kInf;
    for (std::uint32_t s = required; s <= full; ++s) {
        if ((s & required) != required) continue;
        if (cost[s] < best) {
            best = cost[s];
            best_set = s;
        }
    }
    if (best >= kInf) throw SolverError("brute force: no covering pattern");

    BruteForceResult res;
    res.total_latency = best;
    std::vector<std::pair<int, int>> rev;
    for (std::uint32_t s = best_set; s != root_bit;) {
        const auto& b = back[s];
        const auto& e = inst.edges()[b.edge];
        rev.emplace_back(e.u, e.v);
        s &= ~(1u << b.vertex);
    }
    res.pattern.edges.assign(rev.rbegin(), rev.rend());
    return res;
}

Instance split_vertices_for_quota(const Instance& inst) {
    const int n = inst.size();
    std::vector<std::string> ids;
    std::vector<Weight> weights;
    std::vector<Instance::Edge> edges;
    for (int v = 0; v < n; ++v) {
        ids.push_back(inst.id(v));
        weights.push_back(0);
    }
    for (const auto& e : inst.edges()) edges.push_back(e);
    for (int v = 0; v < n; ++v) {
        const std::int64_t copies = 2ll * n * inst.weight(v);
        if (copies > 1'000'000)
            throw SizeLimitError("split_vertices_for_quota: pendant budget exceeded");
        for (std::int64_t i = 0; i < copies; ++i) {
            int idx = static_cast<int>(ids.size());
            ids.push_back(inst.id(v) + "#p" + std::to_string(i));
            weights.push_back(1);
            edges.push_back({v, idx, 0});
        }
    }
    return Instance(std::move(ids), std::move(weights), std::move(edges), inst.root());
}

} // namespace esp
