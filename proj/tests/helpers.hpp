#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "esp/euclidean.hpp"
#include "esp/oracles.hpp"

namespace esp::testing {

/// Instance from edge triples over auto-named vertices v0..v{n-1}.
inline Instance make_instance(int n, std::vector<Weight> weights,
                              std::vector<Instance::Edge> edges, int root = 0) {
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back("v" + std::to_string(i));
    return Instance(std::move(ids), std::move(weights), std::move(edges), root);
}

/// Independent exhaustive optimum: recursive enumeration of exploration orders
/// (no subset memoization, unlike the production brute force). Stops a branch
/// as soon as every positive-weight vertex is explored.
inline std::int64_t enumerate_optimum(const Instance& inst) {
    const int n = inst.size();
    std::vector<bool> in(n, false);
    in[inst.root()] = true;
    Weight missing = 0;
    for (int v = 0; v < n; ++v)
        if (v != inst.root()) missing += inst.weight(v);
    std::int64_t best = -1;

    auto rec = [&](auto&& self, Length elapsed, std::int64_t acc, Weight left) -> void {
        if (left == 0) {
            if (best < 0 || acc < best) best = acc;
            return;
        }
        if (best >= 0 && acc >= best) return; // weights only accrue later
        for (const auto& e : inst.edges()) {
            int fresh = -1;
            if (in[e.u] && !in[e.v]) fresh = e.v;
            else if (in[e.v] && !in[e.u]) fresh = e.u;
            else continue;
            in[fresh] = true;
            self(self, elapsed + e.length, acc + inst.weight(fresh) * (elapsed + e.length),
                 left - inst.weight(fresh));
            in[fresh] = false;
        }
    };
    rec(rec, 0, 0, missing);
    return best;
}

/// Minimum-cost terminal-spanning tree of a {1,2}-cost complete graph by
/// subset enumeration (Steiner vertices optional).
inline int brute_steiner_cost(const ST12Instance& st) {
    const int n = static_cast<int>(st.ids.size());
    std::uint32_t term = 0;
    for (int t : st.terminals) term |= 1u << t;
    int best = -1;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if ((mask & term) != term) continue;
        // MST over the chosen vertex set (complete, so always connected).
        std::vector<int> verts;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1) verts.push_back(v);
        std::vector<bool> used(verts.size(), false);
        std::vector<int> dist(verts.size(), 3);
        used[0] = true;
        for (std::size_t i = 1; i < verts.size(); ++i) dist[i] = st.cost[verts[0]][verts[i]];
        int total = 0;
        for (std::size_t step = 1; step < verts.size(); ++step) {
            int pick = -1;
            for (std::size_t i = 0; i < verts.size(); ++i)
                if (!used[i] && (pick < 0 || dist[i] < dist[pick])) pick = static_cast<int>(i);
            used[pick] = true;
            total += dist[pick];
            for (std::size_t i = 0; i < verts.size(); ++i)
                if (!used[i]) dist[i] = std::min(dist[i], st.cost[verts[pick]][verts[i]]);
        }
        if (best < 0 || total < best) best = total;
    }
    return best;
}

/// Exact tree oracle that reports lengths multiplied by `num/den`; the returned
/// tree itself is optimal, so the advertised factor is honest.
class InflatedOracle final : public TreeOracle {
public:
    InflatedOracle(std::int64_t num, std::int64_t den) : num_(num), den_(den) {}
    TreeSolution solve(const Instance& inst, TreeTarget target) const override {
        TreeSolution s = exact_.solve(inst, target);
        s.length = (s.length * num_ + den_ - 1) / den_;
        return s;
    }
    std::optional<double> factor() const override {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }
    std::string name() const override { return "inflated"; }

private:
    ExactOracle exact_;
    std::int64_t num_, den_;
};

/// Exhaustive optimum of the breakpoint-rounded objective over point-level
/// patterns with integer distances d(u,v) = round(|u - v|). Returns -1 when no
/// pattern finishes every weighted point within the last breakpoint.
inline std::int64_t brute_segmented_optimum(const std::vector<std::pair<double, double>>& pos,
                                            const std::vector<Weight>& weights, int root,
                                            const std::vector<Length>& breakpoints) {
    const int n = static_cast<int>(pos.size());
    auto dist = [&](int u, int v) {
        return static_cast<Length>(
            std::llround(std::hypot(pos[u].first - pos[v].first, pos[u].second - pos[v].second)));
    };
    auto round_up = [&](Length t) -> Length {
        for (Length b : breakpoints)
            if (b >= t) return b;
        return -1;
    };
    std::vector<bool> in(n, false);
    in[root] = true;
    Weight missing = 0;
    for (int v = 0; v < n; ++v)
        if (v != root) missing += weights[v];
    if (missing == 0) return 0;
    std::int64_t best = -1;
    auto rec = [&](auto&& self, Length elapsed, std::int64_t acc, Weight left) -> void {
        if (left == 0) {
            if (best < 0 || acc < best) best = acc;
            return;
        }
        if (best >= 0 && acc >= best) return;
        for (int from = 0; from < n; ++from) {
            if (!in[from]) continue;
            for (int to = 0; to < n; ++to) {
                if (in[to]) continue;
                Length t = elapsed + dist(from, to);
                Length rt = weights[to] > 0 ? round_up(t) : 0;
                if (weights[to] > 0 && rt < 0) continue;
                in[to] = true;
                self(self, t, acc + weights[to] * rt, left - weights[to]);
                in[to] = false;
            }
        }
    };
    rec(rec, 0, 0, missing);
    return best;
}

/// Grid-rounding coarseness that puts k grid cells across the bounding square
/// of the points themselves (the full grid side is (3n^2+1) times that square).
inline double cg_for_resolution(int n, double eps, int k) {
    return std::pow(static_cast<double>(n), 4) / (eps * k * (3.0 * n * n + 1.0));
}

/// Seeded random connected instance on n vertices: a random spanning tree plus
/// each extra edge with probability 1/2; lengths in {1..3}, weights in {0..wmax}.
inline Instance random_connected(int n, int wmax, std::mt19937_64& rng) {
    std::vector<Instance::Edge> edges;
    for (int v = 1; v < n; ++v) {
        int parent = static_cast<int>(rng() % v);
        edges.push_back({parent, v, static_cast<Length>(1 + rng() % 3)});
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            bool tree_edge = false;
            for (const auto& e : edges)
                if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) tree_edge = true;
            if (!tree_edge && rng() % 2 == 0)
                edges.push_back({u, v, static_cast<Length>(1 + rng() % 3)});
        }
    std::vector<Weight> weights(n, 1);
    if (wmax != 1) {
        bool any = false;
        for (int v = 0; v < n; ++v) {
            weights[v] = static_cast<Weight>(rng() % (wmax + 1));
            if (v != 0 && weights[v] > 0) any = true;
        }
        weights[0] = 0;
        if (!any && n > 1) weights[1] = 1;
    }
    return make_instance(n, std::move(weights), std::move(edges));
}

/// Random valid covering pattern on an instance: repeatedly expands across a
/// random frontier edge until every positive-weight vertex is explored.
inline SearchPattern random_pattern(const Instance& inst, std::mt19937_64& rng) {
    const int n = inst.size();
    std::vector<bool> in(n, false);
    in[inst.root()] = true;
    Weight left = 0;
    for (int v = 0; v < n; ++v)
        if (v != inst.root()) left += inst.weight(v);
    SearchPattern pat;
    while (left > 0) {
        std::vector<int> frontier;
        for (std::size_t i = 0; i < inst.edges().size(); ++i) {
            const auto& e = inst.edges()[i];
            if (in[e.u] != in[e.v]) frontier.push_back(static_cast<int>(i));
        }
        int pick = frontier[rng() % frontier.size()];
        const auto& e = inst.edges()[pick];
        int fresh = in[e.u] ? e.v : e.u;
        in[fresh] = true;
        left -= inst.weight(fresh);
        pat.edges.emplace_back(e.u, e.v);
    }
    return pat;
}

} // namespace esp::testing
