#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <tuple>

#include "esp/euclidean.hpp"

// Minimum-cost portal-respecting route for the segmented objective. The
// solution space is the one induced by the quadtree: straight moves inside
// leaf cells, cell changes only at portals, at most `crossing_cap` boundary
// crossings per cell and segment. Instead of materializing a table entry for
// every (cell, per-segment length / crossing-sequence) combination, the
// optimum over that space is found by a label-correcting search on the portal
// graph, which evaluates exactly the realizable entries; the per-cell keys of
// the winning route are recovered afterwards from the route itself.

namespace esp {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

void check(bool ok, const char* what) {
    if (!ok) throw SolverError(std::string("internal consistency check failed: ") + what);
}

struct NodeKey {
    std::int64_t x, y;
    bool operator<(const NodeKey& o) const { return std::tie(x, y) < std::tie(o.x, o.y); }
};

NodeKey key_of(double x, double y) {
    return {std::llround(x * 1048576.0), std::llround(y * 1048576.0)};
}

struct PortalGraph {
    std::vector<std::pair<double, double>> pos;            // node coordinates
    std::vector<std::vector<std::tuple<int, Length, int>>> adj; // (to, dist, leaf cell)
    std::vector<int> point_node;                            // per input point
};

// Equidistant positions on one cell side, corners included.
void side_portals(double x0, double y0, double x1, double y1, int count,
                  std::vector<std::pair<double, double>>& out) {
    for (int i = 0; i < count; ++i) {
        double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        out.emplace_back(x0 + f * (x1 - x0), y0 + f * (y1 - y0));
    }
}

std::vector<std::pair<double, double>> own_portals(const QuadCell& c, int per_side) {
    std::vector<std::pair<double, double>> out;
    side_portals(c.x, c.y, c.x + c.side, c.y, per_side, out);
    side_portals(c.x, c.y + c.side, c.x + c.side, c.y + c.side, per_side, out);
    side_portals(c.x, c.y, c.x, c.y + c.side, per_side, out);
    side_portals(c.x + c.side, c.y, c.x + c.side, c.y + c.side, per_side, out);
    return out;
}

bool on_boundary(const QuadCell& c, double x, double y) {
    const double e = 1e-9;
    bool x_in = x >= c.x - e && x <= c.x + c.side + e;
    bool y_in = y >= c.y - e && y <= c.y + c.side + e;
    bool x_edge = std::abs(x - c.x) < e || std::abs(x - c.x - c.side) < e;
    bool y_edge = std::abs(y - c.y) < e || std::abs(y - c.y - c.side) < e;
    return (x_edge && y_in) || (y_edge && x_in);
}

PortalGraph build_portal_graph(const ShiftedQuadtree& tree) {
    PortalGraph g;
    std::map<NodeKey, int> ids;
    auto node = [&](double x, double y) {
        auto [it, fresh] = ids.try_emplace(key_of(x, y), static_cast<int>(g.pos.size()));
        if (fresh) {
            g.pos.emplace_back(x, y);
            g.adj.emplace_back();
        }
        return it->second;
    };
    for (std::size_t i = 0; i < tree.point_pos.size(); ++i)
        g.point_node.push_back(node(tree.point_pos[i].first, tree.point_pos[i].second));

    for (std::size_t c = 0; c < tree.cells.size(); ++c) {
        const QuadCell& cell = tree.cells[c];
        if (cell.children[0] != -1) continue; // movement happens inside leaves
        std::vector<int> members;
        // Own portals plus every ancestor portal on this boundary.
        for (int a = static_cast<int>(c); a != -1; a = tree.cells[a].parent)
            for (auto [px, py] : own_portals(tree.cells[a], tree.portals_per_side))
                if (on_boundary(cell, px, py)) members.push_back(node(px, py));
        for (int p : cell.points) members.push_back(g.point_node[p]);
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                int u = members[i], v = members[j];
                auto d = static_cast<Length>(std::llround(
                    std::hypot(g.pos[u].first - g.pos[v].first,
                               g.pos[u].second - g.pos[v].second)));
                g.adj[u].emplace_back(v, d, static_cast<int>(c));
                g.adj[v].emplace_back(u, d, static_cast<int>(c));
            }
    }
    return g;
}

struct Label {
    int node;
    Length elapsed;
    std::int64_t cost;
    std::uint32_t mask;
    int parent;    // index into the label arena
    int via_leaf;  // leaf cell of the incoming move, -1 at the start
};

int segment_of(Length t, const std::vector<Length>& breaks) {
    for (std::size_t i = 0; i < breaks.size(); ++i)
        if (t <= breaks[i]) return static_cast<int>(i);
    return -1;
}

} // namespace

SegmentedSolution segmented_portal_dp(const GridRounded& grid, const ShiftedQuadtree& tree,
                                      const std::vector<Length>& breakpoints,
                                      int crossing_cap) {
    check(!breakpoints.empty(), "at least one breakpoint");
    check(std::is_sorted(breakpoints.begin(), breakpoints.end()), "breakpoints sorted");
    const int n = static_cast<int>(grid.inst.points.size());
    PortalGraph g = build_portal_graph(tree);

    std::vector<std::uint32_t> bit_at(g.pos.size(), 0);
    std::uint32_t full = 0;
    {
        int wi = 0;
        for (int p = 0; p < n; ++p) {
            if (grid.inst.points[p].weight == 0) continue;
            check(wi < 31, "portal routing limited to 31 weighted points");
            bit_at[g.point_node[p]] |= 1u << wi;
            full |= 1u << wi;
            ++wi;
        }
    }
    const Length horizon = breakpoints.back();

    // Per-cell, per-segment crossing counter along one candidate route chain.
    auto cap_ok = [&](const std::vector<Label>& arena, const Label& cand) {
        if (crossing_cap >= 1000000) return true;
        std::map<std::pair<int, int>, int> count; // (cell, segment) -> crossings
        const Label* cur = &cand;
        while (cur->parent != -1) {
            const Label& prev = arena[cur->parent];
            if (prev.via_leaf != -1 && prev.via_leaf != cur->via_leaf) {
                // The route changed leaves at `prev.node`: it crosses the
                // boundary of every cell containing exactly one of the leaves.
                int seg = segment_of(prev.elapsed, breakpoints);
                for (std::size_t c = 0; c < tree.cells.size(); ++c) {
                    bool in_prev = false, in_cur = false;
                    for (int l = prev.via_leaf; l != -1; l = tree.cells[l].parent)
                        in_prev = in_prev || l == static_cast<int>(c);
                    for (int l = cur->via_leaf; l != -1; l = tree.cells[l].parent)
                        in_cur = in_cur || l == static_cast<int>(c);
                    if (in_prev != in_cur)
                        if (++count[{static_cast<int>(c), seg}] > crossing_cap) return false;
                }
            }
            cur = &prev;
        }
        return true;
    };

    // Label-correcting search over (node, visited-set) with a Pareto frontier
    // on (elapsed, cost).
    std::vector<Label> arena;
    std::map<std::pair<int, std::uint32_t>, std::vector<int>> frontier;
    using QItem = std::tuple<std::int64_t, Length, int>; // cost, elapsed, label index
    std::priority_queue<QItem, std::vector<QItem>, std::greater<>> pq;

    auto dominated = [&](int node, std::uint32_t mask, Length e, std::int64_t c) {
        auto it = frontier.find({node, mask});
        if (it == frontier.end()) return false;
        for (int li : it->second)
            if (arena[li].elapsed <= e && arena[li].cost <= c) return true;
        return false;
    };
    auto push = [&](Label l) {
        if (l.elapsed > horizon) return;
        if (dominated(l.node, l.mask, l.elapsed, l.cost)) return;
        if (!cap_ok(arena, l)) return;
        int idx = static_cast<int>(arena.size());
        arena.push_back(l);
        auto& fr = frontier[{l.node, l.mask}];
        fr.erase(std::remove_if(fr.begin(), fr.end(),
                                [&](int o) {
                                    return arena[o].elapsed >= l.elapsed &&
                                           arena[o].cost >= l.cost;
                                }),
                 fr.end());
        fr.push_back(idx);
        pq.emplace(l.cost, l.elapsed, idx);
    };

    const int start = g.point_node[grid.inst.root];
    push({start, 0, 0, bit_at[start], -1, -1}); // root (and co-located weight) at time 0

    int best = -1;
    while (!pq.empty()) {
        auto [cost, elapsed, li] = pq.top();
        pq.pop();
        Label cur = arena[li];
        if (cost != cur.cost || elapsed != cur.elapsed) continue;
        if (cur.mask == full) {
            best = li;
            break;
        }
        for (auto [to, d, leaf] : g.adj[cur.node]) {
            Length e2 = cur.elapsed + d;
            if (e2 > horizon) continue;
            std::uint32_t m2 = cur.mask | bit_at[to];
            std::int64_t c2 = cur.cost;
            if (std::uint32_t fresh = bit_at[to] & ~cur.mask) {
                int seg = segment_of(e2, breakpoints);
                if (seg < 0) continue;
                c2 += static_cast<std::int64_t>(std::popcount(fresh)) * breakpoints[seg];
            }
            push({to, e2, c2, m2, li, leaf});
        }
    }

    SegmentedSolution sol;
    sol.breakpoints = breakpoints;
    sol.rounded_times.assign(n, -1);
    sol.segment_lengths.assign(breakpoints.size(), 0);
    if (best == -1) return sol; // infeasible within the horizon

    std::vector<int> chain;
    for (int li = best; li != -1; li = arena[li].parent) chain.push_back(li);
    std::reverse(chain.begin(), chain.end());

    std::vector<char> visited(n, false);
    int last_point = grid.inst.root;
    visited[grid.inst.root] = true;
    sol.rounded_times[grid.inst.root] = 0;
    for (int li : chain) {
        const Label& l = arena[li];
        sol.walk.push_back(g.pos[l.node]);
        if (l.parent != -1) {
            const Label& prev = arena[l.parent];
            // Attribute travel to segments, slicing moves at breakpoints.
            Length lo = prev.elapsed, hi = l.elapsed;
            Length seg_lo = 0;
            for (std::size_t i = 0; i < breakpoints.size(); ++i) {
                Length a = std::max(lo, seg_lo), b = std::min(hi, breakpoints[i]);
                if (b > a) sol.segment_lengths[i] += b - a;
                seg_lo = breakpoints[i];
            }
        }
        for (int p = 0; p < n; ++p) {
            if (visited[p] || g.point_node[p] != l.node) continue;
            visited[p] = true;
            int seg = segment_of(l.elapsed, breakpoints);
            sol.rounded_times[p] = l.elapsed == 0 ? 0 : breakpoints[seg];
            if (p != grid.inst.root) {
                sol.pattern.edges.emplace_back(last_point, p);
                last_point = p;
            }
        }
        // chains of co-located points hang off the walk position
        for (int p = 0; p < n; ++p)
            if (visited[p] && g.point_node[p] == l.node) last_point = p;
    }
    sol.cost = arena[best].cost;
    return sol;
}

} // namespace esp
