#include "esp/concat.hpp"

#include <algorithm>
#include <cassert>

namespace esp {

namespace {

// Runtime self-checks: these hold by construction of the algorithm, and a
// violation means a bug in an oracle or in the concatenation itself.
void check(bool ok, const char* what) {
    if (!ok) throw SolverError(std::string("internal consistency check failed: ") + what);
}

} // namespace

std::vector<TreeSolution> build_tree_family(const Instance& inst, const TreeOracle& oracle) {
    std::vector<TreeSolution> trees;
    trees.reserve(inst.size());
    for (int k = 1; k <= inst.size(); ++k)
        trees.push_back(oracle.solve(inst, TreeTarget::vertices(k)));
    return trees;
}

AuxPathGraph build_aux_unweighted(const std::vector<TreeSolution>& trees, int n) {
    AuxPathGraph g;
    for (int k = 1; k <= n; ++k) {
        g.labels.push_back(k);
        g.multiplier.push_back(Rational(n - k));
        g.tree_length.push_back(trees.at(k - 1).length);
    }
    return g;
}

QuotaSchedule build_quota_schedule(Weight total_weight, const Rational& eps) {
    if (eps <= 0) throw std::invalid_argument("epsilon must be positive");
    if (total_weight < 1) throw std::invalid_argument("total weight must be at least 1");
    QuotaSchedule s;
    s.eps = eps;
    s.total_weight = total_weight;
    const Rational base = Rational(1) + eps;
    Rational pw = 1;
    int omega = 0;
    while (pw < total_weight) {
        pw *= base;
        ++omega;
    }
    // When (1+eps)^omega lands exactly on W, the final quota would be W-1 and
    // integer weights could stop one vertex short; one more step fixes it.
    if (pw == total_weight) ++omega;
    s.omega = omega;
    Rational inv = 1;
    for (int i = 0; i <= omega; ++i) {
        s.quotas.push_back(Rational(total_weight) - total_weight * inv);
        inv /= base;
    }
    check(s.quotas.back() > total_weight - 1, "final quota forces full coverage");
    return s;
}

std::vector<TreeSolution> build_quota_trees(const Instance& inst, const QuotaSchedule& schedule,
                                            const TreeOracle& oracle) {
    std::vector<TreeSolution> trees;
    trees.reserve(schedule.quotas.size());
    for (const Rational& q : schedule.quotas) {
        const Weight target = static_cast<Weight>(ceil_rational(q));
        trees.push_back(oracle.solve(inst, TreeTarget::quota(target)));
    }
    return trees;
}

AuxPathGraph build_aux_weighted(const std::vector<TreeSolution>& trees,
                                const QuotaSchedule& schedule) {
    const int omega = schedule.omega;
    const Rational base = Rational(1) + schedule.eps;
    std::vector<char> keep(omega + 1, false);
    keep[0] = keep[omega] = true;
    for (int i = 0; i < omega; ++i) {
        const bool same = trees[i].edge_indices == trees[i + 1].edge_indices &&
                          trees[i].vertices == trees[i + 1].vertices;
        if (!same) keep[i] = true; // last index of each run has the cheapest arcs
    }
    AuxPathGraph g;
    Rational mult = schedule.total_weight; // W * (1+eps)^{-i}
    for (int i = 0; i <= omega; ++i) {
        if (keep[i]) {
            g.labels.push_back(i);
            g.multiplier.push_back(mult);
            g.tree_length.push_back(trees[i].length);
        }
        mult /= base;
    }
    return g;
}

PhasePlan shortest_path_dag(const AuxPathGraph& graph) {
    const int m = graph.size();
    check(m >= 1, "aux graph nonempty");
    std::vector<Rational> dist(m);
    std::vector<std::vector<int>> path(m);
    path[0] = {0};
    for (int j = 1; j < m; ++j) {
        bool have = false;
        for (int i = 0; i < j; ++i) {
            Rational c = dist[i] + graph.cost(i, j);
            if (!have || c < dist[j] ||
                (c == dist[j] && (path[i].size() + 1 < path[j].size() ||
                                  (path[i].size() + 1 == path[j].size() &&
                                   path[i] < std::vector<int>(path[j].begin(),
                                                              path[j].end() - 1))))) {
                dist[j] = c;
                path[j] = path[i];
                path[j].push_back(j);
                have = true;
            }
        }
    }
    PhasePlan plan;
    plan.path = path[m - 1];
    plan.cost = dist[m - 1];
    Rational acc = 0;
    for (int p : plan.path) {
        acc += graph.tree_length[p];
        plan.pi.push_back(acc);
    }
    return plan;
}

SearchPattern phases_to_pattern(const Instance& inst, const std::vector<TreeSolution>& trees,
                                const AuxPathGraph& graph, const PhasePlan& plan) {
    std::vector<char> explored(inst.size(), false);
    explored[inst.root()] = true;
    SearchPattern pat;
    // Unweighted graphs label nodes 1..n over trees[0..n-1]; weighted ones
    // label by quota index 0..omega, matching trees directly.
    const int base = graph.labels.front() == 1 ? 1 : 0;
    for (int pos : plan.path) {
        const TreeSolution& tree = trees.at(graph.labels[pos] - base);
        // Candidate edges: fewer than two endpoints explored before this phase.
        std::vector<int> cand;
        for (int ei : tree.edge_indices) {
            const auto& e = inst.edges()[ei];
            if (explored[e.u] + explored[e.v] < 2) cand.push_back(ei);
        }
        // Grow from the explored set; edges closed into cycles mid-phase are dropped.
        while (!cand.empty()) {
            bool progressed = false;
            for (auto it = cand.begin(); it != cand.end();) {
                const auto& e = inst.edges()[*it];
                int in = explored[e.u] + explored[e.v];
                if (in == 2) {
                    it = cand.erase(it);
                } else if (in == 1) {
                    pat.edges.emplace_back(e.u, e.v);
                    explored[e.u] = explored[e.v] = true;
                    it = cand.erase(it);
                    progressed = true;
                } else {
                    ++it;
                }
            }
            check(progressed || cand.empty(), "phase tree touches the explored set");
        }
    }
    return pat;
}

ConcatResult solve_unweighted(const Instance& inst, const TreeOracle& oracle) {
    const Instance unit = inst.with_unit_weights();
    const int n = unit.size();
    auto trees = build_tree_family(unit, oracle);
    AuxPathGraph g = build_aux_unweighted(trees, n);
    PhasePlan plan = shortest_path_dag(g);

    ConcatResult res;
    res.path_cost = plan.cost;
    for (int p : plan.path) res.path_labels.push_back(g.labels[p]);
    for (const auto& t : trees) res.tree_lengths.push_back(t.length);
    res.pattern = phases_to_pattern(unit, trees, g, plan);

    auto verdict = validate_pattern(unit, res.pattern);
    check(verdict.valid, "concatenated pattern is valid");
    res.report = total_latency(unit, res.pattern);
    check(Rational(res.report.total) <= plan.cost, "latency bounded by path cost");

    // Per-vertex bound: the i-th explored vertex finishes no later than the
    // cumulative tree length of the first phase whose tree holds >= i vertices.
    {
        std::vector<Length> order_latency; // latency of i-th explored vertex, i>=2
        Length t = 0;
        for (auto [u, v] : res.pattern.edges) {
            int ei = unit.find_edge(u, v);
            t += unit.edges()[ei].length;
            order_latency.push_back(t);
        }
        for (std::size_t i = 0; i < order_latency.size(); ++i) {
            const int rank = static_cast<int>(i) + 2; // root is rank 1
            std::size_t phase = 0;
            while (g.labels[plan.path[phase]] < rank) ++phase;
            check(Rational(order_latency[i]) <= plan.pi[phase], "per-vertex delay bound");
        }
    }
    return res;
}

ConcatResult solve_weighted(const Instance& inst, const Rational& eps,
                            const TreeOracle& oracle) {
    const Instance zr = inst.with_zero_root_weight();
    const Weight W = zr.total_weight();
    ConcatResult res;
    if (W == 0) {
        res.report = total_latency(zr, res.pattern);
        return res;
    }
    QuotaSchedule schedule = build_quota_schedule(W, eps);
    auto trees = build_quota_trees(zr, schedule, oracle);
    AuxPathGraph g = build_aux_weighted(trees, schedule);
    PhasePlan plan = shortest_path_dag(g);

    res.path_cost = plan.cost;
    for (int p : plan.path) res.path_labels.push_back(g.labels[p]);
    for (const auto& t : trees) res.tree_lengths.push_back(t.length);
    res.pattern = phases_to_pattern(zr, trees, g, plan);

    auto verdict = validate_pattern(zr, res.pattern);
    check(verdict.valid, "concatenated pattern is valid");
    res.report = total_latency(zr, res.pattern);
    check(Rational(res.report.total) <= plan.cost, "latency bounded by path cost");

    // Quota-level bound: weight q_i is collected no later than the cumulative
    // tree length of the first phase whose tree already collects q_i.
    {
        std::vector<char> seen(zr.size(), false);
        seen[zr.root()] = true;
        Weight got = zr.weight(zr.root());
        Length t = 0;
        std::vector<std::pair<Length, Weight>> timeline = {{0, got}};
        for (auto [u, v] : res.pattern.edges) {
            int ei = zr.find_edge(u, v);
            t += zr.edges()[ei].length;
            int nv = seen[u] ? v : u;
            seen[nv] = true;
            got += zr.weight(nv);
            timeline.emplace_back(t, got);
        }
        for (const Rational& q : schedule.quotas) {
            const Weight need = static_cast<Weight>(ceil_rational(q));
            Length reached = -1;
            for (auto [time, w] : timeline)
                if (w >= need) {
                    reached = time;
                    break;
                }
            check(reached >= 0, "every scheduled quota is reached");
            std::size_t phase = 0;
            while (trees[g.labels[plan.path[phase]]].collected < need) ++phase;
            check(Rational(reached) <= plan.pi[phase], "quota delay bound");
        }
    }
    return res;
}

} // namespace esp
