#pragma once

#include "esp/oracles.hpp"
#include "esp/rational.hpp"

namespace esp {

/// Auxiliary DAG over tree indices: arc (i,j) for i<j with cost
/// multiplier[i] * tree_length[j]. Node labels are the schedule indices
/// (1..n in the unweighted case, quota indices 0..omega in the weighted one).
struct AuxPathGraph {
    std::vector<int> labels;
    std::vector<Rational> multiplier;  // per node, as arc source
    std::vector<Length> tree_length;   // per node, as arc destination

    int size() const { return static_cast<int>(labels.size()); }
    Rational cost(int i, int j) const { return multiplier[i] * tree_length[j]; }
};

struct PhasePlan {
    std::vector<int> path;       // node positions into the AuxPathGraph, increasing
    Rational cost = 0;
    std::vector<Rational> pi;    // cumulative tree lengths along the path
};

struct QuotaSchedule {
    Rational eps;
    Weight total_weight = 0;
    int omega = 0;
    std::vector<Rational> quotas; // q_0 = 0 .. q_omega > W-1
};

std::vector<TreeSolution> build_tree_family(const Instance& inst, const TreeOracle& oracle);

AuxPathGraph build_aux_unweighted(const std::vector<TreeSolution>& trees, int n);

QuotaSchedule build_quota_schedule(Weight total_weight, const Rational& eps);

std::vector<TreeSolution> build_quota_trees(const Instance& inst, const QuotaSchedule& schedule,
                                            const TreeOracle& oracle);

/// Trees deduplicated first (identical consecutive trees keep the latest index,
/// whose outgoing arcs are cheapest); endpoints always kept.
AuxPathGraph build_aux_weighted(const std::vector<TreeSolution>& trees,
                                const QuotaSchedule& schedule);

/// Minimum-cost first->last path; ties prefer fewer hops, then lexicographically
/// smaller node sequences.
PhasePlan shortest_path_dag(const AuxPathGraph& graph);

/// Concatenates the phase trees along the plan: in each phase, tree edges with
/// both endpoints already explored are dropped and the rest are added in an
/// order that keeps the explored set connected.
SearchPattern phases_to_pattern(const Instance& inst, const std::vector<TreeSolution>& trees,
                                const AuxPathGraph& graph, const PhasePlan& plan);

struct ConcatResult {
    SearchPattern pattern;
    LatencyReport report;
    Rational path_cost = 0;
    std::vector<int> path_labels;
    std::vector<Length> tree_lengths; // indexed by schedule position
};

ConcatResult solve_unweighted(const Instance& inst, const TreeOracle& oracle);

ConcatResult solve_weighted(const Instance& inst, const Rational& eps, const TreeOracle& oracle);

} // namespace esp
