#pragma once

#include <functional>

#include "esp/json_io.hpp"

namespace esp {

// --- plane geometry over point indices; patterns live on the complete metric ---

bool euclid_valid(const EuclideanInstance& inst, const SearchPattern& pat);

/// Search time per point (-1 if unvisited) under straight-line edge lengths.
std::vector<double> euclid_search_times(const EuclideanInstance& inst, const SearchPattern& pat);

/// Weighted sum of search times.
double euclid_cost(const EuclideanInstance& inst, const SearchPattern& pat);

double euclid_length(const EuclideanInstance& inst, const SearchPattern& pat);

/// Optimal pattern by subset DP; unweighted points participate as optional
/// Steiner stops. Throws SizeLimitError above max_n.
SearchPattern euclid_brute_force(const EuclideanInstance& inst, int max_n = 9);

// --- decomposition into delay-bounded subproblems ---

using EuclidSolver = std::function<SearchPattern(const EuclideanInstance&)>;

/// Solves a subinstance that is guaranteed to admit a solution of length
/// <= delta * delay.
using BoundedSolver =
    std::function<SearchPattern(const EuclideanInstance& sub, double delay, double delta)>;

/// Partitions points by their search time in a beta-approximate baseline into
/// geometric time classes, solves each class with the bounded solver, caps each
/// phase by a length budget and splices the baseline back in. `b` shifts the
/// class boundaries (log scale, in [0, a] with a = beta*gamma/eps).
SearchPattern decompose_solve(const EuclideanInstance& inst, double eps, double beta,
                              const EuclidSolver& base, const BoundedSolver& bounded, double b);

/// Evaluates decompose_solve at every b where the class partition changes
/// (plus midpoints) and keeps the cheapest result.
SearchPattern derandomize_shift(const EuclideanInstance& inst, double eps, double beta,
                                const EuclidSolver& base, const BoundedSolver& bounded);

// --- weight reduction to {0,1} ---

struct Reduced01 {
    EuclideanInstance inst;  // unit-weight copies stacked at the source location
    double scale = 1;        // original objective ~ scale * reduced objective
    std::vector<int> source; // reduced point -> original point
};

/// Rounds weights down to multiples of M = eps/(n+n^2*delta)*max_w and splits
/// each rounded weight into unit copies.
Reduced01 reduce_weights_01(const EuclideanInstance& inst, double delta, double eps);

// --- segmented reduction ---

struct SegmentedSolutionView {
    SearchPattern pattern;
    std::vector<double> breakpoints;
    double cost = -1; // -1 means infeasible
};

using SegmentedSolver =
    std::function<SegmentedSolutionView(const EuclideanInstance&, const std::vector<double>&)>;

/// Builds breakpoints delay*(1+eps)^i up to horizon_factor*(1+delta)*delay and
/// hands them to the segmented solver.
SearchPattern bounded_to_segmented(const EuclideanInstance& inst, double delay, double delta,
                                   double eps, const SegmentedSolver& solver,
                                   double horizon_factor = 8.0);

// --- grid rounding and quadtree ---

struct GridRounded {
    EuclideanInstance inst; // snapped coordinates
    double g = 1;           // grid granularity
    double inner_side = 0;  // bounding square of the weighted points (and root)
    double outer_side = 0;  // enlarged square the solution may use
    double origin_x = 0;
    double origin_y = 0;
    std::vector<int> gx, gy; // integer grid coordinates per point
    int cells_per_side = 1;  // outer square size in grid units
};

GridRounded grid_round(const EuclideanInstance& inst, double eps, double c_g = 1.0);

struct QuadCell {
    // geometry in grid units relative to the shifted outer square
    double x = 0, y = 0, side = 0;
    int depth = 0;
    int parent = -1;
    int children[4] = {-1, -1, -1, -1}; // TL, TR, BL, BR; -1 for a leaf
    std::vector<int> points;            // point indices inside (leaves hold one location)
};

struct ShiftedQuadtree {
    int shift_x = 0, shift_y = 0;
    int side = 1; // power of two, grid units
    int portals_per_side = 2;
    std::vector<QuadCell> cells; // cells[0] is the root cell
    std::vector<std::pair<double, double>> point_pos; // per point, in tree coordinates
};

ShiftedQuadtree build_quadtree(const GridRounded& grid, int shift_x, int shift_y,
                               int portals_per_side);

struct SegmentedSolution {
    SearchPattern pattern;               // point-level pattern
    std::vector<Length> breakpoints;     // integer, grid units
    std::vector<Length> rounded_times;   // per point; -1 unvisited
    std::vector<Length> segment_lengths; // realized in-segment travel
    std::int64_t cost = -1;              // -1 means infeasible
    std::vector<std::pair<double, double>> walk; // portal-respecting route
};

/// Minimum rounded-objective portal-respecting solution: the route starts at
/// the root, moves in straight lines inside leaf cells, passes between cells
/// only at portals (at most crossing_cap boundary crossings per cell and
/// segment), and must finish within the last breakpoint.
SegmentedSolution segmented_portal_dp(const GridRounded& grid, const ShiftedQuadtree& tree,
                                      const std::vector<Length>& breakpoints, int crossing_cap);

/// Default number of portals per cell side for n points: ceil(c_p * ln(n)/eps),
/// at least 2 (the corners).
int default_portals_per_side(int n, double eps, double c_p = 2.0);

/// Default crossing cap: ceil(c_m * ln(n)/eps), at least 2.
int default_crossing_cap(int n, double eps, double c_m = 2.0);

} // namespace esp
