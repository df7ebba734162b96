#include "esp/euclidean.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace esp {

namespace {

constexpr double kInfD = std::numeric_limits<double>::infinity();

void check(bool ok, const char* what) {
    if (!ok) throw SolverError(std::string("internal consistency check failed: ") + what);
}

double dist(const EuclideanInstance& inst, int u, int v) {
    return std::hypot(inst.points[u].x - inst.points[v].x,
                      inst.points[u].y - inst.points[v].y);
}

std::vector<Weight> point_weights(const EuclideanInstance& inst) {
    std::vector<Weight> w;
    for (const auto& p : inst.points) w.push_back(p.weight);
    return w;
}

} // namespace

bool euclid_valid(const EuclideanInstance& inst, const SearchPattern& pat) {
    auto w = point_weights(inst);
    auto verdict = validate_prefix_tree(static_cast<int>(inst.points.size()), inst.root,
                                        pat.edges, &w);
    return verdict.valid;
}

std::vector<double> euclid_search_times(const EuclideanInstance& inst,
                                        const SearchPattern& pat) {
    const int n = static_cast<int>(inst.points.size());
    std::vector<double> time(n, -1.0);
    time[inst.root] = 0.0;
    double elapsed = 0.0;
    for (auto [u, v] : pat.edges) {
        elapsed += dist(inst, u, v);
        int nv = time[u] >= 0 ? v : u;
        check(time[nv] < 0 && time[nv == u ? v : u] >= 0, "pattern expands the explored set");
        time[nv] = elapsed;
    }
    return time;
}

double euclid_cost(const EuclideanInstance& inst, const SearchPattern& pat) {
    auto time = euclid_search_times(inst, pat);
    double total = 0.0;
    for (std::size_t v = 0; v < inst.points.size(); ++v) {
        if (inst.points[v].weight == 0) continue;
        check(time[v] >= 0, "weighted point visited");
        total += static_cast<double>(inst.points[v].weight) * time[v];
    }
    return total;
}

double euclid_length(const EuclideanInstance& inst, const SearchPattern& pat) {
    double total = 0.0;
    for (auto [u, v] : pat.edges) total += dist(inst, u, v);
    return total;
}

SearchPattern euclid_brute_force(const EuclideanInstance& inst, int max_n) {
    const int n = static_cast<int>(inst.points.size());
    if (n > max_n)
        throw SizeLimitError("euclidean brute force limited to " + std::to_string(max_n) +
                             " points, got " + std::to_string(n));
    double W = 0;
    for (const auto& p : inst.points) W += static_cast<double>(p.weight);
    const std::uint32_t root_bit = 1u << inst.root;
    const std::uint32_t full = (1u << n) - 1;
    std::vector<double> cost(full + 1, kInfD);
    std::vector<double> setw(full + 1, 0.0);
    for (std::uint32_t s = 1; s <= full; ++s)
        setw[s] = setw[s & (s - 1)] + inst.points[std::countr_zero(s)].weight;
    struct Back {
        int from = -1, to = -1;
    };
    std::vector<Back> back(full + 1);
    cost[root_bit] = 0.0;
    for (std::uint32_t s = root_bit; s <= full; ++s) {
        if (!(s & root_bit) || cost[s] == kInfD) continue;
        const double pending = W - setw[s];
        for (int u = 0; u < n; ++u) {
            if (!(s >> u & 1)) continue;
            for (int v = 0; v < n; ++v) {
                if (s >> v & 1) continue;
                std::uint32_t t = s | (1u << v);
                double c = cost[s] + dist(inst, u, v) * pending;
                if (c < cost[t] - 1e-12) {
                    cost[t] = c;
                    back[t] = {u, v};
                }
            }
        }
    }
    std::uint32_t required = root_bit;
    for (int v = 0; v < n; ++v)
        if (inst.points[v].weight > 0) required |= 1u << v;
    std::uint32_t best_set = required;
    double best = kInfD;
    for (std::uint32_t s = required; s <= full; ++s)
        if ((s & required) == required && cost[s] < best) {
            best = cost[s];
            best_set = s;
        }
    check(best < kInfD, "metric instance always solvable");
    SearchPattern pat;
    std::vector<std::pair<int, int>> rev;
    for (std::uint32_t s = best_set; s != root_bit;) {
        rev.emplace_back(back[s].from, back[s].to);
        s &= ~(1u << back[s].to);
    }
    pat.edges.assign(rev.rbegin(), rev.rend());
    return pat;
}

SearchPattern decompose_solve(const EuclideanInstance& inst, double eps, double beta,
                              const EuclidSolver& base, const BoundedSolver& bounded,
                              double b) {
    if (eps <= 0 || eps > 1) throw std::invalid_argument("eps must be in (0, 1]");
    if (beta < 1) throw std::invalid_argument("beta must be at least 1");
    const int n = static_cast<int>(inst.points.size());
    const double gamma = 3.0 / eps;
    const double a = beta * gamma / eps;
    if (b < 0 || b > a) throw std::invalid_argument("b must lie in [0, a]");

    SearchPattern sigma_beta = base(inst);
    check(euclid_valid(inst, sigma_beta), "baseline pattern valid");
    auto base_time = euclid_search_times(inst, sigma_beta);

    std::vector<int> weighted;
    for (int v = 0; v < n; ++v)
        if (inst.points[v].weight > 0 && v != inst.root) weighted.push_back(v);
    if (weighted.empty()) return {};

    // Class of each weighted point: i with t_i <= C_v < t_{i+1}, t_i = e^{(i-2)a+b};
    // times below t_1 fold into class 1.
    auto class_of = [&](double c) {
        if (c <= 0) return 1;
        int i = static_cast<int>(std::floor((std::log(c) - b) / a)) + 2;
        while (std::exp((i - 1) * a + b) <= c) ++i; // fp guard
        while (i > 1 && std::exp((i - 2) * a + b) > c) --i;
        return std::max(1, i);
    };
    int q = 1;
    std::vector<int> cls(n, 0);
    for (int v : weighted) {
        cls[v] = class_of(base_time[v]);
        q = std::max(q, cls[v]);
    }

    std::vector<std::pair<int, int>> result;
    std::vector<char> explored(n, false);
    explored[inst.root] = true;
    double elapsed = 0.0;
    const double tol = 1e-7;

    for (int i = 1; i <= q; ++i) {
        bool nonempty = false;
        for (int v : weighted) nonempty = nonempty || cls[v] == i;
        if (!nonempty) continue;

        const double t_i = std::exp((i - 2) * a + b);
        const double t_next = std::exp((i - 1) * a + b);
        const double phase_start = elapsed;

        EuclideanInstance sub = inst;
        for (int v = 0; v < n; ++v)
            if (cls[v] != i) sub.points[v].weight = 0;

        SearchPattern sigma_ptas = bounded(sub, gamma * t_i, std::exp(a) / gamma);
        check(euclid_valid(sub, sigma_ptas), "bounded solution valid and covering");
        auto ptas_time = euclid_search_times(sub, sigma_ptas);

        // Longest prefix within the length budget.
        const double prefix_budget = (1.0 + std::exp(a) / (eps * gamma)) * gamma * t_i;
        std::vector<std::pair<int, int>> prefix;
        double plen = 0.0;
        for (auto [u, v] : sigma_ptas.edges) {
            double d = dist(inst, u, v);
            if (plen + d > prefix_budget * (1 + 1e-12)) break;
            plen += d;
            prefix.emplace_back(u, v);
        }

        // Baseline prefix visiting every point with baseline search time below
        // t_{i+1} (classes <= i); its length stays below t_{i+1}, keeping the
        // phase within its budget while covering anything the truncation cut.
        std::vector<char> pending(n, false);
        int missing = 0;
        for (int v : weighted)
            if (cls[v] <= i) {
                pending[v] = true;
                ++missing;
            }
        std::vector<std::pair<int, int>> splice;
        if (pending[inst.root]) {
            pending[inst.root] = false;
            --missing;
        }
        std::vector<char> bseen(n, false);
        bseen[inst.root] = true;
        for (auto [u, v] : sigma_beta.edges) {
            if (missing == 0) break;
            splice.emplace_back(u, v);
            int nv = bseen[u] ? v : u;
            bseen[nv] = true;
            if (pending[nv]) {
                pending[nv] = false;
                --missing;
            }
        }

        auto append = [&](const std::vector<std::pair<int, int>>& part) {
            for (auto [u, v] : part) {
                if (explored[u] && explored[v]) continue;
                check(explored[u] || explored[v], "concatenation stays connected");
                result.emplace_back(u, v);
                elapsed += dist(inst, u, v);
                explored[u] = explored[v] = true;
            }
        };
        append(prefix);
        append(splice);

        // Phase length cap.
        check(elapsed - phase_start <= gamma * t_next - gamma * t_i + tol * gamma * t_next,
              "phase length within its budget");
        // Splice degradation bound for the class the phase is responsible for.
        SearchPattern sofar;
        sofar.edges = result;
        auto now_time = euclid_search_times(inst, sofar);
        for (int v : weighted) {
            if (cls[v] != i || now_time[v] < 0) continue;
            if (now_time[v] <= phase_start) continue; // visited by an earlier phase
            double mine = gamma * t_i + (now_time[v] - phase_start);
            double theirs = gamma * t_i + ptas_time[v];
            check(mine <= (1 + eps) * theirs * (1 + tol), "splice degradation within 1+eps");
        }
    }

    SearchPattern out;
    out.edges = std::move(result);
    check(euclid_valid(inst, out), "decomposition output valid and covering");
    return out;
}

SearchPattern derandomize_shift(const EuclideanInstance& inst, double eps, double beta,
                                const EuclidSolver& base, const BoundedSolver& bounded) {
    const double gamma = 3.0 / eps;
    const double a = beta * gamma / eps;
    SearchPattern sigma_beta = base(inst);
    auto time = euclid_search_times(inst, sigma_beta);

    std::vector<double> cuts = {0.0};
    for (std::size_t v = 0; v < inst.points.size(); ++v) {
        if (inst.points[v].weight == 0 || time[v] <= 0) continue;
        double r = std::fmod(std::log(time[v]), a);
        if (r < 0) r += a;
        cuts.push_back(r);
    }
    cuts.push_back(a);
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> bs;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        bs.push_back(cuts[i]);
        if (i + 1 < cuts.size()) bs.push_back((cuts[i] + cuts[i + 1]) / 2);
    }

    SearchPattern best;
    double best_cost = kInfD;
    for (double b : bs) {
        SearchPattern cand = decompose_solve(inst, eps, beta, base, bounded, b);
        double c = euclid_cost(inst, cand);
        if (c < best_cost) {
            best_cost = c;
            best = std::move(cand);
        }
    }
    check(best_cost < kInfD, "at least one shift evaluated");
    return best;
}

Reduced01 reduce_weights_01(const EuclideanInstance& inst, double delta, double eps) {
    const int n = static_cast<int>(inst.points.size());
    Weight max_w = 0;
    for (const auto& p : inst.points) max_w = std::max(max_w, p.weight);
    Reduced01 out;
    if (max_w == 0) {
        out.inst = inst;
        for (int i = 0; i < n; ++i) out.source.push_back(i);
        return out;
    }
    const double M = eps / (n + static_cast<double>(n) * n * delta) * static_cast<double>(max_w);
    out.scale = M;
    out.inst.root = inst.root;
    // Original points stay (weight 0) so indices, Steiner candidates and the
    // root survive; unit copies are appended behind them.
    for (int i = 0; i < n; ++i) {
        out.inst.points.push_back({inst.points[i].x, inst.points[i].y, 0});
        out.source.push_back(i);
    }
    for (int i = 0; i < n; ++i) {
        auto copies = static_cast<std::int64_t>(std::floor(inst.points[i].weight / M));
        for (std::int64_t c = 0; c < copies; ++c) {
            out.inst.points.push_back({inst.points[i].x, inst.points[i].y, 1});
            out.source.push_back(i);
        }
    }
    return out;
}

SearchPattern bounded_to_segmented(const EuclideanInstance& inst, double delay, double delta,
                                   double eps, const SegmentedSolver& solver,
                                   double horizon_factor) {
    if (delay <= 0) throw std::invalid_argument("delay must be positive");
    const double horizon = horizon_factor * (1 + delta) * delay;
    std::vector<double> breaks;
    for (double t = delay; ; t *= 1 + eps) {
        breaks.push_back(t);
        if (t >= horizon) break;
    }
    auto sol = solver(inst, breaks);
    check(sol.cost >= 0, "segmented solver feasible within the horizon");
    return sol.pattern;
}

GridRounded grid_round(const EuclideanInstance& inst, double eps, double c_g) {
    const int n = static_cast<int>(inst.points.size());
    if (n == 0) throw std::invalid_argument("empty instance");
    double lo_x = kInfD, hi_x = -kInfD, lo_y = kInfD, hi_y = -kInfD;
    auto grow = [&](const EuclideanInstance::Point& p) {
        lo_x = std::min(lo_x, p.x);
        hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_y = std::max(hi_y, p.y);
    };
    // Bounding square of the weighted points; the root is included so it is
    // never dropped by the outer-square cutoff.
    grow(inst.points[inst.root]);
    for (const auto& p : inst.points)
        if (p.weight > 0) grow(p);

    GridRounded out;
    out.inner_side = std::max(hi_x - lo_x, hi_y - lo_y);
    if (out.inner_side <= 0) out.inner_side = 1.0; // coincident weighted points
    const double L = (3.0 * n * n + 1) * out.inner_side;
    out.outer_side = L;
    out.g = c_g * eps * L / (static_cast<double>(n) * n * n * n);
    const double cx = (lo_x + hi_x) / 2, cy = (lo_y + hi_y) / 2;
    out.origin_x = cx - L / 2;
    out.origin_y = cy - L / 2;
    out.cells_per_side = std::max(1, static_cast<int>(std::llround(L / out.g)));

    out.inst = inst;
    for (int i = 0; i < n; ++i) {
        auto snap = [&](double z, double origin) {
            auto idx = static_cast<int>(std::llround((z - origin) / out.g));
            return std::clamp(idx, 0, out.cells_per_side - 1);
        };
        int ix = snap(inst.points[i].x, out.origin_x);
        int iy = snap(inst.points[i].y, out.origin_y);
        out.gx.push_back(ix);
        out.gy.push_back(iy);
        out.inst.points[i].x = out.origin_x + ix * out.g;
        out.inst.points[i].y = out.origin_y + iy * out.g;
    }
    return out;
}

ShiftedQuadtree build_quadtree(const GridRounded& grid, int shift_x, int shift_y,
                               int portals_per_side) {
    const int n = static_cast<int>(grid.inst.points.size());
    ShiftedQuadtree tree;
    tree.shift_x = shift_x;
    tree.shift_y = shift_y;
    tree.portals_per_side = std::max(2, portals_per_side);
    int side = 1;
    while (side < 2 * (grid.cells_per_side + 1)) side *= 2;
    tree.side = side;
    const int off_x = (side - grid.cells_per_side) / 2 + shift_x;
    const int off_y = (side - grid.cells_per_side) / 2 + shift_y;
    if (off_x < 0 || off_y < 0 || off_x + grid.cells_per_side > side ||
        off_y + grid.cells_per_side > side)
        throw std::invalid_argument("shift moves points outside the outer square");
    for (int i = 0; i < n; ++i)
        tree.point_pos.emplace_back(grid.gx[i] + off_x + 0.5, grid.gy[i] + off_y + 0.5);

    QuadCell root;
    root.x = 0;
    root.y = 0;
    root.side = side;
    for (int i = 0; i < n; ++i) root.points.push_back(i);
    tree.cells.push_back(root);

    // Split until each cell's points share one grid location.
    for (std::size_t c = 0; c < tree.cells.size(); ++c) {
        auto cell = tree.cells[c]; // copy: the vector may reallocate below
        bool uniform = true;
        for (std::size_t j = 1; j < cell.points.size(); ++j)
            uniform = uniform && tree.point_pos[cell.points[j]] == tree.point_pos[cell.points[0]];
        if (uniform) continue;
        const double h = cell.side / 2;
        const double xs[4] = {cell.x, cell.x + h, cell.x, cell.x + h};
        const double ys[4] = {cell.y + h, cell.y + h, cell.y, cell.y};
        for (int k = 0; k < 4; ++k) {
            QuadCell child;
            child.x = xs[k];
            child.y = ys[k];
            child.side = h;
            child.depth = cell.depth + 1;
            child.parent = static_cast<int>(c);
            for (int p : cell.points) {
                auto [px, py] = tree.point_pos[p];
                if (px >= child.x && px < child.x + h && py >= child.y && py < child.y + h)
                    child.points.push_back(p);
            }
            tree.cells[c].children[k] = static_cast<int>(tree.cells.size());
            tree.cells.push_back(std::move(child));
        }
    }
    return tree;
}

int default_portals_per_side(int n, double eps, double c_p) {
    return std::max(2, static_cast<int>(std::ceil(c_p * std::log(std::max(n, 2)) / eps)));
}

int default_crossing_cap(int n, double eps, double c_m) {
    return std::max(2, static_cast<int>(std::ceil(c_m * std::log(std::max(n, 2)) / eps)));
}

} // namespace esp
