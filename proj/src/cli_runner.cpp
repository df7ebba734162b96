#include "esp/cli.hpp"

#include <random>
#include <sstream>

#include "json.hpp"

namespace esp {

std::string csv_header() {
    return "instance,algo,oracle,epsilon,seed,total_latency,optimum,ratio,wall_ms";
}

std::string to_csv(const RunRecord& r) {
    std::ostringstream out;
    out << r.instance_id << ',' << r.algo << ',' << r.oracle << ',' << r.epsilon << ','
        << r.seed << ',' << r.total_latency << ',';
    if (r.optimum) out << *r.optimum;
    out << ',';
    if (auto q = r.ratio()) out << to_double(*q);
    out << ',' << r.wall_ms;
    return out.str();
}

namespace {

bool mask_connected(int n, std::uint32_t mask, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t e = 0; e < pairs.size(); ++e)
        if (mask >> e & 1) parent[find(pairs[e].first)] = find(pairs[e].second);
    for (int v = 1; v < n; ++v)
        if (find(v) != find(0)) return false;
    return true;
}

} // namespace

SweepResult sweep_small_graphs(int max_n, const std::string& algo, const TreeOracle& oracle,
                               const Rational& eps, std::uint64_t seed) {
    if (max_n > 7) throw SizeLimitError("sweep limited to 7 vertices");
    const bool weighted = algo == "weighted";
    if (!weighted && algo != "unweighted") throw std::invalid_argument("unknown algo: " + algo);

    SweepResult result;
    for (int n = 2; n <= max_n; ++n) {
        std::vector<std::pair<int, int>> pairs;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
        const std::uint32_t top = 1u << pairs.size();
        for (std::uint32_t mask = 0; mask < top; ++mask) {
            if (!mask_connected(n, mask, pairs)) continue;
            std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(n) << 32) ^ mask);
            std::vector<std::string> ids;
            std::vector<Weight> weights;
            for (int v = 0; v < n; ++v) {
                ids.push_back("v" + std::to_string(v));
                weights.push_back(weighted ? static_cast<Weight>(rng() % 4) : 1);
            }
            if (weighted) {
                weights[0] = 0; // root
                bool any = false;
                for (int v = 1; v < n; ++v) any = any || weights[v] > 0;
                if (!any) weights[1 + static_cast<int>(rng() % (n - 1))] = 1;
            }
            std::vector<Instance::Edge> edges;
            for (std::size_t e = 0; e < pairs.size(); ++e)
                if (mask >> e & 1)
                    edges.push_back({pairs[e].first, pairs[e].second,
                                     static_cast<Length>(1 + rng() % 3)});
            Instance inst(ids, weights, edges, 0);

            RunRecord rec;
            rec.instance_id =
                "sweep-n" + std::to_string(n) + "-m" + std::to_string(mask);
            rec.algo = algo;
            rec.oracle = oracle.name();
            rec.seed = seed;
            if (weighted) {
                std::ostringstream e;
                e << eps;
                rec.epsilon = e.str();
            }
            ConcatResult run = weighted ? solve_weighted(inst, eps, oracle)
                                        : solve_unweighted(inst, oracle);
            rec.total_latency = weighted ? run.report.total
                                         : total_latency(inst.with_unit_weights(),
                                                         run.pattern).total;
            const Instance& ref = weighted ? inst : inst.with_unit_weights();
            rec.optimum = brute_force_esp(ref, 8).total_latency;
            result.records.push_back(rec);
            if (auto q = rec.ratio(); q && *q > result.worst_ratio) {
                result.worst_ratio = *q;
                result.worst_instance = rec.instance_id;
            }
        }
    }
    return result;
}

std::string gadget_to_json(const GadgetInstance& g) {
    nlohmann::json j;
    j["instance"] = nlohmann::json::parse(instance_to_json(g.inst));
    j["copies"] = g.copies;
    j["root_edge_cost"] = g.root_edge_cost;
    j["num_terminals"] = g.num_terminals;
    j["copy_of"] = g.copy_of;
    j["orig_of"] = g.orig_of;
    return j.dump(2) + "\n";
}

GadgetInstance gadget_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    return GadgetInstance{instance_from_json(j.at("instance").dump()),
                          j.at("copies").get<int>(),
                          j.at("root_edge_cost").get<Length>(),
                          j.at("num_terminals").get<int>(),
                          j.at("copy_of").get<std::vector<int>>(),
                          j.at("orig_of").get<std::vector<int>>()};
}

} // namespace esp
