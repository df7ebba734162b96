#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "esp/cli.hpp"
#include "esp/euclidean.hpp"
#include "esp/oracles.hpp"

namespace {

using namespace esp;

constexpr int kExitUsage = 1;
constexpr int kExitSize = 2;
constexpr int kExitSolver = 3;

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string euclid_pattern_json(const SearchPattern& pat) {
    std::string out = "[";
    for (std::size_t i = 0; i < pat.edges.size(); ++i) {
        if (i) out += ", ";
        out += "[" + std::to_string(pat.edges[i].first) + ", " +
               std::to_string(pat.edges[i].second) + "]";
    }
    return out + "]\n";
}

SearchPattern solve_euclidean_cli(const EuclideanInstance& inst, double eps, int kappa,
                                  const std::string& shift_sweep) {
    // Baseline: the weighted concatenation solver on the scaled metric closure.
    const double scale = 1000.0;
    EuclidSolver base = [&](const EuclideanInstance& e) {
        const int n = static_cast<int>(e.points.size());
        std::vector<std::string> ids;
        std::vector<Weight> weights;
        std::vector<Instance::Edge> edges;
        for (int i = 0; i < n; ++i) {
            ids.push_back("p" + std::to_string(i));
            weights.push_back(e.points[i].weight);
        }
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                auto d = static_cast<Length>(std::llround(
                    scale * std::hypot(e.points[u].x - e.points[v].x,
                                       e.points[u].y - e.points[v].y)));
                edges.push_back({u, v, std::max<Length>(d, 1)});
            }
        ExactOracle oracle;
        HeuristicOracle fallback;
        Instance g(ids, weights, edges, e.root);
        ConcatResult res = n <= 12 ? solve_weighted(g, Rational(1, 4), oracle)
                                   : solve_weighted(g, Rational(1, 4), fallback);
        return SearchPattern{res.pattern.edges};
    };
    const int n = static_cast<int>(inst.points.size());
    BoundedSolver bounded;
    if (n <= 9) {
        bounded = [](const EuclideanInstance& sub, double, double) {
            return euclid_brute_force(sub);
        };
    } else {
        bounded = [&](const EuclideanInstance& sub, double, double) { return base(sub); };
    }
    (void)kappa;
    (void)shift_sweep;
    return derandomize_shift(inst, std::min(eps, 1.0), 1.0, base, bounded);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"expanding search solver"};
    app.require_subcommand(1);

    std::string input, output, pattern_path, csv_path;
    std::string algo = "unweighted", oracle_name = "exact", eps_text = "1/4";
    std::string st12_path, instance_path, shift_sweep = "4";
    std::uint64_t seed = 0;
    int max_n = 5, copies = 2, kappa = 2;

    auto* solve = app.add_subcommand("solve", "run a solver on one instance");
    solve->add_option("--input", input)->required();
    solve->add_option("--output", output);
    solve->add_option("--algo", algo)
        ->check(CLI::IsMember({"unweighted", "weighted", "euclidean", "brute"}));
    solve->add_option("--oracle", oracle_name)->check(CLI::IsMember({"exact", "heuristic"}));
    solve->add_option("--epsilon", eps_text);
    solve->add_option("--seed", seed);
    solve->add_option("--kappa", kappa);
    solve->add_option("--shift-sweep", shift_sweep);
    solve->add_option("--csv", csv_path);

    auto* sweep = app.add_subcommand("sweep", "exhaustive small-graph ratio sweep");
    sweep->add_option("--max-n", max_n);
    sweep->add_option("--algo", algo)->check(CLI::IsMember({"unweighted", "weighted"}));
    sweep->add_option("--oracle", oracle_name)->check(CLI::IsMember({"exact", "heuristic"}));
    sweep->add_option("--epsilon", eps_text);
    sweep->add_option("--seed", seed);
    sweep->add_option("--output", output);

    auto* gadget = app.add_subcommand("gadget", "build a search gadget from a Steiner instance");
    gadget->add_option("--st12", st12_path)->required();
    gadget->add_option("--copies", copies);
    gadget->add_option("--out", output)->required();

    auto* structure = app.add_subcommand("structure", "restructure a pattern on a gadget");
    structure->add_option("--instance", instance_path)->required();
    structure->add_option("--pattern", pattern_path)->required();
    structure->add_option("--out", output);

    auto* validate = app.add_subcommand("validate", "check a pattern against an instance");
    validate->add_option("--input", input)->required();
    validate->add_option("--pattern", pattern_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const auto t0 = std::chrono::steady_clock::now();
        if (solve->parsed()) {
            RunRecord rec;
            rec.instance_id = input;
            rec.algo = algo;
            rec.oracle = oracle_name;
            rec.seed = seed;

            SearchPattern pat;
            if (algo == "euclidean") {
                EuclideanInstance inst = euclidean_from_json(read_file(input));
                rec.epsilon = eps_text;
                pat = solve_euclidean_cli(inst, to_double(parse_rational(eps_text)), kappa,
                                          shift_sweep);
                rec.total_latency = static_cast<std::int64_t>(euclid_cost(inst, pat));
                if (inst.points.size() <= 9) {
                    auto opt = euclid_brute_force(inst);
                    rec.optimum = static_cast<std::int64_t>(euclid_cost(inst, opt));
                }
                if (!output.empty()) write_file(output, euclid_pattern_json(pat));
            } else {
                Instance inst = instance_from_json(read_file(input));
                auto oracle = make_oracle(oracle_name);
                if (algo == "unweighted") {
                    auto res = solve_unweighted(inst, *oracle);
                    pat = res.pattern;
                    rec.total_latency =
                        total_latency(inst.with_unit_weights(), pat).total;
                } else if (algo == "weighted") {
                    rec.epsilon = eps_text;
                    auto res = solve_weighted(inst, parse_rational(eps_text), *oracle);
                    pat = res.pattern;
                    rec.total_latency = res.report.total;
                } else { // brute
                    auto res = brute_force_esp(inst.with_zero_root_weight(), 8);
                    pat = res.pattern;
                    rec.total_latency = res.total_latency;
                }
                if (inst.size() <= 8) {
                    const Instance& ref = algo == "unweighted" ? inst.with_unit_weights()
                                                               : inst.with_zero_root_weight();
                    rec.optimum = brute_force_esp(ref, 8).total_latency;
                }
                if (!output.empty()) {
                    write_file(output, pattern_to_json(pat, inst));
                    // Round-trip check: what we wrote parses and validates.
                    SearchPattern back = pattern_from_json(read_file(output), inst);
                    auto verdict = validate_pattern(inst, back);
                    if (!verdict.valid)
                        throw SolverError("emitted pattern failed validation: " +
                                          describe(verdict, inst));
                }
            }
            rec.wall_ms = ms_since(t0);
            const std::string row = csv_header() + "\n" + to_csv(rec) + "\n";
            if (!csv_path.empty()) write_file(csv_path, row);
            std::cout << row;
        } else if (sweep->parsed()) {
            auto oracle = make_oracle(oracle_name);
            auto res = sweep_small_graphs(max_n, algo, *oracle, parse_rational(eps_text), seed);
            std::ostringstream out;
            out << csv_header() << "\n";
            for (const auto& r : res.records) out << to_csv(r) << "\n";
            if (!output.empty()) write_file(output, out.str());
            std::cout << "instances=" << res.records.size()
                      << " worst_ratio=" << to_double(res.worst_ratio) << " at "
                      << res.worst_instance << "\n";
        } else if (gadget->parsed()) {
            auto st = st12_from_json(read_file(st12_path));
            write_file(output, gadget_to_json(build_gadget(st, copies)));
        } else if (structure->parsed()) {
            auto g = gadget_from_json(read_file(instance_path));
            auto pat = pattern_from_json(read_file(pattern_path), g.inst);
            auto before = total_latency(g.inst, pat).total;
            auto structured = structure_pattern(g, pat);
            auto after = total_latency(g.inst, structured).total;
            if (!output.empty()) write_file(output, pattern_to_json(structured, g.inst));
            std::cout << "latency_before=" << before << " latency_after=" << after << "\n";
        } else if (validate->parsed()) {
            Instance inst = instance_from_json(read_file(input));
            auto pat = pattern_from_json(read_file(pattern_path), inst);
            auto verdict = validate_pattern(inst, pat);
            std::cout << describe(verdict, inst) << "\n";
            return verdict.valid ? 0 : kExitSolver;
        }
        return 0;
    } catch (const SizeLimitError& e) {
        std::cerr << "size limit: " << e.what() << "\n";
        return kExitSize;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
