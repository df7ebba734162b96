#pragma once

#include "esp/concat.hpp"
#include "esp/hardness.hpp"

namespace esp {

struct RunRecord {
    std::string instance_id;
    std::string algo;
    std::string oracle;
    std::string epsilon; // empty when the algorithm takes none
    std::uint64_t seed = 0;
    std::int64_t total_latency = 0;
    std::optional<std::int64_t> optimum;
    double wall_ms = 0; // kept last so comparisons can drop it

    std::optional<Rational> ratio() const {
        if (!optimum || *optimum == 0) return std::nullopt;
        return Rational(total_latency) / *optimum;
    }
};

std::string csv_header();
std::string to_csv(const RunRecord& r);

/// All connected labeled graphs on up to max_n vertices, with lengths drawn
/// from {1,2,3} and (for the weighted algorithm) weights from {0,..,3} by a
/// seeded generator. Runs the requested solver against the brute-force
/// optimum on every instance.
struct SweepResult {
    std::vector<RunRecord> records;
    Rational worst_ratio = 0;
    std::string worst_instance;
};

SweepResult sweep_small_graphs(int max_n, const std::string& algo, const TreeOracle& oracle,
                               const Rational& eps, std::uint64_t seed = 0);

/// Gadget round-trip with its bookkeeping (copy map, terminal count).
std::string gadget_to_json(const GadgetInstance& g);
GadgetInstance gadget_from_json(const std::string& text);

} // namespace esp
