#include "esp/core.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>

namespace esp {

namespace {

bool graph_connected(int n, const std::vector<Instance::Edge>& edges) {
    if (n == 0) return false;
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                q.push(v);
            }
        }
    }
    return count == n;
}

} // namespace

Instance::Instance(std::vector<std::string> ids, std::vector<Weight> weights,
                   std::vector<Edge> edges, int root)
    : ids_(std::move(ids)), weights_(std::move(weights)), edges_(std::move(edges)),
      root_(root) {
    const int n = static_cast<int>(ids_.size());
    if (n == 0) throw std::invalid_argument("instance has no vertices");
    if (weights_.size() != ids_.size())
        throw std::invalid_argument("weights/ids size mismatch");
    if (root_ < 0 || root_ >= n) throw std::invalid_argument("root out of range");
    for (const auto& e : edges_) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (e.u == e.v) throw std::invalid_argument("self-loop not allowed");
        if (e.length < 0) throw std::invalid_argument("negative edge length");
    }
    for (Weight w : weights_) {
        if (w < 0) throw std::invalid_argument("negative vertex weight");
    }
    if (n > 1 && !graph_connected(n, edges_))
        throw std::invalid_argument("graph is not connected");
    incident_.assign(n, {});
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
        incident_[edges_[i].u].push_back(i);
        incident_[edges_[i].v].push_back(i);
    }
    total_weight_ = 0;
    for (Weight w : weights_) total_weight_ += w;
}

int Instance::index_of(const std::string& id) const {
    for (int i = 0; i < size(); ++i) {
        if (ids_[i] == id) return i;
    }
    throw std::invalid_argument("unknown vertex id: " + id);
}

int Instance::find_edge(int u, int v) const {
    for (int i : incident_.at(u)) {
        const Edge& e = edges_[i];
        if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return i;
    }
    return -1;
}

int Instance::num_weighted() const {
    int count = 0;
    for (Weight w : weights_) {
        if (w > 0) ++count;
    }
    return count;
}

Instance Instance::with_weights(std::vector<Weight> weights) const {
    return Instance(ids_, std::move(weights), edges_, root_);
}

Instance Instance::with_zero_root_weight() const {
    auto w = weights_;
    w[root_] = 0;
    return with_weights(std::move(w));
}

Instance Instance::with_unit_weights() const {
    return with_weights(std::vector<Weight>(weights_.size(), 1));
}

PatternVerdict validate_prefix_tree(int n, int root,
                                    std::span<const std::pair<int, int>> edges,
                                    const std::vector<Weight>* coverage) {
    std::vector<char> explored(n, 0);
    explored[root] = 1;
    int index = 0;
    for (const auto& [u, v] : edges) {
        ++index;
        const bool eu = explored[u];
        const bool ev = explored[v];
        if (eu && ev) return {false, Violation::cycle, index, -1};
        if (!eu && !ev) {
            if (index == 1) return {false, Violation::root_miss, index, -1};
            return {false, Violation::disconnected, index, -1};
        }
        explored[eu ? v : u] = 1;
    }
    if (coverage != nullptr) {
        for (int v = 0; v < n; ++v) {
            if ((*coverage)[v] > 0 && !explored[v])
                return {false, Violation::uncovered, index + 1, v};
        }
    }
    return {};
}

PatternVerdict validate_pattern(const Instance& inst, const SearchPattern& pat) {
    int index = 0;
    for (const auto& [u, v] : pat.edges) {
        ++index;
        if (u < 0 || u >= inst.size() || v < 0 || v >= inst.size() ||
            inst.find_edge(u, v) < 0)
            return {false, Violation::unknown_edge, index, -1};
    }
    return validate_prefix_tree(inst.size(), inst.root(), pat.edges, &inst.weights());
}

std::string describe(const PatternVerdict& verdict, const Instance& inst) {
    if (verdict.valid) return "valid";
    std::string what;
    switch (verdict.kind) {
        case Violation::root_miss: what = "first edge misses the root"; break;
        case Violation::cycle: what = "edge closes a cycle"; break;
        case Violation::disconnected: what = "edge disconnected from explored tree"; break;
        case Violation::unknown_edge: what = "edge not present in the instance"; break;
        case Violation::uncovered:
            what = "weighted vertex not covered: " +
                   (verdict.vertex >= 0 ? inst.id(verdict.vertex) : std::string("?"));
            break;
        default: what = "unknown"; break;
    }
    return "invalid at index " + std::to_string(verdict.index) + ": " + what;
}

LatencyReport total_latency(const Instance& inst, const SearchPattern& pat) {
    PatternVerdict verdict = validate_pattern(inst, pat);
    if (!verdict.valid)
        throw std::invalid_argument("invalid pattern: " + describe(verdict, inst));
    LatencyReport report;
    report.latency.assign(inst.size(), -1);
    report.latency[inst.root()] = 0;
    std::vector<char> explored(inst.size(), 0);
    explored[inst.root()] = 1;
    Length elapsed = 0;
    for (const auto& [u, v] : pat.edges) {
        const int ei = inst.find_edge(u, v);
        elapsed += inst.edges()[ei].length;
        const int fresh = explored[u] ? v : u;
        explored[fresh] = 1;
        report.latency[fresh] = elapsed;
    }
    report.pattern_length = elapsed;
    report.total = 0;
    for (int v = 0; v < inst.size(); ++v) {
        if (inst.weight(v) > 0) report.total += inst.weight(v) * report.latency[v];
    }
    return report;
}

std::vector<std::pair<int, int>> concat_edge_sequences(
    int root, std::span<const std::pair<int, int>> first,
    std::span<const std::pair<int, int>> second) {
    std::unordered_map<int, char> explored;
    explored[root] = 1;
    std::vector<std::pair<int, int>> out;
    out.reserve(first.size() + second.size());
    auto append = [&](const std::pair<int, int>& e) {
        const bool eu = explored.count(e.first) > 0;
        const bool ev = explored.count(e.second) > 0;
        if (eu && ev) return; // closes a cycle: skipped
        out.push_back(e);
        explored[eu ? e.second : e.first] = 1;
    };
    for (const auto& e : first) append(e);
    for (const auto& e : second) append(e);
    return out;
}

SearchPattern concat_patterns(const SearchPattern& first, const SearchPattern& second,
                              const Instance& inst) {
    SearchPattern out;
    out.edges = concat_edge_sequences(inst.root(), first.edges, second.edges);
    return out;
}

} // namespace esp
