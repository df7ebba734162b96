#include "esp/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace esp {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("malformed JSON");
    return j;
}

} // namespace

Instance instance_from_json(const std::string& text) {
    json j = parse(text);
    std::vector<std::string> ids;
    std::vector<Weight> weights;
    for (const auto& v : j.at("vertices")) {
        ids.push_back(v.at("id").get<std::string>());
        weights.push_back(v.value("weight", Weight{0}));
    }
    auto index_of = [&](const std::string& id) {
        for (int i = 0; i < static_cast<int>(ids.size()); ++i)
            if (ids[i] == id) return i;
        throw std::invalid_argument("unknown vertex id: " + id);
    };
    std::vector<Instance::Edge> edges;
    for (const auto& e : j.at("edges")) {
        edges.push_back({index_of(e.at("u").get<std::string>()),
                         index_of(e.at("v").get<std::string>()),
                         e.at("length").get<Length>()});
    }
    int root = index_of(j.at("root").get<std::string>());
    return Instance(std::move(ids), std::move(weights), std::move(edges), root);
}

std::string instance_to_json(const Instance& inst) {
    json j;
    j["root"] = inst.id(inst.root());
    j["vertices"] = json::array();
    for (int v = 0; v < inst.size(); ++v)
        j["vertices"].push_back({{"id", inst.id(v)}, {"weight", inst.weight(v)}});
    j["edges"] = json::array();
    for (const auto& e : inst.edges())
        j["edges"].push_back(
            {{"u", inst.id(e.u)}, {"v", inst.id(e.v)}, {"length", e.length}});
    return j.dump(2) + "\n";
}

SearchPattern pattern_from_json(const std::string& text, const Instance& inst) {
    json j = parse(text);
    const json& arr = j.is_array() ? j : j.at("pattern");
    SearchPattern pat;
    for (const auto& e : arr) {
        pat.edges.emplace_back(inst.index_of(e.at(0).get<std::string>()),
                               inst.index_of(e.at(1).get<std::string>()));
    }
    return pat;
}

std::string pattern_to_json(const SearchPattern& pat, const Instance& inst) {
    json arr = json::array();
    for (auto [u, v] : pat.edges) arr.push_back({inst.id(u), inst.id(v)});
    return arr.dump(2) + "\n";
}

EuclideanInstance euclidean_from_json(const std::string& text) {
    json j = parse(text);
    EuclideanInstance inst;
    for (const auto& p : j.at("points"))
        inst.points.push_back({p.at("x").get<double>(), p.at("y").get<double>(),
                               p.value("weight", Weight{0})});
    inst.root = j.value("root", 0);
    if (inst.root < 0 || inst.root >= static_cast<int>(inst.points.size()))
        throw std::invalid_argument("euclidean root index out of range");
    return inst;
}

std::string euclidean_to_json(const EuclideanInstance& inst) {
    json j;
    j["root"] = inst.root;
    j["points"] = json::array();
    for (const auto& p : inst.points)
        j["points"].push_back({{"x", p.x}, {"y", p.y}, {"weight", p.weight}});
    return j.dump(2) + "\n";
}

ST12Instance st12_from_json(const std::string& text) {
    json j = parse(text);
    ST12Instance st;
    for (const auto& id : j.at("vertices")) st.ids.push_back(id.get<std::string>());
    const int n = static_cast<int>(st.ids.size());
    auto index_of = [&](const std::string& id) {
        for (int i = 0; i < n; ++i)
            if (st.ids[i] == id) return i;
        throw std::invalid_argument("unknown vertex id: " + id);
    };
    for (const auto& t : j.at("terminals")) st.terminals.push_back(index_of(t.get<std::string>()));
    if (st.terminals.size() < 2) throw std::invalid_argument("need at least two terminals");
    // Complete graph; listed edges override the default cost of 2.
    st.cost.assign(n, std::vector<int>(n, 2));
    for (int i = 0; i < n; ++i) st.cost[i][i] = 0;
    for (const auto& e : j.at("edges")) {
        int u = index_of(e.at("u").get<std::string>());
        int v = index_of(e.at("v").get<std::string>());
        int c = e.at("cost").get<int>();
        if (u == v) throw std::invalid_argument("self-loop in metric");
        if (c != 1 && c != 2) throw std::invalid_argument("edge cost must be 1 or 2");
        st.cost[u][v] = st.cost[v][u] = c;
    }
    return st;
}

std::string st12_to_json(const ST12Instance& st) {
    json j;
    j["vertices"] = json::array();
    for (const auto& id : st.ids) j["vertices"].push_back(id);
    j["terminals"] = json::array();
    for (int t : st.terminals) j["terminals"].push_back(st.ids[t]);
    j["edges"] = json::array();
    const int n = static_cast<int>(st.ids.size());
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (st.cost[u][v] == 1)
                j["edges"].push_back({{"u", st.ids[u]}, {"v", st.ids[v]}, {"cost", 1}});
    return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

} // namespace esp
