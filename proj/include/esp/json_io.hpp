#pragma once

#include <string>

#include "esp/core.hpp"

namespace esp {

struct EuclideanInstance {
    struct Point {
        double x = 0.0;
        double y = 0.0;
        Weight weight = 0;
    };
    std::vector<Point> points;
    int root = 0;
};

// Complete graph with edge costs in {1,2}; absent edges default to cost 2.
struct ST12Instance {
    std::vector<std::string> ids;
    std::vector<int> terminals;               // indices into ids
    std::vector<std::vector<int>> cost;       // symmetric, diagonal unused
};

Instance instance_from_json(const std::string& text);
std::string instance_to_json(const Instance& inst);

SearchPattern pattern_from_json(const std::string& text, const Instance& inst);
std::string pattern_to_json(const SearchPattern& pat, const Instance& inst);

EuclideanInstance euclidean_from_json(const std::string& text);
std::string euclidean_to_json(const EuclideanInstance& inst);

ST12Instance st12_from_json(const std::string& text);
std::string st12_to_json(const ST12Instance& st);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace esp
