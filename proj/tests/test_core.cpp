#include "doctest.h"

#include "esp/core.hpp"
#include "helpers.hpp"

using namespace esp;
using esp::testing::make_instance;

namespace {

Instance path_rab() {
    // v0 = root, v0-v1 length 2, v1-v2 length 3, unit weights off the root
    return make_instance(3, {0, 1, 1}, {{0, 1, 2}, {1, 2, 3}});
}

} // namespace

TEST_CASE("pattern validation accepts a root chain") {
    Instance inst = path_rab();
    SearchPattern pat{{{0, 1}, {1, 2}}};
    CHECK(validate_pattern(inst, pat).valid);
}

TEST_CASE("first edge must touch the root") {
    Instance inst = path_rab();
    SearchPattern pat{{{1, 2}, {0, 1}}};
    auto verdict = validate_pattern(inst, pat);
    CHECK_FALSE(verdict.valid);
    CHECK(verdict.index == 1);
    CHECK(verdict.kind == Violation::root_miss);
}

TEST_CASE("cycle-closing edge is flagged at its index") {
    Instance inst = make_instance(3, {0, 1, 1}, {{0, 1, 1}, {0, 2, 2}, {1, 2, 1}});
    SearchPattern pat{{{0, 1}, {0, 2}, {1, 2}}};
    auto verdict = validate_pattern(inst, pat);
    CHECK_FALSE(verdict.valid);
    CHECK(verdict.index == 3);
    CHECK(verdict.kind == Violation::cycle);
}

TEST_CASE("uncovered weighted vertex is reported") {
    Instance inst = path_rab();
    SearchPattern pat{{{0, 1}}};
    auto verdict = validate_pattern(inst, pat);
    CHECK_FALSE(verdict.valid);
    CHECK(verdict.kind == Violation::uncovered);
    CHECK(verdict.vertex == 2);
}

TEST_CASE("latencies on a path") {
    Instance inst = path_rab();
    auto rep = total_latency(inst, SearchPattern{{{0, 1}, {1, 2}}});
    CHECK(rep.latency[1] == 2);
    CHECK(rep.latency[2] == 5);
    CHECK(rep.total == 7);
    CHECK(rep.pattern_length == 5);
}

TEST_CASE("star order matters") {
    Instance inst = make_instance(3, {0, 1, 1}, {{0, 1, 1}, {0, 2, 2}});
    CHECK(total_latency(inst, SearchPattern{{{0, 1}, {0, 2}}}).total == 4);
    CHECK(total_latency(inst, SearchPattern{{{0, 2}, {0, 1}}}).total == 5);
}

TEST_CASE("root latency contributes zero even with positive root weight") {
    Instance inst = make_instance(2, {5, 1}, {{0, 1, 3}});
    CHECK(total_latency(inst, SearchPattern{{{0, 1}}}).total == 3);
}

TEST_CASE("invalid pattern rejected by total_latency") {
    Instance inst = path_rab();
    CHECK_THROWS_AS(total_latency(inst, SearchPattern{{{1, 2}}}), std::invalid_argument);
}

TEST_CASE("concatenation drops duplicates and cycle closers") {
    Instance tri = make_instance(4, {0, 1, 1, 1},
                                 {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {2, 3, 1}});
    SearchPattern a{{{0, 1}}};
    SearchPattern b{{{0, 1}, {1, 2}}};
    auto ab = concat_patterns(a, b, tri);
    CHECK(ab.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});

    SearchPattern c{{{0, 1}, {0, 2}}};
    SearchPattern d{{{1, 2}, {2, 3}}};
    auto cd = concat_patterns(c, d, tri);
    CHECK(cd.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {2, 3}});
}

TEST_CASE("concatenation with an empty prefix is the identity") {
    Instance inst = path_rab();
    SearchPattern empty;
    SearchPattern full{{{0, 1}, {1, 2}}};
    CHECK(concat_patterns(empty, full, inst).edges == full.edges);
}

TEST_CASE("instance accessors") {
    Instance inst = path_rab();
    CHECK(inst.size() == 3);
    CHECK(inst.root() == 0);
    CHECK(inst.index_of("v1") == 1);
    CHECK(inst.total_weight() == 2);
    CHECK(inst.num_weighted() == 2);
    CHECK(inst.find_edge(1, 0) == 0);
    CHECK(inst.find_edge(0, 2) == -1);
    CHECK(inst.with_unit_weights().total_weight() == 3);
    CHECK(inst.with_zero_root_weight().weight(0) == 0);
}
