#pragma once

#include "esp/json_io.hpp"
#include "esp/rational.hpp"

namespace esp {

/// Search instance built from a {1,2}-cost Steiner tree instance: k copies of
/// the complete graph, every vertex tied to a fresh root by edges of cost
/// 2(|T|-1). Terminal copies carry weight 1 (fractional weights scaled by |T|),
/// everything else weight 0.
struct GadgetInstance {
    Instance inst;
    int copies = 0;
    Length root_edge_cost = 0;
    int num_terminals = 0;
    std::vector<int> copy_of; // 1..copies per vertex, 0 for the root
    std::vector<int> orig_of; // index into the source instance, -1 for the root
};

GadgetInstance build_gadget(const ST12Instance& st, int k);

/// True iff every copy is attached to the root by exactly one pattern edge and
/// each copy's edges are consecutive.
bool is_structured(const GadgetInstance& gadget, const SearchPattern& pat);

/// Rewrites a valid pattern into a structured one without increasing total
/// latency: redundant root edges become in-copy edges, zero-gain segments are
/// deferred, over-priced tails are replaced by direct edges, and segments are
/// reordered by their length-per-terminal ratio.
SearchPattern structure_pattern(const GadgetInstance& gadget, const SearchPattern& pat);

struct SteinerTree {
    std::vector<std::pair<int, int>> edges; // indices into the source instance
    int cost = 0;
    int from_copy = 0;
};

/// Reads off the per-copy Steiner trees a structured pattern induces and
/// returns the cheapest one.
SteinerTree extract_best_steiner(const GadgetInstance& gadget, const SearchPattern& pat);

/// (k+1)/(k-1) * (3*beta - 2): the search-approximation factor beta implied by
/// a Steiner approximation guarantee, as a function of the copy count.
Rational hardness_ratio(const Rational& beta, int k);

} // namespace esp
