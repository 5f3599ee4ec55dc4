#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spidergray/errors.hpp"

namespace spidergray {

enum class Sign : std::uint8_t { positive, negative };

// Constraint digraph exactly as read: labels in first-appearance order and
// arcs in input order. An arc (from, to) means bit[from] <= bit[to].
struct RawDigraph {
    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> arcs;  // indices into labels

    int n() const { return static_cast<int>(labels.size()); }
};

// Canonical preorder-numbered forest. Vertices are 1..n; vertex 0 is the
// virtual root adopted as parent of every component root. The descendants of
// vertex k occupy the contiguous range k..scope[k]. A vertex is positive when
// the arc between it and its parent points at the vertex; component roots are
// positive by convention (children of the virtual root).
struct SpiderForest {
    int n = 0;
    std::vector<int> parent;                 // [0..n], parent[0] = -1
    std::vector<Sign> sign;                  // [0..n], sign[0] = negative
    std::vector<int> scope;                  // [0..n], scope[0] = n
    std::vector<std::vector<int>> children;  // [0..n], ascending
    std::vector<std::string> label_of;       // [0..n], label_of[0] = ""

    bool is_root(int k) const { return parent[k] == 0; }
};

// Edge-list text -> RawDigraph. Lines: "a -> b", "node x", blank, "# ...".
RawDigraph parse_digraph(const std::string& text);

// Checks total acyclicity and produces the canonical forest. Component roots
// are the first-appearing label of each component; children are ordered by
// first arc appearance. Throws UndirectedCycleError / DuplicateArcError.
SpiderForest validate_and_normalize(const RawDigraph& g);

// Human-readable index <-> label table with parent/sign/scope per vertex.
std::string mapping_report(const SpiderForest& f);

// Forest -> edge-list text that re-parses to an isomorphic forest.
std::string to_edge_list(const RawDigraph& g);

// perm[i] = preorder index of the vertex labelled g.labels[i].
std::vector<int> label_order_permutation(const SpiderForest& f, const RawDigraph& g);

}  // namespace spidergray
