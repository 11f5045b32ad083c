#pragma once

#include <array>
#include <optional>
#include <vector>

namespace hyp {

// Rooted tree whose vertices carry frontier edge slots; every vertex has
// total valence (tree degree + frontier count) at least 3.
struct RootedTree {
    int nv = 0;
    int root = 0;
    std::vector<std::pair<int, int>> edges;  // undirected vertex pairs
    std::vector<int> frontier_vertex;        // frontier edge id -> attached vertex

    // Derived on validate(): orientation toward the root.
    std::vector<int> parent_edge;             // tree edge toward root, -1 at root
    std::vector<std::vector<int>> child_edges;
    std::vector<int> depth_order;             // deepest first

    void validate();
    int tree_degree(int v) const;
    int frontier_count(int v) const;
    int valence(int v) const;
    int child_of(int edge) const;  // endpoint of the edge away from the root
};

// One value per frontier edge slot, aligned with RootedTree::frontier_vertex.
using FrontierLengths = std::vector<double>;

struct BoundReport {
    double basic = 0.0;
    std::optional<double> case1, case2a, case2b, case3;
    double best = 0.0;
    std::vector<double> b_edge;  // per tree edge
    std::vector<double> h_edge;
    double root_term = 0.0;      // root summand of the basic bound
    bool maybe_empty = false;    // one-edge trees: admissible interval empty at dF = bF
};

struct AdmissibleInterval {
    double lo = 0.0, hi = 0.0;
    bool closed_left = false;
    bool empty = true;
};

// Outside-in recursion: b_e (resp. h_e) so that each non-root vertex tuple with its
// parent entry replaced is exactly BoundaryCentered (resp. horocyclic).
std::vector<double> frontier_b(const RootedTree& t, const FrontierLengths& bF);
std::vector<double> frontier_h(const RootedTree& t, const FrontierLengths& bF);

// Side-length tuple around a vertex: parent entry first for non-root vertices.
std::vector<double> vertex_tuple(const RootedTree& t, int v, const std::vector<double>& dE,
                                 const FrontierLengths& dF);

// Membership of dE in the admissible space over dF: every non-root tuple is
// NonCentered or BoundaryCentered with the parent entry largest, the root tuple is
// Centered, and circumradii strictly increase toward the root.
bool ad_membership(const RootedTree& t, const std::vector<double>& dE, const FrontierLengths& dF);

// Sum of vertex-tuple defects; requires dE in the closure of the admissible space.
double tree_defect(const RootedTree& t, const std::vector<double>& dE, const FrontierLengths& dF,
                   double R);

double basic_bound(const RootedTree& t, const FrontierLengths& bF, double R);

// Basic bound plus the case improvements; only trees with at most two edges.
BoundReport case_bounds(const RootedTree& t, const FrontierLengths& bF, double R);

// Admissible tree-edge range for a one-edge tree at fixed frontier lengths.
AdmissibleInterval admissible_interval(const RootedTree& t, const FrontierLengths& dF);

// Two-vertex tree with the given frontier slot counts (non-root vertex, root).
RootedTree one_edge_tree(int child_slots, int root_slots);

// Path 0-1-2 with per-vertex frontier slot counts; root is vertex 1 or 2.
RootedTree chain_tree(const std::array<int, 3>& slots, int root);

}  // namespace hyp
