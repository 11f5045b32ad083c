#include "hyp/tree_bound.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "hyp/cyclic.hpp"

namespace hyp {

namespace {

std::vector<double> erase_at(const std::vector<double>& v, size_t i) {
    std::vector<double> r;
    r.reserve(v.size() - 1);
    for (size_t k = 0; k < v.size(); ++k)
        if (k != i) r.push_back(v[k]);
    return r;
}

double defect_of(const std::vector<double>& sides, double R) { return defect(classify(sides), R); }

// Third side of the exactly BoundaryCentered triple with longest side first:
// sinh^2(L/2) = sinh^2(keep/2) + sinh^2(c/2).
double bc_third_side(double L, double keep) {
    double c = std::cosh(L) - std::cosh(keep) + 1.0;
    assert(c > 1.0);
    return std::acosh(c);
}

// Maximal defect of a root tuple whose entries range over (0, vals]: the largest
// entry is capped at the BoundaryCentered value of the rest; a trivalent root
// instead keeps the largest and lowers one of the other two onto the
// BoundaryCentered locus, whichever substitution gives the smaller defect.
double root_defect(const std::vector<double>& vals, double R, bool trivalent) {
    std::vector<double> vs = vals;
    std::sort(vs.begin(), vs.end(), std::greater<double>());
    std::vector<double> rest(vs.begin() + 1, vs.end());
    double cap = b0(rest);
    if (vs[0] <= cap) return defect_of(vs, R);
    if (trivalent) {
        double o1 = defect_of({vs[0], rest[0], bc_third_side(vs[0], rest[0])}, R);
        double o2 = defect_of({vs[0], bc_third_side(vs[0], rest[1]), rest[1]}, R);
        return std::min(o1, o2);
    }
    std::vector<double> tuple = rest;
    tuple.insert(tuple.begin(), cap);
    return defect_of(tuple, R);
}

// Root defect when the tuple is BoundaryCentered with the longest side at
// position i: the longest entry is b0 of the others, unless the bound vals[i]
// already exceeds that cap, in which case it is the strict maximum and a
// trivalent root admits the substitution pair that keeps it.
double pinned_root_defect(const std::vector<double>& vals, size_t i, double R, bool trivalent) {
    std::vector<double> rest = erase_at(vals, i);
    double cap = b0(rest);
    double pinned = vals[i];
    if (pinned > cap && trivalent) {
        double o1 = defect_of({pinned, rest[0], bc_third_side(pinned, rest[0])}, R);
        double o2 = defect_of({pinned, bc_third_side(pinned, rest[1]), rest[1]}, R);
        return std::min(o1, o2);
    }
    std::vector<double> tuple = rest;
    tuple.insert(tuple.begin(), cap);
    return defect_of(tuple, R);
}

// Values around v excluding the parent edge: child tree-edge values, then
// frontier values in slot order.
std::vector<double> outer_values(const RootedTree& t, int v, const std::vector<double>& edge_vals,
                                 const FrontierLengths& fvals) {
    std::vector<double> out;
    for (int e : t.child_edges[v]) out.push_back(edge_vals[e]);
    for (size_t s = 0; s < t.frontier_vertex.size(); ++s)
        if (t.frontier_vertex[s] == v) out.push_back(fvals[s]);
    return out;
}

void check_sizes(const RootedTree& t, const FrontierLengths& f) {
    if (t.parent_edge.size() != static_cast<size_t>(t.nv))
        throw std::runtime_error("rooted tree: call validate() first");
    if (f.size() != t.frontier_vertex.size())
        throw std::runtime_error("frontier length count does not match the tree");
    for (double x : f)
        if (!(x > 0.0)) throw std::runtime_error("frontier lengths must be positive");
}

}  // namespace

void RootedTree::validate() {
    if (nv < 2) throw std::runtime_error("rooted tree: need at least two vertices");
    if (root < 0 || root >= nv) throw std::runtime_error("rooted tree: root out of range");
    if (static_cast<int>(edges.size()) != nv - 1)
        throw std::runtime_error("rooted tree: edge count must be nv - 1");
    for (auto [u, v] : edges)
        if (u < 0 || u >= nv || v < 0 || v >= nv || u == v)
            throw std::runtime_error("rooted tree: bad edge");
    for (int v : frontier_vertex)
        if (v < 0 || v >= nv) throw std::runtime_error("rooted tree: frontier vertex out of range");

    std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (neighbor, edge id)
    for (size_t e = 0; e < edges.size(); ++e) {
        adj[edges[e].first].push_back({edges[e].second, static_cast<int>(e)});
        adj[edges[e].second].push_back({edges[e].first, static_cast<int>(e)});
    }
    parent_edge.assign(nv, -1);
    child_edges.assign(nv, {});
    depth_order.clear();
    std::vector<int> queue = {root};
    std::vector<bool> seen(nv, false);
    seen[root] = true;
    for (size_t i = 0; i < queue.size(); ++i) {
        int v = queue[i];
        depth_order.push_back(v);
        for (auto [w, e] : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                parent_edge[w] = e;
                child_edges[v].push_back(e);
                queue.push_back(w);
            }
    }
    if (static_cast<int>(queue.size()) != nv)
        throw std::runtime_error("rooted tree: not connected");
    std::reverse(depth_order.begin(), depth_order.end());

    for (int v = 0; v < nv; ++v)
        if (valence(v) < 3) throw std::runtime_error("rooted tree: vertex valence below 3");
    if (frontier_vertex.size() < edges.size() + 3)
        throw std::runtime_error("rooted tree: too few frontier edges");
}

int RootedTree::tree_degree(int v) const {
    int d = 0;
    for (auto [a, b] : edges) d += (a == v) + (b == v);
    return d;
}

int RootedTree::frontier_count(int v) const {
    int c = 0;
    for (int w : frontier_vertex) c += (w == v);
    return c;
}

int RootedTree::valence(int v) const { return tree_degree(v) + frontier_count(v); }

int RootedTree::child_of(int edge) const {
    auto [u, v] = edges[edge];
    return parent_edge[u] == edge ? u : v;
}

std::vector<double> frontier_b(const RootedTree& t, const FrontierLengths& bF) {
    check_sizes(t, bF);
    std::vector<double> b(t.edges.size(), 0.0);
    for (int v : t.depth_order) {
        if (v == t.root) continue;
        b[t.parent_edge[v]] = b0(outer_values(t, v, b, bF));
    }
    return b;
}

std::vector<double> frontier_h(const RootedTree& t, const FrontierLengths& bF) {
    check_sizes(t, bF);
    std::vector<double> h(t.edges.size(), 0.0);
    for (int v : t.depth_order) {
        if (v == t.root) continue;
        h[t.parent_edge[v]] = h0(outer_values(t, v, h, bF));
    }
    return h;
}

std::vector<double> vertex_tuple(const RootedTree& t, int v, const std::vector<double>& dE,
                                 const FrontierLengths& dF) {
    std::vector<double> out;
    if (v != t.root) out.push_back(dE[t.parent_edge[v]]);
    auto rest = outer_values(t, v, dE, dF);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

bool ad_membership(const RootedTree& t, const std::vector<double>& dE, const FrontierLengths& dF) {
    check_sizes(t, dF);
    if (dE.size() != t.edges.size())
        throw std::runtime_error("tree edge length count does not match the tree");
    std::vector<CyclicTuple> tup;
    tup.reserve(t.nv);
    for (int v = 0; v < t.nv; ++v) tup.push_back(classify(vertex_tuple(t, v, dE, dF)));

    for (int v = 0; v < t.nv; ++v) {
        if (v == t.root) {
            if (tup[v].cls != Centering::Centered) return false;
            continue;
        }
        if (tup[v].cls != Centering::NonCentered && tup[v].cls != Centering::BoundaryCentered)
            return false;
        const auto sides = vertex_tuple(t, v, dE, dF);
        for (size_t k = 1; k < sides.size(); ++k)
            if (sides[0] < sides[k]) return false;
    }
    for (size_t e = 0; e < t.edges.size(); ++e) {
        int c = t.child_of(static_cast<int>(e));
        int p = t.edges[e].first == c ? t.edges[e].second : t.edges[e].first;
        if (!(tup[p].radius > tup[c].radius)) return false;
    }
    return true;
}

double tree_defect(const RootedTree& t, const std::vector<double>& dE, const FrontierLengths& dF,
                   double R) {
    check_sizes(t, dF);
    if (dE.size() != t.edges.size())
        throw std::runtime_error("tree edge length count does not match the tree");
    const double slack = 1e-12;
    std::vector<CyclicTuple> tup;
    tup.reserve(t.nv);
    for (int v = 0; v < t.nv; ++v) tup.push_back(classify(vertex_tuple(t, v, dE, dF)));

    for (int v = 0; v < t.nv; ++v) {
        if (tup[v].cls == Centering::NotCyclic)
            throw std::runtime_error("tree_defect: tuple is not cyclic");
        if (v == t.root) {
            if (tup[v].cls == Centering::NonCentered)
                throw std::runtime_error("tree_defect: root tuple is not centered");
            continue;
        }
        if (tup[v].cls == Centering::Centered)
            throw std::runtime_error("tree_defect: non-root tuple is centered");
        const auto sides = vertex_tuple(t, v, dE, dF);
        for (size_t k = 1; k < sides.size(); ++k)
            if (sides[0] < sides[k] - slack)
                throw std::runtime_error("tree_defect: tree edge is not the largest entry");
    }
    for (size_t e = 0; e < t.edges.size(); ++e) {
        int c = t.child_of(static_cast<int>(e));
        int p = t.edges[e].first == c ? t.edges[e].second : t.edges[e].first;
        if (tup[p].radius < tup[c].radius - slack)
            throw std::runtime_error("tree_defect: circumradii must grow toward the root");
    }
    double total = 0.0;
    for (int v = 0; v < t.nv; ++v) total += defect(tup[v], R);
    return total;
}

double basic_bound(const RootedTree& t, const FrontierLengths& bF, double R) {
    auto b = frontier_b(t, bF);
    double total = root_defect(outer_values(t, t.root, b, bF), R, t.valence(t.root) == 3);
    for (int v = 0; v < t.nv; ++v)
        if (v != t.root) total += horocyclic_defect(outer_values(t, v, b, bF), R);
    return total;
}

BoundReport case_bounds(const RootedTree& t, const FrontierLengths& bF, double R) {
    if (t.edges.size() > 2)
        throw std::runtime_error("case_bounds: only trees with at most two edges");
    check_sizes(t, bF);

    BoundReport rep;
    rep.b_edge = frontier_b(t, bF);
    rep.h_edge = frontier_h(t, bF);
    const auto rv = outer_values(t, t.root, rep.b_edge, bF);
    const bool trivalent = t.valence(t.root) == 3;
    rep.root_term = root_defect(rv, R, trivalent);

    std::vector<double> horo(t.nv, 0.0);
    double horo_all = 0.0;
    for (int v = 0; v < t.nv; ++v)
        if (v != t.root) {
            horo[v] = horocyclic_defect(outer_values(t, v, rep.b_edge, bF), R);
            horo_all += horo[v];
        }
    rep.basic = rep.root_term + horo_all;

    // Case 1: every non-root tuple sits exactly on the BoundaryCentered locus.
    double c1 = rep.root_term;
    for (int v = 0; v < t.nv; ++v)
        if (v != t.root) {
            auto tuple = outer_values(t, v, rep.b_edge, bF);
            tuple.insert(tuple.begin(), rep.b_edge[t.parent_edge[v]]);
            c1 += defect_of(tuple, R);
        }
    rep.case1 = c1;

    // Case 2a: one root frontier length pinned at its bound.
    const size_t n_child = t.child_edges[t.root].size();
    if (rv.size() > n_child) {
        double best = std::numeric_limits<double>::infinity();
        for (size_t p = n_child; p < rv.size(); ++p)
            best = std::min(best, pinned_root_defect(rv, p, R, trivalent) + horo_all);
        rep.case2a = best;
    }

    if (t.edges.size() >= 2) {
        // Case 2b: one root tree edge pinned at its recursive bound; its child
        // tuple is evaluated there instead of at the horocyclic limit.
        double best2b = std::numeric_limits<double>::infinity();
        for (size_t p = 0; p < n_child; ++p) {
            int e = t.child_edges[t.root][p];
            double m = pinned_root_defect(rv, p, R, trivalent);
            double cap = b0(erase_at(rv, p));
            int v = t.child_of(e);
            auto cv = outer_values(t, v, rep.b_edge, bF);
            double child_term;
            if (t.valence(v) == 3 && rep.b_edge[e] < cap) {
                double o1 = defect_of({cap, cv[0], bc_third_side(cap, cv[0])}, R);
                double o2 = defect_of({cap, bc_third_side(cap, cv[1]), cv[1]}, R);
                child_term = std::min(o1, o2);
            } else {
                auto tuple = cv;
                tuple.insert(tuple.begin(), rep.b_edge[e]);
                child_term = defect_of(tuple, R);
            }
            best2b = std::min(best2b, m + child_term + horo_all - horo[v]);
        }
        rep.case2b = best2b;

        // Case 3: equal circumradii collapse the tree; all frontier lengths form
        // one tuple with the largest capped at the BoundaryCentered value.
        std::vector<double> vs = bF;
        std::sort(vs.begin(), vs.end(), std::greater<double>());
        std::vector<double> rest(vs.begin() + 1, vs.end());
        double cap = b0(rest);
        if (vs[0] > cap) vs[0] = cap;
        rep.case3 = defect_of(vs, R);
    }

    double cmin = std::numeric_limits<double>::infinity();
    for (const auto& c : {rep.case1, rep.case2a, rep.case2b, rep.case3})
        if (c) cmin = std::min(cmin, *c);
    rep.best = std::max(rep.basic, cmin);
    if (t.edges.size() == 1) rep.maybe_empty = admissible_interval(t, bF).empty;
    return rep;
}

AdmissibleInterval admissible_interval(const RootedTree& t, const FrontierLengths& dF) {
    if (t.edges.size() != 1)
        throw std::runtime_error("admissible_interval: one-edge trees only");
    check_sizes(t, dF);
    const int child = t.child_of(0);
    std::vector<double> dFv, dFr;
    for (size_t s = 0; s < t.frontier_vertex.size(); ++s)
        (t.frontier_vertex[s] == child ? dFv : dFr).push_back(dF[s]);

    const double lo_child = b0(dFv);
    const double hi_child = h0(dFv);
    const double mmax = *std::max_element(dFr.begin(), dFr.end());
    const double d0p = b0(dFr);

    // Lower end of the root centered window: tree edge value at which the root
    // tuple leaves the BoundaryCentered locus of its largest frontier entry.
    auto theta = [&](double d) { return std::asin(std::min(1.0, std::sinh(d / 2) / std::sinh(mmax / 2))); };
    double s0 = -std::acos(-1.0);
    for (double x : dFr) s0 += theta(x);
    double d0m = 0.0;
    if (s0 <= -1e-12) d0m = bisect([&](double d) { return s0 + theta(d); }, 1e-12, mmax);

    AdmissibleInterval out;
    double lo = lo_child;
    bool closed = true;
    if (lo <= d0m) {
        lo = d0m;
        closed = false;
    }
    const double hi_cap = std::min(hi_child, d0p);
    if (!(lo < hi_cap)) return out;

    auto radius_of = [](double d, const std::vector<double>& rest) {
        std::vector<double> tuple = rest;
        tuple.insert(tuple.begin(), d);
        return classify(tuple).radius;
    };
    auto f = [&](double d) { return radius_of(d, dFr) - radius_of(d, dFv); };

    const double eval_lo = closed ? lo : lo + 1e-9 * (hi_cap - lo);
    if (!(f(eval_lo) > 0.0)) return out;
    const double eval_hi = hi_cap - std::max(1e-12, 1e-12 * hi_cap);
    out.empty = false;
    out.lo = lo;
    out.closed_left = closed;
    out.hi = f(eval_hi) > 0.0 ? hi_cap : bisect(f, eval_lo, eval_hi);
    return out;
}

RootedTree one_edge_tree(int child_slots, int root_slots) {
    RootedTree t;
    t.nv = 2;
    t.root = 1;
    t.edges = {{1, 0}};
    for (int k = 0; k < child_slots; ++k) t.frontier_vertex.push_back(0);
    for (int k = 0; k < root_slots; ++k) t.frontier_vertex.push_back(1);
    t.validate();
    return t;
}

RootedTree chain_tree(const std::array<int, 3>& slots, int root) {
    if (root != 1 && root != 2) throw std::runtime_error("chain_tree: root must be 1 or 2");
    RootedTree t;
    t.nv = 3;
    t.root = root;
    t.edges = root == 1 ? std::vector<std::pair<int, int>>{{1, 0}, {1, 2}}
                        : std::vector<std::pair<int, int>>{{2, 1}, {1, 0}};
    for (int v = 0; v < 3; ++v)
        for (int k = 0; k < slots[v]; ++k) t.frontier_vertex.push_back(v);
    t.validate();
    return t;
}

}  // namespace hyp
