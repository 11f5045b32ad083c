#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hyp/hyperboloid.hpp"
#include "hyp/surface.hpp"
#include "hyp/tessellation.hpp"
#include "hyp/tree_bound.hpp"

namespace hyp {

// Point sets: {"model": "hyperboloid", "points": [[x0,x1,x2], ...]}.
std::string write_points(const std::vector<HPoint>& pts);
std::vector<HPoint> read_points(const std::string& text);

// Rooted trees with frontier slots:
// {"vertices": [{"id", "root"}], "edges": [[u,v]], "frontier": [{"vertex", "bound"}]}.
std::pair<RootedTree, FrontierLengths> read_tree(const std::string& text);
std::string write_tree(const RootedTree& t, const FrontierLengths& bF);

// Bound columns keyed "basic", "case1", "case2a", "case2b", "case3", "best";
// inapplicable cases serialize as the string "N/A".
std::string write_bound_report(const BoundReport& rep);

std::string write_complex(const VoronoiComplex& v, const DelaunayComplex& d);

// Surface descriptor {model, t, pairing, generators, lengths, marked}.
std::string write_surface(const OctagonSurface& s);

std::string load_file(const std::string& path);
void save_file(const std::string& path, const std::string& text);

}  // namespace hyp
