#pragma once

#include <vector>

#include "hyp/cyclic.hpp"
#include "hyp/hyperboloid.hpp"
#include "hyp/tree_bound.hpp"

namespace hyp {

inline constexpr double kVertexMergeTol = 1e-8;     // hyperbolic distance
inline constexpr double kCenteredDeadBand = 1e-10;  // midpoint-at-endpoint band

// Cell boundary is a cyclic corner list; edge k runs from corner k to corner
// k+1 and carries the constraint that bounds it: a site index, or -1 for the
// clip circle.
struct VoronoiCell {
    int site = -1;
    std::vector<HPoint> corners;
    std::vector<int> edge_constraint;
    std::vector<int> corner_vertex;  // catalogued vertex id per corner, -1 if none
    bool touches_clip = false;
    bool peripheral = false;
};

struct VoronoiVertex {
    HPoint pos;
    double radius = 0.0;     // J_v
    std::vector<int> sites;  // incident site indices, sorted
    bool interior = false;   // every incident cell is non-peripheral
};

struct VoronoiEdge {
    int site_a = -1, site_b = -1;
    int va = -1, vb = -1;  // endpoint vertex ids
};

struct VoronoiComplex {
    std::vector<HPoint> sites;
    HPoint basepoint;
    double clip_radius = 0.0;
    std::vector<VoronoiCell> cells;
    std::vector<VoronoiVertex> vertices;
    std::vector<VoronoiEdge> edges;
};

struct DelaunayEdge {
    int site_a = -1, site_b = -1;
    int voronoi_edge = -1;
    double length = 0.0;
    bool centered = true;
};

// Vertex polygon of one interior Voronoi vertex; sites in cyclic order.
struct DelaunayFace {
    int vertex = -1;
    std::vector<int> sites;
    std::vector<int> edge_ids;  // Delaunay edge per side
    std::vector<double> sides;
    CyclicTuple tuple;
};

struct DelaunayComplex {
    std::vector<HPoint> sites;
    std::vector<DelaunayEdge> edges;
    std::vector<DelaunayFace> faces;
    std::vector<double> vertex_radius;
    std::vector<bool> vertex_interior;
    std::vector<int> face_of_vertex;  // face index per vertex, -1 if none
};

// Connected component of the non-centered subgraph, always a tree; edges are
// oriented by increasing J_v and the root carries the strict maximum.
struct NonCenteredTree {
    std::vector<int> vertices;                  // Voronoi vertex ids
    std::vector<std::pair<int, int>> edges;     // oriented (initial, terminal)
    std::vector<int> edge_ids;                  // Delaunay edge per tree edge
    int root = -1;
    RootedTree rooted;                          // local relabeling for the bound engine
    std::vector<double> dE;                     // tree edge lengths
    FrontierLengths dF;                         // frontier side lengths
};

struct DualCell {
    std::vector<int> vertices;  // member Voronoi vertex ids
    std::vector<int> faces;     // member face indices
    int tree = -1;              // index into forest, -1 for single-vertex cells
};

struct CenteredDual {
    std::vector<DualCell> cells;
    std::vector<NonCenteredTree> forest;
};

VoronoiComplex voronoi(const std::vector<HPoint>& sites, double clip_radius,
                       const HPoint& basepoint = HPoint{});
DelaunayComplex delaunay(const VoronoiComplex& v);
CenteredDual centered_dual(const VoronoiComplex& v, const DelaunayComplex& d);
double cell_defect(const DelaunayComplex& d, const DualCell& cell, double R);

// Maximum J_v over interior vertices: the covering radius of the sites
// restricted to the well-resolved region.
double max_interior_radius(const VoronoiComplex& v);

}  // namespace hyp
