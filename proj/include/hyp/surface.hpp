#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hyp/hyperboloid.hpp"

namespace hyp {

// Fixed point-free involution of the 18 triangle side slots; side i of
// triangle i/3 runs from corner i to corner next(i) within its triangle.
struct EdgePairing {
    std::array<int, 18> iota{};
    bool one_vertex = false;
};

// Genus-2 surface presented as an octagon: six triangles (four plus a
// quadrilateral for the direct f_beta model) with paired boundary edges.
struct OctagonSurface {
    std::string model;  // "f_alpha", "f_beta", "f_t"
    double t = 0.0;
    std::vector<std::vector<HPoint>> polys;
    std::vector<std::vector<HPoint>> triangles;  // always the 6-triangle decomposition
    std::vector<GeodesicSegment> boundary;       // 8 edges in cyclic order
    std::array<int, 8> pair_of{};                // boundary pairing, involutive
    std::vector<HIsometry> generators;           // 4 holonomy maps
    HPoint marked;                               // base vertex whose orbit is lifted
    EdgePairing pairing;
    std::array<double, 18> lengths{};            // side labels d_0..d_17
    double vertex_angle_sum = 0.0;
    double area = 0.0;
};

struct PIotaPoint {
    std::array<double, 18> lengths{};
    EdgePairing pairing;
};

struct InjCovRow {
    double r = 0.0;
    double max_ratio = 0.0;       // max sampled sinh J / (sqrt(2) sinh r)
    double extremal_ratio = 0.0;  // closed-form extremal configuration
    int samples = 0;
};

struct InjCovReport {
    std::vector<InjCovRow> rows;
    double worst_ratio = 0.0;
    bool ok = false;
};

// The canonical one-vertex pairing used for all surfaces here: boundary edges
// identified by the scheme (E0,E2)(E1,E3)(E4,E6)(E5,E7).
EdgePairing canonical_pairing();

OctagonSurface build_surface_alpha();
OctagonSurface build_surface_beta();
OctagonSurface build_surface_t(double t);

// d with 3 D03(d_t) + D0(d,d_t,d_t) + D0(b_t,d_t,d) + D0(b_t,d_t,d_t) = 4pi.
double solve_d1_of_t(double t);

// Orbit of the marked vertex under the holonomy group, truncated to the ball
// around the marked point; ball_radius <= 0 selects the default.
std::vector<HPoint> lift_sites(const OctagonSurface& s, double ball_radius = 0.0);

double injectivity_radius(const std::vector<HPoint>& sites);

// d_1(r) on [r_beta, r_alpha]: 4 D03(d_r) + 2 D0(d_1, d_r, d_r) = 4pi, d_r = 2r.
double d1_of_r(double r);

void validate_p_iota(const PIotaPoint& p);
double covering_radius(const PIotaPoint& p);

// Largest interior Voronoi vertex radius of the lifted site set.
double covering_radius_geometric(const std::vector<HPoint>& sites, double clip_radius,
                                 const HPoint& basepoint = HPoint{});

// sinh J of the extremal configuration (d_1(r), d_1(r), d_r, ..., d_r).
double extremal_sinh_j(double r);

InjCovReport verify_theorem2(const std::vector<double>& r_grid, int samples_per_r,
                             std::uint64_t seed);

}  // namespace hyp
