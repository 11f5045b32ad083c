#pragma once

#include <optional>
#include <vector>

namespace hyp {

// Point on the upper sheet of the hyperboloid -x0^2 + x1^2 + x2^2 = -1.
struct HPoint {
    double x0 = 1.0, x1 = 0.0, x2 = 0.0;
};

inline constexpr double kSheetBuildTol = 1e-9;
inline constexpr double kSheetCheckTol = 1e-6;
inline constexpr double kEquidistTol = 1e-8;

// Minkowski inner product <p,q> = -p0*q0 + p1*q1 + p2*q2.
double minkowski(const HPoint& p, const HPoint& q);

bool on_sheet(const HPoint& p, double tol = kSheetCheckTol);

// Rescales onto the upper sheet; input must be timelike.
HPoint normalize(const HPoint& p);

double dist(const HPoint& p, const HPoint& q);

// (cosh t, sinh t cos phi, sinh t sin phi)
HPoint from_polar(double t, double phi);

struct XY {
    double x = 0.0, y = 0.0;
};

XY to_klein(const HPoint& p);
HPoint from_klein(const XY& k);
XY to_poincare(const HPoint& p);

// Distance estimate from Poincare coordinates, reliable for nearly coincident
// points where the acosh formula loses all precision.
double poincare_near_dist(const XY& p, const XY& q);

// Linear map preserving the Minkowski form, det +1, upper sheet preserved.
struct HIsometry {
    double m[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
};

HIsometry compose(const HIsometry& a, const HIsometry& b);
HIsometry inverse(const HIsometry& g);
HPoint apply(const HIsometry& g, const HPoint& p);
bool form_preserving(const HIsometry& g, double tol = kSheetCheckTol);
double form_error(const HIsometry& g);

HIsometry rotation(double theta);
HIsometry translation_x(double t);
HIsometry rotation_about(const HPoint& p, double theta);

// Isometry taking (1,0,0) to p.
HIsometry carry_origin_to(const HPoint& p);

// Unit tangent at v pointing toward a.
HPoint tangent_toward(const HPoint& v, const HPoint& a);

// Maps p to (1,0,0) and q onto the positive x1-axis.
HIsometry frame_at(const HPoint& p, const HPoint& q);

// Angle at a opposite side of length a; cos A = (cosh b cosh c - cosh a)/(sinh b sinh c).
double triangle_angle(double a, double b, double c);

// Gauss-Bonnet: (n-2)*pi - sum of interior angles.
double polygon_area(const std::vector<double>& vertex_angles);

// Angle at v between the geodesics toward a and toward b.
double angle_at(const HPoint& v, const HPoint& a, const HPoint& b);

// Point at distance s from p along the geodesic toward q.
HPoint geodesic_point(const HPoint& p, const HPoint& q, double s);

// Equidistant point of three sites, none if their bisectors meet outside the plane.
std::optional<HPoint> circumcenter(const HPoint& p, const HPoint& q, const HPoint& r);

// Point at distance ra from a and rb from b; side selects the half-plane relative to a->b.
HPoint third_vertex(const HPoint& a, const HPoint& b, double ra, double rb, int side);

struct GeodesicSegment {
    HPoint a, b;
    double length = 0.0;
};

GeodesicSegment make_segment(const HPoint& a, const HPoint& b);

// Unique orientation-preserving isometry with g(src.a) = dst.a and g(src.b) = dst.b;
// flip swaps the destination endpoints.
HIsometry segment_pairing_isometry(const GeodesicSegment& src, const GeodesicSegment& dst,
                                   bool flip);

}  // namespace hyp
