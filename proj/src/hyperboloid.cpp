#include "hyp/hyperboloid.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace hyp {

double minkowski(const HPoint& p, const HPoint& q) {
    return -p.x0 * q.x0 + p.x1 * q.x1 + p.x2 * q.x2;
}

bool on_sheet(const HPoint& p, double tol) {
    // the form value itself carries rounding of order x0^2 eps, so the check
    // scales with the point's depth on the sheet
    double scale = std::max(1.0, p.x0 * p.x0);
    return std::abs(minkowski(p, p) + 1.0) <= tol * scale && p.x0 >= 1.0 - tol;
}

HPoint normalize(const HPoint& p) {
    double q = -minkowski(p, p);
    if (q <= 0.0) throw std::runtime_error("normalize: point is not timelike");
    double s = 1.0 / std::sqrt(q);
    if (p.x0 < 0.0) s = -s;
    return {p.x0 * s, p.x1 * s, p.x2 * s};
}

double dist(const HPoint& p, const HPoint& q) {
    if (!on_sheet(p) || !on_sheet(q)) throw std::runtime_error("dist: point off the hyperboloid");
    double c = -minkowski(p, q);
    if (c < 1.0) c = 1.0;
    return std::acosh(c);
}

HPoint from_polar(double t, double phi) {
    return {std::cosh(t), std::sinh(t) * std::cos(phi), std::sinh(t) * std::sin(phi)};
}

XY to_klein(const HPoint& p) {
    return {p.x1 / p.x0, p.x2 / p.x0};
}

HPoint from_klein(const XY& k) {
    double r2 = k.x * k.x + k.y * k.y;
    if (r2 >= 1.0) throw std::runtime_error("from_klein: point outside the unit disk");
    double x0 = 1.0 / std::sqrt(1.0 - r2);
    return {x0, x0 * k.x, x0 * k.y};
}

XY to_poincare(const HPoint& p) {
    return {p.x1 / (1.0 + p.x0), p.x2 / (1.0 + p.x0)};
}

double poincare_near_dist(const XY& p, const XY& q) {
    double s = 1.0 - p.x * p.x - p.y * p.y;
    return 2.0 * std::hypot(p.x - q.x, p.y - q.y) / s;
}

HIsometry compose(const HIsometry& a, const HIsometry& b) {
    HIsometry c;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a.m[i][k] * b.m[k][j];
            c.m[i][j] = s;
        }
    return c;
}

HIsometry inverse(const HIsometry& g) {
    // J g^T J for form-preserving g.
    HIsometry h;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double sign = ((i == 0) != (j == 0)) ? -1.0 : 1.0;
            h.m[i][j] = sign * g.m[j][i];
        }
    return h;
}

HPoint apply(const HIsometry& g, const HPoint& p) {
    HPoint q{g.m[0][0] * p.x0 + g.m[0][1] * p.x1 + g.m[0][2] * p.x2,
             g.m[1][0] * p.x0 + g.m[1][1] * p.x1 + g.m[1][2] * p.x2,
             g.m[2][0] * p.x0 + g.m[2][1] * p.x1 + g.m[2][2] * p.x2};
    return normalize(q);
}

double form_error(const HIsometry& g) {
    // max entry of g^T J g - J
    double e = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = -g.m[0][i] * g.m[0][j] + g.m[1][i] * g.m[1][j] + g.m[2][i] * g.m[2][j];
            double target = (i == j) ? (i == 0 ? -1.0 : 1.0) : 0.0;
            e = std::max(e, std::abs(s - target));
        }
    return e;
}

bool form_preserving(const HIsometry& g, double tol) {
    return form_error(g) <= tol;
}

HIsometry rotation(double theta) {
    HIsometry g;
    double c = std::cos(theta), s = std::sin(theta);
    g.m[1][1] = c;
    g.m[1][2] = -s;
    g.m[2][1] = s;
    g.m[2][2] = c;
    return g;
}

HIsometry translation_x(double t) {
    HIsometry g;
    double c = std::cosh(t), s = std::sinh(t);
    g.m[0][0] = c;
    g.m[0][1] = s;
    g.m[1][0] = s;
    g.m[1][1] = c;
    return g;
}

HIsometry carry_origin_to(const HPoint& p) {
    double t = std::acosh(std::max(1.0, p.x0));
    double phi = std::atan2(p.x2, p.x1);
    if (t == 0.0) return HIsometry{};
    return compose(rotation(phi), translation_x(t));
}

HIsometry rotation_about(const HPoint& p, double theta) {
    HIsometry to_p = carry_origin_to(p);
    return compose(compose(to_p, rotation(theta)), inverse(to_p));
}

HIsometry frame_at(const HPoint& p, const HPoint& q) {
    HIsometry back = inverse(carry_origin_to(p));
    HPoint q1 = apply(back, q);
    double psi = std::atan2(q1.x2, q1.x1);
    return compose(rotation(-psi), back);
}

double triangle_angle(double a, double b, double c) {
    if (a <= 0.0 || b <= 0.0 || c <= 0.0)
        throw std::runtime_error("triangle_angle: sides must be positive");
    if (a >= b + c || b >= a + c || c >= a + b)
        throw std::runtime_error("triangle_angle: sides violate the triangle inequality");
    double ca = (std::cosh(b) * std::cosh(c) - std::cosh(a)) / (std::sinh(b) * std::sinh(c));
    ca = std::clamp(ca, -1.0, 1.0);
    return std::acos(ca);
}

double polygon_area(const std::vector<double>& vertex_angles) {
    size_t n = vertex_angles.size();
    if (n < 3) throw std::runtime_error("polygon_area: need at least 3 angles");
    double s = 0.0;
    for (double a : vertex_angles) s += a;
    return (static_cast<double>(n) - 2.0) * M_PI - s;
}

HPoint tangent_toward(const HPoint& v, const HPoint& a) {
    double d = dist(v, a);
    if (d < 1e-14) throw std::runtime_error("tangent_toward: coincident points");
    double ch = std::cosh(d), sh = std::sinh(d);
    return {(a.x0 - ch * v.x0) / sh, (a.x1 - ch * v.x1) / sh, (a.x2 - ch * v.x2) / sh};
}

double angle_at(const HPoint& v, const HPoint& a, const HPoint& b) {
    HPoint u = tangent_toward(v, a);
    HPoint w = tangent_toward(v, b);
    double c = std::clamp(minkowski(u, w), -1.0, 1.0);
    return std::acos(c);
}

HPoint geodesic_point(const HPoint& p, const HPoint& q, double s) {
    HPoint u = tangent_toward(p, q);
    double ch = std::cosh(s), sh = std::sinh(s);
    return normalize({ch * p.x0 + sh * u.x0, ch * p.x1 + sh * u.x1, ch * p.x2 + sh * u.x2});
}

std::optional<HPoint> circumcenter(const HPoint& p, const HPoint& q, const HPoint& r) {
    if (dist(p, q) < 1e-12 || dist(p, r) < 1e-12 || dist(q, r) < 1e-12)
        throw std::runtime_error("circumcenter: coincident inputs");
    // Bisector of p,q is the plane <x, p-q> = 0; intersect the two planes.
    HPoint u{q.x0 - p.x0, q.x1 - p.x1, q.x2 - p.x2};
    HPoint v{r.x0 - p.x0, r.x1 - p.x1, r.x2 - p.x2};
    HPoint c{u.x1 * v.x2 - u.x2 * v.x1, u.x2 * v.x0 - u.x0 * v.x2, u.x0 * v.x1 - u.x1 * v.x0};
    HPoint w{-c.x0, c.x1, c.x2};
    if (minkowski(w, w) >= 0.0) return std::nullopt;
    return normalize(w);
}

HPoint third_vertex(const HPoint& a, const HPoint& b, double ra, double rb, int side) {
    double c = dist(a, b);
    if (c < 1e-14) throw std::runtime_error("third_vertex: coincident base points");
    double p0 = std::cosh(ra);
    double p1 = (std::cosh(c) * p0 - std::cosh(rb)) / std::sinh(c);
    double s2 = p0 * p0 - 1.0 - p1 * p1;
    if (s2 < 0.0) {
        if (s2 < -1e-12) throw std::runtime_error("third_vertex: radii violate the triangle inequality");
        s2 = 0.0;
    }
    double p2 = (side >= 0 ? 1.0 : -1.0) * std::sqrt(s2);
    HIsometry back = inverse(frame_at(a, b));
    return apply(back, HPoint{p0, p1, p2});
}

GeodesicSegment make_segment(const HPoint& a, const HPoint& b) {
    return {a, b, dist(a, b)};
}

HIsometry segment_pairing_isometry(const GeodesicSegment& src, const GeodesicSegment& dst,
                                   bool flip) {
    if (std::abs(src.length - dst.length) >= 1e-9)
        throw std::runtime_error("segment_pairing_isometry: length mismatch");
    HIsometry gs = frame_at(src.a, src.b);
    HIsometry gd = flip ? frame_at(dst.b, dst.a) : frame_at(dst.a, dst.b);
    return compose(inverse(gd), gs);
}

}  // namespace hyp
