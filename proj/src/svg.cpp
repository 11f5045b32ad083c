#include "hyp/svg.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace hyp {

namespace {

// SVG y axis points down; flip on output so the disk reads with y up.
void emit_xy(std::ostringstream& out, const XY& p) {
    out << p.x << ' ' << -p.y;
}

// Geodesic between two disk points as an SVG path. The supporting circle is
// orthogonal to the unit circle, so its center c solves 2 c.p = |p|^2 + 1 and
// 2 c.q = |q|^2 + 1; points nearly collinear with the origin get a chord.
void emit_geodesic(std::ostringstream& out, const XY& p, const XY& q) {
    out << "M ";
    emit_xy(out, p);
    double det = 2.0 * (p.x * q.y - p.y * q.x);
    if (std::fabs(det) < 1e-7) {
        out << " L ";
        emit_xy(out, q);
        return;
    }
    double rp = p.x * p.x + p.y * p.y + 1.0;
    double rq = q.x * q.x + q.y * q.y + 1.0;
    double cx = (rp * q.y - rq * p.y) / det;
    double cy = (rq * p.x - rp * q.x) / det;
    double r = std::sqrt(cx * cx + cy * cy - 1.0);
    // The segment inside the disk subtends less than pi, so the large-arc
    // flag is always clear; the sweep follows the orientation of p, q about
    // the center in flipped coordinates.
    double ux = p.x - cx, uy = -(p.y - cy);
    double vx = q.x - cx, vy = -(q.y - cy);
    int sweep = ux * vy - uy * vx > 0.0 ? 1 : 0;
    out << " A " << r << ' ' << r << " 0 0 " << sweep << ' ';
    emit_xy(out, q);
}

void emit_path(std::ostringstream& out, const XY& p, const XY& q, const char* style) {
    out << "<path d=\"";
    emit_geodesic(out, p, q);
    out << "\" " << style << "/>\n";
}

}  // namespace

std::string render_svg(const VoronoiComplex& v, const DelaunayComplex& d) {
    std::ostringstream out;
    out << std::setprecision(6);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.05 -1.05 2.1 2.1\" "
           "width=\"800\" height=\"800\">\n";
    out << "<rect x=\"-1.05\" y=\"-1.05\" width=\"2.1\" height=\"2.1\" fill=\"white\"/>\n";
    out << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" "
           "stroke-width=\"0.004\"/>\n";

    const char* voronoi_style = "fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"0.003\"";
    for (const VoronoiCell& cell : v.cells) {
        size_t n = cell.corners.size();
        for (size_t k = 0; k < n; ++k) {
            int other = cell.edge_constraint[k];
            if (other < 0 || other < cell.site) continue;  // clip arcs and duplicates
            emit_path(out, to_poincare(cell.corners[k]), to_poincare(cell.corners[(k + 1) % n]),
                      voronoi_style);
        }
    }

    const char* delaunay_style =
        "fill=\"none\" stroke=\"#555555\" stroke-width=\"0.003\" stroke-dasharray=\"0.015 0.01\"";
    const char* flagged_style =
        "fill=\"none\" stroke=\"#c62828\" stroke-width=\"0.006\" stroke-dasharray=\"0.015 0.01\"";
    for (const DelaunayEdge& e : d.edges)
        emit_path(out, to_poincare(d.sites[e.site_a]), to_poincare(d.sites[e.site_b]),
                  e.centered ? delaunay_style : flagged_style);

    for (const HPoint& s : v.sites) {
        XY p = to_poincare(s);
        out << "<circle cx=\"" << p.x << "\" cy=\"" << -p.y
            << "\" r=\"0.008\" fill=\"black\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace hyp
