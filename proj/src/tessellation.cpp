#include "hyp/tessellation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace hyp {

namespace {

constexpr int kClipSides = 256;
constexpr double kLocalClipRadius = 6.0;  // initial geodesic polygon around each site
constexpr double kCatalogMargin = 0.5;  // corners this close to the clip circle are not catalogued
constexpr double kDegenerateEdgeTol = 1e-6;  // below any genuine Voronoi edge length

// Working polygon in Klein coordinates; edge k runs corner k -> k+1 and
// carries the constraint bounding it.
struct ClipPoly {
    std::vector<XY> pts;
    std::vector<int> ids;
};

// Intersect with the half-plane a.k <= b, tagging new edges with id.
void clip_halfplane(ClipPoly& poly, double a1, double a2, double b, int id) {
    const size_t n = poly.pts.size();
    std::vector<XY> pts;
    std::vector<int> ids;
    pts.reserve(n + 2);
    ids.reserve(n + 2);
    for (size_t k = 0; k < n; ++k) {
        const XY& P = poly.pts[k];
        const XY& Q = poly.pts[(k + 1) % n];
        double fP = b - a1 * P.x - a2 * P.y;
        double fQ = b - a1 * Q.x - a2 * Q.y;
        bool inP = fP >= 0.0, inQ = fQ >= 0.0;
        if (inP) {
            pts.push_back(P);
            ids.push_back(poly.ids[k]);
        }
        if (inP != inQ) {
            double s = fP / (fP - fQ);
            pts.push_back({P.x + s * (Q.x - P.x), P.y + s * (Q.y - P.y)});
            ids.push_back(inP ? id : poly.ids[k]);
        }
    }
    poly.pts = std::move(pts);
    poly.ids = std::move(ids);
}

struct GridKey {
    long long x, y;
    bool operator<(const GridKey& o) const { return x != o.x ? x < o.x : y < o.y; }
};

int uf_find(std::vector<int>& uf, int a) {
    while (uf[a] != a) a = uf[a] = uf[uf[a]];
    return a;
}

}  // namespace

VoronoiComplex voronoi(const std::vector<HPoint>& sites, double clip_radius,
                       const HPoint& basepoint) {
    const int n = static_cast<int>(sites.size());
    if (n < 4) throw std::runtime_error("voronoi: need at least 4 sites");
    if (!(clip_radius > 0)) throw std::runtime_error("voronoi: clip radius must be positive");

    VoronoiComplex out;
    out.sites = sites;
    out.basepoint = basepoint;
    out.clip_radius = clip_radius;

    // Work in the frame with the basepoint at the origin.
    const HIsometry to_base = carry_origin_to(basepoint);
    const HIsometry to_work = inverse(to_base);
    std::vector<HPoint> ws(n);
    std::vector<XY> wk(n);
    for (int i = 0; i < n; ++i) {
        ws[i] = apply(to_work, sites[i]);
        wk[i] = to_klein(ws[i]);
    }

    {  // duplicate detection via a spatial hash on Poincare coordinates
        std::map<GridKey, std::vector<int>> grid;
        const double h = 1e-5;
        for (int i = 0; i < n; ++i) {
            XY p = to_poincare(ws[i]);
            GridKey key{static_cast<long long>(std::floor(p.x / h)),
                        static_cast<long long>(std::floor(p.y / h))};
            for (long long dx = -1; dx <= 1; ++dx)
                for (long long dy = -1; dy <= 1; ++dy) {
                    auto it = grid.find({key.x + dx, key.y + dy});
                    if (it == grid.end()) continue;
                    for (int j : it->second)
                        if (dist(ws[i], ws[j]) <= 1e-6)
                            throw std::runtime_error("voronoi: sites closer than 1e-6");
                }
            grid[key].push_back(i);
        }
    }

    // Cells are cut from a geodesic polygon around their own site. A polygon
    // around the basepoint cannot work here: a Klein polygon needs on the
    // order of e^R sides to keep hyperbolic apothem R, so its sides would cut
    // far inside any useful clip radius. A moderate site-centred polygon
    // instead clips at a fixed distance well beyond any cell of interest,
    // and surviving polygon sides mark the cell as truncated.
    std::vector<XY> disk(kClipSides);
    for (int k = 0; k < kClipSides; ++k) {
        double ang = 2.0 * M_PI * k / kClipSides;
        disk[k] = {std::cos(ang), std::sin(ang)};
    }
    const double sinh_loc = std::sinh(kLocalClipRadius);
    const double cosh_loc = std::cosh(kLocalClipRadius);

    const HPoint origin{};
    out.cells.resize(n);
    std::vector<double> dist_buf(n);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) {
        if (dist(origin, ws[i]) > clip_radius) {  // empty truncated cell
            out.cells[i].site = i;
            out.cells[i].touches_clip = true;
            continue;
        }
        for (int j = 0; j < n; ++j) dist_buf[j] = j == i ? 0.0 : dist(ws[i], ws[j]);
        order.clear();
        for (int j = 0; j < n; ++j)
            if (j != i) order.push_back(j);
        auto by_dist = [&](int a, int b) { return dist_buf[a] < dist_buf[b]; };
        size_t sorted_upto = std::min<size_t>(order.size(), 512);
        std::partial_sort(order.begin(), order.begin() + sorted_upto, order.end(), by_dist);

        ClipPoly poly;
        HIsometry to_site = carry_origin_to(ws[i]);
        for (int k = 0; k < kClipSides; ++k) {
            HPoint c = apply(to_site, HPoint{cosh_loc, sinh_loc * disk[k].x, sinh_loc * disk[k].y});
            poly.pts.push_back(to_klein(c));
            poly.ids.push_back(-1);
        }
        double max_corner = kLocalClipRadius;
        bool fresh = false;  // max_corner needs recomputing
        for (size_t q = 0; q < order.size(); ++q) {
            if (q == sorted_upto) {  // rare: extend the sorted prefix to everything
                std::sort(order.begin() + sorted_upto, order.end(), by_dist);
                sorted_upto = order.size();
            }
            int j = order[q];
            if (fresh) {
                max_corner = 0.0;
                for (const XY& c : poly.pts)
                    max_corner = std::max(max_corner, dist(ws[i], from_klein(c)));
                fresh = false;
            }
            if (dist_buf[j] / 2.0 > max_corner) break;  // no farther site can cut
            double a1 = ws[j].x1 - ws[i].x1;
            double a2 = ws[j].x2 - ws[i].x2;
            double b = ws[j].x0 - ws[i].x0;
            size_t before = poly.pts.size();
            bool same = true;
            ClipPoly cut = poly;
            clip_halfplane(cut, a1, a2, b, j);
            same = cut.pts.size() == before;
            if (same)
                for (size_t k = 0; k < before; ++k)
                    if (cut.ids[k] != poly.ids[k]) same = false;
            if (!same) {
                poly = std::move(cut);
                fresh = true;
            }
            if (poly.pts.size() < 3) {  // site outside the clip region
                poly.pts.clear();
                poly.ids.clear();
                break;
            }
        }

        VoronoiCell& cell = out.cells[i];
        cell.site = i;
        cell.edge_constraint = poly.ids;
        cell.corner_vertex.assign(poly.pts.size(), -1);
        for (const XY& c : poly.pts) cell.corners.push_back(from_klein(c));
        cell.touches_clip = poly.pts.empty();
        for (int id : poly.ids)
            if (id == -1) cell.touches_clip = true;
    }

    // Catalogue corners away from the clip circle and merge coincident ones.
    struct Corner {
        int cell, k;
        XY poin;
    };
    std::vector<Corner> corners;
    const double catalog_limit = clip_radius - kCatalogMargin;
    for (int i = 0; i < n; ++i) {
        const VoronoiCell& cell = out.cells[i];
        for (size_t k = 0; k < cell.corners.size(); ++k)
            if (dist(origin, cell.corners[k]) <= catalog_limit)
                corners.push_back({i, static_cast<int>(k), to_poincare(cell.corners[k])});
    }
    std::vector<int> uf(corners.size());
    std::iota(uf.begin(), uf.end(), 0);
    {
        std::map<GridKey, std::vector<int>> grid;
        const double h = 1e-6;
        for (size_t c = 0; c < corners.size(); ++c) {
            GridKey key{static_cast<long long>(std::floor(corners[c].poin.x / h)),
                        static_cast<long long>(std::floor(corners[c].poin.y / h))};
            for (long long dx = -1; dx <= 1; ++dx)
                for (long long dy = -1; dy <= 1; ++dy) {
                    auto it = grid.find({key.x + dx, key.y + dy});
                    if (it == grid.end()) continue;
                    for (int o : it->second)
                        if (poincare_near_dist(corners[c].poin, corners[o].poin) <= kVertexMergeTol)
                            uf[uf_find(uf, static_cast<int>(c))] = uf_find(uf, o);
                }
            grid[key].push_back(static_cast<int>(c));
        }
    }

    std::unordered_map<int, int> class_to_vertex;
    for (size_t c = 0; c < corners.size(); ++c) {
        int cls = uf_find(uf, static_cast<int>(c));
        auto [it, fresh] = class_to_vertex.try_emplace(cls, -1);
        const Corner& co = corners[c];
        const VoronoiCell& cell = out.cells[co.cell];
        if (fresh) {
            it->second = static_cast<int>(out.vertices.size());
            out.vertices.push_back({cell.corners[co.k], 0.0, {}, false});
        }
        VoronoiVertex& v = out.vertices[it->second];
        out.cells[co.cell].corner_vertex[co.k] = it->second;
        auto add_site = [&v](int s) {
            if (std::find(v.sites.begin(), v.sites.end(), s) == v.sites.end())
                v.sites.push_back(s);
        };
        add_site(co.cell);
        size_t m = cell.corners.size();
        int prev = cell.edge_constraint[(co.k + m - 1) % m];
        int own = cell.edge_constraint[co.k];
        if (prev >= 0) add_site(prev);
        if (own >= 0) add_site(own);
    }
    for (VoronoiVertex& v : out.vertices) {
        std::sort(v.sites.begin(), v.sites.end());
        v.radius = dist(v.pos, ws[v.sites[0]]);
    }

    // Peripheral flags: a cell is trustworthy only when its whole neighbor
    // shell (within twice the largest cell circumradius of the site) lies
    // inside the data extent, so the margin is keyed to the site distance
    // from the basepoint, not to cell corners.
    double site_extent = 0.0;
    for (int i = 0; i < n; ++i)
        if (!(dist(origin, ws[i]) > clip_radius))
            site_extent = std::max(site_extent, dist(origin, ws[i]));
    const double boundary = std::min(site_extent, clip_radius);
    double j_ref = 0.0;
    for (const VoronoiVertex& v : out.vertices)
        if (dist(origin, v.pos) <= boundary / 2.0) j_ref = std::max(j_ref, v.radius);
    const double margin = 2.0 * j_ref + 1.0;
    for (VoronoiCell& cell : out.cells) {
        if (cell.touches_clip) {
            cell.peripheral = true;
            continue;
        }
        if (dist(origin, ws[cell.site]) > boundary - margin) cell.peripheral = true;
    }
    for (VoronoiVertex& v : out.vertices) {
        v.interior = true;
        for (int s : v.sites)
            if (out.cells[s].peripheral) v.interior = false;
    }

    // Voronoi edges with both endpoints catalogued and distinct.
    for (int i = 0; i < n; ++i) {
        const VoronoiCell& cell = out.cells[i];
        size_t m = cell.corners.size();
        for (size_t k = 0; k < m; ++k) {
            int j = cell.edge_constraint[k];
            if (j <= i) continue;
            int va = cell.corner_vertex[k];
            int vb = cell.corner_vertex[(k + 1) % m];
            if (va < 0 || vb < 0 || va == vb) continue;
            // Drift-split copies of one cocircular circumcenter reached through
            // different cells sit far below any genuine edge length.
            if (poincare_near_dist(to_poincare(out.vertices[va].pos),
                                   to_poincare(out.vertices[vb].pos)) <= kDegenerateEdgeTol)
                continue;
            out.edges.push_back({i, j, va, vb});
        }
    }

    // Back to the caller's frame.
    for (VoronoiCell& cell : out.cells)
        for (HPoint& c : cell.corners) c = apply(to_base, c);
    for (VoronoiVertex& v : out.vertices) v.pos = apply(to_base, v.pos);
    return out;
}

DelaunayComplex delaunay(const VoronoiComplex& v) {
    DelaunayComplex out;
    out.sites = v.sites;
    out.vertex_radius.resize(v.vertices.size());
    out.vertex_interior.resize(v.vertices.size());
    out.face_of_vertex.assign(v.vertices.size(), -1);
    for (size_t i = 0; i < v.vertices.size(); ++i) {
        out.vertex_radius[i] = v.vertices[i].radius;
        out.vertex_interior[i] = v.vertices[i].interior;
    }

    std::map<std::pair<int, int>, int> edge_index;
    for (size_t e = 0; e < v.edges.size(); ++e) {
        const VoronoiEdge& ve = v.edges[e];
        DelaunayEdge de;
        de.site_a = ve.site_a;
        de.site_b = ve.site_b;
        de.voronoi_edge = static_cast<int>(e);
        de.length = dist(v.sites[ve.site_a], v.sites[ve.site_b]);
        // Position of the dual's midpoint along the Voronoi edge geodesic.
        HPoint mid = geodesic_point(v.sites[ve.site_a], v.sites[ve.site_b], de.length / 2.0);
        const HPoint& pa = v.vertices[ve.va].pos;
        const HPoint& pb = v.vertices[ve.vb].pos;
        double len = dist(pa, pb);
        double sigma = std::asinh(minkowski(mid, tangent_toward(pa, pb)));
        de.centered = sigma > kCenteredDeadBand && sigma < len - kCenteredDeadBand;
        edge_index[{ve.site_a, ve.site_b}] = static_cast<int>(out.edges.size());
        out.edges.push_back(de);
    }

    for (size_t vi = 0; vi < v.vertices.size(); ++vi) {
        const VoronoiVertex& vx = v.vertices[vi];
        if (!vx.interior) continue;
        DelaunayFace face;
        face.vertex = static_cast<int>(vi);
        face.sites = vx.sites;
        // Cyclic order around the vertex.
        const HIsometry here = inverse(carry_origin_to(vx.pos));
        std::vector<double> ang(face.sites.size());
        for (size_t k = 0; k < face.sites.size(); ++k) {
            HPoint q = apply(here, v.sites[face.sites[k]]);
            ang[k] = std::atan2(q.x2, q.x1);
        }
        std::vector<int> perm(face.sites.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::sort(perm.begin(), perm.end(), [&](int a, int b) { return ang[a] < ang[b]; });
        std::vector<int> ordered;
        for (int p : perm) ordered.push_back(face.sites[p]);
        face.sites = ordered;
        for (size_t k = 0; k < face.sites.size(); ++k) {
            int a = face.sites[k];
            int b = face.sites[(k + 1) % face.sites.size()];
            face.sides.push_back(dist(v.sites[a], v.sites[b]));
            auto it = edge_index.find({std::min(a, b), std::max(a, b)});
            if (it == edge_index.end())
                throw std::runtime_error("delaunay: face side without a dual edge");
            face.edge_ids.push_back(it->second);
        }
        face.tuple = classify(face.sides);
        out.face_of_vertex[vi] = static_cast<int>(out.faces.size());
        out.faces.push_back(std::move(face));
    }
    return out;
}

CenteredDual centered_dual(const VoronoiComplex& v, const DelaunayComplex& d) {
    CenteredDual out;
    std::vector<int> nc_edges;
    for (size_t e = 0; e < d.edges.size(); ++e)
        if (!d.edges[e].centered) nc_edges.push_back(static_cast<int>(e));

    const int nv = static_cast<int>(v.vertices.size());
    std::vector<int> uf(nv);
    std::iota(uf.begin(), uf.end(), 0);
    for (int e : nc_edges) {
        const VoronoiEdge& ve = v.edges[d.edges[e].voronoi_edge];
        uf[uf_find(uf, ve.va)] = uf_find(uf, ve.vb);
    }

    std::map<int, std::vector<int>> comp_edges;  // root class -> nc edge list
    for (int e : nc_edges) {
        const VoronoiEdge& ve = v.edges[d.edges[e].voronoi_edge];
        comp_edges[uf_find(uf, ve.va)].push_back(e);
    }

    std::vector<int> cell_of_vertex(nv, -1);
    for (auto& [cls, edges] : comp_edges) {
        // A component straddling the trusted region signals too small a clip
        // radius; one entirely in the peripheral zone is a truncation artifact.
        int n_interior = 0, n_total = 0;
        for (int e : edges) {
            const VoronoiEdge& ve = v.edges[d.edges[e].voronoi_edge];
            for (int w : {ve.va, ve.vb}) {
                n_total += 1;
                n_interior += v.vertices[w].interior ? 1 : 0;
            }
        }
        if (n_interior == 0) continue;
        if (n_interior != n_total)
            throw std::runtime_error(
                "centered_dual: non-centered component touches the peripheral zone");
        NonCenteredTree tree;
        std::vector<int> members;
        for (int e : edges) {
            const VoronoiEdge& ve = v.edges[d.edges[e].voronoi_edge];
            for (int w : {ve.va, ve.vb})
                if (std::find(members.begin(), members.end(), w) == members.end())
                    members.push_back(w);
        }
        if (edges.size() != members.size() - 1)
            throw std::runtime_error("centered_dual: non-centered subgraph has a cycle");

        std::vector<int> out_deg(members.size(), 0);
        auto local = [&members](int w) {
            return static_cast<int>(std::find(members.begin(), members.end(), w) -
                                    members.begin());
        };
        for (int e : edges) {
            const VoronoiEdge& ve = v.edges[d.edges[e].voronoi_edge];
            double ja = v.vertices[ve.va].radius, jb = v.vertices[ve.vb].radius;
            if (ja == jb)
                throw std::runtime_error("centered_dual: cannot orient a non-centered edge");
            int ini = ja < jb ? ve.va : ve.vb;
            int ter = ja < jb ? ve.vb : ve.va;
            tree.edges.push_back({ini, ter});
            tree.edge_ids.push_back(e);
            out_deg[local(ini)] += 1;
        }
        int root_local = -1;
        for (size_t k = 0; k < members.size(); ++k) {
            if (out_deg[k] > 1)
                throw std::runtime_error("centered_dual: vertex starts two non-centered edges");
            if (out_deg[k] == 0) {
                if (root_local >= 0) throw std::runtime_error("centered_dual: two roots");
                root_local = static_cast<int>(k);
            }
        }
        tree.vertices = members;
        tree.root = members[root_local];
        for (size_t k = 0; k < members.size(); ++k)
            if (static_cast<int>(k) != root_local &&
                !(v.vertices[tree.root].radius > v.vertices[members[k]].radius))
                throw std::runtime_error("centered_dual: root radius is not strictly maximal");

        tree.rooted.nv = static_cast<int>(members.size());
        tree.rooted.root = root_local;
        for (auto [ini, ter] : tree.edges) tree.rooted.edges.push_back({local(ter), local(ini)});
        for (int e : tree.edge_ids) tree.dE.push_back(d.edges[e].length);
        for (int w : members) {
            int f = d.face_of_vertex[w];
            if (f < 0) throw std::runtime_error("centered_dual: member vertex without a face");
            const DelaunayFace& face = d.faces[f];
            for (size_t k = 0; k < face.edge_ids.size(); ++k) {
                if (std::find(tree.edge_ids.begin(), tree.edge_ids.end(), face.edge_ids[k]) !=
                    tree.edge_ids.end())
                    continue;
                tree.rooted.frontier_vertex.push_back(local(w));
                tree.dF.push_back(face.sides[k]);
            }
        }
        tree.rooted.validate();

        DualCell cell;
        cell.vertices = members;
        for (int w : members) cell.faces.push_back(d.face_of_vertex[w]);
        cell.tree = static_cast<int>(out.forest.size());
        for (int w : members) cell_of_vertex[w] = static_cast<int>(out.cells.size());
        out.forest.push_back(std::move(tree));
        out.cells.push_back(std::move(cell));
    }

    for (int w = 0; w < nv; ++w) {
        if (cell_of_vertex[w] >= 0 || d.face_of_vertex[w] < 0) continue;
        DualCell cell;
        cell.vertices = {w};
        cell.faces = {d.face_of_vertex[w]};
        out.cells.push_back(std::move(cell));
    }
    return out;
}

double cell_defect(const DelaunayComplex& d, const DualCell& cell, double R) {
    double total = 0.0;
    for (int f : cell.faces) total += defect(d.faces[f].tuple, R);
    return total;
}

double max_interior_radius(const VoronoiComplex& v) {
    double best = 0.0;
    for (const VoronoiVertex& vx : v.vertices)
        if (vx.interior) best = std::max(best, vx.radius);
    return best;
}

}  // namespace hyp
