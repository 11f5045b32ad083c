#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyp/constants.hpp"
#include "hyp/cyclic.hpp"
#include "hyp/hyperboloid.hpp"
#include "hyp/json_io.hpp"
#include "hyp/surface.hpp"
#include "hyp/svg.hpp"
#include "hyp/tessellation.hpp"
#include "hyp/tree_bound.hpp"

namespace {

using namespace hyp;
using nlohmann::json;

std::string fmt(double x) {
    std::ostringstream s;
    s << std::setprecision(12) << x;
    return s.str();
}

std::string digest_of(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream s;
    s << std::hex << std::setw(16) << std::setfill('0') << h;
    return s.str();
}

struct RunReport {
    std::string command;
    std::string digest;
    std::vector<std::pair<std::string, double>> values;
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;
    struct Check {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Check> checks;
    double wall_ms = 0.0;

    void value(const std::string& name, double x) { values.push_back({name, x}); }
    bool check(const std::string& name, bool ok, const std::string& detail = "") {
        checks.push_back({name, ok, detail});
        return ok;
    }
    bool pass() const {
        for (const Check& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void print_text(std::ostream& out) const {
        out << "command: " << command << "\n";
        if (!digest.empty()) out << "input digest: " << digest << "\n";
        for (const auto& [name, x] : values) out << "  " << name << " = " << fmt(x) << "\n";
        if (!headers.empty()) {
            std::vector<size_t> w(headers.size());
            for (size_t c = 0; c < headers.size(); ++c) {
                w[c] = headers[c].size();
                for (const auto& r : rows) w[c] = std::max(w[c], r[c].size());
            }
            auto line = [&](const std::vector<std::string>& r) {
                out << "  ";
                for (size_t c = 0; c < r.size(); ++c)
                    out << std::setw(static_cast<int>(w[c]) + 2) << r[c];
                out << "\n";
            };
            line(headers);
            for (const auto& r : rows) line(r);
        }
        for (const Check& c : checks) {
            out << (c.pass ? "PASS " : "FAIL ") << c.name;
            if (!c.detail.empty()) out << "  (" << c.detail << ")";
            out << "\n";
        }
        out << "result: " << (pass() ? "PASS" : "FAIL") << "  (" << checks.size() << " checks, "
            << std::fixed << std::setprecision(1) << wall_ms << " ms)\n";
    }
    void print_json(std::ostream& out) const {
        json j;
        j["command"] = command;
        if (!digest.empty()) j["input_digest"] = digest;
        json vals = json::object();
        for (const auto& [name, x] : values) vals[name] = x;
        j["values"] = std::move(vals);
        if (!headers.empty()) j["table"] = {{"headers", headers}, {"rows", rows}};
        json cs = json::array();
        for (const Check& c : checks)
            cs.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        j["checks"] = std::move(cs);
        j["pass"] = pass();
        j["wall_ms"] = wall_ms;
        out << j.dump(2) << "\n";
    }
    void print_csv(std::ostream& out) const {
        if (!headers.empty()) {
            auto line = [&](const std::vector<std::string>& r) {
                for (size_t c = 0; c < r.size(); ++c) out << (c ? "," : "") << r[c];
                out << "\n";
            };
            line(headers);
            for (const auto& r : rows) line(r);
        } else {
            for (const auto& [name, x] : values) out << name << "," << fmt(x) << "\n";
        }
        for (const Check& c : checks) out << "check," << c.name << "," << (c.pass ? 1 : 0) << "\n";
    }
    void print(bool as_json, bool as_csv, std::ostream& out) const {
        if (as_json)
            print_json(out);
        else if (as_csv)
            print_csv(out);
        else
            print_text(out);
    }
};

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

void cmd_constants(RunReport& rep, double tol_id) {
    const Constants& C = constants();
    rep.value("cosh_d_beta", C.cosh_d_beta);
    rep.value("d_beta", C.d_beta);
    rep.value("cosh_r_beta", C.cosh_r_beta);
    rep.value("r_beta", C.r_beta);
    rep.value("cosh_r_alpha", C.cosh_r_alpha);
    rep.value("r_alpha", C.r_alpha);
    rep.value("cosh_d_alpha", C.cosh_d_alpha);
    rep.value("d_alpha", C.d_alpha);
    rep.value("b_beta", C.b_beta);
    rep.value("d1", C.d1);
    rep.value("r1", C.r1);
    rep.value("d2", C.d2);
    rep.value("r2", C.r2);

    double x = C.cosh_d_beta;
    double res = ((x - 14.0) * x - 15.0) * x - 4.0;
    rep.check("cosh d_beta solves x^3 - 14x^2 - 15x - 4", std::fabs(res) < 1e-9,
              "residual " + fmt(res));
    rep.check("cosh d_beta in (15.0166, 15.0167)", x > 15.0166 && x < 15.0167);
    rep.check("cosh r_beta in (2.8298, 2.8299)",
              C.cosh_r_beta > 2.8298 && C.cosh_r_beta < 2.8299);
    rep.check("cosh r_alpha = 1/(2 sin(pi/18))",
              close(C.cosh_r_alpha, 1.0 / (2.0 * std::sin(M_PI / 18.0)), 1e-12));
    rep.check("cosh r_alpha = 2.8794 to four decimals", close(C.cosh_r_alpha, 2.8794, 1e-4));
    rep.check("cosh d_alpha = 15.5817 to four decimals", close(C.cosh_d_alpha, 15.5817, 1e-4));

    double quad0 = regular_defect(4, C.d_beta, 0.0);
    double half = defect({C.b_beta, C.d_beta, C.d_beta}, 0.0);
    rep.check("b_beta splits the quadrilateral defect", std::fabs(quad0 - 2.0 * half) < 1e-10,
              "residual " + fmt(quad0 - 2.0 * half));

    double id1 = 6.0 * regular_defect(3, C.d_alpha, 0.0) - 4.0 * M_PI;
    rep.check("six triangle defects close up at d_alpha", std::fabs(id1) < tol_id,
              "residual " + fmt(id1));
    double id2 = 4.0 * regular_defect(3, C.d_beta, 0.0) + quad0 - 4.0 * M_PI;
    rep.check("four triangles and a quadrilateral close up at d_beta", std::fabs(id2) < tol_id,
              "residual " + fmt(id2));
    rep.check("d_1(r_beta) = b_beta", close(d1_of_r(C.r_beta), C.b_beta, tol_id),
              fmt(d1_of_r(C.r_beta)));
    rep.check("d_1(r_alpha) = d_alpha", close(d1_of_r(C.r_alpha), C.d_alpha, tol_id),
              fmt(d1_of_r(C.r_alpha)));
}

void cmd_table1(RunReport& rep, double tol) {
    const Constants& C = constants();
    const double paper[4] = {0.12586, 0.56593, 1.22041, 2.00496};
    rep.headers = {"n", "defect"};
    for (int n = 3; n <= 6; ++n) {
        double v = regular_defect(n, C.d1, C.r1);
        rep.rows.push_back({std::to_string(n), fmt(v)});
        double p = paper[n - 3];
        rep.check("defect of the " + std::to_string(n) + "-gon in [" + fmt(p) + ", +tol]",
                  v >= p - 1e-12 && v <= p + tol, fmt(v));
    }
}

struct TableTree {
    std::string label;
    RootedTree tree;
    double paper[5];  // basic, case1, case2a, case2b, case3; NaN marks N/A
    double boxed;
};

std::vector<TableTree> table2_trees() {
    const double na = std::numeric_limits<double>::quiet_NaN();
    std::vector<TableTree> ts;
    ts.push_back({"edge, root valence 4", one_edge_tree(2, 3),
                  {1.00510, 1.17816, 1.57569, na, na}, 1.17816});
    ts.push_back({"edge, root valence 3", one_edge_tree(3, 2),
                  {1.63705, 1.77971, 1.71113, na, na}, 1.71113});
    ts.push_back({"path, root middle", chain_tree({2, 1, 2}, 1),
                  {0.80915, 1.15527, 1.28432, 1.38738, 1.22041}, 1.15527});
    ts.push_back({"path, root end", chain_tree({2, 1, 2}, 2),
                  {1.24735, 1.56044, 1.38585, 1.38738, 1.22041}, 1.24735});
    return ts;
}

void cmd_table2(RunReport& rep, double tol) {
    const Constants& C = constants();
    rep.headers = {"tree", "basic", "case 1", "case 2A", "case 2B", "case 3", "best"};
    for (const TableTree& tt : table2_trees()) {
        FrontierLengths bF(tt.tree.frontier_vertex.size(), C.d1);
        BoundReport b = case_bounds(tt.tree, bF, C.r1);
        const std::optional<double> cols[5] = {b.basic, b.case1, b.case2a, b.case2b, b.case3};
        const char* names[5] = {"basic", "case 1", "case 2A", "case 2B", "case 3"};
        std::vector<std::string> row = {tt.label};
        for (int c = 0; c < 5; ++c) {
            row.push_back(cols[c] ? fmt(*cols[c]) : "N/A");
            if (std::isnan(tt.paper[c]))
                rep.check(tt.label + ": " + names[c] + " not applicable", !cols[c].has_value());
            else
                rep.check(tt.label + ": " + names[c] + " = " + fmt(tt.paper[c]),
                          cols[c] && close(*cols[c], tt.paper[c], tol),
                          cols[c] ? fmt(*cols[c]) : "N/A");
        }
        row.push_back(fmt(b.best));
        rep.rows.push_back(row);
        rep.check(tt.label + ": best = " + fmt(tt.boxed), close(b.best, tt.boxed, tol),
                  fmt(b.best));
    }
}

// Angle of the face at the given site, from its cyclic neighbor corners.
double face_angle_at(const std::vector<HPoint>& sites, const DelaunayFace& f, int site) {
    auto it = std::find(f.sites.begin(), f.sites.end(), site);
    size_t k = it - f.sites.begin(), n = f.sites.size();
    return angle_at(sites[site], sites[f.sites[(k + n - 1) % n]], sites[f.sites[(k + 1) % n]]);
}

void geometric_gates(RunReport& rep) {
    const Constants& C = constants();
    {
        auto sites = lift_sites(build_surface_alpha(), 9.5);
        VoronoiComplex v = voronoi(sites, 10.5);
        DelaunayComplex d = delaunay(v);
        int base = 0, tri = 0, cen = 0;
        double serr = 0.0, asum = 0.0;
        for (const DelaunayFace& f : d.faces) {
            if (std::find(f.sites.begin(), f.sites.end(), 0) == f.sites.end()) continue;
            ++base;
            tri += f.sites.size() == 3;
            cen += f.tuple.cls == Centering::Centered;
            for (double s : f.sides) serr = std::max(serr, std::fabs(s - C.d_alpha));
            asum += face_angle_at(v.sites, f, 0);
        }
        rep.check("first surface: 18 centered triangle corners at the base point",
                  base == 18 && tri == 18 && cen == 18,
                  "faces " + std::to_string(base) + ", centered " + std::to_string(cen));
        rep.check("first surface: all base edges have length d_alpha", serr < 1e-6,
                  "max deviation " + fmt(serr));
        rep.check("first surface: base angles close up", std::fabs(asum - 2.0 * M_PI) < 1e-8,
                  "angle sum " + fmt(asum));
    }
    {
        auto sites = lift_sites(build_surface_beta(), 9.5);
        VoronoiComplex v = voronoi(sites, 10.5);
        DelaunayComplex d = delaunay(v);
        int base = 0, tri = 0, quad = 0, cen = 0;
        double serr = 0.0, asum = 0.0;
        for (const DelaunayFace& f : d.faces) {
            if (std::find(f.sites.begin(), f.sites.end(), 0) == f.sites.end()) continue;
            ++base;
            tri += f.sites.size() == 3;
            quad += f.sites.size() == 4;
            cen += f.tuple.cls == Centering::Centered;
            for (double s : f.sides) serr = std::max(serr, std::fabs(s - C.d_beta));
            asum += face_angle_at(v.sites, f, 0);
        }
        rep.check("second surface: 12 triangle and 4 quadrilateral corners at the base point",
                  base == 16 && tri == 12 && quad == 4 && cen == 16,
                  "faces " + std::to_string(base) + ", quads " + std::to_string(quad));
        rep.check("second surface: all base edges have length d_beta", serr < 1e-6,
                  "max deviation " + fmt(serr));
        rep.check("second surface: base angles close up", std::fabs(asum - 2.0 * M_PI) < 1e-8,
                  "angle sum " + fmt(asum));
    }
    {
        const double t = -1e-3;
        const double dt = C.d_beta + t;
        const double bt = std::acosh(2.0 * std::cosh(dt) - 1.0);
        auto sites = lift_sites(build_surface_t(t), 9.5);
        VoronoiComplex v = voronoi(sites, 10.5);
        DelaunayComplex d = delaunay(v);
        int base = 0, tri = 0;
        for (const DelaunayFace& f : d.faces) {
            if (std::find(f.sites.begin(), f.sites.end(), 0) == f.sites.end()) continue;
            ++base;
            tri += f.sites.size() == 3;
        }
        rep.check("perturbed surface: 18 triangle corners at the base point",
                  base == 18 && tri == 18, "faces " + std::to_string(base));
        int nc = 0;
        double class_err = 0.0;
        for (const DelaunayEdge& e : d.edges)
            if (!e.centered) {
                ++nc;
                class_err = std::max(class_err, std::fabs(e.length - bt));
            }
        rep.check("perturbed surface: one non-centered edge class, length b_t",
                  nc > 0 && class_err < 1e-6,
                  std::to_string(nc) + " edges, max deviation " + fmt(class_err));

        CenteredDual cd = centered_dual(v, d);
        int found = 0;
        bool shape_ok = true;
        for (const DualCell& c : cd.cells) {
            if (c.tree < 0) continue;
            bool at_base = false;
            for (int fi : c.faces)
                for (int s : d.faces[fi].sites) at_base |= s == 0;
            if (!at_base) continue;
            ++found;
            const NonCenteredTree& tr = cd.forest[c.tree];
            std::vector<int> cell_sites;
            for (int fi : c.faces)
                for (int s : d.faces[fi].sites)
                    if (std::find(cell_sites.begin(), cell_sites.end(), s) == cell_sites.end())
                        cell_sites.push_back(s);
            shape_ok = shape_ok && c.faces.size() == 2 && tr.edges.size() == 1 &&
                       cell_sites.size() == 4 && tr.dF.size() == 4 &&
                       std::fabs(tr.dE[0] - bt) < 1e-6;
        }
        rep.check("perturbed surface: dual cells at the base point are one-edge quadrilaterals",
                  found == 4 && shape_ok, std::to_string(found) + " cells");
    }
}

void cmd_verify_main(RunReport& rep, double tol, double tol_id) {
    const Constants& C = constants();

    double disk = 2.0 * M_PI * (C.cosh_r_beta - 1.0);
    double disk1 = 2.0 * M_PI * (std::cosh(C.r1) - 1.0);
    double complement = 4.0 * M_PI - disk1;
    rep.value("disk area at r1", disk1);
    rep.value("complementary area at r1", complement);
    rep.check("disk area exceeds 2pi * 1.8298", disk1 >= 2.0 * M_PI * 1.8298 - 1e-9);
    rep.check("complementary area under 1.07",
              complement <= 2.0 * M_PI * 0.1702 + 1e-9 && complement < 1.07,
              fmt(complement));

    double p5 = regular_defect(5, C.d1, C.r1);
    double p6 = regular_defect(6, C.d1, C.r1);
    rep.value("five-gon defect at r1", p5);
    rep.check("centered five-edge cells are excluded", p5 > 1.22 && p6 > p5,
              "P5 " + fmt(p5) + ", P6 " + fmt(p6));

    double worst_best = std::numeric_limits<double>::infinity();
    for (const TableTree& tt : table2_trees()) {
        FrontierLengths bF(tt.tree.frontier_vertex.size(), C.d1);
        worst_best = std::min(worst_best, case_bounds(tt.tree, bF, C.r1).best);
    }
    rep.value("worst five-edge tree bound", worst_best);
    rep.check("non-centered five-edge cells are excluded", worst_best > 1.15527 - 1e-12,
              fmt(worst_best));

    RootedTree t44 = one_edge_tree(3, 3);
    double sub44 = basic_bound(t44, FrontierLengths(t44.frontier_vertex.size(), C.d1), C.r1);
    rep.value("edge below a 4-valent vertex", sub44);
    rep.check("subtree bound 1.8623", close(sub44, 1.8623, tol) && sub44 > 1.07, fmt(sub44));

    RootedTree t433 = chain_tree({3, 1, 2}, 2);
    double sub433 = basic_bound(t433, FrontierLengths(t433.frontier_vertex.size(), C.d1), C.r1);
    rep.value("path toward a 4-valent vertex", sub433);
    rep.check("subtree bound 2.46104", close(sub433, 2.46104, tol) && sub433 > 1.07,
              fmt(sub433));

    RootedTree tq = one_edge_tree(2, 2);
    BoundReport quad = case_bounds(tq, FrontierLengths(4, C.d1), C.r2);
    rep.value("quadrilateral root-pinned bound at r2", quad.case2a ? *quad.case2a : 0.0);
    rep.check("quadrilateral improvement 0.74844",
              quad.case2a && close(*quad.case2a, 0.74844, tol),
              quad.case2a ? fmt(*quad.case2a) : "N/A");

    double hi = regular_defect(4, C.d2, C.r1);
    double lo = regular_defect(4, C.d1, C.r2);
    double mid = regular_defect(4, C.d_beta, C.r_beta);
    rep.value("quadrilateral defect gate, upper", hi);
    rep.value("quadrilateral defect gate, lower", lo);
    rep.value("quadrilateral defect at d_beta", mid);
    rep.check("upper gate under 0.56596", hi < 0.56596 && close(hi, 0.56596, tol), fmt(hi));
    rep.check("lower gate over 0.56573", lo > 0.56573 && close(lo, 0.56573, tol), fmt(lo));
    rep.check("gates bracket the d_beta quadrilateral", lo < mid && mid < hi);
    rep.check("transfer ordering r2 > r_beta > r1, d1 < d_beta < d2",
              C.r2 > C.r_beta && C.r_beta > C.r1 && C.d1 < C.d_beta && C.d_beta < C.d2);
    rep.check("two quadrilaterals overflow the complementary area", 2.0 * 0.56573 > 1.07,
              fmt(2.0 * 0.56573));
    rep.check("quadrilateral improvement beats the upper gate",
              quad.case2a && *quad.case2a > hi);

    double lhs = mid + 4.0 * regular_defect(3, C.d_beta, C.r_beta);
    double rhs = 4.0 * M_PI - disk;
    rep.value("tessellation defect total at d_beta", lhs);
    rep.check("defect total matches the area identity", std::fabs(lhs - rhs) < tol_id,
              "residual " + fmt(lhs - rhs));

    geometric_gates(rep);
}

void cmd_verify_inj_to_cov(RunReport& rep, int grid, int samples, std::uint64_t seed) {
    const Constants& C = constants();
    if (grid < 2) throw std::runtime_error("verify-inj-to-cov: grid must be at least 2");
    if (samples < 1) throw std::runtime_error("verify-inj-to-cov: samples must be at least 1");
    std::vector<double> rs(grid);
    for (int i = 0; i < grid; ++i)
        rs[i] = C.r_beta + (C.r_alpha - C.r_beta) * i / (grid - 1.0);
    InjCovReport r = verify_theorem2(rs, samples, seed);
    rep.headers = {"r", "max ratio", "extremal ratio", "samples"};
    for (const InjCovRow& row : r.rows)
        rep.rows.push_back(
            {fmt(row.r), fmt(row.max_ratio), fmt(row.extremal_ratio), fmt(row.samples)});
    rep.value("worst ratio", r.worst_ratio);
    rep.check("all sampled ratios at most 1", r.ok && r.worst_ratio <= 1.0 + 1e-9,
              fmt(r.worst_ratio));
    rep.check("extremal configuration is sharp at r_beta",
              std::fabs(r.rows.front().extremal_ratio - 1.0) < 1e-9,
              fmt(r.rows.front().extremal_ratio));
    rep.check("extremal ratio stays below 1 on the rest of the range", [&] {
        for (size_t i = 1; i < r.rows.size(); ++i)
            if (r.rows[i].extremal_ratio > 1.0 + 1e-9) return false;
        return true;
    }());
}

void cmd_tessellate(RunReport& rep, const std::string& points_file, double clip,
                    const std::string& svg_path) {
    std::string text = load_file(points_file);
    rep.digest = digest_of(text);
    std::vector<HPoint> sites = read_points(text);
    if (sites.size() < 3) throw std::runtime_error("tessellate: need at least 3 sites");

    double extent = 0.0;
    HPoint origin{};
    for (const HPoint& s : sites) extent = std::max(extent, dist(origin, s));
    if (clip <= 0.0) clip = extent + 1.0;

    VoronoiComplex v = voronoi(sites, clip);
    DelaunayComplex d = delaunay(v);
    rep.value("sites", static_cast<double>(sites.size()));
    rep.value("voronoi vertices", static_cast<double>(v.vertices.size()));
    rep.value("delaunay edges", static_cast<double>(d.edges.size()));
    rep.value("delaunay faces", static_cast<double>(d.faces.size()));

    // Nearest-site certificates for every catalogued vertex.
    double worst = 0.0;
    bool empty_ok = true;
    for (const VoronoiVertex& w : v.vertices) {
        if (!w.interior) continue;
        for (int s : w.sites) worst = std::max(worst, std::fabs(dist(w.pos, sites[s]) - w.radius));
        for (size_t s = 0; s < sites.size(); ++s)
            empty_ok = empty_ok && dist(w.pos, sites[s]) > w.radius - 1e-7;
    }
    rep.check("vertices are equidistant from their sites", worst < kEquidistTol,
              "max deviation " + fmt(worst));
    rep.check("no site intrudes into a circumdisk", empty_ok);

    int interior_vertices = 0;
    for (const VoronoiVertex& w : v.vertices) interior_vertices += w.interior;
    rep.check("each interior vertex carries one face",
              static_cast<int>(d.faces.size()) == interior_vertices,
              std::to_string(d.faces.size()) + " faces, " + std::to_string(interior_vertices) +
                  " interior vertices");

    double min_pair = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < sites.size(); ++i)
        for (size_t j = i + 1; j < sites.size(); ++j)
            min_pair = std::min(min_pair, dist(sites[i], sites[j]));
    double b0_len = B0_of(min_pair / 2.0);
    bool short_centered = true;
    for (const DelaunayEdge& e : d.edges)
        if (e.length < b0_len - 1e-9) short_centered = short_centered && e.centered;
    rep.check("edges shorter than the centered-edge bound are centered", short_centered,
              "bound " + fmt(b0_len));

    if (!svg_path.empty()) save_file(svg_path, render_svg(v, d));
    std::cout << write_complex(v, d);
}

void cmd_surface(RunReport& rep, const std::string& model, double t, double ball,
                 const std::string& sites_path) {
    OctagonSurface s;
    if (model == "f_alpha")
        s = build_surface_alpha();
    else if (model == "f_beta")
        s = build_surface_beta();
    else if (model == "f_t")
        s = build_surface_t(t);
    else
        throw std::runtime_error("surface: model must be f_alpha, f_beta, or f_t");

    rep.value("area", s.area);
    rep.value("vertex angle sum", s.vertex_angle_sum);
    rep.check("area is 4pi", std::fabs(s.area - 4.0 * M_PI) < 1e-8, fmt(s.area));
    rep.check("corner angles close up", std::fabs(s.vertex_angle_sum - 2.0 * M_PI) < 1e-9,
              fmt(s.vertex_angle_sum));
    bool paired = true;
    for (int i = 0; i < 18; ++i)
        paired = paired && std::fabs(s.lengths[i] - s.lengths[s.pairing.iota[i]]) < 1e-9;
    rep.check("paired sides have equal length", paired);
    bool form_ok = true;
    for (const HIsometry& g : s.generators) form_ok = form_ok && form_preserving(g);
    rep.check("holonomy preserves the form", form_ok);

    if (!sites_path.empty()) {
        std::vector<HPoint> sites = lift_sites(s, ball);
        rep.value("lifted sites", static_cast<double>(sites.size()));
        double inj = injectivity_radius(sites);
        rep.value("injectivity radius", inj);
        save_file(sites_path, write_points(sites));
    }
    std::cout << write_surface(s);
}

void cmd_tree_bound(RunReport& rep, const std::string& tree_file, double radius) {
    std::string text = load_file(tree_file);
    rep.digest = digest_of(text);
    auto [tree, bF] = read_tree(text);
    BoundReport b;
    if (tree.edges.size() <= 2) {
        b = case_bounds(tree, bF, radius);
    } else {
        b.basic = basic_bound(tree, bF, radius);
        b.best = b.basic;
        b.b_edge = frontier_b(tree, bF);
        b.h_edge = frontier_h(tree, bF);
    }
    rep.value("basic", b.basic);
    rep.value("best", b.best);
    rep.check("certified bound is positive", b.best > 0.0);
    std::cout << write_bound_report(b);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperbolic Voronoi tessellations, centered duals, and defect bounds"};
    app.require_subcommand(1);

    bool as_json = false, as_csv = false;
    double tol = 2e-5, tol_id = 1e-9;
    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--json", as_json, "report as JSON");
        sub->add_flag("--csv", as_csv, "report as CSV");
        return sub;
    };

    CLI::App* c_constants = add_common(app.add_subcommand(
        "constants", "named lengths, defining brackets, and closure identities"));
    c_constants->add_option("--tol", tol_id, "identity tolerance");

    CLI::App* c_table1 =
        add_common(app.add_subcommand("table1", "defects of the symmetric centered n-gons"));
    c_table1->add_option("--tol", tol, "acceptance window");

    CLI::App* c_table2 = add_common(
        app.add_subcommand("table2", "certified lower bounds for the five-edge trees"));
    c_table2->add_option("--tol", tol, "acceptance window");

    CLI::App* c_vm = add_common(app.add_subcommand(
        "verify-main", "numerical gates of the quadrilateral dichotomy, with lifted surfaces"));
    c_vm->add_option("--tol", tol, "value acceptance window");

    int grid = 21, samples = 50;
    std::uint64_t seed = 0;
    CLI::App* c_cov = add_common(app.add_subcommand(
        "verify-inj-to-cov", "sampled covering-radius bound over the surface family"));
    c_cov->add_option("--grid", grid, "grid points across [r_beta, r_alpha]");
    c_cov->add_option("--samples", samples, "samples per grid point");
    c_cov->add_option("--seed", seed, "random seed")->required();

    std::string points_file, svg_path, sites_path, tree_file;
    double clip = 0.0;
    CLI::App* c_tess = add_common(
        app.add_subcommand("tessellate", "Voronoi and Delaunay complexes of a point set"));
    c_tess->add_option("points_file", points_file, "point set JSON")->required();
    c_tess->add_option("--clip", clip, "clip radius (default: data extent plus 1)");
    c_tess->add_option("--svg", svg_path, "write a Poincare disk picture");

    std::string model = "f_alpha";
    double t = -1e-3, ball = 9.5;
    CLI::App* c_surf =
        add_common(app.add_subcommand("surface", "genus-2 example surfaces and their lifts"));
    c_surf->add_option("--model", model, "f_alpha, f_beta, or f_t")->required();
    c_surf->add_option("--t", t, "perturbation parameter for f_t");
    c_surf->add_option("--ball", ball, "lift truncation radius");
    c_surf->add_option("--sites", sites_path, "write the lifted site set here");

    double radius = constants().r1;
    CLI::App* c_tree = add_common(
        app.add_subcommand("tree-bound", "certified defect bound for a rooted tree"));
    c_tree->add_option("tree_file", tree_file, "tree JSON")->required();
    c_tree->add_option("--radius", radius, "disk radius");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    RunReport rep;
    bool to_stderr = false;
    auto start = std::chrono::steady_clock::now();
    try {
        if (c_constants->parsed()) {
            rep.command = "constants";
            cmd_constants(rep, tol_id);
        } else if (c_table1->parsed()) {
            rep.command = "table1";
            cmd_table1(rep, tol);
        } else if (c_table2->parsed()) {
            rep.command = "table2";
            cmd_table2(rep, tol);
        } else if (c_vm->parsed()) {
            rep.command = "verify-main";
            cmd_verify_main(rep, tol, tol_id);
        } else if (c_cov->parsed()) {
            rep.command = "verify-inj-to-cov";
            cmd_verify_inj_to_cov(rep, grid, samples, seed);
        } else if (c_tess->parsed()) {
            rep.command = "tessellate";
            to_stderr = true;
            cmd_tessellate(rep, points_file, clip, svg_path);
        } else if (c_surf->parsed()) {
            rep.command = "surface";
            to_stderr = true;
            cmd_surface(rep, model, t, ball, sites_path);
        } else if (c_tree->parsed()) {
            rep.command = "tree-bound";
            to_stderr = true;
            cmd_tree_bound(rep, tree_file, radius);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    auto end = std::chrono::steady_clock::now();
    rep.wall_ms = std::chrono::duration<double, std::milli>(end - start).count();
    rep.print(as_json, as_csv, to_stderr ? std::cerr : std::cout);
    return rep.pass() ? 0 : 1;
}
