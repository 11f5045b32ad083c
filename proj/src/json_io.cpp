#include "hyp/json_io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hyp {

using nlohmann::json;

namespace {

json point_to_json(const HPoint& p) { return json::array({p.x0, p.x1, p.x2}); }

HPoint point_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw std::runtime_error("point must be [x0,x1,x2]");
    HPoint p = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
    if (!on_sheet(p)) throw std::runtime_error("point is not on the hyperboloid sheet");
    return normalize(p);
}

json matrix_to_json(const HIsometry& g) {
    json rows = json::array();
    for (int i = 0; i < 3; ++i) rows.push_back(json::array({g.m[i][0], g.m[i][1], g.m[i][2]}));
    return rows;
}

json optional_to_json(const std::optional<double>& v) {
    if (v) return *v;
    return "N/A";
}

const char* centering_name(Centering c) {
    switch (c) {
        case Centering::NotCyclic: return "not_cyclic";
        case Centering::NonCentered: return "non_centered";
        case Centering::BoundaryCentered: return "boundary_centered";
        case Centering::Centered: return "centered";
    }
    return "unknown";
}

}  // namespace

std::string write_points(const std::vector<HPoint>& pts) {
    json j;
    j["model"] = "hyperboloid";
    json arr = json::array();
    for (const HPoint& p : pts) arr.push_back(point_to_json(p));
    j["points"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::vector<HPoint> read_points(const std::string& text) {
    json j = json::parse(text);
    if (!j.contains("model") || j["model"] != "hyperboloid")
        throw std::runtime_error("point set must declare \"model\": \"hyperboloid\"");
    if (!j.contains("points") || !j["points"].is_array())
        throw std::runtime_error("point set must carry a \"points\" array");
    std::vector<HPoint> pts;
    for (const json& e : j["points"]) pts.push_back(point_from_json(e));
    return pts;
}

std::pair<RootedTree, FrontierLengths> read_tree(const std::string& text) {
    json j = json::parse(text);
    for (const char* key : {"vertices", "edges", "frontier"})
        if (!j.contains(key) || !j[key].is_array())
            throw std::runtime_error(std::string("tree must carry a \"") + key + "\" array");

    RootedTree t;
    std::map<long long, int> index_of;
    int roots = 0;
    for (const json& v : j["vertices"]) {
        if (!v.contains("id")) throw std::runtime_error("tree vertex must carry \"id\"");
        long long id = v["id"].get<long long>();
        if (index_of.count(id)) throw std::runtime_error("duplicate tree vertex id");
        index_of[id] = t.nv++;
        if (v.value("root", false)) {
            t.root = index_of[id];
            ++roots;
        }
    }
    if (roots != 1) throw std::runtime_error("tree must mark exactly one root vertex");

    auto lookup = [&](const json& id) {
        auto it = index_of.find(id.get<long long>());
        if (it == index_of.end()) throw std::runtime_error("tree edge names an unknown vertex");
        return it->second;
    };
    for (const json& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2) throw std::runtime_error("tree edge must be [u,v]");
        t.edges.push_back({lookup(e[0]), lookup(e[1])});
    }

    FrontierLengths bF;
    for (const json& f : j["frontier"]) {
        if (!f.contains("vertex") || !f.contains("bound"))
            throw std::runtime_error("frontier entry must carry \"vertex\" and \"bound\"");
        t.frontier_vertex.push_back(lookup(f["vertex"]));
        double b = f["bound"].get<double>();
        if (!(b > 0.0)) throw std::runtime_error("frontier bound must be positive");
        bF.push_back(b);
    }

    t.validate();
    return {t, bF};
}

std::string write_tree(const RootedTree& t, const FrontierLengths& bF) {
    json j;
    json verts = json::array();
    for (int v = 0; v < t.nv; ++v) verts.push_back({{"id", v}, {"root", v == t.root}});
    j["vertices"] = std::move(verts);
    json edges = json::array();
    for (const auto& [u, v] : t.edges) edges.push_back(json::array({u, v}));
    j["edges"] = std::move(edges);
    json frontier = json::array();
    for (size_t k = 0; k < t.frontier_vertex.size(); ++k)
        frontier.push_back({{"vertex", t.frontier_vertex[k]}, {"bound", bF[k]}});
    j["frontier"] = std::move(frontier);
    return j.dump(2) + "\n";
}

std::string write_bound_report(const BoundReport& rep) {
    json j;
    j["basic"] = rep.basic;
    j["case1"] = optional_to_json(rep.case1);
    j["case2a"] = optional_to_json(rep.case2a);
    j["case2b"] = optional_to_json(rep.case2b);
    j["case3"] = optional_to_json(rep.case3);
    j["best"] = rep.best;
    j["b_edge"] = rep.b_edge;
    j["h_edge"] = rep.h_edge;
    j["root_term"] = rep.root_term;
    j["maybe_empty"] = rep.maybe_empty;
    return j.dump(2) + "\n";
}

std::string write_complex(const VoronoiComplex& v, const DelaunayComplex& d) {
    json j;
    j["model"] = "hyperboloid";
    j["basepoint"] = point_to_json(v.basepoint);
    j["clip_radius"] = v.clip_radius;

    json sites = json::array();
    for (const HPoint& s : v.sites) sites.push_back(point_to_json(s));
    j["sites"] = std::move(sites);

    json cells = json::array();
    for (const VoronoiCell& c : v.cells) {
        json corners = json::array();
        for (const HPoint& p : c.corners) corners.push_back(point_to_json(p));
        cells.push_back({{"site", c.site},
                         {"corners", std::move(corners)},
                         {"edge_constraint", c.edge_constraint},
                         {"touches_clip", c.touches_clip},
                         {"peripheral", c.peripheral}});
    }
    j["cells"] = std::move(cells);

    json verts = json::array();
    for (const VoronoiVertex& w : v.vertices)
        verts.push_back({{"pos", point_to_json(w.pos)},
                         {"radius", w.radius},
                         {"sites", w.sites},
                         {"interior", w.interior}});
    j["vertices"] = std::move(verts);

    json vedges = json::array();
    for (const VoronoiEdge& e : v.edges)
        vedges.push_back(
            {{"site_a", e.site_a}, {"site_b", e.site_b}, {"va", e.va}, {"vb", e.vb}});
    j["voronoi_edges"] = std::move(vedges);

    json dedges = json::array();
    for (const DelaunayEdge& e : d.edges)
        dedges.push_back({{"site_a", e.site_a},
                          {"site_b", e.site_b},
                          {"voronoi_edge", e.voronoi_edge},
                          {"length", e.length},
                          {"centered", e.centered}});
    j["delaunay_edges"] = std::move(dedges);

    json faces = json::array();
    for (const DelaunayFace& f : d.faces)
        faces.push_back({{"vertex", f.vertex},
                         {"sites", f.sites},
                         {"edge_ids", f.edge_ids},
                         {"sides", f.sides},
                         {"class", centering_name(f.tuple.cls)},
                         {"radius", f.tuple.radius}});
    j["faces"] = std::move(faces);
    return j.dump(2) + "\n";
}

std::string write_surface(const OctagonSurface& s) {
    json j;
    j["model"] = s.model;
    j["t"] = s.t;
    j["pairing"] = {{"iota", s.pairing.iota}, {"one_vertex", s.pairing.one_vertex}};
    json gens = json::array();
    for (const HIsometry& g : s.generators) gens.push_back(matrix_to_json(g));
    j["generators"] = std::move(gens);
    j["lengths"] = s.lengths;
    j["marked"] = point_to_json(s.marked);
    return j.dump(2) + "\n";
}

std::string load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void save_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace hyp
