#include "unitrect/io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

namespace unitrect {

using nlohmann::json;

PlanarEmbeddedGraph parse_graph_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("adj"))
        throw ParseError("graph JSON needs fields n and adj");
    if (!j["n"].is_number_integer()) throw ParseError("n must be an integer");
    int n = j["n"].get<int>();
    if (n < 0) throw ParseError("n must be non-negative");
    if (!j["adj"].is_array() || static_cast<int>(j["adj"].size()) != n)
        throw ParseError("adj must list one neighbor array per vertex");

    std::vector<std::vector<int>> adj(n);
    for (int v = 0; v < n; ++v) {
        if (!j["adj"][v].is_array()) throw ParseError("adj entries must be arrays");
        for (const auto& x : j["adj"][v]) {
            if (!x.is_number_integer()) throw ParseError("neighbor ids must be integers");
            int w = x.get<int>();
            if (w < 0 || w >= n) throw ParseError("neighbor id out of range");
            if (w == v) throw ParseError("self-loops are not allowed");
            adj[v].push_back(w);
        }
    }
    // symmetry: u must list v exactly as often as v lists u
    for (int v = 0; v < n; ++v) {
        std::map<int, int> cnt;
        for (int w : adj[v]) ++cnt[w];
        for (auto [w, c] : cnt) {
            int back = static_cast<int>(std::count(adj[w].begin(), adj[w].end(), v));
            if (back != c) throw ParseError("adjacency lists are not symmetric");
        }
    }

    PlanarEmbeddedGraph pg;
    pg.g.n = n;
    pg.rot.assign(n, {});
    // pair the i-th occurrence of v in adj[u] with the (k-1-i)-th occurrence
    // of u in adj[v]; positions disambiguate parallel edges
    std::map<std::pair<int, int>, std::vector<int>> created;  // (u,v) u<v -> edge ids in u-order
    std::map<std::pair<int, int>, int> seen_count;
    for (int v = 0; v < n; ++v) {
        for (int w : adj[v]) {
            int a = std::min(v, w), b = std::max(v, w);
            auto key = std::make_pair(a, b);
            int occur = seen_count[{v, w}]++;
            int total = static_cast<int>(std::count(adj[v].begin(), adj[v].end(), w));
            int edge_index = v == a ? occur : total - 1 - occur;
            auto& ids = created[key];
            while (static_cast<int>(ids.size()) <= edge_index) ids.push_back(-1);
            if (ids[edge_index] == -1) ids[edge_index] = pg.g.add_edge(a, b);
            EdgeId e = ids[edge_index];
            pg.rot[v].push_back(make_dart(e, v == b && a != b));
        }
    }

    if (!euler_formula_holds(pg)) throw ParseError("rotation system violates Euler's formula");

    if (j.contains("outer") && !j["outer"].is_null()) {
        if (!j["outer"].is_array() || j["outer"].size() != 2) throw ParseError("outer must be [u, v] or null");
        int u = j["outer"][0].get<int>(), v = j["outer"][1].get<int>();
        if (u < 0 || u >= n || v < 0 || v >= n) throw ParseError("outer vertex out of range");
        Dart found = -1;
        for (Dart d : pg.rot[u])
            if (dart_head(pg.g, d) == v) {
                found = d;
                break;
            }
        if (found == -1) throw ParseError("outer names a missing edge");
        FaceSet fs = faces(pg);
        pg.outer_face = fs.face_of_dart[found];
    }
    return pg;
}

std::string graph_to_json(const PlanarEmbeddedGraph& pg) {
    json j;
    j["n"] = pg.g.n;
    json adj = json::array();
    for (Vertex v = 0; v < pg.g.n; ++v) {
        json row = json::array();
        for (Dart d : pg.rot[v]) row.push_back(dart_head(pg.g, d));
        adj.push_back(row);
    }
    j["adj"] = adj;
    if (pg.outer_face) {
        FaceSet fs = faces(pg);
        Dart d = fs.walks[*pg.outer_face].darts[0];
        j["outer"] = {dart_tail(pg.g, d), dart_head(pg.g, d)};
    } else {
        j["outer"] = nullptr;
    }
    return j.dump();
}

std::vector<std::optional<Point>> parse_prescription_json(const std::string& text, int expected_n) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("coords") || !j["coords"].is_array())
        throw ParseError("drawing JSON needs a coords array");
    if (static_cast<int>(j["coords"].size()) != expected_n)
        throw ParseError("coords length must equal the vertex count");
    std::vector<std::optional<Point>> out(expected_n);
    for (int v = 0; v < expected_n; ++v) {
        const auto& c = j["coords"][v];
        if (c.is_null()) continue;
        if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer())
            throw ParseError("coords entries must be [x, y] integer pairs or null");
        out[v] = Point{c[0].get<int>(), c[1].get<int>()};
    }
    return out;
}

GridDrawing parse_drawing_json(const std::string& text, int expected_n) {
    auto presc = parse_prescription_json(text, expected_n);
    GridDrawing d;
    d.coords.resize(expected_n);
    for (int v = 0; v < expected_n; ++v) {
        if (!presc[v]) throw ParseError("drawing has a missing coordinate");
        d.coords[v] = *presc[v];
    }
    return d;
}

std::string drawing_to_json(const GridDrawing& d) {
    json j;
    json coords = json::array();
    for (const Point& p : d.coords) coords.push_back({p.x, p.y});
    j["coords"] = coords;
    return j.dump();
}

std::string render_svg(const PlanarEmbeddedGraph& pg, const GridDrawing& d, int scale) {
    int minx = 0, miny = 0, maxx = 0, maxy = 0;
    if (!d.coords.empty()) {
        minx = maxx = d.coords[0].x;
        miny = maxy = d.coords[0].y;
        for (const Point& p : d.coords) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            maxy = std::max(maxy, p.y);
        }
    }
    auto sx = [&](int x) { return (x - minx) * scale; };
    auto sy = [&](int y) { return (maxy - y) * scale; };  // y grows upward

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << -scale / 2 << " " << -scale / 2 << " "
       << (maxx - minx) * scale + scale << " " << (maxy - miny) * scale + scale << "\">\n";
    for (const auto& [u, v] : pg.g.edges)
        os << "  <line x1=\"" << sx(d.at(u).x) << "\" y1=\"" << sy(d.at(u).y) << "\" x2=\"" << sx(d.at(v).x)
           << "\" y2=\"" << sy(d.at(v).y) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    for (Vertex v = 0; v < pg.g.n; ++v) {
        os << "  <circle cx=\"" << sx(d.at(v).x) << "\" cy=\"" << sy(d.at(v).y)
           << "\" r=\"4\" fill=\"white\" stroke=\"black\"/>\n";
        os << "  <text x=\"" << sx(d.at(v).x) + 6 << "\" y=\"" << sy(d.at(v).y) - 6 << "\" font-size=\""
           << scale / 4 << "\">" << v << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace unitrect
