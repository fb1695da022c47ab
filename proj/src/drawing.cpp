#include "unitrect/drawing.hpp"

#include <algorithm>
#include <cstdlib>
#include <unordered_map>

namespace unitrect {

const char* failure_kind_name(FailureKind k) {
    switch (k) {
        case FailureKind::NonUnitEdge: return "NonUnitEdge";
        case FailureKind::CoincidentVertices: return "CoincidentVertices";
        case FailureKind::RotationMismatch: return "RotationMismatch";
        case FailureKind::OuterFaceMismatch: return "OuterFaceMismatch";
        case FailureKind::NonRectangularFace: return "NonRectangularFace";
        case FailureKind::OddCycle: return "OddCycle";
        case FailureKind::NotBiconnected: return "NotBiconnected";
        case FailureKind::DanglingBridge: return "DanglingBridge";
    }
    return "?";
}

namespace {

// direction of a unit dart: 0=E 1=N 2=W 3=S
int dart_direction(const Graph& g, const GridDrawing& d, Dart dart) {
    Point a = d.at(dart_tail(g, dart));
    Point b = d.at(dart_head(g, dart));
    int dx = b.x - a.x, dy = b.y - a.y;
    if (dx == 1 && dy == 0) return 0;
    if (dx == 0 && dy == 1) return 1;
    if (dx == -1 && dy == 0) return 2;
    if (dx == 0 && dy == -1) return 3;
    throw StructuralError("dart is not a unit segment");
}

// turn from incoming direction a to outgoing b: +1 left, -1 right,
// 0 straight, 2 reversal
int turn(int a, int b) {
    int t = (b - a + 4) % 4;
    if (t == 3) return -1;
    return t;
}

bool cyclically_equal(const std::vector<Dart>& a, const std::vector<Dart>& b) {
    const int k = static_cast<int>(a.size());
    if (static_cast<int>(b.size()) != k) return false;
    if (k == 0) return true;
    for (int s = 0; s < k; ++s) {
        bool all = true;
        for (int i = 0; i < k && all; ++i) all = a[i] == b[(i + s) % k];
        if (all) return true;
    }
    return false;
}

struct WalkShape {
    bool simple = true;
    bool has_reversal = false;
    int lefts = 0;
    int rights = 0;
};

WalkShape walk_shape(const PlanarEmbeddedGraph& pg, const GridDrawing& d, const FaceWalk& w) {
    WalkShape s;
    const int k = w.degree();
    std::vector<Vertex> vs(k);
    for (int i = 0; i < k; ++i) vs[i] = dart_tail(pg.g, w.darts[i]);
    auto sorted = vs;
    std::sort(sorted.begin(), sorted.end());
    s.simple = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    for (int i = 0; i < k; ++i) {
        int a = dart_direction(pg.g, d, w.darts[i]);
        int b = dart_direction(pg.g, d, w.darts[(i + 1) % k]);
        int t = turn(a, b);
        if (t == 2) s.has_reversal = true;
        else if (t == 1) ++s.lefts;
        else if (t == -1) ++s.rights;
    }
    return s;
}

}  // namespace

Verdict check_unit_length(const Graph& g, const GridDrawing& d) {
    if (d.size() != g.n) throw StructuralError("drawing has wrong vertex count");
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges[e];
        // L1 distance 1 on the grid is exactly "unit axis-aligned segment"
        int dist = std::abs(d.at(u).x - d.at(v).x) + std::abs(d.at(u).y - d.at(v).y);
        if (dist != 1)
            return Verdict::fail({FailureKind::NonUnitEdge, e, u, v, {}, "edge is not a unit axis-aligned segment"});
    }
    return Verdict::pass();
}

Verdict check_planar_grid(const Graph& g, const GridDrawing& d) {
    if (d.size() != g.n) throw StructuralError("drawing has wrong vertex count");
    std::unordered_map<std::int64_t, Vertex> seen;
    seen.reserve(d.size() * 2);
    for (Vertex v = 0; v < d.size(); ++v) {
        auto [it, fresh] = seen.try_emplace(point_key(d.at(v)), v);
        if (!fresh)
            return Verdict::fail({FailureKind::CoincidentVertices, {}, it->second, v, {}, "two vertices share a grid point"});
    }
    return Verdict::pass();
}

Vertex extreme_vertex(const GridDrawing& d) {
    Vertex best = 0;
    for (Vertex v = 1; v < d.size(); ++v) {
        Point p = d.at(v), q = d.at(best);
        if (p.x < q.x || (p.x == q.x && p.y < q.y)) best = v;
    }
    return best;
}

FaceId geometric_outer_face(const PlanarEmbeddedGraph& pg, const GridDrawing& d, const FaceSet& fs) {
    Vertex v = extreme_vertex(d);
    // at the bottom-left extreme only north and east neighbors exist
    Dart north = -1, east = -1;
    for (Dart dd : pg.rot[v]) {
        int dir = dart_direction(pg.g, d, dd);
        if (dir == 1) north = dd;
        if (dir == 0) east = dd;
        if (dir == 2 || dir == 3) throw StructuralError("extreme vertex has a neighbor below/left of it");
    }
    Dart pick = north != -1 ? north : east;
    if (pick == -1) throw StructuralError("extreme vertex is isolated");
    return fs.face_of_dart[pick];
}

Verdict check_embedding_preserving(const PlanarEmbeddedGraph& pg, const GridDrawing& d) {
    const Graph& g = pg.g;
    for (Vertex v = 0; v < g.n; ++v) {
        // geometric CCW order starting from east
        std::vector<std::pair<int, Dart>> dirs;
        for (Dart dd : pg.rot[v]) dirs.emplace_back(dart_direction(g, d, dd), dd);
        std::sort(dirs.begin(), dirs.end());
        for (size_t i = 1; i < dirs.size(); ++i)
            if (dirs[i].first == dirs[i - 1].first)
                return Verdict::fail({FailureKind::RotationMismatch, {}, v, {}, {}, "two edges leave in the same direction"});
        std::vector<Dart> geo;
        geo.reserve(dirs.size());
        for (auto& [dir, dd] : dirs) geo.push_back(dd);
        if (!cyclically_equal(geo, pg.rot[v]))
            return Verdict::fail({FailureKind::RotationMismatch, {}, v, {}, {}, "rotation differs from drawn order"});
    }
    if (pg.outer_face) {
        FaceSet fs = faces(pg);
        if (geometric_outer_face(pg, d, fs) != *pg.outer_face)
            return Verdict::fail({FailureKind::OuterFaceMismatch, {}, {}, {}, *pg.outer_face, "drawing places a different face outside"});
    }
    return Verdict::pass();
}

Verdict check_inner_rectangular(const PlanarEmbeddedGraph& pg, const GridDrawing& d) {
    if (!pg.outer_face) throw StructuralError("inner-rectangular check needs an outer face");
    FaceSet fs = faces(pg);
    for (FaceId f = 0; f < fs.count(); ++f) {
        if (f == *pg.outer_face) continue;
        WalkShape s = walk_shape(pg, d, fs.walks[f]);
        // internal rectangle: simple CCW cycle, four left turns, no others
        if (!s.simple || s.has_reversal || s.rights != 0 || s.lefts != 4)
            return Verdict::fail({FailureKind::NonRectangularFace, {}, {}, {}, f, "internal face is not a rectangle"});
    }
    return Verdict::pass();
}

Verdict check_rectangular(const PlanarEmbeddedGraph& pg, const GridDrawing& d) {
    Verdict inner = check_inner_rectangular(pg, d);
    if (!inner.ok()) return inner;
    FaceSet fs = faces(pg);
    WalkShape s = walk_shape(pg, d, fs.walks[*pg.outer_face]);
    // outer walk runs clockwise: four right turns
    if (!s.simple || s.has_reversal || s.lefts != 0 || s.rights != 4)
        return Verdict::fail({FailureKind::NonRectangularFace, {}, {}, {}, *pg.outer_face, "outer face is not a rectangle"});
    return Verdict::pass();
}

Verdict even_faces_check(const PlanarEmbeddedGraph& pg) {
    if (!pg.outer_face) throw StructuralError("even-faces check needs an outer face");
    FaceSet fs = faces(pg);
    for (FaceId f = 0; f < fs.count(); ++f) {
        if (f == *pg.outer_face) continue;
        const FaceWalk& w = fs.walks[f];
        std::vector<Dart> sorted = w.darts;
        std::sort(sorted.begin(), sorted.end());
        for (size_t i = 1; i < sorted.size(); ++i)
            if (dart_edge(sorted[i]) == dart_edge(sorted[i - 1]))
                return Verdict::fail({FailureKind::DanglingBridge, dart_edge(sorted[i]), {}, {}, f, "bridge inside an internal face"});
        std::vector<Vertex> vs;
        vs.reserve(w.degree());
        for (Dart dd : w.darts) vs.push_back(dart_tail(pg.g, dd));
        std::sort(vs.begin(), vs.end());
        if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
            return Verdict::fail({FailureKind::NotBiconnected, {}, *std::adjacent_find(vs.begin(), vs.end()), {}, f, "internal face walk repeats a vertex"});
        if (w.degree() % 2 != 0)
            return Verdict::fail({FailureKind::OddCycle, {}, {}, {}, f, "internal face has odd length"});
    }
    return Verdict::pass();
}

}  // namespace unitrect
