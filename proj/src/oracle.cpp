#include "unitrect/oracle.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "unitrect/embed.hpp"
#include "unitrect/flow.hpp"
#include "unitrect/spqr.hpp"

namespace unitrect {

namespace {

Point apply_symmetry(Point p, int s) {
    // four rotations, then the four with x mirrored
    Point q = (s & 4) ? Point{-p.x, p.y} : p;
    switch (s & 3) {
        case 0: return q;
        case 1: return {-q.y, q.x};
        case 2: return {-q.x, -q.y};
        default: return {q.y, -q.x};
    }
}

GridDrawing translated_to_origin(GridDrawing d) {
    if (d.coords.empty()) return d;
    int mx = d.coords[0].x, my = d.coords[0].y;
    for (const Point& p : d.coords) {
        mx = std::min(mx, p.x);
        my = std::min(my, p.y);
    }
    for (Point& p : d.coords) p = {p.x - mx, p.y - my};
    return d;
}

}  // namespace

GridDrawing canonical_drawing(const GridDrawing& d) {
    GridDrawing best;
    bool have = false;
    for (int s = 0; s < 8; ++s) {
        GridDrawing t;
        t.coords.reserve(d.coords.size());
        for (const Point& p : d.coords) t.coords.push_back(apply_symmetry(p, s));
        t = translated_to_origin(std::move(t));
        if (!have || t.coords < best.coords) {
            best = std::move(t);
            have = true;
        }
    }
    return best;
}

PlanarEmbeddedGraph derive_embedding(const Graph& g, const GridDrawing& d) {
    PlanarEmbeddedGraph pg;
    pg.g = g;
    pg.rot.assign(g.n, {});
    std::vector<std::vector<std::pair<int, Dart>>> by_dir(g.n);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        for (int end = 0; end < 2; ++end) {
            Dart dd = make_dart(e, end == 1);
            Vertex tail = dart_tail(g, dd), head = dart_head(g, dd);
            int dx = d.at(head).x - d.at(tail).x, dy = d.at(head).y - d.at(tail).y;
            int dir = dx == 1 ? 0 : dy == 1 ? 1 : dx == -1 ? 2 : 3;
            by_dir[tail].emplace_back(dir, dd);
        }
    }
    for (Vertex v = 0; v < g.n; ++v) {
        std::sort(by_dir[v].begin(), by_dir[v].end());
        for (auto& [dir, dd] : by_dir[v]) pg.rot[v].push_back(dd);
    }
    FaceSet fs = faces(pg);
    pg.outer_face = geometric_outer_face(pg, d, fs);
    return pg;
}

DrawingEnumeration enumerate_unit_drawings(const PlanarEmbeddedGraph& pg, const OracleOptions& opts) {
    const Graph& g = pg.g;
    if (g.edge_count() > opts.max_edges)
        throw StructuralError("oracle refuses: edge count exceeds the configured bound");
    if (!is_connected(g)) throw StructuralError("oracle requires a connected graph");

    const bool pinned_mode = !opts.pinned.empty();
    if (pinned_mode && static_cast<int>(opts.pinned.size()) != g.n)
        throw StructuralError("pinned coordinate table has the wrong size");

    // BFS order rooted at a pinned vertex when one exists
    Vertex root = 0;
    if (pinned_mode)
        for (Vertex v = 0; v < g.n; ++v)
            if (opts.pinned[v]) {
                root = v;
                break;
            }
    std::vector<std::vector<std::pair<Vertex, EdgeId>>> adj(g.n);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges[e];
        adj[u].emplace_back(v, e);
        adj[v].emplace_back(u, e);
    }
    std::vector<Vertex> order{root};
    std::vector<Vertex> parent(g.n, -1);
    std::vector<char> seen(g.n, 0);
    seen[root] = 1;
    for (size_t i = 0; i < order.size(); ++i) {
        for (auto [w, e] : adj[order[i]]) {
            (void)e;
            if (!seen[w]) {
                seen[w] = 1;
                parent[w] = order[i];
                order.push_back(w);
            }
        }
    }

    // all-pairs graph distances power the reach pruning below: in any unit
    // drawing the L1 distance never exceeds the graph distance and always
    // matches its parity
    std::vector<std::vector<int>> gdist(g.n, std::vector<int>(g.n, -1));
    for (Vertex s = 0; s < g.n; ++s) {
        std::vector<Vertex> queue{s};
        gdist[s][s] = 0;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            Vertex u = queue[qi];
            for (auto [w, e] : adj[u]) {
                (void)e;
                if (gdist[s][w] == -1) {
                    gdist[s][w] = gdist[s][u] + 1;
                    queue.push_back(w);
                }
            }
        }
    }

    std::vector<std::optional<Point>> pos(g.n);
    std::unordered_map<std::int64_t, Vertex> occupied;
    std::vector<GridDrawing> found;
    bool truncated = false;

    auto consistent = [&](Vertex v, Point p) {
        if (opts.pinned.size() && opts.pinned[v] && !(*opts.pinned[v] == p)) return false;
        if (occupied.count(point_key(p))) return false;
        for (Vertex w = 0; w < g.n; ++w) {
            std::optional<Point> q = pos[w];
            if (!q && opts.pinned.size() && opts.pinned[w]) q = opts.pinned[w];
            if (!q || w == v) continue;
            int dist = std::abs(q->x - p.x) + std::abs(q->y - p.y);
            if (dist > gdist[v][w] || (dist - gdist[v][w]) % 2 != 0) return false;
        }
        return true;
    };

    auto accept = [&](const GridDrawing& d) {
        if (opts.require_embedding) {
            PlanarEmbeddedGraph probe = pg;
            if (!opts.require_outer) probe.outer_face.reset();
            if (!check_embedding_preserving(probe, d).ok()) return false;
        }
        if (opts.filter_inner_rect || opts.filter_rect) {
            PlanarEmbeddedGraph frame = opts.require_embedding ? pg : derive_embedding(g, d);
            if (!frame.outer_face) return false;
            Verdict v = opts.filter_rect ? check_rectangular(frame, d) : check_inner_rectangular(frame, d);
            if (!v.ok()) return false;
        }
        return true;
    };

    // iterative backtracking over the BFS order
    const int n = g.n;
    std::vector<int> branch(n, -1);
    int depth = 0;
    auto place = [&](Vertex v, Point p) {
        pos[v] = p;
        occupied.emplace(point_key(p), v);
    };
    auto unplace = [&](Vertex v) {
        occupied.erase(point_key(*pos[v]));
        pos[v].reset();
    };

    Point root_point = pinned_mode && opts.pinned[root] ? *opts.pinned[root] : Point{0, 0};
    place(root, root_point);
    depth = 1;
    while (depth > 0) {
        if (opts.max_results > 0 && static_cast<long>(found.size()) >= opts.max_results) {
            truncated = true;
            break;
        }
        if (depth == n) {
            GridDrawing d;
            d.coords.resize(n);
            for (Vertex v = 0; v < n; ++v) d.coords[v] = *pos[v];
            if (accept(d)) found.push_back(d);
            --depth;
            if (depth > 0) unplace(order[depth]);
            continue;
        }
        Vertex v = order[depth];
        int next = branch[depth] + 1;
        bool advanced = false;
        for (; next < 4; ++next) {
            Point base = *pos[parent[v]];
            static const int DX[4] = {1, 0, -1, 0};
            static const int DY[4] = {0, 1, 0, -1};
            Point p{base.x + DX[next], base.y + DY[next]};
            if (consistent(v, p)) {
                branch[depth] = next;
                place(v, p);
                ++depth;
                if (depth < n) branch[depth] = -1;
                advanced = true;
                break;
            }
        }
        if (!advanced) {
            branch[depth] = -1;
            --depth;
            if (depth > 0) unplace(order[depth]);
        }
    }

    DrawingEnumeration out;
    if (pinned_mode) {
        std::sort(found.begin(), found.end(), [](const GridDrawing& a, const GridDrawing& b) {
            return a.coords < b.coords;
        });
        out.drawings = std::move(found);
    } else {
        std::set<std::vector<Point>> seen_canon;
        for (const GridDrawing& d : found) {
            GridDrawing c = canonical_drawing(d);
            if (seen_canon.insert(c.coords).second) out.drawings.push_back(std::move(c));
        }
        std::sort(out.drawings.begin(), out.drawings.end(),
                  [](const GridDrawing& a, const GridDrawing& b) { return a.coords < b.coords; });
        out.canonicalized = true;
    }
    return out;
}

AngleEnumeration enumerate_angle_assignments(const PlanarEmbeddedGraph& pg, bool rectangular, int max_faces) {
    if (!pg.outer_face) throw StructuralError("angle enumeration needs a plane graph");
    FaceSet fs = faces(pg);
    if (fs.count() > max_faces) throw StructuralError("oracle refuses: face count exceeds the configured bound");

    // slots ordered exactly like build_rectangular_network arcs
    struct Slot {
        Vertex v;
        FaceId f;
        bool outer;
    };
    std::vector<Slot> slots;
    for (FaceId f = 0; f < fs.count(); ++f)
        for (Dart d : fs.walks[f].darts) slots.push_back({dart_tail(pg.g, d), f, f == *pg.outer_face});

    std::vector<int> vertex_left(pg.g.n, 0);
    for (const Slot& s : slots) ++vertex_left[s.v];
    std::vector<int> face_target(fs.count());
    for (FaceId f = 0; f < fs.count(); ++f)
        face_target[f] = f == *pg.outer_face ? 2 * fs.walks[f].degree() + 4 : 2 * fs.walks[f].degree() - 4;
    std::vector<int> face_left(fs.count(), 0);
    for (const Slot& s : slots) ++face_left[s.f];

    std::vector<int> vertex_sum(pg.g.n, 0), face_sum(fs.count(), 0);
    std::vector<int> cur(slots.size(), 0);
    AngleEnumeration out;

    auto lo_of = [&](const Slot& s) { return rectangular ? (s.outer ? 2 : 1) : 1; };
    auto hi_of = [&](const Slot& s) { return rectangular ? (s.outer ? 3 : 2) : 4; };

    // vertex sums must reach exactly 4, face sums exactly their target;
    // prune on the attainable range of the remaining slots
    auto rec = [&](auto&& self, size_t i) -> void {
        if (i == slots.size()) {
            out.assignments.push_back(cur);
            return;
        }
        const Slot& s = slots[i];
        const int lo = lo_of(s), hi = hi_of(s);
        for (int val = lo; val <= hi; ++val) {
            int vrem = vertex_left[s.v] - 1;
            int vs = vertex_sum[s.v] + val;
            if (vs + vrem > 4) continue;       // remaining slots carry at least 1 each
            if (vs + vrem * 4 < 4) continue;   // and at most 4
            int frem = face_left[s.f] - 1;
            int fsum = face_sum[s.f] + val;
            if (fsum + frem * lo > face_target[s.f]) continue;
            if (fsum + frem * hi < face_target[s.f]) continue;
            cur[i] = val;
            vertex_sum[s.v] = vs;
            face_sum[s.f] = fsum;
            --vertex_left[s.v];
            --face_left[s.f];
            self(self, i + 1);
            ++vertex_left[s.v];
            ++face_left[s.f];
            vertex_sum[s.v] -= val;
            face_sum[s.f] -= val;
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<GridDrawing> oracle_completions(const PlanarEmbeddedGraph& pg,
                                            const std::vector<std::optional<Point>>& outer, int max_edges) {
    OracleOptions opts;
    opts.max_edges = max_edges;
    opts.require_embedding = true;
    opts.require_outer = true;
    opts.filter_inner_rect = true;
    opts.pinned = outer;
    return enumerate_unit_drawings(pg, opts).drawings;
}

namespace {

// every rectangle realization of the outer cycle, tried with brute-force
// completions; complete because any rectangular drawing pins two adjacent
// corners somewhere along the walk
OracleDecision oracle_urfe_plane(const PlanarEmbeddedGraph& pg, const OracleOptions& opts) {
    OracleDecision out;
    if (!is_connected(pg.g) || pg.g.edge_count() == 0) return out;
    if (!pg.outer_face) throw StructuralError("oracle URFE needs an outer face");
    FaceSet fs = faces(pg);
    const FaceWalk& co = fs.walks[*pg.outer_face];
    const int len = co.degree();
    std::vector<Vertex> verts;
    for (Dart d : co.darts) verts.push_back(dart_tail(pg.g, d));
    std::set<Vertex> uniq(verts.begin(), verts.end());
    if (static_cast<int>(uniq.size()) != len) return out;  // outer walk not simple
    if (len % 2 != 0 || len < 4) return out;

    for (int start = 0; start < len; ++start) {
        for (int h = 1; h <= len / 2 - 1; ++h) {
            int w = len / 2 - h;
            std::vector<std::optional<Point>> presc(pg.g.n);
            int x = 0, y = 0;
            for (int i = 0; i < len; ++i) {
                presc[verts[(start + i) % len]] = Point{x, y};
                if (i < h) ++y;
                else if (i < h + w) ++x;
                else if (i < h + w + h) --y;
                else --x;
            }
            OracleOptions run = opts;
            run.require_embedding = true;
            run.require_outer = true;
            run.filter_rect = true;
            run.pinned = presc;
            auto result = enumerate_unit_drawings(pg, run);
            if (!result.drawings.empty()) {
                out.positive = true;
                out.drawing = result.drawings.front();
                return out;
            }
        }
    }
    return out;
}

}  // namespace

OracleDecision decide_by_oracle(const PlanarEmbeddedGraph& pg, SolveMode mode, const OracleOptions& opts) {
    OracleDecision out;
    switch (mode) {
        case SolveMode::UirfeFixedOuter: {
            out.completions = oracle_completions(pg, opts.pinned, opts.max_edges);
            out.positive = !out.completions.empty();
            if (out.positive) out.drawing = out.completions.front();
            return out;
        }
        case SolveMode::UrfePlane:
            return oracle_urfe_plane(pg, opts);
        case SolveMode::UrfePlanarEmbedded: {
            FaceSet fs = faces(pg);
            for (FaceId f = 0; f < fs.count(); ++f) {
                PlanarEmbeddedGraph plane = pg;
                plane.outer_face = f;
                OracleDecision r = oracle_urfe_plane(plane, opts);
                if (r.positive) return r;
            }
            return out;
        }
        case SolveMode::Ur: {
            if (!is_connected(pg.g) || pg.g.edge_count() == 0) return out;
            if (pg.g.has_multi_edge()) return out;
            if (max_degree(pg.g) <= 2) {
                PlanarEmbeddedGraph plane = pg;
                plane.outer_face = 0;
                return oracle_urfe_plane(plane, opts);
            }
            if (!is_biconnected(pg.g)) return out;  // rectangular drawings are convex
            SpqrTree t = build_spqr(pg.g);
            for (const auto& plane : all_plane_embeddings(pg, t)) {
                OracleDecision r = oracle_urfe_plane(plane, opts);
                if (r.positive) return r;
            }
            return out;
        }
        case SolveMode::Rect: {
            if (!is_connected(pg.g) || pg.g.edge_count() == 0) return out;
            if (pg.g.has_multi_edge() || max_degree(pg.g) > 4) return out;
            if (max_degree(pg.g) <= 2) {
                out.positive = pg.g.n >= 4;
                return out;
            }
            if (!is_biconnected(pg.g)) return out;
            SpqrTree t = build_spqr(pg.g);
            for (const auto& plane : all_plane_embeddings(pg, t)) {
                if (!enumerate_angle_assignments(plane, true, 64).assignments.empty()) {
                    out.positive = true;
                    return out;
                }
            }
            return out;
        }
    }
    return out;
}

}  // namespace unitrect
