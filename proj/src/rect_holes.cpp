#include "unitrect/rect_holes.hpp"

#include <algorithm>
#include <unordered_map>

namespace unitrect {

std::string RunResult::failure_label() const {
    if (std::holds_alternative<GridDrawing>(outcome)) return "positive";
    if (std::holds_alternative<FailC1>(outcome)) return "C1";
    if (std::holds_alternative<FailC2>(outcome)) return "C2";
    return "reject";
}

namespace {

using Reject = PreprocessReject;

struct Engine {
    const PlanarEmbeddedGraph& pg;
    const Graph& g;
    FaceSet fs;
    FaceId fo;

    // current graph H
    std::vector<char> edge_alive;
    std::vector<int> live_degree;
    std::vector<FaceId> left_face;  // per dart, maintained under merges
    std::vector<std::vector<Dart>> live_rot;  // rebuilt lazily per vertex

    // placement
    std::vector<std::optional<Point>> coord;
    std::unordered_map<std::int64_t, Vertex> occupied;
    int Mx = 0, My = 0;

    // outer-sorter: bucket per x with intrusive doubly-linked lists
    std::vector<Vertex> bucket_head;
    std::vector<Vertex> nxt, prv;
    std::vector<char> in_bucket;
    int x_min = 0;

    int unprocessed_faces = 0;
    RunStats* stats = nullptr;

    explicit Engine(const PlanarEmbeddedGraph& p) : pg(p), g(p.g) {}

    void touch_vertex(Vertex v) {
        if (stats) ++stats->vertex_considerations[v];
    }
    void touch_edge(EdgeId e) {
        if (stats) ++stats->edge_touches[e];
    }

    void bucket_insert_front(Vertex v) {
        int x = coord[v]->x;
        nxt[v] = bucket_head[x];
        prv[v] = -1;
        if (bucket_head[x] != -1) prv[bucket_head[x]] = v;
        bucket_head[x] = v;
        in_bucket[v] = 1;
    }

    void bucket_remove(Vertex v) {
        if (!in_bucket[v]) return;
        int x = coord[v]->x;
        if (prv[v] != -1) nxt[prv[v]] = nxt[v];
        else bucket_head[x] = nxt[v];
        if (nxt[v] != -1) prv[nxt[v]] = prv[v];
        in_bucket[v] = 0;
    }

    void advance_x_min() {
        while (x_min <= Mx && bucket_head[x_min] == -1) ++x_min;
    }

    // C1/C2-checked placement
    std::optional<RunResult> place(Vertex v, Point p) {
        touch_vertex(v);
        if (coord[v]) {
            if (*coord[v] != p) return RunResult{FailC1{v, coord[v], p}};
            return std::nullopt;
        }
        if (p.x < 0 || p.x > Mx || p.y < 0 || p.y > My)
            return RunResult{FailC1{v, std::nullopt, p}};  // escapes the prescribed bounding box
        auto [it, fresh] = occupied.try_emplace(point_key(p), v);
        if (!fresh) return RunResult{FailC2{it->second, v, p}};
        coord[v] = p;
        bucket_insert_front(v);
        return std::nullopt;
    }
};

std::optional<Point> prescribed_at(const OuterPrescription& outer, Vertex v) {
    if (v < 0 || v >= static_cast<int>(outer.size())) return std::nullopt;
    return outer[v];
}

// Vertices and edges incident to the outer face, with the rotation and
// outer face they induce; used to vet the prescription against the
// embedding before the main loop runs.
struct OuterSubgraph {
    PlanarEmbeddedGraph pg;
    GridDrawing coords;
    std::vector<Vertex> back;  // subgraph vertex -> original vertex
};

std::variant<OuterSubgraph, Reject> build_outer_subgraph(const PlanarEmbeddedGraph& pg, const FaceSet& fs,
                                                         FaceId fo, const OuterPrescription& outer) {
    const Graph& g = pg.g;
    std::vector<char> edge_on_outer(g.edge_count(), 0);
    for (Dart d : fs.walks[fo].darts) edge_on_outer[dart_edge(d)] = 1;

    std::vector<int> vmap(g.n, -1);
    OuterSubgraph out;
    auto sub_vertex = [&](Vertex v) {
        if (vmap[v] == -1) {
            vmap[v] = out.pg.g.n++;
            out.back.push_back(v);
        }
        return vmap[v];
    };
    std::vector<EdgeId> emap(g.edge_count(), -1);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!edge_on_outer[e]) continue;
        auto [u, v] = g.edges[e];
        emap[e] = out.pg.g.add_edge(sub_vertex(u), sub_vertex(v));
    }
    out.pg.rot.assign(out.pg.g.n, {});
    for (Vertex v = 0; v < g.n; ++v) {
        if (vmap[v] == -1) continue;
        for (Dart d : pg.rot[v]) {
            EdgeId e = dart_edge(d);
            if (emap[e] == -1) continue;
            out.pg.rot[vmap[v]].push_back(make_dart(emap[e], d & 1));
        }
    }
    FaceSet sub_fs = faces(out.pg);
    // outer face of the subgraph = image of the original outer walk
    Dart d0 = fs.walks[fo].darts[0];
    out.pg.outer_face = sub_fs.face_of_dart[make_dart(emap[dart_edge(d0)], d0 & 1)];

    out.coords.coords.resize(out.pg.g.n);
    for (Vertex v = 0; v < out.pg.g.n; ++v) {
        auto p = prescribed_at(outer, out.back[v]);
        if (!p) return Reject{Reject::Reason::DegenerateOuter, "outer-walk vertex has no prescribed coordinate"};
        out.coords.coords[v] = *p;
    }
    return out;
}

}  // namespace

RunResult rect_holes_run(const PlanarEmbeddedGraph& pg, const OuterPrescription& outer_in, RunStats* stats) {
    const Graph& g = pg.g;
    auto reject = [](Reject::Reason r, std::string detail) {
        return RunResult{Reject{r, std::move(detail)}};
    };
    if (!pg.outer_face) throw StructuralError("rect-holes needs a plane graph (outer face set)");
    if (!is_connected(g)) return reject(Reject::Reason::NotConnected, "input graph is not connected");
    if (g.has_multi_edge()) return reject(Reject::Reason::MultiEdge, "parallel edges force a degree-2 face");
    if (static_cast<int>(outer_in.size()) != g.n)
        throw StructuralError("prescription size must equal vertex count");

    Engine eng(pg);
    eng.fs = faces(pg);
    eng.fo = *pg.outer_face;
    if (stats) {
        stats->vertex_considerations.assign(g.n, 0);
        stats->edge_touches.assign(g.edge_count(), 0);
        stats->iterations = 0;
    }
    eng.stats = stats;

    {
        Verdict even = even_faces_check(pg);
        if (!even.ok()) {
            auto r = even.failure->kind == FailureKind::OddCycle ? Reject::Reason::OddCycle
                                                                 : Reject::Reason::DegenerateOuter;
            return reject(r, even.failure->detail);
        }
    }

    // normalize the prescription so min x = min y = 0
    OuterPrescription outer = outer_in;
    {
        int minx = 0, miny = 0;
        bool any = false;
        for (const auto& p : outer)
            if (p) {
                if (!any) {
                    minx = p->x;
                    miny = p->y;
                    any = true;
                } else {
                    minx = std::min(minx, p->x);
                    miny = std::min(miny, p->y);
                }
            }
        if (!any) return reject(Reject::Reason::DegenerateOuter, "empty prescription");
        for (auto& p : outer)
            if (p) p = Point{p->x - minx, p->y - miny};
    }

    // vet the prescription: exactly the outer-walk vertices, unit edges,
    // distinct points, embedding-consistent, correctly oriented
    auto sub = build_outer_subgraph(pg, eng.fs, eng.fo, outer);
    if (auto* r = std::get_if<Reject>(&sub)) return RunResult{*r};
    auto& outer_sub = std::get<OuterSubgraph>(sub);
    {
        std::vector<char> on_outer(g.n, 0);
        for (Vertex v : outer_sub.back) on_outer[v] = 1;
        for (Vertex v = 0; v < g.n; ++v)
            if (outer[v] && !on_outer[v])
                return reject(Reject::Reason::DegenerateOuter, "coordinate prescribed off the outer walk");
        Verdict u = check_unit_length(outer_sub.pg.g, outer_sub.coords);
        if (!u.ok()) return reject(Reject::Reason::NonUnitOuter, u.failure->detail);
        Verdict pl = check_planar_grid(outer_sub.pg.g, outer_sub.coords);
        if (!pl.ok()) return reject(Reject::Reason::DegenerateOuter, pl.failure->detail);
        Verdict emb = check_embedding_preserving(outer_sub.pg, outer_sub.coords);
        if (!emb.ok()) return reject(Reject::Reason::DegenerateOuter, emb.failure->detail);
    }

    // drop the bridges hanging into the outer face along with the twigs
    // they carry; their coordinates stay prescribed
    BlockDecomposition blocks = bridges_and_blocks(g);
    eng.edge_alive.assign(g.edge_count(), 1);
    for (EdgeId e : blocks.bridges) eng.edge_alive[e] = 0;
    eng.live_degree.assign(g.n, 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (eng.edge_alive[e]) {
            ++eng.live_degree[g.edges[e].first];
            ++eng.live_degree[g.edges[e].second];
        }

    eng.left_face = eng.fs.face_of_dart;
    eng.coord.assign(g.n, std::nullopt);
    eng.Mx = 0;
    eng.My = 0;
    for (const auto& p : outer)
        if (p) {
            eng.Mx = std::max(eng.Mx, p->x);
            eng.My = std::max(eng.My, p->y);
        }
    eng.bucket_head.assign(eng.Mx + 1, -1);
    eng.nxt.assign(g.n, -1);
    eng.prv.assign(g.n, -1);
    eng.in_bucket.assign(g.n, 0);
    eng.occupied.reserve(g.n * 2);

    // seed placements; inserting in decreasing y leaves the bottom-most
    // vertex at each bucket head
    {
        std::vector<Vertex> seeded;
        for (Vertex v = 0; v < g.n; ++v)
            if (outer[v]) seeded.push_back(v);
        std::sort(seeded.begin(), seeded.end(), [&](Vertex a, Vertex b) {
            if (outer[a]->y != outer[b]->y) return outer[a]->y > outer[b]->y;
            return outer[a]->x < outer[b]->x;
        });
        for (Vertex v : seeded) {
            eng.coord[v] = *outer[v];
            eng.occupied.emplace(point_key(*outer[v]), v);
            if (eng.live_degree[v] > 0) eng.bucket_insert_front(v);
        }
    }
    eng.x_min = 0;
    eng.advance_x_min();

    eng.unprocessed_faces = eng.fs.count() - 1;

    // live rotation per vertex, maintained by filtering dead edges on use
    auto live_darts_at = [&](Vertex v) {
        std::vector<Dart> out;
        out.reserve(4);
        for (Dart d : pg.rot[v])
            if (eng.edge_alive[dart_edge(d)]) out.push_back(d);
        return out;
    };

    while (eng.unprocessed_faces > 0) {
        if (stats) ++stats->iterations;
        eng.advance_x_min();
        if (eng.x_min > eng.Mx) throw StructuralError("outer-sorter exhausted with faces pending");
        Vertex u = eng.bucket_head[eng.x_min];

        // Retrieve
        auto live = live_darts_at(u);
        const int deg = static_cast<int>(live.size());
        if (deg == 4) {
            // every neighbor is forced to x >= x_min, so two of the four
            // collide; report a representative pair
            std::vector<Vertex> unplaced;
            Vertex placed_east = -1;
            for (Dart d : live) {
                Vertex w = dart_head(g, d);
                if (!eng.coord[w]) unplaced.push_back(w);
                else if (eng.coord[w]->x == eng.x_min + 1) placed_east = w;
            }
            Point p{eng.x_min + 1, eng.coord[u]->y};
            if (unplaced.size() >= 2) return RunResult{FailC2{unplaced[0], unplaced[1], p}};
            Vertex a = unplaced.empty() ? live[0] : unplaced[0];
            Vertex b = placed_east != -1 ? placed_east : dart_head(g, live[1]);
            return RunResult{FailC2{a, b, p}};
        }
        if (deg < 2) throw StructuralError("live vertex with degree < 2 in current graph");

        FaceId fstar = -1;
        for (int i = 0; i < deg; ++i) {
            FaceId sector = eng.left_face[live[i]];
            FaceId next_sector = eng.left_face[live[(i + 1) % deg]];
            if (sector != eng.fo && next_sector == eng.fo) {
                fstar = sector;
                break;
            }
        }
        if (fstar == -1) throw StructuralError("no internal face clockwise-adjacent to the outer face at u");

        const FaceWalk& walk = eng.fs.walks[fstar];
        const int m = walk.degree();
        // position of u on the walk (internal faces are simple cycles here)
        int upos = -1;
        for (int i = 0; i < m; ++i)
            if (dart_tail(g, walk.darts[i]) == u) {
                upos = i;
                break;
            }
        if (upos == -1) throw StructuralError("retrieved face does not touch u");

        auto vertex_at = [&](int i) { return dart_tail(g, walk.darts[((i % m) + m) % m]); };
        auto placed_at_xmin = [&](Vertex v) { return eng.coord[v] && eng.coord[v]->x == eng.x_min; };

        // maximal placed run at x_min through u, in walk order
        int a = upos, b = upos, run = 1;
        while (run < m && placed_at_xmin(vertex_at(a - 1))) {
            --a;
            ++run;
        }
        while (run < m && placed_at_xmin(vertex_at(b + 1))) {
            ++b;
            ++run;
        }
        const int h = run - 1;  // edges on the left side
        if (h < 1) return RunResult{FailC1{u, eng.coord[u], Point{eng.x_min, eng.coord[u]->y - 1}}};
        if (run >= m) return RunResult{FailC1{u, eng.coord[u], *eng.coord[u]}};

        // the left side must descend one row per edge along the CCW walk
        for (int i = a; i < b; ++i) {
            Vertex cur = vertex_at(i), next = vertex_at(i + 1);
            if (eng.coord[next]->y != eng.coord[cur]->y - 1)
                return RunResult{FailC1{next, eng.coord[next], Point{eng.x_min, eng.coord[cur]->y - 1}}};
        }

        const int rem = m - 2 * h;
        if (rem < 2 || rem % 2 != 0) {
            Vertex tail_v = vertex_at(b);
            return RunResult{FailC1{tail_v, eng.coord[tail_v], *eng.coord[tail_v]}};
        }
        const int w = rem / 2;
        const int y_bot = eng.coord[vertex_at(b)]->y;
        const int y_top = y_bot + h;

        // Draw: walk the rectangle boundary from the bottom-left corner;
        // the final step re-places the top-left corner and so verifies the
        // closure of the cycle against the left side
        for (int i = 1; i <= w; ++i)
            if (auto fail = eng.place(vertex_at(b + i), Point{eng.x_min + i, y_bot})) return *fail;
        for (int j = 1; j <= h; ++j)
            if (auto fail = eng.place(vertex_at(b + w + j), Point{eng.x_min + w, y_bot + j})) return *fail;
        for (int i = 1; i <= w; ++i)
            if (auto fail = eng.place(vertex_at(b + w + h + i), Point{eng.x_min + w - i, y_top})) return *fail;

        // Merge f* into the outer face
        std::vector<EdgeId> dead;
        for (Dart d : walk.darts) {
            eng.left_face[d] = eng.fo;
            eng.touch_edge(dart_edge(d));
            if (eng.left_face[dart_reverse(d)] == eng.fo) dead.push_back(dart_edge(d));
        }
        for (EdgeId e : dead) {
            eng.edge_alive[e] = 0;
            for (Vertex v : {g.edges[e].first, g.edges[e].second}) {
                if (--eng.live_degree[v] == 0) eng.bucket_remove(v);
            }
        }
        --eng.unprocessed_faces;
    }

    // assemble the drawing in the original prescription frame
    GridDrawing result;
    result.coords.resize(g.n);
    int offx = 0, offy = 0;
    {
        bool any = false;
        for (Vertex v = 0; v < g.n; ++v)
            if (outer_in[v]) {
                if (!any) {
                    offx = outer_in[v]->x - outer[v]->x;
                    offy = outer_in[v]->y - outer[v]->y;
                    any = true;
                }
            }
    }
    for (Vertex v = 0; v < g.n; ++v) {
        if (!eng.coord[v]) throw StructuralError("vertex left unplaced after all faces processed");
        result.coords[v] = Point{eng.coord[v]->x + offx, eng.coord[v]->y + offy};
    }
    return RunResult{std::move(result)};
}

}  // namespace unitrect
