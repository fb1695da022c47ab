#include "unitrect/solve.hpp"

#include <algorithm>
#include <set>

#include "unitrect/embed.hpp"
#include "unitrect/spqr.hpp"

namespace unitrect {

namespace {

struct OuterWalkInfo {
    std::vector<Vertex> verts;  // clockwise along the outer walk
    std::vector<Dart> darts;
    bool simple = false;
};

OuterWalkInfo outer_walk(const PlanarEmbeddedGraph& pg, const FaceSet& fs) {
    OuterWalkInfo out;
    const FaceWalk& w = fs.walks[*pg.outer_face];
    for (Dart d : w.darts) {
        out.verts.push_back(dart_tail(pg.g, d));
        out.darts.push_back(d);
    }
    std::set<Vertex> uniq(out.verts.begin(), out.verts.end());
    out.simple = uniq.size() == out.verts.size();
    return out;
}

// prescription drawing the outer cycle as a w x h rectangle; the walk
// starts at position `start` in the bottom-left corner. The outer walk is
// clockwise as drawn, so it climbs the left wall first.
OuterPrescription rectangle_prescription(const PlanarEmbeddedGraph& pg, const OuterWalkInfo& co, int start,
                                         int w, int h) {
    OuterPrescription out(pg.g.n);
    const int len = static_cast<int>(co.verts.size());
    int x = 0, y = 0;
    for (int i = 0; i < len; ++i) {
        out[co.verts[(start + i) % len]] = Point{x, y};
        if (i < h) ++y;
        else if (i < h + w) ++x;
        else if (i < h + w + h) --y;
        else --x;
    }
    return out;
}

SolveResponse cycle_response(const PlanarEmbeddedGraph& pg) {
    const int n = pg.g.n;
    if (n < 4 || n % 2 != 0) return {false, std::nullopt, "odd or short cycle"};
    FaceSet fs = faces(pg);
    PlanarEmbeddedGraph plane = pg;
    if (!plane.outer_face) plane.outer_face = 0;
    OuterWalkInfo co = outer_walk(plane, fs);
    OuterPrescription presc = rectangle_prescription(plane, co, 0, n / 2 - 1, 1);
    RunResult rr = rect_holes_run(plane, presc);
    if (rr.positive()) return {true, *rr.drawing(), "cycle as rectangle"};
    return {false, std::nullopt, "cycle prescription failed"};
}

bool basic_gate(const PlanarEmbeddedGraph& pg, SolveResponse& out) {
    if (pg.g.n == 0 || pg.g.edge_count() == 0) {
        out = {false, std::nullopt, "empty graph"};
        return false;
    }
    if (!is_connected(pg.g)) {
        out = {false, std::nullopt, "not connected"};
        return false;
    }
    if (pg.g.has_multi_edge()) {
        out = {false, std::nullopt, "parallel edges force a degree-2 face"};
        return false;
    }
    if (max_degree(pg.g) > 4) {
        out = {false, std::nullopt, "maximum degree exceeds 4"};
        return false;
    }
    return true;
}

}  // namespace

SolveResponse solve_uirfe_fixed_outer(const PlanarEmbeddedGraph& pg, const OuterPrescription& outer) {
    RunResult rr = rect_holes_run(pg, outer);
    if (rr.positive()) return {true, *rr.drawing(), "rect-holes"};
    return {false, std::nullopt, rr.failure_label()};
}

SolveResponse solve_urfe_plane(const PlanarEmbeddedGraph& pg) {
    return solve_urfe_plane_impl(pg, false);
}

SolveResponse solve_urfe_plane_impl(const PlanarEmbeddedGraph& pg, bool force_general) {
    SolveResponse gate;
    if (!basic_gate(pg, gate)) return gate;
    if (!pg.outer_face) throw StructuralError("URFE-plane needs an outer face");
    if (!is_biconnected(pg.g)) return {false, std::nullopt, "not biconnected"};

    if (max_degree(pg.g) == 2) return cycle_response(pg);

    FaceSet fs = faces(pg);
    OuterWalkInfo co = outer_walk(pg, fs);
    if (!co.simple) return {false, std::nullopt, "outer walk not a simple cycle"};
    const int len = static_cast<int>(co.verts.size());
    if (len % 2 != 0 || len < 4) return {false, std::nullopt, "outer cycle cannot bound a rectangle"};

    std::vector<int> degree = pg.g.degrees();
    std::vector<char> on_outer_edge(pg.g.edge_count(), 0);
    for (Dart d : co.darts) on_outer_edge[dart_edge(d)] = 1;

    auto run_with_corner_pair = [&](Vertex p, Vertex q) -> std::optional<SolveResponse> {
        // walk position of the dart p -> q on the outer walk
        int pos = -1;
        for (int i = 0; i < len; ++i)
            if (co.verts[i] == p && co.verts[(i + 1) % len] == q) pos = i;
        if (pos == -1) return std::nullopt;
        // p, q consecutive corners joined by one edge: the left wall of a
        // height-1 rectangle, p at the bottom-left
        int other = len / 2 - 1;
        if (other < 1) return std::nullopt;
        OuterPrescription presc = rectangle_prescription(pg, co, pos, other, 1);
        RunResult rr = rect_holes_run(pg, presc);
        if (rr.positive()) return SolveResponse{true, *rr.drawing(), "forced corner pair"};
        return std::nullopt;
    };

    if (!force_general) {
        // double / slim double / fat double corner faces pin two adjacent
        // corners of the rectangle
        int max_internal = 0;
        for (FaceId f = 0; f < fs.count(); ++f)
            if (f != *pg.outer_face) max_internal = std::max(max_internal, fs.walks[f].degree());

        for (FaceId f = 0; f < fs.count(); ++f) {
            if (f == *pg.outer_face) continue;
            const FaceWalk& w = fs.walks[f];
            const int deg = w.degree();
            if (deg != 4 && deg != 6) continue;
            int outer_edges = 0;
            for (Dart d : w.darts) outer_edges += on_outer_edge[dart_edge(d)];
            bool dbl = deg == 4 && outer_edges == 3;
            bool slim = deg == 6 && outer_edges == 5;
            bool fat = deg == 6 && outer_edges == 4;
            if (!dbl && !slim && !fat) continue;

            // maximal run of outer edges along the face walk; these faces
            // must poke into the outer boundary as one consecutive stretch,
            // otherwise no drawing exists
            int k = deg;
            int run_start = -1;
            for (int i = 0; i < k; ++i)
                if (on_outer_edge[dart_edge(w.darts[i])] && !on_outer_edge[dart_edge(w.darts[(i + k - 1) % k])])
                    run_start = i;
            if (run_start == -1) return {false, std::nullopt, "double corner face entirely on the outer walk"};
            int run_len = 0;
            while (run_len < k && on_outer_edge[dart_edge(w.darts[(run_start + run_len) % k])]) ++run_len;
            if (run_len != outer_edges)
                return {false, std::nullopt, "double corner face with split outer runs"};

            // walk vertices of the run, oriented along the face walk; the
            // forced corner pair(s) sit in the middle of the run
            auto run_vertex = [&](int i) { return dart_tail(pg.g, w.darts[((run_start + i) % k + k) % k]); };
            std::vector<std::pair<Vertex, Vertex>> pairs;
            if (dbl || slim) {
                int mid = outer_edges / 2;  // 3 -> edge 1, 5 -> edge 2
                pairs.emplace_back(run_vertex(mid), run_vertex(mid + 1));
            } else {
                pairs.emplace_back(run_vertex(1), run_vertex(2));
                pairs.emplace_back(run_vertex(2), run_vertex(3));
            }
            for (auto [a, b] : pairs) {
                // the internal face walk runs counter-clockwise, the outer
                // walk clockwise: the pair appears reversed on the outer walk
                if (auto r = run_with_corner_pair(b, a)) return *r;
            }
            return {false, std::nullopt, "forced corner pair admits no completion"};
        }

        if (max_internal <= 6) {
            // corner faces: degree-4 with two outer edges or degree-6 with
            // three; exactly four must exist, each offering its degree-2
            // outer vertices as corner candidates
            std::vector<std::vector<Vertex>> corner_candidates;
            std::vector<char> on_outer_vertex(pg.g.n, 0);
            for (Vertex v : co.verts) on_outer_vertex[v] = 1;
            for (FaceId f = 0; f < fs.count(); ++f) {
                if (f == *pg.outer_face) continue;
                const FaceWalk& w = fs.walks[f];
                int outer_edges = 0;
                for (Dart d : w.darts) outer_edges += on_outer_edge[dart_edge(d)];
                bool corner_face = (w.degree() == 4 && outer_edges == 2) || (w.degree() == 6 && outer_edges == 3);
                if (!corner_face) continue;
                std::vector<Vertex> cands;
                for (Dart d : w.darts) {
                    Vertex v = dart_tail(pg.g, d);
                    if (degree[v] == 2 && on_outer_vertex[v]) cands.push_back(v);
                }
                if (cands.empty()) return {false, std::nullopt, "corner face without a degree-2 vertex"};
                corner_candidates.push_back(cands);
            }
            if (corner_candidates.size() != 4) return {false, std::nullopt, "corner face count is not four"};

            std::vector<int> pick(4, 0);
            while (true) {
                std::vector<Vertex> corners;
                for (int i = 0; i < 4; ++i) corners.push_back(corner_candidates[i][pick[i]]);
                // order along the walk
                std::vector<int> pos;
                for (Vertex v : corners)
                    for (int i = 0; i < len; ++i)
                        if (co.verts[i] == v) pos.push_back(i);
                std::sort(pos.begin(), pos.end());
                if (pos.size() == 4) {
                    int d1 = pos[1] - pos[0], d2 = pos[2] - pos[1], d3 = pos[3] - pos[2],
                        d4 = len - pos[3] + pos[0];
                    if (d1 == d3 && d2 == d4 && d1 >= 1 && d2 >= 1) {
                        // the side leaving the first corner is the left
                        // wall, so d1 is the height
                        OuterPrescription presc = rectangle_prescription(pg, co, pos[0], d2, d1);
                        RunResult rr = rect_holes_run(pg, presc);
                        if (rr.positive()) return {true, *rr.drawing(), "corner faces"};
                    }
                }
                int i = 3;
                while (i >= 0 && pick[i] + 1 >= static_cast<int>(corner_candidates[i].size())) {
                    pick[i] = 0;
                    --i;
                }
                if (i < 0) break;
                ++pick[i];
            }
            return {false, std::nullopt, "no corner-face assignment admits a completion"};
        }
    }

    // general quadratic enumeration: every ordered pair of degree-2 outer
    // vertices as two consecutive corners
    for (Vertex a = 0; a < pg.g.n; ++a) {
        if (degree[a] != 2) continue;
        for (Vertex b = 0; b < pg.g.n; ++b) {
            if (a == b || degree[b] != 2) continue;
            int pa = -1, pb = -1;
            for (int i = 0; i < len; ++i) {
                if (co.verts[i] == a) pa = i;
                if (co.verts[i] == b) pb = i;
            }
            if (pa == -1 || pb == -1) continue;
            // a and b are consecutive corners: the walk segment a -> b is
            // the left wall, so its length is the height
            int h = ((pb - pa) % len + len) % len;
            int w = len / 2 - h;
            if (w < 1 || h < 1) continue;
            OuterPrescription presc = rectangle_prescription(pg, co, pa, w, h);
            RunResult rr = rect_holes_run(pg, presc);
            if (rr.positive()) return {true, *rr.drawing(), "pair enumeration"};
        }
    }
    return {false, std::nullopt, "no outer rectangle admits a completion"};
}

SolveResponse solve_urfe_planar_embedded(const PlanarEmbeddedGraph& pg) {
    SolveResponse gate;
    if (!basic_gate(pg, gate)) return gate;
    if (max_degree(pg.g) == 2) {
        PlanarEmbeddedGraph plane = pg;
        plane.outer_face = 0;
        return cycle_response(plane);
    }
    FaceSet fs = faces(pg);
    int best = -1, best_deg = -1, ties = 0;
    for (FaceId f = 0; f < fs.count(); ++f) {
        if (fs.walks[f].degree() > best_deg) {
            best_deg = fs.walks[f].degree();
            best = f;
            ties = 1;
        } else if (fs.walks[f].degree() == best_deg) {
            ++ties;
        }
    }
    if (ties != 1) return {false, std::nullopt, "maximum face size is tied"};
    PlanarEmbeddedGraph plane = pg;
    plane.outer_face = best;
    return solve_urfe_plane(plane);
}

SolveResponse solve_ur(const PlanarEmbeddedGraph& ref) {
    SolveResponse gate;
    if (!basic_gate(ref, gate)) return gate;
    if (!is_biconnected(ref.g)) return {false, std::nullopt, "not biconnected"};
    if (max_degree(ref.g) == 2) {
        PlanarEmbeddedGraph plane = ref;
        plane.outer_face = 0;
        return cycle_response(plane);
    }

    SpqrTree t = build_spqr(ref.g);
    PrunedTree pt = prune(t);
    auto cond = check_structural_conditions(pt, t);
    if (!cond.ok) return {false, std::nullopt, "structural condition " + cond.violated + " violated"};

    if (!is_flat(pt, t)) {
        // subdivision of a triconnected graph: unique planar embedding
        PlanarEmbeddedGraph pg;
        pg.g = ref.g;
        pg.rot = ref.rot;
        SolveResponse r = solve_urfe_planar_embedded(pg);
        r.witness = "rigid; " + r.witness;
        return r;
    }

    auto cand = unique_unit_length_embedding(ref, t);
    if (!cand) return {false, std::nullopt, "no candidate embedding"};
    auto spec = candidate_outer_rectangle(*cand, t);
    if (!spec) return {false, std::nullopt, "no candidate outer rectangle"};
    OuterPrescription presc = prescribe_outer_rectangle(cand->embedding, *spec);
    RunResult rr = rect_holes_run(cand->embedding, presc);
    if (rr.positive()) return {true, *rr.drawing(), "flat; " + cand->provenance};
    return {false, std::nullopt, "flat candidate rejected: " + rr.failure_label()};
}

}  // namespace unitrect
