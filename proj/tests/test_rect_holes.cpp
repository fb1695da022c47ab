#include <doctest.h>

#include <variant>

#include "support.hpp"
#include "unitrect/oracle.hpp"
#include "unitrect/rect_holes.hpp"

using namespace unitrect;
using namespace unitrect::testsupport;

namespace {

OuterPrescription pin_all(const GridDrawing& d) {
    OuterPrescription out(d.size());
    for (int v = 0; v < d.size(); ++v) out[v] = d.at(v);
    return out;
}

PlanarEmbeddedGraph with_outer_from(const PlanarEmbeddedGraph& pg, const GridDrawing& d) {
    PlanarEmbeddedGraph out = pg;
    FaceSet fs = faces(out);
    out.outer_face = geometric_outer_face(out, d, fs);
    return out;
}

}  // namespace

TEST_CASE("C4 with the unit square prescribed returns the identity") {
    PlanarEmbeddedGraph c4 = make_cycle(4);
    GridDrawing sq{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    c4 = with_outer_from(c4, sq);
    RunResult rr = rect_holes_run(c4, pin_all(sq));
    REQUIRE(rr.positive());
    CHECK(rr.drawing()->coords == sq.coords);
}

TEST_CASE("C6 as a 2x1 rectangle") {
    PlanarEmbeddedGraph c6 = make_cycle(6);
    GridDrawing rect{{{0, 0}, {1, 0}, {2, 0}, {2, 1}, {1, 1}, {0, 1}}};
    c6 = with_outer_from(c6, rect);
    RunStats stats;
    RunResult rr = rect_holes_run(c6, pin_all(rect), &stats);
    REQUIRE(rr.positive());
    CHECK(rr.drawing()->coords == rect.coords);
    CHECK(stats.iterations == 1);
}

TEST_CASE("two-squares graph with its natural rectangle") {
    GridDrawing coords;
    PlanarEmbeddedGraph pg = make_grid(2, 3, &coords);
    OuterPrescription outer(pg.g.n);
    FaceSet fs = faces(pg);
    for (Dart d : fs.walks[*pg.outer_face].darts) outer[dart_tail(pg.g, d)] = coords.at(dart_tail(pg.g, d));
    RunStats stats;
    RunResult rr = rect_holes_run(pg, outer, &stats);
    REQUIRE(rr.positive());
    CHECK(rr.drawing()->coords == coords.coords);
    CHECK(stats.iterations == 2);
    // complexity instrumentation: vertices considered at most once per
    // incident face
    for (Vertex v = 0; v < pg.g.n; ++v) CHECK(stats.vertex_considerations[v] <= 4);
}

TEST_CASE("transposed prescription for the two-squares graph fails C1") {
    PlanarEmbeddedGraph pg = make_grid(2, 3);
    // outer walk drawn as a 1x2 (tall) rectangle: the chord cannot fit
    OuterPrescription outer(pg.g.n);
    FaceSet fs = faces(pg);
    std::vector<Vertex> walk;
    for (Dart d : fs.walks[*pg.outer_face].darts) walk.push_back(dart_tail(pg.g, d));
    std::vector<Point> tall{{0, 0}, {0, 1}, {0, 2}, {1, 2}, {1, 1}, {1, 0}};
    // orient the tall rectangle along the walk starting at the walk's first
    // vertex; the walk is clockwise, as is this coordinate sequence
    for (size_t i = 0; i < walk.size(); ++i) outer[walk[i]] = tall[i];
    RunResult rr = rect_holes_run(pg, outer);
    CHECK_FALSE(rr.positive());
    CHECK(std::holds_alternative<FailC1>(rr.outcome));
}

TEST_CASE("pendant bridges are removed and keep their prescribed spot") {
    // C4 plus a pendant edge hanging into the outer face
    PlanarEmbeddedGraph pg;
    pg.g.n = 5;
    EdgeId e01 = pg.g.add_edge(0, 1), e12 = pg.g.add_edge(1, 2), e23 = pg.g.add_edge(2, 3),
           e30 = pg.g.add_edge(3, 0), e14 = pg.g.add_edge(1, 4);
    pg.rot = {
        {make_dart(e01, false), make_dart(e30, true)},
        {make_dart(e12, false), make_dart(e01, true), make_dart(e14, false)},
        {make_dart(e23, false), make_dart(e12, true)},
        {make_dart(e30, false), make_dart(e23, true)},
        {make_dart(e14, true)},
    };
    REQUIRE(euler_formula_holds(pg));
    GridDrawing d{{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {2, 0}}};
    pg = with_outer_from(pg, d);
    RunResult rr = rect_holes_run(pg, pin_all(d));
    REQUIRE(rr.positive());
    CHECK(rr.drawing()->coords == d.coords);
}

TEST_CASE("odd internal face rejects at preprocess") {
    // wheel: C4 plus a center joined to all four corners
    PlanarEmbeddedGraph pg;
    pg.g.n = 5;
    EdgeId e01 = pg.g.add_edge(0, 1), e12 = pg.g.add_edge(1, 2), e23 = pg.g.add_edge(2, 3),
           e30 = pg.g.add_edge(3, 0);
    EdgeId s0 = pg.g.add_edge(0, 4), s1 = pg.g.add_edge(1, 4), s2 = pg.g.add_edge(2, 4),
           s3 = pg.g.add_edge(3, 4);
    pg.rot = {
        {make_dart(e01, false), make_dart(s0, false), make_dart(e30, true)},
        {make_dart(e12, false), make_dart(s1, false), make_dart(e01, true)},
        {make_dart(e23, false), make_dart(s2, false), make_dart(e12, true)},
        {make_dart(e30, false), make_dart(s3, false), make_dart(e23, true)},
        {make_dart(s0, true), make_dart(s1, true), make_dart(s2, true), make_dart(s3, true)},
    };
    REQUIRE(euler_formula_holds(pg));
    FaceSet fs = faces(pg);
    for (FaceId f = 0; f < fs.count(); ++f)
        if (fs.walks[f].degree() == 4) pg.outer_face = f;
    REQUIRE(pg.outer_face.has_value());
    GridDrawing sq{{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {5, 5}}};
    OuterPrescription outer(pg.g.n);
    for (Vertex v = 0; v < 4; ++v) outer[v] = sq.at(v);
    RunResult rr = rect_holes_run(pg, outer);
    auto* rej = std::get_if<PreprocessReject>(&rr.outcome);
    REQUIRE(rej != nullptr);
    CHECK(rej->reason == PreprocessReject::Reason::OddCycle);
}

TEST_CASE("C8 prescribed as an L-tromino fails: the face is no rectangle") {
    PlanarEmbeddedGraph c8 = make_cycle(8);
    GridDrawing ell{{{0, 0}, {1, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}, {0, 1}}};
    c8 = with_outer_from(c8, ell);
    RunResult rr = rect_holes_run(c8, pin_all(ell));
    CHECK_FALSE(rr.positive());
    CHECK(std::holds_alternative<FailC1>(rr.outcome));
}

TEST_CASE("3x3 grid with the 2x2 square prescribed") {
    GridDrawing coords;
    PlanarEmbeddedGraph pg = make_grid(3, 3, &coords);
    OuterPrescription outer(pg.g.n);
    FaceSet fs = faces(pg);
    for (Dart d : fs.walks[*pg.outer_face].darts) outer[dart_tail(pg.g, d)] = coords.at(dart_tail(pg.g, d));
    RunResult rr = rect_holes_run(pg, outer);
    REQUIRE(rr.positive());
    CHECK(rr.drawing()->coords == coords.coords);
}

TEST_CASE("3x3 grid with a 3x1 prescription collides (C2)") {
    GridDrawing coords;
    PlanarEmbeddedGraph pg = make_grid(3, 3, &coords);
    FaceSet fs = faces(pg);
    std::vector<Vertex> walk;
    for (Dart d : fs.walks[*pg.outer_face].darts) walk.push_back(dart_tail(pg.g, d));
    REQUIRE(walk.size() == 8);
    // map the outer walk onto a 3x1 rectangle, clockwise starting at a corner
    std::vector<Point> flat{{0, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {3, 0}, {2, 0}, {1, 0}};
    // rotate so the walk starts at the host's bottom-left corner (vertex 0)
    int start = 0;
    while (walk[start] != 0) ++start;
    OuterPrescription outer(pg.g.n);
    for (size_t i = 0; i < walk.size(); ++i) outer[walk[(start + i) % walk.size()]] = flat[i];
    RunResult rr = rect_holes_run(pg, outer);
    CHECK_FALSE(rr.positive());
    CHECK(std::holds_alternative<FailC2>(rr.outcome));
}

TEST_CASE("prescription off the outer walk is rejected") {
    GridDrawing coords;
    PlanarEmbeddedGraph pg = make_grid(3, 3, &coords);
    RunResult rr = rect_holes_run(pg, pin_all(coords));  // pins the interior vertex too
    auto* rej = std::get_if<PreprocessReject>(&rr.outcome);
    REQUIRE(rej != nullptr);
}

TEST_CASE("mirrored prescription is rejected as embedding-inconsistent") {
    GridDrawing coords;
    PlanarEmbeddedGraph pg = make_grid(2, 3, &coords);
    FaceSet fs = faces(pg);
    OuterPrescription outer(pg.g.n);
    for (Dart d : fs.walks[*pg.outer_face].darts) {
        Vertex v = dart_tail(pg.g, d);
        outer[v] = Point{-coords.at(v).x, coords.at(v).y};  // mirror image
    }
    RunResult rr = rect_holes_run(pg, outer);
    auto* rej = std::get_if<PreprocessReject>(&rr.outcome);
    REQUIRE(rej != nullptr);
    CHECK(rej->reason == PreprocessReject::Reason::DegenerateOuter);
}

TEST_CASE("oracle equivalence on small instances") {
    // for every unit drawing of the outer walk, the run agrees with the
    // brute-force completion, including the drawing itself
    for (const auto& pg :
         {make_grid(2, 2), make_grid(2, 3), make_grid(3, 3), graph_from_cells({{0, 0}, {1, 0}, {1, 1}})}) {
        FaceSet fs = faces(pg);
        // outer-walk subgraph with its induced rotation
        std::vector<char> keep(pg.g.edge_count(), 0);
        for (Dart d : fs.walks[*pg.outer_face].darts) keep[dart_edge(d)] = 1;
        std::vector<int> vmap(pg.g.n, -1);
        std::vector<EdgeId> emap(pg.g.edge_count(), -1);
        std::vector<Vertex> back;
        PlanarEmbeddedGraph wpg;
        for (EdgeId e = 0; e < pg.g.edge_count(); ++e) {
            if (!keep[e]) continue;
            for (Vertex v : {pg.g.edges[e].first, pg.g.edges[e].second})
                if (vmap[v] == -1) {
                    vmap[v] = wpg.g.n++;
                    back.push_back(v);
                }
            emap[e] = wpg.g.add_edge(vmap[pg.g.edges[e].first], vmap[pg.g.edges[e].second]);
        }
        wpg.rot.assign(wpg.g.n, {});
        for (Vertex v = 0; v < pg.g.n; ++v) {
            if (vmap[v] == -1) continue;
            for (Dart d : pg.rot[v])
                if (keep[dart_edge(d)]) wpg.rot[vmap[v]].push_back(make_dart(emap[dart_edge(d)], d & 1));
        }
        OracleOptions wopts;
        wopts.max_edges = 24;
        auto polygons = enumerate_unit_drawings(wpg, wopts);
        int checked = 0;
        for (const auto& poly : polygons.drawings) {
            OuterPrescription outer(pg.g.n);
            for (Vertex v = 0; v < wpg.g.n; ++v) outer[back[v]] = poly.at(v);
            RunResult rr = rect_holes_run(pg, outer);
            auto completions = oracle_completions(pg, outer, 40);
            CHECK(rr.positive() == !completions.empty());
            if (rr.positive()) {
                REQUIRE(completions.size() == 1);
                CHECK(rr.drawing()->coords == completions[0].coords);
            }
            ++checked;
        }
        CHECK(checked > 0);
    }
}
