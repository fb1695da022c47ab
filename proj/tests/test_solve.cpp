#include <doctest.h>

#include <numeric>
#include <random>

#include "support.hpp"
#include "unitrect/oracle.hpp"
#include "unitrect/solve.hpp"

using namespace unitrect;
using namespace unitrect::testsupport;

namespace {

void check_positive_drawing(const SolveResponse& r, const PlanarEmbeddedGraph& pg, bool rectangular) {
    REQUIRE(r.positive);
    REQUIRE(r.drawing.has_value());
    PlanarEmbeddedGraph frame = derive_embedding(pg.g, *r.drawing);
    Verdict v = rectangular ? check_rectangular(frame, *r.drawing) : check_inner_rectangular(frame, *r.drawing);
    CHECK(v.ok());
}

PlanarEmbeddedGraph relabeled(const PlanarEmbeddedGraph& pg, const std::vector<int>& perm) {
    PlanarEmbeddedGraph out;
    out.g.n = pg.g.n;
    for (auto [u, v] : pg.g.edges) out.g.add_edge(perm[u], perm[v]);
    out.rot.assign(pg.g.n, {});
    for (Vertex v = 0; v < pg.g.n; ++v)
        for (Dart d : pg.rot[v]) {
            EdgeId e = dart_edge(d);
            bool from_second = perm[dart_tail(pg.g, d)] == out.g.edges[e].second &&
                               out.g.edges[e].first != out.g.edges[e].second;
            out.rot[perm[v]].push_back(make_dart(e, from_second));
        }
    return out;
}

}  // namespace

TEST_CASE("URFE on the 3x3 grid finds the 2x2 layout") {
    PlanarEmbeddedGraph pg = make_grid(3, 3);
    SolveResponse r = solve_urfe_plane(pg);
    check_positive_drawing(r, pg, true);
    GridDrawing canon = canonical_drawing(*r.drawing);
    GridDrawing expected;
    PlanarEmbeddedGraph host = make_grid(3, 3, &expected);
    CHECK(canon.coords == canonical_drawing(expected).coords);
}

TEST_CASE("cycles across the solver modes") {
    PlanarEmbeddedGraph c4 = make_cycle(4);
    c4.outer_face = 0;
    SolveResponse r = solve_urfe_plane(c4);
    check_positive_drawing(r, c4, true);
    PlanarEmbeddedGraph c5 = make_cycle(5);
    c5.outer_face = 0;
    CHECK_FALSE(solve_urfe_plane(c5).positive);
}

TEST_CASE("URFE planar-embedded picks the unique maximum face") {
    SolveResponse r = solve_urfe_planar_embedded(make_grid(3, 3));
    check_positive_drawing(r, make_grid(3, 3), true);

    // two-squares graph: faces 4, 4, 6; the hexagon is forced outside
    SolveResponse r2 = solve_urfe_planar_embedded(make_grid(2, 3));
    check_positive_drawing(r2, make_grid(2, 3), true);

    PlanarEmbeddedGraph c6 = make_cycle(6);
    c6.outer_face.reset();
    CHECK(solve_urfe_planar_embedded(c6).positive);
}

TEST_CASE("UR examples") {
    SolveResponse r = solve_ur(make_theta(2, 4, 4));
    check_positive_drawing(r, make_theta(2, 4, 4), true);

    CHECK_FALSE(solve_ur(make_theta(4, 4, 4)).positive);

    SolveResponse g = solve_ur(make_grid(3, 3));
    check_positive_drawing(g, make_grid(3, 3), true);

    CHECK(solve_ur(make_cycle(6)).positive);
    CHECK_FALSE(solve_ur(make_cycle(5)).positive);
}

TEST_CASE("plus pentomino: inner-rectangular yes, rectangular no") {
    GridDrawing coords;
    PlanarEmbeddedGraph plus = graph_from_cells({{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}}, &coords);
    // its four arm cells are double corner faces, but no rectangle fits
    CHECK_FALSE(solve_urfe_plane(plus).positive);
    OracleOptions opts;
    opts.max_edges = 48;
    CHECK_FALSE(decide_by_oracle(plus, SolveMode::UrfePlane, opts).positive);

    // with the plus-shaped boundary prescribed the completion exists
    OuterPrescription outer(plus.g.n);
    FaceSet fs = faces(plus);
    for (Dart d : fs.walks[*plus.outer_face].darts) outer[dart_tail(plus.g, d)] = coords.at(dart_tail(plus.g, d));
    SolveResponse fixed = solve_uirfe_fixed_outer(plus, outer);
    REQUIRE(fixed.positive);
    CHECK(fixed.drawing->coords == coords.coords);
}

TEST_CASE("1-tall ladders ride the double-corner-face shortcut") {
    for (int k = 3; k <= 5; ++k) {
        PlanarEmbeddedGraph ladder = make_grid(2, k);
        SolveResponse r = solve_urfe_plane(ladder);
        check_positive_drawing(r, ladder, true);
        CHECK(r.witness == "forced corner pair");
    }
}

TEST_CASE("fast path and general path agree") {
    auto instances = acceptance_corpus(5, 40, 99);
    int compared = 0;
    for (const auto& inst : instances) {
        if (compared > 60) break;
        FaceSet fs = faces(inst.pg);
        int max_internal = 0;
        for (FaceId f = 0; f < fs.count(); ++f)
            if (f != *inst.pg.outer_face) max_internal = std::max(max_internal, fs.walks[f].degree());
        if (max_internal > 6) continue;
        SolveResponse fast = solve_urfe_plane_impl(inst.pg, false);
        SolveResponse gen = solve_urfe_plane_impl(inst.pg, true);
        CHECK(fast.positive == gen.positive);
        ++compared;
    }
    CHECK(compared > 10);
}

TEST_CASE("solve_ur is invariant under vertex relabeling") {
    PlanarEmbeddedGraph theta = make_theta(2, 4, 4);
    std::vector<int> perm(theta.g.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(perm.begin(), perm.end(), rng);
        PlanarEmbeddedGraph shuffled = relabeled(theta, perm);
        REQUIRE(euler_formula_holds(shuffled));
        CHECK(solve_ur(shuffled).positive == solve_ur(theta).positive);
    }
}

TEST_CASE("non-biconnected and degenerate inputs are rejected") {
    Graph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    PlanarEmbeddedGraph pg;
    pg.g = path;
    pg.rot = {{make_dart(0, false)}, {make_dart(0, true), make_dart(1, false)}, {make_dart(1, true)}};
    CHECK_FALSE(solve_ur(pg).positive);
    pg.outer_face = 0;
    CHECK_FALSE(solve_urfe_plane(pg).positive);
}
