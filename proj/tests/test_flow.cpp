#include <doctest.h>

#include "support.hpp"
#include "unitrect/flow.hpp"
#include "unitrect/oracle.hpp"

using namespace unitrect;
using namespace unitrect::testsupport;

namespace {

PlanarEmbeddedGraph plane_cycle(int n) {
    PlanarEmbeddedGraph pg = make_cycle(n);
    pg.outer_face = 1;  // either face works for a cycle
    FaceSet fs = faces(pg);
    // pick the outer deterministically as face of dart 0 reversed
    pg.outer_face = fs.face_of_dart[dart_reverse(0)];
    return pg;
}

PlanarEmbeddedGraph k4_plane() {
    PlanarEmbeddedGraph pg;
    pg.g.n = 4;
    EdgeId e01 = pg.g.add_edge(0, 1), e02 = pg.g.add_edge(0, 2), e03 = pg.g.add_edge(0, 3);
    EdgeId e12 = pg.g.add_edge(1, 2), e13 = pg.g.add_edge(1, 3), e23 = pg.g.add_edge(2, 3);
    pg.rot = {
        {make_dart(e01, false), make_dart(e03, false), make_dart(e02, false)},
        {make_dart(e12, false), make_dart(e13, false), make_dart(e01, true)},
        {make_dart(e02, true), make_dart(e23, false), make_dart(e12, true)},
        {make_dart(e23, true), make_dart(e03, true), make_dart(e13, true)},
    };
    pg.outer_face = 0;
    return pg;
}

}  // namespace

TEST_CASE("network arithmetic for cycles") {
    PlanarEmbeddedGraph c4 = plane_cycle(4);
    FlowNetwork n = build_rectangular_network(c4);
    long supply = 0, demand = 0;
    for (int s : n.supply) (s > 0 ? supply : demand) += s;
    CHECK(supply == 16);
    CHECK(demand == -16);  // 4 internal + 12 outer

    auto circ = feasible_flow(n);
    REQUIRE(circ.has_value());
    CHECK(circulation_valid(n, *circ));
    // unique by the bounds: inner arcs 1, outer arcs 3
    for (size_t i = 0; i < n.arcs.size(); ++i)
        CHECK(circ->flow[i] == (n.arcs[i].lower == 2 ? 3 : 1));
}

TEST_CASE("triangles are infeasible") {
    PlanarEmbeddedGraph c3 = plane_cycle(3);
    FlowNetwork n = build_rectangular_network(c3);
    CHECK_FALSE(feasible_flow(n).has_value());
    CHECK_FALSE(test_rectangular_fixed(c3));
}

TEST_CASE("C5 is feasible with one flat inner corner") {
    PlanarEmbeddedGraph c5 = plane_cycle(5);
    FlowNetwork n = build_rectangular_network(c5);
    auto circ = feasible_flow(n);
    REQUIRE(circ.has_value());
    CHECK(circulation_valid(n, *circ));
    int twos = 0;
    for (size_t i = 0; i < n.arcs.size(); ++i)
        if (n.arcs[i].lower == 1 && circ->flow[i] == 2) ++twos;
    CHECK(twos == 1);
    CHECK(test_rectangular_fixed(c5));
    // flipping the outer face is symmetric for a cycle
    PlanarEmbeddedGraph other = c5;
    other.outer_face = 1 - *c5.outer_face;
    CHECK(test_rectangular_fixed(other));
}

TEST_CASE("K4 admits no rectangular drawing") {
    PlanarEmbeddedGraph k4 = k4_plane();
    CHECK_FALSE(test_rectangular_fixed(k4));
    CHECK_FALSE(solve_rectangular(k4));
}

TEST_CASE("chorded square fails, grids pass") {
    // C4 with a chord: both internal faces are triangles
    PlanarEmbeddedGraph pg;
    pg.g.n = 4;
    EdgeId e01 = pg.g.add_edge(0, 1), e12 = pg.g.add_edge(1, 2), e23 = pg.g.add_edge(2, 3),
           e30 = pg.g.add_edge(3, 0), e02 = pg.g.add_edge(0, 2);
    pg.rot = {
        {make_dart(e01, false), make_dart(e02, false), make_dart(e30, true)},
        {make_dart(e12, false), make_dart(e01, true)},
        {make_dart(e23, false), make_dart(e02, true), make_dart(e12, true)},
        {make_dart(e30, false), make_dart(e23, true)},
    };
    FaceSet fs = faces(pg);
    for (FaceId f = 0; f < fs.count(); ++f)
        if (fs.walks[f].degree() == 4) pg.outer_face = f;
    CHECK_FALSE(test_rectangular_fixed(pg));

    PlanarEmbeddedGraph grid = make_grid(3, 3);
    CHECK(test_rectangular_fixed(grid));
    CHECK(solve_rectangular(grid));
}

TEST_CASE("theta 4,4,4 admits a non-unit rectangular drawing") {
    PlanarEmbeddedGraph theta = make_theta(4, 4, 4);
    bool flow_answer = solve_rectangular(theta);
    // reference: angle assignments over every candidate plane embedding
    OracleOptions opts;
    OracleDecision dec = decide_by_oracle(theta, SolveMode::Rect, opts);
    CHECK(flow_answer == dec.positive);
    CHECK(flow_answer);
}

TEST_CASE("flow feasibility equals angle-assignment existence") {
    std::vector<PlanarEmbeddedGraph> cases{plane_cycle(3), plane_cycle(4), plane_cycle(5),
                                           plane_cycle(6), make_grid(2, 3), make_grid(3, 3), k4_plane()};
    for (const auto& pg : cases) {
        bool flow = test_rectangular_fixed(pg);
        bool angles = !enumerate_angle_assignments(pg, true, 16).assignments.empty();
        CHECK(flow == angles);
    }
}

TEST_CASE("angle counts match the hand counts") {
    CHECK(enumerate_angle_assignments(plane_cycle(4), true).assignments.size() == 1);
    CHECK(enumerate_angle_assignments(plane_cycle(3), true).assignments.empty());
    CHECK(enumerate_angle_assignments(plane_cycle(5), true).assignments.size() == 5);
}
