#include <doctest.h>

#include <set>

#include "support.hpp"
#include "unitrect/embed.hpp"
#include "unitrect/oracle.hpp"
#include "unitrect/solve.hpp"
#include "unitrect/spqr.hpp"

using namespace unitrect;
using namespace unitrect::testsupport;

namespace {

// two 3x3 grid blocks joined by a top and a bottom chain; flat with an
// R - S - R spine and two reflection choices per end
PlanarEmbeddedGraph two_grid_blocks(GridDrawing* coords_out = nullptr) {
    // left block occupies [0,2]^2, right block [3,5]x[0,2]
    Graph g(18);
    GridDrawing d;
    d.coords.resize(18);
    auto at = [&](int v, int x, int y) { d.coords[v] = Point{x, y}; };
    int id = 0;
    std::vector<std::vector<int>> left(3, std::vector<int>(3)), right(3, std::vector<int>(3));
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            left[r][c] = id;
            at(id++, c, r);
        }
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            right[r][c] = id;
            at(id++, 3 + c, r);
        }
    for (auto& block : {left, right})
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                if (c + 1 < 3) g.add_edge(block[r][c], block[r][c + 1]);
                if (r + 1 < 3) g.add_edge(block[r][c], block[r + 1][c]);
            }
    g.add_edge(left[0][2], right[0][0]);  // bottom chain
    g.add_edge(left[2][2], right[2][0]);  // top chain
    if (coords_out) *coords_out = d;
    return derive_embedding(g, d);
}

}  // namespace

TEST_CASE("theta 2,4,4: the short path is forced into the middle") {
    PlanarEmbeddedGraph theta = make_theta(2, 4, 4);
    SpqrTree t = build_spqr(theta.g);
    auto cand = unique_unit_length_embedding(theta, t);
    REQUIRE(cand.has_value());
    FaceSet fs = faces(cand->embedding);
    REQUIRE(cand->embedding.outer_face.has_value());
    CHECK(fs.walks[*cand->embedding.outer_face].degree() == 8);  // the two long paths

    // the oracle agrees: all unit rectangular drawings share this embedding
    OracleOptions opts;
    opts.filter_rect = true;
    auto de = enumerate_unit_drawings(theta, opts);
    REQUIRE_FALSE(de.drawings.empty());
    std::set<std::string> classes;
    for (const auto& d : de.drawings) classes.insert(mirror_canonical_form(derive_embedding(theta.g, d)));
    CHECK(classes.size() == 1);
    CHECK(*classes.begin() == mirror_canonical_form(cand->embedding));
}

TEST_CASE("theta 4,4,4 has no forced unit embedding") {
    PlanarEmbeddedGraph theta = make_theta(4, 4, 4);
    SpqrTree t = build_spqr(theta.g);
    CHECK_FALSE(unique_unit_length_embedding(theta, t).has_value());
    OracleOptions opts;
    opts.filter_rect = true;
    CHECK(enumerate_unit_drawings(theta, opts).drawings.empty());
}

TEST_CASE("flat candidates for a single P-node: three embeddings") {
    PlanarEmbeddedGraph theta = make_theta(2, 3, 4);
    SpqrTree t = build_spqr(theta.g);
    auto cands = flat_candidate_embeddings(theta, t);
    CHECK(cands.size() == 3);
    std::set<std::string> forms;
    for (const auto& c : cands) {
        CHECK(euler_formula_holds(c.embedding));
        forms.insert(mirror_canonical_form(c.embedding));
    }
    CHECK(forms.size() == cands.size());
}

TEST_CASE("flat candidates for the two-block caterpillar: at most four") {
    GridDrawing coords;
    PlanarEmbeddedGraph pg = two_grid_blocks(&coords);
    SpqrTree t = build_spqr(pg.g);
    PrunedTree pt = prune(t);
    REQUIRE(check_structural_conditions(pt, t).ok);
    REQUIRE(is_flat(pt, t));
    auto cands = flat_candidate_embeddings(pg, t);
    CHECK(cands.size() >= 1);
    CHECK(cands.size() <= 4);
    // the natural embedding is among them
    std::set<std::string> forms;
    for (const auto& c : cands) forms.insert(mirror_canonical_form(c.embedding));
    CHECK(forms.count(mirror_canonical_form(pg)) == 1);

    // unit-forced choice exists and supports the natural drawing
    auto unique = unique_unit_length_embedding(pg, t);
    REQUIRE(unique.has_value());
    CHECK(mirror_canonical_form(unique->embedding) == mirror_canonical_form(pg));
}

TEST_CASE("2x3 grid outer rectangle: corners and dimensions") {
    PlanarEmbeddedGraph pg = make_grid(2, 3);
    SpqrTree t = build_spqr(pg.g);
    auto cand = unique_unit_length_embedding(pg, t);
    REQUIRE(cand.has_value());
    auto spec = candidate_outer_rectangle(*cand, t);
    REQUIRE(spec.has_value());
    CHECK(spec->width == 2);
    CHECK(spec->height == 1);
    CHECK(spec->straight_path_len == 1);
    // the four corners are exactly the grid's corner vertices
    std::set<Vertex> corners{spec->u_r, spec->v_r, spec->v_l, spec->u_l};
    CHECK(corners == std::set<Vertex>{0, 2, 3, 5});
}

TEST_CASE("theta outer rectangles") {
    {
        PlanarEmbeddedGraph theta = make_theta(2, 4, 4);
        SpqrTree t = build_spqr(theta.g);
        auto cand = unique_unit_length_embedding(theta, t);
        REQUIRE(cand.has_value());
        auto spec = candidate_outer_rectangle(*cand, t);
        REQUIRE(spec.has_value());
        CHECK(spec->height == 2);
        CHECK(spec->width == 2);
    }
    {
        PlanarEmbeddedGraph theta = make_theta(2, 6, 6);
        SpqrTree t = build_spqr(theta.g);
        auto cand = unique_unit_length_embedding(theta, t);
        REQUIRE(cand.has_value());
        auto spec = candidate_outer_rectangle(*cand, t);
        REQUIRE(spec.has_value());
        CHECK(spec->height == 2);
        CHECK(spec->width == 4);
    }
}

TEST_CASE("corner distance formulas re-derived") {
    PlanarEmbeddedGraph pg = make_grid(2, 3);
    SpqrTree t = build_spqr(pg.g);
    auto cand = unique_unit_length_embedding(pg, t);
    REQUIRE(cand.has_value());
    auto spec = candidate_outer_rectangle(*cand, t);
    REQUIRE(spec.has_value());
    FaceSet fs = faces(cand->embedding);
    const FaceWalk& co = fs.walks[*cand->embedding.outer_face];
    const int len = co.degree();
    auto pos_of = [&](Vertex v) {
        for (int i = 0; i < len; ++i)
            if (dart_tail(cand->embedding.g, co.darts[i]) == v) return i;
        return -1;
    };
    int pu = pos_of(spec->pole_u), pv = pos_of(spec->pole_v);
    int r = ((pv - pu) % len + len) % len;
    int l = len - r;
    int p = spec->straight_path_len;
    auto at_cw = [&](int dist) { return dart_tail(cand->embedding.g, co.darts[(pu + dist) % len]); };
    CHECK(spec->u_r == at_cw((r - p) / 2));
    CHECK(spec->v_r == at_cw((r + p) / 2));
    CHECK(spec->v_l == at_cw(r + (l - p) / 2));
    CHECK(spec->u_l == at_cw(r + (l + p) / 2));
}

TEST_CASE("mirror canonicalization identifies reflections") {
    PlanarEmbeddedGraph pg = make_grid(2, 3);
    PlanarEmbeddedGraph m = mirrored(pg);
    CHECK(plane_form(pg) != plane_form(m));
    CHECK(mirror_canonical_form(pg) == mirror_canonical_form(m));
    PlanarEmbeddedGraph mm = mirrored(m);
    CHECK(plane_form(pg) == plane_form(mm));
}

TEST_CASE("all plane embeddings of a theta graph") {
    PlanarEmbeddedGraph theta = make_theta(2, 3, 4);
    SpqrTree t = build_spqr(theta.g);
    auto all = all_plane_embeddings(theta, t);
    // two planar embeddings (mirror pair), three faces each
    CHECK(all.size() == 6);
    for (const auto& pg : all) CHECK(euler_formula_holds(pg));
}
