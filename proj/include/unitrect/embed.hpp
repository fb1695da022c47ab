#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unitrect/drawing.hpp"
#include "unitrect/graph.hpp"
#include "unitrect/spqr.hpp"

namespace unitrect {

struct CandidateEmbedding {
    PlanarEmbeddedGraph embedding;  // outer face always set
    std::string provenance;
};

// Canonical encoding of a plane embedding (rotation lists rotated to the
// smallest dart, plus the outer walk); mirror_canonical_form folds
// reflections together.
std::string plane_form(const PlanarEmbeddedGraph& pg);
std::string mirror_canonical_form(const PlanarEmbeddedGraph& pg);
PlanarEmbeddedGraph mirrored(const PlanarEmbeddedGraph& pg);

// The single plane embedding (up to reflection) that any unit-length
// rectangular drawing of g must realize, or nullopt when a forced choice
// fails (which proves no such drawing exists). `ref` serves as the
// planarity witness for R-node skeleton rotations.
std::optional<CandidateEmbedding> unique_unit_length_embedding(const PlanarEmbeddedGraph& ref,
                                                               const SpqrTree& t);

// All plane embeddings (up to reflection) that a not-necessarily-unit
// rectangular drawing of a flat graph may realize: interior spine choices
// are forced, the two end nodes contribute at most two choices each.
std::vector<CandidateEmbedding> flat_candidate_embeddings(const PlanarEmbeddedGraph& ref,
                                                          const SpqrTree& t);

struct OuterRectangleSpec {
    Vertex u_r, v_r, v_l, u_l;  // corner vertices in clockwise order
    int width = 0;
    int height = 0;
    Vertex pole_u = -1, pole_v = -1;  // the separation pair the derivation used
    int straight_path_len = 0;
};

// Unique candidate rectangle for the outer face of a flat instance; the
// corner vertices fall out of the clockwise distances from the pole pair.
std::optional<OuterRectangleSpec> candidate_outer_rectangle(const CandidateEmbedding& cand,
                                                            const SpqrTree& t);

// Coordinates for the outer cycle realizing the spec: u_r at (width, height),
// walking the outer face walk clockwise.
std::vector<std::optional<Point>> prescribe_outer_rectangle(const PlanarEmbeddedGraph& pg,
                                                            const OuterRectangleSpec& spec);

// Every plane embedding of a biconnected graph, enumerated through the
// SPQR choice space (P-node orders x R-node mirrors x outer face).
// Throws StructuralError when the choice space exceeds `cap`.
std::vector<PlanarEmbeddedGraph> all_plane_embeddings(const PlanarEmbeddedGraph& ref, const SpqrTree& t,
                                                      long cap = 4096);

}  // namespace unitrect
