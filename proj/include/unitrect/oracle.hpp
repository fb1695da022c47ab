#pragma once

#include <optional>
#include <vector>

#include "unitrect/drawing.hpp"
#include "unitrect/graph.hpp"
#include "unitrect/solve.hpp"

namespace unitrect {

// Exhaustive ground-truth engines for desk-size instances. Everything here
// is brute force on purpose: these are the reference answers the fast
// algorithms are tested against.

struct OracleOptions {
    int max_edges = 16;                // refusal bound for the backtracking search
    long max_results = 0;              // stop early after this many raw hits (0 = unlimited)
    bool require_embedding = false;    // rotations must match the input's
    bool require_outer = false;        // and the outer face (needs require_embedding)
    bool filter_inner_rect = false;
    bool filter_rect = false;          // all faces rectangles (geometric when !require_embedding)
    std::vector<std::optional<Point>> pinned;  // prescribed coordinates, empty = free
};

struct DrawingEnumeration {
    std::vector<GridDrawing> drawings;  // canonical, sorted, deduplicated
    bool canonicalized = false;         // false when pinned coordinates fixed the frame
    bool truncated = false;             // hit max_results before finishing
};

// Complete enumeration of unit-length grid drawings by rooted backtracking
// over edge directions. Throws StructuralError over the edge budget.
DrawingEnumeration enumerate_unit_drawings(const PlanarEmbeddedGraph& pg, const OracleOptions& opts);

// Canonical form under translation and the eight square symmetries.
GridDrawing canonical_drawing(const GridDrawing& d);

// Rotation system + outer face a planar unit drawing induces geometrically.
PlanarEmbeddedGraph derive_embedding(const Graph& g, const GridDrawing& d);

struct AngleEnumeration {
    // one assignment = angle units (k means k*90 degrees) per slot, slots
    // ordered as in build_rectangular_network
    std::vector<std::vector<int>> assignments;
};

AngleEnumeration enumerate_angle_assignments(const PlanarEmbeddedGraph& pg, bool rectangular,
                                             int max_faces = 9);

struct OracleDecision {
    bool positive = false;
    std::optional<GridDrawing> drawing;
    std::vector<GridDrawing> completions;  // fixed-outer mode: every completion found
};

// Reference decisions for the four unit-length problems and the
// rectangular-existence test.
OracleDecision decide_by_oracle(const PlanarEmbeddedGraph& pg, SolveMode mode, const OracleOptions& opts);

// Fixed-outer reference: all inner-rectangular completions of a prescribed
// outer drawing.
std::vector<GridDrawing> oracle_completions(const PlanarEmbeddedGraph& pg,
                                            const std::vector<std::optional<Point>>& outer, int max_edges);

}  // namespace unitrect
