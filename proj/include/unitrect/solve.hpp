#pragma once

#include <optional>
#include <string>

#include "unitrect/drawing.hpp"
#include "unitrect/graph.hpp"
#include "unitrect/rect_holes.hpp"

namespace unitrect {

enum class SolveMode { UirfeFixedOuter, UrfePlane, UrfePlanarEmbedded, Ur, Rect };

struct SolveResponse {
    bool positive = false;
    std::optional<GridDrawing> drawing;
    std::string witness;  // chosen embedding / outer rectangle / failure note
};

// Theorem-3 wrapper: prescribed outer drawing, single rect-holes run.
SolveResponse solve_uirfe_fixed_outer(const PlanarEmbeddedGraph& pg, const OuterPrescription& outer);

// Theorem 4: plane graph, outer face fixed but its drawing free.
SolveResponse solve_urfe_plane(const PlanarEmbeddedGraph& pg);

// Internal knob so tests can compare the degree-<=6 fast path with the
// general quadratic enumeration.
SolveResponse solve_urfe_plane_impl(const PlanarEmbeddedGraph& pg, bool force_general);

// Theorem 5: planar embedded graph, outer face free.
SolveResponse solve_urfe_planar_embedded(const PlanarEmbeddedGraph& pg);

// Theorem 6: variable embedding. The rotation of `ref` only witnesses
// planarity; the solver derives the embedding itself.
SolveResponse solve_ur(const PlanarEmbeddedGraph& ref);

}  // namespace unitrect
