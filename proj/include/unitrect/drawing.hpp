#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unitrect/graph.hpp"

namespace unitrect {

struct Point {
    int x = 0;
    int y = 0;
    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;
};

inline std::int64_t point_key(Point p) {
    return (static_cast<std::int64_t>(p.x) << 32) ^ static_cast<std::uint32_t>(p.y);
}

// Integer grid coordinates per vertex; the certificate object every
// decider produces or consumes.
struct GridDrawing {
    std::vector<Point> coords;

    Point at(Vertex v) const { return coords[v]; }
    int size() const { return static_cast<int>(coords.size()); }
};

enum class FailureKind {
    NonUnitEdge,
    CoincidentVertices,
    RotationMismatch,
    OuterFaceMismatch,
    NonRectangularFace,
    OddCycle,
    NotBiconnected,
    DanglingBridge,
};

const char* failure_kind_name(FailureKind k);

struct Failure {
    FailureKind kind;
    // whichever of these applies: an edge, a vertex pair, a face
    std::optional<EdgeId> edge;
    std::optional<Vertex> vertex_a;
    std::optional<Vertex> vertex_b;
    std::optional<FaceId> face;
    std::string detail;
};

struct Verdict {
    std::optional<Failure> failure;
    bool ok() const { return !failure.has_value(); }
    static Verdict pass() { return {}; }
    static Verdict fail(Failure f) { return Verdict{std::move(f)}; }
};

Verdict check_unit_length(const Graph& g, const GridDrawing& d);
Verdict check_planar_grid(const Graph& g, const GridDrawing& d);
Verdict check_embedding_preserving(const PlanarEmbeddedGraph& pg, const GridDrawing& d);
Verdict check_inner_rectangular(const PlanarEmbeddedGraph& pg, const GridDrawing& d);
Verdict check_rectangular(const PlanarEmbeddedGraph& pg, const GridDrawing& d);
Verdict even_faces_check(const PlanarEmbeddedGraph& pg);

// Vertex with minimum x, ties broken by minimum y. In a planar unit grid
// drawing it has degree <= 2 and identifies the unbounded face.
Vertex extreme_vertex(const GridDrawing& d);

// Face of the embedding that the drawing places as the unbounded region.
// Requires unit length + distinct coordinates.
FaceId geometric_outer_face(const PlanarEmbeddedGraph& pg, const GridDrawing& d, const FaceSet& fs);

}  // namespace unitrect
