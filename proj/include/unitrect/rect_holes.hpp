#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "unitrect/drawing.hpp"
#include "unitrect/graph.hpp"

namespace unitrect {

// Coordinates prescribed for the vertices on the outer walk; all other
// entries stay empty.
using OuterPrescription = std::vector<std::optional<Point>>;

struct FailC1 {
    Vertex vertex;
    std::optional<Point> old_coord;  // empty when the placement is impossible outright
    Point new_coord;
};

struct FailC2 {
    Vertex vertex_a;
    Vertex vertex_b;
    Point point;
};

struct PreprocessReject {
    enum class Reason { OddCycle, NonUnitOuter, DegenerateOuter, NotConnected, MultiEdge } reason;
    std::string detail;
};

struct RunResult {
    std::variant<GridDrawing, FailC1, FailC2, PreprocessReject> outcome;

    bool positive() const { return std::holds_alternative<GridDrawing>(outcome); }
    const GridDrawing* drawing() const { return std::get_if<GridDrawing>(&outcome); }
    std::string failure_label() const;
};

// Touch counters backing the linear-time argument: a vertex is considered
// at most once per incident face, an edge a constant number of times.
struct RunStats {
    std::vector<int> vertex_considerations;
    std::vector<int> edge_touches;
    int iterations = 0;
};

// Decides whether g admits an embedding-preserving unit-length
// inner-rectangular drawing whose outer walk is drawn as prescribed, and
// constructs the (unique) drawing if so.
RunResult rect_holes_run(const PlanarEmbeddedGraph& pg, const OuterPrescription& outer,
                         RunStats* stats = nullptr);

// Exposed for white-box tests of the Retrieve step: given live degrees and
// bucket state the step either picks a face or fails with C2.
namespace rect_holes_detail {

struct Engine;

}  // namespace rect_holes_detail

}  // namespace unitrect
