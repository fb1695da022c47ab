#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unitrect/drawing.hpp"
#include "unitrect/graph.hpp"

namespace unitrect {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Graph JSON: {"n": int, "adj": [[ccw neighbor ids] per vertex],
// "outer": [u, v] | null}. `outer` names the face left of the dart u->v.
PlanarEmbeddedGraph parse_graph_json(const std::string& text);
std::string graph_to_json(const PlanarEmbeddedGraph& pg);

// Drawing JSON: {"coords": [[x, y] | null per vertex]}. Full drawings
// reject nulls; prescriptions keep them.
GridDrawing parse_drawing_json(const std::string& text, int expected_n);
std::vector<std::optional<Point>> parse_prescription_json(const std::string& text, int expected_n);
std::string drawing_to_json(const GridDrawing& d);

// Deterministic SVG, mathematical y-orientation, one line per edge and one
// labeled circle per vertex.
std::string render_svg(const PlanarEmbeddedGraph& pg, const GridDrawing& d, int scale = 40);

}  // namespace unitrect
