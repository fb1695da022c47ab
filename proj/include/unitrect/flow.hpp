#pragma once

#include <optional>
#include <vector>

#include "unitrect/graph.hpp"

namespace unitrect {

// Bipartite vertex -> face network with one arc per angle slot. Flow k on
// an arc encodes an angle of k * 90 degrees.
struct FlowNetwork {
    struct Arc {
        int from, to;  // node indices
        int lower, upper;
        Vertex vertex;  // the angle slot this arc carries
        FaceId face;
    };
    int node_count = 0;
    std::vector<int> supply;  // positive = source, negative = sink
    std::vector<Arc> arcs;

    int vertex_node(Vertex v) const { return v; }
    int face_node(int n_vertices, FaceId f) const { return n_vertices + f; }
};

struct Circulation {
    std::vector<int> flow;  // parallel to FlowNetwork::arcs
};

// Arcs to internal faces carry [1,2] (90 or 180 degrees), arcs to the
// outer face [2,3] (180 or 270). Requires max degree <= 4.
FlowNetwork build_rectangular_network(const PlanarEmbeddedGraph& pg);

// Integral feasible flow via the lower-bound elimination transform and a
// Dinic max-flow, or nullopt when infeasible.
std::optional<Circulation> feasible_flow(const FlowNetwork& n);

// Conservation + bound re-check, independent of the solver.
bool circulation_valid(const FlowNetwork& n, const Circulation& c);

bool test_rectangular_fixed(const PlanarEmbeddedGraph& pg);

// Existence of a (not necessarily unit-length) rectangular drawing in the
// variable-embedding setting.
bool solve_rectangular(const PlanarEmbeddedGraph& ref);

}  // namespace unitrect
