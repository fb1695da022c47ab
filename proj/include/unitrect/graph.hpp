#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace unitrect {

using Vertex = int;
using EdgeId = int;
using FaceId = int;

// A dart is one of the two directed sides of an edge, encoded as
// 2*edge + bit. Bit 0 runs first->second, bit 1 runs second->first.
using Dart = int;

struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

// Undirected multigraph over dense vertex indices. Parallel edges are
// allowed (SPQR skeletons need them), self-loops are not.
struct Graph {
    int n = 0;
    std::vector<std::pair<Vertex, Vertex>> edges;

    Graph() = default;
    explicit Graph(int vertex_count) : n(vertex_count) {}
    Graph(int vertex_count, std::vector<std::pair<Vertex, Vertex>> edge_list)
        : n(vertex_count), edges(std::move(edge_list)) {
        validate();
    }

    EdgeId add_edge(Vertex u, Vertex v) {
        if (u == v) throw StructuralError("self-loop");
        if (u < 0 || v < 0 || u >= n || v >= n) throw StructuralError("edge endpoint out of range");
        edges.emplace_back(u, v);
        return static_cast<EdgeId>(edges.size()) - 1;
    }

    int edge_count() const { return static_cast<int>(edges.size()); }

    void validate() const {
        for (const auto& [u, v] : edges) {
            if (u == v) throw StructuralError("self-loop");
            if (u < 0 || v < 0 || u >= n || v >= n) throw StructuralError("edge endpoint out of range");
        }
    }

    std::vector<int> degrees() const {
        std::vector<int> deg(n, 0);
        for (const auto& [u, v] : edges) {
            ++deg[u];
            ++deg[v];
        }
        return deg;
    }

    bool has_multi_edge() const;
};

inline Dart make_dart(EdgeId e, bool from_second) { return 2 * e + (from_second ? 1 : 0); }
inline EdgeId dart_edge(Dart d) { return d >> 1; }
inline Dart dart_reverse(Dart d) { return d ^ 1; }
inline Vertex dart_tail(const Graph& g, Dart d) {
    const auto& e = g.edges[d >> 1];
    return (d & 1) ? e.second : e.first;
}
inline Vertex dart_head(const Graph& g, Dart d) {
    const auto& e = g.edges[d >> 1];
    return (d & 1) ? e.first : e.second;
}

// One face of an embedding: the cyclic sequence of darts that have this
// face on their left. degree() counts dart occurrences, i.e. edge sides.
struct FaceWalk {
    std::vector<Dart> darts;
    int degree() const { return static_cast<int>(darts.size()); }
};

struct FaceSet {
    std::vector<FaceWalk> walks;
    std::vector<FaceId> face_of_dart;  // dart -> face id
    std::vector<int> pos_of_dart;      // dart -> index inside its walk

    int count() const { return static_cast<int>(walks.size()); }
};

// A graph plus a rotation system: rot[v] lists the darts with tail v in
// counter-clockwise order. outer_face optionally names a face walk and
// turns the planar embedding into a plane embedding.
struct PlanarEmbeddedGraph {
    Graph g;
    std::vector<std::vector<Dart>> rot;
    std::optional<FaceId> outer_face;

    void validate_rotation() const;
};

// Face extraction by the next-dart rule: follow sigma(reverse(d)).
// Throws StructuralError on a malformed rotation.
FaceSet faces(const PlanarEmbeddedGraph& pg);

bool is_connected(const Graph& g);
bool is_biconnected(const Graph& g);

struct BlockDecomposition {
    std::vector<EdgeId> bridges;
    std::vector<std::vector<EdgeId>> blocks;  // each block as an edge list
};

BlockDecomposition bridges_and_blocks(const Graph& g);

int max_degree(const Graph& g);

// True iff the rotation system has genus zero, i.e. every connected
// component satisfies V - E + F = 2.
bool euler_formula_holds(const PlanarEmbeddedGraph& pg);

}  // namespace unitrect
