#pragma once

#include <string>
#include <vector>

#include "unitrect/graph.hpp"

namespace unitrect {

enum class NodeKind { S, P, Q, R };

const char* node_kind_name(NodeKind k);

struct SkelEdge {
    Vertex a = -1;
    Vertex b = -1;
    bool is_virtual = false;
    EdgeId real_id = -1;  // original edge when real
    int twin_node = -1;   // partner node when virtual
    int twin_slot = -1;   // edge index inside the partner's skeleton
};

struct SpqrNode {
    NodeKind kind = NodeKind::S;
    std::vector<SkelEdge> edges;
    std::vector<Vertex> vertices;  // sorted, distinct
};

// Canonical SPQR-tree: every real edge sits in its own Q-node, S-node
// skeletons are cycles, P-nodes are bundles of >= 3 virtual edges,
// R-node skeletons are simple triconnected graphs of virtual edges.
struct SpqrTree {
    Graph original;
    std::vector<SpqrNode> nodes;

    std::vector<std::vector<int>> adjacency() const;  // node -> neighbor node ids
    int node_count() const { return static_cast<int>(nodes.size()); }
};

// Repeated split-pair decomposition followed by S-node merging. Quadratic;
// fine at desk scale. Requires a biconnected input with >= 3 edges.
SpqrTree build_spqr(const Graph& g);

struct Expansion {
    Vertex attach_a = -1;
    Vertex attach_b = -1;
    std::vector<EdgeId> edges;  // original edge ids on the far side of the arc

    int length() const { return static_cast<int>(edges.size()); }
};

// Subgraph of G represented by the virtual edge `slot` of node `node`,
// i.e. everything on the twin's side of the arc.
Expansion expansion_graph(const SpqrTree& t, int node, int slot);

// The expansion as a Graph over the original vertex indices.
Graph expansion_as_graph(const SpqrTree& t, const Expansion& e);

// True iff the expansion is a simple path between the attachments.
bool expansion_is_path(const SpqrTree& t, const Expansion& e);

struct PrunedTree {
    std::vector<int> node_ids;            // indices into SpqrTree::nodes (non-Q)
    std::vector<std::vector<int>> adj;    // in pruned index space
    bool caterpillar = false;
    std::vector<int> spine;               // pruned indices; single node allowed

    int index_of(int node_id) const;
};

PrunedTree prune(const SpqrTree& t);

struct StructuralReport {
    bool ok = true;
    std::string violated;  // "caterpillar", "i".."v"
    int node_id = -1;      // offending SPQR node when applicable

    explicit operator bool() const { return ok; }
};

// The caterpillar predicate: conditions (i)-(v) that every graph with a
// rectangular drawing must satisfy.
StructuralReport check_structural_conditions(const PrunedTree& pt, const SpqrTree& t);

bool is_flat(const PrunedTree& pt, const SpqrTree& t);

}  // namespace unitrect
