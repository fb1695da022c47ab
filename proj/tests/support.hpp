#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "unitrect/drawing.hpp"
#include "unitrect/graph.hpp"
#include "unitrect/oracle.hpp"

namespace unitrect::testsupport {

// cycle 0-1-...-(n-1)-0 with the canonical rotation of a closed curve
inline PlanarEmbeddedGraph make_cycle(int n) {
    PlanarEmbeddedGraph pg;
    pg.g.n = n;
    for (int i = 0; i < n; ++i) pg.g.add_edge(i, (i + 1) % n);
    pg.rot.assign(n, {});
    for (int i = 0; i < n; ++i) {
        EdgeId forward = i, backward = (i + n - 1) % n;
        pg.rot[i].push_back(make_dart(forward, false));
        pg.rot[i].push_back(make_dart(backward, true));
    }
    return pg;
}

// rows x cols vertex grid in its natural drawing; vertex r*cols + c sits at
// (c, r); rotation and outer face derived from the coordinates
inline PlanarEmbeddedGraph make_grid(int rows, int cols, GridDrawing* coords_out = nullptr) {
    Graph g(rows * cols);
    GridDrawing d;
    d.coords.resize(g.n);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            int v = r * cols + c;
            d.coords[v] = Point{c, r};
            if (c + 1 < cols) g.add_edge(v, v + 1);
            if (r + 1 < rows) g.add_edge(v, v + cols);
        }
    if (coords_out) *coords_out = d;
    return derive_embedding(g, d);
}

// two hubs joined by three internally disjoint paths of the given edge
// counts (each >= 1; at most one equal to 1)
inline PlanarEmbeddedGraph make_theta(int l1, int l2, int l3) {
    std::vector<int> lens{l1, l2, l3};
    PlanarEmbeddedGraph pg;
    Graph& g = pg.g;
    g.n = 2;
    const Vertex u = 0, v = 1;
    std::vector<EdgeId> first_edge(3), last_edge(3);
    for (int p = 0; p < 3; ++p) {
        Vertex prev = u;
        for (int i = 0; i + 1 < lens[p]; ++i) {
            Vertex w = g.n++;
            EdgeId e = g.add_edge(prev, w);
            if (i == 0) first_edge[p] = e;
            prev = w;
        }
        EdgeId e = g.add_edge(prev, v);
        if (lens[p] == 1) first_edge[p] = e;
        last_edge[p] = e;
    }
    pg.rot.assign(g.n, {});
    for (int p = 0; p < 3; ++p) pg.rot[u].push_back(make_dart(first_edge[p], false));
    for (int p = 2; p >= 0; --p) {
        EdgeId e = last_edge[p];
        pg.rot[v].push_back(make_dart(e, g.edges[e].second == v ? true : false));
    }
    // interior path vertices: the two incident darts in either order
    for (Vertex w = 2; w < g.n; ++w)
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            if (g.edges[e].first == w) pg.rot[w].push_back(make_dart(e, false));
            if (g.edges[e].second == w) pg.rot[w].push_back(make_dart(e, true));
        }
    return pg;
}

// union of unit cells of a cell grid; cells identified by (cx, cy)
inline PlanarEmbeddedGraph graph_from_cells(const std::set<std::pair<int, int>>& cells,
                                            GridDrawing* coords_out = nullptr) {
    std::set<std::pair<int, int>> points;
    std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> segs;
    for (auto [cx, cy] : cells) {
        std::pair<int, int> p00{cx, cy}, p10{cx + 1, cy}, p01{cx, cy + 1}, p11{cx + 1, cy + 1};
        for (auto p : {p00, p10, p01, p11}) points.insert(p);
        segs.insert({p00, p10});
        segs.insert({p00, p01});
        segs.insert({p10, p11});
        segs.insert({p01, p11});
    }
    std::vector<std::pair<int, int>> idx(points.begin(), points.end());
    auto vid = [&](std::pair<int, int> p) {
        return static_cast<int>(std::lower_bound(idx.begin(), idx.end(), p) - idx.begin());
    };
    Graph g(static_cast<int>(idx.size()));
    for (auto& [a, b] : segs) g.add_edge(vid(a), vid(b));
    GridDrawing d;
    d.coords.resize(g.n);
    for (int i = 0; i < g.n; ++i) d.coords[i] = Point{idx[i].first, idx[i].second};
    if (coords_out) *coords_out = d;
    return derive_embedding(g, d);
}

// connected edge-subgraphs of the host grid, rotation induced by the host;
// isolated vertices dropped, outer face = the face holding the host's
// unbounded region
inline std::optional<PlanarEmbeddedGraph> grid_subgraph(int rows, int cols,
                                                        const std::vector<char>& keep_edge) {
    GridDrawing host_coords;
    PlanarEmbeddedGraph host = make_grid(rows, cols, &host_coords);
    Graph g;
    std::vector<int> vmap(host.g.n, -1);
    std::vector<EdgeId> emap(host.g.edge_count(), -1);
    GridDrawing d;
    for (EdgeId e = 0; e < host.g.edge_count(); ++e) {
        if (!keep_edge[e]) continue;
        for (Vertex v : {host.g.edges[e].first, host.g.edges[e].second})
            if (vmap[v] == -1) {
                vmap[v] = g.n++;
                d.coords.push_back(host_coords.coords[v]);
            }
        emap[e] = g.add_edge(vmap[host.g.edges[e].first], vmap[host.g.edges[e].second]);
    }
    if (g.n == 0 || !is_connected(g)) return std::nullopt;
    return derive_embedding(g, d);
}

struct CorpusInstance {
    PlanarEmbeddedGraph pg;
    std::string name;
};

// >= 500 connected plane max-degree-4 graphs with <= max_faces internal
// faces: all cell subsets of a 3x3 cell grid plus seeded random edge
// subsets of the 4x4 vertex grid
inline std::vector<CorpusInstance> acceptance_corpus(int max_faces = 7, int want_random = 400,
                                                     unsigned seed = 20240901) {
    std::vector<CorpusInstance> out;
    // cell-based instances
    for (int mask = 1; mask < (1 << 9); ++mask) {
        std::set<std::pair<int, int>> cells;
        for (int b = 0; b < 9; ++b)
            if (mask & (1 << b)) cells.insert({b % 3, b / 3});
        PlanarEmbeddedGraph pg = graph_from_cells(cells);
        if (!is_connected(pg.g)) continue;
        FaceSet fs = faces(pg);
        if (fs.count() - 1 > max_faces) continue;
        out.push_back({std::move(pg), "cells" + std::to_string(mask)});
    }
    // random connected edge subsets of the 4x4 grid
    PlanarEmbeddedGraph host = make_grid(4, 4);
    const int m = host.g.edge_count();
    std::mt19937 rng(seed);
    int made = 0, guard = 0;
    while (made < want_random && guard++ < want_random * 50) {
        std::vector<char> keep(m, 0);
        int target = 3 + static_cast<int>(rng() % (m - 3));
        std::vector<int> ids(m);
        for (int i = 0; i < m; ++i) ids[i] = i;
        std::shuffle(ids.begin(), ids.end(), rng);
        for (int i = 0; i < target; ++i) keep[ids[i]] = 1;
        auto sub = grid_subgraph(4, 4, keep);
        if (!sub) continue;
        FaceSet fs = faces(*sub);
        if (fs.count() - 1 > max_faces) continue;
        out.push_back({std::move(*sub), "rand" + std::to_string(made)});
        ++made;
    }
    return out;
}

}  // namespace unitrect::testsupport
