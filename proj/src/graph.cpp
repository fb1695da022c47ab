#include "unitrect/graph.hpp"

#include <algorithm>
#include <numeric>

namespace unitrect {

bool Graph::has_multi_edge() const {
    std::vector<std::pair<Vertex, Vertex>> norm;
    norm.reserve(edges.size());
    for (auto [u, v] : edges) norm.emplace_back(std::min(u, v), std::max(u, v));
    std::sort(norm.begin(), norm.end());
    return std::adjacent_find(norm.begin(), norm.end()) != norm.end();
}

void PlanarEmbeddedGraph::validate_rotation() const {
    const int m = g.edge_count();
    if (static_cast<int>(rot.size()) != g.n) throw StructuralError("rotation size != vertex count");
    std::vector<char> seen(2 * m, 0);
    for (Vertex v = 0; v < g.n; ++v) {
        for (Dart d : rot[v]) {
            if (d < 0 || d >= 2 * m) throw StructuralError("rotation contains invalid dart");
            if (dart_tail(g, d) != v) throw StructuralError("dart listed at wrong vertex");
            if (seen[d]) throw StructuralError("dart duplicated in rotation");
            seen[d] = 1;
        }
    }
    for (int d = 0; d < 2 * m; ++d)
        if (!seen[d]) throw StructuralError("dart missing from rotation");
}

FaceSet faces(const PlanarEmbeddedGraph& pg) {
    pg.validate_rotation();
    const Graph& g = pg.g;
    const int m = g.edge_count();

    // next dart of the face to the LEFT of d: the clockwise-next dart
    // around d's head, i.e. the rotation predecessor of reverse(d)
    std::vector<Dart> succ(2 * m, -1);
    for (Vertex v = 0; v < g.n; ++v) {
        const auto& r = pg.rot[v];
        const int k = static_cast<int>(r.size());
        for (int i = 0; i < k; ++i) succ[r[i]] = r[(i + k - 1) % k];
    }

    FaceSet fs;
    fs.face_of_dart.assign(2 * m, -1);
    fs.pos_of_dart.assign(2 * m, -1);
    for (int d0 = 0; d0 < 2 * m; ++d0) {
        if (fs.face_of_dart[d0] != -1) continue;
        FaceWalk walk;
        const FaceId id = fs.count();
        Dart d = d0;
        do {
            fs.face_of_dart[d] = id;
            fs.pos_of_dart[d] = walk.degree();
            walk.darts.push_back(d);
            d = succ[dart_reverse(d)];
        } while (d != d0);
        fs.walks.push_back(std::move(walk));
    }

    if (pg.outer_face && (*pg.outer_face < 0 || *pg.outer_face >= fs.count()))
        throw StructuralError("outer face id out of range");
    return fs;
}

namespace {

std::vector<std::vector<std::pair<Vertex, EdgeId>>> adjacency(const Graph& g) {
    std::vector<std::vector<std::pair<Vertex, EdgeId>>> adj(g.n);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edges[e];
        adj[u].emplace_back(v, e);
        adj[v].emplace_back(u, e);
    }
    return adj;
}

}  // namespace

bool is_connected(const Graph& g) {
    if (g.n == 0) return true;
    auto adj = adjacency(g);
    std::vector<char> vis(g.n, 0);
    std::vector<Vertex> stack{0};
    vis[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        Vertex u = stack.back();
        stack.pop_back();
        for (auto [w, e] : adj[u]) {
            (void)e;
            if (!vis[w]) {
                vis[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == g.n;
}

// Iterative lowpoint DFS; recursion would overflow on grid-sized inputs.
bool is_biconnected(const Graph& g) {
    if (g.n < 3) return false;
    if (!is_connected(g)) return false;
    auto adj = adjacency(g);

    std::vector<int> num(g.n, -1), low(g.n, 0), parent_edge(g.n, -1), it(g.n, 0);
    std::vector<Vertex> stack;
    int timer = 0;
    int root_children = 0;

    num[0] = low[0] = timer++;
    stack.push_back(0);
    while (!stack.empty()) {
        Vertex u = stack.back();
        if (it[u] < static_cast<int>(adj[u].size())) {
            auto [w, e] = adj[u][it[u]++];
            if (e == parent_edge[u]) continue;
            if (num[w] == -1) {
                parent_edge[w] = e;
                num[w] = low[w] = timer++;
                if (u == 0) ++root_children;
                stack.push_back(w);
            } else {
                low[u] = std::min(low[u], num[w]);
            }
        } else {
            stack.pop_back();
            if (!stack.empty()) {
                Vertex p = stack.back();
                low[p] = std::min(low[p], low[u]);
                if (p != 0 && low[u] >= num[p]) return false;  // p is a cut-vertex
            }
        }
    }
    return root_children <= 1;
}

BlockDecomposition bridges_and_blocks(const Graph& g) {
    BlockDecomposition out;
    auto adj = adjacency(g);
    std::vector<int> num(g.n, -1), low(g.n, 0), parent_edge(g.n, -1), it(g.n, 0);
    std::vector<EdgeId> edge_stack;
    std::vector<Vertex> stack;
    int timer = 0;

    for (Vertex root = 0; root < g.n; ++root) {
        if (num[root] != -1) continue;
        num[root] = low[root] = timer++;
        stack.push_back(root);
        while (!stack.empty()) {
            Vertex u = stack.back();
            if (it[u] < static_cast<int>(adj[u].size())) {
                auto [w, e] = adj[u][it[u]++];
                if (e == parent_edge[u]) continue;
                if (num[w] == -1) {
                    parent_edge[w] = e;
                    edge_stack.push_back(e);
                    num[w] = low[w] = timer++;
                    stack.push_back(w);
                } else if (num[w] < num[u]) {
                    edge_stack.push_back(e);
                    low[u] = std::min(low[u], num[w]);
                }
            } else {
                stack.pop_back();
                if (!stack.empty()) {
                    Vertex p = stack.back();
                    low[p] = std::min(low[p], low[u]);
                    if (low[u] >= num[p]) {
                        // p closes a block; pop the edges of that block
                        std::vector<EdgeId> block;
                        EdgeId stop = parent_edge[u];
                        while (!edge_stack.empty()) {
                            EdgeId e = edge_stack.back();
                            edge_stack.pop_back();
                            block.push_back(e);
                            if (e == stop) break;
                        }
                        out.blocks.push_back(std::move(block));
                    }
                }
            }
        }
    }
    for (const auto& b : out.blocks)
        if (b.size() == 1) out.bridges.push_back(b[0]);
    std::sort(out.bridges.begin(), out.bridges.end());
    return out;
}

int max_degree(const Graph& g) {
    int best = 0;
    for (int d : g.degrees()) best = std::max(best, d);
    return best;
}

bool euler_formula_holds(const PlanarEmbeddedGraph& pg) {
    FaceSet fs = faces(pg);
    // per-component counts
    const Graph& g = pg.g;
    auto adj = adjacency(g);
    std::vector<int> comp(g.n, -1);
    int ncomp = 0;
    for (Vertex s = 0; s < g.n; ++s) {
        if (comp[s] != -1) continue;
        comp[s] = ncomp;
        std::vector<Vertex> stack{s};
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (auto [w, e] : adj[u]) {
                (void)e;
                if (comp[w] == -1) {
                    comp[w] = ncomp;
                    stack.push_back(w);
                }
            }
        }
        ++ncomp;
    }
    std::vector<int> vcnt(ncomp, 0), ecnt(ncomp, 0), fcnt(ncomp, 0);
    for (Vertex v = 0; v < g.n; ++v) ++vcnt[comp[v]];
    for (auto [u, v] : g.edges) {
        (void)v;
        ++ecnt[comp[u]];
    }
    for (const auto& w : fs.walks) {
        if (w.darts.empty()) continue;
        ++fcnt[comp[dart_tail(g, w.darts[0])]];
    }
    for (int c = 0; c < ncomp; ++c) {
        if (vcnt[c] == 1 && ecnt[c] == 0) continue;  // isolated vertex has no walks
        if (vcnt[c] - ecnt[c] + fcnt[c] != 2) return false;
    }
    return true;
}

}  // namespace unitrect
