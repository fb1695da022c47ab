#include "unitrect/flow.hpp"

#include <algorithm>
#include <queue>

#include "unitrect/embed.hpp"
#include "unitrect/spqr.hpp"

namespace unitrect {

namespace {

// textbook Dinic on an adjacency-list residual graph
struct Dinic {
    struct E {
        int to, cap, rev;
    };
    std::vector<std::vector<E>> adj;
    std::vector<int> level, it;

    explicit Dinic(int n) : adj(n), level(n), it(n) {}

    int add(int u, int v, int cap) {
        adj[u].push_back({v, cap, static_cast<int>(adj[v].size())});
        adj[v].push_back({u, 0, static_cast<int>(adj[u].size()) - 1});
        return static_cast<int>(adj[u].size()) - 1;
    }

    bool bfs(int s, int t) {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        level[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (const E& e : adj[u])
                if (e.cap > 0 && level[e.to] == -1) {
                    level[e.to] = level[u] + 1;
                    q.push(e.to);
                }
        }
        return level[t] != -1;
    }

    int dfs(int u, int t, int f) {
        if (u == t) return f;
        for (int& i = it[u]; i < static_cast<int>(adj[u].size()); ++i) {
            E& e = adj[u][i];
            if (e.cap > 0 && level[e.to] == level[u] + 1) {
                int d = dfs(e.to, t, std::min(f, e.cap));
                if (d > 0) {
                    e.cap -= d;
                    adj[e.to][e.rev].cap += d;
                    return d;
                }
            }
        }
        return 0;
    }

    int max_flow(int s, int t) {
        int total = 0;
        while (bfs(s, t)) {
            std::fill(it.begin(), it.end(), 0);
            int f;
            while ((f = dfs(s, t, 1 << 29)) > 0) total += f;
        }
        return total;
    }
};

}  // namespace

FlowNetwork build_rectangular_network(const PlanarEmbeddedGraph& pg) {
    if (!pg.outer_face) throw StructuralError("rectangular network needs a plane graph");
    if (max_degree(pg.g) > 4) throw StructuralError("rectangular drawings need maximum degree 4");
    FaceSet fs = faces(pg);
    FlowNetwork n;
    n.node_count = pg.g.n + fs.count();
    n.supply.assign(n.node_count, 0);
    for (Vertex v = 0; v < pg.g.n; ++v) n.supply[v] = 4;
    for (FaceId f = 0; f < fs.count(); ++f) {
        int deg = fs.walks[f].degree();
        n.supply[pg.g.n + f] = f == *pg.outer_face ? -(2 * deg + 4) : -(2 * deg - 4);
    }
    // one arc per angle slot = per dart tail (vertex, incident face)
    for (FaceId f = 0; f < fs.count(); ++f) {
        bool outer = f == *pg.outer_face;
        for (Dart d : fs.walks[f].darts) {
            Vertex v = dart_tail(pg.g, d);
            FlowNetwork::Arc a;
            a.from = v;
            a.to = pg.g.n + f;
            a.lower = outer ? 2 : 1;
            a.upper = outer ? 3 : 2;
            a.vertex = v;
            a.face = f;
            n.arcs.push_back(a);
        }
    }
    return n;
}

std::optional<Circulation> feasible_flow(const FlowNetwork& n) {
    for (const auto& a : n.arcs)
        if (a.lower > a.upper) return std::nullopt;

    // lower-bound elimination: route mandatory flow, balance the excess
    // through a super source/sink
    const int S = n.node_count, T = n.node_count + 1;
    Dinic din(n.node_count + 2);
    std::vector<int> excess = n.supply;
    std::vector<std::pair<int, int>> arc_ref(n.arcs.size());
    for (size_t i = 0; i < n.arcs.size(); ++i) {
        const auto& a = n.arcs[i];
        excess[a.from] -= a.lower;
        excess[a.to] += a.lower;
        arc_ref[i] = {a.from, din.add(a.from, a.to, a.upper - a.lower)};
    }
    long need = 0;
    for (int u = 0; u < n.node_count; ++u) {
        if (excess[u] > 0) {
            din.add(S, u, excess[u]);
            need += excess[u];
        } else if (excess[u] < 0) {
            din.add(u, T, -excess[u]);
        }
    }
    long pushed = din.max_flow(S, T);
    if (pushed != need) return std::nullopt;

    Circulation c;
    c.flow.resize(n.arcs.size());
    for (size_t i = 0; i < n.arcs.size(); ++i) {
        auto [u, idx] = arc_ref[i];
        int residual = din.adj[u][idx].cap;
        c.flow[i] = n.arcs[i].lower + (n.arcs[i].upper - n.arcs[i].lower) - residual;
    }
    return c;
}

bool circulation_valid(const FlowNetwork& n, const Circulation& c) {
    if (c.flow.size() != n.arcs.size()) return false;
    std::vector<long> net(n.node_count, 0);
    for (size_t i = 0; i < n.arcs.size(); ++i) {
        const auto& a = n.arcs[i];
        if (c.flow[i] < a.lower || c.flow[i] > a.upper) return false;
        net[a.from] += c.flow[i];
        net[a.to] -= c.flow[i];
    }
    for (int u = 0; u < n.node_count; ++u)
        if (net[u] != n.supply[u]) return false;
    return true;
}

bool test_rectangular_fixed(const PlanarEmbeddedGraph& pg) {
    if (max_degree(pg.g) > 4) return false;
    FlowNetwork n = build_rectangular_network(pg);
    return feasible_flow(n).has_value();
}

bool solve_rectangular(const PlanarEmbeddedGraph& ref) {
    const Graph& g = ref.g;
    if (g.n == 0 || g.edge_count() == 0) return false;
    if (max_degree(g) > 4) return false;
    if (g.has_multi_edge()) return false;  // a parallel pair bounds a degree-2 face
    if (!is_biconnected(g)) return false;

    // cycles: any rectangle with four corner vertices works
    if (max_degree(g) == 2) return g.n >= 4;

    SpqrTree t = build_spqr(g);
    PrunedTree pt = prune(t);
    auto cond = check_structural_conditions(pt, t);
    if (!cond.ok) return false;

    if (is_flat(pt, t)) {
        for (const auto& cand : flat_candidate_embeddings(ref, t))
            if (test_rectangular_fixed(cand.embedding)) return true;
        return false;
    }
    // rigid: unique planar embedding, try every face as the outer one
    PlanarEmbeddedGraph pg;
    pg.g = g;
    pg.rot = ref.rot;
    FaceSet fs = faces(pg);
    for (FaceId f = 0; f < fs.count(); ++f) {
        pg.outer_face = f;
        if (test_rectangular_fixed(pg)) return true;
    }
    return false;
}

}  // namespace unitrect
