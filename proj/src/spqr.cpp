#include "unitrect/spqr.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace unitrect {

const char* node_kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::S: return "S";
        case NodeKind::P: return "P";
        case NodeKind::Q: return "Q";
        case NodeKind::R: return "R";
    }
    return "?";
}

std::vector<std::vector<int>> SpqrTree::adjacency() const {
    std::vector<std::vector<int>> adj(nodes.size());
    for (int n = 0; n < node_count(); ++n)
        for (const auto& e : nodes[n].edges)
            if (e.is_virtual && e.twin_node > n) {
                adj[n].push_back(e.twin_node);
                adj[e.twin_node].push_back(n);
            }
    return adj;
}

namespace {

// construction-time skeleton edge; twins referenced by stable global ids
struct BEdge {
    Vertex a, b;
    bool is_virtual;
    EdgeId real_id;
    long gid;
    long twin_gid;
};

struct Builder {
    std::vector<std::vector<BEdge>> nodes;
    std::vector<char> alive;
    long next_gid = 0;

    int new_node(std::vector<BEdge> edges) {
        nodes.push_back(std::move(edges));
        alive.push_back(1);
        return static_cast<int>(nodes.size()) - 1;
    }

    static std::vector<Vertex> vertex_set(const std::vector<BEdge>& es) {
        std::vector<Vertex> vs;
        for (const auto& e : es) {
            vs.push_back(e.a);
            vs.push_back(e.b);
        }
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return vs;
    }

    // components of the skeleton w.r.t. {u,v}: every u-v edge alone, every
    // connected component of skel minus {u,v} together with its edges
    static std::vector<std::vector<int>> split_components(const std::vector<BEdge>& es, Vertex u, Vertex v) {
        std::vector<std::vector<int>> comps;
        std::map<Vertex, std::vector<int>> inc;  // vertex -> incident edge idx (excluding u,v as hubs)
        for (int i = 0; i < static_cast<int>(es.size()); ++i) {
            const auto& e = es[i];
            if ((e.a == u && e.b == v) || (e.a == v && e.b == u)) {
                comps.push_back({i});
                continue;
            }
            inc[e.a].push_back(i);
            inc[e.b].push_back(i);
        }
        std::set<int> used;
        for (const auto& [w, _] : inc) {
            if (w == u || w == v) continue;
            // find an unused edge at w to seed a component
            for (int seed : inc.at(w)) {
                if (used.count(seed)) continue;
                std::vector<int> comp;
                std::vector<int> stack{seed};
                used.insert(seed);
                while (!stack.empty()) {
                    int ei = stack.back();
                    stack.pop_back();
                    comp.push_back(ei);
                    for (Vertex x : {es[ei].a, es[ei].b}) {
                        if (x == u || x == v) continue;
                        for (int e2 : inc.at(x))
                            if (!used.count(e2)) {
                                used.insert(e2);
                                stack.push_back(e2);
                            }
                    }
                }
                std::sort(comp.begin(), comp.end());
                comps.push_back(std::move(comp));
            }
        }
        return comps;
    }

    // a split is valid when it has >= 2 components, the chosen one is not a
    // lone virtual edge, and (for two components) neither side is
    bool try_split(int n) {
        auto& es = nodes[n];
        auto vs = vertex_set(es);
        for (size_t i = 0; i < vs.size(); ++i) {
            for (size_t j = i + 1; j < vs.size(); ++j) {
                Vertex u = vs[i], v = vs[j];
                auto comps = split_components(es, u, v);
                if (comps.size() < 2) continue;
                for (const auto& comp : comps) {
                    bool lone_virtual = comp.size() == 1 && es[comp[0]].is_virtual;
                    if (lone_virtual) continue;
                    if (comps.size() == 2) {
                        const auto& other = comp == comps[0] ? comps[1] : comps[0];
                        if (other.size() == 1 && es[other[0]].is_virtual) continue;
                    }
                    apply_split(n, u, v, comp);
                    return true;
                }
            }
        }
        return false;
    }

    void apply_split(int n, Vertex u, Vertex v, const std::vector<int>& comp) {
        auto& es = nodes[n];
        long g1 = next_gid++, g2 = next_gid++;
        std::vector<BEdge> side;
        std::vector<char> taken(es.size(), 0);
        for (int i : comp) taken[i] = 1;
        for (int i = 0; i < static_cast<int>(es.size()); ++i)
            if (taken[i]) side.push_back(es[i]);
        side.push_back(BEdge{u, v, true, -1, g1, g2});
        std::vector<BEdge> rest;
        for (int i = 0; i < static_cast<int>(es.size()); ++i)
            if (!taken[i]) rest.push_back(es[i]);
        rest.push_back(BEdge{u, v, true, -1, g2, g1});
        nodes[n] = std::move(rest);
        new_node(std::move(side));
    }

    std::pair<int, int> locate(long gid) const {
        for (int n = 0; n < static_cast<int>(nodes.size()); ++n) {
            if (!alive[n]) continue;
            for (int i = 0; i < static_cast<int>(nodes[n].size()); ++i)
                if (nodes[n][i].gid == gid) return {n, i};
        }
        throw StructuralError("twin bookkeeping broken");
    }

    static bool is_cycle(const std::vector<BEdge>& es) {
        auto vs = vertex_set(es);
        if (es.size() < 3 || vs.size() != es.size()) return false;
        std::map<Vertex, int> deg;
        for (const auto& e : es) {
            ++deg[e.a];
            ++deg[e.b];
        }
        for (auto& [w, d] : deg)
            if (d != 2) return false;
        // connectivity: walk the cycle
        std::set<Vertex> seen;
        Vertex start = es[0].a, cur = start, prev = -1;
        while (true) {
            seen.insert(cur);
            Vertex nxt = -1;
            for (const auto& e : es) {
                Vertex other = e.a == cur ? e.b : (e.b == cur ? e.a : -1);
                if (other != -1 && other != prev) {
                    nxt = other;
                    break;
                }
            }
            if (nxt == -1 || seen.count(nxt)) break;
            prev = cur;
            cur = nxt;
        }
        return seen.size() == vs.size();
    }

    void merge_adjacent_series() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int n = 0; n < static_cast<int>(nodes.size()) && !changed; ++n) {
                if (!alive[n] || !is_series_shape(n)) continue;
                for (int i = 0; i < static_cast<int>(nodes[n].size()); ++i) {
                    const BEdge& e = nodes[n][i];
                    if (!e.is_virtual) continue;
                    auto [m, j] = locate(e.twin_gid);
                    if (m == n || !is_series_shape(m)) continue;
                    splice(n, i, m, j);
                    changed = true;
                    break;
                }
            }
        }
    }

    bool is_series_shape(int n) const { return is_cycle(nodes[n]); }

    void splice(int n, int i, int m, int j) {
        std::vector<BEdge> merged;
        for (int k = 0; k < static_cast<int>(nodes[n].size()); ++k)
            if (k != i) merged.push_back(nodes[n][k]);
        for (int k = 0; k < static_cast<int>(nodes[m].size()); ++k)
            if (k != j) merged.push_back(nodes[m][k]);
        alive[m] = 0;
        nodes[m].clear();
        nodes[n] = std::move(merged);
    }
};

bool skeleton_has_separation_pair(const std::vector<BEdge>& es) {
    auto vs = Builder::vertex_set(es);
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j) {
            // connected after removing both?
            std::set<Vertex> rest(vs.begin(), vs.end());
            rest.erase(vs[i]);
            rest.erase(vs[j]);
            if (rest.empty()) continue;
            std::set<Vertex> seen{*rest.begin()};
            std::vector<Vertex> stack{*rest.begin()};
            while (!stack.empty()) {
                Vertex cur = stack.back();
                stack.pop_back();
                for (const auto& e : es) {
                    Vertex other = e.a == cur ? e.b : (e.b == cur ? e.a : -1);
                    if (other == -1 || other == vs[i] || other == vs[j] || seen.count(other)) continue;
                    seen.insert(other);
                    stack.push_back(other);
                }
            }
            if (seen.size() != rest.size()) return true;
        }
    return false;
}

}  // namespace

SpqrTree build_spqr(const Graph& g) {
    if (!is_biconnected(g)) throw StructuralError("SPQR-tree requires a biconnected graph");
    if (g.edge_count() < 3) throw StructuralError("SPQR-tree requires >= 3 edges");

    Builder b;
    std::vector<BEdge> initial;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        initial.push_back(BEdge{g.edges[e].first, g.edges[e].second, false, e, -1, -1});
    b.new_node(std::move(initial));

    bool progress = true;
    while (progress) {
        progress = false;
        for (int n = 0; n < static_cast<int>(b.nodes.size()); ++n) {
            if (!b.alive[n]) continue;
            if (b.try_split(n)) {
                progress = true;
                break;
            }
        }
    }
    b.merge_adjacent_series();

    // compact and classify
    SpqrTree t;
    t.original = g;
    std::vector<int> remap(b.nodes.size(), -1);
    for (int n = 0; n < static_cast<int>(b.nodes.size()); ++n) {
        if (!b.alive[n]) continue;
        remap[n] = t.node_count();
        t.nodes.emplace_back();
    }
    std::map<long, std::pair<int, int>> where;
    for (int n = 0; n < static_cast<int>(b.nodes.size()); ++n) {
        if (!b.alive[n]) continue;
        SpqrNode& node = t.nodes[remap[n]];
        for (const auto& be : b.nodes[n]) {
            SkelEdge se;
            se.a = be.a;
            se.b = be.b;
            se.is_virtual = be.is_virtual;
            se.real_id = be.real_id;
            node.edges.push_back(se);
            if (be.is_virtual) where[be.gid] = {remap[n], static_cast<int>(node.edges.size()) - 1};
        }
        node.vertices = Builder::vertex_set(b.nodes[n]);
    }
    // resolve twins
    for (int n = 0; n < static_cast<int>(b.nodes.size()); ++n) {
        if (!b.alive[n]) continue;
        int slot = 0;
        for (const auto& be : b.nodes[n]) {
            if (be.is_virtual) {
                auto [tn, ts] = where.at(be.twin_gid);
                t.nodes[remap[n]].edges[slot].twin_node = tn;
                t.nodes[remap[n]].edges[slot].twin_slot = ts;
            }
            ++slot;
        }
    }
    for (auto& node : t.nodes) {
        const int ne = static_cast<int>(node.edges.size());
        const int nv = static_cast<int>(node.vertices.size());
        int reals = 0;
        for (const auto& e : node.edges) reals += e.is_virtual ? 0 : 1;
        if (nv == 2 && ne == 2 && reals == 1) {
            node.kind = NodeKind::Q;
        } else if (nv == 2 && ne >= 3 && reals == 0) {
            node.kind = NodeKind::P;
        } else if (reals == 0 && ne == nv) {
            node.kind = NodeKind::S;
        } else {
            node.kind = NodeKind::R;
            std::vector<BEdge> check;
            for (const auto& e : node.edges) check.push_back(BEdge{e.a, e.b, e.is_virtual, e.real_id, 0, 0});
            if (reals != 0 || skeleton_has_separation_pair(check))
                throw StructuralError("decomposition left a non-atomic skeleton");
        }
    }
    return t;
}

Expansion expansion_graph(const SpqrTree& t, int node, int slot) {
    const SkelEdge& e = t.nodes[node].edges[slot];
    if (!e.is_virtual) throw StructuralError("expansion of a real edge");
    Expansion out;
    out.attach_a = e.a;
    out.attach_b = e.b;
    // collect real edges in the subtree on the twin's side
    std::vector<char> visited(t.node_count(), 0);
    visited[node] = 1;
    std::vector<int> stack{e.twin_node};
    visited[e.twin_node] = 1;
    while (!stack.empty()) {
        int n = stack.back();
        stack.pop_back();
        for (const auto& se : t.nodes[n].edges) {
            if (se.is_virtual) {
                if (!visited[se.twin_node]) {
                    visited[se.twin_node] = 1;
                    stack.push_back(se.twin_node);
                }
            } else {
                out.edges.push_back(se.real_id);
            }
        }
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

Graph expansion_as_graph(const SpqrTree& t, const Expansion& e) {
    Graph g(t.original.n);
    for (EdgeId id : e.edges) g.add_edge(t.original.edges[id].first, t.original.edges[id].second);
    return g;
}

bool expansion_is_path(const SpqrTree& t, const Expansion& e) {
    std::map<Vertex, int> deg;
    for (EdgeId id : e.edges) {
        ++deg[t.original.edges[id].first];
        ++deg[t.original.edges[id].second];
    }
    if (deg.size() != e.edges.size() + 1) return false;
    int ones = 0;
    for (auto& [v, d] : deg) {
        if (d == 1) {
            ++ones;
            if (v != e.attach_a && v != e.attach_b) return false;
        } else if (d != 2) {
            return false;
        }
    }
    return ones == 2;
}

int PrunedTree::index_of(int node_id) const {
    for (int i = 0; i < static_cast<int>(node_ids.size()); ++i)
        if (node_ids[i] == node_id) return i;
    return -1;
}

PrunedTree prune(const SpqrTree& t) {
    PrunedTree pt;
    std::vector<int> remap(t.node_count(), -1);
    for (int n = 0; n < t.node_count(); ++n)
        if (t.nodes[n].kind != NodeKind::Q) {
            remap[n] = static_cast<int>(pt.node_ids.size());
            pt.node_ids.push_back(n);
        }
    pt.adj.resize(pt.node_ids.size());
    auto full = t.adjacency();
    for (int n = 0; n < t.node_count(); ++n) {
        if (remap[n] == -1) continue;
        for (int m : full[n])
            if (remap[m] != -1 && m > n) {
                pt.adj[remap[n]].push_back(remap[m]);
                pt.adj[remap[m]].push_back(remap[n]);
            }
    }

    // spine = non-leaves; a single node or a lone edge degenerates
    const int k = static_cast<int>(pt.node_ids.size());
    pt.caterpillar = false;
    if (k == 0) return pt;
    if (k == 1) {
        pt.caterpillar = true;
        pt.spine = {0};
        return pt;
    }
    std::vector<int> inner;
    for (int i = 0; i < k; ++i)
        if (pt.adj[i].size() >= 2) inner.push_back(i);
    if (inner.empty()) {
        // two adjacent nodes; call either the spine
        pt.caterpillar = pt.adj[0].size() == 1;
        pt.spine = {0};
        return pt;
    }
    // the inner nodes must induce a path
    std::vector<int> inner_deg(k, 0);
    std::set<int> inner_set(inner.begin(), inner.end());
    for (int i : inner)
        for (int j : pt.adj[i])
            if (inner_set.count(j)) ++inner_deg[i];
    int endpoints = 0;
    for (int i : inner) {
        if (inner_deg[i] > 2) return pt;  // not a caterpillar
        if (inner_deg[i] <= 1) ++endpoints;
    }
    if (!(endpoints == 2 || (inner.size() == 1 && endpoints == 1))) return pt;
    // order the path
    int start = inner[0];
    for (int i : inner)
        if (inner_deg[i] <= 1) start = i;
    std::vector<char> used(k, 0);
    int cur = start;
    while (cur != -1) {
        pt.spine.push_back(cur);
        used[cur] = 1;
        int nxt = -1;
        for (int j : pt.adj[cur])
            if (inner_set.count(j) && !used[j]) nxt = j;
        cur = nxt;
    }
    if (pt.spine.size() != inner.size()) return pt;  // inner nodes disconnected
    pt.caterpillar = true;
    return pt;
}

StructuralReport check_structural_conditions(const PrunedTree& pt, const SpqrTree& t) {
    auto fail = [&](std::string cond, int node) { return StructuralReport{false, std::move(cond), node}; };
    if (pt.node_ids.empty() || !pt.caterpillar) return fail("caterpillar", -1);

    std::set<int> spine_nodes;
    for (int i : pt.spine) spine_nodes.insert(pt.node_ids[i]);

    // (i) all leaves are S-nodes
    for (int i = 0; i < static_cast<int>(pt.node_ids.size()); ++i) {
        if (pt.adj[i].size() <= 1 && static_cast<int>(pt.node_ids.size()) > 1) {
            if (t.nodes[pt.node_ids[i]].kind != NodeKind::S) return fail("i", pt.node_ids[i]);
        }
    }
    // (ii)/(iii) forbidden spine adjacencies
    for (size_t s = 0; s + 1 < pt.spine.size(); ++s) {
        NodeKind ka = t.nodes[pt.node_ids[pt.spine[s]]].kind;
        NodeKind kb = t.nodes[pt.node_ids[pt.spine[s + 1]]].kind;
        if (ka == NodeKind::R && kb == NodeKind::R) return fail("ii", pt.node_ids[pt.spine[s]]);
        if ((ka == NodeKind::P && kb == NodeKind::R) || (ka == NodeKind::R && kb == NodeKind::P))
            return fail("iii", pt.node_ids[pt.spine[s]]);
    }
    // (iv) every P-node has exactly three neighbors in T (Q-nodes count)
    for (int n = 0; n < t.node_count(); ++n)
        if (t.nodes[n].kind == NodeKind::P && t.nodes[n].edges.size() != 3) return fail("iv", n);
    // (v) spine S-node skeletons: two Q-chains separated by two P/R edges
    for (int i : pt.spine) {
        int n = pt.node_ids[i];
        if (t.nodes[n].kind != NodeKind::S) continue;
        const auto& sk = t.nodes[n];
        const int ne = static_cast<int>(sk.edges.size());
        // order the cycle's edges
        std::vector<int> order;
        std::vector<char> used(ne, 0);
        int cur = 0;
        Vertex at = sk.edges[0].b;
        order.push_back(0);
        used[0] = 1;
        while (static_cast<int>(order.size()) < ne) {
            bool found = false;
            for (int e2 = 0; e2 < ne && !found; ++e2) {
                if (used[e2]) continue;
                if (sk.edges[e2].a == at || sk.edges[e2].b == at) {
                    at = sk.edges[e2].a == at ? sk.edges[e2].b : sk.edges[e2].a;
                    order.push_back(e2);
                    used[e2] = 1;
                    found = true;
                }
            }
            if (!found) return fail("v", n);
        }
        std::vector<int> separators;
        for (int k2 = 0; k2 < ne; ++k2) {
            NodeKind tk = t.nodes[sk.edges[order[k2]].twin_node].kind;
            if (tk == NodeKind::P || tk == NodeKind::R) separators.push_back(k2);
        }
        (void)cur;
        if (separators.size() != 2) return fail("v", n);
        int gap1 = separators[1] - separators[0] - 1;
        int gap2 = ne - 2 - gap1;
        if (gap1 < 1 || gap2 < 1) return fail("v", n);
    }
    return {};
}

bool is_flat(const PrunedTree& pt, const SpqrTree& t) {
    if (pt.spine.empty()) return false;
    if (pt.spine.size() >= 2) return true;
    return t.nodes[pt.node_ids[pt.spine[0]]].kind == NodeKind::P;
}

}  // namespace unitrect
