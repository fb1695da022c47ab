#include "unitrect/embed.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "unitrect/drawing.hpp"

namespace unitrect {

namespace {

// ---- skeleton rotations ------------------------------------------------

// rotation of a node's skeleton as slot lists per original vertex
using SkelRot = std::map<Vertex, std::vector<int>>;

SkelRot mirrored_rot(const SkelRot& r) {
    SkelRot out = r;
    for (auto& [v, lst] : out) std::reverse(lst.begin(), lst.end());
    return out;
}

// rotation induced on skel(node) by the reference embedding: group the
// reference darts at each skeleton vertex by the slot whose expansion
// contains them; in a genus-zero rotation each group is contiguous
SkelRot induced_skeleton_rot(const PlanarEmbeddedGraph& ref, const SpqrTree& t, int node) {
    const SpqrNode& n = t.nodes[node];
    std::vector<int> slot_of_edge(t.original.edge_count(), -1);
    for (int s = 0; s < static_cast<int>(n.edges.size()); ++s) {
        if (n.edges[s].is_virtual) {
            for (EdgeId e : expansion_graph(t, node, s).edges) slot_of_edge[e] = s;
        } else {
            slot_of_edge[n.edges[s].real_id] = s;
        }
    }
    SkelRot rot;
    for (Vertex v : n.vertices) {
        std::vector<int> seq;
        for (Dart d : ref.rot[v]) {
            int s = slot_of_edge[dart_edge(d)];
            if (s == -1) throw StructuralError("reference dart outside every expansion");
            if (seq.empty() || seq.back() != s) seq.push_back(s);
        }
        if (seq.size() > 1 && seq.front() == seq.back()) seq.pop_back();
        std::set<int> uniq(seq.begin(), seq.end());
        if (uniq.size() != seq.size()) throw StructuralError("expansion darts not contiguous in reference rotation");
        rot[v] = std::move(seq);
    }
    return rot;
}

SkelRot bundle_rot(const SpqrNode& n, Vertex bottom, const std::vector<int>& order) {
    Vertex top = n.vertices[0] == bottom ? n.vertices[1] : n.vertices[0];
    SkelRot rot;
    rot[bottom] = order;
    rot[top] = order;
    std::reverse(rot[top].begin(), rot[top].end());
    return rot;
}

SkelRot cycle_rot(const SpqrNode& n) {
    SkelRot rot;
    for (Vertex v : n.vertices)
        for (int s = 0; s < static_cast<int>(n.edges.size()); ++s)
            if (n.edges[s].a == v || n.edges[s].b == v) rot[v].push_back(s);
    return rot;
}

SkelRot default_rot(const PlanarEmbeddedGraph& ref, const SpqrTree& t, int node) {
    const SpqrNode& n = t.nodes[node];
    switch (n.kind) {
        case NodeKind::Q:
        case NodeKind::S: return cycle_rot(n);
        case NodeKind::P: {
            std::vector<int> order(n.edges.size());
            for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
            return bundle_rot(n, n.vertices[0], order);
        }
        case NodeKind::R: return induced_skeleton_rot(ref, t, node);
    }
    throw StructuralError("unreachable");
}

// skeleton as a small embedded multigraph; edge ids equal slot indices
struct SkelView {
    PlanarEmbeddedGraph pg;
    std::map<Vertex, int> to_local;
    std::vector<Vertex> to_global;
    FaceSet fs;
};

SkelView skeleton_view(const SpqrNode& n, const SkelRot& rot) {
    SkelView sv;
    for (Vertex v : n.vertices) {
        sv.to_local[v] = static_cast<int>(sv.to_global.size());
        sv.to_global.push_back(v);
    }
    sv.pg.g.n = static_cast<int>(sv.to_global.size());
    for (const auto& e : n.edges) sv.pg.g.edges.emplace_back(sv.to_local.at(e.a), sv.to_local.at(e.b));
    sv.pg.rot.assign(sv.pg.g.n, {});
    for (const auto& [v, slots] : rot) {
        for (int s : slots) {
            bool from_second = n.edges[s].b == v && n.edges[s].a != v;
            if (n.edges[s].a == v && n.edges[s].b == v) throw StructuralError("skeleton self-loop");
            sv.pg.rot[sv.to_local.at(v)].push_back(make_dart(s, from_second));
        }
    }
    sv.fs = faces(sv.pg);
    return sv;
}

// face of the view whose walk uses slot `s`, oriented tail -> head
std::optional<FaceId> face_with_slot_dart(const SkelView& sv, int s, Vertex tail) {
    bool from_second = sv.pg.g.edges[s].second == sv.to_local.at(tail);
    Dart d = make_dart(s, from_second);
    if (dart_tail(sv.pg.g, d) != sv.to_local.at(tail)) return std::nullopt;
    return sv.fs.face_of_dart[d];
}

std::vector<FaceId> faces_of_slot(const SkelView& sv, int s) {
    return {sv.fs.face_of_dart[make_dart(s, false)], sv.fs.face_of_dart[make_dart(s, true)]};
}

// ---- work-graph assembly -------------------------------------------------

struct WEdge {
    Vertex a, b;
    bool pending;      // virtual, twin not yet expanded
    EdgeId real_id;    // original edge when !pending
    int twin_node, twin_slot;
};

struct Assembly {
    const SpqrTree& t;
    std::map<int, SkelRot> chosen;  // node -> rotation (defaults used otherwise)
    const PlanarEmbeddedGraph& ref;

    std::vector<WEdge> wedges;
    std::map<Vertex, std::vector<int>> rot;  // vertex -> wedge darts (index*2 + end)

    Assembly(const PlanarEmbeddedGraph& r, const SpqrTree& tree) : t(tree), ref(r) {}

    SkelRot rot_for(int node) {
        auto it = chosen.find(node);
        if (it != chosen.end()) return it->second;
        return default_rot(ref, t, node);
    }

    int add_wedge(int node, int slot) {
        const SkelEdge& e = t.nodes[node].edges[slot];
        WEdge w;
        w.a = e.a;
        w.b = e.b;
        if (e.is_virtual) {
            w.pending = true;
            w.real_id = -1;
            w.twin_node = e.twin_node;
            w.twin_slot = e.twin_slot;
        } else {
            w.pending = false;
            w.real_id = e.real_id;
            w.twin_node = w.twin_slot = -1;
        }
        wedges.push_back(w);
        return static_cast<int>(wedges.size()) - 1;
    }

    static int wdart(int widx, int end) { return widx * 2 + end; }

    void seed(int root) {
        SkelRot r = rot_for(root);
        std::vector<int> slot_to_wedge(t.nodes[root].edges.size());
        for (int s = 0; s < static_cast<int>(t.nodes[root].edges.size()); ++s) slot_to_wedge[s] = add_wedge(root, s);
        for (const auto& [v, slots] : r) {
            for (int s : slots) {
                const auto& e = t.nodes[root].edges[s];
                rot[v].push_back(wdart(slot_to_wedge[s], e.a == v ? 0 : 1));
            }
        }
    }

    void expand_all() {
        bool any = true;
        while (any) {
            any = false;
            for (int w = 0; w < static_cast<int>(wedges.size()); ++w) {
                if (wedges[w].pending) {
                    expand(w);
                    any = true;
                    break;
                }
            }
        }
    }

    void expand(int w) {
        const int node = wedges[w].twin_node;
        const int back_slot = wedges[w].twin_slot;
        SkelRot r = rot_for(node);
        const SpqrNode& n = t.nodes[node];

        std::vector<int> slot_to_wedge(n.edges.size(), -1);
        for (int s = 0; s < static_cast<int>(n.edges.size()); ++s)
            if (s != back_slot) slot_to_wedge[s] = add_wedge(node, s);

        for (const auto& [v, slots] : r) {
            const auto k = static_cast<int>(slots.size());
            int back_pos = -1;
            for (int i = 0; i < k; ++i)
                if (slots[i] == back_slot) back_pos = i;
            auto make_fan = [&](std::vector<int>& fan) {
                for (int i = 1; i < k; ++i) {
                    int s = slots[(back_pos + i) % k];
                    fan.push_back(wdart(slot_to_wedge[s], n.edges[s].a == v ? 0 : 1));
                }
            };
            if (back_pos != -1) {
                // pole: splice the fan in place of the old wedge dart
                std::vector<int> fan;
                make_fan(fan);
                auto& lst = rot.at(v);
                int old = wdart(w, wedges[w].a == v ? 0 : 1);
                auto it = std::find(lst.begin(), lst.end(), old);
                if (it == lst.end()) throw StructuralError("assembly lost a pole dart");
                it = lst.erase(it);
                lst.insert(it, fan.begin(), fan.end());
            } else {
                // interior vertex of the expansion, fresh in the work graph
                if (rot.count(v)) throw StructuralError("assembly revisited a vertex");
                std::vector<int>& lst = rot[v];
                for (int i = 0; i < k; ++i) {
                    int s = slots[i];
                    lst.push_back(wdart(slot_to_wedge[s], n.edges[s].a == v ? 0 : 1));
                }
            }
        }
        wedges[w].pending = false;
        wedges[w].real_id = -2;  // consumed marker
    }

    // final rotation over the original graph's darts
    PlanarEmbeddedGraph finish() const {
        PlanarEmbeddedGraph out;
        out.g = t.original;
        out.rot.assign(out.g.n, {});
        for (const auto& [v, lst] : rot) {
            for (int wd : lst) {
                const WEdge& w = wedges[wd / 2];
                if (w.real_id < 0) throw StructuralError("unexpanded wedge in final rotation");
                Vertex tail = (wd & 1) ? w.b : w.a;
                if (tail != v) throw StructuralError("assembly dart at the wrong vertex");
                out.rot[v].push_back(make_dart(w.real_id, tail == out.g.edges[w.real_id].second));
            }
        }
        return out;
    }
};

// ---- spine layout --------------------------------------------------------

struct Spine {
    std::vector<int> blocks;      // node ids, P or R, left to right
    std::vector<int> separators;  // node ids, S, between consecutive blocks
};

std::optional<Spine> spine_layout(const PrunedTree& pt, const SpqrTree& t) {
    Spine sp;
    for (int i : pt.spine) {
        int n = pt.node_ids[i];
        if (t.nodes[n].kind == NodeKind::S) sp.separators.push_back(n);
        else sp.blocks.push_back(n);
    }
    // spine must alternate block, S, block, ...
    if (sp.blocks.empty()) return std::nullopt;
    if (sp.separators.size() + 1 != sp.blocks.size()) return std::nullopt;
    for (size_t i = 0; i < pt.spine.size(); ++i) {
        bool is_sep = t.nodes[pt.node_ids[pt.spine[i]]].kind == NodeKind::S;
        if (is_sep != (i % 2 == 1)) return std::nullopt;
    }
    return sp;
}

int slot_toward(const SpqrTree& t, int node, int neighbor) {
    for (int s = 0; s < static_cast<int>(t.nodes[node].edges.size()); ++s)
        if (t.nodes[node].edges[s].is_virtual && t.nodes[node].edges[s].twin_node == neighbor) return s;
    return -1;
}

int expansion_length(const SpqrTree& t, int node, int slot) {
    return expansion_graph(t, node, slot).length();
}

struct ChainState {
    Vertex top = -1, bottom = -1;
};

// choices carried by an end block
struct EndChoice {
    // P: which non-spine slot is the wall (the other is the middle)
    // R: which e1-adjacent face is the outer portion (0 or 1)
    int pick = 0;
};

struct BuildFailure {};

// orient an R block so the common face walks the left pair bottom -> top;
// returns the rotation plus the ordered right pair read off that face
struct OrientedR {
    SkelRot rot;
    ChainState right;
    int marker_slot = -1;  // a non-spine slot on the outer-portion walk
};

std::optional<OrientedR> orient_interior_r(const PlanarEmbeddedGraph& ref, const SpqrTree& t, int node,
                                           int e_prev, int e_next, ChainState left) {
    SkelRot base = induced_skeleton_rot(ref, t, node);
    for (int attempt = 0; attempt < 2; ++attempt) {
        SkelRot rot = attempt == 0 ? base : mirrored_rot(base);
        SkelView sv = skeleton_view(t.nodes[node], rot);
        // unique face containing both spine slots
        std::set<FaceId> fa;
        for (FaceId f : faces_of_slot(sv, e_prev)) fa.insert(f);
        FaceId common = -1;
        for (FaceId f : faces_of_slot(sv, e_next))
            if (fa.count(f)) common = f;
        if (common == -1) return std::nullopt;
        auto f = face_with_slot_dart(sv, e_prev, left.bottom);
        if (!f || *f != common) continue;  // try the mirror
        // read the e_next dart on the common walk
        OrientedR out;
        out.rot = std::move(rot);
        for (Dart d : sv.fs.walks[common].darts) {
            if (dart_edge(d) == e_next) {
                out.right.top = sv.to_global[dart_tail(sv.pg.g, d)];
                out.right.bottom = sv.to_global[dart_head(sv.pg.g, d)];
            }
        }
        for (Dart d : sv.fs.walks[common].darts)
            if (dart_edge(d) != e_prev && dart_edge(d) != e_next) out.marker_slot = dart_edge(d);
        if (out.right.top == -1) return std::nullopt;
        return out;
    }
    return std::nullopt;
}

// end block at the left: orientation sets the global chirality; `outer_face_pick`
// chooses which e1-adjacent face becomes the outer portion
std::optional<OrientedR> orient_end_r_left(const PlanarEmbeddedGraph& ref, const SpqrTree& t, int node,
                                           int e_spine, int outer_face_pick) {
    SkelRot rot = induced_skeleton_rot(ref, t, node);
    SkelView sv = skeleton_view(t.nodes[node], rot);
    auto fls = faces_of_slot(sv, e_spine);
    if (fls[0] == fls[1]) return std::nullopt;
    FaceId outer = fls[outer_face_pick];
    OrientedR out;
    out.rot = std::move(rot);
    for (Dart d : sv.fs.walks[outer].darts) {
        if (dart_edge(d) == e_spine) {
            out.right.top = sv.to_global[dart_tail(sv.pg.g, d)];
            out.right.bottom = sv.to_global[dart_head(sv.pg.g, d)];
        } else if (out.marker_slot == -1) {
            out.marker_slot = dart_edge(d);
        }
    }
    if (out.right.top == -1) return std::nullopt;
    return out;
}

std::multiset<int> face_slot_set(const SkelView& sv, FaceId f) {
    std::multiset<int> out;
    for (Dart d : sv.fs.walks[f].darts) out.insert(dart_edge(d));
    return out;
}

// end block at the right: the mirror is forced by the incoming pair; the
// chosen outer portion is identified by its (mirror-invariant) slot set
std::optional<OrientedR> orient_end_r_right(const PlanarEmbeddedGraph& ref, const SpqrTree& t, int node,
                                            int e_prev, const std::multiset<int>& outer_slots, ChainState left) {
    SkelRot base = induced_skeleton_rot(ref, t, node);
    for (int attempt = 0; attempt < 2; ++attempt) {
        SkelRot rot = attempt == 0 ? base : mirrored_rot(base);
        SkelView sv = skeleton_view(t.nodes[node], rot);
        auto f = face_with_slot_dart(sv, e_prev, left.bottom);
        if (!f) continue;
        if (face_slot_set(sv, *f) != outer_slots) continue;
        OrientedR out;
        out.rot = std::move(rot);
        out.right.top = left.top;
        out.right.bottom = left.bottom;
        for (Dart d : sv.fs.walks[*f].darts)
            if (dart_edge(d) != e_prev && out.marker_slot == -1) out.marker_slot = dart_edge(d);
        return out;
    }
    return std::nullopt;
}

// expanded length of the boundary path of face f, leaving out slot `skip`
int face_path_expanded_length(const SpqrTree& t, int node, const SkelView& sv, FaceId f, int skip) {
    int sum = 0;
    for (Dart d : sv.fs.walks[f].darts) {
        int s = dart_edge(d);
        if (s == skip) continue;
        const SkelEdge& e = t.nodes[node].edges[s];
        sum += e.is_virtual ? expansion_length(t, node, s) : 1;
    }
    return sum;
}

struct BuiltCandidate {
    PlanarEmbeddedGraph pg;
    std::string provenance;
};

// Assemble one plane embedding for a flat spine given the end choices.
// Unit mode turns the end choices into forced ones (nullopt on ties).
std::optional<BuiltCandidate> build_flat(const PlanarEmbeddedGraph& ref, const SpqrTree& t, const Spine& sp,
                                         bool unit, EndChoice left_choice, EndChoice right_choice) {
    Assembly asm_(ref, t);
    std::ostringstream prov;
    const int m = static_cast<int>(sp.blocks.size());
    std::vector<int> marker_edges;  // one real edge per end wall

    auto wall_marker_real_edge = [&](int node, int slot) {
        Expansion ex = expansion_graph(t, node, slot);
        return ex.edges.empty() ? -1 : ex.edges.front();
    };

    // middle slot of a P block among the given non-spine candidates; unit
    // mode demands a strictly shortest one
    auto pick_p_middle = [&](int node, std::vector<int> cand, int forced_wall) -> std::optional<std::pair<int, int>> {
        if (cand.size() == 1) return std::make_pair(cand[0], -1);
        int a = cand[0], b = cand[1];
        if (unit) {
            int la = expansion_length(t, node, a), lb = expansion_length(t, node, b);
            if (la == lb) return std::nullopt;
            return la < lb ? std::make_pair(a, b) : std::make_pair(b, a);
        }
        if (forced_wall == a) return std::make_pair(b, a);
        return std::make_pair(a, b);
    };

    ChainState chain;
    if (m == 1) {
        // single P node: three parallel expansions
        int node = sp.blocks[0];
        if (t.nodes[node].kind != NodeKind::P) throw StructuralError("single-block flat spine must be a P-node");
        std::vector<int> slots{0, 1, 2};
        int mid;
        if (unit) {
            std::vector<std::pair<int, int>> lens;
            for (int s : slots) lens.emplace_back(expansion_length(t, node, s), s);
            std::sort(lens.begin(), lens.end());
            if (lens[0].first == lens[1].first) return std::nullopt;
            mid = lens[0].second;
        } else {
            mid = left_choice.pick;  // 0,1,2 enumerated by the caller
        }
        std::vector<int> others;
        for (int s : slots)
            if (s != mid) others.push_back(s);
        asm_.chosen[node] = bundle_rot(t.nodes[node], t.nodes[node].vertices[0], {others[0], mid, others[1]});
        prov << "P" << node << ":mid=slot" << mid;
        marker_edges.push_back(wall_marker_real_edge(node, others[0]));
        marker_edges.push_back(wall_marker_real_edge(node, others[1]));
        asm_.seed(node);
        asm_.expand_all();
        PlanarEmbeddedGraph pg = asm_.finish();
        // outer face: touches both non-middle expansions, avoids the middle
        FaceSet fs = faces(pg);
        std::set<EdgeId> mid_set, w1, w2;
        for (EdgeId e : expansion_graph(t, node, mid).edges) mid_set.insert(e);
        for (EdgeId e : expansion_graph(t, node, others[0]).edges) w1.insert(e);
        for (EdgeId e : expansion_graph(t, node, others[1]).edges) w2.insert(e);
        for (FaceId f = 0; f < fs.count(); ++f) {
            bool has1 = false, has2 = false, hasmid = false;
            for (Dart d : fs.walks[f].darts) {
                if (w1.count(dart_edge(d))) has1 = true;
                if (w2.count(dart_edge(d))) has2 = true;
                if (mid_set.count(dart_edge(d))) hasmid = true;
            }
            if (has1 && has2 && !hasmid) {
                pg.outer_face = f;
                break;
            }
        }
        if (!pg.outer_face) return std::nullopt;
        return BuiltCandidate{std::move(pg), prov.str()};
    }

    // m >= 2: walk the spine left to right
    for (int i = 0; i < m; ++i) {
        int node = sp.blocks[i];
        int e_prev = i > 0 ? slot_toward(t, node, sp.separators[i - 1]) : -1;
        int e_next = i + 1 < m ? slot_toward(t, node, sp.separators[i]) : -1;
        const bool is_p = t.nodes[node].kind == NodeKind::P;

        if (i == 0) {
            if (is_p) {
                std::vector<int> cand;
                for (int s = 0; s < 3; ++s)
                    if (s != e_next) cand.push_back(s);
                int forced_wall = left_choice.pick == 0 ? cand[0] : cand[1];
                auto midwall = pick_p_middle(node, cand, forced_wall);
                if (!midwall) return std::nullopt;
                auto [mid, wall] = *midwall;
                if (wall == -1) throw StructuralError("end P-node lacks a wall slot");
                Vertex bottom = t.nodes[node].vertices[0];
                asm_.chosen[node] = bundle_rot(t.nodes[node], bottom, {wall, mid, e_next});
                // outer face of the bundle pairs wall with the spine slot:
                // its spine dart runs top -> bottom
                Vertex top = t.nodes[node].vertices[1] == bottom ? t.nodes[node].vertices[0] : t.nodes[node].vertices[1];
                chain = ChainState{top, bottom};
                marker_edges.push_back(wall_marker_real_edge(node, wall));
                prov << "P" << node << "(end:mid=" << mid << ")";
            } else {
                SkelRot rot = induced_skeleton_rot(ref, t, node);
                SkelView sv = skeleton_view(t.nodes[node], rot);
                auto fls = faces_of_slot(sv, e_next);
                if (fls[0] == fls[1]) return std::nullopt;
                int pick;
                if (unit) {
                    int l0 = face_path_expanded_length(t, node, sv, fls[0], e_next);
                    int l1 = face_path_expanded_length(t, node, sv, fls[1], e_next);
                    if (l0 == l1) return std::nullopt;
                    pick = l0 > l1 ? 0 : 1;  // longer boundary = outer wall
                } else {
                    pick = left_choice.pick;
                }
                auto oriented = orient_end_r_left(ref, t, node, e_next, pick);
                if (!oriented) return std::nullopt;
                asm_.chosen[node] = oriented->rot;
                chain = oriented->right;
                if (oriented->marker_slot >= 0) {
                    const SkelEdge& me = t.nodes[node].edges[oriented->marker_slot];
                    marker_edges.push_back(me.is_virtual ? wall_marker_real_edge(node, oriented->marker_slot) : me.real_id);
                }
                prov << "R" << node << "(end:face=" << pick << ")";
            }
        } else {
            // cross the separator: chains pair top with top, bottom with bottom
            int sep = sp.separators[i - 1];
            int sl = slot_toward(t, sep, sp.blocks[i - 1]);
            int sr = slot_toward(t, sep, node);
            const SpqrNode& sn = t.nodes[sep];
            // walk the cycle from chain.top avoiding slot sl to find the
            // e_R endpoint linked by the top chain
            Vertex at = chain.top;
            int via = -1;  // previous slot
            Vertex next_top = -1;
            while (true) {
                int step = -1;
                for (int s = 0; s < static_cast<int>(sn.edges.size()); ++s) {
                    if (s == sl || s == via) continue;
                    if (sn.edges[s].a == at || sn.edges[s].b == at) {
                        step = s;
                        break;
                    }
                }
                if (step == -1) return std::nullopt;
                Vertex nxt = sn.edges[step].a == at ? sn.edges[step].b : sn.edges[step].a;
                if (step == sr) {
                    next_top = at;
                    break;
                }
                via = step;
                at = nxt;
                if (at == chain.top) return std::nullopt;
            }
            const SkelEdge& er = t.nodes[sep].edges[sr];
            Vertex next_bottom = er.a == next_top ? er.b : er.a;
            ChainState left{next_top, next_bottom};

            if (i + 1 < m) {
                if (is_p) {
                    int mid = -1;
                    for (int s = 0; s < 3; ++s)
                        if (s != e_prev && s != e_next) mid = s;
                    asm_.chosen[node] = bundle_rot(t.nodes[node], left.bottom, {e_prev, mid, e_next});
                    chain = left;  // a P block keeps the pair
                    prov << ";P" << node;
                } else {
                    auto oriented = orient_interior_r(ref, t, node, e_prev, e_next, left);
                    if (!oriented) return std::nullopt;
                    asm_.chosen[node] = oriented->rot;
                    chain = oriented->right;
                    prov << ";R" << node;
                }
            } else {
                // right end block
                if (is_p) {
                    std::vector<int> cand;
                    for (int s = 0; s < 3; ++s)
                        if (s != e_prev) cand.push_back(s);
                    int forced_wall = right_choice.pick == 0 ? cand[0] : cand[1];
                    auto midwall = pick_p_middle(node, cand, forced_wall);
                    if (!midwall) return std::nullopt;
                    auto [mid, wall] = *midwall;
                    asm_.chosen[node] = bundle_rot(t.nodes[node], left.bottom, {e_prev, mid, wall});
                    marker_edges.push_back(wall_marker_real_edge(node, wall));
                    prov << ";P" << node << "(end:mid=" << mid << ")";
                } else {
                    SkelRot rot0 = induced_skeleton_rot(ref, t, node);
                    SkelView sv0 = skeleton_view(t.nodes[node], rot0);
                    auto fls = faces_of_slot(sv0, e_prev);
                    if (fls[0] == fls[1]) return std::nullopt;
                    int pick;
                    if (unit) {
                        int l0 = face_path_expanded_length(t, node, sv0, fls[0], e_prev);
                        int l1 = face_path_expanded_length(t, node, sv0, fls[1], e_prev);
                        if (l0 == l1) return std::nullopt;
                        pick = l0 > l1 ? 0 : 1;
                    } else {
                        pick = right_choice.pick;
                    }
                    auto oriented = orient_end_r_right(ref, t, node, e_prev, face_slot_set(sv0, fls[pick]), left);
                    if (!oriented) return std::nullopt;
                    asm_.chosen[node] = oriented->rot;
                    if (oriented->marker_slot >= 0) {
                        const SkelEdge& me = t.nodes[node].edges[oriented->marker_slot];
                        marker_edges.push_back(me.is_virtual ? wall_marker_real_edge(node, oriented->marker_slot) : me.real_id);
                    }
                    prov << ";R" << node << "(end:face=" << pick << ")";
                }
            }
        }
    }

    asm_.seed(sp.blocks[0]);
    asm_.expand_all();
    PlanarEmbeddedGraph pg = asm_.finish();
    FaceSet fs = faces(pg);

    // outer face: contains the spine poles and both end-wall markers
    std::set<Vertex> poles;
    for (size_t i = 0; i < sp.separators.size(); ++i) {
        int sl = slot_toward(t, sp.separators[i], sp.blocks[i]);
        int sr = slot_toward(t, sp.separators[i], sp.blocks[i + 1]);
        for (int s : {sl, sr}) {
            poles.insert(t.nodes[sp.separators[i]].edges[s].a);
            poles.insert(t.nodes[sp.separators[i]].edges[s].b);
        }
    }
    std::optional<FaceId> outer;
    for (FaceId f = 0; f < fs.count(); ++f) {
        std::set<Vertex> on;
        std::set<EdgeId> edges_on;
        for (Dart d : fs.walks[f].darts) {
            on.insert(dart_tail(pg.g, d));
            edges_on.insert(dart_edge(d));
        }
        bool all_poles = true;
        for (Vertex v : poles)
            if (!on.count(v)) all_poles = false;
        bool all_markers = true;
        for (int e : marker_edges)
            if (e < 0 || !edges_on.count(e)) all_markers = false;
        if (all_poles && all_markers) {
            if (outer) return std::nullopt;  // ambiguous; treat as failure
            outer = f;
        }
    }
    if (!outer) return std::nullopt;
    pg.outer_face = outer;
    return BuiltCandidate{std::move(pg), prov.str()};
}

}  // namespace

std::string plane_form(const PlanarEmbeddedGraph& pg) {
    std::ostringstream os;
    for (Vertex v = 0; v < pg.g.n; ++v) {
        auto lst = pg.rot[v];
        if (!lst.empty()) {
            auto mn = std::min_element(lst.begin(), lst.end());
            std::rotate(lst.begin(), mn, lst.end());
        }
        os << "v" << v << ":";
        for (Dart d : lst) os << d << ",";
    }
    if (pg.outer_face) {
        FaceSet fs = faces(pg);
        std::vector<Dart> walk = fs.walks[*pg.outer_face].darts;
        std::sort(walk.begin(), walk.end());
        os << "|o:";
        for (Dart d : walk) os << d << ",";
    }
    return os.str();
}

PlanarEmbeddedGraph mirrored(const PlanarEmbeddedGraph& pg) {
    PlanarEmbeddedGraph out = pg;
    for (auto& lst : out.rot) std::reverse(lst.begin(), lst.end());
    if (pg.outer_face) {
        FaceSet orig = faces(pg);
        Dart d0 = orig.walks[*pg.outer_face].darts[0];
        FaceSet fs = faces(out);
        out.outer_face = fs.face_of_dart[dart_reverse(d0)];
    }
    return out;
}

std::string mirror_canonical_form(const PlanarEmbeddedGraph& pg) {
    return std::min(plane_form(pg), plane_form(mirrored(pg)));
}

std::optional<CandidateEmbedding> unique_unit_length_embedding(const PlanarEmbeddedGraph& ref, const SpqrTree& t) {
    PrunedTree pt = prune(t);
    auto report = check_structural_conditions(pt, t);
    if (!report.ok) return std::nullopt;

    auto sp = spine_layout(pt, t);
    if (!sp) return std::nullopt;

    if (sp->blocks.size() == 1 && t.nodes[sp->blocks[0]].kind == NodeKind::R) {
        // subdivision of a triconnected graph: the embedding is the
        // reference one; the outer face must be the unique maximum face
        PlanarEmbeddedGraph pg;
        pg.g = ref.g;
        pg.rot = ref.rot;
        FaceSet fs = faces(pg);
        int best = -1, best_deg = -1, ties = 0;
        for (FaceId f = 0; f < fs.count(); ++f) {
            if (fs.walks[f].degree() > best_deg) {
                best_deg = fs.walks[f].degree();
                best = f;
                ties = 1;
            } else if (fs.walks[f].degree() == best_deg) {
                ++ties;
            }
        }
        if (ties != 1) return std::nullopt;
        pg.outer_face = best;
        return CandidateEmbedding{std::move(pg), "rigid:max-face"};
    }

    auto built = build_flat(ref, t, *sp, /*unit=*/true, EndChoice{}, EndChoice{});
    if (!built) return std::nullopt;
    return CandidateEmbedding{std::move(built->pg), built->provenance};
}

std::vector<CandidateEmbedding> flat_candidate_embeddings(const PlanarEmbeddedGraph& ref, const SpqrTree& t) {
    PrunedTree pt = prune(t);
    if (!is_flat(pt, t)) throw StructuralError("flat_candidate_embeddings on a non-flat graph");
    auto sp = spine_layout(pt, t);
    if (!sp) return {};

    std::vector<CandidateEmbedding> out;
    std::set<std::string> seen;
    auto add = [&](std::optional<BuiltCandidate> built) {
        if (!built) return;
        std::string key = mirror_canonical_form(built->pg);
        if (seen.insert(key).second) out.push_back(CandidateEmbedding{std::move(built->pg), built->provenance});
    };

    if (sp->blocks.size() == 1) {
        for (int mid = 0; mid < 3; ++mid)
            add(build_flat(ref, t, *sp, /*unit=*/false, EndChoice{mid}, EndChoice{}));
        return out;
    }
    for (int lc = 0; lc < 2; ++lc)
        for (int rc = 0; rc < 2; ++rc)
            add(build_flat(ref, t, *sp, /*unit=*/false, EndChoice{lc}, EndChoice{rc}));
    return out;
}

std::optional<OuterRectangleSpec> candidate_outer_rectangle(const CandidateEmbedding& cand, const SpqrTree& t) {
    const PlanarEmbeddedGraph& pg = cand.embedding;
    if (!pg.outer_face) return std::nullopt;
    FaceSet fs = faces(pg);
    const FaceWalk& co = fs.walks[*pg.outer_face];
    const int len = co.degree();
    {
        // the outer walk must be a simple cycle
        std::set<Vertex> on;
        for (Dart d : co.darts) on.insert(dart_tail(pg.g, d));
        if (static_cast<int>(on.size()) != len) return std::nullopt;
    }

    PrunedTree pt = prune(t);
    auto sp = spine_layout(pt, t);
    if (!sp) return std::nullopt;

    Vertex u = -1, v = -1;
    int plen = 0;
    std::set<EdgeId> outer_edges;
    for (Dart d : co.darts) outer_edges.insert(dart_edge(d));

    int pnode = -1;
    for (int b : sp->blocks)
        if (t.nodes[b].kind == NodeKind::P) {
            pnode = b;
            break;
        }
    if (pnode != -1) {
        // Case 1: the P-node poles span the rectangle; the middle expansion
        // is the straight path (the slot whose edges avoid the outer walk)
        u = t.nodes[pnode].vertices[0];
        v = t.nodes[pnode].vertices[1];
        int mid = -1;
        for (int s = 0; s < 3; ++s) {
            Expansion ex = expansion_graph(t, pnode, s);
            bool on_outer = false;
            for (EdgeId e : ex.edges)
                if (outer_edges.count(e)) on_outer = true;
            if (!on_outer) {
                if (mid != -1) return std::nullopt;
                mid = s;
            }
        }
        if (mid == -1) return std::nullopt;
        plen = expansion_length(t, pnode, mid);
    } else {
        // Case 2: first spine R-node with its spine S-neighbor; the straight
        // path bounds the junction face on the R side
        if (sp->separators.empty()) return std::nullopt;
        int rnode = sp->blocks[0];
        int sep = sp->separators[0];
        int sl = slot_toward(t, sep, rnode);
        u = t.nodes[sep].edges[sl].a;
        v = t.nodes[sep].edges[sl].b;
        std::set<EdgeId> side;
        for (EdgeId e : expansion_graph(t, sep, sl).edges) side.insert(e);
        // junction face: the non-outer face containing both poles
        FaceId f1 = -1;
        for (FaceId f = 0; f < fs.count(); ++f) {
            if (f == *pg.outer_face) continue;
            bool hu = false, hv = false;
            for (Dart d : fs.walks[f].darts) {
                Vertex tv = dart_tail(pg.g, d);
                if (tv == u) hu = true;
                if (tv == v) hv = true;
            }
            if (hu && hv) {
                if (f1 != -1) return std::nullopt;
                f1 = f;
            }
        }
        if (f1 == -1) return std::nullopt;
        // arc of f1 between u and v using only edges of the R side
        const FaceWalk& w = fs.walks[f1];
        const int k = w.degree();
        int start = -1;
        for (int i = 0; i < k; ++i)
            if ((dart_tail(pg.g, w.darts[i]) == u || dart_tail(pg.g, w.darts[i]) == v) && side.count(dart_edge(w.darts[i])))
                start = i;
        if (start == -1) return std::nullopt;
        Vertex target = dart_tail(pg.g, w.darts[start]) == u ? v : u;
        plen = 0;
        for (int i = start; i < start + k; ++i) {
            Dart d = w.darts[i % k];
            if (!side.count(dart_edge(d))) return std::nullopt;
            ++plen;
            if (dart_head(pg.g, d) == target) break;
        }
    }

    // clockwise distance u -> v along the outer walk
    int pos_u = -1, pos_v = -1;
    for (int i = 0; i < len; ++i) {
        Vertex tv = dart_tail(pg.g, co.darts[i]);
        if (tv == u) pos_u = i;
        if (tv == v) pos_v = i;
    }
    if (pos_u == -1 || pos_v == -1) return std::nullopt;
    int r = ((pos_v - pos_u) % len + len) % len;
    int l = len - r;
    if ((r - plen) % 2 != 0 || (l - plen) % 2 != 0) return std::nullopt;
    if (r - plen < 2 || l - plen < 2) return std::nullopt;
    int width = (len - 2 * plen) / 2;
    int height = plen;
    if (width < 1 || height < 1) return std::nullopt;

    auto vertex_at_cw = [&](int dist) { return dart_tail(pg.g, co.darts[(pos_u + dist) % len]); };
    OuterRectangleSpec spec;
    spec.u_r = vertex_at_cw((r - plen) / 2);
    spec.v_r = vertex_at_cw((r + plen) / 2);
    spec.v_l = vertex_at_cw(r + (l - plen) / 2);
    spec.u_l = vertex_at_cw(r + (l + plen) / 2);
    spec.width = width;
    spec.height = height;
    spec.pole_u = u;
    spec.pole_v = v;
    spec.straight_path_len = plen;
    return spec;
}

std::vector<PlanarEmbeddedGraph> all_plane_embeddings(const PlanarEmbeddedGraph& ref, const SpqrTree& t,
                                                      long cap) {
    // choice space: P-node cyclic orders (first slot pinned) x R mirrors
    std::vector<int> choice_nodes;
    std::vector<long> choice_sizes;
    long total = 1;
    for (int n = 0; n < t.node_count(); ++n) {
        const auto& node = t.nodes[n];
        long c = 1;
        if (node.kind == NodeKind::P) {
            c = 1;
            for (int k = 2; k < static_cast<int>(node.edges.size()); ++k) c *= k;  // (k-1)!
        } else if (node.kind == NodeKind::R) {
            c = 2;
        }
        if (c > 1) {
            choice_nodes.push_back(n);
            choice_sizes.push_back(c);
            total *= c;
            if (total > cap) throw StructuralError("embedding choice space exceeds the configured cap");
        }
    }

    std::set<std::string> seen;
    std::vector<PlanarEmbeddedGraph> out;
    std::vector<long> pick(choice_nodes.size(), 0);
    while (true) {
        Assembly asm_(ref, t);
        for (size_t i = 0; i < choice_nodes.size(); ++i) {
            int n = choice_nodes[i];
            const auto& node = t.nodes[n];
            if (node.kind == NodeKind::P) {
                std::vector<int> rest;
                for (int s = 1; s < static_cast<int>(node.edges.size()); ++s) rest.push_back(s);
                std::sort(rest.begin(), rest.end());
                for (long p = 0; p < pick[i]; ++p) std::next_permutation(rest.begin(), rest.end());
                std::vector<int> order{0};
                order.insert(order.end(), rest.begin(), rest.end());
                asm_.chosen[n] = bundle_rot(node, node.vertices[0], order);
            } else {
                SkelRot r = induced_skeleton_rot(ref, t, n);
                asm_.chosen[n] = pick[i] == 0 ? r : mirrored_rot(r);
            }
        }
        asm_.seed(0);
        asm_.expand_all();
        PlanarEmbeddedGraph pg = asm_.finish();
        std::string key = plane_form(pg);
        if (seen.insert(key).second) {
            FaceSet fs = faces(pg);
            for (FaceId f = 0; f < fs.count(); ++f) {
                PlanarEmbeddedGraph plane = pg;
                plane.outer_face = f;
                out.push_back(std::move(plane));
            }
        }
        // advance the mixed-radix counter
        size_t i = 0;
        while (i < pick.size() && pick[i] + 1 >= choice_sizes[i]) {
            pick[i] = 0;
            ++i;
        }
        if (i >= pick.size()) break;
        ++pick[i];
    }
    return out;
}

std::vector<std::optional<Point>> prescribe_outer_rectangle(const PlanarEmbeddedGraph& pg,
                                                            const OuterRectangleSpec& spec) {
    FaceSet fs = faces(pg);
    const FaceWalk& co = fs.walks[*pg.outer_face];
    const int len = co.degree();
    int start = -1;
    for (int i = 0; i < len; ++i)
        if (dart_tail(pg.g, co.darts[i]) == spec.u_r) start = i;
    if (start == -1) throw StructuralError("corner not on the outer walk");

    std::vector<std::optional<Point>> out(pg.g.n);
    const int w = spec.width, h = spec.height;
    int x = w, y = h;
    for (int i = 0; i < len; ++i) {
        Vertex tv = dart_tail(pg.g, co.darts[(start + i) % len]);
        out[tv] = Point{x, y};
        // clockwise: down the right side, west along the bottom, up the
        // left side, east along the top
        if (i < h) --y;
        else if (i < h + w) --x;
        else if (i < h + w + h) ++y;
        else ++x;
    }
    return out;
}

}  // namespace unitrect
