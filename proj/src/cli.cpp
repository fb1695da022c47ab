#include "unitrect/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "unitrect/drawing.hpp"
#include "unitrect/embed.hpp"
#include "unitrect/flow.hpp"
#include "unitrect/io.hpp"
#include "unitrect/oracle.hpp"
#include "unitrect/rect_holes.hpp"
#include "unitrect/solve.hpp"
#include "unitrect/spqr.hpp"

namespace unitrect {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int oracle_edge_budget(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("UNITRECT_MAX_ORACLE_EDGES")) return std::atoi(env);
    return 16;
}

json failure_json(const Failure& f) {
    json j;
    j["kind"] = failure_kind_name(f.kind);
    if (f.edge) j["edge"] = *f.edge;
    if (f.vertex_a) j["vertex_a"] = *f.vertex_a;
    if (f.vertex_b) j["vertex_b"] = *f.vertex_b;
    if (f.face) j["face"] = *f.face;
    if (!f.detail.empty()) j["detail"] = f.detail;
    return j;
}

int emit_solution(const SolveResponse& r, const PlanarEmbeddedGraph& pg, const std::string& svg_path,
                  int scale, bool verbose, std::ostream& out) {
    json j;
    j["positive"] = r.positive;
    if (r.positive && r.drawing) j["drawing"] = json::parse(drawing_to_json(*r.drawing));
    if (verbose && !r.witness.empty()) j["witness"] = r.witness;
    if (!r.positive && !r.witness.empty()) j["reason"] = r.witness;
    out << j.dump() << "\n";
    if (r.positive && r.drawing && !svg_path.empty()) {
        std::ofstream svg(svg_path);
        svg << render_svg(pg, *r.drawing, scale);
    }
    return r.positive ? 0 : 1;
}

int cmd_check(const std::string& graph_path, const std::string& drawing_path, std::string level,
              std::ostream& out) {
    PlanarEmbeddedGraph pg = parse_graph_json(read_file(graph_path));
    GridDrawing d = parse_drawing_json(read_file(drawing_path), pg.g.n);
    if (level == "auto") level = pg.outer_face ? "inner-rect" : "embedding";

    Verdict v = Verdict::pass();
    if (level == "even-faces") {
        v = even_faces_check(pg);
    } else {
        v = check_unit_length(pg.g, d);
        if (v.ok() && level != "unit") v = check_planar_grid(pg.g, d);
        if (v.ok() && level != "unit" && level != "planar") v = check_embedding_preserving(pg, d);
        if (v.ok() && level == "inner-rect") v = check_inner_rectangular(pg, d);
        if (v.ok() && level == "rect") v = check_rectangular(pg, d);
    }
    json j;
    j["ok"] = v.ok();
    if (!v.ok()) j["failure"] = failure_json(*v.failure);
    out << j.dump() << "\n";
    return v.ok() ? 0 : 1;
}

int cmd_spqr(const std::string& graph_path, bool dot, std::ostream& out) {
    PlanarEmbeddedGraph pg = parse_graph_json(read_file(graph_path));
    SpqrTree t = build_spqr(pg.g);
    PrunedTree pt = prune(t);
    auto cond = check_structural_conditions(pt, t);

    json j;
    json nodes = json::array();
    for (int n = 0; n < t.node_count(); ++n) {
        json node;
        node["id"] = n;
        node["kind"] = node_kind_name(t.nodes[n].kind);
        json edges = json::array();
        for (const auto& e : t.nodes[n].edges) {
            json ej;
            ej["ends"] = {e.a, e.b};
            ej["virtual"] = e.is_virtual;
            if (e.is_virtual) ej["twin_node"] = e.twin_node;
            else ej["edge"] = e.real_id;
            edges.push_back(ej);
        }
        node["skeleton"] = edges;
        nodes.push_back(node);
    }
    j["nodes"] = nodes;
    json spine = json::array();
    for (int i : pt.spine) spine.push_back(pt.node_ids[i]);
    j["caterpillar"] = pt.caterpillar;
    j["spine"] = spine;
    j["conditions_ok"] = cond.ok;
    if (!cond.ok) j["violated"] = cond.violated;
    j["flat"] = is_flat(pt, t);
    out << j.dump() << "\n";

    if (dot) {
        out << "graph spqr {\n";
        for (int n = 0; n < t.node_count(); ++n)
            out << "  n" << n << " [label=\"" << node_kind_name(t.nodes[n].kind) << n << "\"];\n";
        auto adj = t.adjacency();
        for (int n = 0; n < t.node_count(); ++n)
            for (int m : adj[n])
                if (m > n) out << "  n" << n << " -- n" << m << ";\n";
        out << "}\n";
    }
    return 0;
}

int cmd_oracle(const std::string& graph_path, const std::string& mode, const std::string& filter,
               const std::string& outer_path, const std::string& decide_mode, int max_edges,
               std::ostream& out) {
    PlanarEmbeddedGraph pg = parse_graph_json(read_file(graph_path));
    OracleOptions opts;
    opts.max_edges = oracle_edge_budget(max_edges);

    if (mode == "enumerate") {
        if (filter == "rect") opts.filter_rect = true;
        if (filter == "inner-rect") {
            opts.filter_inner_rect = true;
            opts.require_embedding = true;
            opts.require_outer = true;
        }
        if (!outer_path.empty()) opts.pinned = parse_prescription_json(read_file(outer_path), pg.g.n);
        DrawingEnumeration de = enumerate_unit_drawings(pg, opts);
        json j;
        j["count"] = de.drawings.size();
        json arr = json::array();
        for (const auto& d : de.drawings) arr.push_back(json::parse(drawing_to_json(d)));
        j["drawings"] = arr;
        out << j.dump() << "\n";
        return 0;
    }

    SolveMode m;
    if (decide_mode == "uirfe" || decide_mode == "fixed-outer") m = SolveMode::UirfeFixedOuter;
    else if (decide_mode == "urfe") m = SolveMode::UrfePlane;
    else if (decide_mode == "urfe-embedded") m = SolveMode::UrfePlanarEmbedded;
    else if (decide_mode == "ur") m = SolveMode::Ur;
    else if (decide_mode == "rect") m = SolveMode::Rect;
    else throw ParseError("unknown decide mode " + decide_mode);
    if (m == SolveMode::UirfeFixedOuter) {
        if (outer_path.empty()) throw ParseError("fixed-outer decisions need --outer");
        opts.pinned = parse_prescription_json(read_file(outer_path), pg.g.n);
    }
    OracleDecision dec = decide_by_oracle(pg, m, opts);
    json j;
    j["positive"] = dec.positive;
    if (dec.drawing) j["drawing"] = json::parse(drawing_to_json(*dec.drawing));
    out << j.dump() << "\n";
    return dec.positive ? 0 : 1;
}

int cmd_flow(const PlanarEmbeddedGraph& pg, bool embedded, bool verbose, std::ostream& out) {
    json j;
    if (embedded) {
        if (!pg.outer_face) throw ParseError("--embedded needs an outer face in the graph JSON");
        FlowNetwork net = build_rectangular_network(pg);
        auto circ = feasible_flow(net);
        j["positive"] = circ.has_value();
        if (circ && verbose) {
            json angles = json::array();
            for (size_t i = 0; i < net.arcs.size(); ++i) {
                json a;
                a["vertex"] = net.arcs[i].vertex;
                a["face"] = net.arcs[i].face;
                a["angle"] = circ->flow[i] * 90;
                angles.push_back(a);
            }
            j["angles"] = angles;
        }
        out << j.dump() << "\n";
        return circ ? 0 : 1;
    }
    bool pos = solve_rectangular(pg);
    j["positive"] = pos;
    out << j.dump() << "\n";
    return pos ? 0 : 1;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"unit-length rectangular drawing toolkit"};
    app.require_subcommand(1);

    std::string graph_path, drawing_path, outer_path, svg_path;
    std::string level = "auto", mode, oracle_mode = "enumerate", filter, decide_mode = "ur";
    int scale = 40, max_edges = 0;
    bool dot = false, verbose = false, embedded = false;

    auto* check = app.add_subcommand("check", "validate a drawing against a graph");
    check->add_option("--graph", graph_path)->required();
    check->add_option("--drawing", drawing_path)->required();
    check->add_option("--level", level)
        ->check(CLI::IsMember({"auto", "unit", "planar", "embedding", "inner-rect", "rect", "even-faces"}));

    auto* solve = app.add_subcommand("solve", "decide drawability and construct a drawing");
    solve->add_option("--mode", mode)
        ->required()
        ->check(CLI::IsMember({"uirfe", "fixed-outer", "urfe", "urfe-embedded", "ur", "rect"}));
    solve->add_option("--graph", graph_path)->required();
    solve->add_option("--outer", outer_path);
    solve->add_option("--svg", svg_path);
    solve->add_option("--scale", scale)->check(CLI::PositiveNumber);
    solve->add_flag("--verbose", verbose);
    solve->add_flag("--embedded", embedded);

    auto* spqr_cmd = app.add_subcommand("spqr", "SPQR-tree summary");
    spqr_cmd->add_option("--graph", graph_path)->required();
    spqr_cmd->add_flag("--dot", dot);

    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive reference engines");
    oracle_cmd->add_option("--graph", graph_path)->required();
    oracle_cmd->add_option("--mode", oracle_mode)->check(CLI::IsMember({"enumerate", "decide"}));
    oracle_cmd->add_option("--decide-mode", decide_mode);
    oracle_cmd->add_option("--filter", filter)->check(CLI::IsMember({"", "rect", "inner-rect"}));
    oracle_cmd->add_option("--outer", outer_path);
    oracle_cmd->add_option("--max-edges", max_edges);

    auto* flow_cmd = app.add_subcommand("flow", "rectangular-drawing existence via flow");
    flow_cmd->add_option("--graph", graph_path)->required();
    flow_cmd->add_flag("--embedded", embedded);
    flow_cmd->add_flag("--verbose", verbose);

    std::vector<const char*> argv;
    std::string prog = "unitrect";
    argv.push_back(prog.c_str());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        err << "{\"error\": \"" << e.what() << "\"}\n";
        return 2;
    }

    try {
        if (check->parsed()) return cmd_check(graph_path, drawing_path, level, out);
        if (spqr_cmd->parsed()) return cmd_spqr(graph_path, dot, out);
        if (oracle_cmd->parsed())
            return cmd_oracle(graph_path, oracle_mode, filter, outer_path, decide_mode, max_edges, out);

        PlanarEmbeddedGraph pg = parse_graph_json(read_file(graph_path));
        if (flow_cmd->parsed()) return cmd_flow(pg, embedded, verbose, out);

        // solve
        if (mode == "rect") return cmd_flow(pg, embedded, verbose, out);
        SolveResponse r;
        if (mode == "uirfe" || mode == "fixed-outer") {
            if (outer_path.empty()) throw ParseError("fixed-outer mode needs --outer");
            auto presc = parse_prescription_json(read_file(outer_path), pg.g.n);
            if (!pg.outer_face) throw ParseError("fixed-outer mode needs an outer face in the graph JSON");
            r = solve_uirfe_fixed_outer(pg, presc);
        } else if (mode == "urfe") {
            if (!pg.outer_face) throw ParseError("urfe mode needs an outer face in the graph JSON");
            r = solve_urfe_plane(pg);
        } else if (mode == "urfe-embedded") {
            r = solve_urfe_planar_embedded(pg);
        } else {
            r = solve_ur(pg);
        }
        return emit_solution(r, pg, svg_path, scale, verbose, out);
    } catch (const ParseError& e) {
        err << "{\"error\": \"" << e.what() << "\"}\n";
        return 2;
    } catch (const StructuralError& e) {
        err << "{\"error\": \"" << e.what() << "\"}\n";
        return 2;
    }
}

}  // namespace unitrect
