// Command line front end: exact triangulations, flips, flip graphs, lifts,
// regularity certificates, GKZ vectors and the built-in configuration
// catalog.  Exit codes: 0 success / checked-true, 1 checked-false (invalid
// triangulation, infeasible, failed verification), 2 usage or input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "trisec/io.hpp"
#include "trisec/verify.hpp"

using namespace trisec;
using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

struct Output {
    bool as_json = false;
    json j;

    explicit Output(const std::string& command) { j["schema_version"] = kSchemaVersion, j["command"] = command; }
    void emit() const {
        if (as_json) std::cout << j.dump(2) << "\n";
    }
};

json cell_json(const Cell& c) { return json(c); }

json cells_json(const std::vector<Cell>& cells) {
    json a = json::array();
    for (const auto& c : cells) a.push_back(cell_json(c));
    return a;
}

json circuit_json(const Circuit& c) {
    json j;
    j["support"] = c.support;
    j["positive"] = c.positive;
    j["negative"] = c.negative;
    json coeffs = json::object();
    for (const auto& [l, v] : c.coefficients) coeffs[std::to_string(l)] = v.str();
    j["coefficients"] = coeffs;
    return j;
}

json lift_json(const Lift& w) {
    json j = json::object();
    for (const auto& [l, v] : w.values) j[std::to_string(l)] = v.str();
    return j;
}

PointConfiguration load_config(const std::string& path) { return io::read_config_file(path); }

Triangulation load_triangulation(const std::string& path) {
    return Triangulation::from_cells(io::read_cells_file(path));
}

void write_cells_out(const std::vector<Cell>& cells, const std::string& path,
                     const std::string& comment = {}) {
    if (path.empty() || path == "-") {
        if (!comment.empty()) std::cout << "# " << comment << "\n";
        io::write_cells(std::cout, cells);
    } else {
        std::ofstream out(path);
        if (!out) throw Error(Error::Kind::Io, "cannot write " + path);
        if (!comment.empty()) out << "# " << comment << "\n";
        io::write_cells(out, cells);
    }
}

Lift lift_from_spec(const PointConfiguration& cfg, const std::string& spec,
                    const std::vector<Label>& order) {
    if (spec == "delaunay") return standard_lift(cfg, LiftKind::Delaunay);
    std::vector<Label> ord = order;
    if (spec == "pulling") return standard_lift(cfg, LiftKind::Pulling, ord);
    if (spec == "pushing") return standard_lift(cfg, LiftKind::Pushing, ord);
    if (spec.rfind("file:", 0) == 0) {
        Lift w = io::read_lift_file(spec.substr(5));
        for (Label l : cfg.labels()) w.at(l);
        return w;
    }
    throw Error(Error::Kind::Precondition,
                "lift must be delaunay, pulling, pushing or file:<path>");
}

int run(int argc, char** argv) {
    CLI::App app{"exact triangulations of point configurations: flips, regular "
                 "subdivisions, GKZ vectors and flip graphs"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit machine-readable JSON");

    // check-tri <config> <tri>
    std::string ct_cfg, ct_tri;
    auto* check_tri = app.add_subcommand("check-tri", "validate a triangulation file");
    check_tri->add_option("config", ct_cfg)->required();
    check_tri->add_option("tri", ct_tri)->required();

    // triangulate <config> --lift ... [--order ...] [-o out]
    std::string tr_cfg, tr_lift, tr_out;
    std::vector<Label> tr_order;
    auto* triangulate = app.add_subcommand("triangulate", "regular subdivision from a lift");
    triangulate->add_option("config", tr_cfg)->required();
    triangulate->add_option("--lift", tr_lift, "delaunay|pulling|pushing|file:<path>")
        ->required();
    triangulate->add_option("--order", tr_order, "label order for pulling/pushing")
        ->delimiter(' ');
    triangulate->add_option("-o,--out", tr_out, "output file (default stdout)");

    // flips <config> <tri>
    std::string fl_cfg, fl_tri;
    auto* flips_cmd = app.add_subcommand("flips", "list the flips supported in a triangulation");
    flips_cmd->add_option("config", fl_cfg)->required();
    flips_cmd->add_option("tri", fl_tri)->required();

    // flip <config> <tri> --circuit <labels> [--reverse] [-o out]
    std::string fp_cfg, fp_tri, fp_out;
    std::vector<Label> fp_circuit;
    bool fp_reverse = false;
    auto* flip_cmd = app.add_subcommand("flip", "apply the flip supported on a circuit");
    flip_cmd->add_option("config", fp_cfg)->required();
    flip_cmd->add_option("tri", fp_tri)->required();
    flip_cmd->add_option("--circuit", fp_circuit, "support labels of the flip circuit")
        ->required()
        ->delimiter(' ');
    flip_cmd->add_flag("--reverse", fp_reverse,
                       "accepted for symmetry; the direction is determined by the input");
    flip_cmd->add_option("-o,--out", fp_out);

    // flipgraph <config> [--seed tri] [--cap N] [--diameter] [--threads k]
    std::string fg_cfg, fg_seed, fg_nodes_out, fg_adj_out;
    size_t fg_cap = 1u << 20;
    bool fg_diameter = false;
    int fg_threads = 1;
    auto* flipgraph = app.add_subcommand("flipgraph", "explore the flip graph by BFS");
    flipgraph->add_option("config", fg_cfg)->required();
    flipgraph->add_option("--seed", fg_seed, "seed triangulation file (default: placing)");
    flipgraph->add_option("--cap", fg_cap, "node cap");
    flipgraph->add_flag("--diameter", fg_diameter, "report exact component diameters");
    flipgraph->add_option("--threads", fg_threads, "parallel BFS expansion threads");
    flipgraph->add_option("--nodes", fg_nodes_out, "write 'index: cells' table here");
    flipgraph->add_option("--adjacency", fg_adj_out, "write annotated adjacency list here");

    // regular <config> <tri>
    std::string rg_cfg, rg_tri;
    auto* regular_cmd = app.add_subcommand("regular", "regularity certificate or INFEASIBLE");
    regular_cmd->add_option("config", rg_cfg)->required();
    regular_cmd->add_option("tri", rg_tri)->required();

    // gkz <config> <tri>
    std::string gk_cfg, gk_tri;
    auto* gkz_cmd = app.add_subcommand("gkz", "GKZ vector of a triangulation");
    gkz_cmd->add_option("config", gk_cfg)->required();
    gkz_cmd->add_option("tri", gk_tri)->required();

    // secondary <config> [--cap N]
    std::string sc_cfg;
    size_t sc_cap = 1u << 20;
    auto* secondary_cmd =
        app.add_subcommand("secondary", "secondary polytope summary (full enumeration)");
    secondary_cmd->add_option("config", sc_cfg)->required();
    secondary_cmd->add_option("--cap", sc_cap);

    // monotone <config> <tri> --lift ... [--policy steepest] [--order ...]
    std::string mo_cfg, mo_tri, mo_lift, mo_policy = "first";
    std::vector<Label> mo_order;
    auto* monotone_cmd =
        app.add_subcommand("monotone", "w-monotone flip sequence towards T_w");
    monotone_cmd->add_option("config", mo_cfg)->required();
    monotone_cmd->add_option("tri", mo_tri)->required();
    monotone_cmd->add_option("--lift", mo_lift)->required();
    monotone_cmd->add_option("--order", mo_order)->delimiter(' ');
    monotone_cmd->add_option("--policy", mo_policy)->check(CLI::IsMember({"first", "steepest"}));

    // catalog list | catalog emit <name> [--param k=v] [-o out]
    auto* catalog_cmd = app.add_subcommand("catalog", "built-in configurations");
    auto* catalog_list = catalog_cmd->add_subcommand("list", "list builder names");
    std::string ce_name, ce_out;
    std::vector<std::string> ce_params;
    auto* catalog_emit = catalog_cmd->add_subcommand("emit", "write a configuration file");
    catalog_emit->add_option("name", ce_name)->required();
    catalog_emit->add_option("--param", ce_params, "key=value (t, eps, n, d1..d4)");
    catalog_emit->add_option("-o,--out", ce_out);

    // verify <name>
    std::string vf_name;
    auto* verify_cmd = app.add_subcommand("verify", "run a named verification scenario");
    verify_cmd->add_option("name", vf_name, "scenario (or 'list')")->required();

    CLI11_PARSE(app, argc, argv);

    if (*check_tri) {
        Output out("check-tri");
        out.as_json = as_json;
        PointConfiguration cfg = load_config(ct_cfg);
        Triangulation t = load_triangulation(ct_tri);
        auto rep = is_valid_triangulation(cfg, t);
        out.j["valid"] = rep.ok;
        json viols = json::array();
        for (const auto& v : rep.violations) viols.push_back(v.str());
        out.j["violations"] = viols;
        if (!as_json) {
            std::cout << (rep.ok ? "valid" : rep.summary()) << "\n";
        }
        out.emit();
        return rep.ok ? 0 : 1;
    }

    if (*triangulate) {
        Output out("triangulate");
        out.as_json = as_json;
        PointConfiguration cfg = load_config(tr_cfg);
        Lift w = lift_from_spec(cfg, tr_lift, tr_order);
        Subdivision s = subdivision_from_lift(cfg, w);
        bool is_tri = as_triangulation(cfg, s).has_value();
        out.j["kind"] = is_tri ? "triangulation" : "subdivision";
        out.j["cells"] = cells_json(s.cells);
        if (as_json)
            out.emit();
        else
            write_cells_out(s.cells, tr_out, is_tri ? "triangulation" : "subdivision");
        return 0;
    }

    if (*flips_cmd) {
        Output out("flips");
        out.as_json = as_json;
        PointConfiguration cfg = load_config(fl_cfg);
        Triangulation t = load_triangulation(fl_tri);
        auto flips = find_flips(cfg, t);
        json arr = json::array();
        for (const auto& f : flips) {
            json jf;
            jf["type"] = {f.type.first, f.type.second};
            jf["circuit"] = circuit_json(f.circuit);
            jf["from_side"] = f.from_side == CircuitSide::Plus ? "+" : "-";
            arr.push_back(jf);
            if (!as_json) std::cout << f.str() << "\n";
        }
        out.j["flips"] = arr;
        out.emit();
        return 0;
    }

    if (*flip_cmd) {
        Output out("flip");
        out.as_json = as_json;
        PointConfiguration cfg = load_config(fp_cfg);
        Triangulation t = load_triangulation(fp_tri);
        Cell support = make_cell(fp_circuit);
        const Flip* chosen = nullptr;
        auto flips = find_flips(cfg, t);
        for (const auto& f : flips)
            if (f.circuit.support == support) chosen = &f;
        if (!chosen) {
            std::cerr << "no flip supported on circuit [" << cell_str(support) << "]\n";
            return 1;
        }
        // The flip across a circuit is an involution; --reverse re-applies it
        // from the side the triangulation determines, so the result is the
        // same either way.
        Triangulation t2 = apply_flip(cfg, t, *chosen);
        out.j["type"] = {chosen->type.first, chosen->type.second};
        out.j["cells"] = cells_json(t2.cells);
        if (as_json)
            out.emit();
        else
            write_cells_out(t2.cells, fp_out);
        return 0;
    }

    if (*flipgraph) {
        Output out("flipgraph");
        out.as_json = as_json;
        PointConfiguration cfg = load_config(fg_cfg);
        Triangulation seed = fg_seed.empty()
                                 ? Triangulation::from_cells(cfg.placing_triangulation())
                                 : load_triangulation(fg_seed);
        FlipGraphOptions opt;
        opt.cap = fg_cap;
        opt.want_diameter = fg_diameter;
        opt.threads = fg_threads;
        FlipGraph g = flip_graph(cfg, {seed}, opt);
        out.j["nodes"] = g.nodes.size();
        out.j["edges"] = g.edges.size();
        out.j["components"] = g.components.size();
        out.j["truncated"] = g.truncated;
        std::ostringstream line;
        line << "nodes=" << g.nodes.size() << " components=" << g.components.size()
             << " edges=" << g.edges.size();
        if (fg_diameter) {
            json diams = json::array();
            for (const auto& c : g.components) {
                if (c.diameter) {
                    diams.push_back(*c.diameter);
                    line << " diameter=" << *c.diameter;
                } else {
                    diams.push_back(nullptr);
                }
            }
            out.j["diameters"] = diams;
        }
        if (g.truncated) line << " truncated";
        if (!as_json) std::cout << line.str() << "\n";
        out.emit();
        if (!fg_nodes_out.empty()) {
            std::ofstream nf(fg_nodes_out);
            for (size_t i = 0; i < g.nodes.size(); ++i) {
                nf << i << ":";
                for (const auto& c : g.nodes[i].cells) nf << " " << cell_str(c) << ";";
                nf << "\n";
            }
        }
        if (!fg_adj_out.empty()) {
            std::ofstream af(fg_adj_out);
            for (const auto& e : g.edges) {
                af << e.a << " -- " << e.b << " type=(" << e.type.first << "," << e.type.second
                   << ") circuit=[" << cell_str(e.circuit.positive) << " | "
                   << cell_str(e.circuit.negative) << "]\n";
            }
        }
        return 0;
    }

    if (*regular_cmd) {
        Output out("regular");
        out.as_json = as_json;
        PointConfiguration cfg = load_config(rg_cfg);
        auto cells = io::read_cells_file(rg_tri);
        RegularityResult r;
        if (auto t = as_triangulation(cfg, Subdivision::from_cells(cells)))
            r = is_regular(cfg, *t);
        else
            r = is_regular_subdivision(cfg, Subdivision::from_cells(cells));
        out.j["regular"] = r.regular;
        if (r.regular) {
            out.j["certificate"] = lift_json(*r.certificate);
            if (!as_json) io::write_lift(std::cout, *r.certificate);
        } else {
            if (!as_json) std::cout << "INFEASIBLE\n";
        }
        out.emit();
        return r.regular ? 0 : 1;
    }

    if (*gkz_cmd) {
        Output out("gkz");
        out.as_json = as_json;
        PointConfiguration cfg = load_config(gk_cfg);
        Triangulation t = load_triangulation(gk_tri);
        GkzVector v = gkz_vector(cfg, t);
        json jv = json::object();
        for (const auto& [l, x] : v.entries) {
            jv[std::to_string(l)] = x.str();
            if (!as_json) std::cout << l << ' ' << x.str() << "\n";
        }
        out.j["gkz"] = jv;
        out.emit();
        return 0;
    }

    if (*secondary_cmd) {
        Output out("secondary");
        out.as_json = as_json;
        PointConfiguration cfg = load_config(sc_cfg);
        auto tris = enumerate_triangulations_bruteforce(cfg, sc_cap);
        auto sec = secondary_polytope_summary(cfg, tris);
        out.j["triangulations"] = tris.size();
        out.j["dim"] = sec.dim;
        out.j["f_vector"] = sec.f_vector;
        out.j["total_faces"] = sec.total_faces;
        out.j["vertices"] = sec.vertex_triangulations.size();
        if (!as_json) {
            std::cout << "triangulations=" << tris.size() << " dim=" << sec.dim << " f_vector=(";
            for (size_t i = 0; i < sec.f_vector.size(); ++i)
                std::cout << (i ? "," : "") << sec.f_vector[i];
            std::cout << ",1) total_faces=" << sec.total_faces
                      << " vertices=" << sec.vertex_triangulations.size() << "\n";
        }
        out.emit();
        return 0;
    }

    if (*monotone_cmd) {
        Output out("monotone");
        out.as_json = as_json;
        PointConfiguration cfg = load_config(mo_cfg);
        Triangulation t = load_triangulation(mo_tri);
        Lift w = lift_from_spec(cfg, mo_lift, mo_order);
        auto res = monotone_flip_sequence(
            cfg, t, w,
            mo_policy == "steepest" ? MonotonePolicy::Steepest : MonotonePolicy::First);
        json arr = json::array();
        for (const auto& f : res.flips) {
            json jf;
            jf["type"] = {f.type.first, f.type.second};
            jf["circuit"] = circuit_json(f.circuit);
            arr.push_back(jf);
            if (!as_json) std::cout << f.str() << "\n";
        }
        out.j["flips"] = arr;
        out.j["stuck"] = res.stuck;
        out.j["final"] = cells_json(res.final.cells);
        if (!as_json) {
            std::cout << "stuck=" << (res.stuck ? "true" : "false") << "\n";
            std::cout << "final=" << res.final.str() << "\n";
        }
        out.emit();
        return 0;
    }

    if (*catalog_list) {
        Output out("catalog-list");
        out.as_json = as_json;
        out.j["names"] = catalog::names();
        if (!as_json)
            for (const auto& n : catalog::names()) std::cout << n << "\n";
        out.emit();
        return 0;
    }

    if (*catalog_emit) {
        std::map<std::string, std::string> params;
        for (const auto& p : ce_params) {
            auto eq = p.find('=');
            if (eq == std::string::npos)
                throw Error(Error::Kind::Precondition, "--param expects key=value");
            params[p.substr(0, eq)] = p.substr(eq + 1);
        }
        PointConfiguration cfg = catalog::build(ce_name, params);
        if (ce_out.empty() || ce_out == "-") {
            io::write_config(std::cout, cfg);
        } else {
            std::ofstream f(ce_out);
            if (!f) throw Error(Error::Kind::Io, "cannot write " + ce_out);
            io::write_config(f, cfg);
        }
        return 0;
    }

    if (*verify_cmd) {
        if (vf_name == "list") {
            for (const auto& n : verify::scenario_names()) std::cout << n << "\n";
            return 0;
        }
        Output out("verify");
        out.as_json = as_json;
        auto res = verify::run(vf_name);
        out.j["name"] = res.name;
        out.j["ok"] = res.ok();
        out.j["summary"] = res.summary;
        out.j["seconds"] = res.seconds;
        json checks = json::array();
        for (const auto& [what, pass] : res.report.checks)
            checks.push_back({{"check", what}, {"pass", pass}});
        out.j["checks"] = checks;
        out.j["notes"] = res.report.notes;
        if (!as_json) {
            std::cout << res.summary << "\n";
            if (!res.ok()) std::cout << res.report.str();
        }
        out.emit();
        return res.ok() ? 0 : 1;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "parse error";
        if (e.line) std::cerr << " at line " << e.line << ", column " << e.column;
        std::cerr << ": " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
