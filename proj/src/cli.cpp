#include "eikonal/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "eikonal/pipeline.hpp"
#include "eikonal/svg.hpp"
#include "eikonal/verify.hpp"
#include "eikonal/wave.hpp"

namespace eik {

namespace {

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write " + path);
    f << text;
}

std::string svg_path_for(const std::string& base, const std::string& suffix, bool many) {
    if (!many) return base;
    auto dot = base.rfind('.');
    if (dot == std::string::npos || base.find('/', dot) != std::string::npos) return base + "_" + suffix;
    return base.substr(0, dot) + "_" + suffix + base.substr(dot);
}

std::string seg_text(const MetricGraph& g, const Segment& s) {
    std::ostringstream os;
    os << g.edge(s.edge).id << ": (" << s.off0 << ", t=" << s.t0 << ") -> (" << s.off1 << ", t=" << s.t1
       << ")  a=" << s.value;
    if (s.norm_sq != Rational(1)) os << " /sqrt(" << s.norm_sq << ")";
    return os.str();
}

void print_family(std::ostream& out, const MetricGraph& g, const Family& f) {
    out << "family " << f.id << "  eps=" << f.eps << "\n";
    for (size_t k = 0; k < f.cells.size(); ++k) {
        const auto& c = f.cells[k];
        out << "  cell " << k + 1 << ": " << g.edge(c.edge).id << " [" << c.lo << ", " << c.hi << "]"
            << (c.reversed ? "  x(r) = " + c.hi.str() + " - r" : "  x(r) = " + c.lo.str() + " + r") << "\n";
    }
    for (const auto& sr : f.sources) {
        out << "  tau[" << g.vertex(sr.source).id << "]:";
        if (sr.rows.empty()) out << " (inactive)";
        for (const auto& t : sr.rows) out << "  " << t.t0 << (t.slope > 0 ? " + r" : " - r");
        out << "\n";
    }
}

const Family& family_by_id(const Partition& p, size_t id) {
    for (const auto& f : p.families)
        if (f.id == id) return f;
    throw InputError("no family " + std::to_string(id) + " (there are " + std::to_string(p.families.size()) + ")");
}

int cmd_hydra(const RunConfig& c, const MetricGraph& g, const PipelineResult& r, ResultEnvelope& env, std::ostream& out) {
    json arr = json::array();
    for (const auto& run : r.runs) {
        const Hydra& h = run.original;
        out << "hydra from " << g.vertex(run.source).id << ", T=" << h.horizon << ": " << h.segments.size()
            << " segments, " << h.corners.size() << " corner points\n";
        for (const auto& s : h.segments) out << "  " << seg_text(g, s) << "\n";
        json corners = json::array();
        for (const auto& p : h.corners) corners.push_back(g.describe(p.x) + " t=" + p.t.str());
        arr.push_back({{"source", g.vertex(run.source).id},
                       {"hydra", h},
                       {"efficient", run.efficient},
                       {"corners_readable", corners}});
        if (!c.svg_path.empty())
            write_file(svg_path_for(c.svg_path, g.vertex(run.source).id, r.runs.size() > 1), render_hydra_svg(g, h));
    }
    env.result = {{"hydras", arr}};
    return kExitOk;
}

int cmd_partition(const RunConfig& c, const MetricGraph& g, const PipelineResult& r, ResultEnvelope& env,
                  std::ostream& out) {
    out << "critical points:";
    for (const auto& x : r.partition.critical) out << " " << g.describe(x);
    out << "\n";
    for (const auto& f : r.partition.families) print_family(out, g, f);
    json single = json::array();
    for (const auto& run : r.runs) single.push_back({{"source", g.vertex(run.source).id}, {"partition", run.single}});
    env.result = {{"partition", r.partition}, {"single_source", single}};
    if (!c.svg_path.empty()) write_file(c.svg_path, render_partition_svg(g, r.partition));
    return kExitOk;
}

int cmd_eikonal(const RunConfig& c, const MetricGraph& g, const PipelineResult& r, ResultEnvelope& env,
                std::ostream& out) {
    std::vector<const Family*> fams;
    if (c.family)
        fams.push_back(&family_by_id(r.partition, *c.family));
    else
        for (const auto& f : r.partition.families) fams.push_back(&f);
    json blocks = json::array(), evals = json::array();
    for (const Family* f : fams) {
        print_family(out, g, *f);
        for (const auto* b : r.blocks.of_family(f->id)) {
            blocks.push_back(*b);
            for (size_t i = 0; i < b->projections.size(); ++i)
                out << "  P" << i + 1 << "[" << g.vertex(b->source).id << "] = " << b->projections[i].str() << "\n";
            if (c.at) {
                if (*c.at < Rational(0) || *c.at > f->eps) {
                    if (c.family) throw InputError("--at " + c.at->str() + " outside [0, " + f->eps.str() + "]");
                    continue;
                }
                RMatrix e = b->evaluate(*c.at);
                out << "  E[" << g.vertex(b->source).id << "](" << *c.at << ") = " << e.str() << "\n";
                evals.push_back({{"family", f->id}, {"source", g.vertex(b->source).id}, {"r", *c.at}, {"matrix", e}});
            }
        }
    }
    env.result = {{"blocks", blocks}};
    if (c.at) env.result["evaluations"] = evals;
    return kExitOk;
}

int cmd_classify(const MetricGraph& g, const PipelineResult& r, ResultEnvelope& env, std::ostream& out) {
    const auto& d = r.descriptor;
    out << d.summary << "\n";
    for (const auto& f : d.families) {
        out << "  family " << f.id << ": eps=" << f.eps << " m=" << f.m << " fiber dim " << f.fiber_dim;
        out << " blocks [";
        for (size_t i = 0; i < f.fiber_blocks.size(); ++i)
            out << (i ? "," : "") << f.fiber_blocks[i].size << "x" << f.fiber_blocks[i].multiplicity;
        out << "]  r=0: " << to_string(f.end0.status) << " dim " << f.end0.dim << "  r=eps: "
            << to_string(f.end_eps.status) << " dim " << f.end_eps.dim << "\n";
    }
    for (const auto& l : d.identifications)
        out << "  identified: family " << l.a.family << (l.a.end ? "@eps" : "@0") << " ~ family " << l.b.family
            << (l.b.end ? "@eps" : "@0") << "\n";
    (void)g;
    env.result = {{"descriptor", d}, {"summary", d.summary}};
    return kExitOk;
}

int cmd_wave(const RunConfig& c, const MetricGraph& g, const PipelineResult& r, ResultEnvelope& env, std::ostream& out) {
    if (c.controls_path.empty()) throw InputError("wave needs --controls PATH");
    WaveInput in = load_wave_input(c.controls_path);
    std::vector<const Hydra*> hydras;
    std::vector<PiecewisePolynomial> controls;
    for (size_t i = 0; i < in.sources.size(); ++i) {
        auto v = g.find_vertex(in.sources[i]);
        if (!v) throw InputError("control for unknown vertex " + in.sources[i]);
        size_t k = 0;
        while (k < r.sigma.size() && r.sigma[k] != *v) ++k;
        if (k == r.sigma.size()) throw InputError("control for a vertex outside sigma: " + in.sources[i]);
        hydras.push_back(&r.runs[k].original);
        controls.push_back(in.controls[i]);
    }
    auto sources = wave_sources(g, hydras, controls);
    json vals = json::array();
    for (const auto& text : in.points) {
        GraphPoint x = parse_point(g, text);
        try {
            Rational u = wave_snapshot(g, sources, x);
            out << text << " " << u << "\n";
            vals.push_back({{"point", text}, {"value", u}});
        } catch (const CriticalPointError&) {
            out << text << " critical\n";
            vals.push_back({{"point", text}, {"value", nullptr}, {"critical", true}});
        }
    }
    env.result = {{"values", vals}};
    return kExitOk;
}

int cmd_verify(const MetricGraph& g, const PipelineResult& r, uint64_t seed, ResultEnvelope& env, std::ostream& out) {
    VerifyReport rep = verify_pipeline(g, r, seed);
    json checks = json::array();
    for (const auto& c : rep.checks) {
        out << (c.ok ? "PASS " : "FAIL ") << c.name << " (" << c.cases << " cases)";
        if (!c.ok) out << ": " << c.detail;
        out << "\n";
        checks.push_back({{"name", c.name}, {"ok", c.ok}, {"cases", c.cases}, {"detail", c.detail}});
    }
    env.result = {{"checks", checks}, {"ok", rep.ok()}};
    return rep.ok() ? kExitOk : kExitInvariant;
}

}  // namespace

int run(const RunConfig& c, ResultEnvelope& env, std::ostream& out) {
    env.config = c;
    env.subcommand = c.subcommand;
    if (c.T <= Rational(0)) throw InputError("T must be positive");
    MetricGraph g = load_graph(c.graph);
    std::vector<size_t> sigma = resolve_sigma(g, c.sigma);
    bool need_algebra = c.subcommand == "classify" || c.subcommand == "verify";
    PipelineResult r = run_pipeline(g, sigma, c.T, c.seed, need_algebra);
    env.diagnostics = r.diagnostics;
    int code = kExitOk;
    if (c.subcommand == "hydra") code = cmd_hydra(c, g, r, env, out);
    else if (c.subcommand == "partition") code = cmd_partition(c, g, r, env, out);
    else if (c.subcommand == "eikonal") code = cmd_eikonal(c, g, r, env, out);
    else if (c.subcommand == "classify") code = cmd_classify(g, r, env, out);
    else if (c.subcommand == "wave") code = cmd_wave(c, g, r, env, out);
    else if (c.subcommand == "verify") code = cmd_verify(g, r, c.seed, env, out);
    else throw InputError("unknown subcommand " + c.subcommand);
    for (const auto& d : env.diagnostics) out << "note: " << d << "\n";
    return code;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact eikonal algebra workbench for wave hydras on metric graphs"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string T_text, at_text;
    size_t family = 0;

    const std::vector<std::pair<std::string, std::string>> subs = {
        {"hydra", "particle hydras of the fundamental solutions"},
        {"partition", "critical points, families, cells and tau maps"},
        {"eikonal", "projection blocks and E(r) evaluations"},
        {"classify", "block structure of the eikonal algebra"},
        {"wave", "wave snapshot u(x,T) for controls given in --controls"},
        {"verify", "exact invariant suite (exit 2 on violation)"}};
    for (const auto& [name, help] : subs) {
        CLI::App* s = app.add_subcommand(name, help);
        s->add_option("--graph", cfg.graph, "graph JSON file")->required();
        s->add_option("--sigma", cfg.sigma, "controlled boundary vertices, comma separated")->required()->delimiter(',');
        s->add_option("--T", T_text, "time horizon as a rational, e.g. 11/4")->required();
        s->add_option("--json", cfg.json_path, "write the result envelope here ('-' for stdout)");
        s->add_option("--svg", cfg.svg_path, "write an SVG diagram (hydra, partition)");
        s->add_option("--at", at_text, "family parameter r for eikonal evaluation");
        s->add_option("--family", family, "family id (1-based)");
        s->add_option("--seed", cfg.seed, "seed for the random elements in the block decomposition");
        s->add_option("--controls", cfg.controls_path, "controls and sample points (wave)");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }
    for (const auto* s : app.get_subcommands()) cfg.subcommand = s->get_name();
    const CLI::App* sub = app.get_subcommand(cfg.subcommand);

    try {
        try {
            cfg.T = Rational::parse(T_text);
            if (!at_text.empty()) cfg.at = Rational::parse(at_text);
        } catch (const std::exception&) {
            throw InputError("rationals must look like p/q or an integer");
        }
        if (sub->count("--family")) {
            if (family == 0) throw InputError("family ids start at 1");
            cfg.family = family;
        }
        ResultEnvelope env;
        int code = run(cfg, env, cfg.json_path == "-" ? err : out);
        if (!cfg.json_path.empty()) {
            std::string text = json(env).dump(2) + "\n";
            if (cfg.json_path == "-")
                out << text;
            else
                write_file(cfg.json_path, text);
        }
        return code;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const CriticalPointError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInvariant;
    }
}

}  // namespace eik
