#include "eikonal/io.hpp"

#include <fstream>
#include <sstream>

namespace eik {

namespace {

template <class T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    return j.at(key).get<T>();
}

const char* kind_name(HydraKind k) { return to_string(k); }

HydraKind kind_from(const std::string& s) {
    for (auto k : {HydraKind::Original, HydraKind::Extended, HydraKind::Efficient})
        if (s == to_string(k)) return k;
    throw InputError("unknown hydra kind: " + s);
}

EndStatus status_from(const std::string& s) {
    for (auto k : {EndStatus::Zero, EndStatus::Proper, EndStatus::Full})
        if (s == to_string(k)) return k;
    throw InputError("unknown endpoint status: " + s);
}

}  // namespace

void to_json(json& j, const Rational& r) { j = r.str(); }
void from_json(const json& j, Rational& r) {
    if (j.is_string()) {
        try {
            r = Rational::parse(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw InputError("not a rational: " + j.get<std::string>());
        }
        return;
    }
    if (j.is_number_integer()) {
        r = Rational(j.get<long>());
        return;
    }
    throw InputError("rationals must be strings \"p/q\" or integers, got " + j.dump());
}

void to_json(json& j, const RMatrix& m) {
    j = json::array();
    for (size_t i = 0; i < m.rows(); ++i) j.push_back(m.row(i));
}
void from_json(const json& j, RMatrix& m) {
    auto rows = j.get<std::vector<RVector>>();
    m = RMatrix::from_rows(rows);
}

void to_json(json& j, const Interval& p) {
    j = {{"lo", p.lo}, {"hi", p.hi}, {"lo_closed", p.lo_closed}, {"hi_closed", p.hi_closed}};
}
void from_json(const json& j, Interval& p) {
    p.lo = field<Rational>(j, "lo");
    p.hi = field<Rational>(j, "hi");
    p.lo_closed = field<bool>(j, "lo_closed");
    p.hi_closed = field<bool>(j, "hi_closed");
}

void to_json(json& j, const Region& r) {
    j = json::array();
    for (size_t e = 0; e < r.edge_count(); ++e) j.push_back(r.on(e));
}
void from_json(const json& j, Region& r) {
    r = Region(j.size());
    for (size_t e = 0; e < j.size(); ++e)
        for (const auto& iv : j[e]) r.add(e, iv.get<Interval>());
}

void to_json(json& j, const Polynomial& p) { j = p.coeffs(); }
void from_json(const json& j, Polynomial& p) { p = Polynomial(j.get<std::vector<Rational>>()); }

void to_json(json& j, const PiecewisePolynomial& p) {
    j = json::array();
    for (const auto& pc : p.pieces()) j.push_back({{"lo", pc.lo}, {"hi", pc.hi}, {"coeffs", pc.p}});
}
void from_json(const json& j, PiecewisePolynomial& p) {
    std::vector<PiecewisePolynomial::Piece> pieces;
    for (const auto& pc : j) {
        PiecewisePolynomial::Piece piece{field<Rational>(pc, "lo"), field<Rational>(pc, "hi"), {}};
        auto c = field<std::vector<Rational>>(pc, "coeffs");
        // optional shift: coefficients of powers of (t - shift)
        piece.p = pc.contains("shift") ? Polynomial::shifted(c, pc.at("shift").get<Rational>()) : Polynomial(c);
        pieces.push_back(std::move(piece));
    }
    try {
        p = PiecewisePolynomial(std::move(pieces));
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("bad piecewise polynomial: ") + e.what());
    }
}

void to_json(json& j, const GraphPoint& p) { j = {{"edge", p.edge}, {"offset", p.offset}}; }
void from_json(const json& j, GraphPoint& p) {
    p.edge = field<size_t>(j, "edge");
    p.offset = field<Rational>(j, "offset");
}

void to_json(json& j, const SpaceTimePoint& p) { j = {{"x", p.x}, {"t", p.t}}; }
void from_json(const json& j, SpaceTimePoint& p) {
    p.x = field<GraphPoint>(j, "x");
    p.t = field<Rational>(j, "t");
}

void to_json(json& j, const Segment& s) {
    j = {{"edge", s.edge}, {"off0", s.off0}, {"t0", s.t0}, {"off1", s.off1}, {"t1", s.t1}, {"value", s.value},
         {"norm_sq", s.norm_sq}};
}
void from_json(const json& j, Segment& s) {
    s.edge = field<size_t>(j, "edge");
    s.off0 = field<Rational>(j, "off0");
    s.t0 = field<Rational>(j, "t0");
    s.off1 = field<Rational>(j, "off1");
    s.t1 = field<Rational>(j, "t1");
    s.value = field<Rational>(j, "value");
    s.norm_sq = field<Rational>(j, "norm_sq");
}

void to_json(json& j, const VertexEvent& e) {
    j = {{"vertex", e.vertex}, {"time", e.time}, {"incoming", e.incoming}, {"emitted", e.emitted}};
}
void from_json(const json& j, VertexEvent& e) {
    e.vertex = field<size_t>(j, "vertex");
    e.time = field<Rational>(j, "time");
    e.incoming = field<Rational>(j, "incoming");
    e.emitted = field<Rational>(j, "emitted");
}

void to_json(json& j, const GridTag& t) { j = {{"family", t.family}, {"row", t.row}, {"cell", t.cell}}; }
void from_json(const json& j, GridTag& t) {
    t.family = field<size_t>(j, "family");
    t.row = field<size_t>(j, "row");
    t.cell = field<size_t>(j, "cell");
}

void to_json(json& j, const Hydra& h) {
    j = {{"source", h.source}, {"horizon", h.horizon}, {"kind", kind_name(h.kind)}, {"segments", h.segments},
         {"corners", h.corners}, {"events", h.events}, {"tags", h.tags}};
}
void from_json(const json& j, Hydra& h) {
    h.source = field<size_t>(j, "source");
    h.horizon = field<Rational>(j, "horizon");
    h.kind = kind_from(field<std::string>(j, "kind"));
    h.segments = field<std::vector<Segment>>(j, "segments");
    h.corners = field<std::vector<SpaceTimePoint>>(j, "corners");
    h.events = field<std::vector<VertexEvent>>(j, "events");
    h.tags = field<std::vector<GridTag>>(j, "tags");
}

void to_json(json& j, const ParamCell& c) {
    j = {{"edge", c.edge}, {"lo", c.lo}, {"hi", c.hi}, {"reversed", c.reversed}};
}
void from_json(const json& j, ParamCell& c) {
    c.edge = field<size_t>(j, "edge");
    c.lo = field<Rational>(j, "lo");
    c.hi = field<Rational>(j, "hi");
    c.reversed = field<bool>(j, "reversed");
}

void to_json(json& j, const TauMap& t) { j = {{"t0", t.t0}, {"slope", t.slope}}; }
void from_json(const json& j, TauMap& t) {
    t.t0 = field<Rational>(j, "t0");
    t.slope = field<int>(j, "slope");
}

void to_json(json& j, const SourceRows& s) { j = {{"source", s.source}, {"rows", s.rows}}; }
void from_json(const json& j, SourceRows& s) {
    s.source = field<size_t>(j, "source");
    s.rows = field<std::vector<TauMap>>(j, "rows");
}

void to_json(json& j, const Family& f) {
    j = {{"id", f.id}, {"eps", f.eps}, {"cells", f.cells}, {"sources", f.sources}};
}
void from_json(const json& j, Family& f) {
    f.id = field<size_t>(j, "id");
    f.eps = field<Rational>(j, "eps");
    f.cells = field<std::vector<ParamCell>>(j, "cells");
    f.sources = field<std::vector<SourceRows>>(j, "sources");
}

void to_json(json& j, const Partition& p) {
    j = {{"scope", p.scope},   {"horizon", p.horizon},   {"critical", p.critical},
         {"filled", p.filled}, {"families", p.families}, {"notes", p.notes}};
}
void from_json(const json& j, Partition& p) {
    p.scope = field<std::vector<size_t>>(j, "scope");
    p.horizon = field<Rational>(j, "horizon");
    p.critical = field<std::vector<GraphPoint>>(j, "critical");
    p.filled = field<Region>(j, "filled");
    p.families = field<std::vector<Family>>(j, "families");
    p.notes = field<std::vector<std::string>>(j, "notes");
}

void to_json(json& j, const BetaSystem& b) { j = {{"beta", b.beta}, {"norm_sq", b.norm_sq}}; }
void from_json(const json& j, BetaSystem& b) {
    b.beta = field<std::vector<RVector>>(j, "beta");
    b.norm_sq = field<std::vector<Rational>>(j, "norm_sq");
}

void to_json(json& j, const EikonalBlock& b) {
    j = {{"family", b.family}, {"source", b.source}, {"eps", b.eps}, {"m", b.m},
         {"projections", b.projections}, {"taus", b.taus}};
}
void from_json(const json& j, EikonalBlock& b) {
    b.family = field<size_t>(j, "family");
    b.source = field<size_t>(j, "source");
    b.eps = field<Rational>(j, "eps");
    b.m = field<size_t>(j, "m");
    b.projections.clear();
    for (const auto& p : field<json>(j, "projections")) {
        RMatrix mat = p.get<RMatrix>();
        if (mat.rows() == 0) mat = RMatrix(b.m, b.m);
        b.projections.push_back(std::move(mat));
    }
    b.taus = field<std::vector<TauMap>>(j, "taus");
}

void to_json(json& j, const BlockSet& b) { j = {{"scope", b.scope}, {"blocks", b.blocks}}; }
void from_json(const json& j, BlockSet& b) {
    b.scope = field<std::vector<size_t>>(j, "scope");
    b.blocks = field<std::vector<EikonalBlock>>(j, "blocks");
}

void to_json(json& j, const Block& b) { j = {{"size", b.size}, {"multiplicity", b.multiplicity}}; }
void from_json(const json& j, Block& b) {
    b.size = field<size_t>(j, "size");
    b.multiplicity = field<size_t>(j, "multiplicity");
}

void to_json(json& j, const EndpointDescriptor& d) {
    j = {{"dim", d.dim}, {"status", to_string(d.status)}, {"block_sizes", d.block_sizes}, {"generators", d.generators}};
}
void from_json(const json& j, EndpointDescriptor& d) {
    d.dim = field<size_t>(j, "dim");
    d.status = status_from(field<std::string>(j, "status"));
    d.block_sizes = field<std::vector<size_t>>(j, "block_sizes");
    d.generators = field<std::vector<RMatrix>>(j, "generators");
}

void to_json(json& j, const FamilyDescriptor& f) {
    j = {{"id", f.id},
         {"eps", f.eps},
         {"m", f.m},
         {"fiber_dim", f.fiber_dim},
         {"fiber_blocks", f.fiber_blocks},
         {"fiber_null_dim", f.fiber_null_dim},
         {"end0", f.end0},
         {"end_eps", f.end_eps}};
}
void from_json(const json& j, FamilyDescriptor& f) {
    f.id = field<size_t>(j, "id");
    f.eps = field<Rational>(j, "eps");
    f.m = field<size_t>(j, "m");
    f.fiber_dim = field<size_t>(j, "fiber_dim");
    f.fiber_blocks = field<std::vector<Block>>(j, "fiber_blocks");
    f.fiber_null_dim = field<size_t>(j, "fiber_null_dim");
    f.end0 = field<EndpointDescriptor>(j, "end0");
    f.end_eps = field<EndpointDescriptor>(j, "end_eps");
}

void to_json(json& j, const EndpointRef& r) { j = {{"family", r.family}, {"end", r.end ? "eps" : "0"}}; }
void from_json(const json& j, EndpointRef& r) {
    r.family = field<size_t>(j, "family");
    r.end = field<std::string>(j, "end") == "eps" ? 1 : 0;
}

void to_json(json& j, const EndpointLink& l) { j = {{"a", l.a}, {"b", l.b}}; }
void from_json(const json& j, EndpointLink& l) {
    l.a = field<EndpointRef>(j, "a");
    l.b = field<EndpointRef>(j, "b");
}

void to_json(json& j, const Summand& s) {
    j = {{"families", s.families}, {"length", s.length}, {"fiber_dim", s.fiber_dim}, {"text", s.text}};
}
void from_json(const json& j, Summand& s) {
    s.families = field<std::vector<size_t>>(j, "families");
    s.length = field<Rational>(j, "length");
    s.fiber_dim = field<size_t>(j, "fiber_dim");
    s.text = field<std::string>(j, "text");
}

void to_json(json& j, const AlgebraDescriptor& d) {
    j = {{"families", d.families}, {"identifications", d.identifications}, {"summands", d.summands},
         {"summary", d.summary},   {"notes", d.notes}};
}
void from_json(const json& j, AlgebraDescriptor& d) {
    d.families = field<std::vector<FamilyDescriptor>>(j, "families");
    d.identifications = field<std::vector<EndpointLink>>(j, "identifications");
    d.summands = field<std::vector<Summand>>(j, "summands");
    d.summary = field<std::string>(j, "summary");
    d.notes = field<std::vector<std::string>>(j, "notes");
}

GraphSpec graph_spec_from_json(const json& j) {
    if (!j.is_object()) throw InputError("graph file must be a JSON object");
    GraphSpec s;
    for (const auto& v : field<json>(j, "vertices")) {
        VertexSpec vs;
        vs.id = field<std::string>(v, "id");
        vs.boundary = v.value("boundary", false);
        s.vertices.push_back(vs);
    }
    for (const auto& e : field<json>(j, "edges")) {
        EdgeSpec es;
        es.id = field<std::string>(e, "id");
        es.from = field<std::string>(e, "from");
        es.to = field<std::string>(e, "to");
        es.length = field<Rational>(e, "length");
        s.edges.push_back(es);
    }
    return s;
}

json graph_spec_to_json(const GraphSpec& s) {
    json j = {{"vertices", json::array()}, {"edges", json::array()}};
    for (const auto& v : s.vertices) j["vertices"].push_back({{"id", v.id}, {"boundary", v.boundary}});
    for (const auto& e : s.edges) j["edges"].push_back({{"id", e.id}, {"from", e.from}, {"to", e.to}, {"length", e.length}});
    return j;
}

namespace {
json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
}
}  // namespace

MetricGraph load_graph(const std::string& path) {
    json j = read_json_file(path);
    try {
        return build_graph(graph_spec_from_json(j));
    } catch (const json::exception& e) {
        throw InputError("bad graph file " + path + ": " + e.what());
    }
}

GraphPoint parse_point(const MetricGraph& g, const std::string& text) {
    auto at = text.find('@');
    if (at == std::string::npos) {
        auto v = g.find_vertex(text);
        if (!v) throw InputError("unknown point: " + text);
        return g.vertex_point(*v);
    }
    auto e = g.find_edge(text.substr(0, at));
    if (!e) throw InputError("unknown edge in point: " + text);
    Rational off;
    try {
        off = Rational::parse(text.substr(at + 1));
    } catch (const std::invalid_argument&) {
        throw InputError("bad offset in point: " + text);
    }
    if (off < Rational(0) || off > g.edge(*e).length) throw InputError("offset outside the edge: " + text);
    return g.point(*e, off);
}

WaveInput wave_input_from_json(const json& j) {
    WaveInput w;
    try {
        const json controls = field<json>(j, "controls");
        if (!controls.is_object()) throw InputError("bad controls file: 'controls' must map vertex ids to pieces");
        for (const auto& [id, pieces] : controls.items()) {
            w.sources.push_back(id);
            w.controls.push_back(pieces.get<PiecewisePolynomial>());
        }
        w.points = field<std::vector<std::string>>(j, "points");
    } catch (const json::exception& e) {
        throw InputError(std::string("bad controls file: ") + e.what());
    }
    return w;
}

WaveInput load_wave_input(const std::string& path) { return wave_input_from_json(read_json_file(path)); }

void to_json(json& j, const RunConfig& c) {
    j = {{"graph", c.graph},
         {"sigma", c.sigma},
         {"T", c.T},
         {"subcommand", c.subcommand},
         {"json", c.json_path},
         {"svg", c.svg_path},
         {"controls", c.controls_path},
         {"at", c.at ? json(*c.at) : json(nullptr)},
         {"family", c.family ? json(*c.family) : json(nullptr)},
         {"seed", c.seed}};
}
void from_json(const json& j, RunConfig& c) {
    c.graph = field<std::string>(j, "graph");
    c.sigma = field<std::vector<std::string>>(j, "sigma");
    c.T = field<Rational>(j, "T");
    c.subcommand = field<std::string>(j, "subcommand");
    c.json_path = field<std::string>(j, "json");
    c.svg_path = field<std::string>(j, "svg");
    c.controls_path = field<std::string>(j, "controls");
    c.at = j.at("at").is_null() ? std::nullopt : std::optional<Rational>(j.at("at").get<Rational>());
    c.family = j.at("family").is_null() ? std::nullopt : std::optional<size_t>(j.at("family").get<size_t>());
    c.seed = field<uint64_t>(j, "seed");
}

void to_json(json& j, const ResultEnvelope& e) {
    j = {{"config", e.config}, {"subcommand", e.subcommand}, {"result", e.result}, {"diagnostics", e.diagnostics}};
}
void from_json(const json& j, ResultEnvelope& e) {
    e.config = field<RunConfig>(j, "config");
    e.subcommand = field<std::string>(j, "subcommand");
    e.result = field<json>(j, "result");
    e.diagnostics = field<std::vector<std::string>>(j, "diagnostics");
}

}  // namespace eik
