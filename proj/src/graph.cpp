#include "eikonal/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace eik {

bool Interval::contains(const Rational& x) const {
    bool left = lo < x || (lo == x && lo_closed);
    bool right = x < hi || (x == hi && hi_closed);
    return left && right;
}

void Region::add(size_t edge, Interval iv) {
    if (iv.hi < iv.lo) return;
    if (iv.lo == iv.hi && !(iv.lo_closed && iv.hi_closed)) return;
    per_edge_.at(edge).push_back(std::move(iv));
    normalize(edge);
}

void Region::unite(const Region& o) {
    if (per_edge_.size() < o.per_edge_.size()) per_edge_.resize(o.per_edge_.size());
    for (size_t e = 0; e < o.per_edge_.size(); ++e) {
        for (const auto& iv : o.per_edge_[e]) per_edge_[e].push_back(iv);
        normalize(e);
    }
}

void Region::normalize(size_t edge) {
    auto& v = per_edge_[edge];
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.lo_closed && !b.lo_closed;
    });
    std::vector<Interval> out;
    for (const auto& iv : v) {
        if (!out.empty()) {
            Interval& cur = out.back();
            bool overlaps = iv.lo < cur.hi || (iv.lo == cur.hi && (iv.lo_closed || cur.hi_closed));
            if (overlaps) {
                if (cur.hi < iv.hi) {
                    cur.hi = iv.hi;
                    cur.hi_closed = iv.hi_closed;
                } else if (cur.hi == iv.hi) {
                    cur.hi_closed = cur.hi_closed || iv.hi_closed;
                }
                continue;
            }
        }
        out.push_back(iv);
    }
    v = std::move(out);
}

bool Region::contains_offset(size_t edge, const Rational& x) const {
    for (const auto& iv : per_edge_.at(edge))
        if (iv.contains(x)) return true;
    return false;
}

bool Region::subset_of(const Region& o) const {
    for (size_t e = 0; e < per_edge_.size(); ++e) {
        for (const auto& iv : per_edge_[e]) {
            bool inside = false;
            if (e < o.per_edge_.size()) {
                for (const auto& ov : o.per_edge_[e]) {
                    bool left = ov.lo < iv.lo || (ov.lo == iv.lo && (ov.lo_closed || !iv.lo_closed));
                    bool right = iv.hi < ov.hi || (iv.hi == ov.hi && (ov.hi_closed || !iv.hi_closed));
                    if (left && right) { inside = true; break; }
                }
            }
            if (!inside) return false;
        }
    }
    return true;
}

Rational Region::measure() const {
    Rational s;
    for (const auto& ivs : per_edge_)
        for (const auto& iv : ivs) s += iv.hi - iv.lo;
    return s;
}

std::optional<size_t> MetricGraph::find_vertex(const std::string& id) const {
    for (size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i].id == id) return i;
    return std::nullopt;
}

std::optional<size_t> MetricGraph::find_edge(const std::string& id) const {
    for (size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].id == id) return i;
    return std::nullopt;
}

std::vector<size_t> MetricGraph::boundary_vertices() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i].boundary) out.push_back(i);
    return out;
}

std::vector<size_t> MetricGraph::inner_vertices() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < vertices_.size(); ++i)
        if (!vertices_[i].boundary) out.push_back(i);
    return out;
}

GraphPoint MetricGraph::point(size_t e, const Rational& offset) const {
    const Edge& ed = edges_.at(e);
    if (offset.sign() < 0 || ed.length < offset)
        throw std::out_of_range("offset " + offset.str() + " outside edge " + ed.id);
    if (offset.is_zero()) return vertex_point(ed.from);
    if (offset == ed.length) return vertex_point(ed.to);
    return GraphPoint{e, offset};
}

GraphPoint MetricGraph::vertex_point(size_t v) const {
    size_t e = vertices_.at(v).incident.front();
    const Edge& ed = edges_[e];
    return GraphPoint{e, ed.from == v ? Rational(0) : ed.length};
}

std::optional<size_t> MetricGraph::vertex_at(const GraphPoint& p) const {
    const Edge& ed = edges_.at(p.edge);
    if (p.offset.is_zero()) return ed.from;
    if (p.offset == ed.length) return ed.to;
    return std::nullopt;
}

std::vector<GraphPoint> MetricGraph::representations(const GraphPoint& p) const {
    auto v = vertex_at(p);
    if (!v) return {p};
    std::vector<GraphPoint> out;
    for (size_t e : vertices_[*v].incident)
        out.push_back(GraphPoint{e, edges_[e].from == *v ? Rational(0) : edges_[e].length});
    return out;
}

std::optional<Rational> MetricGraph::offset_on(const GraphPoint& p, size_t e) const {
    for (const auto& r : representations(p))
        if (r.edge == e) return r.offset;
    return std::nullopt;
}

void MetricGraph::check(const GraphPoint& p) const {
    if (p.edge >= edges_.size()) throw std::out_of_range("point on unknown edge");
    if (p.offset.sign() < 0 || edges_[p.edge].length < p.offset)
        throw std::out_of_range("point offset outside its edge");
}

Rational MetricGraph::diameter_bound() const {
    Rational best;
    for (const auto& d : vdist_) best = max(best, d);
    Rational longest;
    for (const auto& e : edges_) longest = max(longest, e.length);
    return best + longest;
}

std::string MetricGraph::describe(const GraphPoint& p) const {
    if (auto v = vertex_at(p)) return vertices_[*v].id;
    return edges_[p.edge].id + "@" + p.offset.str();
}

bool MetricGraph::has_equal_lengths() const {
    for (size_t i = 0; i < edges_.size(); ++i)
        for (size_t j = i + 1; j < edges_.size(); ++j)
            if (edges_[i].length == edges_[j].length) return true;
    return false;
}

MetricGraph build_graph(const GraphSpec& spec) {
    MetricGraph g;
    std::map<std::string, size_t> vindex;
    for (const auto& vs : spec.vertices) {
        if (vs.id.empty()) throw InputError("vertex with empty id");
        if (!vindex.emplace(vs.id, g.vertices_.size()).second)
            throw InputError("duplicate vertex id " + vs.id);
        g.vertices_.push_back(Vertex{vs.id, vs.boundary, {}});
    }
    std::map<std::string, size_t> eindex;
    for (const auto& es : spec.edges) {
        if (!eindex.emplace(es.id, g.edges_.size()).second) throw InputError("duplicate edge id " + es.id);
        auto f = vindex.find(es.from), t = vindex.find(es.to);
        if (f == vindex.end() || t == vindex.end()) throw InputError("edge " + es.id + " has unknown endpoint");
        if (f->second == t->second) throw InputError("edge " + es.id + " is a loop");
        if (es.length.sign() <= 0) throw InputError("edge " + es.id + " has nonpositive length");
        g.vertices_[f->second].incident.push_back(g.edges_.size());
        g.vertices_[t->second].incident.push_back(g.edges_.size());
        g.edges_.push_back(Edge{es.id, f->second, t->second, es.length});
    }
    if (g.vertices_.empty()) throw InputError("graph has no vertices");
    bool any_boundary = false;
    for (const auto& v : g.vertices_) {
        size_t mu = v.incident.size();
        if (mu == 0) throw InputError("vertex " + v.id + " is isolated");
        if (mu == 2) throw InputError("vertex " + v.id + " has valency 2");
        if (v.boundary && mu != 1) throw InputError("boundary vertex " + v.id + " must have valency 1");
        if (!v.boundary && mu == 1) throw InputError("vertex " + v.id + " has valency 1 but is not marked boundary");
        any_boundary = any_boundary || v.boundary;
    }
    if (!any_boundary) throw InputError("graph has empty boundary");

    size_t n = g.vertices_.size();
    std::vector<bool> finite(n * n, false);
    g.vdist_.assign(n * n, Rational(0));
    for (size_t i = 0; i < n; ++i) finite[i * n + i] = true;
    for (const auto& e : g.edges_) {
        for (auto [a, b] : {std::pair{e.from, e.to}, std::pair{e.to, e.from}}) {
            if (!finite[a * n + b] || e.length < g.vdist_[a * n + b]) {
                g.vdist_[a * n + b] = e.length;
                finite[a * n + b] = true;
            }
        }
    }
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i) {
            if (!finite[i * n + k]) continue;
            for (size_t j = 0; j < n; ++j) {
                if (!finite[k * n + j]) continue;
                Rational via = g.vdist_[i * n + k] + g.vdist_[k * n + j];
                if (!finite[i * n + j] || via < g.vdist_[i * n + j]) {
                    g.vdist_[i * n + j] = via;
                    finite[i * n + j] = true;
                }
            }
        }
    if (!std::all_of(finite.begin(), finite.end(), [](bool b) { return b; }))
        throw InputError("graph is disconnected");
    return g;
}

Rational distance(const MetricGraph& g, const GraphPoint& x, const GraphPoint& y) {
    g.check(x);
    g.check(y);
    const Edge& ex = g.edge(x.edge);
    const Edge& ey = g.edge(y.edge);
    std::optional<Rational> best;
    auto consider = [&](const Rational& d) {
        if (!best || d < *best) best = d;
    };
    if (x.edge == y.edge) consider(abs(x.offset - y.offset));
    const std::pair<size_t, Rational> xs[2] = {{ex.from, x.offset}, {ex.to, ex.length - x.offset}};
    const std::pair<size_t, Rational> ys[2] = {{ey.from, y.offset}, {ey.to, ey.length - y.offset}};
    for (const auto& [a, da] : xs)
        for (const auto& [b, db] : ys) consider(da + g.vertex_distance(a, b) + db);
    return *best;
}

Region neighborhood(const MetricGraph& g, const std::vector<GraphPoint>& A, const Rational& r) {
    if (r.sign() <= 0) throw InputError("neighborhood radius must be positive");
    Region out(g.edge_count());
    if (A.empty()) return out;
    std::vector<Rational> vd(g.vertex_count());
    for (size_t v = 0; v < g.vertex_count(); ++v) {
        Rational best = distance(g, g.vertex_point(v), A.front());
        for (const auto& a : A) best = min(best, distance(g, g.vertex_point(v), a));
        vd[v] = best;
    }
    for (size_t e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        const Rational& L = ed.length;
        if (vd[ed.from] < r) {
            Rational reach = r - vd[ed.from];
            if (L < reach) out.add(e, {Rational(0), L, true, true});
            else out.add(e, {Rational(0), reach, true, false});
        }
        if (vd[ed.to] < r) {
            Rational reach = r - vd[ed.to];
            if (L < reach) out.add(e, {Rational(0), L, true, true});
            else out.add(e, {L - reach, L, false, true});
        }
        for (const auto& a : A) {
            if (a.edge != e || g.vertex_at(a)) continue;
            Rational lo = a.offset - r, hi = a.offset + r;
            bool lc = false, hc = false;
            if (lo.sign() < 0) { lo = 0; lc = true; }
            if (L < hi) { hi = L; hc = true; }
            out.add(e, {lo, hi, lc, hc});
        }
    }
    return out;
}

}  // namespace eik
