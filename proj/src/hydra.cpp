#include "eikonal/hydra.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace eik {

namespace {

constexpr size_t kSegmentLimit = 2'000'000;

struct Flight {
    size_t edge;
    size_t from_vertex;
    Rational depart;
    Rational amp;
};

void sort_unique(std::vector<SpaceTimePoint>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

bool Segment::time_at(const Rational& o, Rational& t) const {
    Rational lo = min(off0, off1), hi = max(off0, off1);
    if (o < lo || hi < o) return false;
    t = t0 + Rational(direction()) * (o - off0);
    return true;
}

const char* to_string(HydraKind k) {
    switch (k) {
        case HydraKind::Original: return "original";
        case HydraKind::Extended: return "extended";
        case HydraKind::Efficient: return "efficient";
    }
    return "?";
}

Hydra propagate(const MetricGraph& g, size_t gamma, const Rational& T) {
    if (gamma >= g.vertex_count() || !g.is_boundary(gamma))
        throw InputError("source must be a boundary vertex");
    if (T.sign() <= 0) throw InputError("horizon T must be positive");

    Hydra h;
    h.source = gamma;
    h.horizon = T;
    h.kind = HydraKind::Original;

    // arrival time -> flights landing then
    std::map<Rational, std::vector<Flight>> agenda;
    auto launch = [&](size_t edge, size_t from, const Rational& t, const Rational& amp) {
        agenda[t + g.edge(edge).length].push_back(Flight{edge, from, t, amp});
    };
    auto emit_segment = [&](const Flight& f, const Rational& t_end) {
        const Edge& e = g.edge(f.edge);
        Rational start = e.from == f.from_vertex ? Rational(0) : e.length;
        Rational dir = e.from == f.from_vertex ? Rational(1) : Rational(-1);
        h.segments.push_back(Segment{f.edge, start, f.depart, start + dir * (t_end - f.depart), t_end, f.amp, 1});
        if (h.segments.size() > kSegmentLimit) throw std::runtime_error("hydra segment limit exceeded");
    };

    launch(g.vertex(gamma).incident.front(), gamma, Rational(0), Rational(1));

    while (!agenda.empty()) {
        auto it = agenda.begin();
        Rational ta = it->first;
        std::vector<Flight> flights = std::move(it->second);
        agenda.erase(it);
        if (T < ta) {
            for (const auto& f : flights) emit_segment(f, T);
            continue;
        }
        // vertex -> (incoming edge, amplitude)
        std::map<size_t, std::vector<std::pair<size_t, Rational>>> arrivals;
        for (const auto& f : flights) {
            emit_segment(f, ta);
            const Edge& e = g.edge(f.edge);
            size_t to = e.from == f.from_vertex ? e.to : e.from;
            arrivals[to].push_back({f.edge, f.amp});
        }
        if (ta == T) continue;  // nothing departs at the horizon
        for (const auto& [w, ins] : arrivals) {
            Rational incoming;
            for (const auto& in : ins) incoming += in.second;
            if (g.is_boundary(w)) {
                // a boundary vertex has one edge, so all arrivals were merged into one flight
                if (!incoming.is_zero()) launch(ins.front().first, w, ta, -incoming);
                continue;
            }
            const auto& inc = g.vertex(w).incident;
            Rational mu(static_cast<long>(inc.size()));
            Rational refl = (Rational(2) - mu) / mu, trans = Rational(2) / mu;
            Rational emitted;
            for (size_t e_out : inc) {
                Rational amp;
                for (const auto& [e_in, a] : ins) amp += (e_in == e_out ? refl : trans) * a;
                emitted += amp;
                if (!amp.is_zero()) launch(e_out, w, ta, amp);
            }
            h.events.push_back(VertexEvent{w, ta, incoming, emitted});
        }
    }
    std::sort(h.segments.begin(), h.segments.end(), [](const Segment& a, const Segment& b) {
        if (a.edge != b.edge) return a.edge < b.edge;
        if (a.t0 != b.t0) return a.t0 < b.t0;
        return a.off0 < b.off0;
    });
    h.corners = compute_corners(g, h);
    return h;
}

std::vector<SpaceTimePoint> compute_corners(const MetricGraph& g, const Hydra& h) {
    std::vector<SpaceTimePoint> out;
    out.push_back({g.vertex_point(h.source), Rational(0)});
    const auto& segs = h.segments;

    auto is_vertex_offset = [&](size_t e, const Rational& o) {
        return o.is_zero() || o == g.edge(e).length;
    };
    for (size_t i = 0; i < segs.size(); ++i) {
        const Segment& s = segs[i];
        const std::pair<Rational, Rational> ends[2] = {{s.off0, s.t0}, {s.off1, s.t1}};
        for (int k = 0; k < 2; ++k) {
            const auto& [o, t] = ends[k];
            bool corner = is_vertex_offset(s.edge, o) || t == h.horizon;
            if (!corner) {
                // a free end: no collinear continuation
                bool continued = false;
                for (const Segment& q : segs) {
                    if (&q == &s || q.edge != s.edge || q.direction() != s.direction()) continue;
                    if (k == 1 && q.off0 == o && q.t0 == t) { continued = true; break; }
                    if (k == 0 && q.off1 == o && q.t1 == t) { continued = true; break; }
                }
                corner = !continued;
            }
            if (corner) out.push_back({g.point(s.edge, o), t});
        }
    }
    // crossings of opposite directions on a common edge
    for (size_t i = 0; i < segs.size(); ++i)
        for (size_t j = i + 1; j < segs.size(); ++j) {
            const Segment& a = segs[i];
            const Segment& b = segs[j];
            if (a.edge != b.edge || a.direction() == b.direction()) continue;
            Rational da(a.direction());
            Rational t = (da * (b.off0 - a.off0) + a.t0 + b.t0) / Rational(2);
            if (t < max(a.t0, b.t0) || min(a.t1, b.t1) < t) continue;
            out.push_back({g.point(a.edge, a.offset_at(t)), t});
        }
    sort_unique(out);
    return out;
}

bool segment_contains(const MetricGraph& g, const Segment& s, const GraphPoint& x, const Rational& t,
                      FiberMode mode) {
    if (mode == FiberMode::Closed ? (t < s.t0 || s.t1 < t) : (t <= s.t0 || s.t1 < t)) return false;
    auto o = g.offset_on(x, s.edge);
    return o && *o == s.offset_at(t);
}

std::vector<SpaceTimePoint> pi_fiber(const MetricGraph& g, const Hydra& h, const GraphPoint& x, FiberMode mode) {
    std::vector<SpaceTimePoint> out;
    auto reps = g.representations(x);
    for (const Segment& s : h.segments) {
        for (const auto& r : reps) {
            if (r.edge != s.edge) continue;
            Rational t;
            if (!s.time_at(r.offset, t)) continue;
            bool inside = mode == FiberMode::Closed ? true : s.t0 < t;
            if (inside) out.push_back({x, t});
        }
    }
    sort_unique(out);
    return out;
}

std::vector<SpaceTimePoint> rho_fiber(const MetricGraph& g, const Hydra& h, const Rational& t, FiberMode mode) {
    std::vector<SpaceTimePoint> out;
    for (const Segment& s : h.segments) {
        if (mode == FiberMode::Closed ? (t < s.t0 || s.t1 < t) : (t <= s.t0 || s.t1 < t)) continue;
        out.push_back({g.point(s.edge, s.offset_at(t)), t});
    }
    sort_unique(out);
    return out;
}

bool on_hydra(const MetricGraph& g, const Hydra& h, const GraphPoint& x, const Rational& t) {
    for (const Segment& s : h.segments)
        if (segment_contains(g, s, x, t, FiberMode::Closed)) return true;
    return false;
}

Rational value_at(const MetricGraph& g, const Hydra& h, const GraphPoint& x, const Rational& t) {
    Rational sum;
    for (const Segment& s : h.segments)
        if (segment_contains(g, s, x, t, FiberMode::Generic)) sum += s.value;
    return sum;
}

Rational amplitude_at(const MetricGraph& g, const Hydra& h, const GraphPoint& x, const Rational& t) {
    g.check(x);
    if (!on_hydra(g, h, x, t)) throw std::invalid_argument("point (" + g.describe(x) + ", " + t.str() + ") is not on the hydra");
    auto v = g.vertex_at(x);
    if (v && *v == h.source && t.is_zero()) return 1;
    if (v && g.is_boundary(*v)) return 0;
    return value_at(g, h, x, t);
}

Region covered_region(const MetricGraph& g, const Hydra& h) {
    Region r(g.edge_count());
    for (const Segment& s : h.segments) r.add(s.edge, {min(s.off0, s.off1), max(s.off0, s.off1), true, true});
    return r;
}

}  // namespace eik
