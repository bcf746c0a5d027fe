#include "eikonal/partition.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace eik {

namespace {

struct UnionFind {
    std::vector<size_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    size_t find(size_t a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
    void unite(size_t a, size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

std::vector<GraphPoint> positions(const Lattice& L) {
    std::vector<GraphPoint> out;
    for (const auto& p : L) out.push_back(p.x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/** Cells of one partition under construction, indexed per edge for lookup. */
struct CellTable {
    std::vector<ParamCell> cells;
    std::vector<std::vector<size_t>> per_edge;

    std::optional<size_t> find(const GraphPoint& y) const {
        for (size_t k : per_edge.at(y.edge)) {
            const ParamCell& c = cells[k];
            if (c.lo < y.offset && y.offset < c.hi) return k;
        }
        return std::nullopt;
    }
};

std::vector<TauMap> family_rows(const MetricGraph& g, const Hydra& h, const std::vector<ParamCell>& cells,
                                const Rational& r_ref, const Rational& eps) {
    std::map<Rational, int> slope_of_time;
    std::vector<GraphPoint> xs;
    for (const auto& c : cells) xs.push_back(cell_point(g, c, r_ref));
    std::vector<bool> seen(cells.size(), false);
    for (size_t k = 0; k < cells.size(); ++k) {
        if (seen[k]) continue;
        auto fib = pi_fiber(g, h, xs[k], FiberMode::Generic);
        if (fib.empty()) continue;
        Lattice L = lattice_closure(g, h, fib, FiberMode::Generic);
        for (const auto& p : L) {
            size_t j = std::find(xs.begin(), xs.end(), p.x) - xs.begin();
            if (j == xs.size())
                throw InternalError("lattice point " + g.describe(p.x) + " outside its family");
            seen[j] = true;
            const Segment* seg = nullptr;
            for (const Segment& s : h.segments)
                if (segment_contains(g, s, p.x, p.t, FiberMode::Generic)) { seg = &s; break; }
            if (!seg) throw InternalError("lattice point not on a segment");
            int slope = seg->direction() * cells[j].slope();
            auto [it, inserted] = slope_of_time.emplace(p.t, slope);
            if (!inserted && it->second != slope) throw InternalError("inconsistent time-row slope");
        }
    }
    std::vector<TauMap> rows;
    for (const auto& [t, s] : slope_of_time) {
        TauMap m{t - Rational(s) * r_ref, s};
        Rational a = m.at(0), b = m.at(eps);
        if (min(a, b).sign() < 0 || h.horizon < max(a, b)) throw InternalError("time row leaves [0,T]");
        rows.push_back(m);
    }
    return rows;
}

Partition build_partition(const MetricGraph& g, const std::vector<const Hydra*>& hydras, Region filled,
                          std::vector<GraphPoint> seeds) {
    Partition part;
    for (const Hydra* h : hydras) part.scope.push_back(h->source);
    part.horizon = hydras.front()->horizon;
    part.filled = std::move(filled);

    // Θ: closure of the seeds under Λ_Σ
    std::set<GraphPoint> theta;
    std::deque<GraphPoint> queue(seeds.begin(), seeds.end());
    while (!queue.empty()) {
        GraphPoint z = queue.front();
        queue.pop_front();
        if (!theta.insert(z).second) continue;
        auto v = g.vertex_at(z);
        if (v && g.is_boundary(*v)) continue;
        for (const Hydra* h : hydras) {
            auto fib = pi_fiber(g, *h, z, FiberMode::Closed);
            if (fib.empty()) continue;
            for (const auto& y : positions(lattice_closure(g, *h, fib, FiberMode::Closed)))
                if (!theta.count(y)) queue.push_back(y);
        }
    }
    part.critical.assign(theta.begin(), theta.end());

    CellTable table;
    table.per_edge.resize(g.edge_count());
    for (size_t e = 0; e < g.edge_count(); ++e) {
        std::vector<Rational> br{Rational(0), g.edge(e).length};
        for (const auto& th : theta)
            if (auto o = g.offset_on(th, e)) br.push_back(*o);
        std::sort(br.begin(), br.end());
        br.erase(std::unique(br.begin(), br.end()), br.end());
        for (size_t i = 0; i + 1 < br.size(); ++i) {
            Rational mid = (br[i] + br[i + 1]) / Rational(2);
            if (!part.filled.contains_offset(e, mid)) continue;
            table.per_edge[e].push_back(table.cells.size());
            table.cells.push_back(ParamCell{e, br[i], br[i + 1], false});
        }
    }

    UnionFind uf(table.cells.size());
    for (size_t k = 0; k < table.cells.size(); ++k) {
        const ParamCell& c = table.cells[k];
        GraphPoint mid{c.edge, (c.lo + c.hi) / Rational(2)};
        for (const auto& y : lambda_sigma(g, hydras, mid)) {
            auto j = table.find(y);
            if (!j) throw InternalError("determination set leaves the filled region at " + g.describe(y));
            uf.unite(k, *j);
        }
    }
    std::map<size_t, std::vector<size_t>> groups;
    for (size_t k = 0; k < table.cells.size(); ++k) groups[uf.find(k)].push_back(k);

    for (auto& [root, members] : groups) {
        Family fam;
        for (size_t k : members) fam.cells.push_back(table.cells[k]);
        std::sort(fam.cells.begin(), fam.cells.end(), [](const ParamCell& a, const ParamCell& b) {
            return std::tie(a.edge, a.lo) < std::tie(b.edge, b.lo);
        });
        fam.eps = fam.cells.front().length();
        for (const auto& c : fam.cells)
            if (c.length() != fam.eps) throw InternalError("family cells of unequal length");

        // orient every cell against the reference one through Λ_Σ at two parameters
        const ParamCell& ref = fam.cells.front();
        Rational ra = fam.eps / Rational(3), rb = fam.eps * Rational(2) / Rational(3);
        std::vector<std::optional<Rational>> oa(fam.cells.size()), ob(fam.cells.size());
        for (auto [r, store] : {std::pair{ra, &oa}, std::pair{rb, &ob}}) {
            GraphPoint x{ref.edge, ref.lo + r};
            for (const auto& y : lambda_sigma(g, hydras, x)) {
                size_t j = 0;
                while (j < fam.cells.size() &&
                       !(fam.cells[j].edge == y.edge && fam.cells[j].lo < y.offset && y.offset < fam.cells[j].hi))
                    ++j;
                if (j == fam.cells.size()) throw InternalError("determination set leaves its family");
                if ((*store)[j]) throw InternalError("two determination points in one cell");
                (*store)[j] = y.offset;
            }
        }
        for (size_t j = 0; j < fam.cells.size(); ++j) {
            if (!oa[j] || !ob[j]) throw InternalError("family cell not reached by its determination set");
            Rational slope = (*ob[j] - *oa[j]) / (rb - ra);
            if (slope != Rational(1) && slope != Rational(-1)) throw InternalError("cell slope is not ±1");
            fam.cells[j].reversed = slope.sign() < 0;
            if (fam.cells[j].offset_at(ra) != *oa[j]) throw InternalError("cell parametrisation mismatch");
        }

        for (const Hydra* h : hydras)
            fam.sources.push_back(SourceRows{h->source, family_rows(g, *h, fam.cells, fam.r_ref(), fam.eps)});

        // r grows along the latest row of the first active source
        for (const auto& sr : fam.sources) {
            if (sr.rows.empty()) continue;
            if (sr.rows.back().slope < 0) flip_family(fam);
            break;
        }
        part.families.push_back(std::move(fam));
    }

    auto key = [&](const Family& f) {
        size_t first = std::numeric_limits<size_t>::max();
        Rational tmin;
        for (size_t s = 0; s < f.sources.size(); ++s) {
            if (f.sources[s].rows.empty()) continue;
            first = s;
            tmin = min(f.sources[s].rows.front().at(0), f.sources[s].rows.front().at(f.eps));
            break;
        }
        return std::make_tuple(first, tmin, f.cells.front().edge, f.cells.front().lo);
    };
    std::stable_sort(part.families.begin(), part.families.end(),
                     [&](const Family& a, const Family& b) { return key(a) < key(b); });
    for (size_t i = 0; i < part.families.size(); ++i) part.families[i].id = i + 1;
    return part;
}

}  // namespace

const SourceRows* Family::rows_for(size_t source) const {
    for (const auto& s : sources)
        if (s.source == source) return &s;
    return nullptr;
}

GraphPoint cell_point(const MetricGraph& g, const ParamCell& c, const Rational& r) {
    return g.point(c.edge, c.offset_at(r));
}

void flip_family(Family& f) {
    for (auto& c : f.cells) c.reversed = !c.reversed;
    for (auto& s : f.sources) {
        for (auto& m : s.rows) {
            m.t0 = m.at(f.eps);
            m.slope = -m.slope;
        }
        std::sort(s.rows.begin(), s.rows.end(), [&](const TauMap& a, const TauMap& b) {
            return a.at(f.r_ref()) < b.at(f.r_ref());
        });
    }
}

Lattice lattice_closure(const MetricGraph& g, const Hydra& h, const std::vector<SpaceTimePoint>& seeds,
                        FiberMode mode) {
    Lattice L;
    std::set<GraphPoint> done_x;
    std::set<Rational> done_t;
    std::deque<SpaceTimePoint> queue;
    for (const auto& s : seeds)
        if (L.insert(s).second) queue.push_back(s);
    while (!queue.empty()) {
        SpaceTimePoint p = queue.front();
        queue.pop_front();
        if (done_x.insert(p.x).second)
            for (const auto& q : pi_fiber(g, h, p.x, mode))
                if (L.insert(q).second) queue.push_back(q);
        if (done_t.insert(p.t).second)
            for (const auto& q : rho_fiber(g, h, p.t, mode))
                if (L.insert(q).second) queue.push_back(q);
    }
    return L;
}

Determination determination_set(const MetricGraph& g, const Hydra& h, const GraphPoint& x) {
    g.check(x);
    auto v = g.vertex_at(x);
    if (v && g.is_boundary(*v)) throw CriticalPointError("boundary vertices carry no determination set");
    auto fib = pi_fiber(g, h, x, FiberMode::Closed);
    if (fib.empty()) throw std::invalid_argument("point " + g.describe(x) + " is not in the filled region");
    Lattice L = lattice_closure(g, h, fib, FiberMode::Closed);
    for (const auto& c : h.corners)
        if (L.count(c)) throw CriticalPointError("point " + g.describe(x) + " is critical");
    Determination d;
    d.lambda = positions(L);
    for (const auto& p : L) d.xi.push_back(p.t);
    std::sort(d.xi.begin(), d.xi.end());
    d.xi.erase(std::unique(d.xi.begin(), d.xi.end()), d.xi.end());
    return d;
}

std::vector<GraphPoint> critical_points(const MetricGraph& g, const Hydra& h) {
    return positions(lattice_closure(g, h, h.corners, FiberMode::Closed));
}

std::vector<GraphPoint> lambda_sigma(const MetricGraph& g, const std::vector<const Hydra*>& hydras,
                                     const GraphPoint& x, FiberMode mode) {
    std::set<GraphPoint> seen{x};
    std::deque<GraphPoint> queue{x};
    while (!queue.empty()) {
        GraphPoint z = queue.front();
        queue.pop_front();
        auto v = g.vertex_at(z);
        if (v && g.is_boundary(*v)) continue;
        for (const Hydra* h : hydras) {
            auto fib = pi_fiber(g, *h, z, mode);
            if (fib.empty()) continue;
            for (const auto& y : positions(lattice_closure(g, *h, fib, mode)))
                if (seen.insert(y).second) queue.push_back(y);
        }
    }
    return {seen.begin(), seen.end()};
}

Partition families(const MetricGraph& g, const Hydra& h) {
    return build_partition(g, {&h}, covered_region(g, h), critical_points(g, h));
}

Partition sigma_partition(const MetricGraph& g, const std::vector<const Hydra*>& efficient,
                          const std::vector<const Hydra*>& original) {
    if (efficient.empty()) throw InputError("Σ is empty");
    if (efficient.size() != original.size()) throw std::invalid_argument("sigma_partition: hydra lists differ");
    Region filled(g.edge_count());
    std::vector<GraphPoint> seeds;
    for (size_t i = 0; i < efficient.size(); ++i) {
        if (efficient[i]->source != original[i]->source) throw std::invalid_argument("sigma_partition: source mismatch");
        filled.unite(covered_region(g, *original[i]));
        auto th = critical_points(g, *efficient[i]);
        seeds.insert(seeds.end(), th.begin(), th.end());
    }
    return build_partition(g, efficient, std::move(filled), std::move(seeds));
}

std::optional<CellLocation> locate(const MetricGraph& g, const Partition& p, const GraphPoint& x) {
    if (g.vertex_at(x)) return std::nullopt;
    for (size_t f = 0; f < p.families.size(); ++f)
        for (size_t k = 0; k < p.families[f].cells.size(); ++k) {
            const ParamCell& c = p.families[f].cells[k];
            if (c.edge == x.edge && c.lo < x.offset && x.offset < c.hi)
                return CellLocation{f, k, c.reversed ? c.hi - x.offset : x.offset - c.lo};
        }
    return std::nullopt;
}

}  // namespace eik
