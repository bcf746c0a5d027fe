#include "eikonal/grid.hpp"

#include <stdexcept>

namespace eik {

Hydra build_extended_hydra(const MetricGraph& g, const Hydra& h, const Partition& part) {
    if (part.scope.size() != 1 || part.scope.front() != h.source)
        throw InternalError("partition was not built from this hydra");
    Hydra ext;
    ext.source = h.source;
    ext.horizon = h.horizon;
    ext.kind = HydraKind::Extended;
    for (size_t f = 0; f < part.families.size(); ++f) {
        const Family& fam = part.families[f];
        const SourceRows* rows = fam.rows_for(h.source);
        if (!rows) throw InternalError("family without rows for its own source");
        Rational r = fam.r_ref();
        for (size_t i = 0; i < rows->rows.size(); ++i) {
            const TauMap& tau = rows->rows[i];
            for (size_t k = 0; k < fam.cells.size(); ++k) {
                const ParamCell& c = fam.cells[k];
                Rational value = value_at(g, h, cell_point(g, c, r), tau.at(r));
                Segment s{c.edge, c.offset_at(0), tau.at(0), c.offset_at(fam.eps), tau.at(fam.eps), value, 1};
                if (tau.slope < 0) {
                    std::swap(s.off0, s.off1);
                    std::swap(s.t0, s.t1);
                }
                ext.segments.push_back(s);
                ext.tags.push_back(GridTag{f, i, k});
            }
        }
    }
    ext.corners = compute_corners(g, ext);
    return ext;
}

std::vector<BetaSystem> grid_betas(const MetricGraph& g, const Hydra& extended, const Partition& part) {
    std::vector<BetaSystem> out;
    for (const auto& fam : part.families) out.push_back(schmidt(amplitude_vectors(g, extended, fam)));
    return out;
}

Hydra build_efficient_hydra(const MetricGraph& g, const Hydra& extended, const std::vector<BetaSystem>& betas) {
    if (extended.tags.size() != extended.segments.size()) throw InternalError("extended hydra without grid tags");
    Hydra eff;
    eff.source = extended.source;
    eff.horizon = extended.horizon;
    eff.kind = HydraKind::Efficient;
    for (size_t s = 0; s < extended.segments.size(); ++s) {
        const GridTag& tag = extended.tags[s];
        const BetaSystem& bs = betas.at(tag.family);
        const Rational& b = bs.beta.at(tag.row).at(tag.cell);
        if (b.is_zero()) continue;
        Segment seg = extended.segments[s];
        seg.value = b;
        seg.norm_sq = bs.norm_sq[tag.row];
        eff.segments.push_back(seg);
        eff.tags.push_back(tag);
    }
    eff.corners = compute_corners(g, eff);
    return eff;
}

}  // namespace eik
