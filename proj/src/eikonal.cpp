#include "eikonal/eikonal.hpp"

#include <stdexcept>

namespace eik {

size_t BetaSystem::rank() const {
    size_t r = 0;
    for (const auto& n : norm_sq)
        if (!n.is_zero()) ++r;
    return r;
}

RMatrix BetaSystem::projection(size_t i) const {
    const RVector& b = beta.at(i);
    RMatrix p(b.size(), b.size());
    if (norm_sq[i].is_zero()) return p;
    return RMatrix::outer(b, b) * (Rational(1) / norm_sq[i]);
}

RMatrix amplitude_vectors(const MetricGraph& g, const Hydra& h, const Family& fam) {
    const SourceRows* rows = fam.rows_for(h.source);
    if (!rows) throw std::invalid_argument("family has no rows for this hydra's source");
    RMatrix alpha(rows->rows.size(), fam.cells.size());
    Rational r = fam.r_ref();
    for (size_t k = 0; k < fam.cells.size(); ++k) {
        GraphPoint x = cell_point(g, fam.cells[k], r);
        for (size_t i = 0; i < rows->rows.size(); ++i) alpha(i, k) = value_at(g, h, x, rows->rows[i].at(r));
    }
    return alpha;
}

BetaSystem schmidt(const RMatrix& alpha) {
    BetaSystem out;
    for (size_t i = 0; i < alpha.rows(); ++i) {
        RVector a = alpha.row(i);
        RVector b = a;
        for (size_t j = 0; j < out.beta.size(); ++j) {
            if (out.norm_sq[j].is_zero()) continue;
            Rational c = dot(a, out.beta[j]) / out.norm_sq[j];
            if (c.is_zero()) continue;
            for (size_t k = 0; k < b.size(); ++k) b[k] -= c * out.beta[j][k];
        }
        Rational n = dot(b, b);
        out.beta.push_back(std::move(b));
        out.norm_sq.push_back(n);
    }
    return out;
}

size_t EikonalBlock::size() const { return m; }

RMatrix EikonalBlock::evaluate(const Rational& r) const {
    if (r.sign() < 0 || eps < r) throw std::out_of_range("r = " + r.str() + " outside [0, " + eps.str() + "]");
    RMatrix e(size(), size());
    for (size_t i = 0; i < projections.size(); ++i) e += projections[i] * taus[i].at(r);
    return e;
}

RMatrix EikonalBlock::total_projection() const {
    RMatrix p(size(), size());
    for (const auto& q : projections) p += q;
    return p;
}

EikonalBlock eikonal_block(const Family& fam, size_t source, const BetaSystem& beta) {
    const SourceRows* rows = fam.rows_for(source);
    if (!rows || rows->rows.size() != beta.beta.size()) throw std::invalid_argument("β system does not match family rows");
    EikonalBlock b;
    b.family = fam.id;
    b.source = source;
    b.eps = fam.eps;
    b.m = fam.cells.size();
    b.taus = rows->rows;
    for (size_t i = 0; i < beta.beta.size(); ++i) {
        if (beta.beta[i].size() != fam.cells.size()) throw std::invalid_argument("β vector outside the family frame");
        b.projections.push_back(beta.projection(i));
    }
    return b;
}

const EikonalBlock& BlockSet::at(size_t family_id, size_t source) const {
    for (const auto& b : blocks)
        if (b.family == family_id && b.source == source) return b;
    throw std::out_of_range("no block for family " + std::to_string(family_id));
}

std::vector<const EikonalBlock*> BlockSet::of_family(size_t family_id) const {
    std::vector<const EikonalBlock*> out;
    for (const auto& b : blocks)
        if (b.family == family_id) out.push_back(&b);
    return out;
}

BlockSet build_blocks(const MetricGraph& g, const Partition& part, const std::vector<const Hydra*>& hydras) {
    BlockSet set;
    set.scope = part.scope;
    for (const auto& fam : part.families)
        for (const Hydra* h : hydras)
            set.blocks.push_back(eikonal_block(fam, h->source, schmidt(amplitude_vectors(g, *h, fam))));
    return set;
}

RMatrix global_generator(const Partition& part, const BlockSet& blocks, size_t source, const std::vector<Rational>& rs) {
    if (rs.size() != part.families.size()) throw std::invalid_argument("one r per family expected");
    std::vector<RMatrix> diag;
    for (size_t f = 0; f < part.families.size(); ++f) {
        const auto& fam = part.families[f];
        const EikonalBlock& b = blocks.at(fam.id, source);
        diag.push_back(b.evaluate(rs[f]));
    }
    return direct_sum(diag);
}

bool EdgeFunction::equals(const EdgeFunction& o) const {
    size_t n = std::max(per_edge.size(), o.per_edge.size());
    for (size_t e = 0; e < n; ++e) {
        PiecewisePolynomial a = e < per_edge.size() ? per_edge[e] : PiecewisePolynomial();
        PiecewisePolynomial b = e < o.per_edge.size() ? o.per_edge[e] : PiecewisePolynomial();
        if (!a.equals(b)) return false;
    }
    return true;
}

EdgeFunction apply_projection(const MetricGraph& g, const Partition& part, const BlockSet& blocks, size_t source,
                              const EdgeFunction& y) {
    std::vector<std::vector<PiecewisePolynomial::Piece>> pieces(g.edge_count());
    for (const auto& fam : part.families) {
        const EikonalBlock& b = blocks.at(fam.id, source);
        if (b.projections.empty()) continue;
        RMatrix P = b.total_projection();
        size_t m = fam.cells.size();
        std::vector<PiecewisePolynomial> local(m);
        for (size_t k = 0; k < m; ++k) {
            const ParamCell& c = fam.cells[k];
            if (c.edge < y.per_edge.size())
                local[k] = y.per_edge[c.edge].pull_back(c.offset_at(0), c.slope(), fam.eps);
        }
        for (size_t k = 0; k < m; ++k) {
            PiecewisePolynomial qk;
            for (size_t j = 0; j < m; ++j)
                if (!P(k, j).is_zero()) qk = qk + P(k, j) * local[j];
            const ParamCell& c = fam.cells[k];
            for (const auto& pc : qk.pieces()) {
                if (pc.p.is_zero()) continue;
                if (!c.reversed)
                    pieces[c.edge].push_back({c.lo + pc.lo, c.lo + pc.hi, pc.p.compose_affine(-c.lo, Rational(1))});
                else
                    pieces[c.edge].push_back({c.hi - pc.hi, c.hi - pc.lo, pc.p.compose_affine(c.hi, Rational(-1))});
            }
        }
    }
    EdgeFunction out;
    for (auto& ps : pieces) out.per_edge.emplace_back(std::move(ps));
    return out;
}

}  // namespace eik
