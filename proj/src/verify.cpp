#include "eikonal/verify.hpp"

#include <algorithm>

#include "eikonal/algebra.hpp"

namespace eik {

bool VerifyReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok; });
}

namespace {

class Check {
public:
    explicit Check(std::string name) { r_.name = std::move(name); }
    void expect(bool cond, const std::string& what) {
        ++r_.cases;
        if (!cond && r_.ok) {
            r_.ok = false;
            r_.detail = what;
        }
    }
    CheckResult done() { return std::move(r_); }

private:
    CheckResult r_;
};

std::string fam_tag(const Family& f, size_t src) {
    return "family " + std::to_string(f.id) + ", source " + std::to_string(src);
}

void check_partition_geometry(const Partition& p, const std::string& label, Check& cells, Check& taus) {
    Rational covered;
    for (const auto& fam : p.families) {
        for (const auto& c : fam.cells) {
            cells.expect(c.length() == fam.eps, label + ": cell length differs from eps in family " + std::to_string(fam.id));
            cells.expect(p.filled.contains_offset(c.edge, (c.lo + c.hi) / Rational(2)),
                         label + ": cell outside the filled region in family " + std::to_string(fam.id));
            covered += c.length();
        }
        for (const auto& sr : fam.sources)
            for (const auto& t : sr.rows) {
                taus.expect(t.slope == 1 || t.slope == -1, label + ": tau slope not +-1, " + fam_tag(fam, sr.source));
                Rational a = t.at(Rational(0)), b = t.at(fam.eps);
                taus.expect(min(a, b) >= Rational(0) && max(a, b) <= p.horizon,
                            label + ": tau leaves [0,T], " + fam_tag(fam, sr.source));
            }
    }
    cells.expect(covered == p.filled.measure(), label + ": cells do not cover the filled region (" + covered.str() +
                                                    " vs " + p.filled.measure().str() + ")");
}

}  // namespace

VerifyReport verify_pipeline(const MetricGraph& g, const PipelineResult& run, uint64_t seed) {
    VerifyReport rep;
    Check proj("projections idempotent and symmetric"), orth("projections pairwise orthogonal"),
        beta("beta vectors orthogonal"), bstarb("B*B equals the sum of projections"),
        schmidt("Schmidt rank consistency"), cells("equal cell lengths and coverage"), taus("tau slope and range"),
        speed("finite speed of propagation"), balance("vertex amplitude balance"),
        eig("eigenvalue consistency of E(r)"), qidem("wave projection idempotent"),
        dims("block dimension equalities"), closed("fiber algebras closed");

    for (const auto& sr : run.runs) {
        const Hydra& h = sr.original;
        GraphPoint src = g.vertex_point(sr.source);
        for (const auto& s : h.segments) {
            speed.expect(abs(s.off1 - s.off0) == s.t1 - s.t0 && s.t0 < s.t1, "segment is not a slope +-1 ray");
            speed.expect(s.t1 <= h.horizon, "segment beyond T");
            speed.expect(distance(g, src, g.point(s.edge, s.off0)) <= s.t0 &&
                             distance(g, src, g.point(s.edge, s.off1)) <= s.t1,
                         "segment ahead of the wavefront on edge " + g.edge(s.edge).id);
        }
        for (const auto& e : h.events)
            balance.expect(e.incoming == e.emitted, "amplitude not conserved at vertex " + g.vertex(e.vertex).id +
                                                        " t=" + e.time.str());

        for (size_t f = 0; f < sr.betas.size(); ++f) {
            const BetaSystem& b = sr.betas[f];
            RMatrix sum;
            size_t nonzero = 0;
            for (size_t i = 0; i < b.beta.size(); ++i) {
                beta.expect(dot(b.beta[i], b.beta[i]) == b.norm_sq[i], "stored norm differs from <beta,beta>");
                for (size_t j = i + 1; j < b.beta.size(); ++j)
                    beta.expect(dot(b.beta[i], b.beta[j]).is_zero(), "beta vectors not orthogonal");
                if (b.norm_sq[i].is_zero()) continue;
                ++nonzero;
                RMatrix p = b.projection(i);
                sum = sum.rows() ? sum + p : p;
            }
            if (nonzero) {
                bstarb.expect(sum * sum == sum && sum.is_symmetric(), "sum of beta projections is not a projection");
                bstarb.expect(rank(sum) == nonzero, "rank of B*B differs from the number of nonzero betas");
            }
        }
        check_partition_geometry(sr.single, "single-source partition of " + g.vertex(sr.source).id, cells, taus);
    }
    check_partition_geometry(run.partition, "joint partition", cells, taus);

    for (const auto& fam : run.partition.families) {
        auto fb = run.blocks.of_family(fam.id);
        for (const auto* b : fb) {
            for (size_t i = 0; i < b->projections.size(); ++i) {
                const RMatrix& p = b->projections[i];
                proj.expect(p * p == p && p.is_symmetric(), "non-projection in " + fam_tag(fam, b->source));
                for (size_t l = 0; l < b->projections.size(); ++l)
                    if (l != i) orth.expect((p * b->projections[l]).is_zero(), "P^i P^l != 0 in " + fam_tag(fam, b->source));
            }
            RMatrix total = b->total_projection();
            bstarb.expect(total * total == total, "total projection not idempotent in " + fam_tag(fam, b->source));
            size_t idx = 0;
            while (idx < run.sigma.size() && run.sigma[idx] != b->source) ++idx;
            if (idx < run.runs.size()) {
                RMatrix alpha = amplitude_vectors(g, run.runs[idx].efficient, fam);
                schmidt.expect(rank(total) == rank(alpha), "rank(sum P) != dim span(alpha) in " + fam_tag(fam, b->source));
            }
            for (Rational r : {Rational(0), fam.eps / Rational(3), fam.eps}) {
                RMatrix e = b->evaluate(r);
                for (size_t i = 0; i < b->projections.size(); ++i)
                    eig.expect(e * b->projections[i] == b->taus[i].at(r) * b->projections[i],
                               "E(r) P^i != tau^i(r) P^i in " + fam_tag(fam, b->source));
            }
        }
        MatrixAlgebra fiber = fiber_algebra(fb);
        closed.expect(fiber.closed_under_product() && fiber.closed_under_transpose(),
                      "fiber algebra of family " + std::to_string(fam.id) + " not closed");
        auto dec = decompose(fiber, seed);
        size_t n2 = 0;
        for (const auto& bl : dec.blocks) n2 += bl.size * bl.size;
        dims.expect(dec.verified && n2 == fiber.dim(),
                    "sum n_k^2 != dim for fiber of family " + std::to_string(fam.id));
    }
    for (const auto& fd : run.descriptor.families)
        for (const auto* end : {&fd.end0, &fd.end_eps}) {
            size_t n2 = 0;
            for (size_t s : end->block_sizes) n2 += s * s;
            dims.expect(n2 == end->dim, "sum n_k^2 != dim at an endpoint of family " + std::to_string(fd.id));
        }

    // Q(Qy) = Qy for y(x) = x + 1 on every edge
    EdgeFunction y;
    for (size_t e = 0; e < g.edge_count(); ++e)
        y.per_edge.emplace_back(std::vector<PiecewisePolynomial::Piece>{
            {Rational(0), g.edge(e).length, Polynomial({Rational(1), Rational(1)})}});
    for (size_t s : run.sigma) {
        EdgeFunction q = apply_projection(g, run.partition, run.blocks, s, y);
        EdgeFunction qq = apply_projection(g, run.partition, run.blocks, s, q);
        qidem.expect(q.equals(qq), "apply_projection not idempotent for source " + g.vertex(s).id);
    }

    for (auto* c : {&proj, &orth, &beta, &bstarb, &schmidt, &cells, &taus, &speed, &balance, &eig, &qidem, &dims, &closed})
        rep.checks.push_back(c->done());
    return rep;
}

}  // namespace eik
