// One PASS/FAIL line per acceptance criterion on the 3-star (2, 3, 10) with sources g1, g2.
#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eikonal/algebra.hpp"
#include "eikonal/pipeline.hpp"
#include "eikonal/verify.hpp"
#include "eikonal/wave.hpp"
#include "support/oracles.hpp"

using namespace eik;

namespace {

const Rational l1(2), l2(3), l3(10);

int failures = 0;

void report(int n, bool ok, const std::string& what) {
    std::cout << (ok ? "PASS " : "FAIL ") << n << "  " << what << std::endl;
    if (!ok) ++failures;
}

// runs a criterion body; exceptions count as failure
void criterion(int n, const std::function<bool(std::ostringstream&)>& body) {
    std::ostringstream msg;
    bool ok = false;
    try {
        ok = body(msg);
    } catch (const std::exception& e) {
        msg << " [exception: " << e.what() << "]";
    }
    report(n, ok, msg.str());
}

const MetricGraph& star() {
    static MetricGraph g = oracle::star(l1, l2, l3);
    return g;
}

PipelineResult at(const Rational& T) { return run_pipeline(star(), {0, 1}, T); }

RMatrix j2(const Rational& a) { return RMatrix::from_rows({{a, a}, {a, a}}); }
RMatrix scalar(const Rational& a) { return RMatrix::from_rows({{a}}); }

/** Is there one coordinate permutation carrying every computed matrix onto its expected twin? */
bool same_up_to_permutation(const std::vector<RMatrix>& got, const std::vector<RMatrix>& want) {
    if (got.empty() || got.size() != want.size()) return false;
    size_t n = want.front().rows();
    for (size_t k = 0; k < got.size(); ++k)
        if (got[k].rows() != n || want[k].rows() != n) return false;
    std::vector<size_t> p(n);
    std::iota(p.begin(), p.end(), size_t{0});
    do {
        bool ok = true;
        for (size_t k = 0; k < got.size() && ok; ++k)
            for (size_t i = 0; i < n && ok; ++i)
                for (size_t j = 0; j < n && ok; ++j) ok = got[k](p[i], p[j]) == want[k](i, j);
        if (ok) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

/**
 * Matches computed families to the hand-written ones (by interval length, with every
 * bijection tried), evaluates both generators at 5 parameter samples and searches a
 * frame permutation. `expected(rs)` returns the two hand-written generators.
 */
bool generators_match(const PipelineResult& r, const std::vector<Rational>& lengths,
                      const std::function<std::pair<RMatrix, RMatrix>(const std::vector<Rational>&)>& expected) {
    const auto& fams = r.partition.families;
    if (fams.size() != lengths.size()) return false;
    const std::vector<Rational> qs = {Rational(1, 7), Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(6, 7)};
    std::vector<size_t> bij(fams.size());
    std::iota(bij.begin(), bij.end(), size_t{0});
    do {
        bool lengths_ok = true;
        for (size_t k = 0; k < fams.size(); ++k) lengths_ok = lengths_ok && fams[k].eps == lengths[bij[k]];
        if (!lengths_ok) continue;
        std::vector<RMatrix> got, want;
        for (const auto& q : qs) {
            std::vector<Rational> hand_r(lengths.size()), ours(fams.size());
            // a different multiple per family so a wrong pairing cannot hide
            for (size_t i = 0; i < lengths.size(); ++i) hand_r[i] = lengths[i] * q * Rational(1 + static_cast<long>(i), 1 + static_cast<long>(lengths.size()));
            for (size_t k = 0; k < fams.size(); ++k) ours[k] = hand_r[bij[k]];
            auto [e1, e2] = expected(hand_r);
            got.push_back(global_generator(r.partition, r.blocks, 0, ours));
            got.push_back(global_generator(r.partition, r.blocks, 1, ours));
            want.push_back(e1);
            want.push_back(e2);
        }
        if (same_up_to_permutation(got, want)) return true;
    } while (std::next_permutation(bij.begin(), bij.end()));
    return false;
}

Rational max_commutator_norm(const PipelineResult& r) {
    Rational worst;
    for (const auto& q : {Rational(0), Rational(1, 5), Rational(1, 2), Rational(3, 4), Rational(1)}) {
        std::vector<Rational> rs;
        for (const auto& f : r.partition.families) rs.push_back(q * f.eps);
        RMatrix a = global_generator(r.partition, r.blocks, 0, rs), b = global_generator(r.partition, r.blocks, 1, rs);
        worst = std::max(worst, commutator(a, b).frobenius_sq());
    }
    return worst;
}

PiecewisePolynomial cubic_ramp(const Rational& a, const Rational& c, const Rational& hi) {
    return PiecewisePolynomial({{a, hi, c * Polynomial::shifted({0, 0, 0, 1}, a)}});
}

}  // namespace

int main() {
    std::cout << "acceptance: 3-star l=(2,3,10), sources g1,g2" << std::endl;

    criterion(1, [](std::ostringstream& m) {
        auto r = at(Rational(1));
        m << "T=1 classifies as \"" << r.descriptor.summary << "\"";
        return r.descriptor.summary == "C0[0,1] ⊕ C0[0,1]";
    });

    criterion(2, [](std::ostringstream& m) {
        auto r = at(Rational(9, 4));
        const auto& ids = r.descriptor.identifications;
        m << "T=9/4 classifies as \"" << r.descriptor.summary << "\" with " << ids.size() << " identification(s)";
        if (ids.size() != 1) return false;
        // the e1 family's far end meets the start of the family beyond v
        const Family& a = r.partition.families.at(ids[0].a.family - 1);
        const Family& b = r.partition.families.at(ids[0].b.family - 1);
        bool joined = a.eps + b.eps == Rational(9, 4);
        m << " joining lengths " << a.eps << " + " << b.eps;
        return r.descriptor.summary == "C0[0,9/4] ⊕ C0[0,9/4]" && joined;
    });

    criterion(3, [](std::ostringstream& m) {
        Rational T(11, 4);
        auto r = at(T);
        std::string expect = "C0[0," + (l1 + l2 - T).str() + "] ⊕ C0[0," + (l1 + l2 - T).str() + "] ⊕ C([0," +
                             (2 * T - l1 - l2).str() + "];M2)";
        m << "T=11/4 classifies as \"" << r.descriptor.summary << "\" (expected \"" << expect << "\")";
        return r.descriptor.summary == expect && expect == "C0[0,9/4] ⊕ C0[0,9/4] ⊕ C([0,1/2];M2)";
    });

    criterion(4, [](std::ostringstream& m) {
        auto r = at(Rational(4));
        m << "T=4 classifies as \"" << r.descriptor.summary << "\"";
        bool dot_ok = false;
        for (const auto& f : r.descriptor.families)
            if (f.end0.status == EndStatus::Proper || f.end_eps.status == EndStatus::Proper) {
                const auto& e = f.end0.status == EndStatus::Proper ? f.end0 : f.end_eps;
                m << "; proper endpoint of family " << f.id << " has blocks [";
                for (size_t i = 0; i < e.block_sizes.size(); ++i) m << (i ? "," : "") << e.block_sizes[i];
                m << "] inside M" << f.m;
                dot_ok = f.m == 3 && e.block_sizes == std::vector<size_t>{1, 2};
            }
        return r.descriptor.summary == "C0[0,1] ⊕ C0[0,1] ⊕ C([0,1];M2) ⊕ Cdot([0,1];M3)" && dot_ok;
    });

    criterion(5, [](std::ostringstream& m) {
        Rational T2(9, 4), T3(11, 4);
        bool ok2 = generators_match(at(T2), {l1, T2 - l1, T2}, [&](const std::vector<Rational>& r) {
            RMatrix g1 = direct_sum({scalar(r[0]), j2((l1 + r[1]) / 2), scalar(0)});
            RMatrix g2 = direct_sum({scalar(0), RMatrix(2, 2), scalar(r[2])});
            return std::make_pair(g1, g2);
        });
        bool ok3 = generators_match(at(T3), {l1, l2 - T3, 2 * T3 - l1 - l2, l1 + l2 - T3},
                                    [&](const std::vector<Rational>& r) {
            RMatrix g1 = direct_sum({scalar(r[0]), j2((l1 + r[1]) / 2), j2(((l1 + l2 - T3) + r[2]) / 2), scalar(0)});
            RMatrix g2 = direct_sum({scalar(0), RMatrix(2, 2), RMatrix::from_rows({{0, 0}, {0, T3 - r[2]}}), scalar(r[3])});
            return std::make_pair(g1, g2);
        });
        m << "generator matrices at 5 rational samples: T=9/4 " << (ok2 ? "match" : "differ") << ", T=11/4 "
          << (ok3 ? "match" : "differ") << " (up to a frame permutation)";
        return ok2 && ok3;
    });

    criterion(6, [](std::ostringstream& m) {
        Rational c1 = max_commutator_norm(at(Rational(1))), c2 = max_commutator_norm(at(Rational(9, 4))),
                 c3 = max_commutator_norm(at(Rational(11, 4)));
        m << "max |[E1,E2]|^2: T=1 -> " << c1 << ", T=9/4 -> " << c2 << ", T=11/4 -> " << c3;
        return c1.is_zero() && c2.is_zero() && c3 > Rational(0);
    });

    criterion(7, [](std::ostringstream& m) {
        RMatrix p = RMatrix::from_rows({{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}});
        RMatrix pp = RMatrix::from_rows({{0, 0}, {0, 1}});
        MatrixAlgebra a2 = span_closure({p, pp}, 2);
        auto d2 = decompose(a2);
        bool ex1 = a2.dim() == 4 && d2.verified && d2.name() == "M2";

        // endpoint generators of the T=4 family with a proper r=0 end, rescaled to projections
        bool ex2 = false;
        auto r4 = at(Rational(4));
        for (const auto& f : r4.descriptor.families) {
            if (f.end0.status != EndStatus::Proper) continue;
            std::vector<RMatrix> ps;
            for (const auto& gen : f.end0.generators) {
                Rational tr;
                for (size_t i = 0; i < gen.rows(); ++i) tr += gen(i, i);
                ps.push_back(gen * (Rational(static_cast<long>(rank(gen))) / tr));
            }
            MatrixAlgebra a = span_closure(ps, f.m);
            auto d = decompose(a);
            auto v = common_eigenvector(ps);
            ex2 = a.dim() == 5 && d.verified && d.sizes() == std::vector<size_t>{1, 2} && v && *v == RVector{1, 1, 1};
        }

        std::mt19937_64 rng(20240601);
        std::uniform_int_distribution<size_t> mdist(2, 4), kdist(2, 3);
        size_t literal = 0, refined = 0, split = 0;
        const size_t trials = 200;
        for (size_t it = 0; it < trials; ++it) {
            size_t mm = mdist(rng), k = kdist(rng);
            std::vector<RMatrix> ps;
            for (size_t i = 0; i < k; ++i) {
                std::uniform_int_distribution<size_t> rk(1, mm - 1);
                ps.push_back(oracle::random_projection(rng, mm, rk(rng), 2));
            }
            bool eig = common_eigenvector(ps).has_value();
            MatrixAlgebra a = span_closure(ps, mm);
            bool proper = a.dim() < mm * mm;
            literal += eig == proper;
            auto d = decompose(a, it);
            bool line = d.verified && (d.null_dim > 0 || (!d.blocks.empty() && d.blocks.front().size == 1));
            refined += eig == line;
            if (proper && !eig && !d.blocks.empty() && d.blocks.front().size == 2) ++split;
        }
        m << "worked examples " << (ex1 && ex2 ? "ok" : "WRONG") << "; eigenvector <=> proper held in " << literal << "/"
          << trials << " random families (m=2..4)";
        if (literal != trials)
            m << "; exceptions: " << trials - literal << ", of which " << split
              << " are m=4 algebras split into 2x2 blocks (proper, yet no common eigenvector)";
        m << "; eigenvector <=> (1x1 block or null space) held in " << refined << "/" << trials;
        return ex1 && ex2 && literal == trials;
    });

    criterion(8, [](std::ostringstream& m) {
        Rational T(9, 4);
        const MetricGraph& g = star();
        Hydra h1 = propagate(g, 0, T), h2 = propagate(g, 1, T);
        auto src = wave_sources(g, {&h1, &h2}, {cubic_ramp(Rational(1, 4), 1, T), cubic_ramp(Rational(1, 2), -2, T)});
        auto phi1 = [](double t) { return t > 0.25 ? (t - 0.25) * (t - 0.25) * (t - 0.25) : 0.0; };
        auto phi2 = [](double t) { return t > 0.5 ? -2 * (t - 0.5) * (t - 0.5) * (t - 0.5) : 0.0; };

        // 50 distinct non-critical points on the 1/256 mesh: 20 on e1, 20 on e2, 10 on e3 next to v
        std::mt19937_64 rng(77);
        std::vector<GraphPoint> pts;
        auto draw = [&](size_t e, long lo, long hi, size_t n) {
            std::uniform_int_distribution<long> d(lo, hi);
            size_t got = 0;
            while (got < n) {
                GraphPoint x{e, Rational(d(rng), 256)};
                bool critical = std::binary_search(src[0].critical.begin(), src[0].critical.end(), x) ||
                                std::binary_search(src[1].critical.begin(), src[1].critical.end(), x);
                if (critical || std::find(pts.begin(), pts.end(), x) != pts.end()) continue;
                pts.push_back(x);
                ++got;
            }
        };
        draw(0, 1, 2 * 256 - 1, 20);
        draw(1, 1, 3 * 256 - 1, 20);
        draw(2, 9 * 256, 10 * 256 - 1, 10);

        std::vector<double> exact;
        size_t nonzero = 0;
        for (const auto& x : pts) {
            exact.push_back(wave_snapshot(g, src, x).to_double());
            nonzero += exact.back() != 0;
        }
        auto fd_error = [&](double h) {
            oracle::LeapfrogSolver fd(g, {{0, phi1}, {1, phi2}}, h);
            fd.run_to(T.to_double());
            double worst = 0;
            for (size_t i = 0; i < pts.size(); ++i)
                worst = std::max(worst, std::abs(exact[i] - fd.value(pts[i].edge, pts[i].offset)));
            return worst;
        };
        double e256 = fd_error(1.0 / 256), e512 = fd_error(1.0 / 512);
        m << pts.size() << " points (" << nonzero << " with nonzero value): max error " << e512
          << " at h=1/512, " << e256 << " at h=1/256";
        return pts.size() == 50 && e512 <= 5e-3 && e512 < e256;
    });

    criterion(9, [](std::ostringstream& m) {
        struct Case {
            std::string name;
            MetricGraph g;
            std::vector<std::string> sigma;
            Rational T;
        };
        std::vector<Case> cases;
        for (Rational T : {Rational(1), Rational(9, 4), Rational(11, 4), Rational(4)})
            cases.push_back({"star T=" + T.str(), oracle::star(l1, l2, l3), {"g1", "g2"}, T});
        cases.push_back({"single edge, one source", oracle::single_edge(1), {"a"}, Rational(5, 2)});
        cases.push_back({"single edge, both ends", oracle::single_edge(1), {"a", "b"}, Rational(3, 2)});
        cases.push_back({"star l1=l2", oracle::star(2, 2, 10), {"g1", "g2"}, Rational(11, 4)});
        bool all = true;
        size_t total = 0;
        for (const auto& c : cases) {
            auto r = run_pipeline(c.g, resolve_sigma(c.g, c.sigma), c.T);
            auto rep = verify_pipeline(c.g, r);
            for (const auto& ch : rep.checks) {
                total += ch.cases;
                if (!ch.ok) {
                    all = false;
                    m << " [" << c.name << ": " << ch.name << ": " << ch.detail << "]";
                }
            }
            if (c.name == "star l1=l2" && r.diagnostics.empty()) {
                all = false;
                m << " [degenerate star produced no diagnostic]";
            }
        }
        m << "exact invariant checks on " << cases.size() << " runs, " << total << " assertions"
          << (all ? ", all hold; degenerate star flagged" : "");
        return all;
    });

    std::cout << (failures ? "acceptance: " + std::to_string(failures) + " criterion(s) failed" : std::string("acceptance: all criteria pass"))
              << std::endl;
    return failures ? 1 : 0;
}
