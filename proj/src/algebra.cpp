#include "eikonal/algebra.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace eik {

namespace {

RVector flat(const RMatrix& a) { return a.data(); }

RMatrix unflat(const RVector& v, size_t m) {
    RMatrix a(m, m);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) a(i, j) = v[i * m + j];
    return a;
}

Eigen::MatrixXd to_eigen(const RMatrix& a) {
    Eigen::MatrixXd d(static_cast<long>(a.rows()), static_cast<long>(a.cols()));
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) d(static_cast<long>(i), static_cast<long>(j)) = a(i, j).to_double();
    return d;
}

size_t numeric_rank(const Eigen::MatrixXd& a, double rel_tol) {
    if (a.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& s = svd.singularValues();
    if (s.size() == 0) return 0;
    double cut = rel_tol * std::max(1.0, s(0));
    size_t r = 0;
    for (long i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++r;
    return r;
}

double decomposition_tolerance() {
    if (const char* env = std::getenv("EIKONAL_DECOMP_TOL")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0) return v;
    }
    return 1e-9;
}

struct Dsu {
    std::vector<size_t> p;
    explicit Dsu(size_t n) : p(n) { std::iota(p.begin(), p.end(), size_t{0}); }
    size_t find(size_t x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(size_t a, size_t b) { p[find(a)] = find(b); }
};

bool is_projection(const RMatrix& p) { return p.rows() == p.cols() && p.is_symmetric() && p * p == p; }

}  // namespace

bool MatrixAlgebra::contains(const RMatrix& a) const {
    if (a.rows() != m_ || a.cols() != m_) throw std::invalid_argument("algebra: shape mismatch");
    return echelon_.contains(flat(a));
}

bool MatrixAlgebra::add(const RMatrix& a) {
    if (a.rows() != m_ || a.cols() != m_) throw std::invalid_argument("algebra: shape mismatch");
    if (!echelon_.add(flat(a))) return false;
    basis_.push_back(a);
    return true;
}

bool MatrixAlgebra::closed_under_product() const {
    for (const auto& a : basis_)
        for (const auto& b : basis_)
            if (!contains(a * b)) return false;
    return true;
}

bool MatrixAlgebra::closed_under_transpose() const {
    for (const auto& a : basis_)
        if (!contains(a.transpose())) return false;
    return true;
}

MatrixAlgebra span_closure(const std::vector<RMatrix>& generators, size_t m) {
    MatrixAlgebra alg(m);
    std::deque<RMatrix> todo;
    for (const auto& g : generators)
        if (alg.add(g)) todo.push_back(g);
    // words of length k+1 are generator * word of length k
    while (!todo.empty()) {
        RMatrix x = std::move(todo.front());
        todo.pop_front();
        for (const auto& g : generators) {
            RMatrix y = g * x;
            if (alg.add(y)) todo.push_back(std::move(y));
        }
    }
    return alg;
}

std::optional<RVector> common_eigenvector(const std::vector<RMatrix>& projections) {
    if (projections.empty()) return std::nullopt;
    size_t m = projections[0].rows();
    for (const auto& p : projections) {
        if (p.rows() != m || !is_projection(p)) throw std::invalid_argument("common_eigenvector: input is not an orthogonal projection");
    }
    size_t k = projections.size();
    if (k > 20) throw std::invalid_argument("common_eigenvector: too many projections");
    RMatrix id = RMatrix::identity(m);
    // a projection has eigenvalues 0 and 1 only, so try every image/kernel pattern
    for (size_t mask = (size_t{1} << k); mask-- > 0;) {
        EchelonBasis eq(m);
        for (size_t i = 0; i < k; ++i) {
            RMatrix c = (mask >> i & 1) ? id - projections[i] : projections[i];
            for (size_t r = 0; r < m; ++r) eq.add(c.row(r));
            if (eq.size() == m) break;
        }
        if (eq.size() == m) continue;
        auto ns = nullspace(eq);
        return primitive_integer(ns.front());
    }
    return std::nullopt;
}

std::vector<size_t> BlockDecomposition::sizes() const {
    std::vector<size_t> out;
    for (const auto& b : blocks) out.push_back(b.size);
    return out;
}

std::string BlockDecomposition::name() const {
    if (blocks.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < blocks.size(); ++i) s += (i ? "⊕M" : "M") + std::to_string(blocks[i].size);
    return s;
}

BlockDecomposition decompose(const MatrixAlgebra& alg, uint64_t seed) {
    const size_t m = alg.ambient();
    BlockDecomposition out;
    out.algebra_dim = alg.dim();
    out.tolerance = decomposition_tolerance();
    if (m == 0) {
        out.verified = true;
        return out;
    }

    // exact commutant: X b - b X = 0 for every basis element b
    EchelonBasis eq(m * m);
    for (const auto& b : alg.basis()) {
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) {
                RVector row(m * m);
                for (size_t k = 0; k < m; ++k) {
                    row[i * m + k] += b(k, j);
                    row[k * m + j] -= b(i, k);
                }
                eq.add(row);
            }
    }
    std::vector<RMatrix> commutant;
    for (const auto& v : nullspace(eq)) commutant.push_back(unflat(v, m));
    out.commutant_dim = commutant.size();

    std::vector<Eigen::MatrixXd> basis_d;
    for (const auto& b : alg.basis()) {
        Eigen::MatrixXd d = to_eigen(b);
        double n = d.norm();
        basis_d.push_back(n > 0 ? Eigen::MatrixXd(d / n) : d);
    }
    std::vector<Eigen::MatrixXd> comm_d;
    for (const auto& c : commutant) {
        Eigen::MatrixXd d = to_eigen(c);
        comm_d.push_back(d + d.transpose());
    }

    const int max_attempts = 8;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        out.attempts = static_cast<size_t>(attempt) + 1;
        std::mt19937_64 rng(seed * 1000003ULL + static_cast<uint64_t>(attempt) * 7919ULL + 17);
        std::uniform_real_distribution<double> coef(-1.0, 1.0);
        Eigen::MatrixXd x = Eigen::MatrixXd::Zero(static_cast<long>(m), static_cast<long>(m));
        for (const auto& c : comm_d) x += coef(rng) * c;
        double xn = x.norm();
        if (xn > 0) x /= xn;

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x);
        const auto& vals = es.eigenvalues();
        const auto& vecs = es.eigenvectors();

        std::vector<std::vector<long>> groups;
        for (long i = 0; i < vals.size(); ++i) {
            if (!groups.empty() && vals(i) - vals(groups.back().back()) <= out.tolerance)
                groups.back().push_back(i);
            else
                groups.push_back({i});
        }

        auto subspace = [&](const std::vector<long>& g) {
            Eigen::MatrixXd q(static_cast<long>(m), static_cast<long>(g.size()));
            for (size_t c = 0; c < g.size(); ++c) q.col(static_cast<long>(c)) = vecs.col(g[c]);
            return q;
        };
        auto action = [&](const std::vector<const Eigen::MatrixXd*>& qs) {
            long width = 0;
            for (auto q : qs) width += q->cols() * q->cols();
            Eigen::MatrixXd a(static_cast<long>(basis_d.size()), width);
            for (size_t r = 0; r < basis_d.size(); ++r) {
                long col = 0;
                for (auto q : qs) {
                    Eigen::MatrixXd s = q->transpose() * basis_d[r] * *q;
                    for (long i = 0; i < s.rows(); ++i)
                        for (long j = 0; j < s.cols(); ++j) a(static_cast<long>(r), col++) = s(i, j);
                }
            }
            return a;
        };

        std::vector<Eigen::MatrixXd> qs;
        for (const auto& g : groups) qs.push_back(subspace(g));

        bool ok = true;
        size_t null_dim = 0;
        std::vector<size_t> live;
        for (size_t gi = 0; gi < groups.size() && ok; ++gi) {
            size_t d = groups[gi].size();
            size_t r = basis_d.empty() ? 0 : numeric_rank(action({&qs[gi]}), 1e-7);
            if (r == 0)
                null_dim += d;
            else if (r == d * d)
                live.push_back(gi);
            else
                ok = false;
        }
        if (!ok) continue;

        Dsu dsu(groups.size());
        for (size_t a = 0; a < live.size() && ok; ++a)
            for (size_t b = a + 1; b < live.size() && ok; ++b) {
                size_t d = groups[live[a]].size();
                if (groups[live[b]].size() != d) continue;
                size_t r = numeric_rank(action({&qs[live[a]], &qs[live[b]]}), 1e-7);
                if (r == d * d)
                    dsu.unite(live[a], live[b]);
                else if (r != 2 * d * d)
                    ok = false;
            }
        if (!ok) continue;

        std::map<size_t, std::vector<size_t>> comps;
        for (size_t gi : live) comps[dsu.find(gi)].push_back(gi);
        std::vector<Block> blocks;
        size_t sum_n2 = 0, sum_mult2 = 0;
        for (const auto& [root, members] : comps) {
            Block b{groups[members.front()].size(), members.size()};
            sum_n2 += b.size * b.size;
            sum_mult2 += b.multiplicity * b.multiplicity;
            blocks.push_back(b);
        }
        if (sum_n2 != out.algebra_dim || sum_mult2 + null_dim * null_dim != out.commutant_dim) continue;

        std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
            return a.size != b.size ? a.size < b.size : a.multiplicity < b.multiplicity;
        });
        out.blocks = std::move(blocks);
        out.null_dim = null_dim;
        out.verified = true;
        out.witness.clear();
        for (const auto& [root, members] : comps)
            for (size_t gi : members)
                for (long c : groups[gi]) {
                    std::vector<double> col(m);
                    for (size_t i = 0; i < m; ++i) col[i] = vecs(static_cast<long>(i), c);
                    out.witness.push_back(std::move(col));
                }
        for (size_t gi = 0; gi < groups.size(); ++gi)
            if (std::find(live.begin(), live.end(), gi) == live.end())
                for (long c : groups[gi]) {
                    std::vector<double> col(m);
                    for (size_t i = 0; i < m; ++i) col[i] = vecs(static_cast<long>(i), c);
                    out.witness.push_back(std::move(col));
                }
        return out;
    }
    out.verified = false;
    return out;
}

MatrixAlgebra fiber_algebra(const std::vector<const EikonalBlock*>& blocks) {
    if (blocks.empty()) return MatrixAlgebra(0);
    size_t m = blocks.front()->m;
    std::vector<RMatrix> gens;
    for (const auto* b : blocks) {
        if (b->m != m) throw std::invalid_argument("fiber_algebra: blocks from different frames");
        for (const auto& p : b->projections)
            if (!p.is_zero()) gens.push_back(p);
    }
    return span_closure(gens, m);
}

EndpointAnalysis endpoint_analysis(const Partition& part, const BlockSet& blocks) {
    EndpointAnalysis out;
    const size_t nf = part.families.size();
    std::vector<size_t> dims(nf);
    for (size_t f = 0; f < nf; ++f) {
        const Family& fam = part.families[f];
        auto fb = blocks.of_family(fam.id);
        dims[f] = fb.empty() ? 0 : fb.front()->m;
        std::vector<RMatrix> g0, ge;
        for (const auto* b : fb) {
            RMatrix a = b->evaluate(Rational(0)), e = b->evaluate(fam.eps);
            if (!a.is_zero()) g0.push_back(a);
            if (!e.is_zero()) ge.push_back(e);
        }
        out.at0.push_back(span_closure(g0, dims[f]));
        out.at_eps.push_back(span_closure(ge, dims[f]));
        out.gens0.push_back(std::move(g0));
        out.gens_eps.push_back(std::move(ge));
    }

    // joint algebra in the direct sum over all endpoints: one tuple per source
    std::vector<RMatrix> tuples;
    for (size_t src : part.scope) {
        std::vector<RMatrix> parts;
        bool any = false;
        for (size_t f = 0; f < nf; ++f) {
            const Family& fam = part.families[f];
            for (int end = 0; end < 2; ++end) {
                RMatrix e(dims[f], dims[f]);
                if (fam.rows_for(src) && dims[f] > 0) e = blocks.at(fam.id, src).evaluate(end ? fam.eps : Rational(0));
                any = any || !e.is_zero();
                parts.push_back(std::move(e));
            }
        }
        if (any) tuples.push_back(direct_sum(parts));
    }
    size_t total = 0;
    std::vector<size_t> offset;
    for (size_t f = 0; f < nf; ++f)
        for (int end = 0; end < 2; ++end) {
            offset.push_back(total);
            total += dims[f];
        }
    MatrixAlgebra joint = span_closure(tuples, total);
    out.joint_dim = joint.dim();

    auto block_of = [&](const RMatrix& a, size_t slot, size_t d) {
        RVector v;
        v.reserve(d * d);
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) v.push_back(a(offset[slot] + i, offset[slot] + j));
        return v;
    };
    auto end_dim = [&](size_t f, int end) { return end ? out.at_eps[f].dim() : out.at0[f].dim(); };

    for (size_t s1 = 0; s1 < 2 * nf; ++s1)
        for (size_t s2 = s1 + 1; s2 < 2 * nf; ++s2) {
            size_t f1 = s1 / 2, f2 = s2 / 2;
            int e1 = static_cast<int>(s1 % 2), e2 = static_cast<int>(s2 % 2);
            size_t d1 = end_dim(f1, e1), d2 = end_dim(f2, e2);
            if (d1 == 0 || d2 == 0) continue;
            std::vector<RVector> rows;
            for (const auto& b : joint.basis()) {
                RVector v = block_of(b, s1, dims[f1]);
                RVector w = block_of(b, s2, dims[f2]);
                v.insert(v.end(), w.begin(), w.end());
                rows.push_back(std::move(v));
            }
            if (rank(rows) < d1 + d2)
                out.links.push_back({{part.families[f1].id, e1}, {part.families[f2].id, e2}});
        }
    return out;
}

const char* to_string(EndStatus s) {
    switch (s) {
        case EndStatus::Zero: return "zero";
        case EndStatus::Proper: return "proper";
        case EndStatus::Full: return "full";
    }
    return "?";
}

namespace {

EndpointDescriptor describe_end(const MatrixAlgebra& a, const std::vector<RMatrix>& gens, size_t fiber_dim,
                                uint64_t seed, std::vector<std::string>& notes, const std::string& where) {
    EndpointDescriptor d;
    d.dim = a.dim();
    d.generators = gens;
    d.status = d.dim == 0 ? EndStatus::Zero : d.dim == fiber_dim ? EndStatus::Full : EndStatus::Proper;
    if (d.dim > 0) {
        auto dec = decompose(a, seed);
        if (!dec.verified) notes.push_back("block decomposition not verified at " + where);
        d.block_sizes = dec.sizes();
    }
    return d;
}

const char* end_tag(EndStatus s) {
    switch (s) {
        case EndStatus::Zero: return "0";
        case EndStatus::Proper: return "dot";
        case EndStatus::Full: return "";
    }
    return "";
}

std::string interval(const Rational& len) { return "[0," + len.str() + "]"; }

std::string render_single(const FamilyDescriptor& f, const std::string& fiber_name) {
    if (f.fiber_dim == 1) {
        int zeros = (f.end0.status == EndStatus::Zero) + (f.end_eps.status == EndStatus::Zero);
        return std::string(zeros == 0 ? "C" : zeros == 1 ? "C0" : "C00") + interval(f.eps);
    }
    std::string a = end_tag(f.end0.status), b = end_tag(f.end_eps.status);
    std::string tag;
    if (a.empty() || b.empty())
        tag = a + b;
    else if (a == "0" && b == "0")
        tag = "00";
    else
        tag = a + "," + b;
    return "C" + tag + "(" + interval(f.eps) + ";" + fiber_name + ")";
}

}  // namespace

AlgebraDescriptor classify(const Partition& part, const BlockSet& blocks, uint64_t seed) {
    AlgebraDescriptor out;
    EndpointAnalysis ea = endpoint_analysis(part, blocks);
    out.identifications = ea.links;

    const size_t nf = part.families.size();
    std::vector<std::string> fiber_names(nf);
    for (size_t f = 0; f < nf; ++f) {
        const Family& fam = part.families[f];
        auto fb = blocks.of_family(fam.id);
        FamilyDescriptor d;
        d.id = fam.id;
        d.eps = fam.eps;
        d.m = fb.empty() ? 0 : fb.front()->m;
        MatrixAlgebra fiber = fiber_algebra(fb);
        d.fiber_dim = fiber.dim();
        auto dec = decompose(fiber, seed);
        if (!dec.verified) out.notes.push_back("fiber decomposition not verified for family " + std::to_string(fam.id));
        d.fiber_blocks = dec.blocks;
        d.fiber_null_dim = dec.null_dim;
        fiber_names[f] = dec.name();
        std::string tag = "family " + std::to_string(fam.id);
        d.end0 = describe_end(ea.at0[f], ea.gens0[f], d.fiber_dim, seed, out.notes, tag + " r=0");
        d.end_eps = describe_end(ea.at_eps[f], ea.gens_eps[f], d.fiber_dim, seed, out.notes, tag + " r=eps");
        if (!fiber.closed_under_transpose()) out.notes.push_back("fiber of " + tag + " not transpose closed");
        out.families.push_back(std::move(d));
    }

    auto index_of = [&](size_t id) {
        for (size_t f = 0; f < nf; ++f)
            if (part.families[f].id == id) return f;
        throw InternalError("classify: unknown family id");
    };

    Dsu dsu(nf);
    std::vector<std::array<int, 2>> degree(nf, {0, 0});
    for (const auto& l : ea.links) {
        size_t a = index_of(l.a.family), b = index_of(l.b.family);
        dsu.unite(a, b);
        degree[a][static_cast<size_t>(l.a.end)]++;
        degree[b][static_cast<size_t>(l.b.end)]++;
    }
    std::map<size_t, std::vector<size_t>> comps;
    for (size_t f = 0; f < nf; ++f)
        if (out.families[f].fiber_dim > 0) comps[dsu.find(f)].push_back(f);

    for (const auto& [root, members] : comps) {
        Summand s;
        for (size_t f : members) {
            s.families.push_back(out.families[f].id);
            s.length += out.families[f].eps;
        }
        s.fiber_dim = out.families[members.front()].fiber_dim;
        if (members.size() == 1) {
            s.text = render_single(out.families[members.front()], fiber_names[members.front()]);
            out.summands.push_back(std::move(s));
            continue;
        }
        size_t links = 0;
        bool chain = true;
        for (const auto& l : ea.links)
            if (dsu.find(index_of(l.a.family)) == root) ++links;
        for (size_t f : members)
            chain = chain && out.families[f].fiber_dim == 1 && degree[f][0] <= 1 && degree[f][1] <= 1;
        chain = chain && links + 1 == members.size();
        if (chain) {
            int zeros = 0;
            for (size_t f : members) {
                if (degree[f][0] == 0 && out.families[f].end0.status == EndStatus::Zero) ++zeros;
                if (degree[f][1] == 0 && out.families[f].end_eps.status == EndStatus::Zero) ++zeros;
            }
            s.text = std::string(zeros == 0 ? "C" : zeros == 1 ? "C0" : "C00") + interval(s.length);
        } else {
            std::string inner;
            for (size_t f : members) inner += (inner.empty() ? "" : ", ") + render_single(out.families[f], fiber_names[f]);
            s.text = "glued(" + inner + ")";
            out.notes.push_back("families glued in a configuration without a standard name: " + s.text);
        }
        out.summands.push_back(std::move(s));
    }

    std::sort(out.summands.begin(), out.summands.end(), [](const Summand& a, const Summand& b) {
        if (a.fiber_dim != b.fiber_dim) return a.fiber_dim < b.fiber_dim;
        if (a.length != b.length) return a.length < b.length;
        return a.families.front() < b.families.front();
    });
    for (size_t i = 0; i < out.summands.size(); ++i) out.summary += (i ? " ⊕ " : "") + out.summands[i].text;
    if (out.summary.empty()) out.summary = "0";
    return out;
}

}  // namespace eik
