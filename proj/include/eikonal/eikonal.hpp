#ifndef EIKONAL_EIKONAL_HPP
#define EIKONAL_EIKONAL_HPP

#include <vector>

#include "eikonal/graph.hpp"
#include "eikonal/hydra.hpp"
#include "eikonal/matrix.hpp"
#include "eikonal/partition.hpp"
#include "eikonal/polynomial.hpp"

namespace eik {

/** Orthogonal system from the Schmidt procedure; vectors kept unnormalised. */
struct BetaSystem {
    std::vector<RVector> beta;
    std::vector<Rational> norm_sq;  // 0 marks a dependent (zero) row

    size_t rank() const;
    RMatrix projection(size_t i) const;
};

/** α[i][k] = value of the hydra at (x_k(r), τ_i(r)) for the family's reference r. */
RMatrix amplitude_vectors(const MetricGraph& g, const Hydra& h, const Family& fam);

BetaSystem schmidt(const RMatrix& alpha);

struct EikonalBlock {
    size_t family = 0;  // family id
    size_t source = 0;  // vertex of γ
    Rational eps;
    size_t m = 0;       // number of cells in the family frame
    std::vector<RMatrix> projections;
    std::vector<TauMap> taus;

    size_t size() const;  // m, the family frame dimension
    RMatrix evaluate(const Rational& r) const;
    RMatrix total_projection() const;
    friend bool operator==(const EikonalBlock&, const EikonalBlock&) = default;
};

EikonalBlock eikonal_block(const Family& fam, size_t source, const BetaSystem& beta);

/** Blocks of one Σ-partition, ordered by (family, Σ position). */
struct BlockSet {
    std::vector<size_t> scope;
    std::vector<EikonalBlock> blocks;

    const EikonalBlock& at(size_t family_id, size_t source) const;
    std::vector<const EikonalBlock*> of_family(size_t family_id) const;
};

BlockSet build_blocks(const MetricGraph& g, const Partition& part, const std::vector<const Hydra*>& hydras);

/** Block-diagonal E_γ over all families, with r_j per family (each clamped to that family's range by the caller). */
RMatrix global_generator(const Partition& part, const BlockSet& blocks, size_t source, const std::vector<Rational>& rs);

/** Function on the graph given per edge as a piecewise polynomial in the offset. */
struct EdgeFunction {
    std::vector<PiecewisePolynomial> per_edge;
    bool equals(const EdgeFunction& o) const;
};

/** Applies Σ_Φ Q_Φ for one source: projects y restricted to each family; zero off the families. */
EdgeFunction apply_projection(const MetricGraph& g, const Partition& part, const BlockSet& blocks, size_t source,
                              const EdgeFunction& y);

}  // namespace eik

#endif
