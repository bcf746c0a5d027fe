#ifndef EIKONAL_ALGEBRA_HPP
#define EIKONAL_ALGEBRA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eikonal/eikonal.hpp"
#include "eikonal/matrix.hpp"
#include "eikonal/partition.hpp"

namespace eik {

/** Finite-dimensional real matrix algebra given by a rational basis. */
class MatrixAlgebra {
public:
    explicit MatrixAlgebra(size_t m = 0) : m_(m), echelon_(m * m) {}
    size_t ambient() const { return m_; }
    size_t dim() const { return basis_.size(); }
    const std::vector<RMatrix>& basis() const { return basis_; }
    bool contains(const RMatrix& a) const;
    /** Adds a if it is outside the current span. */
    bool add(const RMatrix& a);
    bool closed_under_product() const;
    bool closed_under_transpose() const;

private:
    size_t m_;
    EchelonBasis echelon_;
    std::vector<RMatrix> basis_;
};

/** Span of all words of length >= 1 in the generators (non-unital). */
MatrixAlgebra span_closure(const std::vector<RMatrix>& generators, size_t m);

/** A common eigenvector of all projections, as a primitive integer vector, or none. */
std::optional<RVector> common_eigenvector(const std::vector<RMatrix>& projections);

struct Block {
    size_t size = 0, multiplicity = 0;
    friend bool operator==(const Block&, const Block&) = default;
};

struct BlockDecomposition {
    std::vector<Block> blocks;        // ascending block size
    size_t algebra_dim = 0;
    size_t commutant_dim = 0;
    size_t null_dim = 0;              // dimension of the common null space
    bool verified = false;            // exact dimension equalities hold
    size_t attempts = 0;
    double tolerance = 1e-9;
    std::vector<std::vector<double>> witness;  // orthogonal change of basis, columns grouped by block

    std::vector<size_t> sizes() const;
    std::string name() const;          // "M1⊕M2", "M3", or "0"
};

BlockDecomposition decompose(const MatrixAlgebra& alg, uint64_t seed = 0);

MatrixAlgebra fiber_algebra(const std::vector<const EikonalBlock*>& blocks);

struct EndpointRef {
    size_t family = 0;  // id
    int end = 0;        // 0 for r=0, 1 for r=ε
    friend bool operator==(const EndpointRef&, const EndpointRef&) = default;
};

struct EndpointLink {
    EndpointRef a, b;
    friend bool operator==(const EndpointLink&, const EndpointLink&) = default;
};

struct EndpointAnalysis {
    std::vector<MatrixAlgebra> at0, at_eps;   // per family, partition order
    std::vector<std::vector<RMatrix>> gens0, gens_eps;
    size_t joint_dim = 0;
    std::vector<EndpointLink> links;
};

EndpointAnalysis endpoint_analysis(const Partition& part, const BlockSet& blocks);

enum class EndStatus { Zero, Proper, Full };
const char* to_string(EndStatus s);

struct EndpointDescriptor {
    size_t dim = 0;
    EndStatus status = EndStatus::Zero;
    std::vector<size_t> block_sizes;
    std::vector<RMatrix> generators;
    friend bool operator==(const EndpointDescriptor&, const EndpointDescriptor&) = default;
};

struct FamilyDescriptor {
    size_t id = 0;
    Rational eps;
    size_t m = 0;
    size_t fiber_dim = 0;
    std::vector<Block> fiber_blocks;
    size_t fiber_null_dim = 0;
    EndpointDescriptor end0, end_eps;
    friend bool operator==(const FamilyDescriptor&, const FamilyDescriptor&) = default;
};

struct Summand {
    std::vector<size_t> families;
    Rational length;
    size_t fiber_dim = 0;
    std::string text;
    friend bool operator==(const Summand&, const Summand&) = default;
};

struct AlgebraDescriptor {
    std::vector<FamilyDescriptor> families;
    std::vector<EndpointLink> identifications;
    std::vector<Summand> summands;
    std::string summary;
    std::vector<std::string> notes;
    friend bool operator==(const AlgebraDescriptor&, const AlgebraDescriptor&) = default;
};

AlgebraDescriptor classify(const Partition& part, const BlockSet& blocks, uint64_t seed = 0);

}  // namespace eik

#endif
