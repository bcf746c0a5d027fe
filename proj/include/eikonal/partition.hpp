#ifndef EIKONAL_PARTITION_HPP
#define EIKONAL_PARTITION_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eikonal/graph.hpp"
#include "eikonal/hydra.hpp"

namespace eik {

/** Thrown when a query hits a critical point, where the finite structure is ambiguous. */
class CriticalPointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/** Cell on an edge, parametrised by r in [0, hi-lo]: x(r) = lo + r, or hi - r when reversed. */
struct ParamCell {
    size_t edge = 0;
    Rational lo, hi;
    bool reversed = false;

    Rational length() const { return hi - lo; }
    int slope() const { return reversed ? -1 : 1; }
    Rational offset_at(const Rational& r) const { return reversed ? hi - r : lo + r; }
    friend bool operator==(const ParamCell&, const ParamCell&) = default;
};

/** τ(r) = t0 + slope * r. */
struct TauMap {
    Rational t0;
    int slope = 1;

    Rational at(const Rational& r) const { return t0 + Rational(slope) * r; }
    friend bool operator==(const TauMap&, const TauMap&) = default;
};

struct SourceRows {
    size_t source = 0;          // vertex index of γ
    std::vector<TauMap> rows;   // ordered by time
    friend bool operator==(const SourceRows&, const SourceRows&) = default;
};

struct Family {
    size_t id = 0;              // 1-based
    Rational eps;
    std::vector<ParamCell> cells;
    std::vector<SourceRows> sources;  // one entry per hydra in scope, possibly with no rows

    const SourceRows* rows_for(size_t source) const;
    Rational r_ref() const { return eps / Rational(2); }
    friend bool operator==(const Family&, const Family&) = default;
};

struct Partition {
    std::vector<size_t> scope;            // source vertices, Σ order
    Rational horizon;
    std::vector<GraphPoint> critical;     // Θ, sorted
    Region filled;
    std::vector<Family> families;
    std::vector<std::string> notes;
    friend bool operator==(const Partition&, const Partition&) = default;
};

struct Determination {
    std::vector<GraphPoint> lambda;  // sorted
    std::vector<Rational> xi;        // sorted increasingly
};

using Lattice = std::set<SpaceTimePoint>;

Lattice lattice_closure(const MetricGraph& g, const Hydra& h, const std::vector<SpaceTimePoint>& seeds,
                        FiberMode mode = FiberMode::Closed);

/** Λ[x], Ξ[x] on one hydra; throws CriticalPointError when x is critical. */
Determination determination_set(const MetricGraph& g, const Hydra& h, const GraphPoint& x);

std::vector<GraphPoint> critical_points(const MetricGraph& g, const Hydra& h);

/** Single-source partition of a hydra (original or efficient). */
Partition families(const MetricGraph& g, const Hydra& h);

/**
 * Multi-source partition from efficient hydras. The filled region is the union
 * of the original hydras' projections.
 */
Partition sigma_partition(const MetricGraph& g, const std::vector<const Hydra*>& efficient,
                          const std::vector<const Hydra*>& original);

/** Λ_Σ at a generic point: closure of the union of single-hydra determination sets. */
std::vector<GraphPoint> lambda_sigma(const MetricGraph& g, const std::vector<const Hydra*>& hydras,
                                     const GraphPoint& x, FiberMode mode = FiberMode::Generic);

/** Point x_k(r) of a family cell. */
GraphPoint cell_point(const MetricGraph& g, const ParamCell& c, const Rational& r);

/** Family whose cell contains x in its interior, with the cell index and parameter. */
struct CellLocation {
    size_t family_index = 0, cell = 0;
    Rational r;
};
std::optional<CellLocation> locate(const MetricGraph& g, const Partition& p, const GraphPoint& x);

/** Reverse the parametrisation r -> eps - r of a family (cells and τ maps). */
void flip_family(Family& f);

}  // namespace eik

#endif
