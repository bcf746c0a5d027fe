#ifndef EIKONAL_WAVE_HPP
#define EIKONAL_WAVE_HPP

#include <vector>

#include "eikonal/graph.hpp"
#include "eikonal/hydra.hpp"
#include "eikonal/polynomial.hpp"

namespace eik {

/** One controlled source: its original hydra, its control φ and its critical set Θ. */
struct WaveSource {
    const Hydra* hydra = nullptr;
    PiecewisePolynomial control;
    std::vector<GraphPoint> critical;
};

/** Builds WaveSource entries, computing the critical sets once. */
std::vector<WaveSource> wave_sources(const MetricGraph& g, const std::vector<const Hydra*>& hydras,
                                     const std::vector<PiecewisePolynomial>& controls);

/**
 * u^f(x,T) = Σ_γ Σ_{t ∈ ρ(π⁻¹(x))} a_γ(x,t) φ_γ(T - t).
 * Throws CriticalPointError when x is critical for one of the hydras.
 */
Rational wave_snapshot(const MetricGraph& g, const std::vector<WaveSource>& sources, const GraphPoint& x);

}  // namespace eik

#endif
