#ifndef EIKONAL_GRID_HPP
#define EIKONAL_GRID_HPP

#include <vector>

#include "eikonal/eikonal.hpp"
#include "eikonal/hydra.hpp"
#include "eikonal/partition.hpp"

namespace eik {

/**
 * Materialises the grids Λ[x]×Ξ[x] of every family as slope ±1 segments, one per
 * (family, row, cell); each carries ã, the hydra amplitude or 0 off the hydra.
 */
Hydra build_extended_hydra(const MetricGraph& g, const Hydra& h, const Partition& part);

/** β system per family of `part` (same order), computed from the extended amplitudes. */
std::vector<BetaSystem> grid_betas(const MetricGraph& g, const Hydra& extended, const Partition& part);

/** Keeps the grid segments where b = β^i_k is nonzero; values are the unnormalised β entries. */
Hydra build_efficient_hydra(const MetricGraph& g, const Hydra& extended, const std::vector<BetaSystem>& betas);

}  // namespace eik

#endif
