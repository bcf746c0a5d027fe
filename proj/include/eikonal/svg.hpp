#ifndef EIKONAL_SVG_HPP
#define EIKONAL_SVG_HPP

#include <string>

#include "eikonal/graph.hpp"
#include "eikonal/hydra.hpp"
#include "eikonal/partition.hpp"

namespace eik {

/**
 * Space-time diagrams. Edges are laid out side by side along the horizontal
 * axis (offset 0 on the left), time runs upwards. Output is deterministic.
 */
std::string render_hydra_svg(const MetricGraph& g, const Hydra& h);
std::string render_partition_svg(const MetricGraph& g, const Partition& p);

}  // namespace eik

#endif
