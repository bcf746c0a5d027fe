#ifndef EIKONAL_PIPELINE_HPP
#define EIKONAL_PIPELINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "eikonal/algebra.hpp"
#include "eikonal/eikonal.hpp"
#include "eikonal/graph.hpp"
#include "eikonal/hydra.hpp"
#include "eikonal/partition.hpp"

namespace eik {

/** Everything computed for one controlled source. */
struct SourceRun {
    size_t source = 0;
    Hydra original;
    Partition single;            // partition of the original hydra
    Hydra extended;
    std::vector<BetaSystem> betas;  // per family of `single`
    Hydra efficient;
};

struct PipelineResult {
    std::vector<size_t> sigma;
    Rational horizon;
    std::vector<SourceRun> runs;  // Σ order
    Partition partition;          // joint partition from the efficient hydras
    BlockSet blocks;
    AlgebraDescriptor descriptor;
    std::vector<std::string> diagnostics;

    std::vector<const Hydra*> originals() const;
    std::vector<const Hydra*> efficients() const;
};

/** Resolves vertex ids into Σ; checks they are distinct boundary vertices. */
std::vector<size_t> resolve_sigma(const MetricGraph& g, const std::vector<std::string>& ids);

/** Hydras, partitions, blocks; `classify_algebra` controls the last (most expensive) stage. */
PipelineResult run_pipeline(const MetricGraph& g, const std::vector<size_t>& sigma, const Rational& T,
                            uint64_t seed = 0, bool classify_algebra = true);

}  // namespace eik

#endif
