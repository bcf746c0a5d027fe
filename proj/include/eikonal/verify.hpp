#ifndef EIKONAL_VERIFY_HPP
#define EIKONAL_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "eikonal/pipeline.hpp"

namespace eik {

struct CheckResult {
    std::string name;
    bool ok = true;
    size_t cases = 0;      // number of individual assertions evaluated
    std::string detail;    // first failure, if any
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool ok() const;
};

/** Exact invariant suite over one pipeline run. */
VerifyReport verify_pipeline(const MetricGraph& g, const PipelineResult& run, uint64_t seed = 0);

}  // namespace eik

#endif
