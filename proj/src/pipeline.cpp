#include "eikonal/pipeline.hpp"

#include <algorithm>

#include "eikonal/grid.hpp"

namespace eik {

namespace {

// Re-throws with the pipeline stage prepended, keeping the error category.
template <class F>
auto staged(const char* stage, F&& f) -> decltype(f()) {
    auto tag = [&](const char* what) { return std::string("[") + stage + "] " + what; };
    try {
        return f();
    } catch (const InputError& e) {
        throw InputError(tag(e.what()));
    } catch (const CriticalPointError& e) {
        throw CriticalPointError(tag(e.what()));
    } catch (const InternalError& e) {
        throw InternalError(tag(e.what()));
    } catch (const std::exception& e) {
        throw InternalError(tag(e.what()));
    }
}

}  // namespace

std::vector<const Hydra*> PipelineResult::originals() const {
    std::vector<const Hydra*> out;
    for (const auto& r : runs) out.push_back(&r.original);
    return out;
}

std::vector<const Hydra*> PipelineResult::efficients() const {
    std::vector<const Hydra*> out;
    for (const auto& r : runs) out.push_back(&r.efficient);
    return out;
}

std::vector<size_t> resolve_sigma(const MetricGraph& g, const std::vector<std::string>& ids) {
    if (ids.empty()) throw InputError("sigma must name at least one boundary vertex");
    std::vector<size_t> out;
    for (const auto& id : ids) {
        auto v = g.find_vertex(id);
        if (!v) throw InputError("unknown vertex in sigma: " + id);
        if (!g.is_boundary(*v)) throw InputError("sigma vertex is not a boundary vertex: " + id);
        if (std::find(out.begin(), out.end(), *v) != out.end()) throw InputError("duplicate vertex in sigma: " + id);
        out.push_back(*v);
    }
    return out;
}

PipelineResult run_pipeline(const MetricGraph& g, const std::vector<size_t>& sigma, const Rational& T, uint64_t seed,
                            bool classify_algebra) {
    if (T <= Rational(0)) throw InputError("T must be positive");
    if (sigma.empty()) throw InputError("sigma must be nonempty");
    PipelineResult res;
    res.sigma = sigma;
    res.horizon = T;
    if (g.has_equal_lengths())
        res.diagnostics.push_back("graph has edges of equal length; the configuration is not generic and families may merge");
    for (size_t s : sigma) {
        if (!g.is_boundary(s)) throw InputError("sigma vertex is not a boundary vertex: " + g.vertex(s).id);
        SourceRun run;
        run.source = s;
        run.original = staged("hydra", [&] { return propagate(g, s, T); });
        run.single = staged("partition", [&] { return families(g, run.original); });
        run.extended = staged("partition", [&] { return build_extended_hydra(g, run.original, run.single); });
        run.betas = staged("eikonal", [&] { return grid_betas(g, run.extended, run.single); });
        run.efficient = staged("partition", [&] { return build_efficient_hydra(g, run.extended, run.betas); });
        res.runs.push_back(std::move(run));
    }
    res.partition = staged("partition", [&] { return sigma_partition(g, res.efficients(), res.originals()); });
    for (const auto& n : res.partition.notes) res.diagnostics.push_back(n);
    res.blocks = staged("eikonal", [&] { return build_blocks(g, res.partition, res.efficients()); });
    if (classify_algebra) {
        res.descriptor = staged("algebra", [&] { return classify(res.partition, res.blocks, seed); });
        for (const auto& n : res.descriptor.notes) res.diagnostics.push_back(n);
    }
    return res;
}

}  // namespace eik
