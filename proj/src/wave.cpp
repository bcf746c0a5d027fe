#include "eikonal/wave.hpp"

#include <algorithm>

#include "eikonal/partition.hpp"

namespace eik {

std::vector<WaveSource> wave_sources(const MetricGraph& g, const std::vector<const Hydra*>& hydras,
                                     const std::vector<PiecewisePolynomial>& controls) {
    if (hydras.size() != controls.size()) throw InputError("one control per source expected");
    std::vector<WaveSource> out;
    for (size_t i = 0; i < hydras.size(); ++i)
        out.push_back(WaveSource{hydras[i], controls[i], critical_points(g, *hydras[i])});
    return out;
}

Rational wave_snapshot(const MetricGraph& g, const std::vector<WaveSource>& sources, const GraphPoint& x) {
    g.check(x);
    Rational u;
    for (const auto& src : sources) {
        if (std::binary_search(src.critical.begin(), src.critical.end(), x))
            throw CriticalPointError("wave value requested at critical point " + g.describe(x));
        const Hydra& h = *src.hydra;
        for (const auto& p : pi_fiber(g, h, x, FiberMode::Closed)) {
            Rational a = value_at(g, h, x, p.t);
            if (!a.is_zero()) u += a * src.control(h.horizon - p.t);
        }
    }
    return u;
}

}  // namespace eik
