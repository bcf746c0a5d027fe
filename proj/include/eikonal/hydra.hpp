#ifndef EIKONAL_HYDRA_HPP
#define EIKONAL_HYDRA_HPP

#include <compare>
#include <vector>

#include "eikonal/graph.hpp"
#include "eikonal/rational.hpp"

namespace eik {

struct SpaceTimePoint {
    GraphPoint x;
    Rational t;
    friend bool operator==(const SpaceTimePoint&, const SpaceTimePoint&) = default;
    friend auto operator<=>(const SpaceTimePoint& a, const SpaceTimePoint& b) {
        if (auto c = a.x <=> b.x; c != 0) return c;
        return a.t <=> b.t;
    }
};

/** Slope ±1 space-time segment on one edge; time strictly increases from start to end. */
struct Segment {
    size_t edge = 0;
    Rational off0, t0, off1, t1;
    Rational value;          // amplitude a, extended amplitude, or unnormalised b
    Rational norm_sq = 1;    // b-values are value / sqrt(norm_sq)

    int direction() const { return off0 < off1 ? 1 : -1; }
    Rational offset_at(const Rational& t) const { return off0 + Rational(direction()) * (t - t0); }
    /** Time at which the segment passes offset o, if it does (closed segment). */
    bool time_at(const Rational& o, Rational& t) const;
    friend bool operator==(const Segment&, const Segment&) = default;
};

enum class HydraKind { Original, Extended, Efficient };
const char* to_string(HydraKind k);

/** Bookkeeping of one inner-vertex scattering event, for the balance invariant. */
struct VertexEvent {
    size_t vertex = 0;
    Rational time;
    Rational incoming;   // total amplitude arriving
    Rational emitted;    // total amplitude emitted, before zero-dropping
    friend bool operator==(const VertexEvent&, const VertexEvent&) = default;
};

/** Position of a grid segment inside the partition it was built from. */
struct GridTag {
    size_t family = 0, row = 0, cell = 0;
    friend bool operator==(const GridTag&, const GridTag&) = default;
};

struct Hydra {
    size_t source = 0;
    Rational horizon;
    HydraKind kind = HydraKind::Original;
    std::vector<Segment> segments;
    std::vector<SpaceTimePoint> corners;  // sorted, unique
    std::vector<VertexEvent> events;
    std::vector<GridTag> tags;            // parallel to segments for grid-built hydras
};

/**
 * How a point on the boundary of a segment is counted.
 * Closed: both endpoints belong to the segment. Generic: only (t0, t1], which
 * makes fibres left-continuous in time and ignores collinear junctions.
 */
enum class FiberMode { Closed, Generic };

/** Event-driven particle simulation of the fundamental solution from γ up to time T. */
Hydra propagate(const MetricGraph& g, size_t gamma, const Rational& T);

/** Corner points of an arbitrary segment set: vertex positions, crossings, time-T points, free ends, (γ,0). */
std::vector<SpaceTimePoint> compute_corners(const MetricGraph& g, const Hydra& h);

bool segment_contains(const MetricGraph& g, const Segment& s, const GraphPoint& x, const Rational& t,
                      FiberMode mode);
std::vector<SpaceTimePoint> pi_fiber(const MetricGraph& g, const Hydra& h, const GraphPoint& x,
                                     FiberMode mode = FiberMode::Closed);
std::vector<SpaceTimePoint> rho_fiber(const MetricGraph& g, const Hydra& h, const Rational& t,
                                      FiberMode mode = FiberMode::Closed);
bool on_hydra(const MetricGraph& g, const Hydra& h, const GraphPoint& x, const Rational& t);

/** Sum of values of segments containing (x,t) in the (t0,t1] sense; 0 off the hydra. */
Rational value_at(const MetricGraph& g, const Hydra& h, const GraphPoint& x, const Rational& t);

/** Amplitude with the corner conventions: 1 at (γ,0), 0 at boundary points with t>0; throws off the hydra. */
Rational amplitude_at(const MetricGraph& g, const Hydra& h, const GraphPoint& x, const Rational& t);

/** π(h): closed per-edge intervals swept by the segments. */
Region covered_region(const MetricGraph& g, const Hydra& h);

}  // namespace eik

#endif
