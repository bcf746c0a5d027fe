#ifndef EIKONAL_TEST_ORACLES_HPP
#define EIKONAL_TEST_ORACLES_HPP

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "eikonal/graph.hpp"
#include "eikonal/matrix.hpp"

namespace oracle {

using eik::GraphPoint;
using eik::MetricGraph;
using eik::Rational;

/** The 3-star with arms g1 (2), g2 (3), g3 (10) around v. */
MetricGraph star(const Rational& l1 = 2, const Rational& l2 = 3, const Rational& l3 = 10);
MetricGraph single_edge(const Rational& len = 1);

/** Shortest path length by Dijkstra on the graph with x and y inserted as extra nodes. */
Rational dijkstra(const MetricGraph& g, const GraphPoint& x, const GraphPoint& y);

/**
 * Amplitude of the fundamental solution at an interior point (x,t), summed over all
 * walks from γ of duration t: -1 at boundary vertices, 2/μ per transmission and
 * (2-μ)/μ per reflection at inner vertices. `hits` counts contributing walks.
 */
Rational walk_amplitude(const MetricGraph& g, size_t gamma, const GraphPoint& x, const Rational& t,
                        size_t* hits = nullptr);

/** Explicit leapfrog solution of the graph wave equation with Dirichlet data at the boundary. */
class LeapfrogSolver {
public:
    using Control = std::function<double(double)>;
    /** controls[v] for boundary vertices; boundary vertices without an entry are held at 0. */
    LeapfrogSolver(const MetricGraph& g, std::vector<std::pair<size_t, Control>> controls, double h);
    void run_to(double T);
    /** Value at a grid node: offset must be a multiple of h on the edge. */
    double value(size_t edge, const Rational& offset) const;
    double h() const { return h_; }

private:
    struct Node {
        std::vector<size_t> nbr;
        double mass = 1;  // 1 on edges, μ/2 at inner vertices
        int control = -1;
    };
    const MetricGraph& g_;
    std::vector<std::pair<size_t, Control>> controls_;
    double h_, dt_, t_ = 0;
    std::vector<Node> nodes_;
    std::vector<std::vector<size_t>> edge_nodes_;
    std::vector<double> prev_, cur_;
};

/** Orthogonal projection onto the span of the given integer columns (exact). */
eik::RMatrix projection_onto(const std::vector<eik::RVector>& columns, size_t m);
/** Random orthogonal projection of the given rank with small integer spanning vectors. */
eik::RMatrix random_projection(std::mt19937_64& rng, size_t m, size_t rank, int range = 3);

}  // namespace oracle

#endif
