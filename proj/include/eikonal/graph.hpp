#ifndef EIKONAL_GRAPH_HPP
#define EIKONAL_GRAPH_HPP

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eikonal/rational.hpp"

namespace eik {

/** Raised for malformed user input (bad graph, bad Σ, bad T...). */
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/** Raised when an internal consistency check of the pipeline fails. */
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct VertexSpec {
    std::string id;
    bool boundary = false;
};

struct EdgeSpec {
    std::string id, from, to;
    Rational length;
};

struct GraphSpec {
    std::vector<VertexSpec> vertices;
    std::vector<EdgeSpec> edges;
};

struct Vertex {
    std::string id;
    bool boundary = false;
    std::vector<size_t> incident;  // edge indices, ascending
};

struct Edge {
    std::string id;
    size_t from = 0, to = 0;
    Rational length;
};

/**
 * A point on an edge. Always canonical when produced by MetricGraph::point:
 * a vertex is represented on its lowest-index incident edge.
 */
struct GraphPoint {
    size_t edge = 0;
    Rational offset;
    friend bool operator==(const GraphPoint&, const GraphPoint&) = default;
    friend auto operator<=>(const GraphPoint& a, const GraphPoint& b) {
        if (auto c = a.edge <=> b.edge; c != 0) return c;
        return a.offset <=> b.offset;
    }
};

struct Interval {
    Rational lo, hi;
    bool lo_closed = true, hi_closed = true;
    friend bool operator==(const Interval&, const Interval&) = default;
    bool contains(const Rational& x) const;
};

/** Per-edge finite union of intervals in offset coordinates. */
class Region {
public:
    Region() = default;
    explicit Region(size_t edges) : per_edge_(edges) {}
    void add(size_t edge, Interval iv);
    void unite(const Region& o);
    const std::vector<Interval>& on(size_t edge) const { return per_edge_.at(edge); }
    size_t edge_count() const { return per_edge_.size(); }
    bool contains_offset(size_t edge, const Rational& x) const;
    bool subset_of(const Region& o) const;
    Rational measure() const;
    friend bool operator==(const Region&, const Region&) = default;

private:
    void normalize(size_t edge);
    std::vector<std::vector<Interval>> per_edge_;
};

class MetricGraph {
public:
    size_t vertex_count() const { return vertices_.size(); }
    size_t edge_count() const { return edges_.size(); }
    const Vertex& vertex(size_t v) const { return vertices_.at(v); }
    const Edge& edge(size_t e) const { return edges_.at(e); }
    std::optional<size_t> find_vertex(const std::string& id) const;
    std::optional<size_t> find_edge(const std::string& id) const;
    size_t valency(size_t v) const { return vertices_.at(v).incident.size(); }
    bool is_boundary(size_t v) const { return vertices_.at(v).boundary; }
    std::vector<size_t> boundary_vertices() const;
    std::vector<size_t> inner_vertices() const;

    /** Canonical point; throws if offset outside [0, length]. */
    GraphPoint point(size_t edge, const Rational& offset) const;
    GraphPoint vertex_point(size_t v) const;
    std::optional<size_t> vertex_at(const GraphPoint& p) const;
    /** All (edge, offset) representations of p (several for a vertex). */
    std::vector<GraphPoint> representations(const GraphPoint& p) const;
    /** Offset of p on a given incident edge. */
    std::optional<Rational> offset_on(const GraphPoint& p, size_t edge) const;
    void check(const GraphPoint& p) const;

    const Rational& vertex_distance(size_t a, size_t b) const { return vdist_.at(a * vertices_.size() + b); }
    /** Upper bound on the diameter: largest vertex distance plus the longest edge. */
    Rational diameter_bound() const;
    std::string describe(const GraphPoint& p) const;
    /** True when two edges share a length (non-generic configuration). */
    bool has_equal_lengths() const;

private:
    friend MetricGraph build_graph(const GraphSpec& spec);
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<Rational> vdist_;
};

MetricGraph build_graph(const GraphSpec& spec);
Rational distance(const MetricGraph& g, const GraphPoint& x, const GraphPoint& y);
/** {x : τ(x, A) < r} as exact per-edge intervals. */
Region neighborhood(const MetricGraph& g, const std::vector<GraphPoint>& A, const Rational& r);

}  // namespace eik

#endif
