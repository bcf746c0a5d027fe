#ifndef EIKONAL_IO_HPP
#define EIKONAL_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "eikonal/algebra.hpp"
#include "eikonal/eikonal.hpp"
#include "eikonal/graph.hpp"
#include "eikonal/hydra.hpp"
#include "eikonal/partition.hpp"
#include "eikonal/polynomial.hpp"

namespace eik {

using json = nlohmann::json;

// Rationals are always strings ("p/q" or an integer); matrices are arrays of rows.
void to_json(json& j, const Rational& r);
void from_json(const json& j, Rational& r);
void to_json(json& j, const RMatrix& m);
void from_json(const json& j, RMatrix& m);
void to_json(json& j, const Region& r);
void from_json(const json& j, Region& r);
void to_json(json& j, const Polynomial& p);
void from_json(const json& j, Polynomial& p);
void to_json(json& j, const PiecewisePolynomial& p);
void from_json(const json& j, PiecewisePolynomial& p);

void to_json(json& j, const GraphPoint& p);
void from_json(const json& j, GraphPoint& p);
void to_json(json& j, const Interval& p);
void from_json(const json& j, Interval& p);
void to_json(json& j, const SpaceTimePoint& p);
void from_json(const json& j, SpaceTimePoint& p);
void to_json(json& j, const Segment& p);
void from_json(const json& j, Segment& p);
void to_json(json& j, const VertexEvent& p);
void from_json(const json& j, VertexEvent& p);
void to_json(json& j, const GridTag& p);
void from_json(const json& j, GridTag& p);
void to_json(json& j, const Hydra& p);
void from_json(const json& j, Hydra& p);
void to_json(json& j, const ParamCell& p);
void from_json(const json& j, ParamCell& p);
void to_json(json& j, const TauMap& p);
void from_json(const json& j, TauMap& p);
void to_json(json& j, const SourceRows& p);
void from_json(const json& j, SourceRows& p);
void to_json(json& j, const Family& p);
void from_json(const json& j, Family& p);
void to_json(json& j, const Partition& p);
void from_json(const json& j, Partition& p);
void to_json(json& j, const BetaSystem& p);
void from_json(const json& j, BetaSystem& p);
void to_json(json& j, const EikonalBlock& p);
void from_json(const json& j, EikonalBlock& p);
void to_json(json& j, const BlockSet& p);
void from_json(const json& j, BlockSet& p);
void to_json(json& j, const Block& p);
void from_json(const json& j, Block& p);
void to_json(json& j, const EndpointDescriptor& p);
void from_json(const json& j, EndpointDescriptor& p);
void to_json(json& j, const FamilyDescriptor& p);
void from_json(const json& j, FamilyDescriptor& p);
void to_json(json& j, const EndpointRef& p);
void from_json(const json& j, EndpointRef& p);
void to_json(json& j, const EndpointLink& p);
void from_json(const json& j, EndpointLink& p);
void to_json(json& j, const Summand& p);
void from_json(const json& j, Summand& p);
void to_json(json& j, const AlgebraDescriptor& p);
void from_json(const json& j, AlgebraDescriptor& p);

/** Graph file: {"vertices":[{"id","boundary"}], "edges":[{"id","from","to","length"}]}. */
GraphSpec graph_spec_from_json(const json& j);
json graph_spec_to_json(const GraphSpec& s);
MetricGraph load_graph(const std::string& path);

/** "e1@3/4" (edge id and offset) or a vertex id. */
GraphPoint parse_point(const MetricGraph& g, const std::string& text);

/** Controls file for the wave subcommand. */
struct WaveInput {
    std::vector<std::string> sources;              // vertex ids, one per control
    std::vector<PiecewisePolynomial> controls;
    std::vector<std::string> points;
};
WaveInput load_wave_input(const std::string& path);
WaveInput wave_input_from_json(const json& j);

struct RunConfig {
    std::string graph;
    std::vector<std::string> sigma;
    Rational T;
    std::string subcommand;
    std::string json_path, svg_path, controls_path;
    std::optional<Rational> at;
    std::optional<size_t> family;
    uint64_t seed = 0;
    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};
void to_json(json& j, const RunConfig& c);
void from_json(const json& j, RunConfig& c);

struct ResultEnvelope {
    RunConfig config;
    std::string subcommand;
    json result;
    std::vector<std::string> diagnostics;
    friend bool operator==(const ResultEnvelope&, const ResultEnvelope&) = default;
};
void to_json(json& j, const ResultEnvelope& e);
void from_json(const json& j, ResultEnvelope& e);

}  // namespace eik

#endif
