#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qgraph/core_graph.hpp"
#include "qgraph/spectral.hpp"
#include "qgraph/symmetry.hpp"

namespace qgraph {

/// A graph with optional vertex conditions and group action, as stored on disk.
struct GraphDocument {
    MetricGraph graph;
    std::vector<VertexCondition> conditions;
    std::optional<GraphAction> action;
};

inline constexpr int kGraphFormatVersion = 1;

/// JSON text (two-space indent, trailing newline). Throws UnsupportedCondition
/// for conditions that are neither standard nor quasi-periodic.
std::string to_json(const GraphDocument& doc);

/// Parses and validates a document. Throws ParseError and the graph/action
/// validation errors.
GraphDocument graph_from_json(const std::string& text);

GraphDocument read_graph(const std::string& path);
void write_graph(const std::string& path, const GraphDocument& doc);

/// CSV with '#' metadata lines, header "k,lambda,order,source_label", one row
/// per root. Sources of a coalesced root are joined with ';'.
void write_spectrum_csv(std::ostream& os, const Spectrum& s);
Spectrum read_spectrum_csv(std::istream& is);

Spectrum read_spectrum(const std::string& path);
void write_spectrum(const std::string& path, const Spectrum& s);

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

}  // namespace qgraph
