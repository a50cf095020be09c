#ifndef BTG_IO_HPP
#define BTG_IO_HPP

#include <string>

#include "btg/trace_graph.hpp"
#include "json.hpp"

namespace btg::io {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";
/// Significant digits kept for every coordinate written to a document.
inline constexpr int kSignificantDigits = 12;

class SchemaError : public Error {
public:
    using Error::Error;
};

/// Rounds x to kSignificantDigits, the precision documents are written with.
double round_significant(double x);

nlohmann::json to_json(const TraceGraph& g);
/// Validates the schema version and every id reference.
TraceGraph from_json(const nlohmann::json& doc);

/// Sorted keys, no whitespace, one trailing newline.
std::string canonical_dump(const nlohmann::json& doc);

void save(const TraceGraph& g, const std::string& path);
TraceGraph load(const std::string& path);

/// Graphviz rendering of the graph on the (z, t) torus: vertices pinned at
/// (t, z), edges coloured by circle and labelled by level.  Output depends
/// only on the graph, so equal documents give byte-identical files.
std::string to_dot(const TraceGraph& g);

}  // namespace btg::io

#endif  // BTG_IO_HPP
