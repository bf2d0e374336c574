#ifndef PSPAN_JSON_IO_HPP
#define PSPAN_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "pspan/generator.hpp"
#include "pspan/miner.hpp"
#include "pspan/netgraph.hpp"

namespace pspan {

nlohmann::json net_to_json(const Net& net);
Net net_from_json(const nlohmann::json& j); // throws MalformedNet

nlohmann::json netgraph_to_json(const NetGraph& ng);

// JSON-lines reservoir files.
void write_reservoir(const std::string& path, const std::vector<Net>& nets);
// Throws IoError when the file cannot be opened and MalformedNet (with the
// offending line number) on parse failures.
std::vector<Net> read_reservoir(const std::string& path);

nlohmann::json result_to_json(const MiningResult& result);
// Same document, streamed pattern by pattern (atomic tmp + rename); large
// results never materialize as one in-memory json tree.
void write_result(const std::string& path, const MiningResult& result);
// Reads patterns back as (net, support) pairs plus raw codes.
struct LoadedPattern {
    std::size_t edges = 0;
    std::vector<std::string> code;
    std::uint64_t support = 0;
    Net net;
};
std::vector<LoadedPattern> result_from_json(const nlohmann::json& j);

nlohmann::json ledger_to_json(const PlantingLedger& ledger);
PlantingLedger ledger_from_json(const nlohmann::json& j);

// Write via temp file + rename so readers never observe partial output.
void atomic_write(const std::string& path, const std::string& content);

} // namespace pspan

#endif
