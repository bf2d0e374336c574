#ifndef PSPAN_MINER_HPP
#define PSPAN_MINER_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pspan/dfscode.hpp"
#include "pspan/generator.hpp"

namespace pspan {

// A frequent pattern: a connected sub-net-graph occurring (as an induced,
// full-tagging match) in >= minsup distinct input graphs.
struct Pattern {
    std::size_t edge_count = 0;
    DfsCode code;              // canonical (minimal) code; empty for nodes
    std::string node_render;   // set for 0-edge (single node) patterns
    NetGraph graph;            // the pattern's net graph
    std::uint64_t support = 0;
    std::vector<std::string> supporters; // net ids, sorted
};

struct MiningResult {
    std::uint64_t minsup = 0;
    std::size_t inputs = 0;
    // FD[j]: patterns with j edges; patterns sorted by code within a bucket.
    std::vector<std::vector<Pattern>> fd;

    std::vector<const Pattern*> all() const;
};

// Outcome of the code-unit pool filtering pass.
struct FilterResult {
    // retained (frequent-edge) units per graph index
    std::vector<std::vector<DfsUnit>> fdfs;
    // frequent forward units, sorted, deduplicated by edge identification
    std::vector<DfsUnit> min_fdfs;
    // frequent node renderings -> distinct-graph support
    std::map<std::string, std::uint64_t> snng;
};

// Traverses every graph minimally, pools code units, and keeps the ones
// whose canonical edge identification reaches minsup distinct graphs.
FilterResult build_and_filter(const std::vector<NetGraph>& graphs,
                              std::uint64_t minsup);

struct MineOptions {
    std::uint64_t minsup = 1;
    unsigned threads = 1;                    // parallel per-graph transforms
    std::uint64_t max_embeddings = 20000000; // per-pattern guard
};

// Frequent connected sub-net-graph mining (complete-subnet semantics:
// occurrences are induced and node taggings must match exactly).
MiningResult mine(const std::vector<NetGraph>& graphs, const MineOptions& opt);

// Back-transform every pattern into a net (a complete subnet of each
// supporter).  Net ids are "fd<edges>-<index>".
std::vector<Net> patterns_to_subnets(const MiningResult& result);

// Induced embedding of `pattern` into `host` with exact node renderings
// and edge taggings; empty when none exists.
std::vector<int> find_induced_embedding(const NetGraph& pattern, const NetGraph& host);

struct PlantingRow {
    std::string planting_id;
    bool found = false;
    std::uint64_t planted = 0; // m(x)
    std::uint64_t mined = 0;   // support of the matching pattern
    double ratio = 0.0;
};

struct PlantingReport {
    std::vector<PlantingRow> rows;
    bool all_recovered = false;
};

PlantingReport planting_report(const MiningResult& result, const PlantingLedger& ledger);

} // namespace pspan

#endif
