#ifndef PSPAN_ORACLE_HPP
#define PSPAN_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pspan/petri.hpp"

namespace pspan {

// Brute-force reference implementations.  Deliberately independent of the
// mining path: isomorphism classing uses the exhaustive net matcher, not
// canonical codes.

// Every connected complete subnet of `net` with 1..max_events events,
// deduplicated (within the net) by labeled isomorphism.
// Guarded: throws SizeGuardExceeded above `event_guard` events.
std::vector<Net> enumerate_complete_subnets(const Net& net,
                                            std::size_t max_events,
                                            std::size_t event_guard = 16);

struct OracleClass {
    Net representative;
    std::uint64_t support = 0;           // distinct nets containing it
    std::vector<std::string> supporters; // net ids, sorted
};

// Frequent connected complete subnets across the collection
// (distinct-net support >= minsup).
std::vector<OracleClass> brute_force_mine(const std::vector<Net>& nets,
                                          std::uint64_t minsup,
                                          std::size_t max_events,
                                          std::size_t event_guard = 16);

struct DiffEntry {
    std::string kind; // "missing" (oracle only), "extra" (mined only), "support"
    std::string detail;
};

// Compare a mined result (as nets + supports) against the oracle classes.
std::vector<DiffEntry> diff_results(const std::vector<OracleClass>& oracle,
                                    const std::vector<std::pair<Net, std::uint64_t>>& mined);

} // namespace pspan

#endif
