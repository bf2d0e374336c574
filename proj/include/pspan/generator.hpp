#ifndef PSPAN_GENERATOR_HPP
#define PSPAN_GENERATOR_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "pspan/petri.hpp"

namespace pspan {

// Deterministic bounded draw in [0, n) on top of mt19937_64 (the stdlib
// distributions are not bit-stable across implementations).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);
// Inclusive range [lo, hi].
std::uint64_t uniform_range(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi);

struct GenConfig {
    std::uint64_t amount = 1;    // nets per reservoir
    std::uint64_t max_events = 6;   // U
    std::uint64_t max_conditions = 8; // H (conditions per event)
    bool random_events = true;   // rU: draw event count uniform in [1, U]
    bool random_conditions = true; // rH: draw per-event bound uniform in [1, H]
    std::uint64_t event_pool = 26;
    std::uint64_t condition_pool = 26;
    std::uint64_t seed = 0;
};

void validate_config(const GenConfig& cfg); // throws ConfigInvalid

// Label pools: events "e1".."eN"; conditions "a".."z" then "c27", "c28", ...
std::string event_pool_label(std::uint64_t k);
std::string condition_pool_label(std::uint64_t k);

// One event with X1 inputs + X2 outputs, 1 <= X1+X2 <= bound; condition
// labels within the unit are distinct (keeps the transform invertible).
Net gen_one_complete(const GenConfig& cfg, std::mt19937_64& rng,
                     std::uint64_t unit_index);

// Merge `extra` into `base` by fusing NXC condition pairs (one from each
// side, sampled without replacement).  The surviving condition keeps the
// id/label/capacity of the side selected by keep_base_labels.  Pairs that
// would give some event two same-labelled neighbours are re-drawn.
// `frozen` lists condition ids that must not be fused away; `fuse_cap`
// bounds NXC when positive.
Net connect(const Net& base, const Net& extra, std::mt19937_64& rng,
            bool keep_base_labels = true,
            const std::set<std::string>* frozen = nullptr,
            std::uint64_t fuse_cap = 0);

// One connected pure net per the config (independent rng stream per index).
Net generate_net(const GenConfig& cfg, std::uint64_t net_index);

// The whole reservoir.
std::vector<Net> generate_reservoir(const GenConfig& cfg);

struct Placement {
    std::string planting_id;
    std::uint64_t planted_count = 0;       // m(x)
    std::vector<std::uint64_t> targets;    // indexes into the reservoir
};

struct PlantingLedger {
    std::uint64_t seed = 0;
    std::uint64_t minsup = 0;
    std::vector<Net> planting_nets; // reference copies (labels preserved)
    std::vector<Placement> placements;
};

struct PlantConfig {
    std::uint64_t count = 1;        // n planting nets
    std::uint64_t max_events = 4;   // g, used as the U bound
    std::uint64_t max_conditions = 3; // H for planting nets
    std::uint64_t minsup = 1;
    std::uint64_t seed = 0;
    std::uint64_t event_pool = 26;
    std::uint64_t condition_pool = 26;
    // optional rejection bounds on the generated planting nets
    std::uint64_t min_events = 1;
    std::uint64_t min_arcs = 1;
    std::uint64_t max_arcs = UINT64_MAX;
};

// Embed each planting net whole into m(x) in (minsup, N] distinct test
// nets; merged conditions keep the planting net's labels, and conditions
// of earlier planted copies are never fused away.
PlantingLedger plant(std::vector<Net>& reservoir, const PlantConfig& cfg);

// Same, with caller-supplied planting nets.
PlantingLedger plant_given(std::vector<Net>& reservoir,
                           const std::vector<Net>& planting_nets,
                           std::uint64_t minsup, std::uint64_t seed);

} // namespace pspan

#endif
