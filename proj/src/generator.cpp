#include "pspan/generator.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pspan {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw ConfigInvalid("uniform_below(0)");
    // reject the low remainder so every residue is equally likely
    std::uint64_t threshold = (0 - n) % n; // 2^64 mod n
    std::uint64_t x;
    do {
        x = rng();
    } while (x < threshold);
    return x % n;
}

std::uint64_t uniform_range(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    if (lo > hi) throw ConfigInvalid("uniform_range with lo > hi");
    return lo + uniform_below(rng, hi - lo + 1);
}

void validate_config(const GenConfig& cfg) {
    if (cfg.amount == 0) throw ConfigInvalid("amount must be positive");
    if (cfg.max_events == 0) throw ConfigInvalid("max_events must be positive");
    if (cfg.max_conditions == 0) throw ConfigInvalid("max_conditions must be positive");
    if (cfg.event_pool == 0 || cfg.condition_pool == 0)
        throw ConfigInvalid("label pools must be non-empty");
    if (cfg.condition_pool < cfg.max_conditions)
        throw ConfigInvalid("condition pool must cover max_conditions (labels round an "
                            "event stay distinct)");
}

std::string event_pool_label(std::uint64_t k) { return "e" + std::to_string(k + 1); }

std::string condition_pool_label(std::uint64_t k) {
    if (k < 26) return std::string(1, (char)('a' + k));
    return "c" + std::to_string(k + 1);
}

namespace {

// n distinct draws from [0, pool)
std::vector<std::uint64_t> sample_distinct(std::mt19937_64& rng, std::uint64_t pool,
                                           std::uint64_t n) {
    // partial Fisher-Yates on a sparse index map
    std::map<std::uint64_t, std::uint64_t> moved;
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < n; ++i) {
        std::uint64_t j = uniform_range(rng, i, pool - 1);
        std::uint64_t vj = moved.count(j) ? moved[j] : j;
        std::uint64_t vi = moved.count(i) ? moved[i] : i;
        out.push_back(vj);
        moved[j] = vi;
    }
    return out;
}

} // namespace

Net gen_one_complete(const GenConfig& cfg, std::mt19937_64& rng, std::uint64_t unit_index) {
    std::uint64_t bound = cfg.random_conditions
                              ? uniform_range(rng, 1, cfg.max_conditions)
                              : cfg.max_conditions;
    std::uint64_t total = uniform_range(rng, 1, bound);
    std::uint64_t inputs = uniform_below(rng, total + 1); // 0..total

    Net net;
    net.id = "u" + std::to_string(unit_index);
    std::string eid = "e" + std::to_string(unit_index);
    net.events.push_back({eid, event_pool_label(uniform_below(rng, cfg.event_pool))});

    auto picks = sample_distinct(rng, cfg.condition_pool, total);
    for (std::uint64_t i = 0; i < total; ++i) {
        std::string cid = "u" + std::to_string(unit_index) + "c" + std::to_string(i);
        net.conditions.push_back({cid, condition_pool_label(picks[i]), Capacity::unbounded()});
        if (i < inputs)
            net.arcs.push_back({cid, eid, 1, false});
        else
            net.arcs.push_back({eid, cid, 1, false});
    }
    return net;
}

Net connect(const Net& base, const Net& extra, std::mt19937_64& rng, bool keep_base_labels,
            const std::set<std::string>* frozen, std::uint64_t fuse_cap) {
    if (base.conditions.empty() || extra.conditions.empty())
        throw NoConditions("connect needs conditions on both sides");

    Net merged = base;
    for (const auto& c : extra.conditions) merged.conditions.push_back(c);
    for (const auto& e : extra.events) merged.events.push_back(e);
    for (const auto& a : extra.arcs) merged.arcs.push_back(a);

    std::vector<std::string> avail_base, avail_extra;
    for (const auto& c : base.conditions) avail_base.push_back(c.id);
    for (const auto& c : extra.conditions) avail_extra.push_back(c.id);

    std::uint64_t limit = std::min<std::uint64_t>(avail_base.size(), avail_extra.size());
    if (fuse_cap > 0) limit = std::min(limit, fuse_cap);
    std::uint64_t nxc = uniform_range(rng, 1, limit);

    // live views, updated as pairs are fused
    std::map<std::string, std::string> cond_label;
    for (const auto& c : merged.conditions) cond_label[c.id] = c.label;
    std::map<std::string, std::vector<std::string>> cond_events;
    std::map<std::string, std::set<std::string>> event_conds;
    for (const auto& a : merged.arcs) {
        if (cond_label.count(a.from)) {
            cond_events[a.from].push_back(a.to);
            event_conds[a.to].insert(a.from);
        } else {
            cond_events[a.to].push_back(a.from);
            event_conds[a.from].insert(a.to);
        }
    }

    struct Fuse {
        std::string keep, drop;
    };
    std::vector<Fuse> fuses;

    // safe iff no event of `drop` already touches `keep` (that fusion would
    // break purity or duplicate an arc) or another condition labelled like
    // `keep` (that would make the event's neighbour labels ambiguous).
    // Frozen conditions may only take part in label-preserving fusions:
    // their adjacency may grow, but their label and arcs must survive.
    auto try_fuse = [&](std::size_t bi, std::size_t xi) {
        std::string b = avail_base[bi];
        std::string x = avail_extra[xi];
        std::string keep = keep_base_labels ? b : x;
        std::string drop = keep_base_labels ? x : b;
        const std::string& label = cond_label[keep];
        if (frozen && frozen->count(drop) && cond_label[drop] != label) return false;
        for (const auto& ev : cond_events[drop]) {
            for (const auto& c : event_conds[ev]) {
                if (c == drop) continue;
                if (c == keep || cond_label[c] == label) return false;
            }
        }
        fuses.push_back({keep, drop});
        for (const auto& ev : cond_events[drop]) {
            event_conds[ev].erase(drop);
            event_conds[ev].insert(keep);
        }
        auto moved = cond_events[drop];
        auto& ce = cond_events[keep];
        ce.insert(ce.end(), moved.begin(), moved.end());
        avail_base.erase(avail_base.begin() + bi);
        avail_extra.erase(avail_extra.begin() + xi);
        return true;
    };

    for (std::uint64_t k = 0; k < nxc; ++k) {
        bool found = false;
        // a bounded number of random draws, then (for the mandatory first
        // fuse) a deterministic sweep over every pair
        for (int attempt = 0; attempt < 64 && !found; ++attempt)
            found = try_fuse(uniform_below(rng, avail_base.size()),
                             uniform_below(rng, avail_extra.size()));
        if (!found && k == 0) {
            for (std::size_t bi = 0; bi < avail_base.size() && !found; ++bi)
                for (std::size_t xi = 0; xi < avail_extra.size() && !found; ++xi)
                    found = try_fuse(bi, xi);
            if (!found)
                throw NoConditions("connect: no label-safe condition pair exists");
        }
        if (!found) break; // fewer fuses than drawn, still connected
        if (avail_base.empty() || avail_extra.empty()) break;
    }

    std::map<std::string, std::string> id_remap; // dropped id -> kept id
    for (const auto& f : fuses) id_remap[f.drop] = f.keep;

    Net out;
    out.id = base.id;
    std::set<std::string> dropped;
    for (const auto& f : fuses) dropped.insert(f.drop);
    for (const auto& c : merged.conditions)
        if (!dropped.count(c.id)) out.conditions.push_back(c);
    out.events = merged.events;
    for (auto a : merged.arcs) {
        if (id_remap.count(a.from)) a.from = id_remap[a.from];
        if (id_remap.count(a.to)) a.to = id_remap[a.to];
        out.arcs.push_back(a);
    }
    return out;
}

namespace {

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t purpose,
                           std::uint64_t index) {
    std::seed_seq seq{(std::uint32_t)(seed & 0xffffffffu), (std::uint32_t)(seed >> 32),
                      (std::uint32_t)purpose, (std::uint32_t)(index & 0xffffffffu),
                      (std::uint32_t)(index >> 32), 0x9e3779b9u};
    return std::mt19937_64(seq);
}

} // namespace

Net generate_net(const GenConfig& cfg, std::uint64_t net_index) {
    validate_config(cfg);
    std::mt19937_64 rng = stream_rng(cfg.seed, 1, net_index);
    std::uint64_t num = cfg.random_events ? uniform_range(rng, 1, cfg.max_events)
                                          : cfg.max_events;
    Net net = gen_one_complete(cfg, rng, 0);
    for (std::uint64_t u = 1; u < num; ++u) {
        // a drawn unit may admit no label-safe fusion; resample it
        bool grown = false;
        for (int tries = 0; tries < 1024 && !grown; ++tries) {
            Net unit = gen_one_complete(cfg, rng, u);
            try {
                net = connect(net, unit, rng, true);
                grown = true;
            } catch (const NoConditions&) {
            }
        }
        if (!grown)
            throw ConfigInvalid("label pools too small to keep growing this net");
    }
    net.id = "net" + std::to_string(net_index);
    return net;
}

std::vector<Net> generate_reservoir(const GenConfig& cfg) {
    validate_config(cfg);
    std::vector<Net> out;
    out.reserve(cfg.amount);
    for (std::uint64_t i = 0; i < cfg.amount; ++i) out.push_back(generate_net(cfg, i));
    return out;
}

PlantingLedger plant_given(std::vector<Net>& reservoir, const std::vector<Net>& planting_nets,
                           std::uint64_t minsup, std::uint64_t seed) {
    if (reservoir.empty()) throw EmptyInput("empty reservoir");
    std::uint64_t n = reservoir.size();
    if (minsup >= n)
        throw ConfigInvalid("minsup must leave room for m(x) in (minsup, N]");

    PlantingLedger ledger;
    ledger.seed = seed;
    ledger.minsup = minsup;
    ledger.planting_nets = planting_nets;

    // conditions of already planted copies, per reservoir slot
    std::vector<std::set<std::string>> frozen(n);

    for (std::size_t p = 0; p < planting_nets.size(); ++p) {
        std::mt19937_64 rng = stream_rng(seed, 2, p);
        const Net& x = planting_nets[p];
        std::uint64_t m = uniform_range(rng, minsup + 1, n);
        auto targets = sample_distinct(rng, n, m);

        // a host can run out of fusable conditions (everything already tied
        // up by earlier copies); such targets are swapped for unused ones
        std::set<std::uint64_t> tried(targets.begin(), targets.end());
        std::vector<std::uint64_t> placed;

        auto next_target = [&]() -> std::int64_t {
            if (!targets.empty()) {
                std::uint64_t t = targets.back();
                targets.pop_back();
                return (std::int64_t)t;
            }
            if (tried.size() == n) return -1; // every host tried
            std::uint64_t t;
            do {
                t = uniform_below(rng, n);
            } while (tried.count(t));
            tried.insert(t);
            return (std::int64_t)t;
        };

        while (placed.size() < m) {
            std::int64_t picked = next_target();
            if (picked < 0) break; // place as many as the reservoir admits
            std::uint64_t t = (std::uint64_t)picked;
            // rename x's nodes so ids stay unique inside the host
            Net copy = x;
            std::string prefix = "p" + std::to_string(p) + "_";
            std::map<std::string, std::string> remap;
            for (auto& c : copy.conditions) {
                remap[c.id] = prefix + c.id;
                c.id = prefix + c.id;
            }
            for (auto& e : copy.events) {
                remap[e.id] = prefix + e.id;
                e.id = prefix + e.id;
            }
            for (auto& a : copy.arcs) {
                a.from = remap[a.from];
                a.to = remap[a.to];
            }
            // the copy keeps its own labels; host-side conditions adopt them,
            // but never conditions of an earlier planted copy.  One fusion
            // per copy keeps the host from being used up too quickly.
            Net planted;
            try {
                planted = connect(copy, reservoir[t], rng, true, &frozen[t], 1);
            } catch (const NoConditions&) {
                continue; // saturated host; swap in another target
            }
            // freeze the copy's conditions against later plantings
            for (const auto& c : copy.conditions) frozen[t].insert(c.id);
            planted.id = reservoir[t].id;
            reservoir[t] = std::move(planted);
            placed.push_back(t);
        }

        if (placed.size() <= minsup)
            throw ConfigInvalid("could only plant " + x.id + " into " +
                                std::to_string(placed.size()) +
                                " nets, which does not clear minsup");

        Placement pl;
        pl.planting_id = x.id;
        pl.planted_count = placed.size();
        std::sort(placed.begin(), placed.end());
        pl.targets = std::move(placed);
        ledger.placements.push_back(std::move(pl));
    }
    return ledger;
}

PlantingLedger plant(std::vector<Net>& reservoir, const PlantConfig& cfg) {
    if (cfg.count == 0) throw ConfigInvalid("need at least one planting net");
    GenConfig gen;
    gen.amount = 1;
    gen.max_events = cfg.max_events;
    gen.max_conditions = cfg.max_conditions;
    gen.random_events = true;
    gen.random_conditions = true;
    gen.event_pool = cfg.event_pool;
    gen.condition_pool = cfg.condition_pool;
    gen.seed = cfg.seed ^ 0x706c616e74ull; // separate stream family

    std::vector<Net> planting;
    std::uint64_t attempt = 0;
    while (planting.size() < cfg.count) {
        if (attempt > 100000 + cfg.count)
            throw ConfigInvalid("planting net bounds are unsatisfiable");
        Net x = generate_net(gen, attempt++);
        if (x.events.size() < cfg.min_events) continue;
        if (x.arcs.size() < cfg.min_arcs || x.arcs.size() > cfg.max_arcs) continue;
        x.id = "plant" + std::to_string(planting.size());
        planting.push_back(std::move(x));
    }
    return plant_given(reservoir, planting, cfg.minsup, cfg.seed);
}

} // namespace pspan
