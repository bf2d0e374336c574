#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "pspan/json_io.hpp"
#include "pspan/oracle.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

// exit codes: 0 ok, 1 validation failure, 2 usage, 3 i/o, 4 data format
enum { EXIT_VALIDATION = 1, EXIT_USAGE = 2, EXIT_IO = 3, EXIT_FORMAT = 4 };

std::uint64_t effective_seed(std::uint64_t flag_seed) {
    if (const char* env = std::getenv("PSPAN_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw pspan::ConfigInvalid("PSPAN_SEED is not a number");
        }
    }
    return flag_seed;
}

void write_meta(const std::string& out_path, const std::string& command,
                const nlohmann::json& config) {
    nlohmann::json meta;
    meta["tool"] = "pspan";
    meta["version"] = kVersion;
    meta["command"] = command;
    meta["config"] = config;
    pspan::atomic_write(out_path + ".meta.json", meta.dump(2) + "\n");
}

// transform a reservoir with a bounded worker count; output order is fixed
// by index, so the result does not depend on the thread count
std::vector<pspan::NetGraph> transform_all(const std::vector<pspan::Net>& nets,
                                           unsigned threads) {
    std::vector<pspan::NetGraph> graphs(nets.size());
    if (threads <= 1 || nets.size() < 2) {
        for (std::size_t i = 0; i < nets.size(); ++i)
            graphs[i] = pspan::net_to_netgraph(nets[i]);
        return graphs;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    unsigned n = std::min<unsigned>(threads, (unsigned)nets.size());
    for (unsigned t = 0; t < n; ++t)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= nets.size() || failed.load()) return;
                try {
                    graphs[i] = pspan::net_to_netgraph(nets[i]);
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lk(error_mu);
                    error = nets[i].id + ": " + e.what();
                    failed.store(true);
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failed.load()) throw pspan::MalformedNet(error);
    return graphs;
}

int cmd_generate(const pspan::GenConfig& cfg_in, const std::string& out) {
    pspan::GenConfig cfg = cfg_in;
    cfg.seed = effective_seed(cfg.seed);
    pspan::validate_config(cfg);
    auto nets = pspan::generate_reservoir(cfg);
    pspan::write_reservoir(out, nets);
    nlohmann::json jc{{"amount", cfg.amount},
                      {"max_events", cfg.max_events},
                      {"max_conditions", cfg.max_conditions},
                      {"random_events", cfg.random_events},
                      {"random_conditions", cfg.random_conditions},
                      {"event_pool", cfg.event_pool},
                      {"condition_pool", cfg.condition_pool},
                      {"seed", cfg.seed}};
    write_meta(out, "generate", jc);
    std::cout << "wrote " << nets.size() << " nets to " << out << "\n";
    return 0;
}

int cmd_plant(const std::string& in, const pspan::PlantConfig& cfg_in,
              const std::string& out, const std::string& ledger_path) {
    pspan::PlantConfig cfg = cfg_in;
    cfg.seed = effective_seed(cfg.seed);
    auto reservoir = pspan::read_reservoir(in);
    pspan::PlantingLedger ledger = pspan::plant(reservoir, cfg);
    pspan::write_reservoir(out, reservoir);
    pspan::atomic_write(ledger_path, pspan::ledger_to_json(ledger).dump(2) + "\n");
    nlohmann::json jc{{"input", in},
                      {"count", cfg.count},
                      {"max_events", cfg.max_events},
                      {"max_conditions", cfg.max_conditions},
                      {"minsup", cfg.minsup},
                      {"seed", cfg.seed}};
    write_meta(out, "plant", jc);
    std::cout << "planted " << ledger.planting_nets.size() << " nets into " << out
              << " (ledger: " << ledger_path << ")\n";
    return 0;
}

int cmd_mine(const std::string& in, std::uint64_t minsup, unsigned threads,
             const std::string& out) {
    auto t0 = std::chrono::steady_clock::now();
    auto nets = pspan::read_reservoir(in);
    auto graphs = transform_all(nets, threads);
    pspan::MineOptions opt;
    opt.minsup = minsup;
    opt.threads = threads;
    pspan::MiningResult result = pspan::mine(graphs, opt);
    if (!out.empty()) pspan::write_result(out, result);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();

    std::size_t total = 0, bytes = 0;
    std::cout << "edges  patterns\n";
    for (std::size_t e = 0; e < result.fd.size(); ++e) {
        if (result.fd[e].empty()) continue;
        std::cout << std::setw(5) << e << "  " << result.fd[e].size() << "\n";
        total += result.fd[e].size();
        for (const auto& p : result.fd[e])
            bytes += sizeof(p) + p.supporters.size() * 16 + p.code.pattern_string().size();
    }
    std::cout << "total " << total << " patterns, " << ms << " ms, ~"
              << (bytes + (1 << 20) - 1) / (1 << 20) << " MiB pattern store\n";
    return 0;
}

int cmd_stats(const std::vector<std::string>& inputs, const std::string& out) {
    std::ostringstream csv;
    csv << "input,nets,arn,aen,ratio\n";
    for (const auto& in : inputs) {
        auto nets = pspan::read_reservoir(in);
        if (nets.empty()) throw pspan::EmptyInput(in + " is empty");
        double arcs = 0, edges = 0;
        for (const auto& net : nets) {
            arcs += (double)net.arcs.size();
            edges += (double)pspan::net_to_netgraph(net).edges.size();
        }
        double arn = arcs / (double)nets.size();
        double aen = edges / (double)nets.size();
        csv << in << "," << nets.size() << "," << arn << "," << aen << ","
            << (arn > 0 ? aen / arn : 0.0) << "\n";
    }
    if (out.empty())
        std::cout << csv.str();
    else
        pspan::atomic_write(out, csv.str());
    return 0;
}

int cmd_validate(const std::string& results_path, const std::string& ledger_path) {
    std::ifstream rin(results_path);
    if (!rin) throw pspan::IoError("cannot open " + results_path);
    std::ifstream lin(ledger_path);
    if (!lin) throw pspan::IoError("cannot open " + ledger_path);
    nlohmann::json jr, jl;
    try {
        // codes and supports suffice here; dropping the bulky keys keeps the
        // parse tree small for large result files
        jr = nlohmann::json::parse(
            rin, [](int, nlohmann::json::parse_event_t ev, nlohmann::json& parsed) {
                return !(ev == nlohmann::json::parse_event_t::key &&
                         (parsed == "supporters" || parsed == "net"));
            });
        lin >> jl;
    } catch (const nlohmann::json::exception& e) {
        throw pspan::MalformedNet(std::string("bad json: ") + e.what());
    }
    pspan::PlantingLedger ledger = pspan::ledger_from_json(jl);

    struct Row {
        std::size_t edges;
        std::string key; // canonical code, or node rendering for 0 edges
        std::uint64_t support;
    };
    std::vector<Row> rows;
    try {
        for (const auto& jp : jr.at("patterns")) {
            Row r;
            r.edges = jp.at("edges").get<std::size_t>();
            r.support = jp.at("support").get<std::uint64_t>();
            if (r.edges == 0) {
                r.key = jp.at("node").get<std::string>();
            } else {
                for (const auto& u : jp.at("code")) {
                    if (!r.key.empty()) r.key += ',';
                    r.key += u.get<std::string>();
                }
            }
            rows.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw pspan::MalformedNet(std::string("bad result json: ") + e.what());
    }

    bool all_ok = true;
    std::cout << "planting    planted  mined  ratio\n";
    for (std::size_t p = 0; p < ledger.planting_nets.size(); ++p) {
        const pspan::Net& x = ledger.planting_nets[p];
        std::uint64_t planted = ledger.placements[p].planted_count;
        std::uint64_t mined = 0;
        bool found = false;
        // equal canonical codes <=> labeled isomorphism
        pspan::NetGraph xg = pspan::net_to_netgraph(x);
        std::string key = xg.edges.empty() ? xg.nodes[0].render
                                           : pspan::minimal_dfs_code(xg).pattern_string();
        for (const auto& r : rows) {
            if (r.edges != xg.edges.size() || r.key != key) continue;
            found = true;
            mined = r.support;
            break;
        }
        double ratio = planted ? (double)mined / (double)planted : 0.0;
        std::cout << std::left << std::setw(12) << x.id << std::right << std::setw(7)
                  << planted << std::setw(7) << mined << "  " << std::fixed
                  << std::setprecision(2) << ratio << "\n";
        if (!found || mined < planted) all_ok = false;
    }
    if (ledger.planting_nets.empty()) std::cout << "(no placements)\n";
    std::cout << (all_ok ? "all planting nets recovered\n"
                         : "some planting nets missing or under-supported\n");
    return all_ok ? 0 : EXIT_VALIDATION;
}

int cmd_oracle(const std::string& in, std::uint64_t minsup, std::size_t max_events,
               std::size_t event_guard, const std::string& against) {
    auto nets = pspan::read_reservoir(in);
    auto classes = pspan::brute_force_mine(nets, minsup, max_events, event_guard);
    std::cout << "oracle: " << classes.size() << " frequent complete subnets\n";
    if (against.empty()) return 0;

    std::ifstream rin(against);
    if (!rin) throw pspan::IoError("cannot open " + against);
    nlohmann::json jr;
    try {
        rin >> jr;
    } catch (const nlohmann::json::exception& e) {
        throw pspan::MalformedNet(std::string("bad json: ") + e.what());
    }
    std::vector<std::pair<pspan::Net, std::uint64_t>> mined;
    for (auto& lp : pspan::result_from_json(jr)) {
        if (lp.net.events.size() > max_events) continue;
        mined.push_back({std::move(lp.net), lp.support});
    }
    auto diffs = pspan::diff_results(classes, mined);
    for (const auto& d : diffs) std::cout << d.kind << ": " << d.detail << "\n";
    std::cout << (diffs.empty() ? "results agree\n" : "results differ\n");
    return diffs.empty() ? 0 : EXIT_VALIDATION;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"frequent complete-subnet miner for pure condition/event nets"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // generate
    pspan::GenConfig gen;
    std::string gen_out;
    auto* g = app.add_subcommand("generate", "generate a random reservoir");
    g->add_option("--amount", gen.amount, "nets to generate")->check(CLI::PositiveNumber);
    g->add_option("--max-events", gen.max_events, "event count bound (U)")
        ->check(CLI::PositiveNumber);
    g->add_option("--max-conds", gen.max_conditions, "per-event condition bound (H)")
        ->check(CLI::PositiveNumber);
    g->add_flag("--random-events,!--fixed-events", gen.random_events,
                "draw the event count uniformly in [1, U]");
    g->add_flag("--random-conds,!--fixed-conds", gen.random_conditions,
                "draw each per-event bound uniformly in [1, H]");
    g->add_option("--event-pool", gen.event_pool, "distinct event labels");
    g->add_option("--cond-pool", gen.condition_pool, "distinct condition labels");
    g->add_option("--seed", gen.seed, "rng seed (PSPAN_SEED overrides)");
    g->add_option("-o,--output", gen_out, "reservoir file (json lines)")->required();

    // plant
    pspan::PlantConfig pl;
    std::string pl_in, pl_out, pl_ledger;
    auto* p = app.add_subcommand("plant", "embed planting nets into a reservoir");
    p->add_option("-i,--input", pl_in, "reservoir file")->required();
    p->add_option("-o,--output", pl_out, "planted reservoir file")->required();
    p->add_option("--ledger", pl_ledger, "ledger file")->required();
    p->add_option("--count", pl.count, "planting nets")->check(CLI::PositiveNumber);
    p->add_option("--max-events", pl.max_events, "planting net event bound");
    p->add_option("--max-conds", pl.max_conditions, "planting net condition bound");
    p->add_option("--minsup", pl.minsup, "support floor: m(x) in (minsup, N]")
        ->required();
    p->add_option("--min-events", pl.min_events, "reject planting nets below");
    p->add_option("--min-arcs", pl.min_arcs, "reject planting nets below");
    p->add_option("--max-arcs", pl.max_arcs, "reject planting nets above");
    p->add_option("--event-pool", pl.event_pool, "distinct event labels");
    p->add_option("--cond-pool", pl.condition_pool, "distinct condition labels");
    p->add_option("--seed", pl.seed, "rng seed (PSPAN_SEED overrides)");

    // mine
    std::string mi_in, mi_out;
    std::uint64_t mi_minsup = 1;
    unsigned mi_threads = 1;
    auto* m = app.add_subcommand("mine", "mine frequent complete subnets");
    m->add_option("-i,--input", mi_in, "reservoir file")->required();
    m->add_option("--minsup", mi_minsup, "minimum distinct-net support")
        ->required()
        ->check(CLI::PositiveNumber);
    m->add_option("--threads", mi_threads, "worker bound for the transform stage")
        ->check(CLI::PositiveNumber);
    m->add_option("-o,--output", mi_out, "results file (json)");

    // stats
    std::vector<std::string> st_in;
    std::string st_out;
    auto* s = app.add_subcommand("stats", "arc/edge compression statistics");
    s->add_option("-i,--input", st_in, "reservoir file(s)")->required();
    s->add_option("-o,--output", st_out, "csv file (stdout when omitted)");

    // validate
    std::string va_results, va_ledger;
    auto* v = app.add_subcommand("validate", "check mined results against a ledger");
    v->add_option("--results", va_results, "mining results json")->required();
    v->add_option("--ledger", va_ledger, "planting ledger json")->required();

    // oracle
    std::string or_in, or_against;
    std::uint64_t or_minsup = 1;
    std::size_t or_max_events = 4, or_guard = 16;
    auto* o = app.add_subcommand("oracle", "brute-force reference mining");
    o->add_option("-i,--input", or_in, "reservoir file")->required();
    o->add_option("--minsup", or_minsup, "minimum distinct-net support")
        ->required()
        ->check(CLI::PositiveNumber);
    o->add_option("--max-events", or_max_events, "largest subnet to enumerate");
    o->add_option("--event-guard", or_guard, "per-net event ceiling");
    o->add_option("--against", or_against, "results json to diff");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : EXIT_USAGE;
    }

    try {
        if (g->parsed()) return cmd_generate(gen, gen_out);
        if (p->parsed()) return cmd_plant(pl_in, pl, pl_out, pl_ledger);
        if (m->parsed()) return cmd_mine(mi_in, mi_minsup, mi_threads, mi_out);
        if (s->parsed()) return cmd_stats(st_in, st_out);
        if (v->parsed()) return cmd_validate(va_results, va_ledger);
        if (o->parsed()) return cmd_oracle(or_in, or_minsup, or_max_events, or_guard,
                                           or_against);
    } catch (const pspan::ConfigInvalid& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const pspan::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_IO;
    } catch (const pspan::MalformedNet& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_FORMAT;
    } catch (const pspan::MalformedCode& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_FORMAT;
    } catch (const pspan::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_VALIDATION;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_VALIDATION;
    }
    return 0;
}
