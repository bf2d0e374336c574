#include "pspan/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace pspan {

using nlohmann::json;

nlohmann::json net_to_json(const Net& net) {
    json j;
    j["id"] = net.id;
    j["conditions"] = json::array();
    for (const auto& c : net.conditions) {
        json jc;
        jc["id"] = c.id;
        jc["label"] = c.label;
        if (c.capacity.finite) jc["capacity"] = c.capacity.value;
        j["conditions"].push_back(std::move(jc));
    }
    j["events"] = json::array();
    for (const auto& e : net.events) j["events"].push_back({{"id", e.id}, {"label", e.label}});
    j["arcs"] = json::array();
    for (const auto& a : net.arcs) {
        json ja;
        ja["from"] = a.from;
        ja["to"] = a.to;
        if (a.weight != 1) ja["weight"] = a.weight;
        if (a.inhibitor) ja["inhibitor"] = true;
        j["arcs"].push_back(std::move(ja));
    }
    return j;
}

Net net_from_json(const nlohmann::json& j) {
    Net net;
    try {
        net.id = j.at("id").get<std::string>();
        for (const auto& jc : j.at("conditions")) {
            Condition c;
            c.id = jc.at("id").get<std::string>();
            c.label = jc.at("label").get<std::string>();
            if (jc.contains("capacity"))
                c.capacity = Capacity::of(jc.at("capacity").get<std::uint64_t>());
            net.conditions.push_back(std::move(c));
        }
        for (const auto& je : j.at("events")) {
            Event e;
            e.id = je.at("id").get<std::string>();
            e.label = je.at("label").get<std::string>();
            net.events.push_back(std::move(e));
        }
        if (j.contains("arcs"))
            for (const auto& ja : j.at("arcs")) {
                Arc a;
                a.from = ja.at("from").get<std::string>();
                a.to = ja.at("to").get<std::string>();
                if (ja.contains("weight")) a.weight = ja.at("weight").get<std::uint64_t>();
                if (ja.contains("inhibitor")) a.inhibitor = ja.at("inhibitor").get<bool>();
                net.arcs.push_back(std::move(a));
            }
    } catch (const json::exception& e) {
        throw MalformedNet(std::string("bad net json: ") + e.what());
    }
    validate_net(net);
    return net;
}

nlohmann::json netgraph_to_json(const NetGraph& ng) {
    json j;
    j["id"] = ng.id;
    j["nodes"] = json::array();
    for (const auto& n : ng.nodes) j["nodes"].push_back({{"id", n.id}, {"render", n.render}});
    j["edges"] = json::array();
    for (const auto& e : ng.edges)
        j["edges"].push_back({{"front", ng.nodes[e.u].id},
                              {"rear", ng.nodes[e.v].id},
                              {"tagging", e.render_uv}});
    j["conditions"] = ng.condition_universe;
    return j;
}

void write_reservoir(const std::string& path, const std::vector<Net>& nets) {
    std::string buf;
    for (const auto& net : nets) {
        buf += net_to_json(net).dump();
        buf += '\n';
    }
    atomic_write(path, buf);
}

std::vector<Net> read_reservoir(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<Net> nets;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            nets.push_back(net_from_json(json::parse(line)));
        } catch (const Error& e) {
            throw MalformedNet(path + ":" + std::to_string(lineno) + ": " + e.what());
        } catch (const json::exception& e) {
            throw MalformedNet(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return nets;
}

namespace {

json pattern_to_json(const Pattern& p, std::size_t edges, std::size_t idx) {
    json jp;
    jp["edges"] = p.edge_count;
    jp["support"] = p.support;
    jp["supporters"] = p.supporters;
    if (p.edge_count == 0) {
        jp["node"] = p.node_render;
    } else {
        json code = json::array();
        for (const auto& u : p.code.units) code.push_back(u.to_string(""));
        jp["code"] = std::move(code);
    }
    NetGraph g = p.graph;
    g.id = "fd" + std::to_string(edges) + "-" + std::to_string(idx);
    jp["net"] = net_to_json(netgraph_to_net(g));
    return jp;
}

} // namespace

nlohmann::json result_to_json(const MiningResult& result) {
    json j;
    j["minsup"] = result.minsup;
    j["inputs"] = result.inputs;
    j["patterns"] = json::array();
    std::size_t k = 0;
    for (std::size_t edges = 0; edges < result.fd.size(); ++edges) {
        std::size_t idx = 0;
        for (const auto& p : result.fd[edges]) {
            j["patterns"].push_back(pattern_to_json(p, edges, idx++));
            ++k;
        }
    }
    j["total"] = k;
    return j;
}

void write_result(const std::string& path, const MiningResult& result) {
    // one pattern at a time: large results never materialize as one json tree
    std::string tmp = path + ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp);
    out << "{\"inputs\":" << result.inputs << ",\"minsup\":" << result.minsup
        << ",\"patterns\":[";
    std::size_t k = 0;
    for (std::size_t edges = 0; edges < result.fd.size(); ++edges) {
        std::size_t idx = 0;
        for (const auto& p : result.fd[edges]) {
            if (k++) out << ',';
            out << pattern_to_json(p, edges, idx++).dump();
        }
    }
    out << "],\"total\":" << k << "}\n";
    out.close();
    if (!out) throw IoError("failed while writing " + tmp);
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw IoError("cannot move " + tmp + " into place");
}

std::vector<LoadedPattern> result_from_json(const nlohmann::json& j) {
    std::vector<LoadedPattern> out;
    try {
        for (const auto& jp : j.at("patterns")) {
            LoadedPattern p;
            p.edges = jp.at("edges").get<std::size_t>();
            p.support = jp.at("support").get<std::uint64_t>();
            if (jp.contains("code"))
                p.code = jp.at("code").get<std::vector<std::string>>();
            p.net = net_from_json(jp.at("net"));
            out.push_back(std::move(p));
        }
    } catch (const json::exception& e) {
        throw IoError(std::string("bad result json: ") + e.what());
    }
    return out;
}

nlohmann::json ledger_to_json(const PlantingLedger& ledger) {
    json j;
    j["seed"] = ledger.seed;
    j["minsup"] = ledger.minsup;
    j["planting_nets"] = json::array();
    for (const auto& net : ledger.planting_nets) j["planting_nets"].push_back(net_to_json(net));
    j["placements"] = json::array();
    for (const auto& pl : ledger.placements)
        j["placements"].push_back({{"planting_id", pl.planting_id},
                                   {"planted_count", pl.planted_count},
                                   {"targets", pl.targets}});
    return j;
}

PlantingLedger ledger_from_json(const nlohmann::json& j) {
    PlantingLedger ledger;
    try {
        ledger.seed = j.at("seed").get<std::uint64_t>();
        ledger.minsup = j.at("minsup").get<std::uint64_t>();
        for (const auto& jn : j.at("planting_nets"))
            ledger.planting_nets.push_back(net_from_json(jn));
        for (const auto& jp : j.at("placements")) {
            Placement pl;
            pl.planting_id = jp.at("planting_id").get<std::string>();
            pl.planted_count = jp.at("planted_count").get<std::uint64_t>();
            pl.targets = jp.at("targets").get<std::vector<std::uint64_t>>();
            ledger.placements.push_back(std::move(pl));
        }
    } catch (const json::exception& e) {
        throw IoError(std::string("bad ledger json: ") + e.what());
    }
    return ledger;
}

void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp);
        out.write(content.data(), (std::streamsize)content.size());
        if (!out) throw IoError("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw IoError("cannot rename " + tmp + " to " + path);
}

} // namespace pspan
