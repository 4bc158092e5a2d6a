#include "dqc/report.hpp"

#include <fstream>
#include <sstream>

#include "dqc/qasm.hpp"
#include "json.hpp"

namespace dqc {

using ordered_json = nlohmann::ordered_json;

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (unsigned char byte : data) {
        hash ^= byte;
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string digest_hex(std::string_view data) {
    static const char* kHex = "0123456789abcdef";
    const std::uint64_t h = fnv1a64(data);
    std::string out(16, '0');
    for (int i = 0; i < 16; ++i) out[i] = kHex[(h >> (60 - 4 * i)) & 0xF];
    return out;
}

namespace {

ordered_json network_json(const NetworkTopology& net) {
    ordered_json j;
    j["devices"] = ordered_json::array();
    for (const DeviceSpec& d : net.devices) {
        ordered_json jd;
        jd["id"] = d.id;
        jd["n_qubits"] = d.coupling.n_qubits;
        jd["edges"] = ordered_json::array();
        for (const auto& [a, b] : d.coupling.edges) jd["edges"].push_back({a, b});
        jd["comm_qubits"] = d.comm_qubits;
        j["devices"].push_back(std::move(jd));
    }
    j["links"] = ordered_json::array();
    for (const QuantumLink& l : net.links) {
        ordered_json jl;
        jl["a"] = {l.device_a, l.qubit_a};
        jl["b"] = {l.device_b, l.qubit_b};
        jl["epr_cost"] = l.epr_cost;
        j["links"].push_back(std::move(jl));
    }
    return j;
}

ordered_json metrics_json(const Metrics& m) {
    ordered_json j;
    j["remote_op_count"] = m.remote_op_count;
    j["epr_pairs_generated"] = m.epr_pairs_generated;
    j["epr_pairs_consumed"] = m.epr_pairs_consumed;
    j["lowered_gate_count"] = m.lowered_gate_count;
    j["lowered_depth"] = m.lowered_depth;
    j["inserted_swaps"] = m.inserted_swaps;
    j["total_cost"] = m.total_cost;
    j["isolated_dimension"] = m.isolated_dimension;
    j["clustered_dimension"] = m.clustered_dimension;
    return j;
}

Metrics metrics_from(const ordered_json& j) {
    Metrics m;
    m.remote_op_count = j.at("remote_op_count").get<std::uint64_t>();
    m.epr_pairs_generated = j.at("epr_pairs_generated").get<std::uint64_t>();
    m.epr_pairs_consumed = j.at("epr_pairs_consumed").get<std::uint64_t>();
    m.lowered_gate_count = j.at("lowered_gate_count").get<std::size_t>();
    m.lowered_depth = j.at("lowered_depth").get<std::size_t>();
    m.inserted_swaps = j.at("inserted_swaps").get<std::size_t>();
    m.total_cost = j.at("total_cost").get<double>();
    m.isolated_dimension = j.at("isolated_dimension").get<double>();
    m.clustered_dimension = j.at("clustered_dimension").get<double>();
    return m;
}

ordered_json options_json(const CompileOptions& o) {
    ordered_json j;
    j["routing"] = routing_mode_name(o.routing);
    j["strategy_threshold"] = o.strategy_threshold;
    j["weights"] = {{"single_qubit", o.weights.single_qubit},
                    {"cnot", o.weights.cnot},
                    {"epr_pair", o.weights.epr_pair},
                    {"measurement", o.weights.measurement}};
    ordered_json pins = ordered_json::object();
    for (const auto& [q, dev] : o.pins) pins[std::to_string(q)] = dev;
    j["pins"] = std::move(pins);
    return j;
}

CompileOptions options_from(const ordered_json& j) {
    CompileOptions o;
    const std::string routing = j.at("routing").get<std::string>();
    if (routing == "restore") {
        o.routing = RoutingMode::Restore;
    } else if (routing == "permute") {
        o.routing = RoutingMode::Permute;
    } else {
        throw ParseError("plan: unknown routing mode '" + routing + "'");
    }
    o.strategy_threshold = j.at("strategy_threshold").get<std::uint32_t>();
    const ordered_json& w = j.at("weights");
    o.weights.single_qubit = w.at("single_qubit").get<double>();
    o.weights.cnot = w.at("cnot").get<double>();
    o.weights.epr_pair = w.at("epr_pair").get<double>();
    o.weights.measurement = w.at("measurement").get<double>();
    for (const auto& [key, value] : j.at("pins").items()) {
        o.pins[static_cast<QubitId>(std::stoul(key))] = value.get<std::string>();
    }
    return o;
}

}  // namespace

std::string network_to_json(const NetworkTopology& net, int indent) {
    return network_json(net).dump(indent);
}

std::string metrics_to_json(const Metrics& m, int indent) {
    return metrics_json(m).dump(indent);
}

std::string verification_to_json(const VerificationReport& rep, int indent) {
    ordered_json j;
    j["passed"] = rep.passed;
    j["ran"] = rep.ran;
    j["max_infidelity"] = rep.max_infidelity;
    j["probes_checked"] = rep.probes_checked;
    j["branches_checked"] = rep.branches_checked;
    j["detail"] = rep.detail;
    return j.dump(indent);
}

std::string plan_to_json(const DistributedPlan& plan, int indent) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["network"] = network_json(plan.network);
    j["options"] = options_json(plan.options);
    j["source_qasm"] = emit_qasm(plan.source);
    j["lowered_qasm"] = emit_qasm(plan.lowered);

    ordered_json assignment = ordered_json::object();
    for (const auto& [l, slot] : plan.assignment.slots()) {
        assignment[std::to_string(l)] = {{"device", slot.device}, {"local", slot.local}};
    }
    j["assignment"] = std::move(assignment);

    ordered_json finals = ordered_json::object();
    for (const auto& [l, g] : plan.final_locations) finals[std::to_string(l)] = g;
    j["final_locations"] = std::move(finals);

    j["pre_routing_gate_count"] = plan.pre_routing_gate_count;
    j["inserted_swaps"] = plan.inserted_swaps;

    j["link_stats"] = ordered_json::array();
    for (const LinkStats& s : plan.link_stats) {
        j["link_stats"].push_back({{"pairs_generated", s.pairs_generated},
                                   {"pairs_consumed", s.pairs_consumed},
                                   {"cost_accrued", s.cost_accrued}});
    }

    j["remote_ops"] = ordered_json::array();
    for (const RemoteOpRecord& op : plan.remote_ops) {
        j["remote_ops"].push_back({{"kind", op.kind},
                                   {"q0", op.logical_q0},
                                   {"q1", op.logical_q1},
                                   {"from", op.from_device},
                                   {"to", op.to_device},
                                   {"path", op.link_path}});
    }

    j["metrics"] = metrics_json(plan.metrics);
    return j.dump(indent);
}

DistributedPlan plan_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw ParseError(std::string("plan: ") + e.what());
    }
    try {
        const int version = j.at("schema_version").get<int>();
        if (version != kSchemaVersion) {
            throw ParseError("plan: unsupported schema_version " + std::to_string(version));
        }
        DistributedPlan plan;
        plan.network = parse_network(j.at("network").dump());
        plan.options = options_from(j.at("options"));
        plan.source = parse_qasm(j.at("source_qasm").get<std::string>());
        plan.lowered = parse_qasm(j.at("lowered_qasm").get<std::string>());

        for (const auto& [key, value] : j.at("assignment").items()) {
            plan.assignment.set(static_cast<QubitId>(std::stoul(key)),
                                {value.at("device").get<std::string>(),
                                 value.at("local").get<QubitId>()});
        }
        for (const auto& [key, value] : j.at("final_locations").items()) {
            plan.final_locations[static_cast<QubitId>(std::stoul(key))] =
                value.get<QubitId>();
        }
        plan.pre_routing_gate_count = j.at("pre_routing_gate_count").get<std::size_t>();
        plan.inserted_swaps = j.at("inserted_swaps").get<std::size_t>();

        for (const ordered_json& js : j.at("link_stats")) {
            LinkStats s;
            s.pairs_generated = js.at("pairs_generated").get<std::uint64_t>();
            s.pairs_consumed = js.at("pairs_consumed").get<std::uint64_t>();
            s.cost_accrued = js.at("cost_accrued").get<double>();
            plan.link_stats.push_back(s);
        }
        for (const ordered_json& jo : j.at("remote_ops")) {
            RemoteOpRecord op;
            op.kind = jo.at("kind").get<std::string>();
            op.logical_q0 = jo.at("q0").get<QubitId>();
            op.logical_q1 = jo.at("q1").get<QubitId>();
            op.from_device = jo.at("from").get<std::string>();
            op.to_device = jo.at("to").get<std::string>();
            op.link_path = jo.at("path").get<std::vector<std::string>>();
            plan.remote_ops.push_back(std::move(op));
        }
        plan.metrics = metrics_from(j.at("metrics"));
        return plan;
    } catch (const ordered_json::exception& e) {
        throw ParseError(std::string("plan: ") + e.what());
    }
}

void save_plan(const DistributedPlan& plan, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    out << plan_to_json(plan) << '\n';
    if (!out) throw ParseError("failed writing '" + path + "'");
}

DistributedPlan load_plan(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return plan_from_json(buf.str());
}

}  // namespace dqc
