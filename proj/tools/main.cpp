// dqc: command-line frontend for the distributed circuit compiler.
//
// Subcommands: compile, verify, simulate, metrics, topology.
// Exit codes: 0 success, 1 parse/usage error, 2 capacity or validation
// error. Diagnostics go to stderr; reports go to stdout.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dqc/compiler.hpp"
#include "dqc/qasm.hpp"
#include "dqc/report.hpp"
#include "dqc/statevector.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 20180810;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw dqc::ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

dqc::Circuit load_circuit(const std::string& path, std::string* text_out) {
    const std::string text = read_file(path);
    if (text_out) *text_out = text;
    try {
        return dqc::parse_qasm(text);
    } catch (const dqc::ParseError& e) {
        throw dqc::ParseError(path + ": " + e.what());
    }
}

struct NetworkInput {
    dqc::NetworkTopology net;
    std::string source;  // path or preset name
    std::string digest;  // of the file bytes, or of the canonical JSON for presets
};

NetworkInput load_network_input(const std::string& arg) {
    NetworkInput in;
    in.source = arg;
    if (dqc::is_preset_name(arg)) {
        in.net = dqc::preset_network(arg);
        in.digest = dqc::digest_hex(dqc::network_to_json(in.net));
    } else {
        const std::string text = read_file(arg);
        in.digest = dqc::digest_hex(text);
        try {
            in.net = dqc::parse_network(text);
        } catch (const dqc::ParseError& e) {
            throw dqc::ParseError(arg + ": " + e.what());
        }
    }
    return in;
}

std::map<dqc::QubitId, std::string> parse_pins(const std::vector<std::string>& specs) {
    std::map<dqc::QubitId, std::string> pins;
    for (const std::string& s : specs) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == s.size()) {
            throw dqc::ParseError("--pin expects <qubit>=<device>, got '" + s + "'");
        }
        std::size_t used = 0;
        unsigned long q = 0;
        try {
            q = std::stoul(s.substr(0, eq), &used);
        } catch (const std::exception&) {
            throw dqc::ParseError("--pin expects a qubit index, got '" + s + "'");
        }
        if (used != eq) throw dqc::ParseError("--pin expects a qubit index, got '" + s + "'");
        pins[static_cast<dqc::QubitId>(q)] = s.substr(eq + 1);
    }
    return pins;
}

std::string command_echo(int argc, char** argv) {
    std::string echo;
    for (int i = 0; i < argc; ++i) {
        if (i) echo += ' ';
        echo += argv[i];
    }
    return echo;
}

ordered_json base_report(const std::string& echo, const std::string& subcommand,
                         std::uint64_t seed) {
    ordered_json j;
    j["schema_version"] = dqc::kSchemaVersion;
    j["command"] = echo;
    j["subcommand"] = subcommand;
    j["seed"] = seed;
    j["inputs"] = ordered_json::array();
    return j;
}

void add_input(ordered_json& report, const std::string& kind, const std::string& source,
               const std::string& digest) {
    report["inputs"].push_back(
        {{"kind", kind}, {"source", source}, {"fnv1a64", digest}});
}

// Dimensions are exact integers up to 2^53; annotate exact powers of two.
std::string fmt_dimension(double v) {
    char buf[64];
    if (v < 9007199254740992.0) {
        std::snprintf(buf, sizeof buf, "%.0f", v);
    } else {
        std::snprintf(buf, sizeof buf, "%.6g", v);
    }
    std::string s = buf;
    int exp = 0;
    if (v > 0 && std::frexp(v, &exp) == 0.5) {
        s += " (2^" + std::to_string(exp - 1) + ")";
    }
    return s;
}

void print_metrics_human(const dqc::Metrics& m) {
    std::printf("metrics:\n");
    std::printf("  remote_op_count      %llu\n", (unsigned long long)m.remote_op_count);
    std::printf("  epr_pairs_generated  %llu\n", (unsigned long long)m.epr_pairs_generated);
    std::printf("  epr_pairs_consumed   %llu\n", (unsigned long long)m.epr_pairs_consumed);
    std::printf("  lowered_gate_count   %zu\n", m.lowered_gate_count);
    std::printf("  lowered_depth        %zu\n", m.lowered_depth);
    std::printf("  inserted_swaps       %zu\n", m.inserted_swaps);
    std::printf("  total_cost           %.10g\n", m.total_cost);
    std::printf("  isolated_dimension   %s\n", fmt_dimension(m.isolated_dimension).c_str());
    std::printf("  clustered_dimension  %s\n", fmt_dimension(m.clustered_dimension).c_str());
}

void print_verification_human(const dqc::VerificationReport& rep) {
    if (!rep.ran) {
        std::printf("verification: SKIPPED (%s)\n", rep.detail.c_str());
    } else if (rep.passed) {
        std::printf("verification: PASSED (%zu probes, %zu branches, max infidelity %.3g)\n",
                    rep.probes_checked, rep.branches_checked, rep.max_infidelity);
    } else {
        std::printf("verification: FAILED (max infidelity %.3g; %s)\n", rep.max_infidelity,
                    rep.detail.c_str());
    }
}

std::string bits_string(const std::vector<std::uint8_t>& bits) {
    std::string s;  // index i is c[i]
    for (std::uint8_t b : bits) s += b ? '1' : '0';
    return s;
}

struct CompileArgs {
    std::string circuit_path;
    std::string network;
    std::string routing = "restore";
    std::uint32_t threshold = 3;
    std::vector<std::string> pins;
    std::string out;
    std::uint64_t seed = kDefaultSeed;
    bool json = false;
};

dqc::CompileOptions make_options(const CompileArgs& a) {
    dqc::CompileOptions opts;
    opts.routing = a.routing == "permute" ? dqc::RoutingMode::Permute : dqc::RoutingMode::Restore;
    opts.strategy_threshold = a.threshold;
    opts.pins = parse_pins(a.pins);
    return opts;
}

ordered_json passes_json(const dqc::DistributedPlan& plan) {
    return {{"source_gates", plan.source.size()},
            {"lowered_gates", plan.pre_routing_gate_count},
            {"routed_gates", plan.lowered.size()}};
}

int run_compile(const CompileArgs& args, const std::string& echo) {
    std::string circuit_text;
    const dqc::Circuit circuit = load_circuit(args.circuit_path, &circuit_text);
    const NetworkInput net = load_network_input(args.network);
    const dqc::CompileOptions opts = make_options(args);

    const dqc::DistributedPlan plan = dqc::compile(circuit, net.net, opts);
    const dqc::VerificationReport rep = dqc::verify(plan, args.seed);

    ordered_json report = base_report(echo, "compile", args.seed);
    add_input(report, "circuit", args.circuit_path, dqc::digest_hex(circuit_text));
    add_input(report, "network", net.source, net.digest);
    report["options"] = ordered_json::parse(dqc::plan_to_json(plan)).at("options");
    report["passes"] = passes_json(plan);
    report["metrics"] = ordered_json::parse(dqc::metrics_to_json(plan.metrics));
    report["verification"] = ordered_json::parse(dqc::verification_to_json(rep));

    std::string plan_path, qasm_path;
    if (!args.out.empty()) {
        std::string stem = args.out;
        if (stem.size() > 5 && stem.substr(stem.size() - 5) == ".json") {
            stem.resize(stem.size() - 5);
        }
        plan_path = stem + ".json";
        qasm_path = stem + ".qasm";
        dqc::save_plan(plan, plan_path);
        dqc::write_qasm_file(plan.lowered, qasm_path);
        report["artifacts"] = {{"plan", plan_path}, {"lowered_circuit", qasm_path}};
    }

    if (args.json) {
        std::printf("%s\n", report.dump(2).c_str());
    } else {
        std::printf("devices: %zu, data qubits: %zu, links: %zu\n", net.net.devices.size(),
                    net.net.total_data_qubits(), net.net.links.size());
        std::printf("assignment:\n");
        for (const auto& [l, slot] : plan.assignment.slots()) {
            std::printf("  q%u -> %s.%u\n", l, slot.device.c_str(), slot.local);
        }
        std::printf("passes: source %zu gates, lowered %zu, routed %zu\n",
                    plan.source.size(), plan.pre_routing_gate_count, plan.lowered.size());
        for (const dqc::RemoteOpRecord& op : plan.remote_ops) {
            std::printf("remote op: %s q%u %s->%s\n", op.kind.c_str(), op.logical_q0,
                        op.from_device.c_str(), op.to_device.c_str());
        }
        print_metrics_human(plan.metrics);
        print_verification_human(rep);
        if (!plan_path.empty()) {
            std::printf("plan written to %s, lowered circuit to %s\n", plan_path.c_str(),
                        qasm_path.c_str());
        }
    }
    return rep.ran && !rep.passed ? 2 : 0;
}

int run_verify(const std::string& plan_path, std::uint64_t seed, bool json,
               const std::string& echo) {
    const std::string text = read_file(plan_path);
    const dqc::DistributedPlan plan = dqc::plan_from_json(text);
    const dqc::VerificationReport rep = dqc::verify(plan, seed);

    ordered_json report = base_report(echo, "verify", seed);
    add_input(report, "plan", plan_path, dqc::digest_hex(text));
    report["metrics"] = ordered_json::parse(dqc::metrics_to_json(plan.metrics));
    report["verification"] = ordered_json::parse(dqc::verification_to_json(rep));

    if (json) {
        std::printf("%s\n", report.dump(2).c_str());
    } else {
        print_verification_human(rep);
    }
    return rep.passed ? 0 : 2;
}

int run_simulate(const std::string& circuit_path, const std::string& mode, std::uint64_t seed,
                 bool json, const std::string& echo) {
    std::string circuit_text;
    const dqc::Circuit circuit = load_circuit(circuit_path, &circuit_text);
    const dqc::StateVector initial(circuit.n_qubits());

    ordered_json report = base_report(echo, "simulate", seed);
    add_input(report, "circuit", circuit_path, dqc::digest_hex(circuit_text));
    report["mode"] = mode;

    std::vector<dqc::Branch> branches;
    if (mode == "exhaustive") {
        branches = dqc::run_exhaustive(circuit, initial);
    } else {
        branches.push_back(dqc::run_sampled(circuit, initial, seed));
    }

    // Amplitudes are only worth dumping for small registers.
    const bool with_state = json && circuit.n_qubits() <= 10;
    report["branches"] = ordered_json::array();
    for (const dqc::Branch& b : branches) {
        ordered_json jb;
        jb["bits"] = bits_string(b.classical_bits);
        jb["probability"] = b.probability;
        if (with_state) {
            ordered_json amps = ordered_json::array();
            for (const dqc::Complex& a : b.final_state.amplitudes()) {
                amps.push_back({a.real(), a.imag()});
            }
            jb["state"] = std::move(amps);
        }
        report["branches"].push_back(std::move(jb));
    }

    if (json) {
        std::printf("%s\n", report.dump(2).c_str());
    } else {
        std::printf("branches: %zu\n", branches.size());
        if (!branches.empty() && !branches.front().classical_bits.empty()) {
            std::printf("%-*s  probability\n", (int)branches.front().classical_bits.size(),
                        "bits");
        } else {
            std::printf("bits  probability\n");
        }
        for (const dqc::Branch& b : branches) {
            const std::string bits = bits_string(b.classical_bits);
            std::printf("%-4s  %.10g\n", bits.empty() ? "-" : bits.c_str(), b.probability);
        }
    }
    return 0;
}

int run_metrics(const std::string& circuit_path, const CompileArgs& args,
                const std::string& echo) {
    const NetworkInput net = load_network_input(args.network);
    ordered_json report = base_report(echo, "metrics", args.seed);
    add_input(report, "network", net.source, net.digest);

    if (circuit_path.empty()) {
        // Network-only accounting: what the cluster can reach vs its parts.
        ordered_json dims;
        dims["total_data_qubits"] = net.net.total_data_qubits();
        dims["isolated_dimension"] = dqc::isolated_dimension(net.net);
        dims["clustered_dimension"] = dqc::clustered_dimension(net.net);
        report["metrics"] = std::move(dims);
        if (args.json) {
            std::printf("%s\n", report.dump(2).c_str());
        } else {
            std::printf("total_data_qubits    %zu\n", net.net.total_data_qubits());
            std::printf("isolated_dimension   %s\n",
                        fmt_dimension(dqc::isolated_dimension(net.net)).c_str());
            std::printf("clustered_dimension  %s\n",
                        fmt_dimension(dqc::clustered_dimension(net.net)).c_str());
        }
        return 0;
    }

    std::string circuit_text;
    const dqc::Circuit circuit = load_circuit(circuit_path, &circuit_text);
    const dqc::DistributedPlan plan = dqc::compile(circuit, net.net, make_options(args));
    add_input(report, "circuit", circuit_path, dqc::digest_hex(circuit_text));
    report["options"] = ordered_json::parse(dqc::plan_to_json(plan)).at("options");
    report["passes"] = passes_json(plan);
    report["metrics"] = ordered_json::parse(dqc::metrics_to_json(plan.metrics));

    if (args.json) {
        std::printf("%s\n", report.dump(2).c_str());
    } else {
        print_metrics_human(plan.metrics);
    }
    return 0;
}

int run_topology(const std::string& network, bool json, const std::string& echo) {
    const NetworkInput net = load_network_input(network);
    if (json) {
        ordered_json report = base_report(echo, "topology", kDefaultSeed);
        add_input(report, "network", net.source, net.digest);
        report["network"] = ordered_json::parse(dqc::network_to_json(net.net));
        std::printf("%s\n", report.dump(2).c_str());
        return 0;
    }
    for (const dqc::DeviceSpec& d : net.net.devices) {
        std::printf("device %s: %u qubits", d.id.c_str(), d.coupling.n_qubits);
        std::printf(", comm {");
        bool first = true;
        for (dqc::QubitId q : d.comm_qubits) {
            std::printf(first ? "%u" : ", %u", q);
            first = false;
        }
        std::printf("}\n  edges:");
        for (const auto& [a, b] : d.coupling.edges) std::printf(" %u->%u", a, b);
        std::printf("\n");
    }
    for (const dqc::QuantumLink& l : net.net.links) {
        std::printf("link %s.%u -- %s.%u (epr_cost %.10g)\n", l.device_a.c_str(), l.qubit_a,
                    l.device_b.c_str(), l.qubit_b, l.epr_cost);
    }
    std::printf("totals: %zu devices, %zu data qubits, %zu links\n", net.net.devices.size(),
                net.net.total_data_qubits(), net.net.links.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distributed quantum circuit compiler and verifying simulator"};
    app.require_subcommand(1);
    const std::string echo = command_echo(argc, argv);

    CompileArgs cargs;

    CLI::App* compile = app.add_subcommand("compile", "compile a circuit onto a network");
    compile->add_option("circuit", cargs.circuit_path, "circuit file")->required();
    compile->add_option("--network", cargs.network, "network config path or preset name")
        ->required();
    compile->add_option("--routing", cargs.routing, "restore|permute")
        ->check(CLI::IsMember({"restore", "permute"}));
    compile->add_option("--strategy-threshold", cargs.threshold,
                        "burst length that switches telegate -> teledata");
    compile->add_option("--pin", cargs.pins, "<qubit>=<device>, repeatable");
    compile->add_option("--out", cargs.out, "write plan JSON and lowered circuit here");
    compile->add_option("--seed", cargs.seed, "verification probe seed");
    compile->add_flag("--json", cargs.json, "emit the JSON report");

    std::string plan_path;
    std::uint64_t vseed = kDefaultSeed;
    bool vjson = false;
    CLI::App* verify = app.add_subcommand("verify", "re-run the equivalence oracle on a plan");
    verify->add_option("plan", plan_path, "plan JSON file")->required();
    verify->add_option("--seed", vseed, "verification probe seed");
    verify->add_flag("--json", vjson, "emit the JSON report");

    std::string sim_circuit, sim_mode = "exhaustive";
    std::uint64_t sseed = kDefaultSeed;
    bool sjson = false;
    CLI::App* simulate = app.add_subcommand("simulate", "simulate a circuit from |0...0>");
    simulate->add_option("circuit", sim_circuit, "circuit file")->required();
    simulate->add_option("--mode", sim_mode, "sampled|exhaustive")
        ->check(CLI::IsMember({"sampled", "exhaustive"}));
    simulate->add_option("--seed", sseed, "sampling seed");
    simulate->add_flag("--json", sjson, "emit the JSON report");

    std::string met_circuit;
    CLI::App* metrics = app.add_subcommand("metrics", "print compile metrics");
    metrics->add_option("circuit", met_circuit, "circuit file (optional)");
    metrics->add_option("--network", cargs.network, "network config path or preset name")
        ->required();
    metrics->add_option("--routing", cargs.routing, "restore|permute")
        ->check(CLI::IsMember({"restore", "permute"}));
    metrics->add_option("--strategy-threshold", cargs.threshold,
                        "burst length that switches telegate -> teledata");
    metrics->add_option("--pin", cargs.pins, "<qubit>=<device>, repeatable");
    metrics->add_flag("--json", cargs.json, "emit the JSON report");

    std::string topo_network;
    bool tjson = false;
    CLI::App* topology = app.add_subcommand("topology", "print devices, couplings and links");
    topology->add_option("--network", topo_network, "network config path or preset name")
        ->required();
    topology->add_flag("--json", tjson, "emit the JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*compile) return run_compile(cargs, echo);
        if (*verify) return run_verify(plan_path, vseed, vjson, echo);
        if (*simulate) return run_simulate(sim_circuit, sim_mode, sseed, sjson, echo);
        if (*metrics) return run_metrics(met_circuit, cargs, echo);
        if (*topology) return run_topology(topo_network, tjson, echo);
    } catch (const dqc::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const dqc::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
