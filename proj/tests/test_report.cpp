#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "dqc/report.hpp"

using namespace dqc;

namespace {

DistributedPlan sample_plan() {
    Circuit c(5);
    c.append(Gate::h(0));
    c.append(Gate::cnot(0, 4));
    CompileOptions opt;
    opt.pins = {{0, "A"}, {4, "B"}};
    opt.routing = RoutingMode::Permute;
    opt.strategy_threshold = 2;
    return compile(c, preset_network("2x-ibmqx2-linked"), opt);
}

}  // namespace

TEST_CASE("fnv1a64 matches the published test vectors") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
    CHECK(digest_hex("") == "cbf29ce484222325");
    CHECK(digest_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("network JSON reparses to the same topology") {
    const NetworkTopology net = preset_network("2x-ibmqx2-linked");
    const NetworkTopology back = parse_network(network_to_json(net));
    REQUIRE(back.devices.size() == net.devices.size());
    for (std::size_t i = 0; i < net.devices.size(); ++i) {
        CHECK(back.devices[i].id == net.devices[i].id);
        CHECK(back.devices[i].coupling.n_qubits == net.devices[i].coupling.n_qubits);
        CHECK(back.devices[i].coupling.edges == net.devices[i].coupling.edges);
        CHECK(back.devices[i].comm_qubits == net.devices[i].comm_qubits);
    }
    REQUIRE(back.links.size() == net.links.size());
    CHECK(back.links[0].device_a == net.links[0].device_a);
    CHECK(back.links[0].qubit_a == net.links[0].qubit_a);
    CHECK(back.links[0].device_b == net.links[0].device_b);
    CHECK(back.links[0].qubit_b == net.links[0].qubit_b);
    CHECK(back.links[0].epr_cost == net.links[0].epr_cost);
    // a second serialization is byte-identical
    CHECK(network_to_json(net) == network_to_json(back));
}

TEST_CASE("plan JSON round-trips byte-identically") {
    const DistributedPlan plan = sample_plan();
    const std::string text = plan_to_json(plan);
    const DistributedPlan back = plan_from_json(text);
    CHECK(plan_to_json(back) == text);

    // the reloaded plan is operationally the same plan
    CHECK(back.source == plan.source);
    CHECK(back.lowered == plan.lowered);
    CHECK(back.final_locations == plan.final_locations);
    CHECK(back.pre_routing_gate_count == plan.pre_routing_gate_count);
    CHECK(back.inserted_swaps == plan.inserted_swaps);
    CHECK(back.options.routing == plan.options.routing);
    CHECK(back.options.strategy_threshold == plan.options.strategy_threshold);
    CHECK(back.options.pins == plan.options.pins);
    REQUIRE(back.remote_ops.size() == plan.remote_ops.size());
    for (std::size_t i = 0; i < plan.remote_ops.size(); ++i) {
        CHECK(back.remote_ops[i].kind == plan.remote_ops[i].kind);
        CHECK(back.remote_ops[i].link_path == plan.remote_ops[i].link_path);
    }
    for (const auto& [q, slot] : plan.assignment.slots()) {
        CHECK(back.assignment.slot(q) == slot);
    }

    const Metrics m = compute_metrics(back);
    CHECK(m.remote_op_count == plan.metrics.remote_op_count);
    CHECK(m.total_cost == plan.metrics.total_cost);
    CHECK(m.lowered_depth == plan.metrics.lowered_depth);

    // verification works from the deserialized plan alone
    CHECK(verify(back).passed);
}

TEST_CASE("metrics and verification serializers expose every field") {
    const DistributedPlan plan = sample_plan();
    const std::string mj = metrics_to_json(plan.metrics);
    for (const char* key :
         {"remote_op_count", "epr_pairs_generated", "epr_pairs_consumed",
          "lowered_gate_count", "lowered_depth", "inserted_swaps", "total_cost",
          "isolated_dimension", "clustered_dimension"}) {
        CHECK(mj.find(key) != std::string::npos);
    }
    const std::string vj = verification_to_json(verify(plan));
    for (const char* key : {"passed", "ran", "max_infidelity", "probes_checked",
                            "branches_checked", "detail"}) {
        CHECK(vj.find(key) != std::string::npos);
    }
}

TEST_CASE("save and load through a file") {
    const DistributedPlan plan = sample_plan();
    const std::string path = "/tmp/dqc_test_plan.json";
    save_plan(plan, path);
    const DistributedPlan back = load_plan(path);
    CHECK(plan_to_json(back) == plan_to_json(plan));
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_plan("/tmp/dqc_no_such_plan.json"), ParseError);
}

TEST_CASE("malformed plan text is rejected") {
    CHECK_THROWS_AS(plan_from_json("not json at all"), ParseError);
    CHECK_THROWS_AS(plan_from_json("{}"), ParseError);

    // a wrong schema version names the mismatch
    const DistributedPlan plan = sample_plan();
    std::string text = plan_to_json(plan);
    const std::string needle = "\"schema_version\": 1";
    const auto pos = text.find(needle);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, needle.size(), "\"schema_version\": 99");
    CHECK_THROWS_AS(plan_from_json(text), ParseError);
}
