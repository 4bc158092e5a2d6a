#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "dqc/network.hpp"

using namespace dqc;

namespace {

// Exhaustive simple-path enumeration; the reference for shortest_path and
// all_shortest_paths on small graphs.
void enumerate_paths(const CouplingMap& g, QubitId at, QubitId goal, std::vector<QubitId>& cur,
                     std::vector<bool>& used, std::vector<std::vector<QubitId>>& out) {
    if (at == goal) {
        out.push_back(cur);
        return;
    }
    for (QubitId nb : g.neighbors(at)) {
        if (used[nb]) continue;
        used[nb] = true;
        cur.push_back(nb);
        enumerate_paths(g, nb, goal, cur, used, out);
        cur.pop_back();
        used[nb] = false;
    }
}

std::vector<std::vector<QubitId>> reference_shortest_paths(const CouplingMap& g, QubitId a,
                                                           QubitId b) {
    std::vector<QubitId> cur{a};
    std::vector<bool> used(g.n_qubits, false);
    used[a] = true;
    std::vector<std::vector<QubitId>> all;
    enumerate_paths(g, a, b, cur, used, all);
    if (all.empty()) return {};
    const std::size_t best =
        std::min_element(all.begin(), all.end(), [](const auto& x, const auto& y) {
            return x.size() < y.size();
        })->size();
    std::vector<std::vector<QubitId>> shortest;
    for (auto& p : all) {
        if (p.size() == best) shortest.push_back(std::move(p));
    }
    std::sort(shortest.begin(), shortest.end());
    return shortest;
}

CouplingMap random_connected_map(std::mt19937_64& rng, QubitId n) {
    CouplingMap g;
    g.n_qubits = n;
    for (QubitId v = 1; v < n; ++v) {
        g.edges.insert({static_cast<QubitId>(rng() % v), v});  // spanning tree
    }
    const std::size_t extra = rng() % (n + 1);
    for (std::size_t i = 0; i < extra; ++i) {
        const QubitId a = static_cast<QubitId>(rng() % n);
        const QubitId b = static_cast<QubitId>(rng() % n);
        if (a != b) g.edges.insert({a, b});
    }
    return g;
}

NetworkTopology line_network() {
    NetworkTopology net;
    for (const char* id : {"A", "B", "C"}) {
        DeviceSpec d;
        d.id = id;
        d.coupling.n_qubits = 3;
        d.coupling.edges = {{0, 1}, {1, 2}};
        if (id[0] == 'A') d.comm_qubits = {2};
        if (id[0] == 'B') d.comm_qubits = {0, 2};
        if (id[0] == 'C') d.comm_qubits = {0};
        net.devices.push_back(d);
    }
    net.links.push_back({"A", 2, "B", 0, 1.0});
    net.links.push_back({"B", 2, "C", 0, 1.0});
    return net;
}

}  // namespace

TEST_CASE("coupling map structural checks") {
    CouplingMap empty;
    CHECK_THROWS_AS(empty.check(), ValidationError);

    CouplingMap self;
    self.n_qubits = 2;
    self.edges = {{0, 0}, {0, 1}};
    CHECK_THROWS_AS(self.check(), ValidationError);

    CouplingMap split;
    split.n_qubits = 4;
    split.edges = {{0, 1}, {2, 3}};
    CHECK_THROWS_AS(split.check(), ValidationError);

    CouplingMap line;
    line.n_qubits = 3;
    line.edges = {{0, 1}, {2, 1}};
    CHECK_NOTHROW(line.check());
}

TEST_CASE("adjacency kinds") {
    CouplingMap g;
    g.n_qubits = 3;
    g.edges = {{0, 1}, {2, 1}};
    CHECK(adjacency_kind(g, 0, 1) == AdjacencyKind::Direct);
    CHECK(adjacency_kind(g, 1, 0) == AdjacencyKind::Reversed);
    CHECK(adjacency_kind(g, 0, 2) == AdjacencyKind::NonAdjacent);
}

TEST_CASE("lexicographic shortest path on the 4-cycle") {
    CouplingMap g;
    g.n_qubits = 4;
    g.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    CHECK(shortest_path(g, 0, 2) == std::vector<QubitId>{0, 1, 2});
    CHECK(shortest_path(g, 2, 0) == std::vector<QubitId>{2, 1, 0});
    CHECK(shortest_path(g, 1, 1) == std::vector<QubitId>{1});
    const auto all = all_shortest_paths(g, 0, 2);
    REQUIRE(all.size() == 2);
    CHECK(all[0] == std::vector<QubitId>{0, 1, 2});
    CHECK(all[1] == std::vector<QubitId>{0, 3, 2});
}

TEST_CASE("path search matches exhaustive enumeration on random graphs") {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 40; ++trial) {
        const QubitId n = 4 + static_cast<QubitId>(rng() % 4);  // up to 7 nodes
        const CouplingMap g = random_connected_map(rng, n);
        for (QubitId a = 0; a < n; ++a) {
            for (QubitId b = 0; b < n; ++b) {
                const auto expect = reference_shortest_paths(g, a, b);
                const auto got = all_shortest_paths(g, a, b);
                REQUIRE(got == expect);
                CHECK(shortest_path(g, a, b) == expect.front());
            }
        }
    }
}

TEST_CASE("presets match their published coupling maps") {
    const CouplingMap x3 = ibmqx3_coupling();
    CHECK(x3.n_qubits == 16);
    CHECK(x3.edges.size() == 20);
    CHECK(x3.has_edge(1, 2));
    CHECK_FALSE(x3.has_edge(2, 1));
    CHECK(adjacency_kind(x3, 1, 3) == AdjacencyKind::NonAdjacent);
    CHECK_NOTHROW(x3.check());

    const CouplingMap x2 = ibmqx2_coupling();
    CHECK(x2.n_qubits == 5);
    CHECK(x2.edges.size() == 6);
    CHECK_NOTHROW(x2.check());

    const NetworkTopology linked = preset_network("2x-ibmqx2-linked");
    CHECK(linked.devices.size() == 2);
    CHECK(linked.total_data_qubits() == 8);
    REQUIRE(linked.links.size() == 1);
    CHECK(linked.links[0].device_a == "A");
    CHECK(linked.links[0].qubit_a == 4);
    CHECK(linked.devices[0].is_comm(4));
    CHECK_FALSE(linked.devices[0].is_comm(0));
    CHECK_NOTHROW(linked.check());

    CHECK(is_preset_name("2x-ibmqx2-linked"));
    CHECK(is_preset_name("ibmqx3"));
    CHECK_FALSE(is_preset_name("no-such-preset"));
    CHECK_THROWS_AS(preset_network("no-such-preset"), ValidationError);
}

TEST_CASE("network config parsing") {
    const char* good = R"({
        "devices": [
            {"id": "A", "n_qubits": 3, "edges": [[0,1],[1,2]], "comm_qubits": [2]},
            {"id": "B", "n_qubits": 2, "edges": [[0,1]], "comm_qubits": [1]}
        ],
        "links": [{"a": ["A", 2], "b": ["B", 1], "epr_cost": 2.5}]
    })";
    const NetworkTopology net = parse_network(good);
    CHECK(net.devices.size() == 2);
    CHECK(net.device("A").data_qubits() == std::vector<QubitId>{0, 1});
    CHECK(net.links[0].epr_cost == 2.5);
    CHECK(net.link_between("B", "A").device_a == "A");

    CHECK_THROWS_AS(parse_network("{not json"), ParseError);
    CHECK_THROWS_AS(parse_network(R"({"devices": 3})"), ParseError);
    // link endpoint is not a comm qubit
    CHECK_THROWS_AS(parse_network(R"({
        "devices": [
            {"id": "A", "n_qubits": 2, "edges": [[0,1]], "comm_qubits": [1]},
            {"id": "B", "n_qubits": 2, "edges": [[0,1]], "comm_qubits": [1]}
        ],
        "links": [{"a": ["A", 0], "b": ["B", 1]}]
    })"),
                    ValidationError);
    // two devices, no link: the link graph is disconnected
    CHECK_THROWS_AS(parse_network(R"({
        "devices": [
            {"id": "A", "n_qubits": 2, "edges": [[0,1]], "comm_qubits": [1]},
            {"id": "B", "n_qubits": 2, "edges": [[0,1]], "comm_qubits": [1]}
        ]
    })"),
                    ValidationError);
    // a device with only comm qubits cannot compute
    CHECK_THROWS_AS(parse_network(R"({
        "devices": [{"id": "A", "n_qubits": 1, "edges": [], "comm_qubits": [0]}]
    })"),
                    ValidationError);
}

TEST_CASE("device paths over the link graph") {
    const NetworkTopology net = line_network();
    CHECK(device_path(net, "A", "C") == std::vector<std::string>{"A", "B", "C"});
    CHECK(device_path(net, "C", "A") == std::vector<std::string>{"C", "B", "A"});
    CHECK(device_path(net, "A", "B") == std::vector<std::string>{"A", "B"});
    CHECK(device_path(net, "B", "B") == std::vector<std::string>{"B"});
    CHECK_THROWS_AS(device_path(net, "A", "Z"), ValidationError);
}

TEST_CASE("global index round-trips device-local coordinates") {
    const NetworkTopology net = line_network();
    const GlobalIndex gi(net);
    CHECK(gi.total_qubits() == 9);
    CHECK(gi.global("A", 0) == 0);
    CHECK(gi.global("B", 0) == 3);
    CHECK(gi.global("C", 2) == 8);
    for (QubitId g = 0; g < gi.total_qubits(); ++g) {
        const auto [dev, local] = gi.to_local(g);
        CHECK(gi.global(dev, local) == g);
        CHECK(gi.device_of(g) == dev);
    }
    CHECK_THROWS_AS(gi.global("Z", 0), ValidationError);
    CHECK_THROWS_AS(gi.to_local(9), ValidationError);
}
