#include <algorithm>

#include "dqc/network.hpp"

namespace dqc {

// ibmqx3: 16 qubits, 20 directed edges, as published for IBM's ibmqx3
// backend. q1-q2 are joined by an edge; q1-q3 are not.
CouplingMap ibmqx3_coupling() {
    CouplingMap map;
    map.n_qubits = 16;
    map.edges = {{0, 1},  {1, 2},   {2, 3},   {3, 14},  {4, 3},   {4, 5},  {6, 7},
                 {6, 11}, {7, 10},  {8, 7},   {9, 8},   {9, 10},  {11, 10}, {12, 5},
                 {12, 11}, {12, 13}, {13, 4},  {13, 14}, {15, 0},  {15, 14}};
    return map;
}

// ibmqx2: 5 qubits, 6 directed edges (published backend coupling map).
CouplingMap ibmqx2_coupling() {
    CouplingMap map;
    map.n_qubits = 5;
    map.edges = {{0, 1}, {0, 2}, {1, 2}, {3, 2}, {3, 4}, {4, 2}};
    return map;
}

namespace {

NetworkTopology make_ibmqx3() {
    NetworkTopology net;
    net.devices.push_back({"ibmqx3", ibmqx3_coupling(), {}});
    net.check();
    return net;
}

// Two ibmqx2 devices joined by one quantum link. Local qubit 4 serves as
// the communication qubit of each device, leaving data qubits 0..3; on the
// ibmqx2 map it couples to data qubits 2 and 3 only.
NetworkTopology make_2x_ibmqx2_linked() {
    NetworkTopology net;
    net.devices.push_back({"A", ibmqx2_coupling(), {4}});
    net.devices.push_back({"B", ibmqx2_coupling(), {4}});
    net.links.push_back({"A", 4, "B", 4, 1.0});
    net.check();
    return net;
}

}  // namespace

NetworkTopology preset_network(const std::string& name) {
    if (name == "ibmqx3") return make_ibmqx3();
    if (name == "2x-ibmqx2-linked") return make_2x_ibmqx2_linked();
    throw ValidationError("unknown network preset '" + name + "'");
}

bool is_preset_name(const std::string& name) {
    const std::vector<std::string> names = preset_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<std::string> preset_names() { return {"2x-ibmqx2-linked", "ibmqx3"}; }

}  // namespace dqc
