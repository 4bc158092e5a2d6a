#include "dqc/network.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"

namespace dqc {

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

// Hop distances from `start` on the undirected view.
std::vector<std::uint32_t> bfs_distances(const CouplingMap& coupling, QubitId start) {
    std::vector<std::uint32_t> dist(coupling.n_qubits, kUnreached);
    dist[start] = 0;
    std::deque<QubitId> queue{start};
    while (!queue.empty()) {
        QubitId u = queue.front();
        queue.pop_front();
        for (QubitId v : coupling.neighbors(u)) {
            if (dist[v] == kUnreached) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

void check_endpoint(const CouplingMap& coupling, QubitId q) {
    if (q >= coupling.n_qubits) {
        throw ValidationError("qubit " + std::to_string(q) + " outside coupling map of size " +
                              std::to_string(coupling.n_qubits));
    }
}

}  // namespace

const char* adjacency_kind_name(AdjacencyKind kind) {
    switch (kind) {
        case AdjacencyKind::Direct: return "direct";
        case AdjacencyKind::Reversed: return "reversed";
        case AdjacencyKind::NonAdjacent: return "non_adjacent";
    }
    return "?";
}

std::vector<QubitId> CouplingMap::neighbors(QubitId q) const {
    std::set<QubitId> out;
    for (const auto& [c, t] : edges) {
        if (c == q) out.insert(t);
        if (t == q) out.insert(c);
    }
    return {out.begin(), out.end()};
}

void CouplingMap::check() const {
    if (n_qubits == 0) throw ValidationError("coupling map has no qubits");
    for (const auto& [c, t] : edges) {
        check_endpoint(*this, c);
        check_endpoint(*this, t);
        if (c == t) throw ValidationError("coupling map has self-loop at qubit " + std::to_string(c));
    }
    const std::vector<std::uint32_t> dist = bfs_distances(*this, 0);
    for (QubitId q = 0; q < n_qubits; ++q) {
        if (dist[q] == kUnreached) {
            throw ValidationError("coupling map is disconnected (qubit " + std::to_string(q) +
                                  " unreachable from qubit 0)");
        }
    }
}

AdjacencyKind adjacency_kind(const CouplingMap& coupling, QubitId control, QubitId target) {
    check_endpoint(coupling, control);
    check_endpoint(coupling, target);
    if (control == target) throw ValidationError("adjacency_kind requires distinct qubits");
    if (coupling.has_edge(control, target)) return AdjacencyKind::Direct;
    if (coupling.has_edge(target, control)) return AdjacencyKind::Reversed;
    return AdjacencyKind::NonAdjacent;
}

std::vector<QubitId> shortest_path(const CouplingMap& coupling, QubitId a, QubitId b) {
    check_endpoint(coupling, a);
    check_endpoint(coupling, b);
    if (a == b) return {a};

    // Walking from a while always taking the smallest-index neighbour one
    // hop closer to b yields the lexicographically smallest min-hop path.
    const std::vector<std::uint32_t> dist_to_b = bfs_distances(coupling, b);
    if (dist_to_b[a] == kUnreached) {
        throw ValidationError("no path between qubits " + std::to_string(a) + " and " +
                              std::to_string(b));
    }
    std::vector<QubitId> path{a};
    QubitId cur = a;
    while (cur != b) {
        for (QubitId v : coupling.neighbors(cur)) {
            if (dist_to_b[v] + 1 == dist_to_b[cur]) {
                cur = v;
                break;
            }
        }
        path.push_back(cur);
    }
    return path;
}

std::vector<std::vector<QubitId>> all_shortest_paths(const CouplingMap& coupling, QubitId a,
                                                     QubitId b) {
    check_endpoint(coupling, a);
    check_endpoint(coupling, b);
    if (a == b) return {{a}};

    const std::vector<std::uint32_t> dist_to_b = bfs_distances(coupling, b);
    if (dist_to_b[a] == kUnreached) {
        throw ValidationError("no path between qubits " + std::to_string(a) + " and " +
                              std::to_string(b));
    }
    std::vector<std::vector<QubitId>> out;
    std::vector<QubitId> path{a};
    // Neighbour lists are ascending, so DFS emits paths in sorted order.
    auto dfs = [&](auto&& self, QubitId cur) -> void {
        if (cur == b) {
            out.push_back(path);
            return;
        }
        for (QubitId v : coupling.neighbors(cur)) {
            if (dist_to_b[v] + 1 == dist_to_b[cur]) {
                path.push_back(v);
                self(self, v);
                path.pop_back();
            }
        }
    };
    dfs(dfs, a);
    return out;
}

std::vector<QubitId> DeviceSpec::data_qubits() const {
    std::vector<QubitId> out;
    for (QubitId q = 0; q < coupling.n_qubits; ++q) {
        if (!is_comm(q)) out.push_back(q);
    }
    return out;
}

void DeviceSpec::check() const {
    if (id.empty()) throw ValidationError("device id is empty");
    coupling.check();
    for (QubitId q : comm_qubits) {
        if (q >= coupling.n_qubits) {
            throw ValidationError("device '" + id + "': comm qubit " + std::to_string(q) +
                                  " outside coupling map");
        }
    }
    if (comm_qubits.size() >= coupling.n_qubits) {
        throw ValidationError("device '" + id + "' has no data qubits");
    }
}

bool NetworkTopology::has_device(const std::string& id) const {
    for (const DeviceSpec& d : devices) {
        if (d.id == id) return true;
    }
    return false;
}

const DeviceSpec& NetworkTopology::device(const std::string& id) const {
    return devices[device_index(id)];
}

std::size_t NetworkTopology::device_index(const std::string& id) const {
    for (std::size_t i = 0; i < devices.size(); ++i) {
        if (devices[i].id == id) return i;
    }
    throw ValidationError("unknown device '" + id + "'");
}

std::size_t NetworkTopology::total_data_qubits() const {
    std::size_t sum = 0;
    for (const DeviceSpec& d : devices) sum += d.n_data_qubits();
    return sum;
}

const QuantumLink& NetworkTopology::link_between(const std::string& a,
                                                 const std::string& b) const {
    return links[link_index_between(a, b)];
}

std::size_t NetworkTopology::link_index_between(const std::string& a,
                                                const std::string& b) const {
    for (std::size_t i = 0; i < links.size(); ++i) {
        if (links[i].joins(a, b)) return i;
    }
    throw ValidationError("no link between devices '" + a + "' and '" + b + "'");
}

void NetworkTopology::check() const {
    if (devices.empty()) throw ValidationError("network has no devices");
    std::set<std::string> ids;
    for (const DeviceSpec& d : devices) {
        d.check();
        if (!ids.insert(d.id).second) {
            throw ValidationError("duplicate device id '" + d.id + "'");
        }
    }
    for (const QuantumLink& link : links) {
        if (link.device_a == link.device_b) {
            throw ValidationError("link joins device '" + link.device_a + "' to itself");
        }
        for (const auto& [dev_id, q] : {std::pair{link.device_a, link.qubit_a},
                                        std::pair{link.device_b, link.qubit_b}}) {
            const DeviceSpec& d = device(dev_id);  // throws on unknown id
            if (q >= d.coupling.n_qubits) {
                throw ValidationError("link endpoint qubit " + std::to_string(q) +
                                      " outside device '" + dev_id + "'");
            }
            if (!d.is_comm(q)) {
                throw ValidationError("link endpoint (" + dev_id + ", " + std::to_string(q) +
                                      ") is not a communication qubit");
            }
        }
        if (link.epr_cost < 0.0) throw ValidationError("negative epr_cost");
    }
    // Link-graph connectivity over devices.
    std::set<std::string> seen{devices.front().id};
    std::deque<std::string> queue{devices.front().id};
    while (!queue.empty()) {
        std::string u = queue.front();
        queue.pop_front();
        for (const QuantumLink& link : links) {
            if (link.device_a != u && link.device_b != u) continue;
            const std::string& v = link.device_a == u ? link.device_b : link.device_a;
            if (seen.insert(v).second) queue.push_back(v);
        }
    }
    for (const DeviceSpec& d : devices) {
        if (!seen.count(d.id)) {
            throw ValidationError("device '" + d.id + "' unreachable over quantum links");
        }
    }
}

std::vector<std::string> device_path(const NetworkTopology& network, const std::string& from,
                                     const std::string& to) {
    network.device_index(from);
    network.device_index(to);
    if (from == to) return {from};

    std::map<std::string, std::vector<std::string>> adjacency;
    for (const QuantumLink& link : network.links) {
        adjacency[link.device_a].push_back(link.device_b);
        adjacency[link.device_b].push_back(link.device_a);
    }
    for (auto& [id, neigh] : adjacency) {
        std::sort(neigh.begin(), neigh.end());
        neigh.erase(std::unique(neigh.begin(), neigh.end()), neigh.end());
    }

    std::map<std::string, std::uint32_t> dist_to;
    dist_to[to] = 0;
    std::deque<std::string> queue{to};
    while (!queue.empty()) {
        std::string u = queue.front();
        queue.pop_front();
        for (const std::string& v : adjacency[u]) {
            if (!dist_to.count(v)) {
                dist_to[v] = dist_to[u] + 1;
                queue.push_back(v);
            }
        }
    }
    if (!dist_to.count(from)) {
        throw ValidationError("devices '" + from + "' and '" + to + "' are not link-connected");
    }
    std::vector<std::string> path{from};
    std::string cur = from;
    while (cur != to) {
        for (const std::string& v : adjacency[cur]) {
            if (dist_to.count(v) && dist_to[v] + 1 == dist_to[cur]) {
                cur = v;
                break;
            }
        }
        path.push_back(cur);
    }
    return path;
}

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& where, const std::string& what) {
    throw ParseError("network config: " + where + ": " + what);
}

std::uint32_t get_uint(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) field_error(where, "missing field '" + key + "'");
    const json& v = obj.at(key);
    if (!v.is_number_unsigned()) field_error(where, "field '" + key + "' must be a non-negative integer");
    return v.get<std::uint32_t>();
}

std::string get_string(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) field_error(where, "missing field '" + key + "'");
    const json& v = obj.at(key);
    if (!v.is_string()) field_error(where, "field '" + key + "' must be a string");
    return v.get<std::string>();
}

std::pair<std::string, QubitId> get_endpoint(const json& obj, const std::string& key,
                                             const std::string& where) {
    if (!obj.contains(key)) field_error(where, "missing field '" + key + "'");
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_string() || !v[1].is_number_unsigned()) {
        field_error(where, "field '" + key + "' must be [device_id, qubit]");
    }
    return {v[0].get<std::string>(), v[1].get<QubitId>()};
}

}  // namespace

NetworkTopology parse_network(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("network config: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("devices") || !doc.at("devices").is_array()) {
        field_error("top level", "expected object with a 'devices' array");
    }

    NetworkTopology net;
    for (const json& jd : doc.at("devices")) {
        const std::string where = "device " + std::to_string(net.devices.size());
        if (!jd.is_object()) field_error(where, "expected object");
        DeviceSpec dev;
        dev.id = get_string(jd, "id", where);
        dev.coupling.n_qubits = get_uint(jd, "n_qubits", where);
        if (!jd.contains("edges") || !jd.at("edges").is_array()) {
            field_error(where, "missing 'edges' array");
        }
        for (const json& je : jd.at("edges")) {
            if (!je.is_array() || je.size() != 2 || !je[0].is_number_unsigned() ||
                !je[1].is_number_unsigned()) {
                field_error(where, "edges must be [control, target] pairs");
            }
            dev.coupling.edges.insert({je[0].get<QubitId>(), je[1].get<QubitId>()});
        }
        if (jd.contains("comm_qubits")) {
            if (!jd.at("comm_qubits").is_array()) field_error(where, "'comm_qubits' must be an array");
            for (const json& jq : jd.at("comm_qubits")) {
                if (!jq.is_number_unsigned()) field_error(where, "comm_qubits entries must be integers");
                dev.comm_qubits.insert(jq.get<QubitId>());
            }
        }
        net.devices.push_back(std::move(dev));
    }
    if (doc.contains("links")) {
        if (!doc.at("links").is_array()) field_error("top level", "'links' must be an array");
        for (const json& jl : doc.at("links")) {
            const std::string where = "link " + std::to_string(net.links.size());
            if (!jl.is_object()) field_error(where, "expected object");
            QuantumLink link;
            std::tie(link.device_a, link.qubit_a) = get_endpoint(jl, "a", where);
            std::tie(link.device_b, link.qubit_b) = get_endpoint(jl, "b", where);
            if (jl.contains("epr_cost")) {
                if (!jl.at("epr_cost").is_number()) field_error(where, "'epr_cost' must be a number");
                link.epr_cost = jl.at("epr_cost").get<double>();
            }
            net.links.push_back(std::move(link));
        }
    }
    net.check();
    return net;
}

GlobalIndex::GlobalIndex(const NetworkTopology& network) : total_(0) {
    for (const DeviceSpec& d : network.devices) {
        offsets_.emplace_back(d.id, total_);
        total_ += d.coupling.n_qubits;
    }
}

QubitId GlobalIndex::global(const std::string& device_id, QubitId local) const {
    for (std::size_t i = 0; i < offsets_.size(); ++i) {
        if (offsets_[i].first != device_id) continue;
        const std::uint32_t end = i + 1 < offsets_.size() ? offsets_[i + 1].second : total_;
        if (offsets_[i].second + local >= end) {
            throw ValidationError("local qubit " + std::to_string(local) + " outside device '" +
                                  device_id + "'");
        }
        return offsets_[i].second + local;
    }
    throw ValidationError("unknown device '" + device_id + "'");
}

std::pair<std::string, QubitId> GlobalIndex::to_local(QubitId global) const {
    if (global >= total_) throw ValidationError("global qubit index out of range");
    std::size_t i = offsets_.size() - 1;
    while (offsets_[i].second > global) --i;
    return {offsets_[i].first, global - offsets_[i].second};
}

const std::string& GlobalIndex::device_of(QubitId global) const {
    if (global >= total_) throw ValidationError("global qubit index out of range");
    std::size_t i = offsets_.size() - 1;
    while (offsets_[i].second > global) --i;
    return offsets_[i].first;
}

NetworkTopology load_network(const std::string& path_or_preset) {
    if (is_preset_name(path_or_preset)) return preset_network(path_or_preset);
    std::ifstream in(path_or_preset);
    if (!in) throw ParseError("cannot open network config '" + path_or_preset + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_network(buf.str());
}

}  // namespace dqc
