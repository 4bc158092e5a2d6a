#include "dqc/partition.hpp"

#include <algorithm>
#include <limits>
#include <optional>

namespace dqc {

void Assignment::set(QubitId logical, Slot slot) {
    for (const auto& [l, s] : slots_) {
        if (l != logical && s == slot) {
            throw ValidationError("data qubit " + std::to_string(slot.local) + " on device '" +
                                  slot.device + "' is already taken");
        }
    }
    slots_[logical] = std::move(slot);
}

const Assignment::Slot& Assignment::slot(QubitId logical) const {
    auto it = slots_.find(logical);
    if (it == slots_.end()) {
        throw ValidationError("logical qubit " + std::to_string(logical) + " is unassigned");
    }
    return it->second;
}

std::size_t Assignment::usage(const std::string& device) const {
    std::size_t n = 0;
    for (const auto& [l, s] : slots_) {
        if (s.device == device) ++n;
    }
    return n;
}

std::uint64_t cut_weight(const InteractionGraph& graph,
                         const std::map<QubitId, std::string>& device_of) {
    std::uint64_t cut = 0;
    for (const auto& [edge, w] : graph.edges) {
        auto a = device_of.find(edge.first);
        auto b = device_of.find(edge.second);
        if (a != device_of.end() && b != device_of.end() && a->second != b->second) {
            cut += w;
        }
    }
    return cut;
}

namespace {

// Connection weight of q into the set of qubits currently on `device`.
std::uint64_t attraction(const InteractionGraph& graph, QubitId q,
                         const std::map<QubitId, std::string>& device_of,
                         const std::string& device) {
    std::uint64_t sum = 0;
    for (const auto& [edge, w] : graph.edges) {
        QubitId other;
        if (edge.first == q) {
            other = edge.second;
        } else if (edge.second == q) {
            other = edge.first;
        } else {
            continue;
        }
        auto it = device_of.find(other);
        if (it != device_of.end() && it->second == device) sum += w;
    }
    return sum;
}

}  // namespace

std::map<QubitId, std::string> assign_devices(const InteractionGraph& graph,
                                              const NetworkTopology& network,
                                              const std::map<QubitId, std::string>& pins) {
    std::map<std::string, std::size_t> capacity;
    for (const DeviceSpec& d : network.devices) capacity[d.id] = d.n_data_qubits();

    if (graph.n_qubits > network.total_data_qubits()) {
        throw CapacityError("not enough data qubits: circuit needs " +
                            std::to_string(graph.n_qubits) + ", network provides " +
                            std::to_string(network.total_data_qubits()));
    }

    std::map<QubitId, std::string> device_of;
    for (const auto& [q, dev] : pins) {
        if (q >= graph.n_qubits) {
            throw ValidationError("pinned qubit " + std::to_string(q) + " outside the circuit");
        }
        network.device_index(dev);  // throws on unknown device
        if (capacity[dev] == 0) {
            throw CapacityError("not enough data qubits on device '" + dev +
                                "' for its pinned qubits");
        }
        --capacity[dev];
        device_of[q] = dev;
    }

    // Greedy growth, devices in listed order. Each device seeds with the
    // heaviest unassigned vertex, then absorbs the vertex most attracted to
    // it until full; attraction ties go to the heavier vertex, then the
    // lower index.
    std::size_t unassigned = graph.n_qubits - device_of.size();
    for (const DeviceSpec& d : network.devices) {
        while (capacity[d.id] > 0 && unassigned > 0) {
            QubitId best = 0;
            bool found = false;
            std::uint64_t best_attr = 0, best_deg = 0;
            for (QubitId q = 0; q < graph.n_qubits; ++q) {
                if (device_of.count(q)) continue;
                const std::uint64_t attr = attraction(graph, q, device_of, d.id);
                const std::uint64_t deg = graph.weighted_degree(q);
                if (!found || attr > best_attr || (attr == best_attr && deg > best_deg)) {
                    best = q;
                    best_attr = attr;
                    best_deg = deg;
                    found = true;
                }
            }
            device_of[best] = d.id;
            --capacity[d.id];
            --unassigned;
        }
    }

    // Pairwise exchange plus relocation to free slots, best improvement
    // first, until the cut stops shrinking.
    std::uint64_t current = cut_weight(graph, device_of);
    bool improved = true;
    while (improved) {
        improved = false;
        std::uint64_t best_cut = current;
        QubitId best_q = 0;
        std::string best_dev;
        std::optional<QubitId> best_partner;

        for (QubitId q = 0; q < graph.n_qubits; ++q) {
            if (pins.count(q)) continue;
            const std::string home = device_of.at(q);
            for (const DeviceSpec& d : network.devices) {
                if (d.id == home) continue;
                // Relocate q into a free slot.
                if (capacity[d.id] > 0) {
                    device_of[q] = d.id;
                    const std::uint64_t cut = cut_weight(graph, device_of);
                    device_of[q] = home;
                    if (cut < best_cut) {
                        best_cut = cut;
                        best_q = q;
                        best_dev = d.id;
                        best_partner.reset();
                    }
                }
                // Exchange q with a vertex living on d.
                for (QubitId p = 0; p < graph.n_qubits; ++p) {
                    if (p == q || pins.count(p) || !device_of.count(p) ||
                        device_of.at(p) != d.id) {
                        continue;
                    }
                    device_of[q] = d.id;
                    device_of[p] = home;
                    const std::uint64_t cut = cut_weight(graph, device_of);
                    device_of[q] = home;
                    device_of[p] = d.id;
                    if (cut < best_cut) {
                        best_cut = cut;
                        best_q = q;
                        best_dev = d.id;
                        best_partner = p;
                    }
                }
            }
        }
        if (best_cut < current) {
            const std::string home = device_of.at(best_q);
            if (best_partner) {
                device_of[*best_partner] = home;
            } else {
                --capacity[best_dev];
                ++capacity[home];
            }
            device_of[best_q] = best_dev;
            current = best_cut;
            improved = true;
        }
    }
    return device_of;
}

Assignment partition(const InteractionGraph& graph, const NetworkTopology& network,
                     const std::map<QubitId, std::string>& pins) {
    const std::map<QubitId, std::string> device_of = assign_devices(graph, network, pins);

    Assignment assignment;
    for (const DeviceSpec& d : network.devices) {
        std::vector<QubitId> locals;
        for (const auto& [q, dev] : device_of) {
            if (dev == d.id) locals.push_back(q);
        }
        if (locals.empty()) continue;

        // Remote-heavy logicals first.
        std::vector<std::pair<std::uint64_t, QubitId>> order;
        for (QubitId q : locals) {
            std::uint64_t remote = 0;
            for (const auto& [edge, w] : graph.edges) {
                QubitId other;
                if (edge.first == q) {
                    other = edge.second;
                } else if (edge.second == q) {
                    other = edge.first;
                } else {
                    continue;
                }
                if (device_of.at(other) != d.id) remote += w;
            }
            order.emplace_back(remote, q);
        }
        std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first > b.first : a.second < b.second;
        });

        // Data qubits closest to a comm qubit first.
        std::vector<std::pair<std::uint32_t, QubitId>> slots;
        for (QubitId p : d.data_qubits()) {
            std::uint32_t dist = 0;
            if (!d.comm_qubits.empty()) {
                dist = std::numeric_limits<std::uint32_t>::max();
                for (QubitId c : d.comm_qubits) {
                    const auto path = shortest_path(d.coupling, p, c);
                    dist = std::min(dist, static_cast<std::uint32_t>(path.size() - 1));
                }
            }
            slots.emplace_back(dist, p);
        }
        std::sort(slots.begin(), slots.end());

        for (std::size_t i = 0; i < order.size(); ++i) {
            assignment.set(order[i].second, {d.id, slots[i].second});
        }
    }
    return assignment;
}

}  // namespace dqc
