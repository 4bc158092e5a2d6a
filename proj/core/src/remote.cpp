#include "dqc/remote.hpp"

#include <algorithm>

namespace dqc {

EprLedger::EprLedger(const NetworkTopology& network)
    : network_(&network), per_link_(network.links.size()) {}

bool EprLedger::is_free(const std::string& device, QubitId comm_qubit) const {
    return occupancy_.find({device, comm_qubit}) == occupancy_.end();
}

std::optional<std::uint64_t> EprLedger::holder(const std::string& device,
                                               QubitId comm_qubit) const {
    auto it = occupancy_.find({device, comm_qubit});
    if (it == occupancy_.end()) return std::nullopt;
    return it->second;
}

const EprLedger::Pair& EprLedger::pair(std::uint64_t pair_id) const {
    auto it = live_pairs_.find(pair_id);
    if (it == live_pairs_.end()) {
        throw ValidationError("EPR pair " + std::to_string(pair_id) + " is not allocated");
    }
    return it->second;
}

std::uint64_t EprLedger::mark_generated(std::size_t link_index) {
    if (link_index >= network_->links.size()) {
        throw ValidationError("link index out of range");
    }
    const QuantumLink& link = network_->links[link_index];
    if (!is_free(link.device_a, link.qubit_a) || !is_free(link.device_b, link.qubit_b)) {
        throw ValidationError("communication qubit occupied");
    }
    const std::uint64_t id = next_id_++;
    live_pairs_[id] = {id, link_index, link.device_a, link.qubit_a, link.device_b, link.qubit_b};
    occupancy_[{link.device_a, link.qubit_a}] = id;
    occupancy_[{link.device_b, link.qubit_b}] = id;
    per_link_[link_index].pairs_generated += 1;
    per_link_[link_index].cost_accrued += link.epr_cost;
    return id;
}

std::uint64_t EprLedger::merge(std::uint64_t left_id, std::uint64_t right_id,
                               const std::string& at_device) {
    Pair left = pair(left_id);
    Pair right = pair(right_id);

    auto endpoint_at = [&](const Pair& p) -> std::pair<QubitId, std::pair<std::string, QubitId>> {
        // (meeting qubit, far endpoint)
        if (p.device_a == at_device) return {p.qubit_a, {p.device_b, p.qubit_b}};
        if (p.device_b == at_device) return {p.qubit_b, {p.device_a, p.qubit_a}};
        throw ValidationError("pair " + std::to_string(p.id) + " has no half at device '" +
                              at_device + "'");
    };
    auto [left_meet, left_far] = endpoint_at(left);
    auto [right_meet, right_far] = endpoint_at(right);

    occupancy_.erase({at_device, left_meet});
    occupancy_.erase({at_device, right_meet});
    per_link_[left.link_index].pairs_consumed += 1;
    live_pairs_.erase(left_id);

    Pair& survivor = live_pairs_[right_id];
    survivor.device_a = left_far.first;
    survivor.qubit_a = left_far.second;
    survivor.device_b = right_far.first;
    survivor.qubit_b = right_far.second;
    occupancy_[{survivor.device_a, survivor.qubit_a}] = right_id;
    occupancy_[{survivor.device_b, survivor.qubit_b}] = right_id;
    return right_id;
}

void EprLedger::consume(std::uint64_t pair_id) {
    const Pair p = pair(pair_id);
    occupancy_.erase({p.device_a, p.qubit_a});
    occupancy_.erase({p.device_b, p.qubit_b});
    per_link_[p.link_index].pairs_consumed += 1;
    live_pairs_.erase(pair_id);
}

std::uint64_t EprLedger::total_generated() const {
    std::uint64_t sum = 0;
    for (const LinkStats& s : per_link_) sum += s.pairs_generated;
    return sum;
}

std::uint64_t EprLedger::total_consumed() const {
    std::uint64_t sum = 0;
    for (const LinkStats& s : per_link_) sum += s.pairs_consumed;
    return sum;
}

double EprLedger::total_epr_cost() const {
    double sum = 0.0;
    for (const LinkStats& s : per_link_) sum += s.cost_accrued;
    return sum;
}

RemoteLowerer::RemoteLowerer(const NetworkTopology& network, const GlobalIndex& index,
                             ClbitId first_fresh_clbit)
    : network_(network), index_(index), ledger_(network), next_clbit_(first_fresh_clbit) {}

std::uint64_t RemoteLowerer::generate_epr(std::size_t link_index, std::vector<Gate>& out) {
    const std::uint64_t id = ledger_.mark_generated(link_index);
    const EprLedger::Pair& p = ledger_.pair(id);
    const QubitId a = index_.global(p.device_a, p.qubit_a);
    const QubitId b = index_.global(p.device_b, p.qubit_b);
    out.push_back(Gate::reset(a));
    out.push_back(Gate::reset(b));
    out.push_back(Gate::h(a));
    out.push_back(Gate::cnot(a, b));
    return id;
}

std::uint64_t RemoteLowerer::swap_entanglement(const std::vector<std::string>& path,
                                               std::vector<Gate>& out) {
    if (path.size() < 2) {
        throw ValidationError("entanglement swapping needs a path of at least two devices");
    }
    std::vector<std::uint64_t> hop_pairs;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        hop_pairs.push_back(generate_epr(network_.link_index_between(path[i], path[i + 1]), out));
    }
    std::uint64_t chain = hop_pairs[0];
    if (hop_pairs.size() == 1) return chain;

    // Every intermediate's corrections target the half at the final device;
    // X and Z transfer across a Bell pair unchanged, so deferring them past
    // later Bell measurements only costs a global phase.
    const EprLedger::Pair& last = ledger_.pair(hop_pairs.back());
    const std::string& end_device = path.back();
    const QubitId end_half = index_.global(
        end_device, last.device_a == end_device ? last.qubit_a : last.qubit_b);

    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
        const std::string& mid = path[i];
        const EprLedger::Pair& left = ledger_.pair(chain);
        const EprLedger::Pair& right = ledger_.pair(hop_pairs[i]);
        const QubitId x = index_.global(mid, left.device_a == mid ? left.qubit_a : left.qubit_b);
        const QubitId y =
            index_.global(mid, right.device_a == mid ? right.qubit_a : right.qubit_b);

        const ClbitId m_a = fresh_clbit();
        const ClbitId m_b = fresh_clbit();
        out.push_back(Gate::cnot(x, y));
        out.push_back(Gate::h(x));
        out.push_back(Gate::measure(x, m_a));
        out.push_back(Gate::measure(y, m_b));
        out.push_back(Gate::if_x(m_b, end_half));
        out.push_back(Gate::if_z(m_a, end_half));
        out.push_back(Gate::reset(x));
        out.push_back(Gate::reset(y));

        chain = ledger_.merge(chain, hop_pairs[i], mid);
    }
    return chain;
}

std::uint64_t RemoteLowerer::establish_pair(const std::string& device_a,
                                            const std::string& device_b,
                                            std::vector<Gate>& out) {
    return swap_entanglement(device_path(network_, device_a, device_b), out);
}

QubitId RemoteLowerer::lower_teledata(QubitId src, std::uint64_t pair_id,
                                      std::vector<Gate>& out) {
    const EprLedger::Pair p = ledger_.pair(pair_id);
    const std::string& src_device = index_.device_of(src);

    QubitId near, far;
    if (p.device_a == src_device) {
        near = index_.global(p.device_a, p.qubit_a);
        far = index_.global(p.device_b, p.qubit_b);
    } else if (p.device_b == src_device) {
        near = index_.global(p.device_b, p.qubit_b);
        far = index_.global(p.device_a, p.qubit_a);
    } else {
        throw ValidationError("EPR pair has no half on the source device '" + src_device + "'");
    }

    const ClbitId m1 = fresh_clbit();
    const ClbitId m2 = fresh_clbit();
    out.push_back(Gate::cnot(src, near));
    out.push_back(Gate::h(src));
    out.push_back(Gate::measure(near, m1));
    out.push_back(Gate::measure(src, m2));
    out.push_back(Gate::if_x(m1, far));
    out.push_back(Gate::if_z(m2, far));
    out.push_back(Gate::reset(near));
    out.push_back(Gate::reset(src));
    ledger_.consume(pair_id);
    return far;
}

void RemoteLowerer::lower_telegate(QubitId control, QubitId target, std::uint64_t pair_id,
                                   std::vector<Gate>& out) {
    const EprLedger::Pair p = ledger_.pair(pair_id);
    const std::string& control_device = index_.device_of(control);
    const std::string& target_device = index_.device_of(target);
    if (control_device == target_device) {
        throw ValidationError("telegate endpoints are on the same device");
    }

    QubitId a, b;
    if (p.device_a == control_device && p.device_b == target_device) {
        a = index_.global(p.device_a, p.qubit_a);
        b = index_.global(p.device_b, p.qubit_b);
    } else if (p.device_b == control_device && p.device_a == target_device) {
        a = index_.global(p.device_b, p.qubit_b);
        b = index_.global(p.device_a, p.qubit_a);
    } else {
        throw ValidationError("EPR pair does not join the telegate's devices");
    }

    const ClbitId m1 = fresh_clbit();
    const ClbitId m2 = fresh_clbit();
    out.push_back(Gate::cnot(control, a));
    out.push_back(Gate::measure(a, m1));
    out.push_back(Gate::if_x(m1, b));
    out.push_back(Gate::cnot(b, target));
    out.push_back(Gate::h(b));
    out.push_back(Gate::measure(b, m2));
    out.push_back(Gate::if_z(m2, control));
    out.push_back(Gate::reset(a));
    out.push_back(Gate::reset(b));
    ledger_.consume(pair_id);
}

}  // namespace dqc
