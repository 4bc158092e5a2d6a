#include "dqc/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "dqc/statevector.hpp"

namespace dqc {

double isolated_dimension(const NetworkTopology& network) {
    double sum = 0.0;
    for (const DeviceSpec& d : network.devices) sum += std::exp2(d.coupling.n_qubits);
    return sum;
}

double clustered_dimension(const NetworkTopology& network) {
    return std::exp2(static_cast<double>(network.total_data_qubits()));
}

namespace {

// Strategy selection and remote lowering over the global virtual register.
// Gate operands are logical; emission is over global physical slots, with
// at most one qubit migrated away from home at a time.
class StrategyWalk {
public:
    StrategyWalk(const NetworkTopology& net, const GlobalIndex& gi, const Circuit& source,
                 const Assignment& assignment, const CompileOptions& opts)
        : net_(net),
          gi_(gi),
          assignment_(assignment),
          opts_(opts),
          lowerer_(net, gi, source.n_clbits()) {
        std::map<std::string, std::set<QubitId>> taken;
        for (const auto& [l, slot] : assignment.slots()) {
            const QubitId g = gi.global(slot.device, slot.local);
            home_[l] = g;
            location_[l] = g;
            taken[slot.device].insert(slot.local);
        }
        for (const DeviceSpec& d : net.devices) {
            for (QubitId p : d.data_qubits()) {
                if (!taken[d.id].count(p)) free_slots_[d.id].insert(p);
            }
        }

        // SWAPs expand to their three CNOTs up front so strategy selection
        // and routing only ever see CNOTs.
        for (const Gate& g : source.gates()) {
            if (g.kind == GateKind::Swap) {
                gates_.push_back(Gate::cnot(g.q0, g.q1));
                gates_.push_back(Gate::cnot(g.q1, g.q0));
                gates_.push_back(Gate::cnot(g.q0, g.q1));
            } else {
                gates_.push_back(g);
            }
        }
    }

    void run() {
        for (std::size_t i = 0; i < gates_.size(); ++i) {
            const Gate& g = gates_[i];
            if (g.kind == GateKind::Cnot) {
                handle_cnot(i, g);
            } else {
                Gate moved = g;
                moved.q0 = location_.at(g.q0);
                emitted_.push_back(moved);
            }
        }
        if (migrant_) return_migrant();
    }

    std::vector<Gate>& emitted() { return emitted_; }
    std::vector<RemoteOpRecord>& remote_ops() { return remote_ops_; }
    RemoteLowerer& lowerer() { return lowerer_; }

private:
    const std::string& device_of(QubitId logical) const {
        return gi_.device_of(location_.at(logical));
    }

    void handle_cnot(std::size_t idx, const Gate& g) {
        const std::string du = device_of(g.q0);
        const std::string dv = device_of(g.q1);
        if (du == dv) {
            emitted_.push_back(Gate::cnot(location_.at(g.q0), location_.at(g.q1)));
            if (migrant_ && (migrant_->logical == g.q0 || migrant_->logical == g.q1)) {
                if (--migrant_->remaining == 0) return_migrant();
            }
            return;
        }
        if (migrant_ && (migrant_->logical == g.q0 || migrant_->logical == g.q1)) {
            // The migrant is needed against a device other than its host:
            // its burst is over.
            return_migrant();
            handle_cnot(idx, g);
            return;
        }
        if (!migrant_) {
            // Longer burst first, control on a tie.
            const std::uint32_t burst_u = burst_length(idx, g.q0, dv);
            const std::uint32_t burst_v = burst_length(idx, g.q1, du);
            struct Candidate {
                std::uint32_t burst;
                QubitId q;
                std::string target;
            };
            std::vector<Candidate> candidates{{burst_u, g.q0, dv}, {burst_v, g.q1, du}};
            if (candidates[1].burst > candidates[0].burst) {
                std::swap(candidates[0], candidates[1]);
            }
            for (const Candidate& c : candidates) {
                if (c.burst >= opts_.strategy_threshold && !free_slots_[c.target].empty()) {
                    migrate(c.q, c.target, c.burst);
                    handle_cnot(idx, g);  // now device-local
                    return;
                }
            }
        }
        // Telegate keeps both qubits home at one pair per gate.
        const std::vector<std::string> path = device_path(net_, du, dv);
        const std::uint64_t pair = lowerer_.establish_pair(du, dv, emitted_);
        lowerer_.lower_telegate(location_.at(g.q0), location_.at(g.q1), pair, emitted_);
        remote_ops_.push_back({"telegate", g.q0, g.q1, du, dv, path});
    }

    /// Length of the run of consecutive CNOTs (within the subsequence of
    /// gates touching q, starting at gates_[from]) whose other operand is
    /// assigned to `target`. Any other gate touching q ends the run.
    std::uint32_t burst_length(std::size_t from, QubitId q, const std::string& target) const {
        if (assignment_.slot(q).device == target) return 0;
        std::uint32_t run = 0;
        for (std::size_t i = from; i < gates_.size(); ++i) {
            const Gate& g = gates_[i];
            if (!g.touches(q)) continue;
            if (g.kind != GateKind::Cnot) break;
            const QubitId other = g.q0 == q ? g.q1 : g.q0;
            if (assignment_.slot(other).device != target) break;
            ++run;
        }
        return run;
    }

    void migrate(QubitId q, const std::string& target, std::uint32_t burst) {
        const std::string home_dev = assignment_.slot(q).device;
        const std::vector<std::string> path = device_path(net_, home_dev, target);
        const std::uint64_t pair = lowerer_.establish_pair(home_dev, target, emitted_);
        const QubitId far = lowerer_.lower_teledata(location_.at(q), pair, emitted_);

        // The state sits on the target's comm qubit; park it on the free
        // data qubit closest to that comm qubit.
        const auto [far_dev, far_local] = gi_.to_local(far);
        const DeviceSpec& dev = net_.device(target);
        QubitId dest_local = 0;
        std::uint32_t best_dist = std::numeric_limits<std::uint32_t>::max();
        for (QubitId p : free_slots_.at(target)) {
            const auto hop = shortest_path(dev.coupling, p, far_local);
            const auto dist = static_cast<std::uint32_t>(hop.size() - 1);
            if (dist < best_dist) {
                best_dist = dist;
                dest_local = p;
            }
        }
        free_slots_.at(target).erase(dest_local);
        const QubitId dest = gi_.global(target, dest_local);
        emitted_.push_back(Gate::swap(far, dest));
        location_[q] = dest;
        migrant_ = Migration{q, target, dest_local, burst};
        remote_ops_.push_back({"teledata", q, 0, home_dev, target, path});
    }

    void return_migrant() {
        const Migration m = *migrant_;
        migrant_.reset();
        const std::string home_dev = assignment_.slot(m.logical).device;
        const std::vector<std::string> path = device_path(net_, m.host, home_dev);
        const std::uint64_t pair = lowerer_.establish_pair(m.host, home_dev, emitted_);
        const QubitId far = lowerer_.lower_teledata(location_.at(m.logical), pair, emitted_);
        emitted_.push_back(Gate::swap(far, home_.at(m.logical)));
        location_[m.logical] = home_.at(m.logical);
        free_slots_.at(m.host).insert(m.host_slot);
        remote_ops_.push_back({"teledata_return", m.logical, 0, m.host, home_dev, path});
    }

    struct Migration {
        QubitId logical;
        std::string host;
        QubitId host_slot;
        std::uint32_t remaining;
    };

    const NetworkTopology& net_;
    const GlobalIndex& gi_;
    const Assignment& assignment_;
    const CompileOptions& opts_;
    RemoteLowerer lowerer_;
    std::vector<Gate> gates_;
    std::vector<Gate> emitted_;
    std::vector<RemoteOpRecord> remote_ops_;
    std::map<QubitId, QubitId> home_;
    std::map<QubitId, QubitId> location_;
    std::map<std::string, std::set<QubitId>> free_slots_;
    std::optional<Migration> migrant_;
};

struct RoutedStream {
    std::vector<Gate> gates;
    std::vector<Layout> final_layouts;  // device-index aligned
    std::size_t inserted_swaps{0};
};

// Per-device routing of the global stream. Cross-device CNOTs are the link
// primitives and pass through untouched; comm qubits are protected, so
// their layout entries are identity whenever a link primitive fires.
RoutedStream route_global(const std::vector<Gate>& stream, const NetworkTopology& net,
                          const GlobalIndex& gi, RoutingMode mode) {
    std::vector<DeviceRouter> routers;
    std::vector<QubitId> offsets;
    routers.reserve(net.devices.size());
    for (const DeviceSpec& d : net.devices) {
        routers.emplace_back(d.coupling, Layout::identity(d.coupling.n_qubits), mode,
                             d.comm_qubits);
        offsets.push_back(gi.global(d.id, 0));
    }

    RoutedStream out;
    std::vector<Gate> scratch;
    for (const Gate& g : stream) {
        if (g.is_two_qubit() && gi.device_of(g.q0) != gi.device_of(g.q1)) {
            out.gates.push_back(g);  // EPR link CNOT
            continue;
        }
        const std::size_t di = net.device_index(gi.device_of(g.q0));
        const QubitId off = offsets[di];

        scratch.clear();
        Gate local = g;
        local.q0 -= off;
        if (g.is_two_qubit()) local.q1 -= off;
        if (local.kind == GateKind::Swap) {
            routers[di].route_gate(Gate::cnot(local.q0, local.q1), scratch);
            routers[di].route_gate(Gate::cnot(local.q1, local.q0), scratch);
            routers[di].route_gate(Gate::cnot(local.q0, local.q1), scratch);
        } else {
            routers[di].route_gate(local, scratch);
        }
        for (Gate e : scratch) {
            e.q0 += off;
            if (e.is_two_qubit()) e.q1 += off;
            out.gates.push_back(e);
        }
    }
    for (DeviceRouter& r : routers) {
        out.final_layouts.push_back(r.layout());
        out.inserted_swaps += r.inserted_swaps();
    }
    return out;
}

}  // namespace

DistributedPlan compile(const Circuit& circuit, const NetworkTopology& network,
                        const CompileOptions& options) {
    if (const auto violations = validate(circuit); !violations.empty()) {
        throw ValidationError("invalid circuit: " + violations.front().to_string());
    }
    network.check();

    const GlobalIndex gi(network);
    const InteractionGraph graph = interaction_graph(circuit);
    Assignment assignment = partition(graph, network, options.pins);

    StrategyWalk walk(network, gi, circuit, assignment, options);
    walk.run();
    const std::size_t pre_routing_count = walk.emitted().size();

    const RoutedStream routed =
        route_global(walk.emitted(), network, gi, options.routing);

    DistributedPlan plan;
    plan.network = network;
    plan.source = circuit;
    plan.assignment = std::move(assignment);
    plan.options = options;
    plan.link_stats = walk.lowerer().ledger().per_link();
    plan.remote_ops = std::move(walk.remote_ops());
    plan.pre_routing_gate_count = pre_routing_count;
    plan.inserted_swaps = routed.inserted_swaps;

    const ClbitId n_clbits = std::max<ClbitId>(circuit.n_clbits(), walk.lowerer().next_clbit());
    plan.lowered = Circuit(gi.total_qubits(), n_clbits);
    plan.lowered.extend(routed.gates);

    for (const auto& [l, slot] : plan.assignment.slots()) {
        const std::size_t di = network.device_index(slot.device);
        const QubitId final_local = routed.final_layouts[di].physical(slot.local);
        plan.final_locations[l] = gi.global(slot.device, final_local);
    }

    plan.metrics = compute_metrics(plan);
    return plan;
}

Metrics compute_metrics(const DistributedPlan& plan) {
    Metrics m;

    std::map<QubitId, std::string> device_of;
    for (const auto& [l, slot] : plan.assignment.slots()) device_of[l] = slot.device;
    m.remote_op_count = cut_weight(interaction_graph(plan.source), device_of);

    for (const LinkStats& s : plan.link_stats) {
        m.epr_pairs_generated += s.pairs_generated;
        m.epr_pairs_consumed += s.pairs_consumed;
    }
    m.lowered_gate_count = plan.lowered.size();
    m.lowered_depth = depth(plan.lowered);
    m.inserted_swaps = plan.inserted_swaps;
    m.isolated_dimension = isolated_dimension(plan.network);
    m.clustered_dimension = clustered_dimension(plan.network);

    const GlobalIndex gi(plan.network);
    const CostWeights& w = plan.options.weights;
    const auto& gates = plan.lowered.gates();
    for (std::size_t i = 0; i < gates.size(); ++i) {
        // generate_epr emits the only cross-device CNOTs, always as
        // [Reset a, Reset b, H a, CNOT(a->b)]; bill the block atomically.
        if (i + 3 < gates.size() && gates[i].kind == GateKind::Reset &&
            gates[i + 1].kind == GateKind::Reset && gates[i + 2].kind == GateKind::H &&
            gates[i + 3].kind == GateKind::Cnot && gates[i].q0 == gates[i + 2].q0 &&
            gates[i + 3].q0 == gates[i].q0 && gates[i + 3].q1 == gates[i + 1].q0 &&
            gi.device_of(gates[i + 3].q0) != gi.device_of(gates[i + 3].q1)) {
            const QuantumLink& link = plan.network.link_between(
                gi.device_of(gates[i + 3].q0), gi.device_of(gates[i + 3].q1));
            m.total_cost += w.epr_pair * link.epr_cost;
            i += 3;
            continue;
        }
        switch (gates[i].kind) {
            case GateKind::H:
            case GateKind::X:
            case GateKind::Z:
            case GateKind::U1q:
            case GateKind::IfBit:
                m.total_cost += w.single_qubit;
                break;
            case GateKind::Cnot:
                m.total_cost += w.cnot;
                break;
            case GateKind::Swap:
                m.total_cost += 3.0 * w.cnot;
                break;
            case GateKind::Measure:
            case GateKind::Reset:
                m.total_cost += w.measurement;
                break;
        }
    }
    return m;
}

namespace {

// Probe preparations: per-qubit unitaries applied to |0...0>.
std::vector<std::vector<Matrix2>> probe_preparations(std::uint32_t n, std::uint64_t seed) {
    const Matrix2 id{{Complex{1}, Complex{0}, Complex{0}, Complex{1}}};
    const Matrix2 x{{Complex{0}, Complex{1}, Complex{1}, Complex{0}}};

    std::vector<std::vector<Matrix2>> probes;
    probes.emplace_back(n, id);                          // all zeros
    for (std::uint32_t i = 0; i < n; ++i) {              // single excitations
        std::vector<Matrix2> p(n, id);
        p[i] = x;
        probes.push_back(std::move(p));
    }
    probes.emplace_back(n, x);                           // all ones

    std::mt19937_64 rng(seed);
    for (int t = 0; t < 20; ++t) {
        std::vector<Matrix2> p;
        p.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) p.push_back(random_unitary2(rng));
        probes.push_back(std::move(p));
    }
    return probes;
}

}  // namespace

VerificationReport verify(const DistributedPlan& plan, std::uint64_t probe_seed) {
    VerificationReport report;
    for (const Gate& g : plan.source.gates()) {
        if (!g.is_unitary_kind()) {
            report.detail = "source circuit is not unitary (contains " +
                            std::string(gate_kind_name(g.kind)) +
                            "); equivalence against a single ideal state is undefined";
            return report;
        }
    }
    const GlobalIndex gi(plan.network);
    const std::uint32_t n_total = gi.total_qubits();
    if (n_total > kDefaultMaxQubits) {
        report.detail = "unverifiable at desk scale: " + std::to_string(n_total) +
                        " physical qubits exceed the simulator cap of " +
                        std::to_string(kDefaultMaxQubits);
        return report;
    }

    const std::uint32_t n_src = plan.source.n_qubits();
    for (QubitId l = 0; l < n_src; ++l) {
        if (!plan.final_locations.count(l)) {
            throw ValidationError("plan is missing a final location for logical qubit " +
                                  std::to_string(l));
        }
    }

    double max_infidelity = 0.0;
    std::size_t branches = 0;
    std::string failure;

    for (const std::vector<Matrix2>& prep : probe_preparations(n_src, probe_seed)) {
        // Ideal output on the logical register.
        StateVector ideal(n_src);
        for (QubitId q = 0; q < n_src; ++q) ideal.apply_u1q(prep[q], q);
        for (const Gate& g : plan.source.gates()) ideal.apply_unitary_gate(g);

        // Same input embedded at the assigned slots.
        StateVector input(n_total);
        for (QubitId q = 0; q < n_src; ++q) {
            const auto& slot = plan.assignment.slot(q);
            input.apply_u1q(prep[q], gi.global(slot.device, slot.local));
        }

        // Ideal output relocated to the final physical positions, |0>
        // everywhere else.
        std::vector<Complex> expected_amps(std::size_t{1} << n_total, Complex{});
        for (std::size_t z = 0; z < ideal.dim(); ++z) {
            std::size_t idx = 0;
            for (QubitId b = 0; b < n_src; ++b) {
                if (z & (std::size_t{1} << b)) {
                    idx |= std::size_t{1} << plan.final_locations.at(b);
                }
            }
            expected_amps[idx] = ideal.amplitude(z);
        }
        const StateVector expected = StateVector::from_amplitudes(n_total, std::move(expected_amps));

        try {
            run_exhaustive_visit(plan.lowered, input, [&](const Branch& b) {
                ++branches;
                const double infidelity = 1.0 - state_overlap(expected, b.final_state);
                if (infidelity > max_infidelity) max_infidelity = infidelity;
                if (infidelity > kTol && failure.empty()) {
                    failure = "branch deviates from the ideal output (infidelity " +
                              std::to_string(infidelity) + ")";
                }
            });
        } catch (const CapacityError& e) {
            report.detail = std::string("unverifiable at desk scale: ") + e.what();
            return report;
        }
        ++report.probes_checked;
    }

    report.ran = true;
    report.branches_checked = branches;
    report.max_infidelity = max_infidelity;
    report.passed = max_infidelity <= kTol;
    report.detail = report.passed ? "equivalent in every measurement branch" : failure;
    return report;
}

}  // namespace dqc
