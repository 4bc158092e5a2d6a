#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dqc/circuit.hpp"
#include "dqc/network.hpp"
#include "dqc/partition.hpp"
#include "dqc/remote.hpp"
#include "dqc/router.hpp"

namespace dqc {

/// Abstract gate weights for the cost metric. EPR generation is billed as
/// one atomic event (epr_pair * link epr_cost), not as its constituent
/// gates.
struct CostWeights {
    double single_qubit{1.0};
    double cnot{10.0};
    double epr_pair{100.0};
    double measurement{30.0};
};

struct CompileOptions {
    RoutingMode routing{RoutingMode::Restore};
    /// A qubit with >= this many consecutive remote CNOTs against one
    /// device migrates there by teledata; below it, telegate.
    std::uint32_t strategy_threshold{3};
    CostWeights weights{};
    /// Logical qubit -> device id constraints fed to the partitioner.
    std::map<QubitId, std::string> pins{};
};

struct Metrics {
    std::uint64_t remote_op_count{0};
    std::uint64_t epr_pairs_generated{0};
    std::uint64_t epr_pairs_consumed{0};
    std::size_t lowered_gate_count{0};
    std::size_t lowered_depth{0};
    std::size_t inserted_swaps{0};
    double total_cost{0.0};
    /// Sum over devices of 2^(all qubits): the reachable state space when
    /// each device computes alone.
    double isolated_dimension{0.0};
    /// 2^(total data qubits): the state space of the clustered register.
    double clustered_dimension{0.0};
};

double isolated_dimension(const NetworkTopology& network);
double clustered_dimension(const NetworkTopology& network);

/// One remote primitive the compiler scheduled, for reporting.
struct RemoteOpRecord {
    std::string kind;  // "telegate" | "teledata" | "teledata_return"
    QubitId logical_q0{0};
    QubitId logical_q1{0};  // telegate target; unused for teledata
    std::string from_device;
    std::string to_device;
    std::vector<std::string> link_path;  // device ids, length >= 2
};

struct DistributedPlan {
    NetworkTopology network;
    Circuit source{0};   // logical circuit as given
    Circuit lowered{0};  // global physical circuit
    Assignment assignment;
    CompileOptions options;
    std::vector<LinkStats> link_stats;           // index-aligned with network.links
    std::vector<RemoteOpRecord> remote_ops;
    std::map<QubitId, QubitId> final_locations;  // logical -> global qubit at the end
    /// Gate count after strategy selection + remote lowering, before the
    /// per-device routing pass.
    std::size_t pre_routing_gate_count{0};
    std::size_t inserted_swaps{0};
    Metrics metrics;
};

/// partition -> strategy selection -> remote lowering (with entanglement
/// swapping over multi-hop link paths) -> per-device routing -> metrics.
/// Deterministic for fixed (circuit, network, options). Throws
/// CapacityError when the circuit does not fit and ValidationError on an
/// invalid circuit or unsatisfiable options.
DistributedPlan compile(const Circuit& circuit, const NetworkTopology& network,
                        const CompileOptions& options = {});

/// Everything derivable from the plan alone; compile() stores the result in
/// plan.metrics.
Metrics compute_metrics(const DistributedPlan& plan);

struct VerificationReport {
    bool passed{false};
    /// False when the oracle could not run at all (non-unitary source or
    /// register over the simulator cap); detail says why. passed implies
    /// ran.
    bool ran{false};
    /// 1 - |<expected|actual>| maximized over probes and branches.
    double max_infidelity{1.0};
    std::size_t probes_checked{0};
    std::size_t branches_checked{0};
    std::string detail;  // failure description or why unverifiable
};

/// Simulates the lowered circuit branch-exhaustively from a probe basis
/// (all zeros, each single excitation, all ones) plus 20 seeded random
/// product states, comparing every branch against the ideal circuit's
/// output relocated to plan.final_locations, up to global phase at kTol.
/// Requires a unitary source circuit and a total register within the
/// simulator cap; otherwise returns passed=false with detail explaining
/// why it is unverifiable.
VerificationReport verify(const DistributedPlan& plan, std::uint64_t probe_seed = 20180810);

}  // namespace dqc
