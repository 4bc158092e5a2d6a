#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "dqc/compiler.hpp"

namespace dqc {

/// Bumped whenever the JSON layout of plans or reports changes shape.
inline constexpr int kSchemaVersion = 1;

/// FNV-1a over raw bytes; used to fingerprint input files in reports.
std::uint64_t fnv1a64(std::string_view data);
/// 16 lowercase hex digits of fnv1a64.
std::string digest_hex(std::string_view data);

/// Serialization is byte-deterministic: keys are emitted in a fixed order
/// and numbers use shortest round-trip formatting, so identical inputs
/// produce identical bytes.
std::string network_to_json(const NetworkTopology& net, int indent = 2);
std::string metrics_to_json(const Metrics& m, int indent = 2);
std::string verification_to_json(const VerificationReport& rep, int indent = 2);

/// Self-contained plan: embeds the network, both circuits (as circuit
/// text), the assignment and everything the metrics derive from, so a plan
/// file alone supports re-verification.
std::string plan_to_json(const DistributedPlan& plan, int indent = 2);
DistributedPlan plan_from_json(const std::string& text);

void save_plan(const DistributedPlan& plan, const std::string& path);
DistributedPlan load_plan(const std::string& path);

}  // namespace dqc
