#pragma once

#include <map>
#include <string>
#include <vector>

#include "qstab/code.hpp"
#include "qstab/hardware.hpp"
#include "qstab/schedule.hpp"

namespace qstab {

struct LatencyReport {
    time_us total_us = 0;
    std::vector<time_us> per_round_us;
    int shuttle_count = 0;
    int intratrap_swap_count = 0;
    int cooling_count = 0;
    std::vector<time_us> trap_busy_us;
    Mapping final_mapping;
    std::string code_label;
    std::string compiler;
    int ancilla_budget = 0;
    int num_data = 0;
    int num_ancilla = 0;
};

std::string report_to_json(const LatencyReport& r);
LatencyReport report_from_json(const std::string& text);

struct TimedOp {
    time_us start = 0;
    time_us end = 0;
    Op op;
    int schedule_index = -1;  // -1 for auto-inserted cooling
};

/// List-scheduling execution. Each op starts at the earliest time at which
/// its ions are idle and its exclusive resources are free; ops are
/// assigned in schedule order, rounds are separated by a global barrier.
/// Exclusive resources: one gate in flight per trap (Gate1/Gate2/GateSWAP),
/// one chain reconfiguration per trap (Split/Merge/IonSWAP) and one ion in
/// transit per segment or junction. Measure, Reset and Cool occupy only
/// their ion; their duration still counts toward the trap busy histogram.
/// A sympathetic-cooling op is charged for every merge: schedules that do
/// not carry an explicit Cool for a shuttle get one inserted after its
/// merge.
LatencyReport simulate(const Schedule& schedule, const QccdTopology& topo,
                       const TimingModel& timing);

/// simulate() plus the per-op event times (for event dumps and tests).
LatencyReport simulate_traced(const Schedule& schedule, const QccdTopology& topo,
                              const TimingModel& timing, std::vector<TimedOp>* events);

std::string dump_events(const Schedule& schedule, const QccdTopology& topo,
                        const std::vector<TimedOp>& events);

struct Violation {
    std::size_t op_index = 0;
    time_us at_us = 0;
    std::string message;
};

struct VerifyReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

/// Structural replay of the schedule against the code and topology:
/// bipartite and co-trapped two-qubit gates, no gate on an ion in transit,
/// capacity respected, splits only from chain ends, one measurement per
/// stabilizer per round, reset before ancilla reuse, movement policy
/// honored, one cooling per shuttle. Violations are reported, not thrown.
VerifyReport verify(const Schedule& schedule, const StabilizerCode& code,
                    const QccdTopology& topo, const TimingModel& timing);

/// Latency floor for one extraction round with unconstrained hardware:
/// max-weight * gate2 + 2 * gate1 + measure.
time_us theoretical_min_latency(const StabilizerCode& code, const TimingModel& timing);

}  // namespace qstab
