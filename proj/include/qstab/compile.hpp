#pragma once

#include <vector>

#include "qstab/code.hpp"
#include "qstab/hardware.hpp"
#include "qstab/placement.hpp"
#include "qstab/schedule.hpp"

namespace qstab {

struct CompileOptions {
    int ancilla_budget = 1;
    int rounds = 1;
    /// Test hook: run moveless with the static ascending stabilizer order
    /// and static in-stabilizer gate order (no dynamic selection).
    bool moveless_static_order = false;
};

/// Abstract per-stabilizer measurement circuit step.
struct GateStep {
    enum class Kind { Gate1, Gate2, Measure, Reset };
    Kind kind;
    int qubit = -1;    // Gate1 target
    int data = -1;     // Gate2 data qubit
    int ancilla = -1;
    int stab = -1;
};

/// Z checks accumulate parity directly: w two-qubit gates, measure, reset.
/// Anything else conjugates the ancilla with a basis-change pair; non-X
/// support terms additionally get a data-side basis-change pair around
/// their two-qubit gate.
std::vector<GateStep> stabilizer_circuit(const Stabilizer& stab, int ancilla_ion);

/// Projected shuttle cost of (stabilizer, ancilla): the ancilla walks the
/// traps holding the stabilizer's data in greedy nearest-trap order from
/// its current position; the score sums the shuttle_time of each hop
/// (zero iff everything is already co-trapped).
time_us movement_score(const Stabilizer& stab, int ancilla_ion, const Mapping& map,
                       const QccdTopology& topo, const TimingModel& timing);

/// Mirror of a complete single round: stabilizers in reverse order, every
/// shuttle inverted in reverse sequence (cooling moves ahead of the
/// split), measurements re-anchored after their stabilizer's gates.
/// Executing forward + reverse restores the starting mapping and the
/// mirrored round's makespan equals the forward round's.
std::vector<Op> reverse_round(const Schedule& sched, int src_round, int new_round,
                              int shuttle_base);

Schedule compile(CompilerKind kind, const StabilizerCode& code, const QccdTopology& topo,
                 const TimingModel& timing, const CompileOptions& opts);

Schedule compile_baseline(const StabilizerCode& code, const QccdTopology& topo,
                          const TimingModel& timing, const CompileOptions& opts);
Schedule compile_mao(const StabilizerCode& code, const QccdTopology& topo,
                     const TimingModel& timing, const CompileOptions& opts);
Schedule compile_moveless(const StabilizerCode& code, const QccdTopology& topo,
                          const TimingModel& timing, const CompileOptions& opts);

}  // namespace qstab
