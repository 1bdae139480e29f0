#pragma once

#include <optional>
#include <vector>

#include "qstab/code.hpp"
#include "qstab/hardware.hpp"

namespace qstab {

/// Initial assignment phi_0. Every trap keeps one slot clear of data so a
/// visiting ancilla can always merge (possibly after evicting another
/// ancilla).
struct Partition {
    std::vector<std::vector<int>> trap_data;  // trap -> data ids, chain order
    std::vector<int> ancilla_trap;            // ancilla k -> trap id
};

/// Seeds traps by a breadth-first Tanner traversal (checks and data in
/// ascending id order), then hill-climbs single-qubit relocations while
/// the co-trapped edge count strictly improves. Ancilla k homes at the
/// plurality trap of stabilizer k, falling back to the nearest trap with
/// space.
Partition partition_data(const StabilizerCode& code, const QccdTopology& topo,
                         int ancilla_budget);

Mapping initial_mapping(const StabilizerCode& code, const QccdTopology& topo,
                        const Partition& part, int ancilla_budget);

/// Plurality-mass objective the hill climb maximizes: for each stabilizer,
/// the largest number of its support qubits sharing one trap.
int cotrapped_edge_count(const StabilizerCode& code, const std::vector<int>& data_trap,
                         int num_traps);

struct RebalancePlan {
    int victim = -1;
    int dest = -1;
};

/// Eviction decision for a trap that must admit one more ion. Returns
/// nothing if the trap still has room. The victim is the occupant with the
/// fewest pending interactions (ties: most recently arrived, then lower
/// id); under an ancilla-only policy data qubits are never evicted, and
/// `protect` is exempt. Destination is the least-loaded adjacent trap with
/// space; throws if every adjacent trap is full.
std::optional<RebalancePlan> plan_rebalance(const Mapping& map, const QccdTopology& topo,
                                            int incoming_trap, bool ancilla_only,
                                            const std::vector<int>& pending,
                                            const std::vector<long>& arrival, int protect = -1);

}  // namespace qstab
