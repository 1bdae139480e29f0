#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qstab/hardware.hpp"

namespace qstab {

enum class OpKind : std::uint8_t {
    Split,      // ion leaves its trap's chain into the shuttling zone
    Move,       // ion traverses one segment or junction
    Merge,      // ion joins a trap's chain at the back
    IntraSwap,  // reposition ion with the chain-back ion
    Gate1,
    Gate2,
    Measure,
    Reset,
    Cool
};

enum class CompilerKind : std::uint8_t { Baseline, Mao, Moveless };

std::string compiler_name(CompilerKind k);
CompilerKind compiler_from_name(const std::string& name);

struct Op {
    OpKind kind;
    int round = 0;
    int ion_a = -1;  // shuttled ion / gate qubit / data of Gate2 / measured ancilla
    int ion_b = -1;  // Gate2 ancilla, IntraSwap partner
    int trap = -1;   // acting trap (split source, merge dest, gate/measure/cool trap)
    int elem_node = -1;  // Move through junction/corner: node id
    int elem_edge = -1;  // Move along segment: edge id
    int stab = -1;       // owning stabilizer for gates/measure/reset
    int shuttle = -1;    // groups split/moves/merge/cool of one shuttle
    SwapMethod swap_method = SwapMethod::GateSwap;
    bool at_front = false;  // Split from / Merge at the chain front
};

/// Ordered atomic-op program. Ion ids: data [0, num_data), ancillas
/// [num_data, num_data + num_ancilla). Round boundaries are global
/// barriers at simulation time.
struct Schedule {
    CompilerKind compiler = CompilerKind::Baseline;
    int ancilla_budget = 0;
    int rounds = 0;
    int num_data = 0;
    int num_ancilla = 0;
    int num_stabilizers = 0;
    std::string code_label;
    std::vector<std::vector<int>> initial_chains;  // phi_0: trap -> ions front..back
    std::vector<Op> ops;

    bool moves_only_ancilla() const { return compiler != CompilerKind::Baseline; }
    int num_ions() const { return num_data + num_ancilla; }
    int shuttle_count() const;
    int swap_count() const;
};

std::string dump_schedule(const Schedule& s, const QccdTopology& topo);
Schedule parse_schedule(const std::string& text);

}  // namespace qstab
