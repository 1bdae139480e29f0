#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qstab {

using time_us = std::int64_t;

enum class SwapMethod : std::uint8_t { GateSwap, IonSwap };

/// All durations in microseconds. gateswap is pinned to 3 * gate2 at
/// construction and after any override.
struct TimingModel {
    time_us split = 80;
    time_us move_per_segment = 5;
    time_us merge = 80;
    time_us x_junction = 120;
    time_us y_junction = 100;
    time_us gate2 = 100;
    time_us gate1 = 10;
    time_us measure = 100;
    time_us gateswap = 300;
    time_us ionswap_per_ion = 42;
    time_us cool = 100;
    SwapMethod swap_method = SwapMethod::GateSwap;

    void validate() const;
    void refresh_derived() { gateswap = 3 * gate2; }
};

enum class NodeKind : std::uint8_t { Trap, XJunction, YJunction, Corner };

/// Traps plus shuttling waypoints. Traps and waypoints are graph nodes;
/// segments are undirected edges. Junction waypoints add a traversal cost,
/// corner waypoints and pass-through traps are free.
struct QccdTopology {
    struct Node {
        NodeKind kind;
        int capacity = 0;  // traps only
    };
    struct Edge {
        int a = 0, b = 0;
    };

    std::vector<Node> nodes;
    std::vector<Edge> edges;
    std::vector<std::vector<std::pair<int, int>>> adj;  // node -> (neighbor, edge id)
    int num_traps = 0;  // trap node ids are [0, num_traps)
    std::string label;

    bool is_trap(int node) const { return node >= 0 && node < num_traps; }
    int capacity(int trap) const { return nodes[trap].capacity; }
    int total_capacity() const;
    /// Traps reachable through waypoints without passing another trap.
    std::vector<int> neighbor_traps(int trap) const;
    void add_edge(int a, int b);
    void validate() const;
};

QccdTopology make_linear(int traps, int capacity);

/// rows x cols mesh: traps are the horizontal cells of each row, joined at
/// shared waypoints; rows are tied together by vertical segments. A
/// waypoint with 4 incident links is an X junction, 3 a Y junction, and
/// the mesh corners are plain pass-throughs.
QccdTopology make_grid(int rows, int cols, int capacity);

/// Element-by-element shuttle route. Nodes alternate with the edges
/// joining them; junction nodes along the way are charged their crossing
/// cost. An empty path means source == destination.
struct ShuttlePath {
    std::vector<int> nodes;     // [from, ..., to]; empty if from == to
    std::vector<int> edge_ids;  // nodes.size() - 1 entries
};

/// Minimum-cost route between two traps under the timing model's segment
/// and junction costs; ties resolved toward the lexicographically smallest
/// node sequence.
ShuttlePath shuttle_path(const QccdTopology& topo, const TimingModel& timing,
                         int from_trap, int to_trap);

/// Movement cost of a path, excluding split/merge bookends.
time_us path_move_cost(const QccdTopology& topo, const TimingModel& timing,
                       const ShuttlePath& path);

time_us intratrap_swap_time(const TimingModel& timing, SwapMethod method, int chain_length);

/// split + segment moves + junction crossings + merge + end repositioning.
/// Swap counts are GateSWAP/IonSWAP applications at the source and
/// destination chains (chain lengths only matter for IonSWAP).
time_us shuttle_time(const QccdTopology& topo, const TimingModel& timing,
                     const ShuttlePath& path, int intra_source_swaps, int intra_dest_swaps,
                     int source_chain_len = 0, int dest_chain_len = 0);

/// Live ion positions. Ion ids: data qubits [0, num_data), ancillas
/// [num_data, num_data + num_ancilla).
struct Mapping {
    struct IonState {
        int trap = -1;
        int pos = -1;
        bool in_transit = false;
    };
    std::vector<IonState> ions;
    std::vector<std::vector<int>> chains;  // trap -> ion ids front..back
    int num_data = 0;

    bool is_data(int ion) const { return ion < num_data; }
    int occupancy(int trap) const { return static_cast<int>(chains[trap].size()); }
    void place(int ion, int trap);          // append at chain back
    void place_front(int ion, int trap);    // insert at chain front
    void remove_from_chain(int ion);        // close the position gap
    void swap_with_back(int ion);
    bool trap_assignment_equals(const Mapping& other) const;
    void check_invariants(const QccdTopology& topo) const;
};

/// Hardware config: JSON with keys topology ("linear"|"grid"),
/// traps/rows/cols, capacity, and an optional "timing" object overriding
/// any TimingModel field. Shorthand strings "linear:<traps>x<cap>" and
/// "grid:<rows>x<cols>x<cap>" are accepted anywhere a config is.
struct HardwareSpec {
    QccdTopology topology;
    TimingModel timing;
};

HardwareSpec parse_hardware(const std::string& spec_or_path);
HardwareSpec parse_hardware_json(const std::string& json_text);

}  // namespace qstab
