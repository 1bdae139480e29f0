#include "qstab/placement.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace qstab {

int cotrapped_edge_count(const StabilizerCode& code, const std::vector<int>& data_trap,
                         int num_traps) {
    int total = 0;
    std::vector<int> count(num_traps);
    for (const auto& s : code.stabilizers) {
        std::fill(count.begin(), count.end(), 0);
        int best = 0;
        for (const auto& [q, p] : s.support) {
            (void)p;
            best = std::max(best, ++count[data_trap[q]]);
        }
        total += best;
    }
    return total;
}

Partition partition_data(const StabilizerCode& code, const QccdTopology& topo,
                         int ancilla_budget) {
    const int traps = topo.num_traps;
    if (ancilla_budget < 0) throw std::invalid_argument("ancilla budget must be >= 0");

    int data_room = 0;
    for (int t = 0; t < traps; t++) data_room += topo.capacity(t) - 1;
    if (code.n > data_room)
        throw std::invalid_argument("infeasible: " + std::to_string(code.n) +
                                    " data qubits exceed reserved capacity " +
                                    std::to_string(data_room));
    if (code.n + ancilla_budget > topo.total_capacity())
        throw std::invalid_argument("infeasible: ions exceed total capacity");

    // BFS order over the Tanner graph, ascending ids, disconnected pieces
    // and uncovered data appended afterwards.
    TannerGraph g = tanner_graph(code);
    std::vector<int> order;
    std::vector<char> data_seen(code.n, 0), check_seen(std::max(code.m(), 1), 0);
    for (int s0 = 0; s0 < code.m(); s0++) {
        if (check_seen[s0]) continue;
        std::queue<std::pair<bool, int>> q;  // (is_check, id)
        check_seen[s0] = 1;
        q.push({true, s0});
        while (!q.empty()) {
            auto [is_check, id] = q.front();
            q.pop();
            if (is_check) {
                std::vector<int> nb = g.check_neighbors[id];
                std::sort(nb.begin(), nb.end());
                for (int d : nb) {
                    if (!data_seen[d]) {
                        data_seen[d] = 1;
                        order.push_back(d);
                        q.push({false, d});
                    }
                }
            } else {
                std::vector<int> nb = g.data_neighbors[id];
                std::sort(nb.begin(), nb.end());
                for (int c : nb)
                    if (!check_seen[c]) {
                        check_seen[c] = 1;
                        q.push({true, c});
                    }
            }
        }
    }
    for (int d = 0; d < code.n; d++)
        if (!data_seen[d]) order.push_back(d);

    Partition part;
    part.trap_data.resize(traps);
    std::vector<int> data_trap(code.n, -1);
    int trap = 0;
    for (int d : order) {
        while (trap < traps &&
               static_cast<int>(part.trap_data[trap].size()) >= topo.capacity(trap) - 1)
            trap++;
        part.trap_data[trap].push_back(d);
        data_trap[d] = trap;
    }

    // first-improvement hill climb on single relocations
    int score = cotrapped_edge_count(code, data_trap, traps);
    bool improved = true;
    while (improved) {
        improved = false;
        for (int d = 0; d < code.n && !improved; d++) {
            int from = data_trap[d];
            for (int to = 0; to < traps && !improved; to++) {
                if (to == from) continue;
                if (static_cast<int>(part.trap_data[to].size()) >= topo.capacity(to) - 1) continue;
                data_trap[d] = to;
                int cand = cotrapped_edge_count(code, data_trap, traps);
                if (cand > score) {
                    score = cand;
                    auto& src = part.trap_data[from];
                    src.erase(std::find(src.begin(), src.end(), d));
                    part.trap_data[to].push_back(d);
                    improved = true;
                } else {
                    data_trap[d] = from;
                }
            }
        }
    }

    // ancilla homes
    std::vector<int> occupancy(traps);
    for (int t = 0; t < traps; t++) occupancy[t] = static_cast<int>(part.trap_data[t].size());
    part.ancilla_trap.resize(ancilla_budget, -1);
    for (int k = 0; k < ancilla_budget; k++) {
        int want = 0;
        if (code.m() > 0) {
            const auto& s = code.stabilizers[k % code.m()];
            std::vector<int> count(traps, 0);
            int best = -1;
            for (const auto& [q, p] : s.support) {
                (void)p;
                count[data_trap[q]]++;
            }
            for (int t = 0; t < traps; t++)
                if (best < 0 || count[t] > count[best]) best = t;
            want = best;
        }
        int home = -1;
        if (occupancy[want] < topo.capacity(want)) {
            home = want;
        } else {
            // nearest trap with space, by hop distance over the topology
            std::queue<int> q;
            std::vector<char> seen(topo.nodes.size(), 0);
            q.push(want);
            seen[want] = 1;
            while (!q.empty() && home < 0) {
                int u = q.front();
                q.pop();
                if (topo.is_trap(u) && u != want && occupancy[u] < topo.capacity(u)) {
                    home = u;
                    break;
                }
                for (auto [v, e] : topo.adj[u]) {
                    (void)e;
                    if (!seen[v]) {
                        seen[v] = 1;
                        q.push(v);
                    }
                }
            }
            if (home < 0) throw std::invalid_argument("no trap has space for ancilla");
        }
        occupancy[home]++;
        part.ancilla_trap[k] = home;
    }
    return part;
}

std::optional<RebalancePlan> plan_rebalance(const Mapping& map, const QccdTopology& topo,
                                            int incoming_trap, bool ancilla_only,
                                            const std::vector<int>& pending,
                                            const std::vector<long>& arrival, int protect) {
    if (map.occupancy(incoming_trap) < topo.capacity(incoming_trap)) return std::nullopt;
    int victim = -1;
    for (int ion : map.chains[incoming_trap]) {
        if (ion == protect) continue;
        if (ancilla_only && map.is_data(ion)) continue;
        if (victim < 0) {
            victim = ion;
            continue;
        }
        if (pending[ion] != pending[victim]) {
            if (pending[ion] < pending[victim]) victim = ion;
        } else if (arrival[ion] != arrival[victim]) {
            if (arrival[ion] > arrival[victim]) victim = ion;
        } else if (ion < victim) {
            victim = ion;
        }
    }
    if (victim < 0)
        throw std::runtime_error("rebalance: trap " + std::to_string(incoming_trap) +
                                 " has no evictable occupant");
    int dest = -1;
    for (int t : topo.neighbor_traps(incoming_trap)) {
        if (map.occupancy(t) >= topo.capacity(t)) continue;
        if (dest < 0 || map.occupancy(t) < map.occupancy(dest)) dest = t;
    }
    if (dest < 0) {
        // adjacent traps are packed: spill to the nearest trap with space
        std::queue<int> q;
        std::vector<char> seen(topo.nodes.size(), 0);
        q.push(incoming_trap);
        seen[incoming_trap] = 1;
        while (!q.empty() && dest < 0) {
            int u = q.front();
            q.pop();
            if (topo.is_trap(u) && u != incoming_trap && map.occupancy(u) < topo.capacity(u)) {
                dest = u;
                break;
            }
            for (auto [v, e] : topo.adj[u]) {
                (void)e;
                if (!seen[v]) {
                    seen[v] = 1;
                    q.push(v);
                }
            }
        }
    }
    if (dest < 0)
        throw std::runtime_error("rebalance: no trap reachable from trap " +
                                 std::to_string(incoming_trap) +
                                 " has spare capacity (machine saturated)");
    return RebalancePlan{victim, dest};
}

Mapping initial_mapping(const StabilizerCode& code, const QccdTopology& topo,
                        const Partition& part, int ancilla_budget) {
    Mapping map;
    map.num_data = code.n;
    map.ions.resize(code.n + ancilla_budget);
    map.chains.resize(topo.num_traps);
    for (int t = 0; t < topo.num_traps; t++)
        for (int d : part.trap_data[t]) map.place(d, t);
    for (int k = 0; k < ancilla_budget; k++) map.place(code.n + k, part.ancilla_trap[k]);
    map.check_invariants(topo);
    return map;
}

}  // namespace qstab
