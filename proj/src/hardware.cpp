#include "qstab/hardware.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qstab {

void TimingModel::validate() const {
    auto pos = [](time_us v, const char* name) {
        if (v <= 0) throw std::invalid_argument(std::string("timing field ") + name + " must be > 0");
    };
    pos(split, "split");
    pos(move_per_segment, "move_per_segment");
    pos(merge, "merge");
    pos(x_junction, "x_junction");
    pos(y_junction, "y_junction");
    pos(gate2, "gate2");
    pos(gate1, "gate1");
    pos(measure, "measure");
    pos(gateswap, "gateswap");
    pos(ionswap_per_ion, "ionswap_per_ion");
    pos(cool, "cool");
    if (gateswap != 3 * gate2)
        throw std::invalid_argument("gateswap must equal 3 * gate2");
}

int QccdTopology::total_capacity() const {
    int c = 0;
    for (int t = 0; t < num_traps; t++) c += nodes[t].capacity;
    return c;
}

void QccdTopology::add_edge(int a, int b) {
    int id = static_cast<int>(edges.size());
    edges.push_back({a, b});
    adj[a].push_back({b, id});
    adj[b].push_back({a, id});
}

std::vector<int> QccdTopology::neighbor_traps(int trap) const {
    // BFS through waypoints only; any trap reached first-hand is adjacent.
    std::vector<int> out;
    std::vector<char> seen(nodes.size(), 0);
    std::queue<int> q;
    seen[trap] = 1;
    q.push(trap);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (auto [v, e] : adj[u]) {
            (void)e;
            if (seen[v]) continue;
            seen[v] = 1;
            if (is_trap(v))
                out.push_back(v);
            else
                q.push(v);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void QccdTopology::validate() const {
    if (num_traps < 1) throw std::invalid_argument("topology needs at least one trap");
    for (int t = 0; t < num_traps; t++) {
        if (nodes[t].capacity < 2)
            throw std::invalid_argument("trap " + std::to_string(t) + " capacity must be >= 2");
    }
    // connectivity
    std::vector<char> seen(nodes.size(), 0);
    std::queue<int> q;
    seen[0] = 1;
    q.push(0);
    std::size_t reached = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (auto [v, e] : adj[u]) {
            (void)e;
            if (!seen[v]) {
                seen[v] = 1;
                reached++;
                q.push(v);
            }
        }
    }
    if (nodes.size() > 1 && reached != nodes.size())
        throw std::invalid_argument("topology graph is disconnected");
    // junction tags consistent with degree
    for (std::size_t i = 0; i < nodes.size(); i++) {
        if (nodes[i].kind == NodeKind::XJunction && adj[i].size() != 4)
            throw std::invalid_argument("X junction must have degree 4");
        if (nodes[i].kind == NodeKind::YJunction && adj[i].size() != 3)
            throw std::invalid_argument("Y junction must have degree 3");
    }
}

QccdTopology make_linear(int traps, int capacity) {
    if (traps < 1) throw std::invalid_argument("linear topology needs traps >= 1");
    QccdTopology topo;
    topo.num_traps = traps;
    topo.label = "linear:" + std::to_string(traps) + "x" + std::to_string(capacity);
    topo.nodes.assign(traps, {NodeKind::Trap, capacity});
    topo.adj.resize(traps);
    for (int t = 0; t + 1 < traps; t++) topo.add_edge(t, t + 1);
    topo.validate();
    return topo;
}

QccdTopology make_grid(int rows, int cols, int capacity) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("grid needs rows, cols >= 1");
    QccdTopology topo;
    topo.num_traps = rows * cols;
    topo.label = "grid:" + std::to_string(rows) + "x" + std::to_string(cols) + "x" +
                 std::to_string(capacity);
    topo.nodes.assign(topo.num_traps, {NodeKind::Trap, capacity});

    // waypoint (r, j) for r in [0, rows), j in [0, cols]; trap (r, c) spans
    // waypoints (r, c) and (r, c+1).
    int wp_base = topo.num_traps;
    auto wp = [&](int r, int j) { return wp_base + r * (cols + 1) + j; };
    topo.nodes.resize(wp_base + rows * (cols + 1), {NodeKind::Corner, 0});
    topo.adj.resize(topo.nodes.size());

    auto trap_id = [&](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; r++) {
        for (int c = 0; c < cols; c++) {
            topo.add_edge(trap_id(r, c), wp(r, c));
            topo.add_edge(trap_id(r, c), wp(r, c + 1));
        }
    }
    for (int r = 0; r + 1 < rows; r++)
        for (int j = 0; j <= cols; j++) topo.add_edge(wp(r, j), wp(r + 1, j));

    for (std::size_t i = wp_base; i < topo.nodes.size(); i++) {
        if (topo.adj[i].size() == 4)
            topo.nodes[i].kind = NodeKind::XJunction;
        else if (topo.adj[i].size() == 3)
            topo.nodes[i].kind = NodeKind::YJunction;
    }
    topo.validate();
    return topo;
}

static time_us node_cross_cost(const QccdTopology& topo, const TimingModel& timing, int node) {
    switch (topo.nodes[node].kind) {
        case NodeKind::XJunction: return timing.x_junction;
        case NodeKind::YJunction: return timing.y_junction;
        default: return 0;
    }
}

ShuttlePath shuttle_path(const QccdTopology& topo, const TimingModel& timing,
                         int from_trap, int to_trap) {
    if (!topo.is_trap(from_trap) || !topo.is_trap(to_trap))
        throw std::invalid_argument("shuttle_path endpoints must be traps");
    ShuttlePath path;
    if (from_trap == to_trap) return path;

    // Dijkstra keeping the full node sequence so cost ties resolve to the
    // lexicographically smallest sequence.
    struct Entry {
        time_us cost;
        std::vector<int> nodes;
        std::vector<int> edges;
        bool operator>(const Entry& o) const {
            if (cost != o.cost) return cost > o.cost;
            return nodes > o.nodes;
        }
    };
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> pq;
    std::vector<char> done(topo.nodes.size(), 0);
    pq.push({0, {from_trap}, {}});
    while (!pq.empty()) {
        Entry e = pq.top();
        pq.pop();
        int u = e.nodes.back();
        if (done[u]) continue;
        done[u] = 1;
        if (u == to_trap) {
            path.nodes = std::move(e.nodes);
            path.edge_ids = std::move(e.edges);
            return path;
        }
        for (auto [v, eid] : topo.adj[u]) {
            if (done[v]) continue;
            Entry next = e;
            next.cost += timing.move_per_segment;
            if (v != to_trap) next.cost += node_cross_cost(topo, timing, v);
            next.nodes.push_back(v);
            next.edges.push_back(eid);
            pq.push(std::move(next));
        }
    }
    throw std::runtime_error("traps " + std::to_string(from_trap) + " and " +
                             std::to_string(to_trap) + " are not connected");
}

time_us path_move_cost(const QccdTopology& topo, const TimingModel& timing,
                       const ShuttlePath& path) {
    if (path.nodes.empty()) return 0;
    time_us cost = timing.move_per_segment * static_cast<time_us>(path.edge_ids.size());
    for (std::size_t i = 1; i + 1 < path.nodes.size(); i++)
        cost += node_cross_cost(topo, timing, path.nodes[i]);
    return cost;
}

time_us intratrap_swap_time(const TimingModel& timing, SwapMethod method, int chain_length) {
    if (chain_length < 2) throw std::invalid_argument("intratrap swap needs chain length >= 2");
    if (method == SwapMethod::GateSwap) return timing.gateswap;
    return timing.ionswap_per_ion * static_cast<time_us>(chain_length);
}

time_us shuttle_time(const QccdTopology& topo, const TimingModel& timing,
                     const ShuttlePath& path, int intra_source_swaps, int intra_dest_swaps,
                     int source_chain_len, int dest_chain_len) {
    if (path.nodes.empty()) return 0;
    time_us t = timing.split + path_move_cost(topo, timing, path) + timing.merge;
    for (int i = 0; i < intra_source_swaps; i++)
        t += intratrap_swap_time(timing, timing.swap_method,
                                 source_chain_len > 1 ? source_chain_len : 2);
    for (int i = 0; i < intra_dest_swaps; i++)
        t += intratrap_swap_time(timing, timing.swap_method,
                                 dest_chain_len > 1 ? dest_chain_len : 2);
    return t;
}

void Mapping::place(int ion, int trap) {
    ions[ion].trap = trap;
    ions[ion].pos = static_cast<int>(chains[trap].size());
    ions[ion].in_transit = false;
    chains[trap].push_back(ion);
}

void Mapping::place_front(int ion, int trap) {
    auto& chain = chains[trap];
    chain.insert(chain.begin(), ion);
    for (std::size_t i = 0; i < chain.size(); i++) ions[chain[i]].pos = static_cast<int>(i);
    ions[ion].trap = trap;
    ions[ion].in_transit = false;
}

void Mapping::remove_from_chain(int ion) {
    auto& chain = chains[ions[ion].trap];
    chain.erase(chain.begin() + ions[ion].pos);
    for (std::size_t i = ions[ion].pos; i < chain.size(); i++) ions[chain[i]].pos = static_cast<int>(i);
    ions[ion].trap = -1;
    ions[ion].pos = -1;
}

void Mapping::swap_with_back(int ion) {
    auto& chain = chains[ions[ion].trap];
    int other = chain.back();
    std::swap(chain[ions[ion].pos], chain.back());
    std::swap(ions[ion].pos, ions[other].pos);
}

bool Mapping::trap_assignment_equals(const Mapping& other) const {
    if (ions.size() != other.ions.size()) return false;
    for (std::size_t i = 0; i < ions.size(); i++) {
        if (ions[i].trap != other.ions[i].trap) return false;
        if (ions[i].in_transit != other.ions[i].in_transit) return false;
    }
    return true;
}

void Mapping::check_invariants(const QccdTopology& topo) const {
    std::vector<int> seen(ions.size(), 0);
    for (int t = 0; t < topo.num_traps; t++) {
        if (occupancy(t) > topo.capacity(t))
            throw std::logic_error("trap " + std::to_string(t) + " over capacity");
        for (std::size_t p = 0; p < chains[t].size(); p++) {
            int ion = chains[t][p];
            if (ions[ion].trap != t || ions[ion].pos != static_cast<int>(p))
                throw std::logic_error("chain position inconsistent for ion " + std::to_string(ion));
            seen[ion]++;
        }
    }
    for (std::size_t i = 0; i < ions.size(); i++) {
        bool live = !ions[i].in_transit && ions[i].trap >= 0;
        if (live && seen[i] != 1)
            throw std::logic_error("ion " + std::to_string(i) + " not in exactly one chain");
    }
}

static TimingModel timing_from_json(const nlohmann::json& j) {
    TimingModel t;
    auto get = [&](const char* key, time_us& field) {
        if (j.contains(key)) {
            double v = j.at(key).get<double>();
            field = static_cast<time_us>(v + 0.5);
        }
    };
    get("split", t.split);
    get("move_per_segment", t.move_per_segment);
    get("merge", t.merge);
    get("x_junction", t.x_junction);
    get("y_junction", t.y_junction);
    get("gate2", t.gate2);
    get("gate1", t.gate1);
    get("measure", t.measure);
    get("ionswap_per_ion", t.ionswap_per_ion);
    get("cool", t.cool);
    if (j.contains("swap_method")) {
        std::string m = j.at("swap_method").get<std::string>();
        if (m == "gateswap")
            t.swap_method = SwapMethod::GateSwap;
        else if (m == "ionswap")
            t.swap_method = SwapMethod::IonSwap;
        else
            throw std::invalid_argument("swap_method must be 'gateswap' or 'ionswap'");
    }
    t.refresh_derived();
    t.validate();
    return t;
}

HardwareSpec parse_hardware_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    HardwareSpec hw;
    if (j.contains("timing")) hw.timing = timing_from_json(j.at("timing"));
    std::string kind = j.at("topology").get<std::string>();
    int capacity = j.value("capacity", 5);
    if (kind == "linear") {
        hw.topology = make_linear(j.at("traps").get<int>(), capacity);
    } else if (kind == "grid") {
        hw.topology = make_grid(j.at("rows").get<int>(), j.at("cols").get<int>(), capacity);
    } else {
        throw std::invalid_argument("topology must be 'linear' or 'grid'");
    }
    return hw;
}

HardwareSpec parse_hardware(const std::string& spec_or_path) {
    auto parse_shorthand = [](const std::string& s) -> HardwareSpec {
        HardwareSpec hw;
        std::string rest = s.substr(s.find(':') + 1);
        std::vector<int> parts;
        std::stringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, 'x')) parts.push_back(std::stoi(item));
        if (s.rfind("linear:", 0) == 0) {
            if (parts.size() != 2) throw std::invalid_argument("expected linear:<traps>x<capacity>");
            hw.topology = make_linear(parts[0], parts[1]);
        } else {
            if (parts.size() != 3)
                throw std::invalid_argument("expected grid:<rows>x<cols>x<capacity>");
            hw.topology = make_grid(parts[0], parts[1], parts[2]);
        }
        return hw;
    };
    if (spec_or_path.rfind("linear:", 0) == 0 || spec_or_path.rfind("grid:", 0) == 0)
        return parse_shorthand(spec_or_path);
    std::ifstream in(spec_or_path);
    if (!in) throw std::runtime_error("cannot open hardware config: " + spec_or_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_hardware_json(ss.str());
}

}  // namespace qstab
