#include "qstab/simulate.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qstab {

namespace {

// Shared list-scheduling core. Tracks per-ion ready times, per-trap gate
// and chain slots, per-element transit slots, the evolving mapping, and
// per-trap busy histograms.
struct Engine {
    const Schedule& sched;
    const QccdTopology& topo;
    const TimingModel& timing;

    // One operation per trap at a time: gates, chain reconfiguration and
    // cooling all contend on the trap slot. Measurement and reset act on
    // the ion alone.
    std::vector<time_us> ion_ready;
    std::vector<time_us> trap_slot;  // per trap
    std::vector<time_us> edge_slot;  // per edge
    std::vector<time_us> node_slot;  // per waypoint node
    std::vector<time_us> trap_busy;
    Mapping map;
    time_us round_floor = 0;
    int current_round = 0;
    time_us round_max = 0;
    std::vector<time_us> per_round;
    int cools = 0;
    // Dispatch wavefront: ops become eligible in schedule order, so an op
    // may not complete before every earlier op has started. Measurement
    // and reset are passive and exempt. Interleaved op lists still
    // parallelize across traps; block-ordered lists stay nearly serial.
    time_us wave = 0;

    Engine(const Schedule& s, const QccdTopology& t, const TimingModel& tm,
           const Mapping& initial)
        : sched(s), topo(t), timing(tm), map(initial) {
        ion_ready.assign(s.num_ions(), 0);
        trap_slot.assign(t.num_traps, 0);
        edge_slot.assign(t.edges.size(), 0);
        node_slot.assign(t.nodes.size(), 0);
        trap_busy.assign(t.num_traps, 0);
    }

    void check_ion(int ion) const {
        if (ion < 0 || ion >= sched.num_ions())
            throw std::invalid_argument("schedule references unknown ion " + std::to_string(ion));
    }
    void check_trap(int trap) const {
        if (trap < 0 || trap >= topo.num_traps)
            throw std::invalid_argument("schedule references unknown trap " + std::to_string(trap));
    }

    void flush_round(int next_round) {
        while (current_round < next_round) {
            per_round.push_back(round_max - round_floor);
            round_floor = round_max;
            current_round++;
        }
    }

    // Computes the op's start/end, applies resource and mapping updates.
    TimedOp apply(const Op& op, int schedule_index) {
        if (op.round != current_round) flush_round(op.round);
        time_us start = round_floor;
        time_us dur = 0;
        auto want_ion = [&](int ion) {
            check_ion(ion);
            start = std::max(start, ion_ready[ion]);
        };
        auto want = [&](std::vector<time_us>& slot, int id) { start = std::max(start, slot[id]); };

        switch (op.kind) {
            case OpKind::Split:
                check_trap(op.trap);
                want_ion(op.ion_a);
                want(trap_slot, op.trap);
                dur = timing.split;
                break;
            case OpKind::Merge:
                check_trap(op.trap);
                want_ion(op.ion_a);
                want(trap_slot, op.trap);
                dur = timing.merge;
                break;
            case OpKind::Move: {
                want_ion(op.ion_a);
                if (op.elem_edge >= 0) {
                    if (op.elem_edge >= static_cast<int>(topo.edges.size()))
                        throw std::invalid_argument("schedule references unknown segment");
                    want(edge_slot, op.elem_edge);
                    dur = timing.move_per_segment;
                } else {
                    if (op.elem_node < 0 || op.elem_node >= static_cast<int>(topo.nodes.size()))
                        throw std::invalid_argument("schedule references unknown waypoint");
                    if (topo.is_trap(op.elem_node)) {
                        // pass-through: instantaneous, but the trap must be idle
                        want(trap_slot, op.elem_node);
                        dur = 0;
                    } else {
                        want(node_slot, op.elem_node);
                        NodeKind k = topo.nodes[op.elem_node].kind;
                        dur = k == NodeKind::XJunction   ? timing.x_junction
                              : k == NodeKind::YJunction ? timing.y_junction
                                                         : 0;
                    }
                }
                break;
            }
            case OpKind::IntraSwap: {
                check_trap(op.trap);
                want_ion(op.ion_a);
                want_ion(op.ion_b);
                want(trap_slot, op.trap);
                if (op.swap_method == SwapMethod::GateSwap) {
                    dur = timing.gateswap;
                } else {
                    dur = intratrap_swap_time(timing, SwapMethod::IonSwap,
                                              std::max(2, map.occupancy(op.trap)));
                }
                break;
            }
            case OpKind::Gate1:
                check_trap(op.trap);
                want_ion(op.ion_a);
                want(trap_slot, op.trap);
                dur = timing.gate1;
                break;
            case OpKind::Gate2:
                check_trap(op.trap);
                want_ion(op.ion_a);
                want_ion(op.ion_b);
                want(trap_slot, op.trap);
                dur = timing.gate2;
                break;
            case OpKind::Measure:
                check_trap(op.trap);
                want_ion(op.ion_a);
                dur = timing.measure;
                break;
            case OpKind::Reset:
                want_ion(op.ion_a);
                dur = 0;
                break;
            case OpKind::Cool:
                check_trap(op.trap);
                want_ion(op.ion_a);
                want(trap_slot, op.trap);
                dur = timing.cool;
                break;
        }

        if (op.kind != OpKind::Measure && op.kind != OpKind::Reset) {
            start = std::max(start, wave - dur);
            wave = start;
        }
        time_us end = start + dur;
        switch (op.kind) {
            case OpKind::Split:
                trap_slot[op.trap] = end;
                ion_ready[op.ion_a] = end;
                trap_busy[op.trap] += dur;
                if (map.ions[op.ion_a].trap == op.trap) {
                    map.remove_from_chain(op.ion_a);
                    map.ions[op.ion_a].in_transit = true;
                }
                break;
            case OpKind::Merge:
                trap_slot[op.trap] = end;
                ion_ready[op.ion_a] = end;
                trap_busy[op.trap] += dur;
                if (map.ions[op.ion_a].in_transit || map.ions[op.ion_a].trap < 0) {
                    if (op.at_front)
                        map.place_front(op.ion_a, op.trap);
                    else
                        map.place(op.ion_a, op.trap);
                }
                break;
            case OpKind::Move:
                if (op.elem_edge >= 0)
                    edge_slot[op.elem_edge] = end;
                else if (!topo.is_trap(op.elem_node))
                    node_slot[op.elem_node] = end;
                ion_ready[op.ion_a] = end;
                break;
            case OpKind::IntraSwap:
                trap_slot[op.trap] = end;
                ion_ready[op.ion_a] = end;
                ion_ready[op.ion_b] = end;
                trap_busy[op.trap] += dur;
                if (map.ions[op.ion_a].trap == op.trap) map.swap_with_back(op.ion_a);
                break;
            case OpKind::Gate1:
                trap_slot[op.trap] = end;
                ion_ready[op.ion_a] = end;
                trap_busy[op.trap] += dur;
                break;
            case OpKind::Gate2:
                trap_slot[op.trap] = end;
                ion_ready[op.ion_a] = end;
                ion_ready[op.ion_b] = end;
                trap_busy[op.trap] += dur;
                break;
            case OpKind::Measure:
                ion_ready[op.ion_a] = end;
                trap_busy[op.trap] += dur;
                break;
            case OpKind::Cool:
                trap_slot[op.trap] = end;
                ion_ready[op.ion_a] = end;
                trap_busy[op.trap] += dur;
                cools++;
                break;
            case OpKind::Reset:
                ion_ready[op.ion_a] = end;
                break;
        }
        round_max = std::max(round_max, end);
        TimedOp ev;
        ev.start = start;
        ev.end = end;
        ev.op = op;
        ev.schedule_index = schedule_index;
        return ev;
    }
};

Mapping mapping_from_schedule(const Schedule& sched, const QccdTopology& topo) {
    Mapping map;
    map.num_data = sched.num_data;
    map.ions.resize(sched.num_ions());
    for (auto& ion : map.ions) ion.in_transit = false;
    map.chains.resize(topo.num_traps);
    if (static_cast<int>(sched.initial_chains.size()) > topo.num_traps)
        throw std::invalid_argument("schedule references more traps than the topology has");
    for (std::size_t t = 0; t < sched.initial_chains.size(); t++)
        for (int ion : sched.initial_chains[t]) {
            if (ion < 0 || ion >= sched.num_ions())
                throw std::invalid_argument("initial chain references unknown ion");
            map.place(ion, static_cast<int>(t));
        }
    return map;
}

}  // namespace

LatencyReport simulate_traced(const Schedule& schedule, const QccdTopology& topo,
                              const TimingModel& timing, std::vector<TimedOp>* events) {
    Mapping initial = mapping_from_schedule(schedule, topo);
    Engine eng(schedule, topo, timing, initial);

    // shuttles whose cooling is already in the schedule
    std::set<int> cooled;
    for (const auto& op : schedule.ops)
        if (op.kind == OpKind::Cool && op.shuttle >= 0) cooled.insert(op.shuttle);

    for (std::size_t i = 0; i < schedule.ops.size(); i++) {
        const Op& op = schedule.ops[i];
        TimedOp ev = eng.apply(op, static_cast<int>(i));
        if (events) events->push_back(ev);
        if (op.kind == OpKind::Merge && op.shuttle >= 0 && !cooled.count(op.shuttle)) {
            Op cool;
            cool.kind = OpKind::Cool;
            cool.round = op.round;
            cool.ion_a = op.ion_a;
            cool.trap = op.trap;
            cool.shuttle = op.shuttle;
            TimedOp cev = eng.apply(cool, -1);
            if (events) events->push_back(cev);
        }
    }
    if (schedule.rounds > 0) eng.flush_round(schedule.rounds);
    if (eng.per_round.empty()) eng.per_round.push_back(eng.round_max);

    LatencyReport r;
    r.total_us = eng.round_max;
    r.per_round_us = eng.per_round;
    r.shuttle_count = schedule.shuttle_count();
    r.intratrap_swap_count = schedule.swap_count();
    r.cooling_count = eng.cools;
    r.trap_busy_us = eng.trap_busy;
    r.final_mapping = eng.map;
    r.code_label = schedule.code_label;
    r.compiler = compiler_name(schedule.compiler);
    r.ancilla_budget = schedule.ancilla_budget;
    r.num_data = schedule.num_data;
    r.num_ancilla = schedule.num_ancilla;
    return r;
}

LatencyReport simulate(const Schedule& schedule, const QccdTopology& topo,
                       const TimingModel& timing) {
    return simulate_traced(schedule, topo, timing, nullptr);
}

std::string dump_events(const Schedule& schedule, const QccdTopology& topo,
                        const std::vector<TimedOp>& events) {
    std::ostringstream out;
    out << "# start_us end_us op ions resource\n";
    auto ion_name = [&](int ion) {
        if (ion < 0) return std::string("-");
        if (ion < schedule.num_data) return "d" + std::to_string(ion);
        return "a" + std::to_string(ion - schedule.num_data);
    };
    std::vector<const TimedOp*> order;
    for (const auto& e : events) order.push_back(&e);
    std::stable_sort(order.begin(), order.end(),
                     [](const TimedOp* a, const TimedOp* b) { return a->start < b->start; });
    for (const TimedOp* e : order) {
        const Op& op = e->op;
        out << e->start << " " << e->end << " ";
        switch (op.kind) {
            case OpKind::Split: out << "split " << ion_name(op.ion_a) << " t" << op.trap; break;
            case OpKind::Merge: out << "merge " << ion_name(op.ion_a) << " t" << op.trap; break;
            case OpKind::Move:
                out << "move " << ion_name(op.ion_a) << " ";
                if (op.elem_edge >= 0) {
                    out << "seg" << op.elem_edge << ":" << topo.edges[op.elem_edge].a << "-"
                        << topo.edges[op.elem_edge].b;
                } else {
                    out << "node" << op.elem_node;
                }
                break;
            case OpKind::IntraSwap:
                out << "swap " << ion_name(op.ion_a) << "," << ion_name(op.ion_b) << " t" << op.trap;
                break;
            case OpKind::Gate1: out << "g1 " << ion_name(op.ion_a) << " t" << op.trap; break;
            case OpKind::Gate2:
                out << "g2 " << ion_name(op.ion_a) << "," << ion_name(op.ion_b) << " t" << op.trap;
                break;
            case OpKind::Measure: out << "meas " << ion_name(op.ion_a) << " t" << op.trap; break;
            case OpKind::Reset: out << "reset " << ion_name(op.ion_a) << " t" << op.trap; break;
            case OpKind::Cool:
                out << "cool " << ion_name(op.ion_a) << " t" << op.trap
                    << (e->schedule_index < 0 ? " auto" : "");
                break;
        }
        out << "\n";
    }
    return out.str();
}

std::string VerifyReport::summary() const {
    if (violations.empty()) return "ok: 0 violations";
    std::ostringstream out;
    out << violations.size() << " violation(s); first at op " << violations[0].op_index << " (t="
        << violations[0].at_us << "us): " << violations[0].message;
    return out.str();
}

VerifyReport verify(const Schedule& schedule, const StabilizerCode& code,
                    const QccdTopology& topo, const TimingModel& timing) {
    VerifyReport rep;
    std::vector<TimedOp> events;
    LatencyReport lat;
    try {
        lat = simulate_traced(schedule, topo, timing, &events);
    } catch (const std::exception& e) {
        rep.violations.push_back({0, 0, std::string("simulation failed: ") + e.what()});
        return rep;
    }

    Mapping map = mapping_from_schedule(schedule, topo);
    auto add = [&](std::size_t idx, time_us at, const std::string& msg) {
        rep.violations.push_back({idx, at, msg});
    };

    struct AncState {
        int active_stab = -1;
        bool measured = false;
        bool reset = false;
    };
    std::vector<AncState> anc(schedule.num_ancilla);
    std::map<std::pair<int, int>, int> measures;  // (round, stab) -> count
    std::map<int, int> shuttle_cools;
    std::map<int, int> shuttle_merges;

    auto is_anc = [&](int ion) { return ion >= schedule.num_data; };
    auto on_gate = [&](std::size_t idx, time_us at, int ancilla, int stab) {
        AncState& st = anc[ancilla - schedule.num_data];
        if (st.active_stab == stab && !st.measured) return;
        if (st.active_stab != -1 && st.measured && !st.reset)
            add(idx, at, "ancilla reused for stabilizer " + std::to_string(stab) +
                             " without reset after measuring stabilizer " +
                             std::to_string(st.active_stab));
        else if (st.active_stab != -1 && st.active_stab != stab && !st.measured)
            add(idx, at, "ancilla reused for stabilizer " + std::to_string(stab) +
                             " without measure+reset of stabilizer " +
                             std::to_string(st.active_stab));
        st.active_stab = stab;
        st.measured = false;
        st.reset = false;
    };

    std::size_t ev_idx = 0;
    for (std::size_t i = 0; i < schedule.ops.size(); i++) {
        const Op& op = schedule.ops[i];
        // events interleave implicit cools; find the matching entry
        while (ev_idx < events.size() && events[ev_idx].schedule_index != static_cast<int>(i))
            ev_idx++;
        time_us at = ev_idx < events.size() ? events[ev_idx].start : 0;

        switch (op.kind) {
            case OpKind::Split: {
                auto& ion = map.ions[op.ion_a];
                if (ion.in_transit || ion.trap != op.trap) {
                    add(i, at, "split of ion not resident in trap " + std::to_string(op.trap));
                    break;
                }
                int len = map.occupancy(op.trap);
                bool at_end = op.at_front ? ion.pos == 0 : ion.pos == len - 1;
                if (!at_end) add(i, at, "split of ion not at a chain end");
                if (schedule.moves_only_ancilla() && !is_anc(op.ion_a))
                    add(i, at, "data qubit moved under an ancilla-only policy");
                map.remove_from_chain(op.ion_a);
                map.ions[op.ion_a].in_transit = true;
                break;
            }
            case OpKind::Merge: {
                if (!map.ions[op.ion_a].in_transit) {
                    add(i, at, "merge of ion that is not in transit");
                    break;
                }
                if (map.occupancy(op.trap) + 1 > topo.capacity(op.trap))
                    add(i, at, "merge exceeds capacity of trap " + std::to_string(op.trap));
                if (schedule.moves_only_ancilla() && !is_anc(op.ion_a))
                    add(i, at, "data qubit moved under an ancilla-only policy");
                if (op.at_front)
                    map.place_front(op.ion_a, op.trap);
                else
                    map.place(op.ion_a, op.trap);
                shuttle_merges[op.shuttle]++;
                break;
            }
            case OpKind::Move:
                if (!map.ions[op.ion_a].in_transit)
                    add(i, at, "move of ion that is not in transit");
                if (schedule.moves_only_ancilla() && !is_anc(op.ion_a))
                    add(i, at, "data qubit moved under an ancilla-only policy");
                break;
            case OpKind::IntraSwap: {
                auto& a = map.ions[op.ion_a];
                auto& b = map.ions[op.ion_b];
                if (a.in_transit || b.in_transit || a.trap != op.trap || b.trap != op.trap)
                    add(i, at, "intratrap swap of ions not co-trapped in trap " +
                                   std::to_string(op.trap));
                else
                    map.swap_with_back(op.ion_a);
                break;
            }
            case OpKind::Gate2: {
                bool data_ok = !is_anc(op.ion_a) && is_anc(op.ion_b);
                if (!data_ok) add(i, at, "two-qubit gate endpoints must be (data, ancilla)");
                auto& a = map.ions[op.ion_a];
                auto& b = map.ions[op.ion_b];
                if (a.in_transit || b.in_transit)
                    add(i, at, "two-qubit gate on an ion in transit");
                else if (a.trap != b.trap || a.trap != op.trap)
                    add(i, at, "two-qubit gate on ions not co-trapped (d" +
                                   std::to_string(op.ion_a) + " in t" + std::to_string(a.trap) +
                                   ", ancilla in t" + std::to_string(b.trap) + ")");
                if (op.stab < 0 || op.stab >= code.m()) {
                    add(i, at, "gate references unknown stabilizer");
                } else {
                    bool in_support = false;
                    for (const auto& [q, p] : code.stabilizers[op.stab].support) {
                        (void)p;
                        if (q == op.ion_a) in_support = true;
                    }
                    if (!in_support)
                        add(i, at, "gate on qubit outside stabilizer " + std::to_string(op.stab) +
                                       " support");
                }
                if (data_ok) on_gate(i, at, op.ion_b, op.stab);
                break;
            }
            case OpKind::Gate1: {
                auto& a = map.ions[op.ion_a];
                if (a.in_transit)
                    add(i, at, "single-qubit gate on an ion in transit");
                else if (a.trap != op.trap)
                    add(i, at, "single-qubit gate in wrong trap");
                if (is_anc(op.ion_a)) on_gate(i, at, op.ion_a, op.stab);
                break;
            }
            case OpKind::Measure: {
                if (!is_anc(op.ion_a)) {
                    add(i, at, "measurement of a data qubit");
                    break;
                }
                auto& a = map.ions[op.ion_a];
                if (a.in_transit || a.trap != op.trap)
                    add(i, at, "measurement of ion not resident in trap " + std::to_string(op.trap));
                AncState& st = anc[op.ion_a - schedule.num_data];
                if (st.active_stab != op.stab)
                    add(i, at, "measurement for stabilizer " + std::to_string(op.stab) +
                                   " without its gates");
                if (st.measured) add(i, at, "double measurement without reset");
                st.measured = true;
                measures[{op.round, op.stab}]++;
                break;
            }
            case OpKind::Reset: {
                if (!is_anc(op.ion_a)) {
                    add(i, at, "reset of a data qubit");
                    break;
                }
                anc[op.ion_a - schedule.num_data].reset = true;
                break;
            }
            case OpKind::Cool:
                if (op.shuttle >= 0) shuttle_cools[op.shuttle]++;
                break;
        }
    }

    for (int r = 0; r < schedule.rounds; r++) {
        for (int s = 0; s < code.m(); s++) {
            int c = 0;
            auto it = measures.find({r, s});
            if (it != measures.end()) c = it->second;
            if (c != 1)
                add(schedule.ops.size(), lat.total_us,
                    "round " + std::to_string(r) + ": stabilizer " + std::to_string(s) +
                        " measured " + std::to_string(c) + " times");
        }
    }
    for (auto& [sh, merges] : shuttle_merges) {
        int c = shuttle_cools.count(sh) ? shuttle_cools[sh] : 1;  // implicit cool counts
        if (shuttle_cools.count(sh) && shuttle_cools[sh] != merges)
            add(schedule.ops.size(), lat.total_us,
                "shuttle " + std::to_string(sh) + " has " + std::to_string(shuttle_cools[sh]) +
                    " cools for " + std::to_string(merges) + " merge(s)");
        (void)c;
    }
    return rep;
}

time_us theoretical_min_latency(const StabilizerCode& code, const TimingModel& timing) {
    int w = code.max_weight();
    if (w < 1) throw std::invalid_argument("code has no stabilizer of weight >= 1");
    return static_cast<time_us>(w) * timing.gate2 + 2 * timing.gate1 + timing.measure;
}

std::string report_to_json(const LatencyReport& r) {
    nlohmann::json j;
    j["total_us"] = r.total_us;
    j["rounds"] = r.per_round_us;
    j["shuttles"] = r.shuttle_count;
    j["swaps"] = r.intratrap_swap_count;
    j["cools"] = r.cooling_count;
    j["trap_busy_us"] = r.trap_busy_us;
    j["code"] = r.code_label;
    j["compiler"] = r.compiler;
    j["budget"] = r.ancilla_budget;
    j["num_data"] = r.num_data;
    j["num_ancilla"] = r.num_ancilla;
    nlohmann::json fm = nlohmann::json::object();
    for (std::size_t i = 0; i < r.final_mapping.ions.size(); i++) {
        std::string name = static_cast<int>(i) < r.final_mapping.num_data
                               ? "d" + std::to_string(i)
                               : "a" + std::to_string(i - r.final_mapping.num_data);
        fm[name] = r.final_mapping.ions[i].trap;
    }
    j["final_mapping"] = fm;
    return j.dump(2) + "\n";
}

LatencyReport report_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    LatencyReport r;
    r.total_us = j.at("total_us").get<time_us>();
    r.per_round_us = j.at("rounds").get<std::vector<time_us>>();
    r.shuttle_count = j.value("shuttles", 0);
    r.intratrap_swap_count = j.value("swaps", 0);
    r.cooling_count = j.value("cools", 0);
    if (j.contains("trap_busy_us"))
        r.trap_busy_us = j.at("trap_busy_us").get<std::vector<time_us>>();
    r.code_label = j.value("code", "");
    r.compiler = j.value("compiler", "");
    r.ancilla_budget = j.value("budget", 0);
    r.num_data = j.value("num_data", 0);
    r.num_ancilla = j.value("num_ancilla", 0);
    return r;
}

}  // namespace qstab
