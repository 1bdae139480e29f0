#include "qstab/compile.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace qstab {

std::vector<GateStep> stabilizer_circuit(const Stabilizer& stab, int ancilla_ion) {
    std::vector<GateStep> steps;
    bool pure_z = stab.is_pure(Pauli::Z);
    if (!pure_z)
        steps.push_back({GateStep::Kind::Gate1, ancilla_ion, -1, ancilla_ion, stab.id});
    for (const auto& [q, p] : stab.support) {
        bool data_pair = !pure_z && p != Pauli::X;
        if (data_pair) steps.push_back({GateStep::Kind::Gate1, q, -1, ancilla_ion, stab.id});
        steps.push_back({GateStep::Kind::Gate2, -1, q, ancilla_ion, stab.id});
        if (data_pair) steps.push_back({GateStep::Kind::Gate1, q, -1, ancilla_ion, stab.id});
    }
    if (!pure_z)
        steps.push_back({GateStep::Kind::Gate1, ancilla_ion, -1, ancilla_ion, stab.id});
    steps.push_back({GateStep::Kind::Measure, -1, -1, ancilla_ion, stab.id});
    steps.push_back({GateStep::Kind::Reset, -1, -1, ancilla_ion, stab.id});
    return steps;
}

namespace {

// Compiler-side machine state: evolving mapping, shuttle planning with
// rebalancing, pending-interaction bookkeeping.
struct Machine {
    const StabilizerCode& code;
    const QccdTopology& topo;
    const TimingModel& timing;
    bool ancilla_only;
    Mapping map;
    std::vector<int> pending;    // remaining two-qubit gates per ion
    std::vector<long> arrival;   // per ion, larger = more recent
    long stamp = 0;
    int next_shuttle = 0;
    int round = 0;
    std::vector<Op>* out = nullptr;

    Machine(const StabilizerCode& c, const QccdTopology& t, const TimingModel& tm,
            bool anc_only, Mapping m)
        : code(c), topo(t), timing(tm), ancilla_only(anc_only), map(std::move(m)) {
        pending.assign(map.ions.size(), 0);
        arrival.assign(map.ions.size(), 0);
        for (int trap = 0; trap < topo.num_traps; trap++)
            for (int ion : map.chains[trap]) arrival[ion] = ++stamp;
    }

    bool is_anc(int ion) const { return ion >= map.num_data; }
    int trap_of(int ion) const { return map.ions[ion].trap; }

    void emit(Op op) {
        op.round = round;
        out->push_back(op);
    }

    bool interior(int ion) const {
        const auto& st = map.ions[ion];
        int len = map.occupancy(st.trap);
        return st.pos != 0 && st.pos != len - 1;
    }

    // Myopic cost of relocating ion into dest (no rebalance accounting).
    time_us move_cost(int ion, int dest) const {
        int src = trap_of(ion);
        if (src == dest) return 0;
        ShuttlePath path = shuttle_path(topo, timing, src, dest);
        int swaps = interior(ion) ? 1 : 0;
        return shuttle_time(topo, timing, path, swaps, 0, map.occupancy(src), 0);
    }

    void emit_path_moves(const ShuttlePath& path, int ion, int sh) {
        for (std::size_t i = 0; i < path.edge_ids.size(); i++) {
            Op mv;
            mv.kind = OpKind::Move;
            mv.ion_a = ion;
            mv.elem_edge = path.edge_ids[i];
            mv.shuttle = sh;
            emit(mv);
            int node = path.nodes[i + 1];
            if (node == path.nodes.back()) continue;
            // junction crossings cost time; sliding through another trap's
            // zone is free but must wait for that trap to go quiet
            if (topo.is_trap(node) || topo.nodes[node].kind != NodeKind::Corner) {
                Op jn;
                jn.kind = OpKind::Move;
                jn.ion_a = ion;
                jn.elem_node = node;
                jn.shuttle = sh;
                emit(jn);
            }
        }
    }

    // Moves ion into dest, swapping it to a chain end first if needed and
    // evicting a resident if dest is full. `protect` is never evicted.
    void shuttle(int ion, int dest, int protect = -1) {
        int src = trap_of(ion);
        if (src == dest) return;

        if (interior(ion)) {
            int back = map.chains[src].back();
            Op sw;
            sw.kind = OpKind::IntraSwap;
            sw.ion_a = ion;
            sw.ion_b = back;
            sw.trap = src;
            sw.swap_method = timing.swap_method;
            emit(sw);
            map.swap_with_back(ion);
        }
        bool from_front = map.ions[ion].pos == 0 && map.occupancy(src) > 1;

        ShuttlePath path = shuttle_path(topo, timing, src, dest);
        int sh = next_shuttle++;
        Op sp;
        sp.kind = OpKind::Split;
        sp.ion_a = ion;
        sp.trap = src;
        sp.shuttle = sh;
        sp.at_front = from_front;
        emit(sp);
        map.remove_from_chain(ion);
        map.ions[ion].in_transit = true;

        emit_path_moves(path, ion, sh);

        if (auto plan = plan_rebalance(map, topo, dest, ancilla_only, pending, arrival, protect))
            shuttle(plan->victim, plan->dest, protect);

        Op mg;
        mg.kind = OpKind::Merge;
        mg.ion_a = ion;
        mg.trap = dest;
        mg.shuttle = sh;
        emit(mg);
        map.place(ion, dest);
        arrival[ion] = ++stamp;

        Op cl;
        cl.kind = OpKind::Cool;
        cl.ion_a = ion;
        cl.trap = dest;
        cl.shuttle = sh;
        emit(cl);
    }
};

bool needs_basis_pair(const Stabilizer& s) { return !s.is_pure(Pauli::Z); }

void emit_gate1(Machine& st, int ion, int stab) {
    Op op;
    op.kind = OpKind::Gate1;
    op.ion_a = ion;
    op.trap = st.trap_of(ion);
    op.stab = stab;
    st.emit(op);
}

void emit_gate2(Machine& st, int data, int anc, int stab) {
    Op op;
    op.kind = OpKind::Gate2;
    op.ion_a = data;
    op.ion_b = anc;
    op.trap = st.trap_of(anc);
    op.stab = stab;
    st.emit(op);
}

void emit_measure_reset(Machine& st, int anc, int stab) {
    Op m;
    m.kind = OpKind::Measure;
    m.ion_a = anc;
    m.trap = st.trap_of(anc);
    m.stab = stab;
    st.emit(m);
    Op r;
    r.kind = OpKind::Reset;
    r.ion_a = anc;
    r.trap = st.trap_of(anc);
    r.stab = stab;
    st.emit(r);
}

// Emits the two-qubit gate plus any data-side basis pair.
void emit_support_gate(Machine& st, const Stabilizer& s, int term_idx, int anc) {
    const auto& [q, p] = s.support[term_idx];
    bool data_pair = needs_basis_pair(s) && p != Pauli::X;
    if (data_pair) emit_gate1(st, q, s.id);
    emit_gate2(st, q, anc, s.id);
    if (data_pair) emit_gate1(st, q, s.id);
    st.pending[q]--;
    st.pending[anc]--;
}

// ---------------------------------------------------------------------
// baseline / MAO: lookahead list scheduler over the static gate DAG
// ---------------------------------------------------------------------

struct DagGate {
    int stab;
    int pos;   // support index
    int data;
    int anc;
    int anc_next = -1;   // next gate id on the ancilla chain
    int data_next = -1;  // next gate id on the data chain
};

// One forward round. Mutates st to the end-of-round state.
void baseline_round(Machine& st, int budget, bool movable_data,
                    std::vector<std::pair<int, int>>& deferred /* (anc, stab) */) {
    const StabilizerCode& code = st.code;
    int n = code.n;

    // ancilla k serves stabilizers k, k+budget, ... in ascending order
    std::vector<std::vector<int>> anc_stabs(budget);
    for (int s = 0; s < code.m(); s++) anc_stabs[s % budget].push_back(s);

    std::vector<DagGate> gates;
    std::vector<std::vector<int>> anc_chain(budget);
    std::vector<std::vector<int>> data_chain(n);
    for (int k = 0; k < budget; k++) {
        for (int s : anc_stabs[k]) {
            const auto& stab = code.stabilizers[s];
            for (int i = 0; i < stab.weight(); i++) {
                int gid = static_cast<int>(gates.size());
                gates.push_back({s, i, stab.support[i].first, n + k, -1, -1});
                anc_chain[k].push_back(gid);
                st.pending[stab.support[i].first]++;
                st.pending[n + k]++;
            }
        }
    }
    // data chains ordered by stabilizer id
    {
        std::vector<std::vector<std::pair<int, int>>> per_data(n);  // (stab, gid)
        for (int g = 0; g < static_cast<int>(gates.size()); g++)
            per_data[gates[g].data].push_back({gates[g].stab, g});
        for (int d = 0; d < n; d++) {
            std::sort(per_data[d].begin(), per_data[d].end());
            for (auto& [s, g] : per_data[d]) data_chain[d].push_back(g);
        }
    }
    for (int k = 0; k < budget; k++)
        for (std::size_t i = 0; i + 1 < anc_chain[k].size(); i++)
            gates[anc_chain[k][i]].anc_next = anc_chain[k][i + 1];
    for (int d = 0; d < n; d++)
        for (std::size_t i = 0; i + 1 < data_chain[d].size(); i++)
            gates[data_chain[d][i]].data_next = data_chain[d][i + 1];

    std::vector<std::size_t> anc_head(budget, 0), data_head(n, 0);

    // 1 for the blocking gate itself plus 2^-depth per transitive
    // successor (breadth-first depth over the two chains).
    auto weight_of = [&](int gid) {
        double w = 1.0;
        std::set<int> seen{gid};
        std::vector<int> frontier{gid};
        double scale = 0.5;
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int g : frontier) {
                for (int s : {gates[g].anc_next, gates[g].data_next}) {
                    if (s >= 0 && !seen.count(s)) {
                        seen.insert(s);
                        next.push_back(s);
                        w += scale;
                    }
                }
            }
            frontier = std::move(next);
            scale *= 0.5;
        }
        return w;
    };

    std::size_t remaining = gates.size();
    while (remaining > 0) {
        int best = -1;
        double best_w = -1;
        for (int k = 0; k < budget; k++) {
            if (anc_head[k] >= anc_chain[k].size()) continue;
            int gid = anc_chain[k][anc_head[k]];
            const DagGate& g = gates[gid];
            if (data_chain[g.data][data_head[g.data]] != gid) continue;  // blocked on data
            double w = weight_of(gid);
            if (best < 0 || w > best_w ||
                (w == best_w && (g.stab < gates[best].stab ||
                                 (g.stab == gates[best].stab && g.pos < gates[best].pos)))) {
                best = gid;
                best_w = w;
            }
        }
        if (best < 0) throw std::logic_error("baseline scheduler deadlocked");
        DagGate& g = gates[best];
        const Stabilizer& stab = st.code.stabilizers[g.stab];

        if (st.trap_of(g.data) != st.trap_of(g.anc)) {
            time_us cost_anc = st.move_cost(g.anc, st.trap_of(g.data));
            bool move_data = false;
            if (movable_data) {
                time_us cost_data = st.move_cost(g.data, st.trap_of(g.anc));
                move_data = cost_data < cost_anc;  // ties move the ancilla
            }
            if (move_data)
                st.shuttle(g.data, st.trap_of(g.anc), g.anc);
            else
                st.shuttle(g.anc, st.trap_of(g.data), g.data);
        }
        if (g.pos == 0 && needs_basis_pair(stab)) emit_gate1(st, g.anc, g.stab);
        emit_support_gate(st, stab, g.pos, g.anc);
        anc_head[g.anc - n]++;
        data_head[g.data]++;
        remaining--;

        if (g.pos == stab.weight() - 1) {
            if (needs_basis_pair(stab)) emit_gate1(st, g.anc, g.stab);
            bool reused = anc_head[g.anc - n] < anc_chain[g.anc - n].size();
            if (reused)
                emit_measure_reset(st, g.anc, g.stab);
            else
                deferred.push_back({g.anc, g.stab});
        }
    }
}

// ---------------------------------------------------------------------
// moveless: dynamic (stabilizer, ancilla) selection with gate reordering
// ---------------------------------------------------------------------

void moveless_round(Machine& st, int budget, bool static_order,
                    std::vector<std::pair<int, int>>& deferred) {
    const StabilizerCode& code = st.code;
    int n = code.n;
    for (const auto& s : code.stabilizers)
        for (const auto& [q, p] : s.support) {
            (void)p;
            st.pending[q]++;
        }

    std::vector<int> todo;
    for (int s = 0; s < code.m(); s++) todo.push_back(s);
    std::vector<int> unmeasured(budget, -1);  // completed stab awaiting M+R

    auto run_stab = [&](int s, int anc) {
        if (unmeasured[anc - n] >= 0) {
            emit_measure_reset(st, anc, unmeasured[anc - n]);
            unmeasured[anc - n] = -1;
        }
        const Stabilizer& stab = code.stabilizers[s];
        st.pending[anc] += stab.weight();
        std::vector<int> remaining(stab.weight());
        for (int i = 0; i < stab.weight(); i++) remaining[i] = i;
        bool first = true;
        while (!remaining.empty()) {
            std::vector<int> here;
            for (int idx : remaining)
                if (st.trap_of(stab.support[idx].first) == st.trap_of(anc)) here.push_back(idx);
            if (here.empty()) {
                // cheapest next trap among the remaining support
                int best_trap = -1;
                time_us best_cost = 0;
                for (int idx : remaining) {
                    int t = st.trap_of(stab.support[idx].first);
                    time_us c = st.move_cost(anc, t);
                    if (best_trap < 0 || c < best_cost || (c == best_cost && t < best_trap)) {
                        best_trap = t;
                        best_cost = c;
                    }
                }
                st.shuttle(anc, best_trap);
                continue;
            }
            for (int idx : here) {
                if (first && needs_basis_pair(stab)) emit_gate1(st, anc, s);
                first = false;
                emit_support_gate(st, stab, idx, anc);
            }
            std::vector<int> rest;
            std::set<int> done(here.begin(), here.end());
            for (int idx : remaining)
                if (!done.count(idx)) rest.push_back(idx);
            remaining = std::move(rest);
        }
        if (stab.weight() > 0 && needs_basis_pair(stab)) emit_gate1(st, anc, s);
        unmeasured[anc - n] = s;
    };

    auto run_stab_static = [&](int s, int anc) {
        if (unmeasured[anc - n] >= 0) {
            emit_measure_reset(st, anc, unmeasured[anc - n]);
            unmeasured[anc - n] = -1;
        }
        const Stabilizer& stab = code.stabilizers[s];
        st.pending[anc] += stab.weight();
        bool first = true;
        for (int i = 0; i < stab.weight(); i++) {
            int d = stab.support[i].first;
            if (st.trap_of(d) != st.trap_of(anc)) st.shuttle(anc, st.trap_of(d), d);
            if (first && needs_basis_pair(stab)) emit_gate1(st, anc, s);
            first = false;
            emit_support_gate(st, stab, i, anc);
        }
        if (needs_basis_pair(stab)) emit_gate1(st, anc, s);
        unmeasured[anc - n] = s;
    };

    if (static_order) {
        for (int s : todo) run_stab_static(s, n + s % budget);
    } else {
        while (!todo.empty()) {
            int best_s = -1, best_a = -1;
            time_us best_score = 0;
            for (int s : todo) {
                for (int a = 0; a < budget; a++) {
                    time_us sc = movement_score(code.stabilizers[s], n + a, st.map, st.topo,
                                                st.timing);
                    if (best_s < 0 || sc < best_score) {
                        best_s = s;
                        best_a = a;
                        best_score = sc;
                    }
                }
            }
            run_stab(best_s, n + best_a);
            todo.erase(std::find(todo.begin(), todo.end(), best_s));
        }
    }
    for (int a = 0; a < budget; a++)
        if (unmeasured[a] >= 0) deferred.push_back({n + a, unmeasured[a]});
}

void emit_deferred_layer(Machine& st, std::vector<std::pair<int, int>>& deferred) {
    std::sort(deferred.begin(), deferred.end());
    for (auto& [anc, stab] : deferred) emit_measure_reset(st, anc, stab);
    deferred.clear();
}

}  // namespace

time_us movement_score(const Stabilizer& stab, int ancilla_ion, const Mapping& map,
                       const QccdTopology& topo, const TimingModel& timing) {
    std::set<int> traps_needed;
    for (const auto& [q, p] : stab.support) {
        (void)p;
        traps_needed.insert(map.ions[q].trap);
    }
    int cur = map.ions[ancilla_ion].trap;
    traps_needed.erase(cur);

    const auto& ion = map.ions[ancilla_ion];
    int len = static_cast<int>(map.chains[cur].size());
    bool first_hop_swap = ion.pos != 0 && ion.pos != len - 1;

    time_us total = 0;
    bool first = true;
    while (!traps_needed.empty()) {
        int best = -1;
        time_us best_cost = 0;
        for (int t : traps_needed) {
            ShuttlePath path = shuttle_path(topo, timing, cur, t);
            time_us c = shuttle_time(topo, timing, path, (first && first_hop_swap) ? 1 : 0, 0,
                                     len, 0);
            if (best < 0 || c < best_cost || (c == best_cost && t < best)) {
                best = t;
                best_cost = c;
            }
        }
        total += best_cost;
        cur = best;
        traps_needed.erase(best);
        first = false;
    }
    return total;
}

std::vector<Op> reverse_round(const Schedule& sched, int src_round, int new_round,
                              int shuttle_base) {
    std::vector<const Op*> fwd;
    for (const auto& op : sched.ops)
        if (op.round == src_round) fwd.push_back(&op);

    // remaining non-measure ops per stabilizer, to re-anchor M+R
    std::map<int, int> stab_ops;
    std::map<int, Op> stab_measure;     // forward Measure op per stabilizer
    std::map<int, int> anc_first_stab;  // ancilla -> its first forward stabilizer
    for (const Op* op : fwd) {
        if (op->kind == OpKind::Gate1 || op->kind == OpKind::Gate2) stab_ops[op->stab]++;
        if (op->kind == OpKind::Measure) stab_measure[op->stab] = *op;
    }
    for (const Op* op : fwd) {
        if ((op->kind == OpKind::Gate2 || op->kind == OpKind::Measure) &&
            !anc_first_stab.count(op->kind == OpKind::Gate2 ? op->ion_b : op->ion_a)) {
            int anc = op->kind == OpKind::Gate2 ? op->ion_b : op->ion_a;
            anc_first_stab[anc] = op->stab;
        }
    }

    // remap shuttle ids to a fresh dense range
    std::map<int, int> sh_remap;
    auto remap = [&](int sh) {
        if (sh < 0) return -1;
        auto it = sh_remap.find(sh);
        if (it == sh_remap.end()) it = sh_remap.insert({sh, shuttle_base + (int)sh_remap.size()}).first;
        return it->second;
    };

    std::vector<Op> rev;
    std::vector<std::pair<int, int>> layer;  // (anc, stab) measured at round end
    auto emit_mr = [&](int stab, int trap) {
        Op m = stab_measure[stab];
        m.round = new_round;
        m.trap = trap;
        rev.push_back(m);
        Op r;
        r.kind = OpKind::Reset;
        r.round = new_round;
        r.ion_a = m.ion_a;
        r.trap = trap;
        r.stab = stab;
        rev.push_back(r);
    };
    auto finish_stab = [&](int stab, int trap) {
        auto it = stab_measure.find(stab);
        if (it == stab_measure.end()) return;
        int anc = it->second.ion_a;
        if (anc_first_stab.count(anc) && anc_first_stab[anc] == stab) {
            layer.push_back({anc, stab});
            return;
        }
        emit_mr(stab, trap);
    };

    for (auto it = fwd.rbegin(); it != fwd.rend(); ++it) {
        Op op = **it;
        op.round = new_round;
        switch (op.kind) {
            case OpKind::Split:
                op.kind = OpKind::Merge;
                op.shuttle = remap(op.shuttle);
                rev.push_back(op);
                break;
            case OpKind::Merge:
                op.kind = OpKind::Split;
                op.shuttle = remap(op.shuttle);
                rev.push_back(op);
                break;
            case OpKind::Move:
            case OpKind::Cool:
                op.shuttle = remap(op.shuttle);
                rev.push_back(op);
                break;
            case OpKind::IntraSwap:
                std::swap(op.ion_a, op.ion_b);
                rev.push_back(op);
                break;
            case OpKind::Gate1:
            case OpKind::Gate2: {
                rev.push_back(op);
                if (--stab_ops[op.stab] == 0) finish_stab(op.stab, op.trap);
                break;
            }
            case OpKind::Measure:
            case OpKind::Reset:
                break;  // re-anchored by finish_stab / the end layer
        }
    }
    std::sort(layer.begin(), layer.end());
    for (auto& [anc, stab] : layer) {
        int home = -1;
        for (std::size_t t = 0; t < sched.initial_chains.size(); t++)
            for (int ion : sched.initial_chains[t])
                if (ion == anc) home = static_cast<int>(t);
        emit_mr(stab, home);
    }
    return rev;
}

Schedule compile(CompilerKind kind, const StabilizerCode& code, const QccdTopology& topo,
                 const TimingModel& timing, const CompileOptions& opts) {
    validate_code(code);
    timing.validate();
    topo.validate();
    if (code.m() < 1) throw std::invalid_argument("code has no stabilizers to schedule");
    if (opts.rounds < 1) throw std::invalid_argument("rounds must be >= 1");
    if (opts.ancilla_budget < 1 || opts.ancilla_budget > code.m())
        throw std::invalid_argument("ancilla budget must be in [1, m]");

    Partition part = partition_data(code, topo, opts.ancilla_budget);
    Mapping phi0 = initial_mapping(code, topo, part, opts.ancilla_budget);

    Schedule sched;
    sched.compiler = kind;
    sched.ancilla_budget = opts.ancilla_budget;
    sched.rounds = opts.rounds;
    sched.num_data = code.n;
    sched.num_ancilla = opts.ancilla_budget;
    sched.num_stabilizers = code.m();
    sched.code_label = code.label.empty() ? "custom" : code.label;
    sched.initial_chains = phi0.chains;

    Machine st(code, topo, timing, kind != CompilerKind::Baseline, phi0);

    if (kind == CompilerKind::Moveless) {
        for (int r = 0; r < opts.rounds; r++) {
            std::vector<Op> ops;
            st.out = &ops;
            st.round = r;
            std::vector<std::pair<int, int>> deferred;
            moveless_round(st, opts.ancilla_budget, opts.moveless_static_order, deferred);
            emit_deferred_layer(st, deferred);
            sched.ops.insert(sched.ops.end(), ops.begin(), ops.end());
        }
        return sched;
    }

    // baseline / MAO: forward round, mirrored round, then repetition
    std::vector<Op> fwd;
    st.out = &fwd;
    st.round = 0;
    std::vector<std::pair<int, int>> deferred;
    baseline_round(st, opts.ancilla_budget, kind == CompilerKind::Baseline, deferred);
    emit_deferred_layer(st, deferred);
    sched.ops = fwd;

    if (opts.rounds > 1) {
        Schedule tmp = sched;  // carries round 0 + initial chains
        int per_round_shuttles = st.next_shuttle;
        std::vector<Op> rev = reverse_round(tmp, 0, 1, per_round_shuttles);
        sched.ops.insert(sched.ops.end(), rev.begin(), rev.end());
        for (int r = 2; r < opts.rounds; r++) {
            const std::vector<Op>& src = (r % 2 == 0) ? fwd : rev;
            for (Op op : src) {
                op.round = r;
                if (op.shuttle >= 0) op.shuttle += per_round_shuttles * (r - (r % 2 == 0 ? 0 : 1));
                sched.ops.push_back(op);
            }
        }
    }
    return sched;
}

Schedule compile_baseline(const StabilizerCode& code, const QccdTopology& topo,
                          const TimingModel& timing, const CompileOptions& opts) {
    return compile(CompilerKind::Baseline, code, topo, timing, opts);
}
Schedule compile_mao(const StabilizerCode& code, const QccdTopology& topo,
                     const TimingModel& timing, const CompileOptions& opts) {
    return compile(CompilerKind::Mao, code, topo, timing, opts);
}
Schedule compile_moveless(const StabilizerCode& code, const QccdTopology& topo,
                          const TimingModel& timing, const CompileOptions& opts) {
    return compile(CompilerKind::Moveless, code, topo, timing, opts);
}

}  // namespace qstab
