#include "doctest.h"
#include "qstab/compile.hpp"
#include "qstab/experiment.hpp"
#include "qstab/simulate.hpp"

using namespace qstab;

namespace {

Schedule single_z_check_schedule() {
    // weight-4 Z check, everything co-trapped in trap 0
    Schedule s;
    s.compiler = CompilerKind::Moveless;
    s.ancilla_budget = 1;
    s.rounds = 1;
    s.num_data = 4;
    s.num_ancilla = 1;
    s.num_stabilizers = 1;
    s.initial_chains = {{0, 1, 2, 3, 4}};
    for (int d = 0; d < 4; d++) {
        Op g;
        g.kind = OpKind::Gate2;
        g.ion_a = d;
        g.ion_b = 4;
        g.trap = 0;
        g.stab = 0;
        s.ops.push_back(g);
    }
    Op m;
    m.kind = OpKind::Measure;
    m.ion_a = 4;
    m.trap = 0;
    m.stab = 0;
    s.ops.push_back(m);
    Op r = m;
    r.kind = OpKind::Reset;
    s.ops.push_back(r);
    return s;
}

}  // namespace

TEST_CASE("single co-trapped weight-4 Z check takes 4*gate2 + measure") {
    TimingModel tm;
    QccdTopology topo = make_linear(1, 6);
    LatencyReport r = simulate(single_z_check_schedule(), topo, tm);
    CHECK(r.total_us == 500);
    CHECK(r.shuttle_count == 0);
    CHECK(r.per_round_us == std::vector<time_us>{500});
}

TEST_CASE("disjoint checks in different traps run in parallel") {
    Schedule s;
    s.compiler = CompilerKind::Moveless;
    s.ancilla_budget = 2;
    s.rounds = 1;
    s.num_data = 8;
    s.num_ancilla = 2;
    s.num_stabilizers = 2;
    s.initial_chains = {{0, 1, 2, 3, 8}, {4, 5, 6, 7, 9}};
    for (int i = 0; i < 4; i++) {
        for (int stab = 0; stab < 2; stab++) {
            Op g;
            g.kind = OpKind::Gate2;
            g.ion_a = stab * 4 + i;
            g.ion_b = 8 + stab;
            g.trap = stab;
            g.stab = stab;
            s.ops.push_back(g);
        }
    }
    for (int stab = 0; stab < 2; stab++) {
        Op m;
        m.kind = OpKind::Measure;
        m.ion_a = 8 + stab;
        m.trap = stab;
        m.stab = stab;
        s.ops.push_back(m);
        Op r = m;
        r.kind = OpKind::Reset;
        s.ops.push_back(r);
    }
    TimingModel tm;
    QccdTopology topo = make_linear(2, 6);
    LatencyReport r = simulate(s, topo, tm);
    CHECK(r.total_us == 500);  // max, not sum

    VerifyReport v = verify(s, parse_code("n=8\nZ0 Z1 Z2 Z3\nZ4 Z5 Z6 Z7\n"), topo, tm);
    CHECK(v.ok());
}

TEST_CASE("shuttle gets an automatic cool on the destination trap") {
    Schedule s;
    s.compiler = CompilerKind::Mao;
    s.ancilla_budget = 1;
    s.rounds = 1;
    s.num_data = 1;
    s.num_ancilla = 1;
    s.num_stabilizers = 1;
    s.initial_chains = {{1}, {0}};  // ancilla in t0, data in t1
    Op sp;
    sp.kind = OpKind::Split;
    sp.ion_a = 1;
    sp.trap = 0;
    sp.shuttle = 0;
    s.ops.push_back(sp);
    Op mv;
    mv.kind = OpKind::Move;
    mv.ion_a = 1;
    mv.elem_edge = 0;
    mv.shuttle = 0;
    s.ops.push_back(mv);
    Op mg;
    mg.kind = OpKind::Merge;
    mg.ion_a = 1;
    mg.trap = 1;
    mg.shuttle = 0;
    s.ops.push_back(mg);
    Op g;
    g.kind = OpKind::Gate2;
    g.ion_a = 0;
    g.ion_b = 1;
    g.trap = 1;
    g.stab = 0;
    s.ops.push_back(g);
    Op m;
    m.kind = OpKind::Measure;
    m.ion_a = 1;
    m.trap = 1;
    m.stab = 0;
    s.ops.push_back(m);
    Op r = m;
    r.kind = OpKind::Reset;
    s.ops.push_back(r);

    TimingModel tm;
    QccdTopology topo = make_linear(2, 5);
    std::vector<TimedOp> events;
    LatencyReport lat = simulate_traced(s, topo, tm, &events);
    CHECK(lat.cooling_count == 1);
    // merge finishes at 165, cool occupies the merged ion until 265
    bool saw_cool = false;
    for (const auto& e : events) {
        if (e.op.kind == OpKind::Cool) {
            saw_cool = true;
            CHECK(e.start == 165);
            CHECK(e.end == 265);
            CHECK(e.op.trap == 1);
        }
        if (e.op.kind == OpKind::Gate2) CHECK(e.start == 265);
    }
    CHECK(saw_cool);
    CHECK(lat.trap_busy_us[1] >= 180);  // merge + cool on the destination
    CHECK(lat.total_us == 465);
}

TEST_CASE("verifier flags a cross-trap gate") {
    Schedule s = single_z_check_schedule();
    s.initial_chains = {{0, 1, 2, 4}, {3}};  // d3 lives in trap 1
    TimingModel tm;
    QccdTopology topo = make_linear(2, 6);
    StabilizerCode code = parse_code("n=4\nZ0 Z1 Z2 Z3\n");
    VerifyReport v = verify(s, code, topo, tm);
    REQUIRE(!v.ok());
    CHECK(v.violations[0].message.find("co-trapped") != std::string::npos);
}

TEST_CASE("verifier flags a missing measurement") {
    Schedule s = single_z_check_schedule();
    s.ops.pop_back();  // reset
    s.ops.pop_back();  // measure
    TimingModel tm;
    QccdTopology topo = make_linear(1, 6);
    StabilizerCode code = parse_code("n=4\nZ0 Z1 Z2 Z3\n");
    VerifyReport v = verify(s, code, topo, tm);
    REQUIRE(!v.ok());
    CHECK(v.violations[0].message.find("measured 0 times") != std::string::npos);
}

TEST_CASE("verifier flags ancilla reuse without reset") {
    Schedule s = single_z_check_schedule();
    s.num_stabilizers = 2;
    s.ops.pop_back();  // drop the reset
    Op g;
    g.kind = OpKind::Gate2;
    g.ion_a = 0;
    g.ion_b = 4;
    g.trap = 0;
    g.stab = 1;
    s.ops.push_back(g);
    Op m;
    m.kind = OpKind::Measure;
    m.ion_a = 4;
    m.trap = 0;
    m.stab = 1;
    s.ops.push_back(m);
    TimingModel tm;
    QccdTopology topo = make_linear(1, 6);
    StabilizerCode code = parse_code("n=4\nZ0 Z1 Z2 Z3\nZ0 Z1\n");
    VerifyReport v = verify(s, code, topo, tm);
    REQUIRE(!v.ok());
    CHECK(v.violations[0].message.find("without reset") != std::string::npos);
}

TEST_CASE("theoretical_min_latency generalizes the weight-4 bound") {
    TimingModel tm;
    CHECK(theoretical_min_latency(build_surface_code(3), tm) == 520);
    CHECK(theoretical_min_latency(build_repetition_code(3), tm) == 320);
    StabilizerCode empty;
    empty.n = 1;
    CHECK_THROWS(theoretical_min_latency(empty, tm));
}

TEST_CASE("simulation is deterministic and round barriers hold") {
    StabilizerCode code = build_surface_code(3);
    HardwareSpec hw = resolve_hardware("linear:m", code);
    CompileOptions opts;
    opts.ancilla_budget = 4;
    opts.rounds = 3;
    Schedule sched = compile_moveless(code, hw.topology, hw.timing, opts);
    LatencyReport a = simulate(sched, hw.topology, hw.timing);
    LatencyReport b = simulate(sched, hw.topology, hw.timing);
    CHECK(a.total_us == b.total_us);
    CHECK(a.per_round_us == b.per_round_us);
    CHECK(a.per_round_us.size() == 3);
    time_us sum = 0;
    for (time_us r : a.per_round_us) sum += r;
    CHECK(sum == a.total_us);
    CHECK(report_to_json(a) == report_to_json(b));
}

TEST_CASE("at most one two-qubit gate per trap at any instant") {
    StabilizerCode code = build_surface_code(3);
    HardwareSpec hw = resolve_hardware("linear:m", code);
    CompileOptions opts;
    opts.ancilla_budget = code.m();
    opts.rounds = 1;
    for (CompilerKind k : {CompilerKind::Baseline, CompilerKind::Mao, CompilerKind::Moveless}) {
        Schedule sched = compile(k, code, hw.topology, hw.timing, opts);
        std::vector<TimedOp> events;
        simulate_traced(sched, hw.topology, hw.timing, &events);
        std::vector<const TimedOp*> gates;
        for (const auto& e : events)
            if (e.op.kind == OpKind::Gate2) gates.push_back(&e);
        for (std::size_t i = 0; i < gates.size(); i++)
            for (std::size_t j = i + 1; j < gates.size(); j++) {
                bool overlap = gates[i]->start < gates[j]->end && gates[j]->start < gates[i]->end;
                if (overlap) CHECK(gates[i]->op.trap != gates[j]->op.trap);
            }
    }
}

TEST_CASE("simulate rejects unknown ions") {
    Schedule s = single_z_check_schedule();
    s.ops[0].ion_a = 77;
    TimingModel tm;
    QccdTopology topo = make_linear(1, 6);
    CHECK_THROWS(simulate(s, topo, tm));
}

TEST_CASE("report json round trip") {
    StabilizerCode code = build_repetition_code(3);
    HardwareSpec hw = resolve_hardware("linear:m", code);
    CompileOptions opts;
    opts.ancilla_budget = 1;
    opts.rounds = 2;
    RunResult rr = run_compile(code, hw, CompilerKind::Moveless, opts);
    std::string js = report_to_json(rr.report);
    LatencyReport back = report_from_json(js);
    CHECK(back.total_us == rr.report.total_us);
    CHECK(back.per_round_us == rr.report.per_round_us);
    CHECK(back.shuttle_count == rr.report.shuttle_count);
}
