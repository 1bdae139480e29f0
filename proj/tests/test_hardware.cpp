#include "doctest.h"
#include "oracles.hpp"
#include "qstab/hardware.hpp"

using namespace qstab;

namespace {

// t0 - corner - X - t1, with t2/t3 hanging off the X to give it degree 4
QccdTopology cross_topology() {
    QccdTopology topo;
    topo.num_traps = 4;
    topo.nodes.assign(4, {NodeKind::Trap, 4});
    topo.nodes.push_back({NodeKind::Corner, 0});     // node 4
    topo.nodes.push_back({NodeKind::XJunction, 0});  // node 5
    topo.adj.resize(topo.nodes.size());
    topo.add_edge(0, 4);
    topo.add_edge(4, 5);
    topo.add_edge(5, 1);
    topo.add_edge(5, 2);
    topo.add_edge(5, 3);
    topo.validate();
    return topo;
}

}  // namespace

TEST_CASE("timing model defaults and derived gateswap") {
    TimingModel t;
    t.validate();
    CHECK(t.gateswap == 300);
    t.gate2 = 120;
    t.refresh_derived();
    CHECK(t.gateswap == 360);
    t.validate();
    t.gate1 = 0;
    CHECK_THROWS(t.validate());
}

TEST_CASE("linear topology construction") {
    QccdTopology one = make_linear(1, 5);
    CHECK(one.num_traps == 1);
    CHECK(one.edges.empty());

    QccdTopology t = make_linear(3, 5);
    CHECK(t.num_traps == 3);
    CHECK(t.edges.size() == 2);
    CHECK(t.total_capacity() == 15);
    CHECK(t.neighbor_traps(1) == std::vector<int>{0, 2});
    CHECK_THROWS(make_linear(2, 1));  // capacity must admit a gate
}

TEST_CASE("grid topology junction census") {
    QccdTopology g1 = make_grid(1, 1, 5);
    CHECK(g1.num_traps == 1);

    QccdTopology g = make_grid(2, 2, 5);
    CHECK(g.num_traps == 4);
    int x = 0, y = 0, corners = 0;
    for (const auto& nd : g.nodes) {
        if (nd.kind == NodeKind::XJunction) x++;
        if (nd.kind == NodeKind::YJunction) y++;
        if (nd.kind == NodeKind::Corner) corners++;
    }
    CHECK(x == 0);
    CHECK(y == 2);  // the two central crossings, degree 3
    CHECK(corners == 4);

    QccdTopology big = make_grid(6, 10, 5);
    CHECK(big.num_traps == 60);
    x = y = 0;
    for (const auto& nd : big.nodes) {
        if (nd.kind == NodeKind::XJunction) x++;
        if (nd.kind == NodeKind::YJunction) y++;
    }
    CHECK(x == 36);  // interior crossings
    CHECK(y == 26);  // edge crossings
}

TEST_CASE("shuttle_path basics") {
    TimingModel tm;
    QccdTopology lin = make_linear(4, 5);
    CHECK(shuttle_path(lin, tm, 2, 2).nodes.empty());
    ShuttlePath p = shuttle_path(lin, tm, 0, 1);
    CHECK(p.edge_ids.size() == 1);
    ShuttlePath p2 = shuttle_path(lin, tm, 0, 2);
    CHECK(p2.edge_ids.size() == 2);
    CHECK(path_move_cost(lin, tm, p2) == 10);
}

TEST_CASE("grid diagonal route avoids the second junction") {
    TimingModel tm;
    QccdTopology g = make_grid(2, 2, 5);
    // diagonal: trap 0 -> trap 3
    ShuttlePath p = shuttle_path(g, tm, 0, 3);
    int junctions = 0;
    for (std::size_t i = 1; i + 1 < p.nodes.size(); i++) {
        NodeKind k = g.nodes[p.nodes[i]].kind;
        if (k == NodeKind::XJunction || k == NodeKind::YJunction) junctions++;
    }
    CHECK(junctions == 1);
    int brute_junctions = 0;
    time_us brute = oracle::brute_min_path_cost(g, tm, 0, 3, &brute_junctions);
    CHECK(path_move_cost(g, tm, p) == brute);
    CHECK(brute_junctions == 1);
}

TEST_CASE("shuttle path cost is symmetric") {
    TimingModel tm;
    for (const QccdTopology& topo : {make_linear(5, 5), make_grid(2, 3, 5), cross_topology()}) {
        for (int a = 0; a < topo.num_traps; a++)
            for (int b = 0; b < topo.num_traps; b++) {
                time_us ab = path_move_cost(topo, tm, shuttle_path(topo, tm, a, b));
                time_us ba = path_move_cost(topo, tm, shuttle_path(topo, tm, b, a));
                CHECK(ab == ba);
            }
    }
}

TEST_CASE("shuttle_time constants") {
    TimingModel tm;
    QccdTopology lin = make_linear(3, 5);
    ShuttlePath empty;
    CHECK(shuttle_time(lin, tm, empty, 0, 0) == 0);

    ShuttlePath adj = shuttle_path(lin, tm, 0, 1);
    CHECK(shuttle_time(lin, tm, adj, 0, 0) == 165);  // 80 + 5 + 80

    QccdTopology cross = cross_topology();
    ShuttlePath px = shuttle_path(cross, tm, 0, 1);
    CHECK(px.edge_ids.size() == 3);
    CHECK(shuttle_time(cross, tm, px, 0, 0) == 295);  // 80 + 15 + 120 + 80
}

TEST_CASE("shuttle_time additivity over concatenation") {
    TimingModel tm;
    QccdTopology lin = make_linear(4, 5);
    time_us ab = shuttle_time(lin, tm, shuttle_path(lin, tm, 0, 1), 0, 0);
    time_us bc = shuttle_time(lin, tm, shuttle_path(lin, tm, 1, 2), 0, 0);
    time_us ac = shuttle_time(lin, tm, shuttle_path(lin, tm, 0, 2), 0, 0);
    CHECK(ac == ab + bc - (tm.split + tm.merge));
}

TEST_CASE("intratrap swap times") {
    TimingModel tm;
    CHECK(intratrap_swap_time(tm, SwapMethod::GateSwap, 2) == 300);
    CHECK(intratrap_swap_time(tm, SwapMethod::GateSwap, 9) == 300);
    CHECK(intratrap_swap_time(tm, SwapMethod::IonSwap, 5) == 210);
    CHECK(intratrap_swap_time(tm, SwapMethod::IonSwap, 2) == 84);
    CHECK_THROWS(intratrap_swap_time(tm, SwapMethod::IonSwap, 1));
}

TEST_CASE("mapping invariants through place/remove/swap") {
    QccdTopology lin = make_linear(2, 5);
    Mapping m;
    m.num_data = 2;
    m.ions.resize(4);
    m.chains.resize(2);
    m.place(0, 0);
    m.place(1, 0);
    m.place(2, 0);
    m.place(3, 1);
    m.check_invariants(lin);
    CHECK(m.occupancy(0) == 3);
    m.swap_with_back(0);  // 0 <-> 2
    CHECK(m.ions[0].pos == 2);
    m.check_invariants(lin);
    m.remove_from_chain(1);
    m.check_invariants(lin);
    CHECK(m.occupancy(0) == 2);
    m.place_front(1, 1);
    CHECK(m.ions[1].pos == 0);
    CHECK(m.ions[3].pos == 1);
    m.check_invariants(lin);
}

TEST_CASE("hardware shorthand and json config") {
    HardwareSpec hw = parse_hardware("linear:8x5");
    CHECK(hw.topology.num_traps == 8);
    CHECK(hw.topology.capacity(0) == 5);

    HardwareSpec grid = parse_hardware("grid:2x3x4");
    CHECK(grid.topology.num_traps == 6);

    HardwareSpec js = parse_hardware_json(
        R"({"topology": "linear", "traps": 3, "capacity": 6,
            "timing": {"gate2": 200, "measure": 50}})");
    CHECK(js.topology.num_traps == 3);
    CHECK(js.timing.gate2 == 200);
    CHECK(js.timing.gateswap == 600);
    CHECK(js.timing.measure == 50);
    CHECK_THROWS(parse_hardware_json(R"({"topology": "ring", "traps": 3})"));
}
