// Test-only reference implementations, kept independent of the library
// code paths they check.
#pragma once

#include <algorithm>
#include <complex>
#include <vector>

#include "qstab/code.hpp"
#include "qstab/hardware.hpp"

namespace oracle {

// Symplectic commutation check from scratch: build X/Z indicator vectors
// and count anticommuting overlaps mod 2.
inline bool commute(const qstab::Stabilizer& a, const qstab::Stabilizer& b, int n) {
    std::vector<int> ax(n), az(n), bx(n), bz(n);
    auto fill = [n](const qstab::Stabilizer& s, std::vector<int>& x, std::vector<int>& z) {
        for (auto& [q, p] : s.support) {
            if (p != qstab::Pauli::Z) x[q] = 1;
            if (p != qstab::Pauli::X) z[q] = 1;
        }
        (void)n;
    };
    fill(a, ax, az);
    fill(b, bx, bz);
    int prod = 0;
    for (int i = 0; i < n; i++) prod ^= (ax[i] & bz[i]) ^ (az[i] & bx[i]);
    return prod == 0;
}

inline bool all_commute(const qstab::StabilizerCode& code) {
    for (std::size_t i = 0; i < code.stabilizers.size(); i++)
        for (std::size_t j = i + 1; j < code.stabilizers.size(); j++)
            if (!commute(code.stabilizers[i], code.stabilizers[j], code.n)) return false;
    return true;
}

// GF(2) rank of the (m x 2n) symplectic check matrix.
inline int gf2_rank(const qstab::StabilizerCode& code) {
    int n = code.n;
    std::vector<std::vector<int>> rows;
    for (const auto& s : code.stabilizers) {
        std::vector<int> row(2 * n, 0);
        for (auto& [q, p] : s.support) {
            if (p != qstab::Pauli::Z) row[q] = 1;
            if (p != qstab::Pauli::X) row[n + q] = 1;
        }
        rows.push_back(row);
    }
    int rank = 0;
    for (int col = 0; col < 2 * n && rank < static_cast<int>(rows.size()); col++) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); r++)
            if (rows[r][col]) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < static_cast<int>(rows.size()); r++)
            if (r != rank && rows[r][col])
                for (int c = 0; c < 2 * n; c++) rows[r][c] ^= rows[rank][c];
        rank++;
    }
    return rank;
}

// Exhaustive min-cost simple path between traps (segment + junction costs).
inline qstab::time_us brute_min_path_cost(const qstab::QccdTopology& topo,
                                          const qstab::TimingModel& timing, int from, int to,
                                          int* min_junctions_on_best = nullptr) {
    qstab::time_us best = -1;
    int best_junctions = 0;
    std::vector<char> used(topo.nodes.size(), 0);
    std::vector<int> stack{from};
    used[from] = 1;

    struct Frame {
        int node;
        std::size_t next = 0;
    };
    std::vector<Frame> frames{{from, 0}};
    qstab::time_us cost = 0;
    int junctions = 0;
    auto node_cost = [&](int v) -> qstab::time_us {
        if (topo.nodes[v].kind == qstab::NodeKind::XJunction) return timing.x_junction;
        if (topo.nodes[v].kind == qstab::NodeKind::YJunction) return timing.y_junction;
        return 0;
    };
    while (!frames.empty()) {
        Frame& f = frames.back();
        if (f.node == to && frames.size() > 1) {
            if (best < 0 || cost < best || (cost == best && junctions < best_junctions)) {
                best = cost;
                best_junctions = junctions;
            }
            used[f.node] = 0;
            frames.pop_back();
            if (!frames.empty()) {
                int v = f.node;
                cost -= timing.move_per_segment;
                if (v != to) cost -= node_cost(v);
            }
            continue;
        }
        if (f.next < topo.adj[f.node].size()) {
            auto [v, e] = topo.adj[f.node][f.next++];
            (void)e;
            if (used[v]) continue;
            used[v] = 1;
            cost += timing.move_per_segment;
            bool is_j = topo.nodes[v].kind == qstab::NodeKind::XJunction ||
                        topo.nodes[v].kind == qstab::NodeKind::YJunction;
            if (v != to) {
                cost += node_cost(v);
                if (is_j) junctions++;
            }
            frames.push_back({v, 0});
        } else {
            used[f.node] = 0;
            int v = f.node;
            frames.pop_back();
            if (!frames.empty()) {
                cost -= timing.move_per_segment;
                if (v != to) {
                    cost -= node_cost(v);
                    bool is_j = topo.nodes[v].kind == qstab::NodeKind::XJunction ||
                                topo.nodes[v].kind == qstab::NodeKind::YJunction;
                    if (is_j) junctions--;
                }
            }
        }
    }
    if (min_junctions_on_best) *min_junctions_on_best = best_junctions;
    return best;
}

// Pauli-twirl probabilities from RK4 integration of the single-qubit
// Lindblad master equation (amplitude damping at 1/T1, pure dephasing
// topping up to 1/T2), reconstructed through the Pauli transfer matrix.
struct Twirl {
    double px, py, pz;
};

inline Twirl lindblad_pta(double t, double t1, double t2, int steps = 4000) {
    using C = std::complex<double>;
    using M = std::array<C, 4>;  // row-major 2x2

    auto mul = [](const M& a, const M& b) {
        return M{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                 a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
    };
    auto add = [](const M& a, const M& b, C s) {
        return M{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2], a[3] + s * b[3]};
    };
    const M sm{C(0), C(0), C(1), C(0)};   // sigma_minus = |1><0|? (basis |0>,|1>): |0><1|
    const M sp{C(0), C(1), C(0), C(0)};
    const M sz{C(1), C(0), C(0), C(-1)};

    double g1 = 1.0 / t1;
    double gphi = 1.0 / t2 - 0.5 / t1;  // pure dephasing rate

    // relaxation toward |0>: L1 = sqrt(g1) |0><1|
    const M l1{C(0), C(1), C(0), C(0)};

    auto deriv = [&](const M& rho) {
        // g1 (L rho L^† - ½{L^†L, rho}) with L^†L = |1><1|
        M lrl = mul(mul(l1, rho), sm);
        M n{C(0), C(0), C(0), C(1)};  // |1><1|
        M anti = add(mul(n, rho), mul(rho, n), C(1));
        M out = add(lrl, anti, C(-0.5));
        for (auto& v : out) v *= g1;
        // gphi/2 (sz rho sz - rho)
        M deph = add(mul(mul(sz, rho), sz), rho, C(-1));
        for (std::size_t i = 0; i < 4; i++) out[i] += 0.5 * gphi * deph[i];
        (void)sp;
        return out;
    };
    auto evolve = [&](M rho) {
        double h = t / steps;
        for (int i = 0; i < steps; i++) {
            M k1 = deriv(rho);
            M k2 = deriv(add(rho, k1, C(h / 2)));
            M k3 = deriv(add(rho, k2, C(h / 2)));
            M k4 = deriv(add(rho, k3, C(h)));
            for (std::size_t j = 0; j < 4; j++)
                rho[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        return rho;
    };

    // PTM diagonals via difference of eigenstate evolutions
    auto lambda = [&](const M& plus, const M& minus, const M& pauli) {
        M ep = evolve(plus), em = evolve(minus);
        M diff = add(ep, em, C(-1));
        M prod = mul(pauli, diff);
        return 0.5 * (prod[0] + prod[3]).real();
    };
    const M proj0{C(1), C(0), C(0), C(0)};
    const M proj1{C(0), C(0), C(0), C(1)};
    const M projp{C(0.5), C(0.5), C(0.5), C(0.5)};
    const M projm{C(0.5), C(-0.5), C(-0.5), C(0.5)};
    const M projpi{C(0.5), C(0, -0.5), C(0, 0.5), C(0.5)};
    const M projmi{C(0.5), C(0, 0.5), C(0, -0.5), C(0.5)};
    const M sx{C(0), C(1), C(1), C(0)};
    const M sy{C(0), C(0, -1), C(0, 1), C(0)};

    double lx = lambda(projp, projm, sx);
    double ly = lambda(projpi, projmi, sy);
    double lz = lambda(proj0, proj1, sz);
    Twirl w;
    w.px = (1 + lx - ly - lz) / 4.0;
    w.py = (1 - lx + ly - lz) / 4.0;
    w.pz = (1 - lx - ly + lz) / 4.0;
    return w;
}

}  // namespace oracle
