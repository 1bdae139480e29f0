#pragma once

#include <string>
#include <vector>

#include "qstab/simulate.hpp"

namespace qstab {

struct PauliChannel {
    double px = 0, py = 0, pz = 0;
};

/// Circuit-level rates plus the Pauli-twirled idle channel accumulated
/// over one syndrome-extraction round.
struct ErrorBudget {
    double p = 0;
    double rate_1q = 0;    // 0.1 p
    double rate_2q = 0;    // p
    double rate_meas = 0;  // p
    double t_round_s = 0;  // mean round latency
    double t1_s = 0;
    double t2_s = 0;
    PauliChannel idle;                      // channel at t_round_s
    std::vector<double> round_t_s;          // per-round latencies
    std::vector<PauliChannel> round_idle;   // per-round channels
};

/// Log-linear coherence fit: T1 = T2 = 10^(-log10(p) - 2) seconds,
/// clamped to [10, 100] s.
std::pair<double, double> coherence_from_p(double p);

/// Pauli twirl of amplitude damping (T1) plus dephasing (T2) over idle
/// time t: px = py = (1 - e^(-t/T1))/4, pz = (1 - e^(-t/T2))/2 - px.
PauliChannel pta_channel(double t_s, double t1_s, double t2_s);

ErrorBudget error_budget(const LatencyReport& report, double p);

std::string error_budget_to_json(const ErrorBudget& b);

}  // namespace qstab
