#include "qstab/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace qstab {

std::pair<double, double> coherence_from_p(double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("physical error rate must lie in (0, 1)");
    double t = std::pow(10.0, -std::log10(p) - 2.0);
    t = std::clamp(t, 10.0, 100.0);
    return {t, t};
}

PauliChannel pta_channel(double t_s, double t1_s, double t2_s) {
    if (t_s < 0) throw std::invalid_argument("idle time must be >= 0");
    if (t1_s <= 0 || t2_s <= 0) throw std::invalid_argument("T1 and T2 must be > 0");
    if (t2_s > 2.0 * t1_s)
        throw std::invalid_argument("unphysical coherence times: T2 > 2*T1");
    PauliChannel c;
    double damp = (1.0 - std::exp(-t_s / t1_s)) / 4.0;
    c.px = damp;
    c.py = damp;
    c.pz = (1.0 - std::exp(-t_s / t2_s)) / 2.0 - damp;
    return c;
}

ErrorBudget error_budget(const LatencyReport& report, double p) {
    ErrorBudget b;
    b.p = p;
    b.rate_1q = 0.1 * p;
    b.rate_2q = p;
    b.rate_meas = p;
    auto [t1, t2] = coherence_from_p(p);
    b.t1_s = t1;
    b.t2_s = t2;

    int rounds = std::max<std::size_t>(report.per_round_us.size(), 1);
    b.t_round_s = static_cast<double>(report.total_us) / rounds * 1e-6;
    b.idle = pta_channel(b.t_round_s, t1, t2);
    for (time_us r : report.per_round_us) {
        double t = static_cast<double>(r) * 1e-6;
        b.round_t_s.push_back(t);
        b.round_idle.push_back(pta_channel(t, t1, t2));
    }
    return b;
}

std::string error_budget_to_json(const ErrorBudget& b) {
    nlohmann::json j;
    j["p"] = b.p;
    j["rate_1q"] = b.rate_1q;
    j["rate_2q"] = b.rate_2q;
    j["rate_meas"] = b.rate_meas;
    j["px"] = b.idle.px;
    j["py"] = b.idle.py;
    j["pz"] = b.idle.pz;
    j["t_round_s"] = b.t_round_s;
    j["T1_s"] = b.t1_s;
    j["T2_s"] = b.t2_s;
    bool differ = false;
    for (const auto& t : b.round_t_s)
        if (t != b.round_t_s.front()) differ = true;
    if (differ) {
        nlohmann::json rounds = nlohmann::json::array();
        for (std::size_t i = 0; i < b.round_t_s.size(); i++) {
            rounds.push_back({{"t_round_s", b.round_t_s[i]},
                              {"px", b.round_idle[i].px},
                              {"py", b.round_idle[i].py},
                              {"pz", b.round_idle[i].pz}});
        }
        j["per_round"] = rounds;
    }
    return j.dump(2) + "\n";
}

}  // namespace qstab
