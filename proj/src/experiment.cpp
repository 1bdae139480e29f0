#include "qstab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qstab {

StabilizerCode resolve_code(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon != std::string::npos) {
        std::string kind = spec.substr(0, colon);
        if (kind == "surface" || kind == "color" || kind == "repetition") {
            int arg = std::stoi(spec.substr(colon + 1));
            if (kind == "surface") return build_surface_code(arg);
            if (kind == "color") return build_color_code(arg);
            return build_repetition_code(arg);
        }
    }
    return load_code_file(spec);
}

HardwareSpec resolve_hardware(const std::string& spec, const StabilizerCode& code) {
    if (spec == "linear:m") {
        HardwareSpec hw;
        hw.topology = make_linear(std::max(code.m(), 1), 5);
        return hw;
    }
    return parse_hardware(spec);
}

std::vector<int> sweep_budgets(int m) {
    std::set<int> set;
    set.insert(1);
    for (int pct : {20, 40, 60, 80})
        set.insert(static_cast<int>(std::ceil(pct * 0.01 * m)));
    set.insert(m);
    std::vector<int> out(set.begin(), set.end());
    out.erase(std::remove_if(out.begin(), out.end(), [m](int b) { return b < 1 || b > m; }),
              out.end());
    return out;
}

RunResult run_compile(const StabilizerCode& code, const HardwareSpec& hw, CompilerKind kind,
                      const CompileOptions& opts) {
    RunResult r;
    r.schedule = compile(kind, code, hw.topology, hw.timing, opts);
    VerifyReport v = verify(r.schedule, code, hw.topology, hw.timing);
    if (!v.ok())
        throw std::runtime_error("schedule verification failed: " + v.summary());
    r.report = simulate(r.schedule, hw.topology, hw.timing);
    return r;
}

std::vector<SweepRow> run_sweep(const StabilizerCode& code, const HardwareSpec& hw,
                                CompilerKind kind, int rounds, bool moveless_static_order) {
    std::vector<SweepRow> rows;
    std::size_t best = 0;
    for (int budget : sweep_budgets(code.m())) {
        CompileOptions opts;
        opts.ancilla_budget = budget;
        opts.rounds = rounds;
        opts.moveless_static_order = moveless_static_order;
        RunResult r = run_compile(code, hw, kind, opts);
        SweepRow row;
        row.code = code.label;
        row.compiler = compiler_name(kind);
        row.budget = budget;
        row.rounds = rounds;
        row.total_us = r.report.total_us;
        row.per_round_us = r.report.per_round_us;
        row.shuttles = r.report.shuttle_count;
        row.swaps = r.report.intratrap_swap_count;
        row.cools = r.report.cooling_count;
        rows.push_back(row);
        if (row.total_us < rows[best].total_us) best = rows.size() - 1;
    }
    if (!rows.empty()) rows[best].is_best = true;
    return rows;
}

static std::string join_us(const std::vector<time_us>& v) {
    std::ostringstream out;
    for (std::size_t i = 0; i < v.size(); i++) {
        if (i) out << ';';
        out << v[i];
    }
    return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "code,compiler,budget,rounds,total_us,per_round_us,shuttles,swaps,cools,is_best\n";
    for (const auto& r : rows) {
        out << r.code << ',' << r.compiler << ',' << r.budget << ',' << r.rounds << ','
            << r.total_us << ',' << join_us(r.per_round_us) << ',' << r.shuttles << ','
            << r.swaps << ',' << r.cools << ',' << (r.is_best ? 1 : 0) << "\n";
    }
    return out.str();
}

std::vector<SuiteRow> run_suite(const std::vector<SuiteEntry>& entries, int rounds) {
    std::vector<SuiteRow> rows;
    char buf[32];
    for (const auto& entry : entries) {
        StabilizerCode code;
        HardwareSpec hw;
        std::string tag;
        try {
            code = resolve_code(entry.code_spec);
            hw = resolve_hardware(entry.hw_spec, code);
            tag = code.label + "@" + hw.topology.label;
        } catch (const std::exception& e) {
            SuiteRow row;
            row.code = entry.code_spec + "@" + entry.hw_spec;
            row.error = e.what();
            rows.push_back(row);
            continue;
        }

        // Baseline*: the best total over the six-budget sweep.
        time_us baseline_star = 0;
        std::string star_err;
        try {
            auto sweep = run_sweep(code, hw, CompilerKind::Baseline, rounds);
            for (const auto& r : sweep)
                if (r.is_best) baseline_star = r.total_us;
        } catch (const std::exception& e) {
            star_err = e.what();
        }

        for (CompilerKind kind :
             {CompilerKind::Baseline, CompilerKind::Mao, CompilerKind::Moveless}) {
            for (int budget : sweep_budgets(code.m())) {
                SuiteRow row;
                row.code = tag;
                row.compiler = compiler_name(kind);
                row.budget = budget;
                row.rounds = rounds;
                try {
                    if (!star_err.empty() && kind == CompilerKind::Baseline)
                        throw std::runtime_error(star_err);
                    CompileOptions opts;
                    opts.ancilla_budget = budget;
                    opts.rounds = rounds;
                    RunResult r = run_compile(code, hw, kind, opts);
                    row.total_us = r.report.total_us;
                    row.per_round_us = r.report.per_round_us;
                    row.shuttles = r.report.shuttle_count;
                    row.swaps = r.report.intratrap_swap_count;
                    if (baseline_star > 0 && row.total_us > 0) {
                        double ratio = static_cast<double>(baseline_star) /
                                       static_cast<double>(row.total_us);
                        std::snprintf(buf, sizeof buf, "%.4f", ratio);
                        row.speedup_vs_baseline_star = std::stod(buf);
                    }
                } catch (const std::exception& e) {
                    row.error = e.what();
                }
                rows.push_back(row);
            }
        }
    }
    return rows;
}

std::string suite_csv(const std::vector<SuiteRow>& rows) {
    std::ostringstream out;
    out << "code,compiler,budget,rounds,total_us,per_round_us,shuttles,swaps,"
           "speedup_vs_baseline_star\n";
    char buf[32];
    for (const auto& r : rows) {
        out << r.code << ',' << r.compiler << ',' << r.budget << ',' << r.rounds << ',';
        if (!r.error.empty()) {
            std::string msg = r.error;
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            out << "ERROR:" << msg << ",,,,\n";
            continue;
        }
        std::snprintf(buf, sizeof buf, "%.4f", r.speedup_vs_baseline_star);
        out << r.total_us << ',' << join_us(r.per_round_us) << ',' << r.shuttles << ','
            << r.swaps << ',' << buf << "\n";
    }
    return out.str();
}

std::vector<SuiteEntry> parse_manifest(const std::string& json_text, int* rounds) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    if (rounds) *rounds = j.value("rounds", 2);
    std::vector<SuiteEntry> entries;
    if (j.contains("entries")) {
        for (const auto& e : j.at("entries"))
            entries.push_back({e.at("code").get<std::string>(), e.at("hw").get<std::string>()});
    }
    return entries;
}

}  // namespace qstab
