#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qstab/compile.hpp"
#include "qstab/noise.hpp"
#include "qstab/simulate.hpp"

namespace qstab {

/// "surface:<d>", "color:<d>", "repetition:<n>" or a code file path.
StabilizerCode resolve_code(const std::string& spec);

/// "linear:m" resolves trap count to the code's stabilizer count with the
/// default capacity of 5; otherwise see parse_hardware.
HardwareSpec resolve_hardware(const std::string& spec, const StabilizerCode& code);

/// Six-point ancilla budget set {1, 20%m, 40%m, 60%m, 80%m, m}
/// (percentages rounded up, duplicates removed, ascending).
std::vector<int> sweep_budgets(int m);

struct RunResult {
    Schedule schedule;
    LatencyReport report;
};

/// compile -> verify (throws on any violation) -> simulate.
RunResult run_compile(const StabilizerCode& code, const HardwareSpec& hw, CompilerKind kind,
                      const CompileOptions& opts);

struct SweepRow {
    std::string code;
    std::string compiler;
    int budget = 0;
    int rounds = 0;
    time_us total_us = 0;
    std::vector<time_us> per_round_us;
    int shuttles = 0;
    int swaps = 0;
    int cools = 0;
    bool is_best = false;
};

std::vector<SweepRow> run_sweep(const StabilizerCode& code, const HardwareSpec& hw,
                                CompilerKind kind, int rounds,
                                bool moveless_static_order = false);

std::string sweep_csv(const std::vector<SweepRow>& rows);

struct SuiteEntry {
    std::string code_spec;
    std::string hw_spec;
};

struct SuiteRow {
    std::string code;  // "<code>@<hw>"
    std::string compiler;
    int budget = 0;
    int rounds = 0;
    time_us total_us = 0;
    std::vector<time_us> per_round_us;
    int shuttles = 0;
    int swaps = 0;
    double speedup_vs_baseline_star = 0;
    std::string error;  // nonempty if this row failed
};

/// Every (entry x compiler x sweep budget) row; speedups are against the
/// entry's best-of-sweep baseline total. Rows keep manifest order.
std::vector<SuiteRow> run_suite(const std::vector<SuiteEntry>& entries, int rounds);

std::string suite_csv(const std::vector<SuiteRow>& rows);

/// Manifest JSON: {"rounds": N, "entries": [{"code": ..., "hw": ...}]}
std::vector<SuiteEntry> parse_manifest(const std::string& json_text, int* rounds);

}  // namespace qstab
