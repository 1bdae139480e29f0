#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qstab/experiment.hpp"

using namespace qstab;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        spill(path, text);
}

struct CompileArgs {
    std::string code;
    std::string hw = "linear:m";
    std::string compiler = "moveless";
    std::string budget = "1";
    int rounds = 1;
    bool moveless_static = false;
    std::string out;
    std::string dump_sched;
    std::string dump_mapping;
    std::string emit_events;
};

void add_compile_options(CLI::App* cmd, CompileArgs& a) {
    cmd->add_option("--code", a.code, "surface:<d> | color:<d> | repetition:<n> | <file>")
        ->required();
    cmd->add_option("--hw", a.hw, "linear:<traps>x<cap> | linear:m | grid:<r>x<c>x<cap> | <file>");
    cmd->add_option("--compiler", a.compiler, "baseline | mao | moveless")
        ->check(CLI::IsMember({"baseline", "mao", "moveless"}));
    cmd->add_option("--rounds", a.rounds, "syndrome extraction rounds")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--moveless-static", a.moveless_static,
                  "disable moveless reordering (test hook)");
}

std::string mapping_text(const Schedule& s) {
    std::ostringstream out;
    for (std::size_t t = 0; t < s.initial_chains.size(); t++) {
        out << "t" << t << ":";
        for (int ion : s.initial_chains[t])
            out << ' ' << (ion < s.num_data ? "d" + std::to_string(ion)
                                            : "a" + std::to_string(ion - s.num_data));
        out << "\n";
    }
    return out.str();
}

int do_compile(const CompileArgs& a) {
    StabilizerCode code = resolve_code(a.code);
    HardwareSpec hw = resolve_hardware(a.hw, code);
    CompileOptions opts;
    opts.rounds = a.rounds;
    opts.moveless_static_order = a.moveless_static;
    opts.ancilla_budget = a.budget == "m" ? code.m() : std::stoi(a.budget);
    RunResult r = run_compile(code, hw, compiler_from_name(a.compiler), opts);
    if (!a.dump_sched.empty()) spill(a.dump_sched, dump_schedule(r.schedule, hw.topology));
    if (!a.dump_mapping.empty()) spill(a.dump_mapping, mapping_text(r.schedule));
    if (!a.emit_events.empty()) {
        std::vector<TimedOp> events;
        simulate_traced(r.schedule, hw.topology, hw.timing, &events);
        spill(a.emit_events, dump_events(r.schedule, hw.topology, events));
    }
    emit(a.out, report_to_json(r.report));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QCCD syndrome-extraction compiler and latency simulator"};
    app.require_subcommand(1);

    // gen-code / dump-code
    std::string gen_spec, gen_out;
    auto* gen = app.add_subcommand("gen-code", "generate a stabilizer code file");
    gen->add_option("--code", gen_spec, "surface:<d> | color:<d> | repetition:<n>")->required();
    gen->add_option("-o,--out", gen_out, "output file (default stdout)");

    std::string dumpc_spec, dumpc_out;
    auto* dumpc = app.add_subcommand("dump-code", "parse/generate a code and dump its canonical form");
    dumpc->add_option("--code", dumpc_spec, "generator spec or code file")->required();
    dumpc->add_option("-o,--out", dumpc_out, "output file (default stdout)");

    CompileArgs ca;
    auto* comp = app.add_subcommand("compile", "compile, verify and simulate");
    add_compile_options(comp, ca);
    comp->add_option("--ancilla-budget", ca.budget, "ancilla count, or 'm'");
    comp->add_option("-o,--out", ca.out, "latency report file (default stdout)");
    comp->add_option("--dump-schedule", ca.dump_sched, "write the schedule");
    comp->add_option("--dump-mapping", ca.dump_mapping, "write phi_0 as text");
    comp->add_option("--emit-events", ca.emit_events, "write the timestamped event log");

    std::string sim_sched, sim_hw, sim_out, sim_events;
    auto* sim = app.add_subcommand("simulate", "simulate a schedule file");
    sim->add_option("--schedule", sim_sched, "schedule file")->required();
    sim->add_option("--hw", sim_hw, "hardware spec")->required();
    sim->add_option("-o,--out", sim_out, "latency report file (default stdout)");
    sim->add_option("--emit-events", sim_events, "write the timestamped event log");

    std::string ver_sched, ver_hw, ver_code;
    auto* ver = app.add_subcommand("verify", "verify a schedule file");
    ver->add_option("--schedule", ver_sched, "schedule file")->required();
    ver->add_option("--hw", ver_hw, "hardware spec")->required();
    ver->add_option("--code", ver_code, "code spec or file")->required();

    std::string noise_report, noise_out;
    double noise_p = 0;
    auto* noise = app.add_subcommand("noise", "convert a latency report to error-channel parameters");
    noise->add_option("--report", noise_report, "latency report JSON")->required();
    noise->add_option("-p", noise_p, "physical error rate")->required();
    noise->add_option("-o,--out", noise_out, "output file (default stdout)");

    CompileArgs sa;
    std::string sweep_out;
    auto* sweep = app.add_subcommand("sweep", "six-point ancilla budget sweep");
    add_compile_options(sweep, sa);
    sweep->add_option("-o,--out", sweep_out, "CSV output (default stdout)");

    std::string suite_manifest, suite_out;
    auto* suite = app.add_subcommand("suite", "run a manifest of codes and hardware");
    suite->add_option("--manifest", suite_manifest, "manifest JSON")->required();
    suite->add_option("-o,--out", suite_out, "CSV output (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            emit(gen_out, dump_code(resolve_code(gen_spec)));
        } else if (dumpc->parsed()) {
            emit(dumpc_out, dump_code(resolve_code(dumpc_spec)));
        } else if (comp->parsed()) {
            return do_compile(ca);
        } else if (sim->parsed()) {
            Schedule s = parse_schedule(slurp(sim_sched));
            StabilizerCode dummy;
            dummy.n = std::max(1, s.num_data);
            HardwareSpec hw = resolve_hardware(sim_hw, dummy);
            if (!sim_events.empty()) {
                std::vector<TimedOp> events;
                simulate_traced(s, hw.topology, hw.timing, &events);
                spill(sim_events, dump_events(s, hw.topology, events));
            }
            emit(sim_out, report_to_json(simulate(s, hw.topology, hw.timing)));
        } else if (ver->parsed()) {
            Schedule s = parse_schedule(slurp(ver_sched));
            StabilizerCode code = resolve_code(ver_code);
            HardwareSpec hw = resolve_hardware(ver_hw, code);
            VerifyReport v = verify(s, code, hw.topology, hw.timing);
            std::cout << v.summary() << "\n";
            for (const auto& viol : v.violations)
                std::cout << "op " << viol.op_index << " t=" << viol.at_us << "us: "
                          << viol.message << "\n";
            return v.ok() ? 0 : 1;
        } else if (noise->parsed()) {
            LatencyReport r = report_from_json(slurp(noise_report));
            emit(noise_out, error_budget_to_json(error_budget(r, noise_p)));
        } else if (sweep->parsed()) {
            StabilizerCode code = resolve_code(sa.code);
            HardwareSpec hw = resolve_hardware(sa.hw, code);
            auto rows = run_sweep(code, hw, compiler_from_name(sa.compiler), sa.rounds,
                                  sa.moveless_static);
            emit(sweep_out, sweep_csv(rows));
        } else if (suite->parsed()) {
            int rounds = 2;
            auto entries = parse_manifest(slurp(suite_manifest), &rounds);
            emit(suite_out, suite_csv(run_suite(entries, rounds)));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
