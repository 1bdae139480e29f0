#include "qstab/schedule.hpp"

#include <sstream>
#include <stdexcept>

namespace qstab {

std::string compiler_name(CompilerKind k) {
    switch (k) {
        case CompilerKind::Baseline: return "baseline";
        case CompilerKind::Mao: return "mao";
        default: return "moveless";
    }
}

CompilerKind compiler_from_name(const std::string& name) {
    if (name == "baseline") return CompilerKind::Baseline;
    if (name == "mao") return CompilerKind::Mao;
    if (name == "moveless") return CompilerKind::Moveless;
    throw std::invalid_argument("unknown compiler: " + name);
}

int Schedule::shuttle_count() const {
    int c = 0;
    for (const auto& op : ops)
        if (op.kind == OpKind::Split) c++;
    return c;
}

int Schedule::swap_count() const {
    int c = 0;
    for (const auto& op : ops)
        if (op.kind == OpKind::IntraSwap) c++;
    return c;
}

static std::string ion_name(const Schedule& s, int ion) {
    if (ion < s.num_data) return "d" + std::to_string(ion);
    return "a" + std::to_string(ion - s.num_data);
}

std::string dump_schedule(const Schedule& s, const QccdTopology& topo) {
    std::ostringstream out;
    out << "# qstab schedule v1\n";
    out << "compiler " << compiler_name(s.compiler) << "\n";
    out << "budget " << s.ancilla_budget << "\n";
    out << "rounds " << s.rounds << "\n";
    out << "data " << s.num_data << "\n";
    out << "ancilla " << s.num_ancilla << "\n";
    out << "stabilizers " << s.num_stabilizers << "\n";
    out << "code " << (s.code_label.empty() ? "-" : s.code_label) << "\n";
    for (std::size_t t = 0; t < s.initial_chains.size(); t++) {
        out << "chain t" << t;
        for (int ion : s.initial_chains[t]) out << " " << ion_name(s, ion);
        out << "\n";
    }
    int round = -1;
    for (const auto& op : s.ops) {
        if (op.round != round) {
            round = op.round;
            out << "round " << round << "\n";
        }
        switch (op.kind) {
            case OpKind::Split:
                out << "split " << ion_name(s, op.ion_a) << " t" << op.trap << " sh" << op.shuttle
                    << (op.at_front ? " front" : " back");
                break;
            case OpKind::Merge:
                out << "merge " << ion_name(s, op.ion_a) << " t" << op.trap << " sh" << op.shuttle
                    << (op.at_front ? " front" : " back");
                break;
            case OpKind::Move:
                if (op.elem_edge >= 0) {
                    const auto& e = topo.edges[op.elem_edge];
                    out << "move " << ion_name(s, op.ion_a) << " seg" << op.elem_edge << ":" << e.a
                        << "-" << e.b << " sh" << op.shuttle;
                } else {
                    const char* k = topo.nodes[op.elem_node].kind == NodeKind::XJunction ? "jx"
                                    : topo.nodes[op.elem_node].kind == NodeKind::YJunction
                                        ? "jy"
                                        : "via";
                    out << "move " << ion_name(s, op.ion_a) << " " << k << op.elem_node << " sh"
                        << op.shuttle;
                }
                break;
            case OpKind::IntraSwap:
                out << "swap " << ion_name(s, op.ion_a) << " " << ion_name(s, op.ion_b) << " t"
                    << op.trap << " "
                    << (op.swap_method == SwapMethod::GateSwap ? "gateswap" : "ionswap");
                break;
            case OpKind::Gate1:
                out << "g1 " << ion_name(s, op.ion_a) << " t" << op.trap << " s" << op.stab;
                break;
            case OpKind::Gate2:
                out << "g2 " << ion_name(s, op.ion_a) << " " << ion_name(s, op.ion_b) << " t"
                    << op.trap << " s" << op.stab;
                break;
            case OpKind::Measure:
                out << "meas " << ion_name(s, op.ion_a) << " t" << op.trap << " s" << op.stab;
                break;
            case OpKind::Reset:
                out << "reset " << ion_name(s, op.ion_a) << " t" << op.trap;
                break;
            case OpKind::Cool:
                out << "cool " << ion_name(s, op.ion_a) << " t" << op.trap << " sh" << op.shuttle;
                break;
        }
        out << "\n";
    }
    return out.str();
}

namespace {

int parse_int_suffix(const std::string& tok, const std::string& prefix, const char* what) {
    if (tok.rfind(prefix, 0) != 0)
        throw std::invalid_argument(std::string("expected ") + what + ", got '" + tok + "'");
    return std::stoi(tok.substr(prefix.size()));
}

}  // namespace

Schedule parse_schedule(const std::string& text) {
    Schedule s;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int round = 0;
    auto ion_id = [&s](const std::string& tok) -> int {
        if (tok.size() < 2) throw std::invalid_argument("bad ion token '" + tok + "'");
        int k = std::stoi(tok.substr(1));
        if (tok[0] == 'd') return k;
        if (tok[0] == 'a') return s.num_data + k;
        throw std::invalid_argument("bad ion token '" + tok + "'");
    };
    while (std::getline(in, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::vector<std::string> t;
        std::string tok;
        while (ls >> tok) t.push_back(tok);
        if (t.empty()) continue;
        try {
            const std::string& k = t[0];
            if (k == "compiler") {
                s.compiler = compiler_from_name(t.at(1));
            } else if (k == "budget") {
                s.ancilla_budget = std::stoi(t.at(1));
            } else if (k == "rounds") {
                s.rounds = std::stoi(t.at(1));
            } else if (k == "data") {
                s.num_data = std::stoi(t.at(1));
            } else if (k == "ancilla") {
                s.num_ancilla = std::stoi(t.at(1));
            } else if (k == "stabilizers") {
                s.num_stabilizers = std::stoi(t.at(1));
            } else if (k == "code") {
                s.code_label = t.at(1) == "-" ? "" : t.at(1);
            } else if (k == "chain") {
                int trap = parse_int_suffix(t.at(1), "t", "trap");
                if (static_cast<int>(s.initial_chains.size()) <= trap)
                    s.initial_chains.resize(trap + 1);
                for (std::size_t i = 2; i < t.size(); i++)
                    s.initial_chains[trap].push_back(ion_id(t[i]));
            } else if (k == "round") {
                round = std::stoi(t.at(1));
            } else {
                Op op;
                op.round = round;
                if (k == "split" || k == "merge") {
                    op.kind = k == "split" ? OpKind::Split : OpKind::Merge;
                    op.ion_a = ion_id(t.at(1));
                    op.trap = parse_int_suffix(t.at(2), "t", "trap");
                    op.shuttle = parse_int_suffix(t.at(3), "sh", "shuttle id");
                    op.at_front = t.size() > 4 && t[4] == "front";
                } else if (k == "move") {
                    op.kind = OpKind::Move;
                    op.ion_a = ion_id(t.at(1));
                    const std::string& res = t.at(2);
                    if (res.rfind("seg", 0) == 0) {
                        op.elem_edge = std::stoi(res.substr(3, res.find(':') - 3));
                    } else if (res.rfind("jx", 0) == 0 || res.rfind("jy", 0) == 0) {
                        op.elem_node = std::stoi(res.substr(2));
                    } else if (res.rfind("via", 0) == 0) {
                        op.elem_node = std::stoi(res.substr(3));
                    } else {
                        throw std::invalid_argument("bad move resource '" + res + "'");
                    }
                    op.shuttle = parse_int_suffix(t.at(3), "sh", "shuttle id");
                } else if (k == "swap") {
                    op.kind = OpKind::IntraSwap;
                    op.ion_a = ion_id(t.at(1));
                    op.ion_b = ion_id(t.at(2));
                    op.trap = parse_int_suffix(t.at(3), "t", "trap");
                    op.swap_method = t.at(4) == "ionswap" ? SwapMethod::IonSwap : SwapMethod::GateSwap;
                } else if (k == "g1") {
                    op.kind = OpKind::Gate1;
                    op.ion_a = ion_id(t.at(1));
                    op.trap = parse_int_suffix(t.at(2), "t", "trap");
                    op.stab = parse_int_suffix(t.at(3), "s", "stabilizer");
                } else if (k == "g2") {
                    op.kind = OpKind::Gate2;
                    op.ion_a = ion_id(t.at(1));
                    op.ion_b = ion_id(t.at(2));
                    op.trap = parse_int_suffix(t.at(3), "t", "trap");
                    op.stab = parse_int_suffix(t.at(4), "s", "stabilizer");
                } else if (k == "meas") {
                    op.kind = OpKind::Measure;
                    op.ion_a = ion_id(t.at(1));
                    op.trap = parse_int_suffix(t.at(2), "t", "trap");
                    op.stab = parse_int_suffix(t.at(3), "s", "stabilizer");
                } else if (k == "reset") {
                    op.kind = OpKind::Reset;
                    op.ion_a = ion_id(t.at(1));
                    op.trap = parse_int_suffix(t.at(2), "t", "trap");
                } else if (k == "cool") {
                    op.kind = OpKind::Cool;
                    op.ion_a = ion_id(t.at(1));
                    op.trap = parse_int_suffix(t.at(2), "t", "trap");
                    op.shuttle = parse_int_suffix(t.at(3), "sh", "shuttle id");
                } else {
                    throw std::invalid_argument("unknown op '" + k + "'");
                }
                s.ops.push_back(op);
            }
        } catch (const std::exception& e) {
            throw std::invalid_argument("schedule line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return s;
}

}  // namespace qstab
