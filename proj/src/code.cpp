#include "qstab/code.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qstab {

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        default: return 'Z';
    }
}

Pauli pauli_from_char(char c) {
    switch (c) {
        case 'X': case 'x': return Pauli::X;
        case 'Y': case 'y': return Pauli::Y;
        case 'Z': case 'z': return Pauli::Z;
        default:
            throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
    }
}

bool Stabilizer::is_pure(Pauli p) const {
    return std::all_of(support.begin(), support.end(),
                       [p](const auto& t) { return t.second == p; });
}

int StabilizerCode::max_weight() const {
    int w = 0;
    for (const auto& s : stabilizers) w = std::max(w, s.weight());
    return w;
}

int TannerGraph::num_edges() const {
    int e = 0;
    for (const auto& nb : check_neighbors) e += static_cast<int>(nb.size());
    return e;
}

bool stabilizers_commute(const Stabilizer& a, const Stabilizer& b) {
    // Count positions where the two single-qubit Paulis anticommute.
    int anti = 0;
    for (const auto& [qa, pa] : a.support) {
        for (const auto& [qb, pb] : b.support) {
            if (qa == qb && pa != pb) anti++;
        }
    }
    return anti % 2 == 0;
}

void validate_code(const StabilizerCode& code) {
    if (code.n < 1) throw std::invalid_argument("code must have n >= 1 data qubits");
    for (const auto& s : code.stabilizers) {
        if (s.support.empty())
            throw std::invalid_argument("stabilizer " + std::to_string(s.id) + " has weight 0");
        std::set<int> seen;
        for (const auto& [q, p] : s.support) {
            (void)p;
            if (q < 0 || q >= code.n)
                throw std::invalid_argument("stabilizer " + std::to_string(s.id) +
                                            " references qubit " + std::to_string(q) +
                                            " outside [0," + std::to_string(code.n) + ")");
            if (!seen.insert(q).second)
                throw std::invalid_argument("stabilizer " + std::to_string(s.id) +
                                            " repeats qubit " + std::to_string(q));
        }
    }
    for (std::size_t i = 0; i < code.stabilizers.size(); i++) {
        for (std::size_t j = i + 1; j < code.stabilizers.size(); j++) {
            if (!stabilizers_commute(code.stabilizers[i], code.stabilizers[j]))
                throw std::invalid_argument(
                    "stabilizers " + std::to_string(code.stabilizers[i].id) + " and " +
                    std::to_string(code.stabilizers[j].id) + " anticommute");
        }
    }
}

StabilizerCode build_surface_code(int d) {
    if (d < 1 || d % 2 == 0)
        throw std::invalid_argument("surface code distance must be odd and >= 1");
    StabilizerCode code;
    code.n = d * d;
    code.label = "surface:" + std::to_string(d);
    auto data_id = [d](int r, int c) { return r * d + c; };

    // Candidate faces sit on the (d+1)x(d+1) dual lattice; face (r,c) has
    // corners (r,c),(r,c+1),(r+1,c),(r+1,c+1). Bulk faces alternate Z/X on
    // (r+c) parity. Of the weight-2 boundary faces only every other one is
    // kept: X on the top/bottom rows, Z on the left/right columns.
    int next_id = 0;
    for (int r = -1; r < d; r++) {
        for (int c = -1; c < d; c++) {
            bool z_type = ((r + c) % 2 + 2) % 2 == 0;
            std::vector<std::pair<int, int>> corners = {
                {r, c}, {r, c + 1}, {r + 1, c}, {r + 1, c + 1}};
            std::vector<std::pair<int, int>> inside;
            for (auto& [rr, cc] : corners)
                if (rr >= 0 && rr < d && cc >= 0 && cc < d) inside.push_back({rr, cc});
            if (inside.size() == 4) {
                // bulk face
            } else if (inside.size() == 2) {
                bool horizontal_edge = (r == -1 || r == d - 1);
                if (horizontal_edge && z_type) continue;   // top/bottom keep X
                if (!horizontal_edge && !z_type) continue; // left/right keep Z
            } else {
                continue;  // corners (weight 1) are never checks
            }
            Stabilizer s;
            s.id = next_id++;
            Pauli p = z_type ? Pauli::Z : Pauli::X;
            if (z_type && inside.size() == 4) {
                // zigzag order: nw, sw, ne, se
                s.support = {{data_id(r, c), p},
                             {data_id(r + 1, c), p},
                             {data_id(r, c + 1), p},
                             {data_id(r + 1, c + 1), p}};
            } else {
                for (auto& [rr, cc] : inside) s.support.push_back({data_id(rr, cc), p});
            }
            code.stabilizers.push_back(std::move(s));
        }
    }
    validate_code(code);
    return code;
}

StabilizerCode build_color_code(int d) {
    if (d < 3 || d % 2 == 0)
        throw std::invalid_argument("color code distance must be odd and >= 3");
    StabilizerCode code;
    code.label = "color:" + std::to_string(d);

    // Triangular patch with row lengths (3d-1)/2, (3d-1)/2 - 1, ..., 1.
    // Positions with (c - r) % 3 == 2 host a face; every other position is
    // a data qubit. Each face contributes an X and a Z stabilizer on the
    // same support (its lattice neighbors).
    int rows = (3 * d - 1) / 2;
    auto row_len = [rows](int r) { return rows - r; };
    auto is_face = [](int r, int c) { return ((c - r) % 3 + 3) % 3 == 2; };

    std::vector<std::vector<int>> data_at(rows);
    int n = 0;
    for (int r = 0; r < rows; r++) {
        data_at[r].assign(row_len(r), -1);
        for (int c = 0; c < row_len(r); c++)
            if (!is_face(r, c)) data_at[r][c] = n++;
    }
    code.n = n;

    auto data_or_neg = [&](int r, int c) -> int {
        if (r < 0 || r >= rows || c < 0 || c >= row_len(r)) return -1;
        return data_at[r][c];
    };

    int next_id = 0;
    for (int r = 0; r < rows; r++) {
        for (int c = 0; c < row_len(r); c++) {
            if (!is_face(r, c)) continue;
            // hexagon walk around the face
            const std::pair<int, int> nb[6] = {{r, c - 1},     {r + 1, c - 1}, {r + 1, c},
                                               {r, c + 1},     {r - 1, c + 1}, {r - 1, c}};
            std::vector<int> support;
            for (auto& [rr, cc] : nb) {
                int q = data_or_neg(rr, cc);
                if (q >= 0) support.push_back(q);
            }
            for (Pauli p : {Pauli::X, Pauli::Z}) {
                Stabilizer s;
                s.id = next_id++;
                for (int q : support) s.support.push_back({q, p});
                code.stabilizers.push_back(std::move(s));
            }
        }
    }
    validate_code(code);
    return code;
}

StabilizerCode build_repetition_code(int n) {
    if (n < 2) throw std::invalid_argument("repetition code needs n >= 2");
    StabilizerCode code;
    code.n = n;
    code.label = "repetition:" + std::to_string(n);
    for (int i = 0; i + 1 < n; i++) {
        Stabilizer s;
        s.id = i;
        s.support = {{i, Pauli::Z}, {i + 1, Pauli::Z}};
        code.stabilizers.push_back(std::move(s));
    }
    validate_code(code);
    return code;
}

StabilizerCode parse_code(const std::string& text) {
    StabilizerCode code;
    code.n = -1;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int next_id = 0;
    while (std::getline(in, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (tokens.empty()) continue;

        if (code.n < 0) {
            if (tokens.size() != 1 || tokens[0].rfind("n=", 0) != 0)
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": expected header 'n=<int>'");
            try {
                code.n = std::stoi(tokens[0].substr(2));
            } catch (const std::exception&) {
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": bad qubit count in header");
            }
            continue;
        }

        Stabilizer s;
        s.id = next_id++;
        for (std::size_t t = 0; t < tokens.size(); t++) {
            const std::string& w = tokens[t];
            if (w.size() < 2)
                throw std::invalid_argument("line " + std::to_string(lineno) + " token " +
                                            std::to_string(t + 1) + ": expected <Pauli><index>");
            Pauli p;
            try {
                p = pauli_from_char(w[0]);
            } catch (const std::exception&) {
                throw std::invalid_argument("line " + std::to_string(lineno) + " token " +
                                            std::to_string(t + 1) + ": '" + w +
                                            "' does not start with X, Y or Z");
            }
            int q;
            try {
                std::size_t used = 0;
                q = std::stoi(w.substr(1), &used);
                if (used != w.size() - 1) throw std::invalid_argument("trailing junk");
            } catch (const std::exception&) {
                throw std::invalid_argument("line " + std::to_string(lineno) + " token " +
                                            std::to_string(t + 1) + ": bad qubit index in '" +
                                            w + "'");
            }
            s.support.push_back({q, p});
        }
        code.stabilizers.push_back(std::move(s));
    }
    if (code.n < 0) throw std::invalid_argument("missing 'n=<int>' header");
    if (code.stabilizers.empty())
        throw std::invalid_argument("code declares no stabilizers (m >= 1 required)");
    code.label = "custom";
    validate_code(code);
    return code;
}

std::string dump_code(const StabilizerCode& code) {
    std::ostringstream out;
    out << "# " << (code.label.empty() ? std::string("stabilizer code") : code.label) << "\n";
    out << "n=" << code.n << "\n";
    for (const auto& s : code.stabilizers) {
        bool first = true;
        for (const auto& [q, p] : s.support) {
            if (!first) out << ' ';
            out << pauli_char(p) << q;
            first = false;
        }
        out << "\n";
    }
    return out.str();
}

StabilizerCode load_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open code file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    StabilizerCode code = parse_code(ss.str());
    code.label = path;
    return code;
}

TannerGraph tanner_graph(const StabilizerCode& code) {
    TannerGraph g;
    g.num_checks = code.m();
    g.num_data = code.n;
    g.check_neighbors.resize(g.num_checks);
    g.data_neighbors.resize(g.num_data);
    for (const auto& s : code.stabilizers) {
        for (const auto& [q, p] : s.support) {
            (void)p;
            g.check_neighbors[s.id].push_back(q);
            g.data_neighbors[q].push_back(s.id);
        }
    }
    return g;
}

}  // namespace qstab
