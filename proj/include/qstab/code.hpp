#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qstab {

enum class Pauli : std::uint8_t { X, Y, Z };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// One parity check: an ordered list of (data qubit, Pauli) terms.
/// The support order is significant — it is the static gate order a
/// compiler uses unless it is allowed to reorder.
struct Stabilizer {
    int id = 0;
    std::vector<std::pair<int, Pauli>> support;

    int weight() const { return static_cast<int>(support.size()); }
    bool is_pure(Pauli p) const;
};

struct StabilizerCode {
    int n = 0;  // data qubit count
    std::vector<Stabilizer> stabilizers;
    std::string label;

    int m() const { return static_cast<int>(stabilizers.size()); }
    int max_weight() const;
};

/// Bipartite check/data adjacency derived from the stabilizer supports.
struct TannerGraph {
    int num_checks = 0;
    int num_data = 0;
    std::vector<std::vector<int>> check_neighbors;  // check -> data ids
    std::vector<std::vector<int>> data_neighbors;   // data -> check ids

    int num_edges() const;
};

/// Validates supports, ranges and pairwise commutation. Throws
/// std::invalid_argument naming the offending stabilizer pair on failure.
void validate_code(const StabilizerCode& code);

bool stabilizers_commute(const Stabilizer& a, const Stabilizer& b);

/// Rotated surface code on a d x d data lattice: n = d^2, m = d^2 - 1.
/// X and Z plaquettes alternate in a checkerboard; boundary checks have
/// weight 2. Z checks carry the standard zigzag (nw, sw, ne, se) gate
/// order, X checks the row order (nw, ne, sw, se).
StabilizerCode build_surface_code(int d);

/// Triangular 6.6.6 color code: n = (3d^2+1)/4 data qubits, one X and one
/// Z stabilizer per face on identical supports (d=3 gives the Steane
/// layout).
StabilizerCode build_color_code(int d);

/// Length-n repetition code with Z Z checks on adjacent qubits.
StabilizerCode build_repetition_code(int n);

/// Text format: header "n=<int>", then one stabilizer per line as
/// whitespace-separated <Pauli><index> tokens. '#' starts a comment.
StabilizerCode parse_code(const std::string& text);
std::string dump_code(const StabilizerCode& code);

StabilizerCode load_code_file(const std::string& path);

TannerGraph tanner_graph(const StabilizerCode& code);

}  // namespace qstab
