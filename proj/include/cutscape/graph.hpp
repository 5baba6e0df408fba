#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cutscape/bits.hpp"

namespace cutscape {

struct Edge {
    int a = 0;
    int b = 0;
    double w = 0.0;
};

// Weighted undirected graph; doubles as the diagonal Ising Hamiltonian
// H_p = sum_{(a,b)} w_{a,b} Z_a Z_b.
struct WeightedGraph {
    int n = 0;
    std::vector<Edge> edges;

    double total_weight() const;
    // Throws input_error on invalid vertex indices, duplicate edges,
    // self-loops, negative or non-finite weights.
    void validate() const;
};

// Cut as a bitmask: bit a = 1 iff vertex a is in S_z. The complement mask
// describes the same cut.
struct CutAssignment {
    mask_t bits = 0;
    int n = 0;
};

enum class GraphKind { complete, k_regular, path_chain, cycle };

struct GraphGenerator {
    GraphKind kind = GraphKind::complete;
    int n = 0;
    int degree = 3;  // k_regular only
    double weight_lo = 0.0;
    double weight_hi = 5.0;
    std::uint64_t seed = 0;
};

inline constexpr int kBruteForceCapDefault = 24;

// Total weight of edges crossing the cut.
double cut_value(const WeightedGraph& g, const CutAssignment& s);
double cut_value(const WeightedGraph& g, mask_t bits);  // unchecked hot path

// sum w * (-1)^(z_a xor z_b) = total_weight - 2 * cut_value.
double ising_energy(const WeightedGraph& g, const CutAssignment& z);
double ising_energy(const WeightedGraph& g, mask_t bits);

struct MaxCutResult {
    double value = 0.0;
    CutAssignment argmax;
};

// Exact maximum cut by enumeration over the 2^(n-1) assignments with
// vertex 0 fixed to side 0. Ties break toward the lowest mask value.
MaxCutResult max_cut_bruteforce(const WeightedGraph& g,
                                int cap = kBruteForceCapDefault);

WeightedGraph generate(const GraphGenerator& gen);

// Plain text format: first line "n m", then m lines "a b w".
WeightedGraph read_graph(std::istream& in);
WeightedGraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const WeightedGraph& g);
void write_graph_file(const std::string& path, const WeightedGraph& g);

}  // namespace cutscape
