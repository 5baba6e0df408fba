#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cutscape/bits.hpp"

namespace cutscape {

// One parameterized gate generator. Every generator carries exactly one
// variational parameter.
//   x_string        e^(-i theta X_m)         m = product mask
//   z_string        e^(-i theta Z_m)
//   local_x         e^(-i theta X_q)         mask = single bit
//   global_x_mixer  e^(-i theta sum_i X_i)
//   global_z_mixer  e^(-i theta sum_i Z_i)
//   problem_phase   e^(-i theta H_p)         H_p supplied at evaluation time
enum class GenKind {
    x_string,
    z_string,
    local_x,
    global_x_mixer,
    global_z_mixer,
    problem_phase,
};

struct Generator {
    GenKind kind = GenKind::x_string;
    mask_t mask = 0;  // zero for the maskless kinds
};

enum class InitialState { all_zeros, all_plus };

struct Ansatz {
    int n = 0;
    InitialState init = InitialState::all_zeros;
    std::vector<Generator> gens;

    int param_count() const { return static_cast<int>(gens.size()); }
    // Max popcount over X-type masks (the k-body depth).
    int depth() const;
    // True when every generator is an X string (mutually commuting family).
    bool pure_x() const;
    void validate() const;
};

// Returns true for kinds whose generator is a product of X operators on a
// single mask (x_string and local_x).
bool is_x_type(GenKind kind);

const char* kind_name(GenKind kind);

// The X-string masks of a pure-X ansatz (the collection A).
std::vector<mask_t> x_masks(const Ansatz& a);

// n single-qubit X rotations from |0...0>.
Ansatz classical_ansatz(int n);

// All non-empty masks of popcount <= D, ordered by (popcount, numeric value).
Ansatz x_ansatz_depth(int n, int D);

// One representative per complement pair of proper non-empty subsets:
// the mask with vertex n-1 absent. M = 2^(n-1) - 1.
Ansatz x_ansatz_full_nonsymmetric(int n);

// Nested prefix masks {0}, {0,1}, ..., {0..n-2}. M = n-1.
Ansatz path_ansatz(int n);

// n rotated copies of the path construction, one starting at each vertex.
// M = n(n-1).
Ansatz ring_ansatz(int n);

enum class XzVariant { kbody_z, global_z };

// X-ansatz of depth D with each x_string immediately followed by a z-part:
// the matching Z string (kbody_z) or a shared sum-of-Z layer (global_z).
Ansatz xz_ansatz(int n, int D, XzVariant variant);

enum class QaoaVariant { standard, local_x, local_x_zero_start };

// p layers of mixer-then-problem-phase from |+...+> (standard: one global
// X mixer per layer, M = 2p) or with n independent local X rotations per
// layer (local_x, M = (n+1)p); local_x_zero_start starts from |0...0>.
Ansatz qaoa_ansatz(int n, int p_layers, QaoaVariant variant);

// Text serialization; round-trips bit-exactly.
void write_ansatz(std::ostream& out, const Ansatz& a);
Ansatz read_ansatz(std::istream& in);
void write_ansatz_file(const std::string& path, const Ansatz& a);
Ansatz read_ansatz_file(const std::string& path);

// Compact constructor strings for the CLI:
//   classical:N    xdepth:N:D     xfull:N    path:N    ring:N
//   xz:N:D:kbody   xz:N:D:globalz
//   qaoa:N:P:standard  qaoa:N:P:localx  qaoa:N:P:localx0
Ansatz parse_ansatz_spec(const std::string& spec);

}  // namespace cutscape
