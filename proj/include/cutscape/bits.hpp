#pragma once

#include <bit>
#include <cstdint>

namespace cutscape {

using mask_t = std::uint64_t;

inline int popcount(mask_t m) { return std::popcount(m); }

// Parity of the number of set bits: 0 or 1.
inline int parity(mask_t m) { return std::popcount(m) & 1; }

inline mask_t full_mask(int n) {
    return n >= 64 ? ~mask_t{0} : (mask_t{1} << n) - 1;
}

inline mask_t bit(int i) { return mask_t{1} << i; }

inline bool has_bit(mask_t m, int i) { return (m >> i) & 1; }

// Complement within n bits (the Z2-symmetric partner of a cut or subset).
inline mask_t complement(mask_t m, int n) { return ~m & full_mask(n); }

// Representative of the pair {m, complement(m)}: the one with the top bit
// (vertex n-1) clear. Both members describe the same cut.
inline mask_t canonical_cut(mask_t m, int n) {
    return has_bit(m, n - 1) ? complement(m, n) : m;
}

}  // namespace cutscape
