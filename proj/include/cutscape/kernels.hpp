#pragma once

#include <complex>
#include <cstddef>

#include "cutscape/bits.hpp"

namespace cutscape::kernels {

using cplx = std::complex<double>;

// Hot amplitude-array kernels, provided as a scalar reference implementation
// and an AVX2 variant selected once at runtime. All kernels are pure loops:
// callers own validation and sizing (size = 2^n, masks < size).
struct KernelTable {
    const char* name;

    // In-place rotation e^(-i theta X_mask): for every pair (z, z^mask),
    //   amp[z]      <- c*amp[z]      - i*s*amp[z^mask]
    //   amp[z^mask] <- c*amp[z^mask] - i*s*amp[z]
    // with c = cos(theta), s = sin(theta).
    void (*apply_x_rotation)(cplx* amp, std::size_t size, mask_t mask,
                             double c, double s);

    // In-place diagonal multiply amp[z] *= (parity(z & mask) ? odd : even).
    void (*apply_zparity_phase)(cplx* amp, std::size_t size, mask_t mask,
                                cplx even, cplx odd);

    // sum_z |amp[z]|^2 * diag[z].
    double (*weighted_prob_sum)(const cplx* amp, std::size_t size,
                                const double* diag);

    // Im sum_z conj(bra[z]) * ket[z ^ mask].
    double (*xinsert_im)(const cplx* bra, const cplx* ket, std::size_t size,
                         mask_t mask);

    // Im sum_z conj(bra[z]) * diag[z] * ket[z].
    double (*diag_insert_im)(const cplx* bra, const cplx* ket,
                             const double* diag, std::size_t size);

    // Im sum_z conj(bra[z]) * (parity(z & mask) ? -1 : +1) * ket[z].
    double (*zparity_insert_im)(const cplx* bra, const cplx* ket,
                                std::size_t size, mask_t mask);
};

// Active table: AVX2 when the CPU supports AVX2+FMA and the build carries the
// variant, else scalar. Overridable via CUTSCAPE_SIMD=scalar|avx2|auto.
const KernelTable& active();

const KernelTable& scalar_table();
// Null when this build or CPU lacks AVX2.
const KernelTable* avx2_table();

// Test hook: force a specific table (nullptr restores dispatch).
void force_table(const KernelTable* t);

// Scalar-only helpers (transcendental-bound or cold paths; no SIMD variant).

// amp[z] *= exp(-i * theta * diag[z]).
void apply_diag_phase(cplx* amp, std::size_t size, const double* diag,
                      double theta);

// amp[z] *= factors[popcount(z)] (factors has n+1 entries).
void apply_popcount_phase(cplx* amp, std::size_t size, const cplx* factors);

// Im sum_z conj(bra[z]) * (n - 2*popcount(z)) * ket[z].
double popcount_insert_im(const cplx* bra, const cplx* ket, std::size_t size,
                          int n);

// Re/Im of sum_z conj(bra[z]) * diag[z] * ket[z ^ mask] (Hessian terms).
cplx diag_cross(const cplx* bra, const cplx* ket, const double* diag,
                std::size_t size, mask_t bra_mask, mask_t ket_mask);

}  // namespace cutscape::kernels
