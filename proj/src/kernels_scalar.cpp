#include <bit>
#include <cmath>

#include "cutscape/kernels.hpp"

namespace cutscape::kernels {

namespace {

// Pairs (z, z^mask) are visited once by restricting z to the half-space with
// the top bit of mask clear. Runs of 2^ctz(mask) consecutive z share the same
// xor offset, so both sides of a run are contiguous.
void x_rotation_scalar(cplx* amp, std::size_t size, mask_t mask, double c,
                       double s) {
    const std::size_t run = std::size_t{1} << std::countr_zero(mask);
    const std::size_t high = std::size_t{1} << (63 - std::countl_zero(mask));
    const cplx mis(0.0, -s);
    for (std::size_t base = 0; base < size; base += 2 * high) {
        for (std::size_t off = 0; off < high; off += run) {
            cplx* p = amp + base + off;
            cplx* q = amp + ((base + off) ^ mask);
            for (std::size_t k = 0; k < run; ++k) {
                const cplx a = p[k];
                const cplx b = q[k];
                p[k] = c * a + mis * b;
                q[k] = c * b + mis * a;
            }
        }
    }
}

void zparity_phase_scalar(cplx* amp, std::size_t size, mask_t mask, cplx even,
                          cplx odd) {
    for (std::size_t z = 0; z < size; ++z)
        amp[z] *= parity(z & mask) ? odd : even;
}

double weighted_prob_sum_scalar(const cplx* amp, std::size_t size,
                                const double* diag) {
    double acc = 0.0;
    for (std::size_t z = 0; z < size; ++z)
        acc += (amp[z].real() * amp[z].real() + amp[z].imag() * amp[z].imag()) *
               diag[z];
    return acc;
}

double xinsert_im_scalar(const cplx* bra, const cplx* ket, std::size_t size,
                         mask_t mask) {
    const std::size_t run = std::size_t{1} << std::countr_zero(mask);
    double acc = 0.0;
    for (std::size_t z0 = 0; z0 < size; z0 += run) {
        const cplx* p = bra + z0;
        const cplx* q = ket + (z0 ^ mask);
        for (std::size_t k = 0; k < run; ++k)
            acc += p[k].real() * q[k].imag() - p[k].imag() * q[k].real();
    }
    return acc;
}

double diag_insert_im_scalar(const cplx* bra, const cplx* ket,
                             const double* diag, std::size_t size) {
    double acc = 0.0;
    for (std::size_t z = 0; z < size; ++z)
        acc += diag[z] *
               (bra[z].real() * ket[z].imag() - bra[z].imag() * ket[z].real());
    return acc;
}

double zparity_insert_im_scalar(const cplx* bra, const cplx* ket,
                                std::size_t size, mask_t mask) {
    double acc = 0.0;
    for (std::size_t z = 0; z < size; ++z) {
        const double im =
            bra[z].real() * ket[z].imag() - bra[z].imag() * ket[z].real();
        acc += parity(z & mask) ? -im : im;
    }
    return acc;
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable t = {
        "scalar",
        &x_rotation_scalar,
        &zparity_phase_scalar,
        &weighted_prob_sum_scalar,
        &xinsert_im_scalar,
        &diag_insert_im_scalar,
        &zparity_insert_im_scalar,
    };
    return t;
}

void apply_diag_phase(cplx* amp, std::size_t size, const double* diag,
                      double theta) {
    for (std::size_t z = 0; z < size; ++z)
        amp[z] *= cplx(std::cos(theta * diag[z]), -std::sin(theta * diag[z]));
}

void apply_popcount_phase(cplx* amp, std::size_t size, const cplx* factors) {
    for (std::size_t z = 0; z < size; ++z)
        amp[z] *= factors[std::popcount<mask_t>(z)];
}

double popcount_insert_im(const cplx* bra, const cplx* ket, std::size_t size,
                          int n) {
    double acc = 0.0;
    for (std::size_t z = 0; z < size; ++z) {
        const double coeff = n - 2 * std::popcount<mask_t>(z);
        acc += coeff *
               (bra[z].real() * ket[z].imag() - bra[z].imag() * ket[z].real());
    }
    return acc;
}

cplx diag_cross(const cplx* bra, const cplx* ket, const double* diag,
                std::size_t size, mask_t bra_mask, mask_t ket_mask) {
    cplx acc(0.0, 0.0);
    for (std::size_t z = 0; z < size; ++z)
        acc += std::conj(bra[z ^ bra_mask]) * diag[z] * ket[z ^ ket_mask];
    return acc;
}

}  // namespace cutscape::kernels
