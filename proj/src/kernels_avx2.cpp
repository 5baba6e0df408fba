// AVX2+FMA kernel variants. Compiled with -mavx2 -mfma in its own TU; only
// reached through runtime dispatch so the rest of the binary stays generic.

#include "cutscape/kernels.hpp"

#if defined(CUTSCAPE_HAVE_AVX2_TU)

#include <immintrin.h>

#include <bit>

namespace cutscape::kernels {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Swap real/imag lanes of two packed complex: [re0 im0 re1 im1] ->
// [im0 re0 im1 re1].
inline __m256d swap_ri(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

inline void rotate_pair_scalar(cplx& a, cplx& b, double c, double s) {
    const cplx a0 = a;
    const cplx b0 = b;
    a = cplx(c * a0.real() + s * b0.imag(), c * a0.imag() - s * b0.real());
    b = cplx(c * b0.real() + s * a0.imag(), c * b0.imag() - s * a0.real());
}

void x_rotation_avx2(cplx* amp, std::size_t size, mask_t mask, double c,
                     double s) {
    const std::size_t run = std::size_t{1} << std::countr_zero(mask);
    const std::size_t high = std::size_t{1} << (63 - std::countl_zero(mask));
    if (run < 2) {
        // Odd mask: partners are never adjacent; plain pair loop.
        for (std::size_t base = 0; base < size; base += 2 * high)
            for (std::size_t off = 0; off < high; ++off) {
                const std::size_t z = base + off;
                rotate_pair_scalar(amp[z], amp[z ^ mask], c, s);
            }
        return;
    }
    const __m256d vc = _mm256_set1_pd(c);
    // a' = c*a + [s, -s] * swap_ri(b) implements a' = c*a - i*s*b.
    const __m256d vs = _mm256_setr_pd(s, -s, s, -s);
    for (std::size_t base = 0; base < size; base += 2 * high) {
        for (std::size_t off = 0; off < high; off += run) {
            double* p = reinterpret_cast<double*>(amp + base + off);
            double* q = reinterpret_cast<double*>(amp + ((base + off) ^ mask));
            for (std::size_t k = 0; k < 2 * run; k += 4) {
                const __m256d va = _mm256_loadu_pd(p + k);
                const __m256d vb = _mm256_loadu_pd(q + k);
                const __m256d na =
                    _mm256_fmadd_pd(vc, va, _mm256_mul_pd(vs, swap_ri(vb)));
                const __m256d nb =
                    _mm256_fmadd_pd(vc, vb, _mm256_mul_pd(vs, swap_ri(va)));
                _mm256_storeu_pd(p + k, na);
                _mm256_storeu_pd(q + k, nb);
            }
        }
    }
}

void zparity_phase_avx2(cplx* amp, std::size_t size, mask_t mask, cplx even,
                        cplx odd) {
    if (size < 4) {
        for (std::size_t z = 0; z < size; ++z)
            amp[z] *= parity(z & mask) ? odd : even;
        return;
    }
    // Multiplying by f = (fr, fi) is a' = fr*a + [−fi, fi] * swap_ri(a).
    // Per 4-state group only the parity of the high bits varies; the low two
    // bits contribute a fixed pattern, so 4 factor vectors cover everything.
    const bool p1 = parity(mask & 1u);
    const bool p2 = parity(mask & 2u);
    auto fac = [&](bool odd_par) { return odd_par ? odd : even; };
    __m256d re[4];
    __m256d imsgn[4];
    for (int hi = 0; hi < 2; ++hi) {
        const cplx f0 = fac(hi != 0);
        const cplx f1 = fac((hi != 0) ^ p1);
        const cplx f2 = fac((hi != 0) ^ p2);
        const cplx f3 = fac((hi != 0) ^ p1 ^ p2);
        re[hi * 2 + 0] = _mm256_setr_pd(f0.real(), f0.real(), f1.real(),
                                        f1.real());
        re[hi * 2 + 1] = _mm256_setr_pd(f2.real(), f2.real(), f3.real(),
                                        f3.real());
        imsgn[hi * 2 + 0] = _mm256_setr_pd(-f0.imag(), f0.imag(), -f1.imag(),
                                           f1.imag());
        imsgn[hi * 2 + 1] = _mm256_setr_pd(-f2.imag(), f2.imag(), -f3.imag(),
                                           f3.imag());
    }
    const mask_t hi_mask = mask & ~mask_t{3};
    double* p = reinterpret_cast<double*>(amp);
    for (std::size_t z = 0; z < size; z += 4) {
        const int hi = parity(z & hi_mask) ? 1 : 0;
        const __m256d v0 = _mm256_loadu_pd(p + 2 * z);
        const __m256d v1 = _mm256_loadu_pd(p + 2 * z + 4);
        _mm256_storeu_pd(
            p + 2 * z,
            _mm256_fmadd_pd(re[hi * 2 + 0], v0,
                            _mm256_mul_pd(imsgn[hi * 2 + 0], swap_ri(v0))));
        _mm256_storeu_pd(
            p + 2 * z + 4,
            _mm256_fmadd_pd(re[hi * 2 + 1], v1,
                            _mm256_mul_pd(imsgn[hi * 2 + 1], swap_ri(v1))));
    }
}

double weighted_prob_sum_avx2(const cplx* amp, std::size_t size,
                              const double* diag) {
    const double* p = reinterpret_cast<const double*>(amp);
    __m256d acc = _mm256_setzero_pd();
    std::size_t z = 0;
    for (; z + 4 <= size; z += 4) {
        const __m256d v0 = _mm256_loadu_pd(p + 2 * z);
        const __m256d v1 = _mm256_loadu_pd(p + 2 * z + 4);
        // hadd([a0 a1 a2 a3],[b0 b1 b2 b3]) = [a0+a1, b0+b1, a2+a3, b2+b3],
        // so probs land in order [z, z+2, z+1, z+3]; permute diag to match.
        const __m256d probs = _mm256_hadd_pd(_mm256_mul_pd(v0, v0),
                                             _mm256_mul_pd(v1, v1));
        const __m256d d = _mm256_permute4x64_pd(_mm256_loadu_pd(diag + z),
                                                _MM_SHUFFLE(3, 1, 2, 0));
        acc = _mm256_fmadd_pd(probs, d, acc);
    }
    double tail = 0.0;
    for (; z < size; ++z)
        tail += (amp[z].real() * amp[z].real() +
                 amp[z].imag() * amp[z].imag()) *
                diag[z];
    return hsum(acc) + tail;
}

// Per complex, Im(conj(b)*k) = br*ki - bi*kr; multiplying swap_ri(k) by b
// with a [+,-] sign pattern leaves those two terms in adjacent lanes.
inline __m256d im_terms(__m256d vb, __m256d vk) {
    const __m256d sgn = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
    return _mm256_mul_pd(_mm256_mul_pd(vb, swap_ri(vk)), sgn);
}

double xinsert_im_avx2(const cplx* bra, const cplx* ket, std::size_t size,
                       mask_t mask) {
    const std::size_t run = std::size_t{1} << std::countr_zero(mask);
    if (run < 2) {
        return scalar_table().xinsert_im(bra, ket, size, mask);
    }
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t z0 = 0; z0 < size; z0 += run) {
        const double* p = reinterpret_cast<const double*>(bra + z0);
        const double* q = reinterpret_cast<const double*>(ket + (z0 ^ mask));
        for (std::size_t k = 0; k < 2 * run; k += 4)
            acc = _mm256_add_pd(
                acc, im_terms(_mm256_loadu_pd(p + k), _mm256_loadu_pd(q + k)));
    }
    return hsum(acc);
}

double diag_insert_im_avx2(const cplx* bra, const cplx* ket,
                           const double* diag, std::size_t size) {
    const double* p = reinterpret_cast<const double*>(bra);
    const double* q = reinterpret_cast<const double*>(ket);
    __m256d acc = _mm256_setzero_pd();
    std::size_t z = 0;
    for (; z + 4 <= size; z += 4) {
        const __m256d t0 = im_terms(_mm256_loadu_pd(p + 2 * z),
                                    _mm256_loadu_pd(q + 2 * z));
        const __m256d t1 = im_terms(_mm256_loadu_pd(p + 2 * z + 4),
                                    _mm256_loadu_pd(q + 2 * z + 4));
        const __m256d ims = _mm256_hadd_pd(t0, t1);
        const __m256d d = _mm256_permute4x64_pd(_mm256_loadu_pd(diag + z),
                                                _MM_SHUFFLE(3, 1, 2, 0));
        acc = _mm256_fmadd_pd(ims, d, acc);
    }
    double tail = 0.0;
    for (; z < size; ++z)
        tail += diag[z] *
                (bra[z].real() * ket[z].imag() - bra[z].imag() * ket[z].real());
    return hsum(acc) + tail;
}

double zparity_insert_im_avx2(const cplx* bra, const cplx* ket,
                              std::size_t size, mask_t mask) {
    if (size < 4) return scalar_table().zparity_insert_im(bra, ket, size, mask);
    const bool p1 = parity(mask & 1u);
    const bool p2 = parity(mask & 2u);
    auto sg = [](bool odd_par) { return odd_par ? -1.0 : 1.0; };
    __m256d sgnv[2];
    for (int hi = 0; hi < 2; ++hi) {
        const double s0 = sg(hi != 0);
        const double s1 = sg((hi != 0) ^ p1);
        const double s2 = sg((hi != 0) ^ p2);
        const double s3 = sg((hi != 0) ^ p1 ^ p2);
        // Combined with the hadd lane order [z, z+2, z+1, z+3].
        sgnv[hi] = _mm256_setr_pd(s0, s2, s1, s3);
    }
    const mask_t hi_mask = mask & ~mask_t{3};
    const double* p = reinterpret_cast<const double*>(bra);
    const double* q = reinterpret_cast<const double*>(ket);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t z = 0; z < size; z += 4) {
        const __m256d t0 = im_terms(_mm256_loadu_pd(p + 2 * z),
                                    _mm256_loadu_pd(q + 2 * z));
        const __m256d t1 = im_terms(_mm256_loadu_pd(p + 2 * z + 4),
                                    _mm256_loadu_pd(q + 2 * z + 4));
        const __m256d ims = _mm256_hadd_pd(t0, t1);
        const int hi = parity(z & hi_mask) ? 1 : 0;
        acc = _mm256_fmadd_pd(ims, sgnv[hi], acc);
    }
    return hsum(acc);
}

}  // namespace

const KernelTable* avx2_table_impl() {
    static const KernelTable t = {
        "avx2",
        &x_rotation_avx2,
        &zparity_phase_avx2,
        &weighted_prob_sum_avx2,
        &xinsert_im_avx2,
        &diag_insert_im_avx2,
        &zparity_insert_im_avx2,
    };
    return &t;
}

}  // namespace cutscape::kernels

#else

namespace cutscape::kernels {
const KernelTable* avx2_table_impl() { return nullptr; }
}  // namespace cutscape::kernels

#endif
