#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace divspec {

// Fixed block width for parallel reductions. Partials are computed per block
// and combined in block order, so results do not depend on the thread count
// or schedule.
inline constexpr std::uint64_t kReductionBlock = 1u << 15;

/// Kahan-compensated accumulator.
struct Kahan {
    double sum = 0.0;
    double c = 0.0;
    void add(double v) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

struct KahanComplex {
    Kahan re, im;
    void add(std::complex<double> v) { re.add(v.real()); im.add(v.imag()); }
    std::complex<double> value() const { return {re.sum, im.sum}; }
};

/// Deterministic parallel sum of term(n) for n in [lo, hi).
template <class Term>
double blocked_sum(std::uint64_t lo, std::uint64_t hi, Term term) {
    if (hi <= lo) return 0.0;
    std::uint64_t nblocks = (hi - lo + kReductionBlock - 1) / kReductionBlock;
    std::vector<double> partial(nblocks, 0.0);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
        std::uint64_t blo = lo + static_cast<std::uint64_t>(b) * kReductionBlock;
        std::uint64_t bhi = blo + kReductionBlock < hi ? blo + kReductionBlock : hi;
        Kahan acc;
        for (std::uint64_t n = blo; n < bhi; ++n) acc.add(term(n));
        partial[static_cast<std::size_t>(b)] = acc.sum;
    }
    Kahan total;
    for (double p : partial) total.add(p);
    return total.sum;
}

/// Complex variant of blocked_sum.
template <class Term>
std::complex<double> blocked_sum_complex(std::uint64_t lo, std::uint64_t hi, Term term) {
    if (hi <= lo) return {0.0, 0.0};
    std::uint64_t nblocks = (hi - lo + kReductionBlock - 1) / kReductionBlock;
    std::vector<std::complex<double>> partial(nblocks, {0.0, 0.0});
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
        std::uint64_t blo = lo + static_cast<std::uint64_t>(b) * kReductionBlock;
        std::uint64_t bhi = blo + kReductionBlock < hi ? blo + kReductionBlock : hi;
        KahanComplex acc;
        for (std::uint64_t n = blo; n < bhi; ++n) acc.add(term(n));
        partial[static_cast<std::size_t>(b)] = acc.value();
    }
    KahanComplex total;
    for (auto p : partial) total.add(p);
    return total.value();
}

/// Deterministic parallel integer sum (exact, order-independent).
template <class Term>
__int128 blocked_sum_int(std::uint64_t lo, std::uint64_t hi, Term term) {
    if (hi <= lo) return 0;
    std::uint64_t nblocks = (hi - lo + kReductionBlock - 1) / kReductionBlock;
    std::vector<__int128> partial(nblocks, 0);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
        std::uint64_t blo = lo + static_cast<std::uint64_t>(b) * kReductionBlock;
        std::uint64_t bhi = blo + kReductionBlock < hi ? blo + kReductionBlock : hi;
        __int128 acc = 0;
        for (std::uint64_t n = blo; n < bhi; ++n) acc += term(n);
        partial[static_cast<std::size_t>(b)] = acc;
    }
    __int128 total = 0;
    for (auto p : partial) total += p;
    return total;
}

inline double wall_time() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return 0.0;
#endif
}

}  // namespace divspec
