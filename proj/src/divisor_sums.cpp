#include "divspec/divisor_sums.hpp"

#include <algorithm>
#include <new>

#include "divspec/parallel.hpp"

namespace divspec {

const char* summand_name(SummandKind kind) {
    return kind == SummandKind::moebius ? "moebius" : "liouville";
}

SummandKind parse_summand(std::string_view text) {
    if (text == "moebius") return SummandKind::moebius;
    if (text == "liouville") return SummandKind::liouville;
    throw std::invalid_argument("kind must be 'moebius' or 'liouville'");
}

std::int64_t partial_divisor_sum(std::uint64_t n, std::uint64_t z, SummandKind kind,
                                 const SpfTable& spf, const MultiplicativeTables& tables) {
    if (n < 1) throw std::out_of_range("partial_divisor_sum: n must be >= 1");
    if (n > spf.limit || n > tables.limit)
        throw std::out_of_range("partial_divisor_sum: n=" + std::to_string(n) +
                                " beyond table limit");
    if (z < 1) throw std::invalid_argument("partial_divisor_sum: z must be >= 1");
    std::int64_t sum = 0;
    for (std::uint64_t d : divisors(n, spf)) {
        if (d >= z) break;  // divisors ascend
        sum += kind == SummandKind::moebius ? tables.mu[d] : tables.lambda[d];
    }
    return sum;
}

DivisorSumSeries batch_series(std::uint64_t x, std::uint64_t z, SummandKind kind,
                              const MultiplicativeTables& tables) {
    if (x < 2) throw std::invalid_argument("batch_series: x must be >= 2");
    if (z < 1) throw std::invalid_argument("batch_series: z must be >= 1");
    const std::uint64_t dmax = std::min(z, x);  // sweep needs d < z and d < x
    if (dmax >= 2 && tables.limit < dmax - 1)
        throw std::out_of_range("batch_series: tables cover " + std::to_string(tables.limit) +
                                ", need " + std::to_string(dmax - 1));

    DivisorSumSeries s;
    s.x = x;
    s.z = z;
    s.kind = kind;
    try {
        s.values.assign(x, 0);
    } catch (const std::bad_alloc&) {
        throw capacity_error("batch_series: series of length " + std::to_string(x) +
                             " does not fit in memory");
    }

    const std::int8_t* coef = kind == SummandKind::moebius ? tables.mu.data() : tables.lambda.data();
    // Disjoint n-blocks per task; every d-stride is replayed inside each
    // block, so writes never race and the result is schedule-independent.
    const std::uint64_t block = 1u << 16;
    const std::uint64_t nblocks = (x + block - 1) / block;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
        const std::uint64_t lo = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(b) * block);
        const std::uint64_t hi = std::min(x, (static_cast<std::uint64_t>(b) + 1) * block);
        std::int32_t* v = s.values.data();
        for (std::uint64_t d = 1; d < dmax; ++d) {
            const std::int32_t c = coef[d];
            if (c == 0) continue;
            for (std::uint64_t m = (lo + d - 1) / d * d; m < hi; m += d) v[m] += c;
        }
    }
    return s;
}

MomentRecord second_moment(const DivisorSumSeries& series) {
    MomentRecord rec;
    rec.x = series.x;
    rec.z = series.z;
    rec.kind = series.kind;
    rec.den = series.x;
    rec.num = blocked_sum_int(1, series.x, [&](std::uint64_t n) {
        const int128 v = series.values[n];
        return v * v;
    });
    rec.value = static_cast<double>(rec.num) / static_cast<double>(rec.den);
    return rec;
}

std::complex<double> weighted_average(const WeightFamily& family, const DivisorSumSeries& series,
                                      const MultiplicativeTables* eval_tables) {
    if (family.integer_valued()) {
        const Rat exact = weighted_average_exact(family, series, eval_tables);
        return {exact.to_double(), 0.0};
    }
    const std::uint64_t x = series.x;
    const auto sum = blocked_sum_complex(1, x, [&](std::uint64_t n) {
        return evaluate(family, n, x, eval_tables) * static_cast<double>(series.values[n]);
    });
    return sum / static_cast<double>(x);
}

Rat weighted_average_exact(const WeightFamily& family, const DivisorSumSeries& series,
                           const MultiplicativeTables* eval_tables) {
    if (!family.integer_valued())
        throw std::invalid_argument("weighted_average_exact: family is not integer-valued");
    const std::uint64_t x = series.x;
    const int128 num = blocked_sum_int(1, x, [&](std::uint64_t n) {
        return static_cast<int128>(evaluate_int(family, n, x, eval_tables)) * series.values[n];
    });
    return Rat::of(num, static_cast<int128>(x));
}

std::complex<double> weighted_average(const WeightFamily& family, std::uint64_t x, std::uint64_t z,
                                      const MultiplicativeTables& tables) {
    const auto series = batch_series(x, z, SummandKind::liouville, tables);
    return weighted_average(family, series, &tables);
}

}  // namespace divspec
