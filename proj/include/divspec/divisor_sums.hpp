#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "divspec/rational.hpp"
#include "divspec/sieve.hpp"
#include "divspec/weights.hpp"

namespace divspec {

enum class SummandKind { moebius, liouville };

const char* summand_name(SummandKind kind);
SummandKind parse_summand(std::string_view text);

/// values[n] = sum of mu(d) (or lambda(d)) over divisors d of n with d < z,
/// for 1 <= n < x. values[0] is unused and zero.
struct DivisorSumSeries {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    SummandKind kind = SummandKind::moebius;
    std::vector<std::int32_t> values;
};

/// Exact partial divisor sum for a single n via divisor enumeration.
/// z = 1 gives the empty sum 0.
std::int64_t partial_divisor_sum(std::uint64_t n, std::uint64_t z, SummandKind kind,
                                 const SpfTable& spf, const MultiplicativeTables& tables);

/// Multiples sweep: for each d < z, add mu(d)/lambda(d) to every multiple of
/// d below x. O(x log z) additions, parallel over disjoint n-blocks, result
/// independent of thread count. tables must cover min(z, x) - 1.
DivisorSumSeries batch_series(std::uint64_t x, std::uint64_t z, SummandKind kind,
                              const MultiplicativeTables& tables);

struct MomentRecord {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    SummandKind kind = SummandKind::moebius;
    int128 num = 0;          // sum of values[n]^2, exact
    std::uint64_t den = 0;   // = x
    double value = 0.0;      // float rendering of num/den
};

/// x^{-1} * sum of values[n]^2 as an exact rational. The 128-bit accumulator
/// is safe while x * max|value|^2 < 2^127.
MomentRecord second_moment(const DivisorSumSeries& series);

/// A(x,z) = x^{-1} * sum_{1<=n<x} a_n * L(n,z) over a precomputed series.
/// eval_tables backs table-dependent families (lambda/mu weights).
std::complex<double> weighted_average(const WeightFamily& family, const DivisorSumSeries& series,
                                      const MultiplicativeTables* eval_tables = nullptr);

/// Exact rational path; requires family.integer_valued().
Rat weighted_average_exact(const WeightFamily& family, const DivisorSumSeries& series,
                           const MultiplicativeTables* eval_tables = nullptr);

/// Convenience wrapper building the liouville series internally. tables must
/// cover min(z, x) - 1, and x - 1 when the family itself is table-backed.
std::complex<double> weighted_average(const WeightFamily& family, std::uint64_t x, std::uint64_t z,
                                      const MultiplicativeTables& tables);

}  // namespace divspec
