#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "divspec/sieve.hpp"

namespace divspec::reference {

// Serial, naive counterparts of the parallel kernels. These are the oracles
// the tests compare against and the baselines the benchmark times; they are
// deliberately simple rather than fast.

/// SPF by per-n trial division. O(n sqrt n); keep limit small.
SpfTable build_spf_table_naive(std::uint64_t limit);

/// lambda/mu/phi by per-n trial-division factorization.
MultiplicativeTables build_multiplicative_tables_naive(std::uint64_t limit);

/// Divisors of n by scanning every candidate d <= n.
std::vector<std::uint64_t> divisors_by_scan(std::uint64_t n);

/// Serial segmentless version of the batch divisor-sum sweep.
/// coef[d] is added to every multiple of d below x, for 1 <= d < z.
std::vector<std::int32_t> batch_sweep_serial(std::uint64_t x, std::uint64_t z,
                                             const std::vector<std::int8_t>& coef);

/// e(theta) summed term by term with a fresh transcendental call per term.
std::complex<double> exponential_sum_direct(const std::vector<std::complex<double>>& a,
                                            std::uint64_t b, std::uint64_t q);

}  // namespace divspec::reference
