#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "divspec/errors.hpp"

namespace divspec {

/// Smallest-prime-factor table for 1..limit. spf[1] = 1; spf[p] = p for
/// primes; otherwise spf[n] is the smallest prime dividing n. Immutable
/// after construction and safe for concurrent reads.
struct SpfTable {
    std::uint64_t limit = 0;
    std::vector<std::uint32_t> spf;  // index 0 unused

    std::uint32_t operator[](std::uint64_t n) const { return spf[n]; }
    bool is_prime(std::uint64_t n) const { return n >= 2 && spf[n] == n; }
};

/// lambda[n] = (-1)^Omega(n), mu[n] in {-1,0,1}, phi[n] = Euler totient,
/// for 1..limit.
struct MultiplicativeTables {
    std::uint64_t limit = 0;
    std::vector<std::int8_t> lambda;
    std::vector<std::int8_t> mu;
    std::vector<std::uint64_t> phi;
};

// spf entries are 32-bit; larger limits would need a wider table.
inline constexpr std::uint64_t kMaxSieveLimit = 0xFFFFFFFFull;

/// Segmented SPF sieve. Auxiliary memory beyond the output array is
/// O(sqrt(limit) + segment_size); segments are sieved in parallel.
/// segment_size = 0 picks a cache-sized default. Throws capacity_error
/// for limits that cannot be allocated.
SpfTable build_spf_table(std::uint64_t limit, std::uint64_t segment_size = 0);

/// Populate lambda, mu, phi from an SPF table (parallel, deterministic).
MultiplicativeTables build_multiplicative_tables(const SpfTable& spf);

struct PrimePower {
    std::uint64_t p;
    std::uint32_t e;
};

/// Prime factorization of n (primes strictly increasing). n must be within
/// the table limit; factorize(1) == {}.
std::vector<PrimePower> factorize(std::uint64_t n, const SpfTable& spf);

/// All divisors of n, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n, const SpfTable& spf);

// Binary dump/load so repeated experiments can skip re-sieving.
// Layout (little-endian): 8 magic bytes "DVSPSPF1", u64 limit,
// then (limit+1) u32 spf entries.
void dump_spf_table(const SpfTable& spf, const std::string& path);
SpfTable load_spf_table(const std::string& path);

}  // namespace divspec
