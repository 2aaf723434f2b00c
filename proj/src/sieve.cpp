#include "divspec/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <new>

namespace divspec {

namespace {

std::uint64_t isqrt_u64(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Primes up to lim by a plain bit sieve; lim is at most sqrt(limit).
std::vector<std::uint32_t> base_primes(std::uint64_t lim) {
    std::vector<std::uint32_t> primes;
    if (lim < 2) return primes;
    std::vector<char> comp(lim + 1, 0);
    for (std::uint64_t i = 2; i * i <= lim; ++i)
        if (!comp[i])
            for (std::uint64_t j = i * i; j <= lim; j += i) comp[j] = 1;
    for (std::uint64_t i = 2; i <= lim; ++i)
        if (!comp[i]) primes.push_back(static_cast<std::uint32_t>(i));
    return primes;
}

}  // namespace

SpfTable build_spf_table(std::uint64_t limit, std::uint64_t segment_size) {
    if (limit < 1) throw std::invalid_argument("build_spf_table: limit must be >= 1");
    if (limit > kMaxSieveLimit)
        throw capacity_error("build_spf_table: limit " + std::to_string(limit) +
                             " exceeds 32-bit entry width (max " + std::to_string(kMaxSieveLimit) + ")");
    if (segment_size == 0) segment_size = 1u << 18;  // ~1 MiB of u32 per segment

    SpfTable t;
    t.limit = limit;
    try {
        t.spf.assign(limit + 1, 0);
    } catch (const std::bad_alloc&) {
        throw capacity_error("build_spf_table: cannot allocate " +
                             std::to_string((limit + 1) * sizeof(std::uint32_t)) + " bytes");
    }
    t.spf[0] = 0;
    t.spf[1] = 1;

    const auto primes = base_primes(isqrt_u64(limit));
    const std::uint64_t first = 2;
    const std::uint64_t nseg = (limit < first) ? 0 : (limit - first) / segment_size + 1;

#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(nseg); ++s) {
        const std::uint64_t lo = first + static_cast<std::uint64_t>(s) * segment_size;
        const std::uint64_t hi = std::min(limit + 1, lo + segment_size);  // [lo, hi)
        std::uint32_t* seg = t.spf.data();
        // Ascending p: first prime to touch n is its smallest factor. A
        // composite below hi with smallest factor p needs p*p < hi; primes
        // left unmarked are handled below.
        for (std::uint32_t p : primes) {
            std::uint64_t p64 = p;
            if (p64 * p64 >= hi) break;
            std::uint64_t start = std::max(p64, (lo + p64 - 1) / p64 * p64);
            for (std::uint64_t m = start; m < hi; m += p64)
                if (seg[m] == 0) seg[m] = p;
        }
        for (std::uint64_t n = lo; n < hi; ++n)
            if (seg[n] == 0) seg[n] = static_cast<std::uint32_t>(n);  // prime beyond sqrt(limit)
    }
    return t;
}

MultiplicativeTables build_multiplicative_tables(const SpfTable& spf) {
    if (spf.limit < 1 || spf.spf.size() != spf.limit + 1)
        throw std::invalid_argument("build_multiplicative_tables: invalid SpfTable");

    MultiplicativeTables t;
    t.limit = spf.limit;
    try {
        t.lambda.assign(t.limit + 1, 0);
        t.mu.assign(t.limit + 1, 0);
        t.phi.assign(t.limit + 1, 0);
    } catch (const std::bad_alloc&) {
        throw capacity_error("build_multiplicative_tables: tables for limit " +
                             std::to_string(t.limit) + " do not fit in memory");
    }
    t.lambda[1] = 1;
    t.mu[1] = 1;
    t.phi[1] = 1;

    // n/spf[n] < lo for n >= lo when segments double, so each segment only
    // reads values finished in earlier segments.
    for (std::uint64_t lo = 2; lo <= t.limit; lo = std::min(t.limit + 1, lo * 2)) {
        const std::uint64_t hi = std::min(t.limit + 1, lo * 2);
#pragma omp parallel for schedule(static)
        for (std::int64_t ni = static_cast<std::int64_t>(lo); ni < static_cast<std::int64_t>(hi); ++ni) {
            const std::uint64_t n = static_cast<std::uint64_t>(ni);
            const std::uint64_t p = spf.spf[n];
            const std::uint64_t m = n / p;
            // every prime factor of m is >= p, so p | m iff spf[m] == p
            const bool p_divides_m = spf.spf[m] == p;
            t.lambda[n] = static_cast<std::int8_t>(-t.lambda[m]);
            t.mu[n] = p_divides_m ? std::int8_t{0} : static_cast<std::int8_t>(-t.mu[m]);
            t.phi[n] = t.phi[m] * (p_divides_m ? p : p - 1);
        }
    }
    return t;
}

std::vector<PrimePower> factorize(std::uint64_t n, const SpfTable& spf) {
    if (n < 1 || n > spf.limit)
        throw std::out_of_range("factorize: n=" + std::to_string(n) + " outside table limit " +
                                std::to_string(spf.limit));
    std::vector<PrimePower> out;
    std::uint64_t m = n;
    while (m > 1) {
        const std::uint64_t p = spf.spf[m];
        std::uint32_t e = 0;
        while (m % p == 0) { m /= p; ++e; }
        out.push_back({p, e});
    }
    return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n, const SpfTable& spf) {
    const auto fac = factorize(n, spf);
    std::vector<std::uint64_t> divs{1};
    for (const auto& [p, e] : fac) {
        const std::size_t base = divs.size();
        std::uint64_t pe = 1;
        for (std::uint32_t k = 1; k <= e; ++k) {
            pe *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pe);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

namespace {
constexpr char kSpfMagic[8] = {'D', 'V', 'S', 'P', 'S', 'P', 'F', '1'};
}

void dump_spf_table(const SpfTable& spf, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("dump_spf_table: cannot open " + path);
    out.write(kSpfMagic, sizeof(kSpfMagic));
    std::uint64_t limit = spf.limit;
    out.write(reinterpret_cast<const char*>(&limit), sizeof(limit));
    out.write(reinterpret_cast<const char*>(spf.spf.data()),
              static_cast<std::streamsize>(spf.spf.size() * sizeof(std::uint32_t)));
    if (!out) throw std::runtime_error("dump_spf_table: write failed for " + path);
}

SpfTable load_spf_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_spf_table: cannot open " + path);
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kSpfMagic, sizeof(magic)) != 0)
        throw std::runtime_error("load_spf_table: bad magic in " + path);
    std::uint64_t limit = 0;
    in.read(reinterpret_cast<char*>(&limit), sizeof(limit));
    if (!in || limit < 1 || limit > kMaxSieveLimit)
        throw std::runtime_error("load_spf_table: bad limit in " + path);
    SpfTable t;
    t.limit = limit;
    t.spf.assign(limit + 1, 0);
    in.read(reinterpret_cast<char*>(t.spf.data()),
            static_cast<std::streamsize>(t.spf.size() * sizeof(std::uint32_t)));
    if (!in) throw std::runtime_error("load_spf_table: truncated file " + path);
    return t;
}

}  // namespace divspec
