#include "divspec/reference.hpp"

#include <cmath>
#include <numbers>

namespace divspec::reference {

SpfTable build_spf_table_naive(std::uint64_t limit) {
    if (limit < 1) throw std::invalid_argument("build_spf_table_naive: limit must be >= 1");
    SpfTable t;
    t.limit = limit;
    t.spf.assign(limit + 1, 0);
    t.spf[1] = 1;
    for (std::uint64_t n = 2; n <= limit; ++n) {
        std::uint64_t p = n;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) { p = d; break; }
        t.spf[n] = static_cast<std::uint32_t>(p);
    }
    return t;
}

MultiplicativeTables build_multiplicative_tables_naive(std::uint64_t limit) {
    MultiplicativeTables t;
    t.limit = limit;
    t.lambda.assign(limit + 1, 0);
    t.mu.assign(limit + 1, 0);
    t.phi.assign(limit + 1, 0);
    t.lambda[1] = 1;
    t.mu[1] = 1;
    t.phi[1] = 1;
    for (std::uint64_t n = 2; n <= limit; ++n) {
        std::uint64_t m = n;
        std::uint32_t big_omega = 0;
        bool squarefree = true;
        std::uint32_t distinct = 0;
        std::uint64_t phi = 1;
        for (std::uint64_t d = 2; d * d <= m; ++d) {
            if (m % d != 0) continue;
            std::uint32_t e = 0;
            std::uint64_t pe = 1;
            while (m % d == 0) { m /= d; ++e; pe *= d; }
            big_omega += e;
            ++distinct;
            if (e > 1) squarefree = false;
            phi *= pe / d * (d - 1);
        }
        if (m > 1) { big_omega += 1; ++distinct; phi *= m - 1; }
        t.lambda[n] = (big_omega % 2 == 0) ? 1 : -1;
        t.mu[n] = squarefree ? ((distinct % 2 == 0) ? std::int8_t{1} : std::int8_t{-1}) : std::int8_t{0};
        t.phi[n] = phi;
    }
    return t;
}

std::vector<std::uint64_t> divisors_by_scan(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

std::vector<std::int32_t> batch_sweep_serial(std::uint64_t x, std::uint64_t z,
                                             const std::vector<std::int8_t>& coef) {
    std::vector<std::int32_t> values(x, 0);
    const std::uint64_t dmax = std::min(z, x);  // d < z and d < x
    for (std::uint64_t d = 1; d < dmax; ++d) {
        const std::int32_t c = coef[d];
        if (c == 0) continue;
        for (std::uint64_t m = d; m < x; m += d) values[m] += c;
    }
    return values;
}

std::complex<double> exponential_sum_direct(const std::vector<std::complex<double>>& a,
                                            std::uint64_t b, std::uint64_t q) {
    std::complex<double> s{0.0, 0.0};
    for (std::uint64_t n = 1; n < a.size(); ++n) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(n) *
                             static_cast<double>(b) / static_cast<double>(q);
        s += a[n] * std::complex<double>(std::cos(theta), std::sin(theta));
    }
    return s / static_cast<double>(a.size());
}

}  // namespace divspec::reference
