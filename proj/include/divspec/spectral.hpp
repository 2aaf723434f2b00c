#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "divspec/rational.hpp"
#include "divspec/sieve.hpp"
#include "divspec/weights.hpp"

namespace divspec {

/// w[j] = e(2*pi*i*j/q), one transcendental evaluation per entry.
struct RootTable {
    std::uint64_t q = 1;
    std::vector<std::complex<double>> w;
};

RootTable make_root_table(std::uint64_t q);

/// S_x(b/q) = x^{-1} sum_{n<x} a_n e(2*pi*i*n*b/q), evaluated by cycling the
/// period-q root table (index n*b mod q), never by per-term exp calls.
std::complex<double> exponential_sum(const WeightFamily& family, std::uint64_t x, std::uint64_t b,
                                     std::uint64_t q, const MultiplicativeTables* tables = nullptr);

/// f[q] = (q/x) sum_{n < x/q} a_{qn}; g[q] = sum_{d|q} mu(q/d) f[d].
/// For integer-valued families f_num/g_num hold the exact integers x*f[q]
/// and x*g[q] alongside the float renderings.
struct SpectralProfile {
    WeightFamily family;
    std::uint64_t x = 0;
    std::uint64_t qmax = 0;
    std::vector<std::complex<double>> f, g;  // index 0 unused
    std::vector<std::int64_t> f_num, g_num;  // empty unless exact
    bool exact() const { return !f_num.empty(); }
};

/// spf must cover qmax (divisor enumeration); tables must cover qmax for mu,
/// and x-1 when the family itself is table-backed.
SpectralProfile compute_profile(const WeightFamily& family, std::uint64_t x, std::uint64_t qmax,
                                const SpfTable& spf, const MultiplicativeTables& tables);

/// c_q(r) for r = 0..q-1: the integer Ramanujan sums
/// c_q(r) = sum_{d | gcd(q,r)} d * mu(q/d).
std::vector<std::int64_t> ramanujan_sums_mod_q(std::uint64_t q, const SpfTable& spf,
                                               const MultiplicativeTables& tables);

/// Both routes to sum*_{b mod q} S_x(b/q): per-class exponential sums over
/// primitive residues, and the exact x^{-1} sum_n a_n c_q(n) path.
struct PrimitiveAggregate {
    std::complex<double> exponential_path;
    std::complex<double> ramanujan_path;
    bool has_exact = false;
    int128 ramanujan_num = 0;  // x * aggregate when has_exact
    double dual_residual = 0.0;
};

PrimitiveAggregate primitive_aggregate(const WeightFamily& family, std::uint64_t x, std::uint64_t q,
                                       const SpfTable& spf, const MultiplicativeTables& tables);

struct LemmaRow {
    std::uint64_t q = 0;
    double residual = 0.0;  // max deviation of g_x(q) from either aggregate path
    bool exact_ok = true;   // integer equality x*g == x*aggregate (integer families)
};

struct LemmaReport {
    WeightFamily family;
    std::uint64_t x = 0;
    std::uint64_t qmax = 0;
    double tol = 0.0;
    std::vector<LemmaRow> rows;
    bool passed = false;
};

/// Checks g_x(q) = sum*_{b mod q} S_x(b/q) for every q <= qmax. Residuals
/// are data, not errors; passed = all residuals < tol and exact paths agree.
LemmaReport verify_lemma(const WeightFamily& family, std::uint64_t x, std::uint64_t qmax, double tol,
                         const SpfTable& spf, const MultiplicativeTables& tables);

struct LargeSieveReport {
    WeightFamily family;
    std::uint64_t x = 0;
    std::uint64_t Q = 0;
    double lhs = 0.0;     // sum_{q<=Q} sum*_b |sum_{n<x} a_n e(nb/q)|^2
    double rhs = 0.0;     // (x + Q^2) * sum_{n<x} |a_n|^2
    double ratio = 0.0;   // lhs / rhs
    double energy = 0.0;  // sum_{q<=Q} |g_x(q)|^2 / phi(q)
    double rhs_linear_q = 0.0;  // (x + Q) * sum |a_n|^2, reported but never asserted
    bool ratio_ok = false;        // lhs <= rhs
    bool cauchy_ok = false;       // per-q |g(q)|^2/phi(q) <= sum*_b |S_x(b/q)|^2
    bool energy_ok = false;       // energy <= x^{-2} * lhs
};

LargeSieveReport large_sieve_check(const WeightFamily& family, std::uint64_t x, std::uint64_t Q,
                                   const SpfTable& spf, const MultiplicativeTables& tables);

struct EnergyPoint {
    std::uint64_t Q = 0;
    double energy = 0.0;
};

/// Cumulative energy sum_{q<=Q} |g_x(q)|^2/phi(q) at each grid point
/// (grid must ascend; energies are non-decreasing by construction).
std::vector<EnergyPoint> energy_series(const WeightFamily& family, std::uint64_t x,
                                       const std::vector<std::uint64_t>& q_grid, const SpfTable& spf,
                                       const MultiplicativeTables& tables);

}  // namespace divspec
