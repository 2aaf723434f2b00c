#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "divspec/divisor_sums.hpp"
#include "divspec/spectral.hpp"

namespace divspec {

/// max(1, ln t); throws std::domain_error for t <= 0.
double log_star(double t);

/// sum_{d<y} lambda(d)/d with compensated summation. y = 1 is the empty sum.
double lambda_harmonic(std::uint64_t y, const MultiplicativeTables& tables);

/// Three independent routes to x^{-1} sum_n a_n L(n,z):
///   side_a: batch L-series dotted with the weights
///   side_b: sum_{d<z} lambda(d) f_x(d) / d from the f-profile
///   side_c: sum_{q<z} (lambda(q) g_x(q) / q) * sum_{m<z/q} lambda(m)/m
/// All three agree exactly at finite x; integer families additionally carry
/// the exact rational values.
struct DecompositionCheck {
    WeightFamily family;
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    std::complex<double> side_a, side_b, side_c;
    double residual_ab = 0.0;
    double residual_bc = 0.0;
    bool exact = false;       // exact rational path ran
    bool exact_equal = true;  // exact sides all equal
    Rat exact_a, exact_b, exact_c;
};

DecompositionCheck decomposition_check(const WeightFamily& family, std::uint64_t x, std::uint64_t z,
                                       const SpfTable& spf, const MultiplicativeTables& tables);

/// Cauchy-Schwarz split of sum_{q<z} |g(q)|/(q log*(z/q)) at threshold z/T.
struct TailSplitReport {
    WeightFamily family;
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    double T = 0.0;
    double head_energy = 0.0;  // sum_{q<z/T} |g(q)|^2/phi(q)
    double head_weight = 0.0;  // sum_{q<z/T} phi(q)/(q^2 log*(z/q)^2)
    double tail_energy = 0.0;
    double tail_weight = 0.0;
    double bound = 0.0;   // sqrt(he*hw) + sqrt(te*tw)
    double target = 0.0;  // sum_{q<z} |g(q)|/(q log*(z/q))
    bool passed = false;  // target <= bound
};

TailSplitReport tail_split(const WeightFamily& family, std::uint64_t x, std::uint64_t z, double T,
                           const SpfTable& spf, const MultiplicativeTables& tables);

/// One dyadic block (2^{-(k+1)} z/T, 2^{-k} z/T] of the weight sum.
struct DyadicBlock {
    int k = 0;
    std::uint64_t q_lo = 0, q_hi = 0;  // inclusive integer range
    double sum = 0.0;                  // sum over the block of 1/(q log*(z/q)^2)
    double upper = 0.0;                // (ln 2 + 1/q_lo) / log*(T 2^k)^2
};

struct DyadicWeightSum {
    std::uint64_t z = 0;
    double T = 0.0;
    double direct = 0.0;         // sum_{q < z/T} 1/(q log*(z/q)^2), single pass
    double blocked_total = 0.0;  // the same sum accumulated block by block
    std::vector<DyadicBlock> blocks;
};

DyadicWeightSum dyadic_weight_sum(std::uint64_t z, double T);

struct ConvergenceRow {
    WeightFamily family;
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    std::complex<double> A;
    double abs_A = 0.0;
};

/// A(x,z) for every grid pair, ordered by (x, z).
std::vector<ConvergenceRow> convergence_sweep(const WeightFamily& family,
                                              const std::vector<std::uint64_t>& x_grid,
                                              const std::vector<std::uint64_t>& z_grid,
                                              const SpfTable& spf, const MultiplicativeTables& tables);

}  // namespace divspec
