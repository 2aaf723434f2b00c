#include "doctest.h"

#include <cmath>
#include <cstdint>

#include "divspec/diagnostics.hpp"
#include "divspec/parallel.hpp"
#include "test_util.hpp"

using namespace divspec;
using testutil::tables_for;

TEST_CASE("log_star clamps below 1") {
    CHECK(log_star(1.0) == 1.0);
    CHECK(log_star(std::exp(2.0)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(log_star(0.5) == 1.0);
    CHECK(log_star(1e9) == doctest::Approx(std::log(1e9)).epsilon(1e-15));
    CHECK_THROWS_AS(log_star(0.0), std::domain_error);
    CHECK_THROWS_AS(log_star(-3.0), std::domain_error);
}

TEST_CASE("lambda_harmonic small values against the hand oracle") {
    const auto& t = tables_for(100);
    CHECK(lambda_harmonic(1, t.mult) == 0.0);
    CHECK(lambda_harmonic(2, t.mult) == 1.0);
    // 1 - 1/2 - 1/3 + 1/4 - 1/5 + 1/6 - 1/7 - 1/8 + 1/9 = 571/2520
    CHECK(lambda_harmonic(10, t.mult) == doctest::Approx(571.0 / 2520.0).epsilon(1e-15));
    // brute-force recomputation
    double brute = 0.0;
    for (std::uint64_t d = 1; d < 10; ++d) brute += static_cast<double>(t.mult.lambda[d]) / static_cast<double>(d);
    CHECK(lambda_harmonic(10, t.mult) == doctest::Approx(brute).epsilon(1e-15));
    CHECK_THROWS_AS(lambda_harmonic(200, t.mult), std::out_of_range);
}

TEST_CASE("lambda_harmonic * log_star stays bounded to 1e5") {
    const auto& t = tables_for(100'000);
    for (std::uint64_t y : {100ull, 1'000ull, 10'000ull, 100'000ull}) {
        const double v = std::abs(lambda_harmonic(y, t.mult)) * log_star(static_cast<double>(y));
        CHECK(v < 5.0);
    }
}

TEST_CASE("decomposition: trivial and hand-checked cases") {
    const auto& t = tables_for(10'000);

    const auto trivial = decomposition_check(WeightFamily::constant_family(), 100, 1, t.spf, t.mult);
    CHECK(trivial.side_a == std::complex<double>{0.0, 0.0});
    CHECK(trivial.side_b == std::complex<double>{0.0, 0.0});
    CHECK(trivial.side_c == std::complex<double>{0.0, 0.0});
    CHECK(trivial.exact_equal);

    const auto hand = decomposition_check(WeightFamily::constant_family(), 1'000, 10, t.spf, t.mult);
    CHECK(hand.residual_ab < 1e-12);
    CHECK(hand.residual_bc < 1e-12);
    REQUIRE(hand.exact);
    CHECK(hand.exact_equal);
    // spot value: sum_{d<10} lambda(d) floor(999/d) / 1000 = 228/1000
    CHECK(hand.exact_a == Rat::of(228, 1000));
    CHECK(hand.side_a.real() == doctest::Approx(0.228).epsilon(1e-15));
}

TEST_CASE("decomposition is exact for integer families over an (x,z) grid") {
    const auto& t = tables_for(10'000);
    const WeightFamily families[] = {
        WeightFamily::constant_family(), WeightFamily::liouville_family(),
        WeightFamily::moebius_family(), WeightFamily::residue_family(4, 1),
        WeightFamily::random_family(1)};
    for (const auto& family : families) {
        for (std::uint64_t x : {100ull, 1'234ull, 10'000ull}) {
            for (std::uint64_t z : {1ull, 2ull, 10ull, 100ull, 1'000ull}) {
                const auto check = decomposition_check(family, x, z, t.spf, t.mult);
                REQUIRE(check.exact);
                CHECK(check.exact_equal);
                CHECK(check.residual_ab < 1e-9);
                CHECK(check.residual_bc < 1e-9);
            }
        }
    }
}

TEST_CASE("decomposition float path for the character family") {
    const auto& t = tables_for(10'000);
    const auto check =
        decomposition_check(WeightFamily::character_family(1, 3), 10'000, 100, t.spf, t.mult);
    CHECK_FALSE(check.exact);
    CHECK(check.residual_ab < 1e-9);
    CHECK(check.residual_bc < 1e-9);
}

TEST_CASE("tail split: empty head at z=2, large T") {
    const auto& t = tables_for(100);
    const auto r = tail_split(WeightFamily::constant_family(), 50, 2, 4.0, t.spf, t.mult);
    CHECK(r.head_energy == 0.0);
    CHECK(r.head_weight == 0.0);
    CHECK(r.passed);
    CHECK_THROWS_AS(tail_split(WeightFamily::constant_family(), 50, 2, 1.0, t.spf, t.mult),
                    std::invalid_argument);
}

TEST_CASE("tail split: fields recompute from the profile, bound holds") {
    const auto& t = tables_for(100'000);
    const auto family = WeightFamily::liouville_family();
    const std::uint64_t x = 100'000, z = 500;
    const double T = 10.0;
    const auto r = tail_split(family, x, z, T, t.spf, t.mult);

    // independent recomputation in long double, including the split point
    const auto profile = compute_profile(family, x, z - 1, t.spf, t.mult);
    long double he = 0, hw = 0, te = 0, tw = 0, target = 0;
    for (std::uint64_t q = 1; q < z; ++q) {
        const long double g2 = std::norm(profile.g[q]);
        const long double phi = static_cast<long double>(t.mult.phi[q]);
        const long double ls = log_star(static_cast<double>(z) / static_cast<double>(q));
        const long double wq = phi / (static_cast<long double>(q) * q * ls * ls);
        if (static_cast<double>(q) < static_cast<double>(z) / T) {
            he += g2 / phi;
            hw += wq;
        } else {
            te += g2 / phi;
            tw += wq;
        }
        target += std::abs(profile.g[q]) / (static_cast<long double>(q) * ls);
    }
    CHECK(r.head_energy == doctest::Approx(static_cast<double>(he)).epsilon(1e-12));
    CHECK(r.head_weight == doctest::Approx(static_cast<double>(hw)).epsilon(1e-12));
    CHECK(r.tail_energy == doctest::Approx(static_cast<double>(te)).epsilon(1e-12));
    CHECK(r.tail_weight == doctest::Approx(static_cast<double>(tw)).epsilon(1e-12));
    CHECK(r.target == doctest::Approx(static_cast<double>(target)).epsilon(1e-12));
    CHECK(r.target <= r.bound * (1.0 + 1e-9));
    CHECK(r.passed);
}

TEST_CASE("tail split bound holds across families and T values") {
    const auto& t = tables_for(10'000);
    for (const auto& family : {WeightFamily::constant_family(), WeightFamily::random_family(4),
                               WeightFamily::character_family(1, 3)}) {
        for (double T : {1.5, 4.0, 32.0}) {
            const auto r = tail_split(family, 10'000, 256, T, t.spf, t.mult);
            CHECK(r.passed);
            CHECK(r.head_energy >= 0.0);
            CHECK(r.tail_weight >= 0.0);
        }
    }
}

TEST_CASE("dyadic weight sum: empty range below T") {
    const auto r = dyadic_weight_sum(10, 20.0);
    CHECK(r.direct == 0.0);
    CHECK(r.blocks.empty());
}

TEST_CASE("dyadic weight sum: blocks partition the range exactly") {
    const auto r = dyadic_weight_sum(1'000, 10.0);
    // q < 100: blocks must cover 1..99 contiguously, each q exactly once
    REQUIRE(!r.blocks.empty());
    CHECK(r.blocks.front().k == 0);
    CHECK(r.blocks.front().q_hi == 99);
    std::uint64_t expected_hi = 99;
    for (const auto& b : r.blocks) {
        CHECK(b.q_hi == expected_hi);
        CHECK(b.q_lo <= b.q_hi);
        CHECK(b.sum <= b.upper * (1.0 + 1e-12));
        expected_hi = b.q_lo - 1;
    }
    CHECK(expected_hi == 0);

    // block membership agrees with the defining inequalities
    for (const auto& b : r.blocks) {
        const double zt = 1'000.0 / 10.0;
        CHECK(static_cast<double>(b.q_hi) <= zt * std::ldexp(1.0, -b.k));
        CHECK(static_cast<double>(b.q_lo) > zt * std::ldexp(1.0, -(b.k + 1)));
    }

    // direct and blocked totals: same multiset of terms. In fixed point the
    // two groupings must agree exactly; in floating point to 1e-12.
    std::int64_t direct_fp = 0, blocked_fp = 0;
    for (std::uint64_t q = 1; q <= 99; ++q) {
        const double ls = log_star(1'000.0 / static_cast<double>(q));
        const double term = 1.0 / (static_cast<double>(q) * ls * ls);
        direct_fp += static_cast<std::int64_t>(std::llround(term * 9.007199254740992e15));
    }
    for (const auto& b : r.blocks) {
        std::int64_t bsum = 0;
        for (std::uint64_t q = b.q_lo; q <= b.q_hi; ++q) {
            const double ls = log_star(1'000.0 / static_cast<double>(q));
            const double term = 1.0 / (static_cast<double>(q) * ls * ls);
            bsum += static_cast<std::int64_t>(std::llround(term * 9.007199254740992e15));
        }
        blocked_fp += bsum;
    }
    CHECK(direct_fp == blocked_fp);
    CHECK(r.blocked_total == doctest::Approx(r.direct).epsilon(1e-12));
}

TEST_CASE("dyadic weight sum shrinks strictly as T grows") {
    const auto a = dyadic_weight_sum(10'000, 10.0);
    const auto b = dyadic_weight_sum(10'000, 100.0);
    CHECK(b.direct < a.direct);

    const auto c1 = dyadic_weight_sum(1'000'000, 10.0);
    const auto c2 = dyadic_weight_sum(1'000'000, 100.0);
    const auto c3 = dyadic_weight_sum(1'000'000, 1'000.0);
    CHECK(c2.direct < c1.direct);
    CHECK(c3.direct < c2.direct);
}

TEST_CASE("convergence sweep rows line up with weighted_average") {
    const auto& t = tables_for(100'000);
    const auto family = WeightFamily::moebius_family();
    const std::vector<std::uint64_t> xg{10'000, 100'000};
    const std::vector<std::uint64_t> zg{1, 2, 8, 32};
    const auto rows = convergence_sweep(family, xg, zg, t.spf, t.mult);
    REQUIRE(rows.size() == 8);
    std::size_t i = 0;
    for (std::uint64_t x : xg) {
        for (std::uint64_t z : zg) {
            CHECK(rows[i].x == x);
            CHECK(rows[i].z == z);
            if (z == 1) {
                CHECK(rows[i].A == std::complex<double>{0.0, 0.0});
            } else {
                const auto direct = weighted_average(family, x, z, t.mult);
                CHECK(std::abs(rows[i].A - direct) < 1e-15);
            }
            // moebius weights: A stays near zero, tighter as x grows
            CHECK(rows[i].abs_A < (x == 10'000 ? 0.05 : 0.02));
            ++i;
        }
    }
    CHECK_THROWS_AS(convergence_sweep(family, {100, 10}, zg, t.spf, t.mult), std::invalid_argument);
}

TEST_CASE("constant-family sweep tracks the lambda harmonic tail") {
    const auto& t = tables_for(100'000);
    const auto rows = convergence_sweep(WeightFamily::constant_family(), {100'000},
                                        {8, 4'096}, t.spf, t.mult);
    REQUIRE(rows.size() == 2);
    // A(x,z) is within O(z/x) of sum_{d<z} lambda(d)/d
    for (const auto& row : rows) {
        const double tail = lambda_harmonic(row.z, t.mult);
        CHECK(std::abs(row.A.real() - tail) <
              2.0 * static_cast<double>(row.z) / static_cast<double>(row.x));
    }
    CHECK(rows[1].abs_A < rows[0].abs_A);  // decay toward 0 in z
}
