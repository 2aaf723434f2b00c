#include "doctest.h"

#include <cmath>
#include <complex>

#include "divspec/weights.hpp"
#include "test_util.hpp"

using namespace divspec;
using testutil::tables_for;

namespace {

// Independent f_x(q) = (q/x) sum_{n<x/q} a_{qn}, straight off the definition.
std::complex<double> f_x_direct(const WeightFamily& family, std::uint64_t q, std::uint64_t x,
                                const MultiplicativeTables* tables) {
    std::complex<double> s{0.0, 0.0};
    for (std::uint64_t m = q; m < x; m += q) s += evaluate(family, m, x, tables);
    return s * (static_cast<double>(q) / static_cast<double>(x));
}

}  // namespace

TEST_CASE("family parsing round trips") {
    const char* specs[] = {"constant", "liouville", "moebius", "residue:4:1",
                           "character:1/3", "random:42"};
    for (const char* s : specs) CHECK(WeightFamily::parse(s).to_string() == s);

    // character is stored reduced
    CHECK(WeightFamily::parse("character:2/6").to_string() == "character:1/3");

    CHECK_THROWS_AS(WeightFamily::parse("nonsense"), std::invalid_argument);
    CHECK_THROWS_AS(WeightFamily::parse("residue:4"), std::invalid_argument);
    CHECK_THROWS_AS(WeightFamily::parse("residue:4:7"), std::invalid_argument);
    CHECK_THROWS_AS(WeightFamily::parse("residue:0:0"), std::invalid_argument);
    CHECK_THROWS_AS(WeightFamily::parse("character:1:3"), std::invalid_argument);
    CHECK_THROWS_AS(WeightFamily::parse("random:abc"), std::invalid_argument);
}

TEST_CASE("evaluate named examples") {
    CHECK(evaluate(WeightFamily::constant_family(), 7, 100) == std::complex<double>{1.0, 0.0});

    const auto res41 = WeightFamily::residue_family(4, 1);
    CHECK(evaluate(res41, 9, 100).real() == 1.0);
    CHECK(evaluate(res41, 10, 100).real() == 0.0);

    const auto chi = WeightFamily::character_family(1, 3);
    const auto v = evaluate(chi, 2, 100);  // e(2*pi*i*2/3)
    CHECK(v.real() == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(v.imag() == doctest::Approx(-std::sqrt(3.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("evaluate range and table errors") {
    const auto& t = tables_for(1'000);
    const auto lam = WeightFamily::liouville_family();
    CHECK_THROWS_AS(evaluate(WeightFamily::constant_family(), 100, 100), std::out_of_range);
    CHECK_THROWS_AS(evaluate(WeightFamily::constant_family(), 0, 100), std::out_of_range);
    CHECK_THROWS_AS(evaluate(lam, 5, 100, nullptr), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(lam, 1001, 2000, &t.mult), std::out_of_range);
    CHECK(evaluate(lam, 8, 100, &t.mult).real() == -1.0);  // Omega(8)=3
}

TEST_CASE("all families are bounded by 1 and deterministic") {
    const auto& t = tables_for(100'000);
    const WeightFamily families[] = {
        WeightFamily::constant_family(),      WeightFamily::liouville_family(),
        WeightFamily::moebius_family(),       WeightFamily::residue_family(4, 1),
        WeightFamily::character_family(3, 7), WeightFamily::random_family(42)};
    testutil::Rng rng(99);
    for (const auto& family : families) {
        for (int i = 0; i < 500; ++i) {
            const std::uint64_t n = rng.in(1, 99'999);
            const auto a = evaluate(family, n, 100'000, &t.mult);
            CHECK(std::abs(a) <= 1.0 + 1e-15);
            CHECK(evaluate(family, n, 100'000, &t.mult) == a);
        }
    }
}

TEST_CASE("random_pm1 is a pure sign of (seed, n), independent of x") {
    const auto fam = WeightFamily::random_family(123);
    for (std::uint64_t n = 1; n < 200; ++n) {
        const int s = evaluate_int(fam, n, 1'000, nullptr);
        CHECK((s == 1 || s == -1));
        CHECK(evaluate_int(fam, n, 7'000'000, nullptr) == s);
        CHECK(random_sign(123, n) == s);
    }
    // different seeds decorrelate
    int agree = 0;
    for (std::uint64_t n = 1; n <= 1'000; ++n)
        if (random_sign(1, n) == random_sign(2, n)) ++agree;
    CHECK(agree > 350);
    CHECK(agree < 650);
}

TEST_CASE("random_pm1 empirical mean within the Chernoff cushion") {
    const std::uint64_t x = 1'000'000;
    std::int64_t sum = 0;
    for (std::uint64_t n = 1; n < x; ++n) sum += random_sign(42, n);
    const double mean = static_cast<double>(sum) / static_cast<double>(x);
    CHECK(std::abs(mean) <= 5.0 / std::sqrt(static_cast<double>(x)));
}

TEST_CASE("known f-limits: closed forms") {
    CHECK(known_f_limit(WeightFamily::constant_family(), 5)->value == Rat::integer(1));
    CHECK(known_f_limit(WeightFamily::liouville_family(), 3)->value == Rat::integer(0));
    CHECK(known_f_limit(WeightFamily::moebius_family(), 17)->value == Rat::integer(0));

    // residue:4:0 at q=2: {n : 2n = 0 mod 4} has density 1/2
    CHECK(known_f_limit(WeightFamily::residue_family(4, 0), 2)->value == Rat::of(1, 2));
    // residue:4:1 at q=2: 2n = 1 mod 4 unsolvable
    CHECK(known_f_limit(WeightFamily::residue_family(4, 1), 2)->value == Rat::integer(0));
    // residue:4:1 at odd q: one class per period
    CHECK(known_f_limit(WeightFamily::residue_family(4, 1), 3)->value == Rat::of(1, 4));

    // character 1/3: limit is [3 | q]
    const auto chi = WeightFamily::character_family(1, 3);
    CHECK(known_f_limit(chi, 3)->value == Rat::integer(1));
    CHECK(known_f_limit(chi, 6)->value == Rat::integer(1));
    CHECK(known_f_limit(chi, 4)->value == Rat::integer(0));

    const auto rnd = known_f_limit(WeightFamily::random_family(7), 9);
    CHECK(rnd->value == Rat::integer(0));
    CHECK(rnd->probabilistic);
    CHECK_FALSE(known_f_limit(chi, 3)->probabilistic);
}

TEST_CASE("character family built from a float frequency") {
    // a quarter turn per step behaves like character:1/4 up to float noise
    const auto approx = WeightFamily::character_family_real(0.25);
    const auto exact = WeightFamily::character_family(1, 4);
    for (std::uint64_t n = 1; n < 50; ++n)
        CHECK(std::abs(evaluate(approx, n, 100) - evaluate(exact, n, 100)) < 1e-9);
    CHECK(known_f_limit(approx, 4)->value == Rat::integer(1));
    CHECK(known_f_limit(approx, 3)->value == Rat::integer(0));

    // an irrational frequency never hits an integer multiple
    const auto irr = WeightFamily::character_family_real(0.6180339887498949);
    for (std::uint64_t q = 1; q <= 40; ++q)
        CHECK(known_f_limit(irr, q)->value == Rat::integer(0));
    CHECK_FALSE(irr.integer_valued());
}

TEST_CASE("known g-limits at hand-computed points") {
    const auto& t = tables_for(100);
    // constant: g(1) = 1, g(q) = 0 for q > 1
    CHECK(known_g_limit(WeightFamily::constant_family(), 1, t.spf)->value == Rat::integer(1));
    for (std::uint64_t q = 2; q <= 50; ++q)
        CHECK(known_g_limit(WeightFamily::constant_family(), q, t.spf)->value == Rat::integer(0));
    // residue:4:1: f(d) = (1/4)[d odd], so g = 1/4 at q=1, -1/4 at q=2, 0 beyond
    const auto res = WeightFamily::residue_family(4, 1);
    CHECK(known_g_limit(res, 1, t.spf)->value == Rat::of(1, 4));
    CHECK(known_g_limit(res, 2, t.spf)->value == Rat::of(-1, 4));
    CHECK(known_g_limit(res, 4, t.spf)->value == Rat::integer(0));
    CHECK(known_g_limit(res, 3, t.spf)->value == Rat::integer(0));
    CHECK(known_g_limit(res, 6, t.spf)->value == Rat::integer(0));
    // character 1/3: f = [3|d] gives g(q) = [q = 3]
    const auto chi = WeightFamily::character_family(1, 3);
    CHECK(known_g_limit(chi, 3, t.spf)->value == Rat::integer(1));
    for (std::uint64_t q : {1ull, 2ull, 6ull, 9ull, 12ull})
        CHECK(known_g_limit(chi, q, t.spf)->value == Rat::integer(0));
}

TEST_CASE("g-limit is the exact Moebius inversion of the f-limit") {
    const auto& t = tables_for(100);
    const WeightFamily families[] = {WeightFamily::constant_family(),
                                     WeightFamily::residue_family(6, 2),
                                     WeightFamily::character_family(2, 5)};
    for (const auto& family : families) {
        for (std::uint64_t q = 1; q <= 60; ++q) {
            Rat expect = Rat::integer(0);
            for (std::uint64_t d : divisors(q, t.spf)) {
                const auto fac = factorize(q / d, t.spf);
                int mu = 1;
                for (const auto& pp : fac) {
                    if (pp.e > 1) { mu = 0; break; }
                    mu = -mu;
                }
                if (mu != 0) expect = expect + Rat::integer(mu) * known_f_limit(family, d)->value;
            }
            CHECK(known_g_limit(family, q, t.spf)->value == expect);
        }
    }
}

TEST_CASE("residue f-limit matches the empirical density at x = 1e6") {
    const auto fam = WeightFamily::residue_family(4, 0);
    const auto f2 = f_x_direct(fam, 2, 1'000'000, nullptr);
    CHECK(std::abs(f2.real() - 0.5) < 0.01);
    CHECK(f2.imag() == 0.0);
}

TEST_CASE("liouville f_x(3) is small at x = 1e7") {
    const auto& t = tables_for(10'000'000);
    const auto f3 = f_x_direct(WeightFamily::liouville_family(), 3, 10'000'000, &t.mult);
    CHECK(std::abs(f3) < 0.01);
}

TEST_CASE("f_x error versus the known limit trends down from x=1e4 to x=1e6") {
    const auto& t = tables_for(1'000'000);
    const WeightFamily families[] = {
        WeightFamily::constant_family(),      WeightFamily::liouville_family(),
        WeightFamily::moebius_family(),       WeightFamily::residue_family(4, 1),
        WeightFamily::character_family(1, 3), WeightFamily::random_family(42)};
    for (const auto& family : families) {
        int improved = 0;
        for (std::uint64_t q = 1; q <= 20; ++q) {
            const double limit = known_f_limit(family, q)->value.to_double();
            const double err_small = std::abs(f_x_direct(family, q, 10'000, &t.mult) - limit);
            const double err_large = std::abs(f_x_direct(family, q, 1'000'000, &t.mult) - limit);
            // errors already at the floating-point floor count as converged
            if (err_large <= err_small || err_large < 1e-12) ++improved;
        }
        // trend, not monotonicity: at least 80% of q improve
        CHECK(improved >= 16);
    }
}
