#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "divspec/rational.hpp"
#include "divspec/sieve.hpp"

namespace divspec {

enum class WeightKind { constant, liouville, moebius, residue_indicator, additive_character, random_pm1 };

/// A coefficient family a_n with sup |a_n| <= 1. Every provided family is
/// x-independent; x enters only through the range check n < x.
struct WeightFamily {
    WeightKind kind = WeightKind::constant;

    // residue_indicator: a_n = [n = residue (mod modulus)]
    std::uint64_t modulus = 0;
    std::uint64_t residue = 0;

    // additive_character: a_n = e(2*pi*i*alpha*n). alpha is kept as an exact
    // reduced rational when given that way, so "alpha*q integral" tests are
    // exact; a float alpha is accepted programmatically but classified only
    // approximately.
    std::uint64_t alpha_num = 0;
    std::uint64_t alpha_den = 1;
    bool alpha_is_rational = true;
    double alpha_real = 0.0;

    // random_pm1: sign from a 64-bit mix of seed XOR n (see random_sign).
    std::uint64_t seed = 0;

    static WeightFamily constant_family() { return {}; }
    static WeightFamily liouville_family() { WeightFamily f; f.kind = WeightKind::liouville; return f; }
    static WeightFamily moebius_family() { WeightFamily f; f.kind = WeightKind::moebius; return f; }
    static WeightFamily residue_family(std::uint64_t m, std::uint64_t r);
    static WeightFamily character_family(std::uint64_t p, std::uint64_t q);
    static WeightFamily character_family_real(double alpha);
    static WeightFamily random_family(std::uint64_t seed);

    /// CLI syntax: constant | liouville | moebius | residue:<m>:<r> |
    /// character:<p>/<q> | random:<seed>
    static WeightFamily parse(std::string_view text);
    std::string to_string() const;

    bool integer_valued() const { return kind != WeightKind::additive_character; }
    bool needs_tables() const { return kind == WeightKind::liouville || kind == WeightKind::moebius; }
};

/// splitmix64; the documented mix behind random_pm1.
std::uint64_t splitmix64(std::uint64_t v);

/// +1 or -1 from the top bit of splitmix64(seed ^ n). Pure in (seed, n).
int random_sign(std::uint64_t seed, std::uint64_t n);

/// a_n for 1 <= n < x. Throws std::out_of_range when n is outside [1, x)
/// or beyond the tables a table-backed family needs.
std::complex<double> evaluate(const WeightFamily& family, std::uint64_t n, std::uint64_t x,
                              const MultiplicativeTables* tables = nullptr);

/// Integer fast path; requires family.integer_valued().
int evaluate_int(const WeightFamily& family, std::uint64_t n, std::uint64_t x,
                 const MultiplicativeTables* tables = nullptr);

struct FLimit {
    Rat value;
    bool probabilistic = false;  // true: almost-sure limit, not a pointwise one
};

/// Closed-form lim_x f_x(q) where known (all menu families). nullopt would
/// mark a family with no implemented closed form.
std::optional<FLimit> known_f_limit(const WeightFamily& family, std::uint64_t q);

/// Moebius inversion of known_f_limit over the divisors of q, exact.
std::optional<FLimit> known_g_limit(const WeightFamily& family, std::uint64_t q, const SpfTable& spf);

}  // namespace divspec
