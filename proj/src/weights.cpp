#include "divspec/weights.hpp"

#include <cmath>
#include <charconv>
#include <numbers>
#include <numeric>

namespace divspec {

namespace {

std::uint64_t parse_u64(std::string_view s, const char* what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument(std::string("weight family: bad ") + what + " '" + std::string(s) + "'");
    return v;
}

}  // namespace

WeightFamily WeightFamily::residue_family(std::uint64_t m, std::uint64_t r) {
    if (m < 1) throw std::invalid_argument("residue family: modulus must be >= 1");
    if (m > (1ull << 31)) throw std::invalid_argument("residue family: modulus too large");
    if (r >= m) throw std::invalid_argument("residue family: residue must be < modulus");
    WeightFamily f;
    f.kind = WeightKind::residue_indicator;
    f.modulus = m;
    f.residue = r;
    return f;
}

WeightFamily WeightFamily::character_family(std::uint64_t p, std::uint64_t q) {
    if (q < 1) throw std::invalid_argument("character family: denominator must be >= 1");
    if (q > (1ull << 31)) throw std::invalid_argument("character family: denominator too large");
    const std::uint64_t g = std::gcd(p, q);
    p /= g;
    q /= g;
    WeightFamily f;
    f.kind = WeightKind::additive_character;
    f.alpha_num = p % q;
    f.alpha_den = q;
    f.alpha_is_rational = true;
    f.alpha_real = static_cast<double>(f.alpha_num) / static_cast<double>(q);
    return f;
}

WeightFamily WeightFamily::character_family_real(double alpha) {
    WeightFamily f;
    f.kind = WeightKind::additive_character;
    f.alpha_is_rational = false;
    f.alpha_real = alpha - std::floor(alpha);
    return f;
}

WeightFamily WeightFamily::random_family(std::uint64_t seed) {
    WeightFamily f;
    f.kind = WeightKind::random_pm1;
    f.seed = seed;
    return f;
}

WeightFamily WeightFamily::parse(std::string_view text) {
    if (text == "constant") return constant_family();
    if (text == "liouville") return liouville_family();
    if (text == "moebius") return moebius_family();
    if (text.starts_with("residue:")) {
        std::string_view rest = text.substr(8);
        const auto colon = rest.find(':');
        if (colon == std::string_view::npos)
            throw std::invalid_argument("weight family: expected residue:<m>:<r>");
        return residue_family(parse_u64(rest.substr(0, colon), "modulus"),
                              parse_u64(rest.substr(colon + 1), "residue"));
    }
    if (text.starts_with("character:")) {
        std::string_view rest = text.substr(10);
        const auto slash = rest.find('/');
        if (slash == std::string_view::npos)
            throw std::invalid_argument("weight family: expected character:<p>/<q>");
        return character_family(parse_u64(rest.substr(0, slash), "numerator"),
                                parse_u64(rest.substr(slash + 1), "denominator"));
    }
    if (text.starts_with("random:"))
        return random_family(parse_u64(text.substr(7), "seed"));
    throw std::invalid_argument("weight family: unknown spec '" + std::string(text) + "'");
}

std::string WeightFamily::to_string() const {
    switch (kind) {
        case WeightKind::constant: return "constant";
        case WeightKind::liouville: return "liouville";
        case WeightKind::moebius: return "moebius";
        case WeightKind::residue_indicator:
            return "residue:" + std::to_string(modulus) + ":" + std::to_string(residue);
        case WeightKind::additive_character:
            if (alpha_is_rational)
                return "character:" + std::to_string(alpha_num) + "/" + std::to_string(alpha_den);
            return "character:~" + std::to_string(alpha_real);
        case WeightKind::random_pm1: return "random:" + std::to_string(seed);
    }
    return "?";
}

std::uint64_t splitmix64(std::uint64_t v) {
    v += 0x9e3779b97f4a7c15ull;
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
    return v ^ (v >> 31);
}

int random_sign(std::uint64_t seed, std::uint64_t n) {
    return (splitmix64(seed ^ n) >> 63) ? -1 : 1;
}

namespace {

void check_range(const WeightFamily& family, std::uint64_t n, std::uint64_t x,
                 const MultiplicativeTables* tables) {
    if (n < 1 || n >= x)
        throw std::out_of_range("evaluate: n=" + std::to_string(n) + " outside [1, x=" +
                                std::to_string(x) + ")");
    if (family.needs_tables()) {
        if (tables == nullptr)
            throw std::invalid_argument("evaluate: family '" + family.to_string() +
                                        "' needs multiplicative tables");
        if (n > tables->limit)
            throw std::out_of_range("evaluate: n=" + std::to_string(n) + " beyond table limit " +
                                    std::to_string(tables->limit));
    }
}

}  // namespace

int evaluate_int(const WeightFamily& family, std::uint64_t n, std::uint64_t x,
                 const MultiplicativeTables* tables) {
    check_range(family, n, x, tables);
    switch (family.kind) {
        case WeightKind::constant: return 1;
        case WeightKind::liouville: return tables->lambda[n];
        case WeightKind::moebius: return tables->mu[n];
        case WeightKind::residue_indicator: return n % family.modulus == family.residue ? 1 : 0;
        case WeightKind::random_pm1: return random_sign(family.seed, n);
        case WeightKind::additive_character: break;
    }
    throw std::invalid_argument("evaluate_int: family is not integer-valued");
}

std::complex<double> evaluate(const WeightFamily& family, std::uint64_t n, std::uint64_t x,
                              const MultiplicativeTables* tables) {
    if (family.kind == WeightKind::additive_character) {
        check_range(family, n, x, tables);
        double frac;
        if (family.alpha_is_rational) {
            const std::uint64_t q = family.alpha_den;
            const std::uint64_t idx = (n % q) * (family.alpha_num % q) % q;
            frac = static_cast<double>(idx) / static_cast<double>(q);
        } else {
            frac = std::fmod(family.alpha_real * static_cast<double>(n), 1.0);
        }
        const double theta = 2.0 * std::numbers::pi * frac;
        return {std::cos(theta), std::sin(theta)};
    }
    return {static_cast<double>(evaluate_int(family, n, x, tables)), 0.0};
}

std::optional<FLimit> known_f_limit(const WeightFamily& family, std::uint64_t q) {
    if (q < 1) throw std::invalid_argument("known_f_limit: q must be >= 1");
    switch (family.kind) {
        case WeightKind::constant:
            return FLimit{Rat::integer(1), false};
        case WeightKind::liouville:
        case WeightKind::moebius:
            return FLimit{Rat::integer(0), false};
        case WeightKind::residue_indicator: {
            // density of {n : q*n = residue (mod m)}, brute-forced over one period
            const std::uint64_t m = family.modulus;
            std::uint64_t count = 0;
            for (std::uint64_t n = 0; n < m; ++n)
                if ((q % m) * (n % m) % m == family.residue % m) ++count;
            return FLimit{Rat::of(static_cast<int128>(count), static_cast<int128>(m)), false};
        }
        case WeightKind::additive_character: {
            if (family.alpha_is_rational)
                return FLimit{Rat::integer(q % family.alpha_den == 0 ? 1 : 0), false};
            const double aq = family.alpha_real * static_cast<double>(q);
            const bool integral = std::abs(aq - std::round(aq)) < 1e-9;
            return FLimit{Rat::integer(integral ? 1 : 0), false};
        }
        case WeightKind::random_pm1:
            return FLimit{Rat::integer(0), true};
    }
    return std::nullopt;
}

std::optional<FLimit> known_g_limit(const WeightFamily& family, std::uint64_t q, const SpfTable& spf) {
    if (q > spf.limit)
        throw std::out_of_range("known_g_limit: q beyond SPF table limit");
    Rat sum = Rat::integer(0);
    bool probabilistic = false;
    for (std::uint64_t d : divisors(q, spf)) {
        const auto f = known_f_limit(family, d);
        if (!f) return std::nullopt;
        probabilistic = probabilistic || f->probabilistic;
        // mu(q/d) from the factorization of the cofactor
        const auto fac = factorize(q / d, spf);
        int mu = 1;
        for (const auto& pp : fac) {
            if (pp.e > 1) { mu = 0; break; }
            mu = -mu;
        }
        if (mu == 0) continue;
        sum = sum + Rat::integer(mu) * f->value;
    }
    return FLimit{sum, probabilistic};
}

}  // namespace divspec
