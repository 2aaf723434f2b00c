#include "divspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "divspec/parallel.hpp"

namespace divspec {

namespace {

double unit_floor_dist(std::complex<double> a, std::complex<double> b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) / scale;
}

void check_profile_args(std::uint64_t x, std::uint64_t qmax, const SpfTable& spf,
                        const MultiplicativeTables& tables, const WeightFamily& family) {
    if (x < 2) throw std::invalid_argument("spectral: x must be >= 2");
    if (qmax < 1) throw std::invalid_argument("spectral: qmax must be >= 1");
    if (spf.limit < qmax) throw std::out_of_range("spectral: SPF table must cover qmax");
    if (tables.limit < qmax) throw std::out_of_range("spectral: tables must cover qmax");
    if (family.needs_tables() && tables.limit < x - 1)
        throw std::out_of_range("spectral: tables must cover x-1 for family " + family.to_string());
}

// sum_{n<x} a_n w^{(n*b mod q)} with the root table, deterministic blocked
// accumulation; returns the unnormalized sum.
std::complex<double> cycled_sum(const WeightFamily& family, std::uint64_t x, std::uint64_t b,
                                const RootTable& roots, const MultiplicativeTables* tables) {
    const std::uint64_t q = roots.q;
    return blocked_sum_complex(1, x, [&](std::uint64_t n) {
        const std::uint64_t j = (n % q) * (b % q) % q;
        return evaluate(family, n, x, tables) * roots.w[j];
    });
}

}  // namespace

RootTable make_root_table(std::uint64_t q) {
    if (q < 1) throw std::invalid_argument("make_root_table: q must be >= 1");
    if (q > (1ull << 31)) throw capacity_error("make_root_table: q too large for a period table");
    RootTable t;
    t.q = q;
    t.w.resize(q);
    for (std::uint64_t j = 0; j < q; ++j) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(q);
        t.w[j] = {std::cos(theta), std::sin(theta)};
    }
    return t;
}

std::complex<double> exponential_sum(const WeightFamily& family, std::uint64_t x, std::uint64_t b,
                                     std::uint64_t q, const MultiplicativeTables* tables) {
    if (x < 2) throw std::invalid_argument("exponential_sum: x must be >= 2");
    if (q < 1 || b >= q) throw std::invalid_argument("exponential_sum: need 0 <= b < q");
    const RootTable roots = make_root_table(q);
    return cycled_sum(family, x, b, roots, tables) / static_cast<double>(x);
}

SpectralProfile compute_profile(const WeightFamily& family, std::uint64_t x, std::uint64_t qmax,
                                const SpfTable& spf, const MultiplicativeTables& tables) {
    check_profile_args(x, qmax, spf, tables, family);
    SpectralProfile p;
    p.family = family;
    p.x = x;
    p.qmax = qmax;
    p.f.assign(qmax + 1, {0.0, 0.0});
    p.g.assign(qmax + 1, {0.0, 0.0});
    const bool exact = family.integer_valued();
    const MultiplicativeTables* eval_tables = &tables;

    if (exact) {
        p.f_num.assign(qmax + 1, 0);
        p.g_num.assign(qmax + 1, 0);
#pragma omp parallel for schedule(dynamic, 4)
        for (std::int64_t qi = 1; qi <= static_cast<std::int64_t>(qmax); ++qi) {
            const std::uint64_t q = static_cast<std::uint64_t>(qi);
            std::int64_t t = 0;
            for (std::uint64_t m = q; m < x; m += q) t += evaluate_int(family, m, x, eval_tables);
            p.f_num[q] = static_cast<std::int64_t>(q) * t;  // x*f(q) = q * sum a_{qn}
            p.f[q] = {static_cast<double>(p.f_num[q]) / static_cast<double>(x), 0.0};
        }
    } else {
#pragma omp parallel for schedule(dynamic, 4)
        for (std::int64_t qi = 1; qi <= static_cast<std::int64_t>(qmax); ++qi) {
            const std::uint64_t q = static_cast<std::uint64_t>(qi);
            KahanComplex acc;
            for (std::uint64_t m = q; m < x; m += q) acc.add(evaluate(family, m, x, eval_tables));
            p.f[q] = acc.value() * (static_cast<double>(q) / static_cast<double>(x));
        }
    }

    // Moebius inversion over divisors, q by q.
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t qi = 1; qi <= static_cast<std::int64_t>(qmax); ++qi) {
        const std::uint64_t q = static_cast<std::uint64_t>(qi);
        std::complex<double> gq{0.0, 0.0};
        std::int64_t gq_num = 0;
        for (std::uint64_t d : divisors(q, spf)) {
            const int mu = tables.mu[q / d];
            if (mu == 0) continue;
            gq += static_cast<double>(mu) * p.f[d];
            if (exact) gq_num += mu * p.f_num[d];
        }
        p.g[q] = gq;
        if (exact) {
            p.g_num[q] = gq_num;
            p.g[q] = {static_cast<double>(gq_num) / static_cast<double>(x), 0.0};
        }
    }
    return p;
}

std::vector<std::int64_t> ramanujan_sums_mod_q(std::uint64_t q, const SpfTable& spf,
                                               const MultiplicativeTables& tables) {
    if (q < 1) throw std::invalid_argument("ramanujan_sums_mod_q: q must be >= 1");
    if (spf.limit < q || tables.limit < q)
        throw std::out_of_range("ramanujan_sums_mod_q: tables must cover q");
    std::vector<std::int64_t> c(q, 0);
    for (std::uint64_t d : divisors(q, spf)) {
        const int mu = tables.mu[q / d];
        if (mu == 0) continue;
        const std::int64_t v = static_cast<std::int64_t>(mu) * static_cast<std::int64_t>(d);
        for (std::uint64_t r = 0; r < q; r += d) c[r] += v;
    }
    return c;
}

PrimitiveAggregate primitive_aggregate(const WeightFamily& family, std::uint64_t x, std::uint64_t q,
                                       const SpfTable& spf, const MultiplicativeTables& tables) {
    check_profile_args(x, q, spf, tables, family);
    PrimitiveAggregate agg;

    // Path 1: per-class exponential sums over primitive residues.
    const RootTable roots = make_root_table(q);
    KahanComplex exp_acc;
    if (q == 1) {
        exp_acc.add(cycled_sum(family, x, 0, roots, &tables));
    } else {
        for (std::uint64_t b = 0; b < q; ++b) {
            if (std::gcd(b, q) != 1) continue;
            exp_acc.add(cycled_sum(family, x, b, roots, &tables));
        }
    }
    agg.exponential_path = exp_acc.value() / static_cast<double>(x);

    // Path 2: integer Ramanujan sums.
    const auto c = ramanujan_sums_mod_q(q, spf, tables);
    if (family.integer_valued()) {
        agg.has_exact = true;
        agg.ramanujan_num = blocked_sum_int(1, x, [&](std::uint64_t n) {
            return static_cast<int128>(evaluate_int(family, n, x, &tables)) * c[n % q];
        });
        agg.ramanujan_path = {static_cast<double>(agg.ramanujan_num) / static_cast<double>(x), 0.0};
    } else {
        const auto s = blocked_sum_complex(1, x, [&](std::uint64_t n) {
            return evaluate(family, n, x, &tables) * static_cast<double>(c[n % q]);
        });
        agg.ramanujan_path = s / static_cast<double>(x);
    }
    agg.dual_residual = unit_floor_dist(agg.exponential_path, agg.ramanujan_path);
    return agg;
}

LemmaReport verify_lemma(const WeightFamily& family, std::uint64_t x, std::uint64_t qmax, double tol,
                         const SpfTable& spf, const MultiplicativeTables& tables) {
    LemmaReport report;
    report.family = family;
    report.x = x;
    report.qmax = qmax;
    report.tol = tol;
    const SpectralProfile profile = compute_profile(family, x, qmax, spf, tables);
    report.rows.reserve(qmax);
    bool ok = true;
    for (std::uint64_t q = 1; q <= qmax; ++q) {
        const auto agg = primitive_aggregate(family, x, q, spf, tables);
        LemmaRow row;
        row.q = q;
        row.residual = std::max(unit_floor_dist(profile.g[q], agg.exponential_path),
                                unit_floor_dist(profile.g[q], agg.ramanujan_path));
        if (profile.exact() && agg.has_exact)
            row.exact_ok = static_cast<int128>(profile.g_num[q]) == agg.ramanujan_num;
        ok = ok && row.exact_ok && row.residual < tol;
        report.rows.push_back(row);
    }
    report.passed = ok;
    return report;
}

LargeSieveReport large_sieve_check(const WeightFamily& family, std::uint64_t x, std::uint64_t Q,
                                   const SpfTable& spf, const MultiplicativeTables& tables) {
    check_profile_args(x, Q, spf, tables, family);
    LargeSieveReport r;
    r.family = family;
    r.x = x;
    r.Q = Q;

    const double ssq = blocked_sum(1, x, [&](std::uint64_t n) {
        return std::norm(evaluate(family, n, x, &tables));
    });

    const SpectralProfile profile = compute_profile(family, x, Q, spf, tables);

    // Per-q residue-class sums B[r] = sum_{n = r (q)} a_n; each S_x(b/q) is
    // then assembled from the period-q root table.
    std::vector<double> per_q_lhs(Q + 1, 0.0);   // sum*_b |U(b)|^2, unnormalized
    bool cauchy_ok = true;
#pragma omp parallel for schedule(dynamic, 4) reduction(&& : cauchy_ok)
    for (std::int64_t qi = 1; qi <= static_cast<std::int64_t>(Q); ++qi) {
        const std::uint64_t q = static_cast<std::uint64_t>(qi);
        std::vector<std::complex<double>> bucket(q, {0.0, 0.0});
        for (std::uint64_t n = 1; n < x; ++n) bucket[n % q] += evaluate(family, n, x, &tables);
        const RootTable roots = make_root_table(q);
        Kahan acc;
        for (std::uint64_t b = 0; b < q; ++b) {
            if (q != 1 && std::gcd(b, q) != 1) continue;
            KahanComplex u;
            for (std::uint64_t rr = 0; rr < q; ++rr) u.add(bucket[rr] * roots.w[rr * b % q]);
            acc.add(std::norm(u.value()));
        }
        per_q_lhs[q] = acc.sum;
        // Cauchy-Schwarz step: |g(q)|^2 / phi(q) <= sum*_b |S(b/q)|^2
        const double phi = static_cast<double>(tables.phi[q]);
        const double lhs_q = std::norm(profile.g[q]) / phi;
        const double rhs_q = per_q_lhs[q] / (static_cast<double>(x) * static_cast<double>(x));
        cauchy_ok = cauchy_ok && lhs_q <= rhs_q * (1.0 + 1e-9) + 1e-18;
    }

    Kahan lhs_acc;
    for (std::uint64_t q = 1; q <= Q; ++q) lhs_acc.add(per_q_lhs[q]);
    r.lhs = lhs_acc.sum;
    r.rhs = (static_cast<double>(x) + static_cast<double>(Q) * static_cast<double>(Q)) * ssq;
    r.rhs_linear_q = (static_cast<double>(x) + static_cast<double>(Q)) * ssq;
    r.ratio = r.lhs / r.rhs;

    Kahan energy_acc;
    for (std::uint64_t q = 1; q <= Q; ++q)
        energy_acc.add(std::norm(profile.g[q]) / static_cast<double>(tables.phi[q]));
    r.energy = energy_acc.sum;

    r.ratio_ok = r.lhs <= r.rhs * (1.0 + 1e-12);
    r.cauchy_ok = cauchy_ok;
    r.energy_ok = r.energy <= r.lhs / (static_cast<double>(x) * static_cast<double>(x)) * (1.0 + 1e-9) + 1e-18;
    return r;
}

std::vector<EnergyPoint> energy_series(const WeightFamily& family, std::uint64_t x,
                                       const std::vector<std::uint64_t>& q_grid, const SpfTable& spf,
                                       const MultiplicativeTables& tables) {
    if (q_grid.empty()) return {};
    if (!std::is_sorted(q_grid.begin(), q_grid.end()))
        throw std::invalid_argument("energy_series: grid must ascend");
    const std::uint64_t qmax = q_grid.back();
    const SpectralProfile profile = compute_profile(family, x, qmax, spf, tables);
    std::vector<EnergyPoint> out;
    out.reserve(q_grid.size());
    Kahan acc;
    std::uint64_t q = 1;
    for (std::uint64_t stop : q_grid) {
        for (; q <= stop; ++q) acc.add(std::norm(profile.g[q]) / static_cast<double>(tables.phi[q]));
        out.push_back({stop, acc.sum});
    }
    return out;
}

}  // namespace divspec
