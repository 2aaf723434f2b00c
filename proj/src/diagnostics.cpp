#include "divspec/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "divspec/parallel.hpp"

namespace divspec {

namespace {

double unit_floor_dist(std::complex<double> a, std::complex<double> b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) / scale;
}

}  // namespace

double log_star(double t) {
    if (!(t > 0.0)) throw std::domain_error("log_star: argument must be positive");
    return std::max(1.0, std::log(t));
}

double lambda_harmonic(std::uint64_t y, const MultiplicativeTables& tables) {
    if (y < 1) throw std::invalid_argument("lambda_harmonic: y must be >= 1");
    if (y >= 2 && tables.limit < y - 1)
        throw std::out_of_range("lambda_harmonic: tables cover " + std::to_string(tables.limit) +
                                ", need " + std::to_string(y - 1));
    return blocked_sum(1, y, [&](std::uint64_t d) {
        return static_cast<double>(tables.lambda[d]) / static_cast<double>(d);
    });
}

DecompositionCheck decomposition_check(const WeightFamily& family, std::uint64_t x, std::uint64_t z,
                                       const SpfTable& spf, const MultiplicativeTables& tables) {
    if (x < 2) throw std::invalid_argument("decomposition_check: x must be >= 2");
    if (z < 1) throw std::invalid_argument("decomposition_check: z must be >= 1");
    DecompositionCheck check;
    check.family = family;
    check.x = x;
    check.z = z;
    check.exact = family.integer_valued();
    if (z == 1) {  // empty divisor range: every side is the empty sum
        check.exact_a = check.exact_b = check.exact_c = Rat::integer(0);
        return check;
    }

    // side a: batch L-series dotted with the weights
    const auto series = batch_series(x, z, SummandKind::liouville, tables);
    check.side_a = weighted_average(family, series, &tables);

    const std::uint64_t qmax = z - 1;
    const auto profile = compute_profile(family, x, qmax, spf, tables);

    // side b: sum_{d<z} lambda(d) f(d)/d; exactly (1/x) sum_d lambda(d) T_d
    // with T_d = x f(d)/d an integer by construction.
    KahanComplex acc_b;
    for (std::uint64_t d = 1; d < z; ++d)
        acc_b.add(profile.f[d] * (static_cast<double>(tables.lambda[d]) / static_cast<double>(d)));
    check.side_b = acc_b.value();

    // side c: sum_{q<z} lambda(q) (g(q)/q) H_q, H_q = sum_{m<z/q} lambda(m)/m
    KahanComplex acc_c;
    for (std::uint64_t q = 1; q < z; ++q) {
        const std::uint64_t mmax = (z - 1) / q;  // m <= mmax iff q*m < z
        Kahan h;
        for (std::uint64_t m = 1; m <= mmax; ++m)
            h.add(static_cast<double>(tables.lambda[m]) / static_cast<double>(m));
        acc_c.add(profile.g[q] * (static_cast<double>(tables.lambda[q]) * h.sum / static_cast<double>(q)));
    }
    check.side_c = acc_c.value();

    check.residual_ab = unit_floor_dist(check.side_a, check.side_b);
    check.residual_bc = unit_floor_dist(check.side_b, check.side_c);

    if (check.exact) {
        check.exact_a = weighted_average_exact(family, series, &tables);
        int128 num_b = 0;
        for (std::uint64_t d = 1; d < z; ++d)
            num_b += static_cast<int128>(tables.lambda[d]) * (profile.f_num[d] / static_cast<std::int64_t>(d));
        check.exact_b = Rat::of(num_b, static_cast<int128>(x));
        // The pair sum over (q, m) with qm = d regroups to a d-sum in which
        // sum_{q|d} x g(q) = x f(d) = d T_d, so each d-term divides exactly.
        int128 num_c = 0;
        for (std::uint64_t d = 1; d < z; ++d) {
            std::int64_t gsum = 0;
            for (std::uint64_t q : divisors(d, spf)) gsum += profile.g_num[q];
            if (gsum % static_cast<std::int64_t>(d) != 0)
                throw std::logic_error("decomposition_check: Moebius inversion produced a non-divisible term");
            num_c += static_cast<int128>(tables.lambda[d]) * (gsum / static_cast<std::int64_t>(d));
        }
        check.exact_c = Rat::of(num_c, static_cast<int128>(x));
        check.exact_equal = check.exact_a == check.exact_b && check.exact_b == check.exact_c;
    }
    return check;
}

TailSplitReport tail_split(const WeightFamily& family, std::uint64_t x, std::uint64_t z, double T,
                           const SpfTable& spf, const MultiplicativeTables& tables) {
    if (!(T > 1.0)) throw std::invalid_argument("tail_split: T must be > 1");
    if (z < 2) throw std::invalid_argument("tail_split: z must be >= 2");
    TailSplitReport r;
    r.family = family;
    r.x = x;
    r.z = z;
    r.T = T;

    const auto profile = compute_profile(family, x, z - 1, spf, tables);
    const double threshold = static_cast<double>(z) / T;
    Kahan he, hw, te, tw, target;
    for (std::uint64_t q = 1; q < z; ++q) {
        const double ls = log_star(static_cast<double>(z) / static_cast<double>(q));
        const double phi = static_cast<double>(tables.phi[q]);
        const double qd = static_cast<double>(q);
        const double energy_term = std::norm(profile.g[q]) / phi;
        const double weight_term = phi / (qd * qd * ls * ls);
        if (qd < threshold) {
            he.add(energy_term);
            hw.add(weight_term);
        } else {
            te.add(energy_term);
            tw.add(weight_term);
        }
        target.add(std::abs(profile.g[q]) / (qd * ls));
    }
    r.head_energy = he.sum;
    r.head_weight = hw.sum;
    r.tail_energy = te.sum;
    r.tail_weight = tw.sum;
    r.bound = std::sqrt(r.head_energy * r.head_weight) + std::sqrt(r.tail_energy * r.tail_weight);
    r.target = target.sum;
    r.passed = r.target <= r.bound * (1.0 + 1e-9) + 1e-18;
    return r;
}

DyadicWeightSum dyadic_weight_sum(std::uint64_t z, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("dyadic_weight_sum: T must be positive");
    DyadicWeightSum out;
    out.z = z;
    out.T = T;

    // largest q with q*T < z under the same float predicate used below
    std::uint64_t qmax = static_cast<std::uint64_t>(std::floor(static_cast<double>(z) / T)) + 2;
    while (qmax >= 1 && !(static_cast<double>(qmax) < static_cast<double>(z) / T)) --qmax;
    if (qmax < 1) return out;  // empty range: z/T <= 1

    Kahan direct;
    for (std::uint64_t q = 1; q <= qmax; ++q) {
        const double ls = log_star(static_cast<double>(z) / static_cast<double>(q));
        direct.add(1.0 / (static_cast<double>(q) * ls * ls));
    }
    out.direct = direct.sum;

    // Walk q downward, advancing k whenever q falls below the block floor.
    // Every q lands in exactly one block by construction.
    const double zt = static_cast<double>(z) / T;
    int k = 0;
    std::uint64_t q = qmax;
    Kahan total;
    while (q >= 1) {
        while (!(static_cast<double>(q) > zt * std::ldexp(1.0, -(k + 1)))) ++k;
        DyadicBlock block;
        block.k = k;
        block.q_hi = q;
        Kahan bsum;
        while (q >= 1 && static_cast<double>(q) > zt * std::ldexp(1.0, -(k + 1))) {
            const double ls = log_star(static_cast<double>(z) / static_cast<double>(q));
            bsum.add(1.0 / (static_cast<double>(q) * ls * ls));
            block.q_lo = q;
            --q;
        }
        block.sum = bsum.sum;
        const double ls_floor = log_star(T * std::ldexp(1.0, k));
        block.upper = (std::numbers::ln2 + 1.0 / static_cast<double>(block.q_lo)) / (ls_floor * ls_floor);
        out.blocks.push_back(block);
    }
    Kahan blocked;
    for (const auto& b : out.blocks) blocked.add(b.sum);
    out.blocked_total = blocked.sum;
    return out;
}

std::vector<ConvergenceRow> convergence_sweep(const WeightFamily& family,
                                              const std::vector<std::uint64_t>& x_grid,
                                              const std::vector<std::uint64_t>& z_grid,
                                              const SpfTable& spf, const MultiplicativeTables& tables) {
    (void)spf;
    if (!std::is_sorted(x_grid.begin(), x_grid.end()) || !std::is_sorted(z_grid.begin(), z_grid.end()))
        throw std::invalid_argument("convergence_sweep: grids must ascend");
    std::vector<ConvergenceRow> rows;
    rows.reserve(x_grid.size() * z_grid.size());
    for (std::uint64_t x : x_grid) {
        for (std::uint64_t z : z_grid) {
            ConvergenceRow row;
            row.family = family;
            row.x = x;
            row.z = z;
            if (z == 1) {
                row.A = {0.0, 0.0};  // empty divisor sums
            } else {
                const auto series = batch_series(x, z, SummandKind::liouville, tables);
                row.A = weighted_average(family, series, &tables);
            }
            row.abs_A = std::abs(row.A);
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace divspec
