// Times the OpenMP kernels against their serial reference implementations
// and cross-checks that both produce identical output.

#include <cinttypes>
#include <cstdio>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"

#include "divspec/divisor_sums.hpp"
#include "divspec/parallel.hpp"
#include "divspec/reference.hpp"
#include "divspec/sieve.hpp"
#include "divspec/spectral.hpp"

using namespace divspec;

namespace {

int threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
    omp_set_num_threads(n);
#else
    (void)n;
#endif
}

struct Timed {
    double seconds;
};

template <class F>
Timed timed(F&& f) {
    const double t0 = wall_time();
    f();
    return {wall_time() - t0};
}

void row(const char* name, double serial_s, double parallel_s, bool equal) {
    std::printf("%-28s %10.3fs %12.3fs %9.2fx   %s\n", name, serial_s, parallel_s,
                serial_s / parallel_s, equal ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"divspec kernel benchmark: serial reference vs OpenMP"};
    std::uint64_t sieve_limit = 10'000'000;
    std::uint64_t batch_x = 10'000'000;
    std::uint64_t batch_z = 1'000;
    std::uint64_t profile_x = 1'000'000;
    std::uint64_t profile_qmax = 500;
    app.add_option("--sieve-limit", sieve_limit, "SPF/multiplicative table limit");
    app.add_option("--batch-x", batch_x, "batch sweep range");
    app.add_option("--batch-z", batch_z, "batch sweep divisor bound");
    app.add_option("--profile-x", profile_x, "spectral profile range");
    app.add_option("--profile-qmax", profile_qmax, "spectral profile qmax");
    CLI11_PARSE(app, argc, argv);

    std::printf("threads: %d\n", threads());
    std::printf("%-28s %11s %13s %10s\n", "kernel", "serial", "parallel", "speedup");

    // SPF sieve: the parallel segmented build against a single-threaded run
    // of the same kernel (the trial-division oracle is too slow at this size;
    // it is compared at a smaller limit below).
    SpfTable spf;
    {
        set_threads(1);
        SpfTable serial = build_spf_table(sieve_limit);
        const auto ts = timed([&] { serial = build_spf_table(sieve_limit); });
#ifdef _OPENMP
        omp_set_num_threads(omp_get_num_procs());
#endif
        const auto tp = timed([&] { spf = build_spf_table(sieve_limit); });
        row("spf_sieve", ts.seconds, tp.seconds, serial.spf == spf.spf);
    }
    {
        const std::uint64_t small = std::min<std::uint64_t>(sieve_limit, 100'000);
        SpfTable naive, segmented;
        const auto ts = timed([&] { naive = reference::build_spf_table_naive(small); });
        const auto tp = timed([&] { segmented = build_spf_table(small); });
        row("spf_vs_trial_division", ts.seconds, tp.seconds, naive.spf == segmented.spf);
    }

    MultiplicativeTables tables;
    {
        set_threads(1);
        MultiplicativeTables serial = build_multiplicative_tables(spf);
        const auto ts = timed([&] { serial = build_multiplicative_tables(spf); });
#ifdef _OPENMP
        omp_set_num_threads(omp_get_num_procs());
#endif
        const auto tp = timed([&] { tables = build_multiplicative_tables(spf); });
        row("multiplicative_tables", ts.seconds, tp.seconds,
            serial.lambda == tables.lambda && serial.mu == tables.mu && serial.phi == tables.phi);
    }

    {
        std::vector<std::int32_t> serial;
        const std::vector<std::int8_t>& coef = tables.lambda;
        const auto ts = timed([&] { serial = reference::batch_sweep_serial(batch_x, batch_z, coef); });
        DivisorSumSeries parallel;
        const auto tp = timed([&] { parallel = batch_series(batch_x, batch_z, SummandKind::liouville, tables); });
        row("batch_series", ts.seconds, tp.seconds, serial == parallel.values);
    }

    {
        const WeightFamily family = WeightFamily::liouville_family();
        SpectralProfile serial_profile, parallel_profile;
        set_threads(1);
        const auto ts = timed([&] { serial_profile = compute_profile(family, profile_x, profile_qmax, spf, tables); });
#ifdef _OPENMP
        omp_set_num_threads(omp_get_num_procs());
#endif
        const auto tp = timed([&] { parallel_profile = compute_profile(family, profile_x, profile_qmax, spf, tables); });
        row("spectral_profile", ts.seconds, tp.seconds,
            serial_profile.f_num == parallel_profile.f_num && serial_profile.g_num == parallel_profile.g_num);
    }

    return 0;
}
