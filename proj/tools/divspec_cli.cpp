// divspec: experiments around divisor partial sums of the Liouville and
// Moebius functions, their q-spectra, and the large-sieve energy of bounded
// weight families. Emits deterministic CSV (default) or JSON (--json).

#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "divspec/diagnostics.hpp"
#include "divspec/divisor_sums.hpp"
#include "divspec/parallel.hpp"
#include "divspec/report.hpp"
#include "divspec/sieve.hpp"
#include "divspec/spectral.hpp"
#include "divspec/weights.hpp"

namespace {

using namespace divspec;

struct CommonOpts {
    std::string out;
    std::string tables_path;
    bool json = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--out", opts.out, "write the report to FILE instead of stdout");
    cmd->add_option("--tables", opts.tables_path, "load the SPF table from a sieve --dump file");
    cmd->add_flag("--json", opts.json, "emit JSON instead of CSV");
}

// Load a dumped table when one is offered (it must cover the needed limit),
// otherwise sieve from scratch.
SpfTable obtain_spf(const CommonOpts& opts, std::uint64_t needed_limit) {
    if (opts.tables_path.empty()) return build_spf_table(needed_limit);
    SpfTable spf = load_spf_table(opts.tables_path);
    if (spf.limit < needed_limit)
        throw std::runtime_error("table dump covers " + std::to_string(spf.limit) +
                                 " but this run needs " + std::to_string(needed_limit));
    return spf;
}

void emit(const CommonOpts& opts, const std::string& csv, const std::string& json) {
    const std::string& payload = opts.json ? json : csv;
    if (opts.out.empty()) {
        std::cout << payload;
        if (opts.json) std::cout << "\n";
        return;
    }
    std::ofstream f(opts.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + opts.out);
    f << payload;
    if (opts.json) f << "\n";
}

std::string csv_of(const std::function<void(std::ostream&)>& writer) {
    std::ostringstream ss;
    writer(ss);
    return ss.str();
}

// Table limit covering structural needs (divisor/mu lookups up to qmax or
// z-1, sweep coefficients) plus x-1 when the family reads lambda/mu directly.
std::uint64_t table_limit_for(const WeightFamily& family, std::uint64_t x, std::uint64_t structural) {
    std::uint64_t limit = std::max<std::uint64_t>(structural, 1);
    if (family.needs_tables() && x >= 2) limit = std::max(limit, x - 1);
    return limit;
}

int run_sieve(std::uint64_t limit, std::uint64_t segment, const std::string& dump_path,
              const CommonOpts& opts) {
    const double t0 = wall_time();
    const SpfTable spf = build_spf_table(limit, segment);
    std::cerr << "sieve: limit=" << limit << " built in " << wall_time() - t0 << " s\n";
    if (!dump_path.empty()) {
        dump_spf_table(spf, dump_path);
        std::cerr << "sieve: dumped to " << dump_path << "\n";
    }
    emit(opts, csv_of([&](std::ostream& os) { write_sieve_csv(os, spf); }), sieve_json(spf));
    return 0;
}

int run_moments(std::uint64_t x, const std::string& z_spec, const std::string& kind_name,
                const CommonOpts& opts) {
    const SummandKind kind = parse_summand(kind_name);
    const auto z_grid = parse_grid(z_spec);
    std::uint64_t zmax = 1;
    for (auto z : z_grid) zmax = std::max(zmax, z);
    const std::uint64_t limit = std::max<std::uint64_t>(1, std::min(zmax, x) - 1);
    const SpfTable spf = obtain_spf(opts, limit);
    const MultiplicativeTables tables = build_multiplicative_tables(spf);
    std::vector<MomentRecord> rows;
    for (auto z : z_grid) {
        const auto series = batch_series(x, z, kind, tables);
        rows.push_back(second_moment(series));
    }
    emit(opts, csv_of([&](std::ostream& os) { write_moments_csv(os, rows); }), moments_json(rows));
    return 0;
}

int run_identity(const WeightFamily& family, std::uint64_t x, std::uint64_t qmax, double tol,
                 const CommonOpts& opts) {
    const SpfTable spf = obtain_spf(opts, table_limit_for(family, x, qmax));
    const MultiplicativeTables tables = build_multiplicative_tables(spf);
    const LemmaReport report = verify_lemma(family, x, qmax, tol, spf, tables);
    emit(opts, csv_of([&](std::ostream& os) { write_lemma_csv(os, report); }), lemma_json(report));
    std::cerr << "identity: " << (report.passed ? "pass" : "FAIL") << " (family "
              << family.to_string() << ", x=" << x << ", qmax=" << qmax << ", tol=" << tol << ")\n";
    return report.passed ? 0 : 1;
}

int run_large_sieve(const WeightFamily& family, std::uint64_t x, std::uint64_t Q,
                    const CommonOpts& opts) {
    const SpfTable spf = obtain_spf(opts, table_limit_for(family, x, Q));
    const MultiplicativeTables tables = build_multiplicative_tables(spf);
    const LargeSieveReport report = large_sieve_check(family, x, Q, spf, tables);
    std::vector<LargeSieveReport> rows{report};
    emit(opts, csv_of([&](std::ostream& os) { write_large_sieve_csv(os, rows); }),
         large_sieve_json(rows));
    const bool ok = report.ratio_ok && report.cauchy_ok && report.energy_ok;
    std::cerr << "large-sieve: ratio=" << report.ratio << " (the (x+Q) rhs form would be "
              << report.rhs_linear_q << "), " << (ok ? "pass" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

int run_decompose(const WeightFamily& family, std::uint64_t x, std::uint64_t z,
                  const CommonOpts& opts) {
    const std::uint64_t structural = z >= 2 ? z - 1 : 1;
    const SpfTable spf = obtain_spf(opts, table_limit_for(family, x, structural));
    const MultiplicativeTables tables = build_multiplicative_tables(spf);
    const DecompositionCheck check = decomposition_check(family, x, z, spf, tables);
    std::vector<DecompositionCheck> rows{check};
    emit(opts, csv_of([&](std::ostream& os) { write_decompose_csv(os, rows); }), decompose_json(rows));
    const bool ok = check.residual_ab < 1e-9 && check.residual_bc < 1e-9 && check.exact_equal;
    std::cerr << "decompose: residual_ab=" << check.residual_ab << " residual_bc=" << check.residual_bc
              << (check.exact ? (check.exact_equal ? " exact=equal" : " exact=UNEQUAL") : "")
              << ", " << (ok ? "pass" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

int run_tail_split(const WeightFamily& family, std::uint64_t x, std::uint64_t z, double T,
                   const CommonOpts& opts) {
    const std::uint64_t structural = z >= 2 ? z - 1 : 1;
    const SpfTable spf = obtain_spf(opts, table_limit_for(family, x, structural));
    const MultiplicativeTables tables = build_multiplicative_tables(spf);
    const TailSplitReport report = tail_split(family, x, z, T, spf, tables);
    std::vector<TailSplitReport> rows{report};
    emit(opts, csv_of([&](std::ostream& os) { write_tail_split_csv(os, rows); }),
         tail_split_json(rows));
    std::cerr << "tail-split: target=" << report.target << " bound=" << report.bound << ", "
              << (report.passed ? "pass" : "FAIL") << "\n";
    return report.passed ? 0 : 1;
}

int run_converge(const WeightFamily& family, const std::string& x_spec, const std::string& z_spec,
                 const CommonOpts& opts) {
    auto x_grid = parse_grid(x_spec);
    auto z_grid = parse_grid(z_spec);
    std::uint64_t xmax = 0, zmax = 1;
    for (auto x : x_grid) xmax = std::max(xmax, x);
    for (auto z : z_grid) zmax = std::max(zmax, z);
    const std::uint64_t structural = std::max<std::uint64_t>(1, std::min(zmax, xmax) - 1);
    const SpfTable spf = obtain_spf(opts, table_limit_for(family, xmax, structural));
    const MultiplicativeTables tables = build_multiplicative_tables(spf);
    const auto rows = convergence_sweep(family, x_grid, z_grid, spf, tables);
    emit(opts, csv_of([&](std::ostream& os) { write_converge_csv(os, rows); }), converge_json(rows));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"divisor-sum spectra laboratory"};
    app.require_subcommand(1);

    // sieve
    std::uint64_t sieve_limit = 0, sieve_segment = 0;
    std::string dump_path;
    CommonOpts sieve_opts;
    auto* sieve_cmd = app.add_subcommand("sieve", "build SPF table, optionally dump it");
    sieve_cmd->add_option("--limit", sieve_limit, "table limit")->required();
    sieve_cmd->add_option("--segment-size", sieve_segment, "sieve segment length (entries)");
    sieve_cmd->add_option("--dump", dump_path, "write binary table dump to FILE");
    add_common(sieve_cmd, sieve_opts);

    // moments
    std::uint64_t mom_x = 0;
    std::string mom_z, mom_kind = "moebius";
    CommonOpts mom_opts;
    auto* mom_cmd = app.add_subcommand("moments", "second moments of M(n,z) or L(n,z)");
    mom_cmd->add_option("--x", mom_x, "range bound (n < x)")->required();
    mom_cmd->add_option("--z", mom_z, "divisor bounds, comma list or geom:a:b:n")->required();
    mom_cmd->add_option("--kind", mom_kind, "moebius or liouville");
    add_common(mom_cmd, mom_opts);

    // identity
    std::string id_family;
    std::uint64_t id_x = 0, id_qmax = 0;
    double id_tol = 1e-10;
    CommonOpts id_opts;
    auto* id_cmd = app.add_subcommand("identity", "check g_x(q) = sum*_b S_x(b/q) for q <= qmax");
    id_cmd->add_option("--family", id_family, "weight family")->required();
    id_cmd->add_option("--x", id_x, "range bound")->required();
    id_cmd->add_option("--qmax", id_qmax, "largest modulus")->required();
    id_cmd->add_option("--tol", id_tol, "residual tolerance");
    add_common(id_cmd, id_opts);

    // large-sieve
    std::string ls_family;
    std::uint64_t ls_x = 0, ls_Q = 0;
    CommonOpts ls_opts;
    auto* ls_cmd = app.add_subcommand("large-sieve", "large-sieve ratio and spectral energy");
    ls_cmd->add_option("--family", ls_family, "weight family")->required();
    ls_cmd->add_option("--x", ls_x, "range bound")->required();
    ls_cmd->add_option("--Q", ls_Q, "largest modulus")->required();
    add_common(ls_cmd, ls_opts);

    // decompose
    std::string dc_family;
    std::uint64_t dc_x = 0, dc_z = 0;
    CommonOpts dc_opts;
    auto* dc_cmd = app.add_subcommand("decompose", "three-way decomposition of x^{-1} sum a_n L(n,z)");
    dc_cmd->add_option("--family", dc_family, "weight family")->required();
    dc_cmd->add_option("--x", dc_x, "range bound")->required();
    dc_cmd->add_option("--z", dc_z, "divisor bound")->required();
    add_common(dc_cmd, dc_opts);

    // tail-split
    std::string ts_family;
    std::uint64_t ts_x = 0, ts_z = 0;
    double ts_T = 10.0;
    CommonOpts ts_opts;
    auto* ts_cmd = app.add_subcommand("tail-split", "Cauchy-Schwarz head/tail split diagnostics");
    ts_cmd->add_option("--family", ts_family, "weight family")->required();
    ts_cmd->add_option("--x", ts_x, "range bound")->required();
    ts_cmd->add_option("--z", ts_z, "divisor bound")->required();
    ts_cmd->add_option("--T", ts_T, "split parameter (> 1)");
    add_common(ts_cmd, ts_opts);

    // converge
    std::string cv_family, cv_xgrid, cv_zgrid;
    CommonOpts cv_opts;
    auto* cv_cmd = app.add_subcommand("converge", "A(x,z) over an (x,z) grid");
    cv_cmd->add_option("--family", cv_family, "weight family")->required();
    cv_cmd->add_option("--x-grid", cv_xgrid, "comma list or geom:a:b:n")->required();
    cv_cmd->add_option("--z-grid", cv_zgrid, "comma list or geom:a:b:n")->required();
    add_common(cv_cmd, cv_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sieve_cmd->parsed()) return run_sieve(sieve_limit, sieve_segment, dump_path, sieve_opts);
        if (mom_cmd->parsed()) return run_moments(mom_x, mom_z, mom_kind, mom_opts);
        if (id_cmd->parsed())
            return run_identity(WeightFamily::parse(id_family), id_x, id_qmax, id_tol, id_opts);
        if (ls_cmd->parsed()) return run_large_sieve(WeightFamily::parse(ls_family), ls_x, ls_Q, ls_opts);
        if (dc_cmd->parsed()) return run_decompose(WeightFamily::parse(dc_family), dc_x, dc_z, dc_opts);
        if (ts_cmd->parsed())
            return run_tail_split(WeightFamily::parse(ts_family), ts_x, ts_z, ts_T, ts_opts);
        if (cv_cmd->parsed())
            return run_converge(WeightFamily::parse(cv_family), cv_xgrid, cv_zgrid, cv_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
