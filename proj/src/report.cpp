#include "divspec/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace divspec {

using ordered_json = nlohmann::ordered_json;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::uint64_t parse_u64_strict(std::string_view s, const char* what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument(std::string("grid: bad ") + what + " '" + std::string(s) + "'");
    return v;
}

}  // namespace

std::vector<std::uint64_t> parse_grid(std::string_view spec) {
    std::vector<std::uint64_t> out;
    if (spec.starts_with("geom:")) {
        std::string_view rest = spec.substr(5);
        const auto c1 = rest.find(':');
        const auto c2 = rest.find(':', c1 == std::string_view::npos ? c1 : c1 + 1);
        if (c1 == std::string_view::npos || c2 == std::string_view::npos)
            throw std::invalid_argument("grid: expected geom:start:stop:count");
        const std::uint64_t start = parse_u64_strict(rest.substr(0, c1), "start");
        const std::uint64_t stop = parse_u64_strict(rest.substr(c1 + 1, c2 - c1 - 1), "stop");
        const std::uint64_t count = parse_u64_strict(rest.substr(c2 + 1), "count");
        if (start < 1 || stop < start || count < 1)
            throw std::invalid_argument("grid: need 1 <= start <= stop and count >= 1");
        if (count == 1) {
            out.push_back(start);
        } else {
            const double ratio = std::pow(static_cast<double>(stop) / static_cast<double>(start),
                                          1.0 / static_cast<double>(count - 1));
            for (std::uint64_t i = 0; i < count; ++i) {
                const double v = static_cast<double>(start) * std::pow(ratio, static_cast<double>(i));
                std::uint64_t iv = static_cast<std::uint64_t>(std::llround(v));
                if (i == 0) iv = start;
                if (i == count - 1) iv = stop;
                if (out.empty() || out.back() != iv) out.push_back(iv);
            }
        }
        return out;
    }
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        const auto comma = spec.find(',', pos);
        const auto piece = spec.substr(pos, comma == std::string_view::npos ? spec.size() - pos
                                                                            : comma - pos);
        out.push_back(parse_u64_strict(piece, "entry"));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("grid: empty spec");
    return out;
}

void write_sieve_csv(std::ostream& os, const SpfTable& spf) {
    std::uint64_t primes = 0, checksum = 0;
    for (std::uint64_t n = 2; n <= spf.limit; ++n) {
        if (spf.spf[n] == n) ++primes;
        checksum += spf.spf[n];
    }
    os << "sieve,limit,prime_count,spf_checksum\n";
    os << "sieve," << spf.limit << "," << primes << "," << checksum << "\n";
}

void write_moments_csv(std::ostream& os, const std::vector<MomentRecord>& rows) {
    os << "kind,x,z,moment_num,moment_den,moment_float\n";
    for (const auto& r : rows)
        os << summand_name(r.kind) << "," << r.x << "," << r.z << "," << to_string_int128(r.num)
           << "," << r.den << "," << fmt_double(r.value) << "\n";
}

void write_lemma_csv(std::ostream& os, const LemmaReport& report) {
    os << "lemma,family,x,q,residual\n";
    for (const auto& row : report.rows)
        os << "lemma," << report.family.to_string() << "," << report.x << "," << row.q << ","
           << fmt_double(row.residual) << "\n";
}

void write_large_sieve_csv(std::ostream& os, const std::vector<LargeSieveReport>& rows) {
    os << "large_sieve,family,x,Q,lhs,rhs,ratio,energy\n";
    for (const auto& r : rows)
        os << "large_sieve," << r.family.to_string() << "," << r.x << "," << r.Q << ","
           << fmt_double(r.lhs) << "," << fmt_double(r.rhs) << "," << fmt_double(r.ratio) << ","
           << fmt_double(r.energy) << "\n";
}

void write_decompose_csv(std::ostream& os, const std::vector<DecompositionCheck>& rows) {
    os << "decompose,family,x,z,re_a,im_a,re_b,im_b,re_c,im_c,residual_ab,residual_bc,exact_equal\n";
    for (const auto& r : rows)
        os << "decompose," << r.family.to_string() << "," << r.x << "," << r.z << ","
           << fmt_double(r.side_a.real()) << "," << fmt_double(r.side_a.imag()) << ","
           << fmt_double(r.side_b.real()) << "," << fmt_double(r.side_b.imag()) << ","
           << fmt_double(r.side_c.real()) << "," << fmt_double(r.side_c.imag()) << ","
           << fmt_double(r.residual_ab) << "," << fmt_double(r.residual_bc) << ","
           << (r.exact ? (r.exact_equal ? "1" : "0") : "-") << "\n";
}

void write_tail_split_csv(std::ostream& os, const std::vector<TailSplitReport>& rows) {
    os << "tail_split,family,x,z,T,head_energy,head_weight,tail_energy,tail_weight,bound,target,passed\n";
    for (const auto& r : rows)
        os << "tail_split," << r.family.to_string() << "," << r.x << "," << r.z << ","
           << fmt_double(r.T) << "," << fmt_double(r.head_energy) << "," << fmt_double(r.head_weight)
           << "," << fmt_double(r.tail_energy) << "," << fmt_double(r.tail_weight) << ","
           << fmt_double(r.bound) << "," << fmt_double(r.target) << "," << (r.passed ? "1" : "0")
           << "\n";
}

void write_converge_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
    os << "converge,family,x,z,re_A,im_A,abs_A\n";
    for (const auto& r : rows)
        os << "converge," << r.family.to_string() << "," << r.x << "," << r.z << ","
           << fmt_double(r.A.real()) << "," << fmt_double(r.A.imag()) << "," << fmt_double(r.abs_A)
           << "\n";
}

namespace {

ordered_json complex_json(std::complex<double> v) {
    return ordered_json{{"re", v.real()}, {"im", v.imag()}};
}

}  // namespace

std::string sieve_json(const SpfTable& spf) {
    std::uint64_t primes = 0, checksum = 0;
    for (std::uint64_t n = 2; n <= spf.limit; ++n) {
        if (spf.spf[n] == n) ++primes;
        checksum += spf.spf[n];
    }
    ordered_json j{{"command", "sieve"},
                   {"limit", spf.limit},
                   {"prime_count", primes},
                   {"spf_checksum", checksum}};
    return j.dump(2);
}

std::string moments_json(const std::vector<MomentRecord>& rows) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows)
        arr.push_back(ordered_json{{"kind", summand_name(r.kind)},
                                   {"x", r.x},
                                   {"z", r.z},
                                   {"moment_num", to_string_int128(r.num)},
                                   {"moment_den", r.den},
                                   {"moment_float", r.value}});
    return ordered_json{{"command", "moments"}, {"rows", arr}}.dump(2);
}

std::string lemma_json(const LemmaReport& report) {
    ordered_json arr = ordered_json::array();
    for (const auto& row : report.rows)
        arr.push_back(ordered_json{{"q", row.q}, {"residual", row.residual}, {"exact_ok", row.exact_ok}});
    return ordered_json{{"command", "identity"},
                        {"family", report.family.to_string()},
                        {"x", report.x},
                        {"qmax", report.qmax},
                        {"tol", report.tol},
                        {"passed", report.passed},
                        {"rows", arr}}
        .dump(2);
}

std::string large_sieve_json(const std::vector<LargeSieveReport>& rows) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows)
        arr.push_back(ordered_json{{"family", r.family.to_string()},
                                   {"x", r.x},
                                   {"Q", r.Q},
                                   {"lhs", r.lhs},
                                   {"rhs", r.rhs},
                                   {"ratio", r.ratio},
                                   {"energy", r.energy},
                                   {"rhs_linear_q", r.rhs_linear_q},
                                   {"ratio_ok", r.ratio_ok},
                                   {"cauchy_ok", r.cauchy_ok},
                                   {"energy_ok", r.energy_ok}});
    return ordered_json{{"command", "large-sieve"}, {"rows", arr}}.dump(2);
}

std::string decompose_json(const std::vector<DecompositionCheck>& rows) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json item{{"family", r.family.to_string()},
                          {"x", r.x},
                          {"z", r.z},
                          {"side_a", complex_json(r.side_a)},
                          {"side_b", complex_json(r.side_b)},
                          {"side_c", complex_json(r.side_c)},
                          {"residual_ab", r.residual_ab},
                          {"residual_bc", r.residual_bc}};
        if (r.exact) {
            item["exact_equal"] = r.exact_equal;
            item["exact_a"] = r.exact_a.to_string();
            item["exact_b"] = r.exact_b.to_string();
            item["exact_c"] = r.exact_c.to_string();
        }
        arr.push_back(item);
    }
    return ordered_json{{"command", "decompose"}, {"rows", arr}}.dump(2);
}

std::string tail_split_json(const std::vector<TailSplitReport>& rows) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows)
        arr.push_back(ordered_json{{"family", r.family.to_string()},
                                   {"x", r.x},
                                   {"z", r.z},
                                   {"T", r.T},
                                   {"head_energy", r.head_energy},
                                   {"head_weight", r.head_weight},
                                   {"tail_energy", r.tail_energy},
                                   {"tail_weight", r.tail_weight},
                                   {"bound", r.bound},
                                   {"target", r.target},
                                   {"passed", r.passed}});
    return ordered_json{{"command", "tail-split"}, {"rows", arr}}.dump(2);
}

std::string converge_json(const std::vector<ConvergenceRow>& rows) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows)
        arr.push_back(ordered_json{{"family", r.family.to_string()},
                                   {"x", r.x},
                                   {"z", r.z},
                                   {"A", complex_json(r.A)},
                                   {"abs_A", r.abs_A}});
    return ordered_json{{"command", "converge"}, {"rows", arr}}.dump(2);
}

}  // namespace divspec
