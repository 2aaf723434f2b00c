#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "divspec/diagnostics.hpp"
#include "divspec/divisor_sums.hpp"
#include "divspec/spectral.hpp"

namespace divspec {

/// Round-trip exact float rendering (17 significant digits, C locale).
std::string fmt_double(double v);

/// Grid syntax: "a,b,c" or "geom:start:stop:count" (geometric, endpoints
/// included, rounded to integers, deduplicated).
std::vector<std::uint64_t> parse_grid(std::string_view spec);

// CSV writers. Output is deterministic byte for byte: fixed headers, fixed
// row order, %.17g floats, no locale dependence.
void write_sieve_csv(std::ostream& os, const SpfTable& spf);
void write_moments_csv(std::ostream& os, const std::vector<MomentRecord>& rows);
void write_lemma_csv(std::ostream& os, const LemmaReport& report);
void write_large_sieve_csv(std::ostream& os, const std::vector<LargeSieveReport>& rows);
void write_decompose_csv(std::ostream& os, const std::vector<DecompositionCheck>& rows);
void write_tail_split_csv(std::ostream& os, const std::vector<TailSplitReport>& rows);
void write_converge_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);

// JSON counterparts (nlohmann serialization, insertion-ordered keys).
std::string sieve_json(const SpfTable& spf);
std::string moments_json(const std::vector<MomentRecord>& rows);
std::string lemma_json(const LemmaReport& report);
std::string large_sieve_json(const std::vector<LargeSieveReport>& rows);
std::string decompose_json(const std::vector<DecompositionCheck>& rows);
std::string tail_split_json(const std::vector<TailSplitReport>& rows);
std::string converge_json(const std::vector<ConvergenceRow>& rows);

}  // namespace divspec
