#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nonres/burgess.hpp"

namespace nonres {

enum class CheckId {
    table1,
    table1_monotone,
    lemma1c,
    hudson,
    prop_intermediate,
    prop_full,
    theta_remainder,
    phisum,
    convexity,
    corr_x_mono,
    corr_u_mono,
    main_corr_mono,
    main_corr_limit,
    pv_compare,
    pv_empirical,
    const_k_digits,
    const_k_square,
    const_kg_bound,
    spot_q2_main,
    spot_norton,
    spot_q2_uncond,
};

const char* check_name(CheckId id);
std::optional<CheckId> check_from_name(std::string_view name);

enum class BoundKind { upper, lower, abs };
const char* kind_name(BoundKind k);

inline constexpr int64_t kChiQuadratic = -1;
inline constexpr int64_t kChiNone = -2;
inline constexpr double kNoInput = std::numeric_limits<double>::quiet_NaN();

// One sweep case: inputs, computed value, bound, pass/fail and margin.
// margin = bound - value for upper checks, value - bound for lower checks,
// tolerance - |value - bound| for abs checks; pass iff margin clears the
// check's tolerance. Missing inputs stay at their sentinels and serialize
// as null (JSONL) or empty (CSV).
struct AuditRecord {
    CheckId check = CheckId::table1;
    BoundKind kind = BoundKind::upper;
    uint64_t p = 0;          // 0 = n/a
    int64_t chi = kChiNone;  // character index, kChiQuadratic, or kChiNone
    int64_t h = -1, r = -1, u = -1, H = -1;
    double x0 = kNoInput, x1 = kNoInput;  // auxiliary real inputs (X, p0, m, grid points)
    double value = kNoInput;
    double bound = kNoInput;
    double margin = kNoInput;
    bool pass = true;
    bool informational = false;
    std::string note;
    double elapsed_s = 0;  // serialized only when timing is requested
};

using RecordSink = std::function<void(const AuditRecord&)>;

struct SweepConfig {
    uint64_t p_min = 5;
    uint64_t p_max = 300;
    CharScope scope = CharScope::all;
    std::vector<uint64_t> h_set;       // empty = per-sweep default
    std::vector<uint64_t> r_set;       // empty = per-sweep default
    std::optional<double> tolerance;   // empty = per-check default
    unsigned jobs = 1;
    uint64_t seed = 1;
    uint64_t table_limit = kDefaultTableLimit;
    // analytic grid sizes
    uint64_t grid_pairs = 10000;
    uint64_t grid_points = 10000;
    uint64_t convexity_h_max = 1000;
    uint64_t convexity_r_max = 50;
    uint64_t pv_empirical_limit = 300;
};

struct SpotcheckConfig {
    uint64_t samples = 100;
    uint64_t p_min = 10'000'000;
    uint64_t p_max = 1'000'000'000;
    double p0 = 1e7;
    uint64_t seed = 1;
};

struct ReportSummary {
    std::string name;
    uint64_t cases = 0;
    uint64_t violations = 0;  // non-informational failures
    uint64_t info_failures = 0;
    uint64_t vacuous = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    AuditRecord worst;  // record attaining min_margin
    double elapsed_s = 0;
    std::map<std::string, double> stats;
};

// Sweeps emit one AuditRecord per case to the sink in a deterministic order
// (independent of cfg.jobs) and return aggregate counts.
ReportSummary run_table1(std::optional<double> tolerance = {}, const RecordSink& sink = {});
ReportSummary run_sweep_lemma1c(const SweepConfig& cfg, const RecordSink& sink = {});
ReportSummary run_sweep_hudson(const SweepConfig& cfg, const RecordSink& sink = {});
ReportSummary run_sweep_proposition(const SweepConfig& cfg, const RecordSink& sink = {});
ReportSummary run_sweep_analytic(const SweepConfig& cfg, const RecordSink& sink = {});
ReportSummary run_spotcheck_quadratic(const SpotcheckConfig& cfg, const RecordSink& sink = {});

// 0 when no non-informational violations, 1 otherwise.
int exit_code(const ReportSummary& s);
std::string summary_line(const ReportSummary& s);

// Fixed field set, shortest round-trip number formatting, one record per
// line. Timing is opt-in so that reports stay byte-identical across runs.
void write_jsonl(std::ostream& os, const AuditRecord& rec, bool timing = false);
void write_csv_header(std::ostream& os, bool timing = false);
void write_csv_row(std::ostream& os, const AuditRecord& rec, bool timing = false);

// Re-runs a single case exactly as the owning sweep computes it.
struct CaseInputs {
    CheckId check = CheckId::table1;
    uint64_t p = 0;
    int64_t chi = kChiNone;
    int64_t h = -1, r = -1, u = -1, H = -1;
    double x0 = kNoInput, x1 = kNoInput;
    std::optional<double> tolerance;
    uint64_t table_limit = kDefaultTableLimit;
};
AuditRecord run_case(const CaseInputs& in);

}  // namespace nonres
