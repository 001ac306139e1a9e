#include "nonres/audit.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <charconv>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>
#include <thread>

#include "nonres/nonresidue.hpp"

namespace nonres {

namespace {

struct CheckNameEntry {
    CheckId id;
    const char* name;
};

constexpr CheckNameEntry kCheckNames[] = {
    {CheckId::table1, "table1"},
    {CheckId::table1_monotone, "table1:monotone"},
    {CheckId::lemma1c, "lemma1c"},
    {CheckId::hudson, "hudson"},
    {CheckId::prop_intermediate, "proposition:intermediate"},
    {CheckId::prop_full, "proposition:full"},
    {CheckId::theta_remainder, "analytic:theta"},
    {CheckId::phisum, "analytic:phisum"},
    {CheckId::convexity, "analytic:convexity"},
    {CheckId::corr_x_mono, "analytic:corr_x_mono"},
    {CheckId::corr_u_mono, "analytic:corr_u_mono"},
    {CheckId::main_corr_mono, "analytic:main_corr_mono"},
    {CheckId::main_corr_limit, "analytic:main_corr_limit"},
    {CheckId::pv_compare, "analytic:pv_compare"},
    {CheckId::pv_empirical, "analytic:pv_empirical"},
    {CheckId::const_k_digits, "analytic:k_digits"},
    {CheckId::const_k_square, "analytic:k_square"},
    {CheckId::const_kg_bound, "analytic:kg_bound"},
    {CheckId::spot_q2_main, "spotcheck:q2_main"},
    {CheckId::spot_norton, "spotcheck:norton_q1"},
    {CheckId::spot_q2_uncond, "spotcheck:q2_unconditional"},
};

constexpr double kTable1Golden[14] = {11.0421, 8.2760, 7.2906, 6.8121, 6.5496, 6.3964, 6.3033,
                                      6.2452,  6.2077, 6.1829, 6.1659, 6.1536, 6.1445, 6.1374};

struct SplitMix64 {
    uint64_t s;
    explicit SplitMix64(uint64_t seed) : s(seed) {}
    uint64_t next() {
        uint64_t z = (s += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    uint64_t below(uint64_t n) {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
    }
};

real pow10_exact(int k) {
    real v = 1.0L;
    for (int i = 0; i < k; ++i) v *= 10.0L;
    return v;
}

const std::vector<uint32_t>& small_primes() {
    static const std::vector<uint32_t> primes = sieve(100000).primes;
    return primes;
}

// First two primes q != p with chi(q) != 1, via the shared small-prime list.
std::pair<uint64_t, uint64_t> first_two_nonresidues(const CharacterSpec& chi) {
    uint64_t q1 = 0;
    for (uint32_t q : small_primes()) {
        if (q == chi.p()) continue;
        if (!chi(q).is_one()) {
            if (q1 == 0) {
                q1 = q;
            } else {
                return {q1, q};
            }
        }
    }
    const auto qs = least_nonresidues(chi, 2);  // fallback, effectively unreachable at desk scale
    return {qs[0], qs[1]};
}

void absorb(ReportSummary& sum, const AuditRecord& rec, const RecordSink& sink) {
    ++sum.cases;
    if (rec.informational) {
        if (!rec.pass) ++sum.info_failures;
    } else {
        if (!rec.pass) ++sum.violations;
        if (std::isfinite(rec.margin) && rec.margin < sum.min_margin) {
            sum.min_margin = rec.margin;
            sum.worst = rec;
        }
    }
    if (rec.note == "vacuous" || rec.note == "hypothesis_not_met") ++sum.vacuous;
    if (sink) sink(rec);
}

// Runs make_records(i) for i in [0,n) and feeds the records to absorb() in
// index order regardless of worker count.
template <typename F>
void for_each_indexed(size_t n, unsigned jobs, ReportSummary& sum, const RecordSink& sink,
                      F&& make_records) {
    jobs = std::max(1u, jobs);
    if (jobs == 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) {
            auto recs = make_records(i);
            for (const auto& r : recs) absorb(sum, r, sink);
        }
        return;
    }
    const size_t chunk = static_cast<size_t>(jobs) * 8;
    std::vector<std::vector<AuditRecord>> buf;
    for (size_t base = 0; base < n; base += chunk) {
        const size_t count = std::min(chunk, n - base);
        buf.assign(count, {});
        std::atomic<size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        const unsigned workers = static_cast<unsigned>(std::min<size_t>(jobs, count));
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                try {
                    for (size_t k; (k = next.fetch_add(1)) < count;) buf[k] = make_records(base + k);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
        for (const auto& recs : buf)
            for (const auto& r : recs) absorb(sum, r, sink);
    }
}

std::vector<uint64_t> primes_in(uint64_t lo, uint64_t hi) {
    std::vector<uint64_t> out;
    if (hi < 2) return out;
    for (uint64_t p = lo < 2 ? 2 : (is_prime64(lo) ? lo : next_prime(lo)); p <= hi; p = next_prime(p))
        out.push_back(p);
    return out;
}

CharacterSpec character_for(uint64_t p, int64_t chi, uint64_t table_limit) {
    if (chi == kChiQuadratic) return CharacterSpec::quadratic(p);
    if (chi < 0) throw std::domain_error("character_for: missing character index");
    auto table = std::make_shared<const IndexTable>(build_index_table(p, table_limit));
    return CharacterSpec::tabled(std::move(table), static_cast<uint64_t>(chi));
}

int64_t chi_field(const CharacterSpec& chi) {
    return chi.mode() == CharacterSpec::Mode::quadratic ? kChiQuadratic
                                                        : static_cast<int64_t>(chi.index());
}

// ---- per-case record builders (shared by sweeps and run_case) ----

AuditRecord case_table1_row(int exponent, double tol) {
    AuditRecord rec;
    rec.check = CheckId::table1;
    rec.kind = BoundKind::abs;
    rec.x0 = static_cast<double>(pow10_exact(exponent));
    rec.value = static_cast<double>(run_bound_constant(pow10_exact(exponent)));
    rec.bound = kTable1Golden[exponent - 7];
    rec.margin = tol - std::fabs(rec.value - rec.bound);
    rec.pass = rec.margin >= 0;
    return rec;
}

AuditRecord case_table1_monotone() {
    AuditRecord rec;
    rec.check = CheckId::table1_monotone;
    rec.kind = BoundKind::lower;
    double min_step = std::numeric_limits<double>::infinity();
    real prev = 0;
    for (int k = 7; k <= 20; ++k) {
        const real c = run_bound_constant(pow10_exact(k));
        if (k > 7) min_step = std::min(min_step, static_cast<double>(prev - c));
        prev = c;
    }
    rec.value = min_step;
    rec.bound = 0;
    rec.margin = min_step;
    rec.pass = min_step > 0;
    return rec;
}

AuditRecord case_lemma1c(const CharacterSpec& chi, const BurgessEvaluator& ev, uint64_t h,
                         uint64_t r, double tol) {
    AuditRecord rec;
    rec.check = CheckId::lemma1c;
    rec.kind = BoundKind::upper;
    rec.p = chi.p();
    rec.chi = chi_field(chi);
    rec.h = static_cast<int64_t>(h);
    rec.r = static_cast<int64_t>(r);
    const long double s = ev.sum(h, r);
    const real bound = burgess_upper_bound(static_cast<real>(chi.p()), h, r);
    rec.value = static_cast<double>(s);
    rec.bound = static_cast<double>(bound);
    rec.margin = static_cast<double>(bound - s);
    rec.pass = static_cast<real>(s) <= bound + tol * std::max<real>(1.0L, bound);
    return rec;
}

AuditRecord case_hudson_from(uint64_t p, int64_t chi, const HudsonResult& hr) {
    AuditRecord rec;
    rec.check = CheckId::hudson;
    rec.kind = BoundKind::upper;
    rec.p = p;
    rec.chi = chi;
    rec.u = static_cast<int64_t>(hr.q1);
    rec.x0 = static_cast<double>(hr.run);
    rec.value = static_cast<double>(hr.q2);
    rec.bound = static_cast<double>(hr.run * hr.q1 + 1);
    rec.margin = static_cast<double>(hr.margin);
    rec.pass = hr.pass;
    if (hr.vacuous) rec.note = "vacuous";
    return rec;
}

std::pair<AuditRecord, AuditRecord> case_proposition(const CharacterSpec& chi,
                                                     const BurgessEvaluator& ev, uint64_t u,
                                                     uint64_t H, uint64_t h, uint64_t r,
                                                     double tol) {
    const long double s = ev.sum(h, r);
    const auto lb = burgess_lower_bound(chi.p(), h, r, u, H);
    AuditRecord inter;
    inter.check = CheckId::prop_intermediate;
    inter.kind = BoundKind::lower;
    inter.p = chi.p();
    inter.chi = chi_field(chi);
    inter.h = static_cast<int64_t>(h);
    inter.r = static_cast<int64_t>(r);
    inter.u = static_cast<int64_t>(u);
    inter.H = static_cast<int64_t>(H);
    inter.value = static_cast<double>(s);
    inter.bound = static_cast<double>(lb.intermediate);
    inter.margin = static_cast<double>(s - static_cast<long double>(lb.intermediate));
    inter.pass = lb.premises.all() && inter.margin >= -tol;
    if (!lb.premises.all()) inter.note = "premise_violation";
    AuditRecord full = inter;
    full.check = CheckId::prop_full;
    full.bound = static_cast<double>(lb.full);
    full.margin = static_cast<double>(static_cast<real>(s) - lb.full);
    full.pass = lb.premises.all() && full.margin >= -tol;
    return {inter, full};
}

AuditRecord case_theta(double X, uint64_t u) {
    const auto d = coprime_sum_decompose(static_cast<real>(X), u);
    AuditRecord rec;
    rec.check = CheckId::theta_remainder;
    rec.kind = BoundKind::upper;
    rec.u = static_cast<int64_t>(u);
    rec.x0 = X;
    rec.value = static_cast<double>(d.theta);
    rec.bound = 1.0;
    rec.margin = static_cast<double>(1.0L - fabsl(d.theta));
    rec.pass = rec.margin > 0;
    return rec;
}

AuditRecord case_phisum(double X, uint64_t u) {
    const auto b = phi_sum_coprime(static_cast<real>(X), u);
    AuditRecord rec;
    rec.check = CheckId::phisum;
    rec.kind = BoundKind::lower;
    rec.u = static_cast<int64_t>(u);
    rec.x0 = X;
    rec.value = static_cast<double>(b.exact_sum);
    rec.bound = static_cast<double>(b.lower_bound);
    rec.margin = static_cast<double>(static_cast<real>(b.exact_sum) - b.lower_bound);
    rec.pass = rec.margin >= 0;
    return rec;
}

AuditRecord case_convexity(uint64_t h, uint64_t r) {
    const auto res = convexity_check(h, r);
    AuditRecord rec;
    rec.check = CheckId::convexity;
    rec.kind = BoundKind::lower;
    rec.h = static_cast<int64_t>(h);
    rec.r = static_cast<int64_t>(r);
    rec.bound = 0;
    rec.pass = res.ok();
    if (std::isinf(static_cast<double>(res.min_margin))) {
        rec.note = "vacuous";
    } else {
        rec.value = static_cast<double>(res.min_margin);
        rec.margin = rec.value;
    }
    return rec;
}

AuditRecord case_corr_x_mono(double x0, double x1) {
    AuditRecord rec;
    rec.check = CheckId::corr_x_mono;
    rec.kind = BoundKind::lower;
    rec.u = 89;
    rec.x0 = x0;
    rec.x1 = x1;
    rec.value = static_cast<double>(phi_sum_correction(static_cast<real>(x1), 89) -
                                    phi_sum_correction(static_cast<real>(x0), 89));
    rec.bound = 0;
    rec.margin = rec.value;
    rec.pass = rec.value > 0;
    return rec;
}

AuditRecord case_corr_u_mono(double X, uint64_t u_small, uint64_t u_large) {
    AuditRecord rec;
    rec.check = CheckId::corr_u_mono;
    rec.kind = BoundKind::lower;
    rec.u = static_cast<int64_t>(u_small);
    rec.x0 = X;
    rec.x1 = static_cast<double>(u_large);
    rec.value = static_cast<double>(phi_sum_correction(static_cast<real>(X), u_large) -
                                    phi_sum_correction(static_cast<real>(X), u_small));
    rec.bound = 0;
    rec.margin = rec.value;
    rec.pass = rec.value >= 0;
    return rec;
}

AuditRecord case_main_corr_mono(double p0, double p1) {
    AuditRecord rec;
    rec.check = CheckId::main_corr_mono;
    rec.kind = BoundKind::lower;
    rec.x0 = p0;
    rec.x1 = p1;
    const real g0 = main_correction(static_cast<real>(p0));
    const real g1 = main_correction(static_cast<real>(p1));
    rec.value = static_cast<double>(g0 - g1);
    rec.bound = 0;
    rec.margin = rec.value;
    rec.pass = rec.value > 0 && g1 > 0;
    return rec;
}

AuditRecord case_main_corr_limit() {
    AuditRecord rec;
    rec.check = CheckId::main_corr_limit;
    rec.kind = BoundKind::upper;
    rec.x0 = 1e40;
    rec.value = static_cast<double>(main_correction(1e40L));
    rec.bound = 1.01;
    rec.margin = rec.bound - rec.value;
    rec.pass = rec.margin > 0;
    return rec;
}

AuditRecord case_pv_compare(double m) {
    const auto pv = pv_q2_bound(static_cast<real>(m));
    AuditRecord rec;
    rec.check = CheckId::pv_compare;
    rec.kind = BoundKind::upper;
    rec.x0 = m;
    rec.value = static_cast<double>(pv.raw);
    rec.bound = static_cast<double>(pv.simplified);
    rec.margin = static_cast<double>(pv.simplified - pv.raw);
    rec.pass = rec.margin >= 0;
    return rec;
}

AuditRecord case_pv_empirical(const CharacterSpec& chi) {
    const uint64_t p = chi.p();
    std::complex<long double> sum{0.0L, 0.0L};
    long double max_abs = 0.0L;
    for (uint64_t n = 1; n < p; ++n) {
        const auto c = complex_value(chi(static_cast<int64_t>(n)));
        sum += std::complex<long double>(c.real(), c.imag());
        max_abs = std::max(max_abs, sqrtl(sum.real() * sum.real() + sum.imag() * sum.imag()));
    }
    const real rp = sqrtl(static_cast<real>(p));
    const real bound = rp * logl(static_cast<real>(p)) / (3.0L * logl(3.0L)) + 6.5L * rp;
    AuditRecord rec;
    rec.check = CheckId::pv_empirical;
    rec.kind = BoundKind::upper;
    rec.p = p;
    rec.chi = chi_field(chi);
    rec.value = static_cast<double>(max_abs);
    rec.bound = static_cast<double>(bound);
    rec.margin = static_cast<double>(bound - max_abs);
    rec.pass = rec.margin >= 0;
    rec.informational = true;  // threshold of validity for small moduli is not asserted
    return rec;
}

AuditRecord case_k_digits() {
    AuditRecord rec;
    rec.check = CheckId::const_k_digits;
    rec.kind = BoundKind::abs;
    rec.value = static_cast<double>(leading_constant());
    rec.bound = 6.0385;
    rec.margin = 5e-5 - std::fabs(rec.value - rec.bound);
    rec.pass = rec.margin >= 0;
    return rec;
}

AuditRecord case_k_square() {
    constexpr real kpi = 3.141592653589793238462643383279502884L;
    AuditRecord rec;
    rec.check = CheckId::const_k_square;
    rec.kind = BoundKind::abs;
    const real k = leading_constant();
    rec.value = static_cast<double>(k * k);
    rec.bound = static_cast<double>(kpi * kpi * expl(2.0L) / 2.0L);
    rec.margin = 1e-12 - std::fabs(rec.value - rec.bound);
    rec.pass = rec.margin >= 0;
    return rec;
}

AuditRecord case_kg_bound() {
    AuditRecord rec;
    rec.check = CheckId::const_kg_bound;
    rec.kind = BoundKind::upper;
    rec.value = static_cast<double>(leading_constant() * main_correction(1e7L));
    rec.bound = 12.0;
    rec.margin = rec.bound - rec.value;
    rec.pass = rec.margin > 0;
    return rec;
}

struct SpotSample {
    uint64_t p;
    uint64_t q1, q2;
};

SpotSample spot_sample(uint64_t p) {
    const auto chi = CharacterSpec::quadratic(p);
    const auto [q1, q2] = first_two_nonresidues(chi);
    return {p, q1, q2};
}

AuditRecord case_spot_main(const SpotSample& s, double p0) {
    const real lp = logl(static_cast<real>(s.p));
    const bool hypothesis = static_cast<real>(s.q1) > expl(2.0L) * lp;
    const real bound = run_bound_constant(static_cast<real>(p0)) *
                       powl(static_cast<real>(s.p), 0.25L) * lp;
    AuditRecord rec;
    rec.check = CheckId::spot_q2_main;
    rec.kind = BoundKind::upper;
    rec.p = s.p;
    rec.chi = kChiQuadratic;
    rec.u = static_cast<int64_t>(s.q1);
    rec.x0 = p0;
    rec.value = static_cast<double>(s.q2);
    rec.bound = static_cast<double>(bound);
    rec.margin = static_cast<double>(bound - static_cast<real>(s.q2));
    if (hypothesis) {
        rec.pass = static_cast<real>(s.q2) < bound;
    } else {
        rec.pass = true;
        rec.informational = true;
        rec.note = "hypothesis_not_met";
    }
    return rec;
}

AuditRecord case_spot_norton(const SpotSample& s) {
    AuditRecord rec;
    rec.check = CheckId::spot_norton;
    rec.kind = BoundKind::upper;
    rec.p = s.p;
    rec.chi = kChiQuadratic;
    rec.value = static_cast<double>(s.q1);
    rec.bound = static_cast<double>(norton_bound(static_cast<real>(s.p)));
    rec.margin = rec.bound - rec.value;
    rec.pass = rec.value < rec.bound;
    rec.informational = true;
    return rec;
}

AuditRecord case_spot_uncond(const SpotSample& s) {
    AuditRecord rec;
    rec.check = CheckId::spot_q2_uncond;
    rec.kind = BoundKind::upper;
    rec.p = s.p;
    rec.chi = kChiQuadratic;
    rec.value = static_cast<double>(s.q2);
    rec.bound = static_cast<double>(q2_unconditional_bound(static_cast<real>(s.p)));
    rec.margin = rec.bound - rec.value;
    rec.pass = rec.value < rec.bound;
    rec.informational = true;
    return rec;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

}  // namespace

const char* check_name(CheckId id) {
    for (const auto& e : kCheckNames)
        if (e.id == id) return e.name;
    return "unknown";
}

std::optional<CheckId> check_from_name(std::string_view name) {
    for (const auto& e : kCheckNames)
        if (name == e.name) return e.id;
    return std::nullopt;
}

const char* kind_name(BoundKind k) {
    switch (k) {
        case BoundKind::upper: return "upper";
        case BoundKind::lower: return "lower";
        case BoundKind::abs: return "abs";
    }
    return "unknown";
}

ReportSummary run_table1(std::optional<double> tolerance, const RecordSink& sink) {
    Timer timer;
    const double tol = tolerance.value_or(2e-4);
    ReportSummary sum;
    sum.name = "table1";
    for (int k = 7; k <= 20; ++k) absorb(sum, case_table1_row(k, tol), sink);
    absorb(sum, case_table1_monotone(), sink);
    sum.elapsed_s = timer.seconds();
    return sum;
}

ReportSummary run_sweep_lemma1c(const SweepConfig& cfg, const RecordSink& sink) {
    Timer timer;
    ReportSummary sum;
    sum.name = "lemma1c";
    const double tol = cfg.tolerance.value_or(1e-9);
    const std::vector<uint64_t> h_set =
        cfg.h_set.empty() ? std::vector<uint64_t>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12} : cfg.h_set;
    const std::vector<uint64_t> r_set = cfg.r_set.empty() ? std::vector<uint64_t>{1, 2, 3} : cfg.r_set;
    const auto primes = primes_in(std::max<uint64_t>(cfg.p_min, 5), cfg.p_max);
    for_each_indexed(primes.size(), cfg.jobs, sum, sink, [&](size_t i) {
        const uint64_t p = primes[i];
        std::vector<AuditRecord> recs;
        std::vector<CharacterSpec> chis;
        if (cfg.scope == CharScope::quadratic) {
            chis.push_back(CharacterSpec::quadratic(p));
        } else {
            chis = enumerate_characters(p, cfg.table_limit);
        }
        recs.reserve(chis.size() * h_set.size() * r_set.size());
        for (const auto& chi : chis) {
            const BurgessEvaluator ev(chi, cfg.table_limit);
            for (uint64_t h : h_set)
                for (uint64_t r : r_set) recs.push_back(case_lemma1c(chi, ev, h, r, tol));
        }
        return recs;
    });
    sum.elapsed_s = timer.seconds();
    return sum;
}

ReportSummary run_sweep_hudson(const SweepConfig& cfg, const RecordSink& sink) {
    Timer timer;
    ReportSummary sum;
    sum.name = "hudson";
    const auto primes = primes_in(std::max<uint64_t>(cfg.p_min, 5), cfg.p_max);
    for_each_indexed(primes.size(), cfg.jobs, sum, sink, [&](size_t i) {
        const uint64_t p = primes[i];
        std::vector<AuditRecord> recs;
        if (cfg.scope == CharScope::quadratic) {
            const auto chi = CharacterSpec::quadratic(p);
            recs.push_back(case_hudson_from(p, kChiQuadratic, hudson_check(chi, cfg.table_limit)));
            return recs;
        }
        const auto table = std::make_shared<const IndexTable>(build_index_table(p, cfg.table_limit));
        const auto& ind = table->ind;
        const uint64_t m = p - 1;
        // Equal adjacent values depend only on the character order d:
        // chi(n) = chi(n+1) iff d divides ind[n+1]-ind[n]. Compute the run
        // length once per order instead of once per character.
        std::vector<uint32_t> diff(m, 0);
        for (uint64_t n = 1; n < m; ++n) diff[n] = static_cast<uint32_t>((ind[n + 1] + m - ind[n]) % m);
        std::vector<uint64_t> orders;
        for (uint64_t d = 2; d * d <= m; ++d) {
            if (m % d == 0) {
                orders.push_back(d);
                if (d != m / d) orders.push_back(m / d);
            }
        }
        orders.push_back(m);
        std::sort(orders.begin(), orders.end());
        std::map<uint64_t, uint64_t> run_by_order;
        for (uint64_t d : orders) {
            uint64_t best = 1, cur = 1;
            for (uint64_t n = 1; n < m; ++n) {
                if (diff[n] % d == 0) {
                    ++cur;
                    best = std::max(best, cur);
                } else {
                    cur = 1;
                }
            }
            run_by_order[d] = best;
        }
        recs.reserve(m - 1);
        for (uint64_t c = 1; c <= m - 1; ++c) {
            uint64_t q1 = 0, q2 = 0;
            for (uint32_t q : small_primes()) {
                const uint64_t qm = q % p;
                if (qm == 0) continue;
                if (mul_mod(c, ind[qm], m) != 0) {
                    if (q1 == 0) {
                        q1 = q;
                    } else {
                        q2 = q;
                        break;
                    }
                }
            }
            if (q2 == 0) {
                const auto qs = least_nonresidues(CharacterSpec::tabled(table, c), 2);
                q1 = qs[0];
                q2 = qs[1];
            }
            HudsonResult hr;
            hr.q1 = q1;
            hr.q2 = q2;
            hr.run = run_by_order[m / std::gcd(c, m)];
            hr.margin = static_cast<int64_t>(hr.run * hr.q1 + 1) - static_cast<int64_t>(hr.q2);
            hr.vacuous = (q1 == 2 && q2 == 3);
            hr.pass = hr.vacuous || hr.margin >= 0;
            recs.push_back(case_hudson_from(p, static_cast<int64_t>(c), hr));
        }
        return recs;
    });
    sum.elapsed_s = timer.seconds();
    return sum;
}

ReportSummary run_sweep_proposition(const SweepConfig& cfg, const RecordSink& sink) {
    Timer timer;
    ReportSummary sum;
    sum.name = "proposition";
    const double tol = cfg.tolerance.value_or(1e-6);
    const std::vector<uint64_t> r_set = cfg.r_set.empty() ? std::vector<uint64_t>{1, 2} : cfg.r_set;
    const auto instances =
        find_burgess_instances(cfg.p_max, cfg.scope, std::max<uint64_t>(cfg.p_min, 5), cfg.table_limit);
    sum.stats["instances"] = static_cast<double>(instances.size());
    // Group consecutive instances sharing a character so the evaluator is
    // built once per character.
    struct Group {
        size_t begin, end;
    };
    std::vector<Group> groups;
    for (size_t i = 0; i < instances.size();) {
        size_t j = i + 1;
        while (j < instances.size() && instances[j].chi.p() == instances[i].chi.p() &&
               instances[j].chi.id() == instances[i].chi.id())
            ++j;
        groups.push_back({i, j});
        i = j;
    }
    for_each_indexed(groups.size(), cfg.jobs, sum, sink, [&](size_t gi) {
        std::vector<AuditRecord> recs;
        const auto& g = groups[gi];
        const BurgessEvaluator ev(instances[g.begin].chi, cfg.table_limit);
        for (size_t k = g.begin; k < g.end; ++k) {
            const auto& inst = instances[k];
            for (uint64_t r : r_set) {
                auto [inter, full] = case_proposition(inst.chi, ev, inst.u, inst.H, inst.h, r, tol);
                recs.push_back(std::move(inter));
                recs.push_back(std::move(full));
            }
        }
        return recs;
    });
    sum.elapsed_s = timer.seconds();
    return sum;
}

ReportSummary run_sweep_analytic(const SweepConfig& cfg, const RecordSink& sink) {
    Timer timer;
    ReportSummary sum;
    sum.name = "analytic";
    absorb(sum, case_k_digits(), sink);
    absorb(sum, case_k_square(), sink);
    absorb(sum, case_kg_bound(), sink);

    // Remainder and phi-sum bounds on one seeded (X, u) grid.
    {
        SplitMix64 rng(cfg.seed);
        const auto& primes = small_primes();
        std::vector<uint64_t> us;
        for (uint32_t q : primes) {
            if (q > 97) break;
            us.push_back(q);
        }
        for (uint64_t i = 0; i < cfg.grid_pairs; ++i) {
            const double t = rng.unit();
            const double X = std::exp(std::log(1.5) + t * (std::log(1e4) - std::log(1.5)));
            const uint64_t u = us[rng.below(us.size())];
            absorb(sum, case_theta(X, u), sink);
            absorb(sum, case_phisum(X, u), sink);
        }
    }

    for (uint64_t h = 1; h <= cfg.convexity_h_max; ++h)
        for (uint64_t r = 1; r <= cfg.convexity_r_max; ++r) absorb(sum, case_convexity(h, r), sink);

    // phi_sum_correction increasing in X on [14, 10^6].
    {
        const uint64_t n = std::max<uint64_t>(cfg.grid_points, 2);
        double prev = 14.0;
        for (uint64_t i = 1; i <= n; ++i) {
            const double x = 14.0 * std::pow(1e6 / 14.0, static_cast<double>(i) / static_cast<double>(n));
            absorb(sum, case_corr_x_mono(prev, x), sink);
            prev = x;
        }
    }

    // phi_sum_correction nondecreasing in u at fixed X.
    {
        const auto& primes = small_primes();
        std::vector<uint64_t> us;
        for (uint32_t q : primes) {
            if (q > 101) break;
            us.push_back(q);
        }
        for (uint64_t j = 0; j < 200; ++j) {
            const double X = 2.0 * std::pow(5e5, static_cast<double>(j) / 199.0);
            for (size_t k = 0; k + 1 < us.size(); ++k)
                absorb(sum, case_corr_u_mono(X, us[k], us[k + 1]), sink);
        }
    }

    // main_correction decreasing and positive on a 100-point log grid.
    {
        double prev = 1e7;
        for (int i = 1; i < 100; ++i) {
            const double p = 1e7 * std::pow(1e13, static_cast<double>(i) / 99.0);
            absorb(sum, case_main_corr_mono(prev, p), sink);
            prev = p;
        }
        absorb(sum, case_main_corr_limit(), sink);
    }

    for (int i = 0; i < 200; ++i) {
        const double m = 1e15 * std::pow(1e25, static_cast<double>(i) / 199.0);
        absorb(sum, case_pv_compare(m), sink);
    }

    if (cfg.pv_empirical_limit >= 5) {
        for (uint64_t p : primes_in(5, cfg.pv_empirical_limit)) {
            for (const auto& chi : enumerate_characters(p, cfg.table_limit))
                absorb(sum, case_pv_empirical(chi), sink);
        }
    }
    sum.elapsed_s = timer.seconds();
    return sum;
}

ReportSummary run_spotcheck_quadratic(const SpotcheckConfig& cfg, const RecordSink& sink) {
    Timer timer;
    ReportSummary sum;
    sum.name = "spotcheck";
    if (cfg.p_min < 5 || cfg.p_min > cfg.p_max)
        throw std::domain_error("spotcheck: bad sampling range");
    SplitMix64 rng(cfg.seed);
    const uint64_t span = cfg.p_max - cfg.p_min + 1;
    uint64_t found = 0;
    uint64_t hypothesis_met = 0;
    for (uint64_t iter = 0; found < cfg.samples && iter < 100'000'000; ++iter) {
        uint64_t x = cfg.p_min + rng.below(span);
        x |= 1;
        if (x > cfg.p_max || !is_prime64(x)) continue;
        ++found;
        const auto s = spot_sample(x);
        const auto main_rec = case_spot_main(s, cfg.p0);
        if (!main_rec.informational) ++hypothesis_met;
        absorb(sum, main_rec, sink);
        absorb(sum, case_spot_norton(s), sink);
        absorb(sum, case_spot_uncond(s), sink);
    }
    sum.stats["samples"] = static_cast<double>(found);
    sum.stats["hypothesis_met"] = static_cast<double>(hypothesis_met);
    sum.elapsed_s = timer.seconds();
    return sum;
}

int exit_code(const ReportSummary& s) { return s.violations > 0 ? 1 : 0; }

namespace {

void append_double(std::string& out, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

void append_json_number(std::string& out, double v) {
    if (!std::isfinite(v)) {
        out += "null";
        return;
    }
    if (v == 0.0) v = 0.0;  // normalize -0
    append_double(out, v);
}

}  // namespace

void write_jsonl(std::ostream& os, const AuditRecord& rec, bool timing) {
    std::string line;
    line.reserve(256);
    line += "{\"check\":\"";
    line += check_name(rec.check);
    line += "\",\"kind\":\"";
    line += kind_name(rec.kind);
    line += "\",\"p\":";
    if (rec.p == 0) {
        line += "null";
    } else {
        line += std::to_string(rec.p);
    }
    line += ",\"chi\":";
    if (rec.chi == kChiNone) {
        line += "null";
    } else if (rec.chi == kChiQuadratic) {
        line += "\"quadratic\"";
    } else {
        line += "\"" + std::to_string(rec.chi) + "\"";
    }
    const auto int_field = [&line](const char* name, int64_t v) {
        line += ",\"";
        line += name;
        line += "\":";
        line += v < 0 ? "null" : std::to_string(v);
    };
    int_field("h", rec.h);
    int_field("r", rec.r);
    int_field("u", rec.u);
    int_field("H", rec.H);
    const auto dbl_field = [&line](const char* name, double v) {
        line += ",\"";
        line += name;
        line += "\":";
        append_json_number(line, v);
    };
    dbl_field("x0", rec.x0);
    dbl_field("x1", rec.x1);
    dbl_field("value", rec.value);
    dbl_field("bound", rec.bound);
    dbl_field("margin", rec.margin);
    line += ",\"pass\":";
    line += rec.pass ? "true" : "false";
    line += ",\"informational\":";
    line += rec.informational ? "true" : "false";
    line += ",\"note\":\"";
    line += rec.note;  // notes are fixed tokens, no escaping needed
    line += "\"";
    if (timing) {
        dbl_field("elapsed_s", rec.elapsed_s);
    }
    line += "}\n";
    os << line;
}

void write_csv_header(std::ostream& os, bool timing) {
    os << "check,kind,p,chi,h,r,u,H,x0,x1,value,bound,margin,pass,informational,note";
    if (timing) os << ",elapsed_s";
    os << "\n";
}

void write_csv_row(std::ostream& os, const AuditRecord& rec, bool timing) {
    std::string line;
    line.reserve(256);
    line += check_name(rec.check);
    line += ',';
    line += kind_name(rec.kind);
    line += ',';
    if (rec.p != 0) line += std::to_string(rec.p);
    line += ',';
    if (rec.chi == kChiQuadratic) {
        line += "quadratic";
    } else if (rec.chi != kChiNone) {
        line += std::to_string(rec.chi);
    }
    const auto int_field = [&line](int64_t v) {
        line += ',';
        if (v >= 0) line += std::to_string(v);
    };
    int_field(rec.h);
    int_field(rec.r);
    int_field(rec.u);
    int_field(rec.H);
    const auto dbl_field = [&line](double v) {
        line += ',';
        if (std::isfinite(v)) append_double(line, v == 0.0 ? 0.0 : v);
    };
    dbl_field(rec.x0);
    dbl_field(rec.x1);
    dbl_field(rec.value);
    dbl_field(rec.bound);
    dbl_field(rec.margin);
    line += rec.pass ? ",true" : ",false";
    line += rec.informational ? ",true" : ",false";
    line += ',';
    line += rec.note;
    if (timing) dbl_field(rec.elapsed_s);
    line += '\n';
    os << line;
}

std::string summary_line(const ReportSummary& s) {
    std::string out = s.name + ": cases=" + std::to_string(s.cases) +
                      " violations=" + std::to_string(s.violations) +
                      " info_failures=" + std::to_string(s.info_failures) +
                      " vacuous=" + std::to_string(s.vacuous);
    if (std::isfinite(s.min_margin)) {
        out += " min_margin=";
        append_double(out, s.min_margin);
        out += " at check=";
        out += check_name(s.worst.check);
        if (s.worst.p) out += " p=" + std::to_string(s.worst.p);
        if (s.worst.chi != kChiNone)
            out += " chi=" + (s.worst.chi == kChiQuadratic ? std::string("quadratic")
                                                           : std::to_string(s.worst.chi));
    }
    for (const auto& [k, v] : s.stats) {
        out += " " + k + "=";
        append_double(out, v);
    }
    out += " elapsed_s=";
    append_double(out, s.elapsed_s);
    return out;
}

AuditRecord run_case(const CaseInputs& in) {
    Timer timer;
    AuditRecord rec;
    switch (in.check) {
        case CheckId::table1: {
            const int k = static_cast<int>(std::llround(std::log10(in.x0)));
            if (!(k >= 7 && k <= 20) || std::fabs(in.x0 - std::pow(10.0, k)) > 1e-3 * in.x0)
                throw std::domain_error("run_case: table1 requires x0 = 10^k, k in [7,20]");
            rec = case_table1_row(k, in.tolerance.value_or(2e-4));
            break;
        }
        case CheckId::table1_monotone:
            rec = case_table1_monotone();
            break;
        case CheckId::lemma1c: {
            const auto chi = character_for(in.p, in.chi, in.table_limit);
            const BurgessEvaluator ev(chi, in.table_limit);
            rec = case_lemma1c(chi, ev, static_cast<uint64_t>(in.h), static_cast<uint64_t>(in.r),
                               in.tolerance.value_or(1e-9));
            break;
        }
        case CheckId::hudson: {
            const auto chi = character_for(in.p, in.chi, in.table_limit);
            rec = case_hudson_from(in.p, in.chi, hudson_check(chi, in.table_limit));
            break;
        }
        case CheckId::prop_intermediate:
        case CheckId::prop_full: {
            const auto chi = character_for(in.p, in.chi, in.table_limit);
            const BurgessEvaluator ev(chi, in.table_limit);
            auto [inter, full] =
                case_proposition(chi, ev, static_cast<uint64_t>(in.u), static_cast<uint64_t>(in.H),
                                 static_cast<uint64_t>(in.h), static_cast<uint64_t>(in.r),
                                 in.tolerance.value_or(1e-6));
            rec = in.check == CheckId::prop_intermediate ? inter : full;
            break;
        }
        case CheckId::theta_remainder:
            rec = case_theta(in.x0, static_cast<uint64_t>(in.u));
            break;
        case CheckId::phisum:
            rec = case_phisum(in.x0, static_cast<uint64_t>(in.u));
            break;
        case CheckId::convexity:
            rec = case_convexity(static_cast<uint64_t>(in.h), static_cast<uint64_t>(in.r));
            break;
        case CheckId::corr_x_mono:
            rec = case_corr_x_mono(in.x0, in.x1);
            break;
        case CheckId::corr_u_mono:
            rec = case_corr_u_mono(in.x0, static_cast<uint64_t>(in.u),
                                   static_cast<uint64_t>(std::llround(in.x1)));
            break;
        case CheckId::main_corr_mono:
            rec = case_main_corr_mono(in.x0, in.x1);
            break;
        case CheckId::main_corr_limit:
            rec = case_main_corr_limit();
            break;
        case CheckId::pv_compare:
            rec = case_pv_compare(in.x0);
            break;
        case CheckId::pv_empirical:
            rec = case_pv_empirical(character_for(in.p, in.chi, in.table_limit));
            break;
        case CheckId::const_k_digits:
            rec = case_k_digits();
            break;
        case CheckId::const_k_square:
            rec = case_k_square();
            break;
        case CheckId::const_kg_bound:
            rec = case_kg_bound();
            break;
        case CheckId::spot_q2_main:
            rec = case_spot_main(spot_sample(in.p), std::isnan(in.x0) ? 1e7 : in.x0);
            break;
        case CheckId::spot_norton:
            rec = case_spot_norton(spot_sample(in.p));
            break;
        case CheckId::spot_q2_uncond:
            rec = case_spot_uncond(spot_sample(in.p));
            break;
    }
    rec.elapsed_s = timer.seconds();
    return rec;
}

}  // namespace nonres
