// Acceptance suite: every top-level claim the toolkit is responsible for,
// one PASS/FAIL line per criterion, executed at the stated tolerances.
// Criteria that depend on an externally supplied coefficient table are
// skipped with an explicit gated-skip status when no table is provided
// (environment variables LCRIT_RAMANUJAN_COEFFS / LCRIT_KAPLANSKY_COEFFS).
//
// The suite reports what the computation actually finds. Two of the quoted
// numerical-experiment claims are false as stated (the psi(t) <= 1.006 t
// sweep and the 3.675 majorant constant below x ~ 2.5e8); those criteria
// print FAIL with the witnesses rather than being weakened.

#include <chrono>
#include <complex>
#include <cstdio>
#include <cstdarg>
#include <cstdlib>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "lcrit/lcrit.hpp"

using namespace lcrit;
using clock_type = std::chrono::steady_clock;

namespace {

int g_failures = 0;
int g_passes = 0;
int g_skips = 0;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

void criterion(int number, bool passed, const std::string& text) {
    std::printf("%s - criterion %2d: %s\n", passed ? "PASS" : "FAIL", number, text.c_str());
    if (passed)
        ++g_passes;
    else
        ++g_failures;
}

void skipped(int number, const std::string& text) {
    std::printf("SKIP - criterion %2d: %s\n", number, text.c_str());
    ++g_skips;
}

void note(const std::string& text) { std::printf("       %s\n", text.c_str()); }

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

} // namespace

// --------------------------------------------------------------------------

static void criterion1_lambda0() {
    auto t0 = clock_type::now();
    Lambda0Root root = solve_lambda0(1e-13);
    double elapsed = seconds_since(t0);
    bool ok = std::abs(root.value - 0.4912) <= 5e-5 && std::abs(root.residual) <= 1e-12 &&
              elapsed < 1e-3;
    criterion(1, ok,
              fmt("lambda0 = %.10f (target 0.4912 +- 5e-5), residual %.2e, %.3f ms",
                  root.value, root.residual, elapsed * 1e3));
}

static void criterion2_psi(const SieveTable& sieve) {
    auto t0 = clock_type::now();
    PsiTable psi(sieve, 100000);
    uint64_t violations = 0, first_t = 0, last_t = 0;
    double worst_ratio = 0.0;
    uint64_t worst_t = 0;
    for (uint64_t t = 2; t <= 100000; ++t) {
        double ratio = psi(static_cast<double>(t)) / static_cast<double>(t);
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst_t = t;
        }
        if (ratio > 1.006) {
            ++violations;
            if (!first_t) first_t = t;
            last_t = t;
        }
    }
    double elapsed = seconds_since(t0);
    bool ok = violations == 0 && elapsed < 1.0;
    criterion(2, ok,
              fmt("psi(t) <= 1.006 t for integer t in [2, 1e5]: %llu violations (%.2f s)",
                  static_cast<unsigned long long>(violations), elapsed));
    if (violations) {
        note(fmt("first violation t = %llu, last t = %llu; max psi(t)/t = %.6f at t = %llu",
                   static_cast<unsigned long long>(first_t),
                   static_cast<unsigned long long>(last_t), worst_ratio,
                   static_cast<unsigned long long>(worst_t)));
    }
}

static void criterion3_sumpart(const SieveTable& big_sieve, double x20) {
    bool all_ok = true;
    auto t0 = clock_type::now();
    for (double x : {1e4, 1e6, 1e8, x20}) {
        double value = mangoldt_majorant_sum(x, 0.5, big_sieve, 0);
        double cap = 3.675 * std::sqrt(x) / (std::log(x) * std::log(x));
        bool ok = value <= cap;
        all_ok = all_ok && ok;
        note(fmt("%s  x = %.6e: sum = %.6f vs 3.675 sqrt(x)/log^2 x = %.6f", ok ? "ok  " : "FAIL",
                   x, value, cap));
    }
    double elapsed = seconds_since(t0);
    criterion(3, all_ok,
              fmt("majorant prime sum <= 3.675 sqrt(x)/log^2 x at x in {1e4, 1e6, 1e8, e^20} "
                  "(%.1f s, slow sieve shared)",
                  elapsed));
}

static void criterion4_integral() {
    auto t0 = clock_type::now();
    double v20 = verify_integral_constant(std::exp(20.0), 1e-8);
    double v25 = verify_integral_constant(std::exp(25.0), 1e-8);
    double v20_tight = verify_integral_constant(std::exp(20.0), 1e-10);
    double elapsed = seconds_since(t0);
    bool ok = v20 <= 5.961 && v25 <= v20 && std::abs(v20 - v20_tight) <= 1e-6 && elapsed < 1.0;
    criterion(4, ok,
              fmt("kernel integral: %.6f <= 5.961 at e^20, %.6f at e^25 (decreasing), "
                  "refinement shift %.2e (%.2f s)",
                  v20, v25, std::abs(v20 - v20_tight), elapsed));
}

static void criterion5_display_constants() {
    double coef = section4_log_q_coefficient(600.0, 2100.0);
    double cons = section4_constant(600.0, 2100.0);
    bool ok = std::abs(coef - 0.14158) <= 5e-6 && std::abs(cons - 0.147695) <= 5e-6;
    criterion(5, ok,
              fmt("combined-bound constants at (x,y) = (600, 2100): coefficient %.8f "
                  "(0.14158 +- 5e-6), constant %.8f (0.147695 +- 5e-6)",
                  coef, cons));
}

static void criterion6_appendix() {
    auto t0 = clock_type::now();
    AppendixReport rep = verify_appendix(1e-3, QuadratureSpec{}, 100);
    double elapsed = seconds_since(t0);
    bool ok = rep.passed && elapsed < 30.0;
    criterion(6, ok, fmt("digamma margin sweeps (%.1f s)", elapsed));
    for (const auto& c : rep.claims)
        note(fmt("%s  %s: worst margin %.3e at (%.3f, %.3f)", c.passed ? "ok  " : "FAIL",
                   c.name.c_str(), c.worst_margin, c.where_re, c.where_im));
}

static void criterion7_corollary(const SieveTable& big_sieve, double x20) {
    auto t0 = clock_type::now();
    LFunctionDescriptor desc;
    desc.degree = 1;
    desc.conductor = 1.0; // superseded by the log override
    desc.gamma_shifts = {std::complex<double>(0.0, 0.0)};
    desc.ramanujan = true;
    desc.log_conductor_override = std::exp(10.0); // x = log^2 C exactly
    const SieveTable* sieve = &big_sieve;
    desc.coefficients = [sieve](uint64_t n) -> std::complex<double> {
        if (n < 2) return {0.0, 0.0};
        if (sieve->is_prime(n)) return {std::log(static_cast<double>(n)), 0.0};
        uint64_t p = smallest_prime_factor(n, *sieve), m = n;
        while (m % p == 0) m /= p;
        if (m != 1) return {0.0, 0.0};
        return {std::log(static_cast<double>(p)), 0.0};
    };
    BoundReport r = theorem_upper_bound(desc, BoundParams{x20, 0.5}, big_sieve, 0);
    double corollary = grh_corollary_bound(std::exp(10.0), 1);
    double elapsed = seconds_since(t0);
    bool ok = r.total <= corollary;
    criterion(7, ok,
              fmt("theorem bound at x = log^2 C (e^20) with the Lambda majorant: %.4f <= "
                  "corollary %.4f (%.1f s)",
                  r.total, corollary, elapsed));
    note(fmt("terms: prime %.4f + conductor %.4f + degree %.6f + tail %.2e", r.prime_sum_term,
               r.conductor_term, r.degree_term, r.tail_term));
}

static void criterion8_ternary(const SieveTable& sieve) {
    auto t0 = clock_type::now();
    const uint64_t limit = 1000000;
    bool all_ok = true;
    for (const TernaryForm& q :
         {TernaryForm::ramanujan(), TernaryForm::kaplansky1(), TernaryForm::kaplansky2()}) {
        EligibilityRule rule = builtin_rule(q);
        auto ex_a = exception_set(representable_bitmap_nested(q, limit), limit, rule, sieve);
        auto ex_b = exception_set(representable_bitmap_sumset(q, limit), limit, rule, sieve);
        bool agree = ex_a == ex_b;
        all_ok = all_ok && agree;
        std::string line = fmt("%s  %s: %zu exceptions, enumerators %s", agree ? "ok  " : "FAIL",
                               q.name.c_str(), ex_a.size(), agree ? "agree" : "DISAGREE");
        if (q.name == "ramanujan") {
            bool finite_small = !ex_a.empty() && ex_a.back() < 3000;
            all_ok = all_ok && finite_small;
            line += fmt("; max element %llu (< 3000 %s)",
                        static_cast<unsigned long long>(ex_a.empty() ? 0 : ex_a.back()),
                        finite_small ? "ok" : "FAIL");
        }
        note(line);
    }
    double elapsed = seconds_since(t0);
    bool ok = all_ok && elapsed < 120.0;
    criterion(8, ok, fmt("ternary exception sets to 1e6, two independent enumerators (%.1f s)",
                         elapsed));
}

static void criterion9_lower_bound(const SieveTable& sieve) {
    auto t0 = clock_type::now();
    uint64_t checked = 0, failures = 0;
    int64_t first_fail = 0;
    double worst_margin = -1e300;
    for (int64_t d = -3; d >= -10000; --d) {
        if (!is_fundamental_discriminant(d)) continue;
        ++checked;
        QuadraticCharacter chi{d};
        double lower = lower_bound_log_L1(chi, static_cast<double>(-d), sieve, 2100.0);
        double truth = std::log(reference_L1_chi(d, ReferenceMode::class_number));
        double margin = lower - truth; // must be <= 0
        if (margin > worst_margin) worst_margin = margin;
        if (margin > 0) {
            ++failures;
            if (!first_fail) first_fail = d;
        }
    }
    double elapsed = seconds_since(t0);
    bool ok = failures == 0 && elapsed < 60.0;
    criterion(9, ok,
              fmt("lower bound <= log L(1, chi_d) from the reduced-form oracle for all %llu "
                  "fundamental d in [-1e4, -3]: %llu failures, worst margin %.4f (%.1f s)",
                  static_cast<unsigned long long>(checked),
                  static_cast<unsigned long long>(failures), worst_margin, elapsed));
    if (failures) note(fmt("first failing discriminant: %lld", static_cast<long long>(first_fail)));
}

static void criterion10_crossover(const SieveTable& sieve) {
    const char* ram_path = std::getenv("LCRIT_RAMANUJAN_COEFFS");
    const char* kap_path = std::getenv("LCRIT_KAPLANSKY_COEFFS");
    if (!ram_path && !kap_path) {
        skipped(10, "crossover windows (gated: set LCRIT_RAMANUJAN_COEFFS / "
                    "LCRIT_KAPLANSKY_COEFFS to externally sourced p,a_p tables)");
        return;
    }
    bool all_ok = true;
    auto t0 = clock_type::now();
    if (ram_path) {
        CoefficientTable table = load_coefficients(ram_path);
        CrossoverReport r = crossover_scan(TernaryFamily::ramanujan, 30000000, 30100000, table,
                                           sieve);
        all_ok = all_ok && r.all_failed;
        note(fmt("%s  ramanujan window [3e7, 3e7+1e5]: %llu eligible, %zu witnesses",
                   r.all_failed ? "ok  " : "FAIL",
                   static_cast<unsigned long long>(r.eligible_count), r.witnesses.size()));
    } else {
        note("note  ramanujan table not supplied; window not run");
    }
    if (kap_path) {
        CoefficientTable table = load_coefficients(kap_path);
        CrossoverReport r = crossover_scan(TernaryFamily::kaplansky, 200000000, 200100000, table,
                                           sieve);
        all_ok = all_ok && r.all_failed;
        note(fmt("%s  kaplansky window [2e8, 2e8+1e5] (fourth-root reading): %llu eligible, "
                   "%zu witnesses",
                   r.all_failed ? "ok  " : "FAIL",
                   static_cast<unsigned long long>(r.eligible_count), r.witnesses.size()));
    } else {
        note("note  kaplansky table not supplied; window not run");
    }
    criterion(10, all_ok, fmt("crossover windows with supplied tables (%.1f s)",
                              seconds_since(t0)));
}

int main() {
    std::printf("acceptance suite (%s %s)\n", kToolName, kVersion);

    criterion1_lambda0();

    SieveTable small_sieve(1000000);
    criterion2_psi(small_sieve);

    double x20 = std::exp(20.0);
    auto t0 = clock_type::now();
    SieveTable big_sieve(static_cast<uint64_t>(x20) + 1);
    std::printf("       (shared sieve to %.0f built in %.1f s)\n", x20 + 1, seconds_since(t0));
    criterion3_sumpart(big_sieve, x20);
    criterion4_integral();
    criterion5_display_constants();
    criterion6_appendix();
    criterion7_corollary(big_sieve, x20);
    criterion8_ternary(small_sieve);
    criterion9_lower_bound(small_sieve);
    criterion10_crossover(small_sieve);

    std::printf("summary: %d passed, %d failed, %d gated-skipped\n", g_passes, g_failures,
                g_skips);
    return g_failures == 0 ? 0 : 1;
}
