#pragma once

// The arithmetic inputs for the ternary-form application: the real character
// chi attached to an eligible N, elliptic-curve coefficient tables (CSV or
// point counting), normalized prime-power coefficients for degree-2 Euler
// factors, the upper bound on log L_E(1), the lower bound on log L(1,chi),
// their combination against the representation thresholds, and the
// class-number reference evaluation of L(1,chi).

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "lcrit/arith.hpp"
#include "lcrit/bounds.hpp"
#include "lcrit/ternary.hpp"
#include "lcrit/util.hpp"

#include "json.hpp"

namespace lcrit {

enum class TernaryFamily { ramanujan, kaplansky };

inline const char* family_name(TernaryFamily f) {
    return f == TernaryFamily::ramanujan ? "ramanujan" : "kaplansky";
}

// ---------------------------------------------------------------------------
// Characters
// ---------------------------------------------------------------------------

struct QuadraticCharacter {
    int64_t disc;
    int operator()(uint64_t n) const { return kronecker(disc, static_cast<int64_t>(n)); }
};

// Discriminant of the twisting character: -40N for x^2+y^2+10z^2;
// -28N when (N,7)=1 and -4N/7 when 7|N for the Kaplansky pair.
inline QuadraticCharacter chi_for(TernaryFamily family, uint64_t N) {
    if (N == 0) throw std::invalid_argument("chi_for: N must be positive");
    if (family == TernaryFamily::ramanujan)
        return {-40 * static_cast<int64_t>(N)};
    if (N % 7 != 0)
        return {-28 * static_cast<int64_t>(N)};
    uint64_t m = N / 7;
    if (m % 7 == 0)
        throw std::invalid_argument("chi_for: 49 | N leaves no valid twist discriminant");
    return {-4 * static_cast<int64_t>(m)};
}

// Conductor of the twisted degree-2 L-function: 1600 N^2, 784 N^2, or 16 N^2/7.
inline double family_conductor(TernaryFamily family, uint64_t N) {
    auto n = static_cast<double>(N);
    if (family == TernaryFamily::ramanujan) return 1600.0 * n * n;
    return (N % 7 != 0) ? 784.0 * n * n : 16.0 * n * n / 7.0;
}

// ---------------------------------------------------------------------------
// Coefficient tables
// ---------------------------------------------------------------------------

struct CoefficientTable {
    std::map<uint32_t, int32_t> ap;
    std::set<uint32_t> bad_primes;
    double base_conductor = 0.0;
    std::string source;

    bool has(uint32_t p) const { return ap.count(p) != 0; }
    bool is_bad(uint32_t p) const { return bad_primes.count(p) != 0; }

    int32_t a(uint32_t p) const {
        auto it = ap.find(p);
        if (it == ap.end())
            throw std::out_of_range("coefficient table is missing p=" + std::to_string(p));
        return it->second;
    }

    double lambda(uint32_t p) const {
        return static_cast<double>(a(p)) / std::sqrt(static_cast<double>(p));
    }

    void require_coverage(uint32_t up_to) const {
        for (uint32_t n = 2; n <= up_to; ++n) {
            bool prime = n >= 2;
            for (uint32_t d = 2; d * d <= n; ++d)
                if (n % d == 0) { prime = false; break; }
            if (prime && !has(n))
                throw std::runtime_error("coefficient table is missing p=" + std::to_string(n) +
                                         " with coverage up to " + std::to_string(up_to) +
                                         " requested");
        }
    }
};

// Normalized power sums s_l = alpha^l + beta^l of the degree-2 Euler factor
// at p, with alpha+beta = a_p/sqrt(p) and alpha*beta = 1 (good) or the single
// root alpha = a_p/sqrt(p) (bad). Newton recursion
// s_l = lambda(p) s_{l-1} - eps_p s_{l-2}.
inline double lambda_prime_power(const CoefficientTable& table, uint32_t p, int l) {
    if (l < 1) throw std::invalid_argument("lambda_prime_power: l must be >= 1");
    double lam = table.lambda(p);
    double eps = table.is_bad(p) ? 0.0 : 1.0;
    double s_prev2 = eps == 1.0 ? 2.0 : 1.0; // s_0
    double s_prev = lam;                     // s_1
    if (l == 1) return s_prev;
    for (int i = 2; i <= l; ++i) {
        double s = lam * s_prev - eps * s_prev2;
        s_prev2 = s_prev;
        s_prev = s;
    }
    return s_prev;
}

// CSV with header "p,a_p", one prime per row, ascending; optional JSON
// sidecar {conductor, bad_primes, source} at <path>.json.
inline CoefficientTable load_coefficients(const std::string& csv_path,
                                          std::optional<std::string> sidecar_path = std::nullopt,
                                          uint32_t require_upto = 600) {
    CoefficientTable table;
    table.source = csv_path;

    std::string side = sidecar_path.value_or(csv_path + ".json");
    if (std::ifstream probe(side); probe) {
        nlohmann::json meta;
        try {
            probe >> meta;
        } catch (const std::exception& e) {
            throw std::runtime_error("bad sidecar JSON " + side + ": " + e.what());
        }
        if (meta.contains("conductor")) table.base_conductor = meta["conductor"].get<double>();
        if (meta.contains("source")) table.source = meta["source"].get<std::string>();
        if (meta.contains("bad_primes")) {
            for (const auto& v : meta["bad_primes"]) table.bad_primes.insert(v.get<uint32_t>());
        } else if (table.base_conductor >= 2) {
            auto q = static_cast<uint64_t>(table.base_conductor);
            for (uint64_t p = 2; p * p <= q; ++p)
                if (q % p == 0) {
                    table.bad_primes.insert(static_cast<uint32_t>(p));
                    while (q % p == 0) q /= p;
                }
            if (q > 1) table.bad_primes.insert(static_cast<uint32_t>(q));
        }
    } else if (sidecar_path) {
        throw std::runtime_error("sidecar not found: " + side);
    }

    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open coefficient CSV: " + csv_path);
    std::string line;
    std::size_t row = 0;
    uint32_t last_p = 0;
    while (std::getline(in, line)) {
        ++row;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        if (row == 1) {
            std::string h = line;
            h.erase(std::remove_if(h.begin(), h.end(), [](char c) { return c == ' '; }), h.end());
            if (h != "p,a_p")
                throw std::runtime_error("row 1: expected header \"p,a_p\", got \"" + line + "\"");
            continue;
        }
        std::istringstream ss(line);
        std::string ps, as;
        if (!std::getline(ss, ps, ',') || !std::getline(ss, as))
            throw std::runtime_error("row " + std::to_string(row) + ": malformed line \"" + line + "\"");
        uint64_t p;
        int64_t a;
        try {
            p = std::stoull(ps);
            a = std::stoll(as);
        } catch (const std::exception&) {
            throw std::runtime_error("row " + std::to_string(row) + ": malformed numbers \"" + line + "\"");
        }
        if (p < 2 || p > (uint64_t(1) << 31))
            throw std::runtime_error("row " + std::to_string(row) + ": p out of range");
        bool prime = true;
        for (uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) { prime = false; break; }
        if (!prime)
            throw std::runtime_error("row " + std::to_string(row) + ": p=" + std::to_string(p) +
                                     " is not prime");
        if (p <= last_p)
            throw std::runtime_error("row " + std::to_string(row) + ": primes must be ascending");
        last_p = static_cast<uint32_t>(p);
        auto pp = static_cast<uint32_t>(p);
        if (table.is_bad(pp)) {
            if (a < -1 || a > 1)
                throw std::runtime_error("row " + std::to_string(row) +
                                         ": bad-prime coefficient must be in {-1,0,1}");
        } else if (a * a > 4 * static_cast<int64_t>(p)) {
            throw std::runtime_error("row " + std::to_string(row) + ": Hasse bound violated at p=" +
                                     std::to_string(p));
        }
        table.ap[pp] = static_cast<int32_t>(a);
    }
    table.require_coverage(require_upto);
    return table;
}

// #E(F_p) - (p+1), with E: y^2 = x^3 + Ax + B, by direct point count.
inline int64_t count_points_ap(int64_t A, int64_t B, uint32_t p) {
    if (p < 3) throw std::invalid_argument("count_points_ap: p must be an odd prime");
    for (uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("count_points_ap: p must be prime");
    auto pm = static_cast<int64_t>(p);
    auto mod = [pm](int64_t v) { return ((v % pm) + pm) % pm; };
    int64_t disc = mod(4 * mod(mod(A * A) * A) + 27 * mod(B * B));
    if (disc == 0)
        throw std::invalid_argument("count_points_ap: curve is singular mod p");
    int64_t sum = 0;
    for (int64_t x = 0; x < pm; ++x) {
        int64_t rhs = mod(mod(x * x * x) + mod(A * x) + B);
        sum += kronecker(rhs, pm);
    }
    return -sum; // a_p = p + 1 - #E(F_p) = -sum chi_p(x^3+Ax+B)
}

// Full table for a user-supplied curve; primes dividing the discriminant are
// marked bad with a_p = 0 (override via CSV + sidecar when the reduction type
// is known).
inline CoefficientTable table_from_curve(int64_t A, int64_t B, uint32_t up_to = 600) {
    CoefficientTable table;
    table.source = "curve y^2 = x^3 + " + std::to_string(A) + "x + " + std::to_string(B);
    int64_t disc = 4 * A * A * A + 27 * B * B;
    if (disc == 0) throw std::invalid_argument("table_from_curve: singular curve");
    for (uint32_t n = 2; n <= up_to; ++n) {
        bool prime = true;
        for (uint32_t d = 2; d * d <= n; ++d)
            if (n % d == 0) { prime = false; break; }
        if (!prime) continue;
        if (n == 2 || std::llabs(disc) % n == 0) {
            table.bad_primes.insert(n);
            table.ap[n] = 0;
        } else {
            table.ap[n] = static_cast<int32_t>(count_points_ap(A, B, n));
        }
    }
    return table;
}

// ---------------------------------------------------------------------------
// Upper bound on log L_E(1) and lower bound on log L(1,chi)
// ---------------------------------------------------------------------------

// Assembly shared by the direct evaluator and the batch scan. charsum is
// Re sum_{n=p^l<=x} s_l chi(n) Lambda(n) / (n^{1/2+lambda/log x} log n)
// * log(x/n)/log x.
inline double upper_bound_from_charsum(double charsum, double q, double x, double lambda) {
    double Lx = std::log(x);
    return charsum + 0.5 * (1.0 + lambda) * (std::log(q) - std::log(2.0 * kPi * kPi)) / Lx +
           2.0 * (lambda * lambda + lambda) / (Lx * Lx) +
           8.0 * std::exp(-lambda) / (std::sqrt(x) * Lx * Lx);
}

inline double a_weight(double y) {
    double Ly = std::log(y);
    return 1.0 / Ly + 2.0 / (std::sqrt(y) * Ly * Ly);
}

inline double b_weight(double y) {
    double Ly = std::log(y);
    return 1.0 / (1.0 - 2.0 / (std::sqrt(y) * Ly) - 2.0 / Ly);
}

// s1 = sum Lambda(n) chi(n) / (n log n) * log(y/n)/log y,
// s2 = sum Lambda(n) chi(n) / n * log(y/n)/log y.
//
// The conductor term is (1/2) log(q/pi), from the Hadamard expansion of an
// odd primitive character (Davenport ch. 12, (17)-(18)). With it, the
// combined degree-2 ratio bound reproduces the display constants 0.147695
// and 0.14158 at (x, y) = (600, 2100); the halved variant (1/4) log(q/pi^2)
// fails the exact check L(1, chi_{-4}) = pi/4.
inline double lower_bound_from_charsums(double s1, double s2, double q, double y) {
    double Ly = std::log(y);
    double t = 0.5 * std::log(q / kPi);
    double ab = a_weight(y) * b_weight(y);
    return s1 + t / Ly - kEulerGamma / (2.0 * Ly) +
           ab * (s2 - t - kPi * kPi / (24.0 * Ly) + 0.5 * kEulerGamma);
}

// Upper bound on log|L_E(1)| for the twist attached to (family, N).
inline double upper_bound_LE1(uint64_t N, TernaryFamily family, const CoefficientTable& table,
                              const SieveTable& sieve, double x = 600.0, double lambda = 0.5) {
    if (x > static_cast<double>(sieve.limit()))
        throw std::out_of_range("upper_bound_LE1: sieve too small");
    table.require_coverage(static_cast<uint32_t>(x));
    QuadraticCharacter chi = chi_for(family, N);
    double q = family_conductor(family, N);
    const double Lx = std::log(x);
    const double sigma0 = 0.5 + lambda / Lx;
    NeumaierSum sum;
    sieve.for_each_prime(2, static_cast<uint64_t>(x), [&](uint64_t p) {
        int cp = chi(p);
        if (cp == 0) return;
        auto p32 = static_cast<uint32_t>(p);
        double lp = std::log(static_cast<double>(p));
        uint64_t n = p;
        int l = 1;
        auto bound = static_cast<uint64_t>(x);
        for (;;) {
            double sl = lambda_prime_power(table, p32, l);
            double chin = (l % 2 == 0) ? 1.0 : static_cast<double>(cp);
            double logn = l * lp;
            sum.add(sl * chin * std::exp(-sigma0 * logn) * (Lx - logn) / (l * Lx));
            if (n > bound / p) break;
            n *= p;
            ++l;
        }
    });
    return upper_bound_from_charsum(sum.value(), q, x, lambda);
}

// Lower bound on log|L(1,chi)| for a real character of conductor q.
inline double lower_bound_log_L1(const QuadraticCharacter& chi, double q, const SieveTable& sieve,
                                 double y = 2100.0) {
    if (!(y >= 2.0)) throw std::invalid_argument("lower_bound_log_L1: y must be >= 2");
    if (y > static_cast<double>(sieve.limit()))
        throw std::out_of_range("lower_bound_log_L1: sieve too small");
    const double Ly = std::log(y);
    NeumaierSum s1, s2;
    sieve.for_each_prime(2, static_cast<uint64_t>(y), [&](uint64_t p) {
        int cp = chi(p);
        if (cp == 0) return;
        double lp = std::log(static_cast<double>(p));
        uint64_t n = p;
        int l = 1;
        auto bound = static_cast<uint64_t>(y);
        for (;;) {
            double chin = (l % 2 == 0) ? 1.0 : static_cast<double>(cp);
            double w = (Ly - l * lp) / Ly;
            s1.add(chin * w / (l * static_cast<double>(n)));
            s2.add(chin * lp * w / static_cast<double>(n));
            if (n > bound / p) break;
            n *= p;
            ++l;
        }
    });
    return lower_bound_from_charsums(s1.value(), s2.value(), q, y);
}

inline double lower_bound_L1chi(uint64_t N, TernaryFamily family, const SieveTable& sieve,
                                double y = 2100.0) {
    QuadraticCharacter chi = chi_for(family, N);
    return lower_bound_log_L1(chi, static_cast<double>(std::llabs(chi.disc)), sieve, y);
}

// Upper bound on log(L_E(1) / L(1,chi)^2).
inline double combined_ratio_bound(uint64_t N, TernaryFamily family, const CoefficientTable& table,
                                   const SieveTable& sieve, double x = 600.0, double y = 2100.0) {
    return upper_bound_LE1(N, family, table, sieve, x) -
           2.0 * lower_bound_L1chi(N, family, sieve, y);
}

// Closed-form pieces of the combined bound at conductor ratio log(q/4pi^2):
// the coefficient 3/(4 log x) - 1/(2 log y) + a(y)b(y)/2 and the constant
// term; at (600, 2100) these are 0.14158 and 0.147695.
inline double section4_log_q_coefficient(double x = 600.0, double y = 2100.0) {
    return 0.75 / std::log(x) - 0.5 / std::log(y) + 0.5 * a_weight(y) * b_weight(y);
}

inline double section4_constant(double x = 600.0, double y = 2100.0) {
    double Lx = std::log(x), Ly = std::log(y);
    double ab = a_weight(y) * b_weight(y);
    return 0.75 * std::log(2.0) / Lx + 1.5 / (Lx * Lx) +
           8.0 * std::exp(-0.5) / (std::sqrt(x) * Lx * Lx) - std::log(4.0) / (2.0 * Ly) +
           kEulerGamma / Ly +
           2.0 * ab * (kPi * kPi / (24.0 * Ly) + 0.25 * std::log(4.0) - 0.5 * kEulerGamma);
}

// ---------------------------------------------------------------------------
// Representation thresholds and the crossover scan
// ---------------------------------------------------------------------------

// The printed Kaplansky threshold carries q_N/4pi^2 where the Ramanujan
// analogue has (q/4pi^2)^{1/4}; both readings are available, fourth-root by
// default.
enum class ThresholdReading { fourth_root, literal };

inline double rhs_threshold(uint64_t N, TernaryFamily family,
                            ThresholdReading reading = ThresholdReading::fourth_root) {
    double q = family_conductor(family, N);
    double ratio = q / (4.0 * kPi * kPi);
    if (family == TernaryFamily::ramanujan)
        return (2.0 / 7.0) * std::pow(ratio, 0.25);
    double c = (N % 7 != 0) ? 34.0 / 101.0 : 41.0 / 101.0;
    double expo = (reading == ThresholdReading::fourth_root) ? 0.25 : 1.0;
    return c * std::pow(ratio, expo);
}

inline double log_rhs_threshold(uint64_t N, TernaryFamily family,
                                ThresholdReading reading = ThresholdReading::fourth_root) {
    return std::log(rhs_threshold(N, family, reading));
}

struct CrossoverSample {
    uint64_t N;
    double lhs_bound;      // combined upper bound on log(L_E(1)/L(1,chi)^2)
    double log_rhs;        // log of the representation threshold
    double margin() const { return lhs_bound - log_rhs; }
    bool failed() const { return lhs_bound < log_rhs; }
};

struct CrossoverReport {
    TernaryFamily family;
    uint64_t lo = 0, hi = 0;
    ThresholdReading reading = ThresholdReading::fourth_root;
    uint64_t eligible_count = 0;
    std::vector<CrossoverSample> samples;  // every eligible N in [lo, hi]
    std::vector<uint64_t> witnesses;       // eligible N where the inequality held
    bool all_failed = false;
};

struct CrossoverOptions {
    double x = 600.0;
    double y = 2100.0;
    ThresholdReading reading = ThresholdReading::fourth_root;
    unsigned workers = 0;
};

namespace detail {

// Per-prime-power scan coefficients, independent of N.
struct ScanTables {
    struct Entry {
        uint32_t prime_index;
        int l;
        double upper_coeff; // s_l * weight for the x-sum (0 if n > x)
        double s1_coeff;    // weights for the two y-sums (0 if n > y)
        double s2_coeff;
    };
    std::vector<uint32_t> primes; // p <= max(x, y)
    std::vector<Entry> entries;

    ScanTables(const CoefficientTable& table, const SieveTable& sieve, double x, double y,
               double lambda) {
        double Lx = std::log(x), Ly = std::log(y);
        double sigma0 = 0.5 + lambda / Lx;
        auto xb = static_cast<uint64_t>(x);
        auto yb = static_cast<uint64_t>(y);
        uint64_t top = std::max(xb, yb);
        sieve.for_each_prime(2, top, [&](uint64_t p) {
            auto idx = static_cast<uint32_t>(primes.size());
            primes.push_back(static_cast<uint32_t>(p));
            double lp = std::log(static_cast<double>(p));
            uint64_t n = p;
            int l = 1;
            for (;;) {
                Entry ent{idx, l, 0.0, 0.0, 0.0};
                if (n <= xb) {
                    double sl = lambda_prime_power(table, static_cast<uint32_t>(p), l);
                    double logn = l * lp;
                    ent.upper_coeff = sl * std::exp(-sigma0 * logn) * (Lx - logn) / (l * Lx);
                }
                if (n <= yb) {
                    double w = (Ly - l * lp) / Ly;
                    ent.s1_coeff = w / (l * static_cast<double>(n));
                    ent.s2_coeff = lp * w / static_cast<double>(n);
                }
                entries.push_back(ent);
                if (n > top / p) break;
                n *= p;
                ++l;
            }
        });
    }
};

} // namespace detail

// Scans eligible N in [lo, hi]: the inequality "ratio >= threshold" fails at N
// when the combined upper bound drops below log(threshold). Reports every
// margin and the witnesses where the inequality still held. The range is cut
// into fixed chunks scanned by a worker pool and merged in chunk order, so
// the report does not depend on the worker count.
inline CrossoverReport crossover_scan(TernaryFamily family, uint64_t lo, uint64_t hi,
                                      const CoefficientTable& table, const SieveTable& sieve,
                                      const CrossoverOptions& opts = {}) {
    if (lo < 1 || hi < lo) throw std::invalid_argument("crossover_scan: bad range");
    if (static_cast<double>(hi) > static_cast<double>(sieve.limit()) * static_cast<double>(sieve.limit()))
        throw std::out_of_range("crossover_scan: sieve too small for squarefree tests");
    table.require_coverage(static_cast<uint32_t>(opts.x));

    const detail::ScanTables tabs(table, sieve, opts.x, opts.y, 0.5);
    const EligibilityRule rule_ram = builtin_rule(TernaryForm::ramanujan());
    const EligibilityRule rule_k1 = builtin_rule(TernaryForm::kaplansky1());
    const EligibilityRule rule_k2 = builtin_rule(TernaryForm::kaplansky2());

    auto eligible = [&](uint64_t N) {
        if (family == TernaryFamily::ramanujan) return is_eligible(rule_ram, N, sieve);
        return is_eligible(rule_k1, N, sieve) || is_eligible(rule_k2, N, sieve);
    };

    auto scan_one = [&](uint64_t N, std::vector<int>& chi_p) -> CrossoverSample {
        QuadraticCharacter chi = chi_for(family, N);
        for (std::size_t i = 0; i < tabs.primes.size(); ++i) chi_p[i] = chi(tabs.primes[i]);
        NeumaierSum u, s1, s2;
        for (const auto& ent : tabs.entries) {
            int cp = chi_p[ent.prime_index];
            if (cp == 0) continue;
            double chin = (ent.l % 2 == 0) ? 1.0 : static_cast<double>(cp);
            if (ent.upper_coeff != 0.0) u.add(chin * ent.upper_coeff);
            if (ent.s1_coeff != 0.0) {
                s1.add(chin * ent.s1_coeff);
                s2.add(chin * ent.s2_coeff);
            }
        }
        double q_e = family_conductor(family, N);
        double q_chi = static_cast<double>(std::llabs(chi.disc));
        double lhs = upper_bound_from_charsum(u.value(), q_e, opts.x, 0.5) -
                     2.0 * lower_bound_from_charsums(s1.value(), s2.value(), q_chi, opts.y);
        return {N, lhs, log_rhs_threshold(N, family, opts.reading)};
    };

    constexpr uint64_t kChunk = 8192;
    const uint64_t n_chunks = (hi - lo) / kChunk + 1;
    std::vector<std::vector<CrossoverSample>> chunk_samples(n_chunks);
    unsigned workers = resolve_workers(opts.workers);
    std::atomic<uint64_t> next{0};
    auto work = [&] {
        std::vector<int> chi_p(tabs.primes.size());
        for (;;) {
            uint64_t c = next.fetch_add(1);
            if (c >= n_chunks) break;
            uint64_t clo = lo + c * kChunk;
            uint64_t chi_hi = std::min(hi, clo + kChunk - 1);
            for (uint64_t N = clo; N <= chi_hi; ++N)
                if (eligible(N)) chunk_samples[c].push_back(scan_one(N, chi_p));
        }
    };
    if (workers <= 1 || n_chunks <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < std::min<uint64_t>(workers, n_chunks); ++i)
            pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    CrossoverReport rep;
    rep.family = family;
    rep.lo = lo;
    rep.hi = hi;
    rep.reading = opts.reading;
    for (auto& chunk : chunk_samples)
        for (const auto& s : chunk) {
            rep.samples.push_back(s);
            if (!s.failed()) rep.witnesses.push_back(s.N);
        }
    rep.eligible_count = rep.samples.size();
    rep.all_failed = rep.eligible_count > 0 && rep.witnesses.empty();
    return rep;
}

// ---------------------------------------------------------------------------
// Reference L(1, chi_d) for negative fundamental discriminants
// ---------------------------------------------------------------------------

inline bool is_fundamental_discriminant(int64_t d) {
    if (d >= 0) return false;
    auto squarefree_small = [](uint64_t n) {
        for (uint64_t p = 2; p * p <= n; ++p)
            if (n % (p * p) == 0) return false;
        return true;
    };
    int64_t r = ((d % 4) + 4) % 4;
    if (r == 1) return squarefree_small(static_cast<uint64_t>(-d));
    if (r == 0) {
        int64_t m = d / 4;
        int64_t mr = ((m % 4) + 4) % 4;
        return (mr == 2 || mr == 3) && squarefree_small(static_cast<uint64_t>(-m));
    }
    return false;
}

// Class number by counting reduced primitive forms (a,b,c), b^2-4ac = d,
// -a < b <= a <= c with b >= 0 when a = c.
inline uint64_t class_number(int64_t d) {
    if (d >= 0 || (((d % 4) + 4) % 4 != 0 && ((d % 4) + 4) % 4 != 1))
        throw std::invalid_argument("class_number: d must be a negative discriminant");
    uint64_t h = 0;
    for (int64_t a = 1; 3 * a * a <= -d; ++a) {
        for (int64_t b = -a + 1; b <= a; ++b) {
            int64_t t = b * b - d;
            if (t % (4 * a) != 0) continue;
            int64_t c = t / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            int64_t g = std::gcd(std::gcd(a, std::abs(b)), c);
            if (g == 1) ++h;
        }
    }
    return h;
}

enum class ReferenceMode { class_number, direct_sum };

// L(1, chi_d) = 2 pi h / (w sqrt(|d|)), w = 6, 4, 2 for d = -3, -4, else;
// or the direct character sum over J full periods with the certified
// remainder |R| <= B/(q(J-1)), B = max partial sum of chi over one period.
inline double reference_L1_chi(int64_t d, ReferenceMode mode = ReferenceMode::class_number,
                               double direct_tol = 5e-7) {
    if (!is_fundamental_discriminant(d))
        throw std::invalid_argument("reference_L1_chi: not a negative fundamental discriminant");
    if (mode == ReferenceMode::class_number) {
        double w = (d == -3) ? 6.0 : (d == -4) ? 4.0 : 2.0;
        return 2.0 * kPi * static_cast<double>(class_number(d)) /
               (w * std::sqrt(static_cast<double>(-d)));
    }
    auto q = static_cast<uint64_t>(-d);
    std::vector<int> chi(q);
    int64_t run = 0, maxabs = 0;
    for (uint64_t r = 0; r < q; ++r) {
        chi[r] = kronecker(d, static_cast<int64_t>(r));
        run += chi[r];
        maxabs = std::max<int64_t>(maxabs, std::llabs(run));
    }
    double B = static_cast<double>(std::max<int64_t>(maxabs, 1));
    auto J = static_cast<uint64_t>(B / (static_cast<double>(q) * direct_tol)) + 2;
    uint64_t M = J * q;
    NeumaierSum sum;
    for (uint64_t n = 1; n <= M; ++n)
        if (chi[n % q] != 0) sum.add(static_cast<double>(chi[n % q]) / static_cast<double>(n));
    return sum.value();
}

} // namespace lcrit
