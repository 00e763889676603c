#pragma once

// Central-point upper bound machinery for L-functions under GRH:
//
//   log|L(1/2)| <= Re sum_{n<=x} a(n) / (n^{s0} log n) * log(x/n)/log x
//                  + (1+lambda)/2 * log C / log x
//                  + (lambda^2+lambda) d / log^2 x
//                  + 4 d e^{-lambda} / (sqrt(x) log^2 x)        (+ pole term)
//
// with s0 = 1/2 + lambda/log x, valid for log x >= 2 and
// lambda0 <= lambda <= (log x)/2, where a(n) are the Dirichlet coefficients
// of -L'/L and C the analytic conductor. Plus the closed-form corollary
// bound (23d/25) log C / log^2 log C + (3/8) log C / log log C for
// Ramanujan-bounded coefficients, and its specializations to standard
// families.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcrit/arith.hpp"
#include "lcrit/special.hpp"
#include "lcrit/util.hpp"

namespace lcrit {

// ---------------------------------------------------------------------------
// Descriptors and parameters
// ---------------------------------------------------------------------------

// Coefficients a(n) of -L'/L; supported on prime powers.
using CoefficientOracle = std::function<std::complex<double>(uint64_t)>;

struct LFunctionDescriptor {
    int degree = 1;
    double conductor = 1.0; // integer-valued q >= 1
    std::vector<std::complex<double>> gamma_shifts; // size == degree, Re >= 0
    CoefficientOracle coefficients;                 // may be empty (zero oracle)
    bool ramanujan = false;   // asserts |a(n)| <= degree * Lambda(n)
    bool pole_at_one = false; // zeta-like: simple pole at s = 1 (shifted by t)
    // For conductors too large for a double (log log C >= 10 forces
    // C >= e^{e^10}), the log of the analytic conductor can be given directly.
    std::optional<double> log_conductor_override;

    void validate() const {
        if (degree < 1)
            throw std::invalid_argument("descriptor: degree must be >= 1");
        if (!(conductor >= 1.0))
            throw std::invalid_argument("descriptor: conductor must be >= 1");
        if (gamma_shifts.size() != static_cast<std::size_t>(degree))
            throw std::invalid_argument("descriptor: need one gamma shift per degree");
        for (const auto& k : gamma_shifts)
            if (!(k.real() >= 0.0))
                throw std::invalid_argument("descriptor: gamma shifts need Re >= 0");
    }
};

struct BoundParams {
    double x;
    double lambda;

    void validate() const {
        if (!(std::log(x) >= 2.0 - 1e-12))
            throw std::invalid_argument("hypothesis violated: log x >= 2");
        if (!(lambda >= lambda0() - 1e-12))
            throw std::invalid_argument("hypothesis violated: lambda >= lambda0 = 0.4912...");
        if (!(lambda <= 0.5 * std::log(x) + 1e-12))
            throw std::invalid_argument("hypothesis violated: lambda <= (log x)/2");
    }

    double sigma0() const { return 0.5 + lambda / std::log(x); }
};

struct BoundReport {
    double prime_sum_term = 0.0;
    double conductor_term = 0.0;
    double degree_term = 0.0;
    double tail_term = 0.0;
    double pole_term = 0.0;
    double total = 0.0;
    double x = 0.0;
    double lambda = 0.0;
};

// ---------------------------------------------------------------------------
// Analytic conductor
// ---------------------------------------------------------------------------

// C = (q / pi^d) * prod_j |1/4 + k_j/2|
inline double log_analytic_conductor(const LFunctionDescriptor& desc) {
    if (desc.log_conductor_override) return *desc.log_conductor_override;
    desc.validate();
    double lc = std::log(desc.conductor) - desc.degree * std::log(kPi);
    for (const auto& k : desc.gamma_shifts)
        lc += std::log(std::abs(0.25 + 0.5 * k));
    return lc;
}

inline double analytic_conductor(const LFunctionDescriptor& desc) {
    return std::exp(log_analytic_conductor(desc));
}

// Closed forms used by the family corollaries.
inline double dirichlet_analytic_conductor(double q, double t) {
    return q / (2.0 * kPi) * std::sqrt(0.25 + t * t);
}
// Conductor value quoted for weight-k level-q cusp forms,
// (q/pi^2)(k/2 - 1/4)(k/2 + 3/4); satisfies log C <= log(q k^2) for k >= 1.
inline double cuspform_conductor(double q, double k) {
    return q / (kPi * kPi) * (0.5 * k - 0.25) * (0.5 * k + 0.75);
}

// ---------------------------------------------------------------------------
// Prime-power sums
// ---------------------------------------------------------------------------

namespace detail {

// Calls term(n = p^l, p, l, log p) for every prime power n <= x. Work is
// split into fixed blocks over the sieve (a prime's powers belong to the
// block containing the prime), so results do not depend on the worker count.
template <class Term>
double sum_over_prime_powers(const SieveTable& sieve, double x, unsigned workers,
                             const Term& term) {
    if (!(x >= 2.0))
        return 0.0;
    if (x > static_cast<double>(sieve.limit()))
        throw std::out_of_range("prime-power sum needs sieve.limit() >= x");
    const auto bound = static_cast<uint64_t>(x);
    constexpr uint64_t kBlockOdds = uint64_t(1) << 21;
    const uint64_t n_odd = (bound + 1) / 2;
    const std::size_t n_blocks = static_cast<std::size_t>((n_odd + kBlockOdds - 1) / kBlockOdds);

    auto block_sum = [&](std::size_t b) -> double {
        uint64_t lo_idx = static_cast<uint64_t>(b) * kBlockOdds;
        uint64_t hi_idx = std::min<uint64_t>(lo_idx + kBlockOdds, n_odd) - 1;
        uint64_t lo = 2 * lo_idx + 1;
        uint64_t hi = std::min<uint64_t>(2 * hi_idx + 1, bound);
        if (b == 0 && hi < 2) hi = 2; // the even prime lives in block 0
        NeumaierSum s;
        sieve.for_each_prime(b == 0 ? 2 : lo, hi, [&](uint64_t p) {
            double lp = std::log(static_cast<double>(p));
            uint64_t n = p;
            int l = 1;
            for (;;) {
                s.add(term(n, p, l, lp));
                if (n > bound / p) break;
                n *= p;
                ++l;
            }
        });
        return s.value();
    };
    return parallel_block_sum(n_blocks, workers, block_sum);
}

} // namespace detail

// Re sum_{n<=x} a(n) / (n^{s0} log n) * log(x/n)/log x over prime powers.
inline double prime_sum(const LFunctionDescriptor& desc, const BoundParams& params,
                        const SieveTable& sieve, unsigned workers = 0) {
    desc.validate();
    params.validate();
    if (!desc.coefficients) return 0.0;
    const double sigma0 = params.sigma0();
    const double Lx = std::log(params.x);
    const double d = desc.degree;
    const bool check_ramanujan = desc.ramanujan;
    const auto& oracle = desc.coefficients;
    return detail::sum_over_prime_powers(
        sieve, params.x, workers, [&](uint64_t n, uint64_t, int l, double lp) {
            std::complex<double> a = oracle(n);
            if (a == std::complex<double>(0.0, 0.0)) return 0.0;
            if (check_ramanujan) {
                double cap = d * lp + 1e-12;
                if (std::norm(a) > cap * cap)
                    throw std::runtime_error("coefficient oracle violates |a(n)| <= d*Lambda(n)");
            }
            double logn = l * lp;
            return a.real() * std::exp(-sigma0 * logn) * (Lx - logn) / (logn * Lx);
        });
}

// Same weighted sum with a(n) = Lambda(n): the majorant that controls any
// Ramanujan-bounded family.
inline double mangoldt_majorant_sum(double x, double lambda, const SieveTable& sieve,
                                    unsigned workers = 0) {
    if (!(x >= 2.0))
        throw std::invalid_argument("mangoldt_majorant_sum requires x >= 2");
    const double Lx = std::log(x);
    const double sigma0 = 0.5 + lambda / Lx;
    return detail::sum_over_prime_powers(
        sieve, x, workers, [&](uint64_t, uint64_t, int l, double lp) {
            double logn = l * lp;
            return std::exp(-sigma0 * logn) * (Lx - logn) / (l * Lx);
        });
}

// ---------------------------------------------------------------------------
// The quadrature constant behind the majorant-sum estimate
// ---------------------------------------------------------------------------

// int_1^{x/2} log y * y^{-3/2 + 1/(2 log x)} / (1 - log y / log x) dy,
// evaluated after substituting u = log y. Decreasing in x for x > 1e4;
// its value at x = e^20 is just below 5.961.
inline double verify_integral_constant(double x, double abs_tol = 1e-8) {
    if (!(x >= 1e4))
        throw std::invalid_argument("verify_integral_constant requires x >= 1e4 "
                                    "(outside the monotone regime)");
    const double L = std::log(x);
    const double c = -0.5 + 1.0 / (2.0 * L);
    auto f = [L, c](double u) { return u * std::exp(c * u) / (1.0 - u / L); };
    QuadratureSpec quad;
    quad.abs_tol = std::min(abs_tol, 1e-8);
    return integrate(f, 0.0, L - std::log(2.0), quad);
}

// ---------------------------------------------------------------------------
// Pole adjustment for zeta-like descriptors
// ---------------------------------------------------------------------------

// The Hadamard expansion of a pole-at-one L-function carries the two extra
// terms 1/(s-1+it) + 1/(s+it). They enter the bound once integrated over
// sigma in [1/2, sigma0] and once evaluated at sigma0 with weight 1/log x.
inline double pole_adjustment(double t, double x, double lambda) {
    const double Lx = std::log(x);
    const double sigma0 = 0.5 + lambda / Lx;
    auto P = [t](double sigma) {
        return (sigma - 1.0) / ((sigma - 1.0) * (sigma - 1.0) + t * t) +
               sigma / (sigma * sigma + t * t);
    };
    double integral = 0.5 * (std::log((sigma0 - 1.0) * (sigma0 - 1.0) + t * t) -
                             std::log(0.25 + t * t)) +
                      0.5 * (std::log(sigma0 * sigma0 + t * t) - std::log(0.25 + t * t));
    return integral + P(sigma0) / Lx;
}

// ---------------------------------------------------------------------------
// The main bound
// ---------------------------------------------------------------------------

inline BoundReport theorem_upper_bound(const LFunctionDescriptor& desc,
                                       const BoundParams& params, const SieveTable& sieve,
                                       unsigned workers = 0) {
    desc.validate();
    params.validate();
    const double Lx = std::log(params.x);
    const double d = desc.degree;
    BoundReport r;
    r.x = params.x;
    r.lambda = params.lambda;
    r.prime_sum_term = prime_sum(desc, params, sieve, workers);
    r.conductor_term = 0.5 * (1.0 + params.lambda) * log_analytic_conductor(desc) / Lx;
    r.degree_term = (params.lambda * params.lambda + params.lambda) * d / (Lx * Lx);
    r.tail_term = 4.0 * d * std::exp(-params.lambda) / (std::sqrt(params.x) * Lx * Lx);
    if (desc.pole_at_one) {
        double t = desc.gamma_shifts.empty() ? 0.0 : desc.gamma_shifts.front().imag();
        r.pole_term = pole_adjustment(t, params.x, params.lambda);
    }
    NeumaierSum total;
    total.add(r.prime_sum_term);
    total.add(r.conductor_term);
    total.add(r.degree_term);
    total.add(r.tail_term);
    total.add(r.pole_term);
    r.total = total.value();
    return r;
}

// ---------------------------------------------------------------------------
// Corollary bound and families
// ---------------------------------------------------------------------------

// (23d/25) log C / log^2 log C + (3/8) log C / log log C, for log log C >= 10.
// Takes log C, not C: the hypothesis needs C >= e^{e^10}, far beyond any
// IEEE double.
inline double grh_corollary_bound(double log_conductor, int degree) {
    if (degree < 1)
        throw std::invalid_argument("grh_corollary_bound: degree must be >= 1");
    double ll = std::log(log_conductor);
    if (!(ll >= 10.0 - 1e-9))
        throw std::invalid_argument("hypothesis violated: log log C >= 10");
    return (23.0 * degree / 25.0) * log_conductor / (ll * ll) +
           0.375 * log_conductor / ll;
}

enum class Family { dirichlet, cuspform, zeta, dedekind };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::dirichlet: return "dirichlet";
        case Family::cuspform: return "cuspform";
        case Family::zeta: return "zeta";
        case Family::dedekind: return "dedekind";
    }
    return "?";
}

// The family bounds are on |L| itself, so the result is carried in log scale;
// value() overflows to +inf once the bound exceeds ~1.8e308.
struct FamilyBound {
    Family family;
    int degree;
    double log_ctilde;
    double prefactor; // 2.33 for Dedekind, else 1
    double exponent;  // corollary expression at (log_ctilde, degree)
    double log_bound; // exponent + log(prefactor)
    double value() const { return std::exp(log_bound); }
};

inline FamilyBound family_bound(Family family, double log_ctilde, int dedekind_degree = 1) {
    int d;
    double prefactor = 1.0;
    switch (family) {
        case Family::dirichlet: d = 1; break;
        case Family::cuspform: d = 2; break;
        case Family::zeta: d = 1; break;
        case Family::dedekind:
            if (dedekind_degree < 1)
                throw std::invalid_argument("family_bound: dedekind degree must be >= 1");
            d = dedekind_degree;
            prefactor = 2.33;
            break;
        default: throw std::invalid_argument("family_bound: unknown family");
    }
    FamilyBound fb;
    fb.family = family;
    fb.degree = d;
    fb.log_ctilde = log_ctilde;
    fb.prefactor = prefactor;
    fb.exponent = grh_corollary_bound(log_ctilde, d);
    fb.log_bound = fb.exponent + std::log(prefactor);
    return fb;
}

// Natural-parameter conductor proxies C~ feeding the family bound.
inline double dirichlet_log_ctilde(double q, double t) {
    if (!(q >= 1.0)) throw std::invalid_argument("dirichlet: modulus must be >= 1");
    return std::log(q) + std::log(std::abs(t) + 0.5);
}
inline double cuspform_log_ctilde(double q, double k) {
    if (!(q >= 1.0) || !(k >= 1.0))
        throw std::invalid_argument("cuspform: need level >= 1 and weight >= 1");
    return std::log(q) + 2.0 * std::log(k);
}
inline double zeta_log_ctilde(double T) {
    if (!(T > 1.0)) throw std::invalid_argument("zeta: height must exceed 1");
    return std::log(T);
}
inline double dedekind_log_ctilde(double abs_disc) {
    if (!(abs_disc >= 1.0)) throw std::invalid_argument("dedekind: |disc| must be >= 1");
    return std::log(abs_disc);
}

} // namespace lcrit
