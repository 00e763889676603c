#pragma once

// Special-function machinery:
//   - the positive root of exp(-t) = t + t^2/2, with a certified bracket
//   - Re of the digamma function on Re z > 0 (recurrence + Stirling series)
//   - the exponential-kernel integral
//       I(z) = -Re int_0^inf 2*eta/(eta^2+z^2) * d eta/(e^{2 pi eta}-1)
//     appearing in the integral representation
//       Re psi(z) = log|z| - Re 1/(2z) + I(z)     (A&S 6.3.21, real part)
//   - the boundary majorant f(x,y) controlling Re psi(z) - log|z| when
//     y^2 > x^2 and |z| < 4, plus the grid sweeps that certify
//     Re psi(z) <= log|z| on Re z >= 1/4.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcrit/util.hpp"

namespace lcrit {

// ---------------------------------------------------------------------------
// Adaptive quadrature
// ---------------------------------------------------------------------------

struct QuadratureSpec {
    double abs_tol = 1e-10;
    int max_depth = 48;       // adaptive bisection depth cap
    double truncation = 0.0;  // cut point for infinite upper limits; 0 = automatic
};

// Tail mass of the Bose kernel: int_T^inf d eta/(e^{2 pi eta}-1)
// <= e^{-2 pi T} / (2 pi (1 - e^{-2 pi T})).
inline double bose_tail_bound(double T) {
    double e = std::exp(-2.0 * kPi * T);
    return e / (2.0 * kPi * (1.0 - e));
}

namespace detail {

template <class F>
double simpson_rec(const F& f, double a, double m, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth, int max_depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || (b - a) < 1e-14 * (std::abs(a) + std::abs(b)))
        return left + right + delta / 15.0;
    if (depth >= max_depth)
        throw std::runtime_error("adaptive Simpson hit the subdivision cap");
    return simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
           simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

} // namespace detail

// Adaptive Simpson on [a, b] with absolute tolerance quad.abs_tol.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureSpec& quad) {
    if (!(b >= a))
        throw std::invalid_argument("integrate: empty or inverted interval");
    if (a == b) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, m, b, fa, fm, fb, whole, quad.abs_tol, 0,
                               quad.max_depth);
}

// ---------------------------------------------------------------------------
// Root of exp(-t) = t + t^2/2
// ---------------------------------------------------------------------------

struct Lambda0Root {
    double value;
    double residual; // exp(-value) - value - value^2/2
    double lo, hi;   // certified bracket, g(lo) > 0 > g(hi)
};

inline double lambda0_defect(double t) { return std::exp(-t) - t - 0.5 * t * t; }

// Bisection on [0,1]; the defect is strictly decreasing there.
inline Lambda0Root solve_lambda0(double tolerance = 1e-13) {
    if (!(tolerance >= 1e-15))
        throw std::invalid_argument("solve_lambda0: tolerance must be >= 1e-15");
    double lo = 0.0, hi = 1.0;
    double target = std::min(tolerance, 1e-13);
    while (hi - lo > target) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (lambda0_defect(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double v = 0.5 * (lo + hi);
    return {v, lambda0_defect(v), lo, hi};
}

// Cached root value; the smallest admissible weight parameter downstream.
inline double lambda0() {
    static const double v = solve_lambda0().value;
    return v;
}

// ---------------------------------------------------------------------------
// Digamma, real part
// ---------------------------------------------------------------------------

// Re psi(z) for Re z > 0. Upward recurrence psi(z+1) = psi(z) + 1/z until
// Re z >= max(16, |Im z|), then the Stirling series through the z^-8 term.
// With the argument in that sector the remainder is below the first omitted
// term, 1/(132 |z|^10) <= 7e-15.
inline double digamma_re(std::complex<double> z) {
    if (!(z.real() > 0.0))
        throw std::domain_error("digamma_re requires Re z > 0");
    std::complex<double> shift(0.0, 0.0);
    double threshold = std::max(16.0, std::abs(z.imag()));
    while (z.real() < threshold) {
        shift += 1.0 / z;
        z += 1.0;
    }
    std::complex<double> w2 = 1.0 / (z * z);
    std::complex<double> series = w2 * (1.0 / 12.0 + w2 * (-1.0 / 120.0 + w2 * (1.0 / 252.0 + w2 * (-1.0 / 240.0))));
    std::complex<double> psi = std::log(z) - 0.5 / z - series - shift;
    return psi.real();
}

// ---------------------------------------------------------------------------
// The kernel integral I(z) and the boundary majorant f(x,y)
// ---------------------------------------------------------------------------

namespace detail {

// 2*eta / (e^{2 pi eta} - 1), continuous at 0 with value 1/pi.
inline double bose_kernel(double eta) {
    if (eta == 0.0) return 1.0 / kPi;
    return 2.0 * eta / std::expm1(2.0 * kPi * eta);
}

// min over eta >= 0 of |eta^2 + z^2|.
inline double min_abs_eta2_plus_z2(std::complex<double> z) {
    double x = z.real(), y = z.imag();
    if (y * y >= x * x) return 2.0 * std::abs(x * y);
    return x * x + y * y;
}

} // namespace detail

// I(z) = -int_0^inf bose_kernel(eta) * Re(1/(eta^2+z^2)) d eta, Re z >= 1/4.
inline double digamma_tail_integral(std::complex<double> z, const QuadratureSpec& quad = {}) {
    if (!(z.real() >= 0.25))
        throw std::domain_error("digamma_tail_integral requires Re z >= 1/4");
    if (detail::min_abs_eta2_plus_z2(z) < 1e-12)
        throw std::domain_error("digamma_tail_integral: integrand nearly singular");
    double x = z.real(), y = z.imag();
    double az = std::abs(z);
    double T = quad.truncation;
    if (T <= 0.0) {
        // |2 eta / (eta^2+z^2)| <= 8/(3T) for eta >= T >= 2|z|.
        T = std::max(2.0 * az, 1.0);
        while ((8.0 / (3.0 * T)) * bose_tail_bound(T) > 0.5 * quad.abs_tol) T += 0.5;
    }
    auto integrand = [x, y](double eta) {
        double u = eta * eta + x * x - y * y;
        double denom = u * u + 4.0 * x * x * y * y;
        return detail::bose_kernel(eta) * (u / denom);
    };
    QuadratureSpec inner = quad;
    inner.abs_tol = 0.5 * quad.abs_tol;
    return -integrate(integrand, 0.0, T, inner);
}

// f(x,y) = -x/(2(x^2+y^2))
//          - int_0^{sqrt(y^2-x^2)} bose_kernel(eta) * (eta^2+x^2-y^2) /
//            ((eta^2+x^2-y^2)^2 + 4 x^2 y^2) d eta,
// an upper bound for Re psi(z) - log|z| in the region y > x >= 1/4. The
// integrand is the nonpositive head of the I(z) kernel, so f >= the true
// margin there.
inline double digamma_margin_bound(double x, double y, const QuadratureSpec& quad = {}) {
    if (!(x >= 0.25))
        throw std::domain_error("digamma_margin_bound requires x >= 1/4");
    if (!(y > x))
        throw std::domain_error("digamma_margin_bound requires y > x");
    double upper = std::sqrt(y * y - x * x);
    auto integrand = [x, y](double eta) {
        double u = eta * eta + x * x - y * y;
        double denom = u * u + 4.0 * x * x * y * y;
        return detail::bose_kernel(eta) * (u / denom);
    };
    return -x / (2.0 * (x * x + y * y)) - integrate(integrand, 0.0, upper, quad);
}

// ---------------------------------------------------------------------------
// Verification sweeps
// ---------------------------------------------------------------------------

struct SweepClaim {
    std::string name;
    std::string grid;
    double worst_margin = 0.0;
    double where_re = 0.0; // for the f sweep: (x, y); for psi: Re z, Im z
    double where_im = 0.0;
    bool passed = false;
};

struct AppendixReport {
    std::vector<SweepClaim> claims;
    bool passed = false;
};

// Sweeps (a) f(1/4, y) <= 0 for y in [1/4+step, 4] and (b) Re psi(z) <= log|z|
// on a grid over Re z in [1/4, 8], |Im z| <= 8. Margins are "value that must
// be <= 0"; worst = maximum.
inline AppendixReport verify_appendix(double grid_step, const QuadratureSpec& quad = {},
                                      int psi_grid_per_axis = 100) {
    if (!(grid_step > 0 && grid_step <= 1e-2))
        throw std::invalid_argument("verify_appendix: grid_step must be in (0, 1e-2]");
    AppendixReport report;

    SweepClaim fsweep;
    fsweep.name = "f(1/4, y) <= 0";
    fsweep.grid = "y in [0.25 + step, 4], step " + std::to_string(grid_step);
    fsweep.worst_margin = -1e300;
    const double x0 = 0.25;
    long steps = std::lround((4.0 - x0) / grid_step);
    for (long i = 1; i <= steps; ++i) {
        double y = x0 + static_cast<double>(i) * grid_step;
        if (y > 4.0) break;
        double m = digamma_margin_bound(x0, y, quad);
        if (m > fsweep.worst_margin) {
            fsweep.worst_margin = m;
            fsweep.where_re = x0;
            fsweep.where_im = y;
        }
    }
    fsweep.passed = fsweep.worst_margin <= 0.0;
    report.claims.push_back(fsweep);

    SweepClaim psweep;
    psweep.name = "Re psi(z) <= log|z|";
    psweep.grid = "Re z in [0.25, 8] x Im z in [-8, 8], " +
                  std::to_string(psi_grid_per_axis) + "x" +
                  std::to_string(psi_grid_per_axis) + " grid";
    psweep.worst_margin = -1e300;
    int n = psi_grid_per_axis;
    for (int i = 0; i < n; ++i) {
        double re = 0.25 + (8.0 - 0.25) * static_cast<double>(i) / (n - 1);
        for (int j = 0; j < n; ++j) {
            double im = -8.0 + 16.0 * static_cast<double>(j) / (n - 1);
            std::complex<double> z(re, im);
            double m = digamma_re(z) - std::log(std::abs(z));
            if (m > psweep.worst_margin) {
                psweep.worst_margin = m;
                psweep.where_re = re;
                psweep.where_im = im;
            }
        }
    }
    psweep.passed = psweep.worst_margin <= 0.0;
    report.claims.push_back(psweep);

    report.passed = fsweep.passed && psweep.passed;
    return report;
}

} // namespace lcrit
