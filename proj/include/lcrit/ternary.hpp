#pragma once

// Positive definite integral ternary quadratic forms: representation testing,
// representation counts, batch representability bitmaps (two independent
// strategies), and congruence-class eligibility.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcrit/arith.hpp"
#include "lcrit/util.hpp"

namespace lcrit {

// Q(x,y,z) = a x^2 + b y^2 + c z^2 + d yz + e xz + f xy
struct TernaryForm {
    int64_t a, b, c, d, e, f;
    std::string name;

    TernaryForm(int64_t a_, int64_t b_, int64_t c_, int64_t d_, int64_t e_, int64_t f_,
                std::string name_ = "")
        : a(a_), b(b_), c(c_), d(d_), e(e_), f(f_), name(std::move(name_)) {
        // Positive definiteness via leading principal minors of 2*Gram.
        if (!(a > 0 && 4 * a * b - f * f > 0 && det2g() > 0))
            throw std::invalid_argument("ternary form is not positive definite");
    }

    int64_t eval(int64_t x, int64_t y, int64_t z) const {
        return a * x * x + b * y * y + c * z * z + d * y * z + e * x * z + f * x * y;
    }

    // det of the doubled Gram matrix [[2a,f,e],[f,2b,d],[e,d,2c]].
    int64_t det2g() const {
        return 2 * a * (4 * b * c - d * d) - f * (2 * c * f - e * d) + e * (f * d - 2 * b * e);
    }

    static TernaryForm ramanujan() { return TernaryForm(1, 1, 10, 0, 0, 0, "ramanujan"); }
    static TernaryForm kaplansky1() { return TernaryForm(1, 1, 7, 0, 0, 0, "kaplansky1"); }
    static TernaryForm kaplansky2() { return TernaryForm(1, 2, 4, 2, 0, 0, "kaplansky2"); }
};

namespace detail {

// For fixed z, the x-discriminant as a quadratic in y:
//   D_x(y,z) = alpha_neg * y^2 - 2 beta z y - ((e^2-4ac) z^2 + 4 a N) <= 0
// with alpha = 4ab - f^2 > 0, beta = ef - 2ad. The admissible y interval is
// [(beta z - sqrt(D))/alpha, (beta z + sqrt(D))/alpha],
// D(z) = gamma z^2 + 4 a alpha N, gamma = beta^2 + alpha (e^2 - 4ac)
//      = -2a det2G < 0.
struct SliceGeometry {
    int64_t alpha, beta, gamma, e2m4ac;
    explicit SliceGeometry(const TernaryForm& q)
        : alpha(4 * q.a * q.b - q.f * q.f),
          beta(q.e * q.f - 2 * q.a * q.d),
          gamma((q.e * q.f - 2 * q.a * q.d) * (q.e * q.f - 2 * q.a * q.d) +
                (4 * q.a * q.b - q.f * q.f) * (q.e * q.e - 4 * q.a * q.c)),
          e2m4ac(q.e * q.e - 4 * q.a * q.c) {}

    int64_t z_max(const TernaryForm& q, int64_t N) const {
        if (N <= 0) return 0;
        // z^2 <= 4 a alpha N / (-gamma)
        double zb = std::sqrt(4.0 * double(q.a) * double(alpha) * double(N) / double(-gamma));
        auto zm = static_cast<int64_t>(zb) + 2;
        while (zm > 0 && gamma * zm * zm + 4 * q.a * alpha * N < 0) --zm;
        return zm;
    }

    // y range for this z; false if empty.
    bool y_range(const TernaryForm& q, int64_t N, int64_t z, int64_t& ylo, int64_t& yhi) const {
        int64_t D = gamma * z * z + 4 * q.a * alpha * N;
        if (D < 0) return false;
        double sq = std::sqrt(static_cast<double>(D));
        auto lo = static_cast<int64_t>(std::floor((beta * z - sq) / alpha)) - 1;
        auto hi = static_cast<int64_t>(std::ceil((beta * z + sq) / alpha)) + 1;
        auto disc_x = [&](int64_t y) {
            int64_t t = q.e * z + q.f * y;
            return t * t - 4 * q.a * (q.b * y * y + q.c * z * z + q.d * y * z - N);
        };
        while (lo <= hi && disc_x(lo) < 0) ++lo;
        while (hi >= lo && disc_x(hi) < 0) --hi;
        if (lo > hi) return false;
        ylo = lo;
        yhi = hi;
        return true;
    }
};

// x solving a x^2 + (ez+fy) x + (Q(0,y,z) - N) = 0, principal root first.
inline std::optional<int64_t> solve_x(const TernaryForm& q, int64_t N, int64_t y, int64_t z) {
    int64_t lin = q.e * z + q.f * y;
    int64_t disc = lin * lin - 4 * q.a * (q.b * y * y + q.c * z * z + q.d * y * z - N);
    if (disc < 0) return std::nullopt;
    uint64_t s;
    if (!is_perfect_square(static_cast<uint64_t>(disc), s)) return std::nullopt;
    auto r = static_cast<int64_t>(s);
    for (int64_t num : {-lin + r, -lin - r}) {
        if (num % (2 * q.a) == 0) return num / (2 * q.a);
        if (r == 0) break;
    }
    return std::nullopt;
}

} // namespace detail

// Search order: increasing |z|, then increasing |y|, then the principal root
// in x; the first hit is the returned witness.
inline std::optional<std::array<int64_t, 3>> find_representation(const TernaryForm& q, int64_t N) {
    if (N < 0) throw std::invalid_argument("find_representation: N must be >= 0");
    if (N == 0) return std::array<int64_t, 3>{0, 0, 0};
    detail::SliceGeometry geo(q);
    int64_t zmax = geo.z_max(q, N);
    for (int64_t m = 0; m <= zmax; ++m) {
        for (int sz = 0; sz < (m == 0 ? 1 : 2); ++sz) {
            int64_t z = sz == 0 ? m : -m;
            int64_t ylo, yhi;
            if (!geo.y_range(q, N, z, ylo, yhi)) continue;
            int64_t kmax = std::max(std::abs(ylo), std::abs(yhi));
            for (int64_t k = 0; k <= kmax; ++k) {
                for (int sy = 0; sy < (k == 0 ? 1 : 2); ++sy) {
                    int64_t y = sy == 0 ? k : -k;
                    if (y < ylo || y > yhi) continue;
                    if (auto x = detail::solve_x(q, N, y, z))
                        return std::array<int64_t, 3>{*x, y, z};
                }
            }
        }
    }
    return std::nullopt;
}

inline bool represents(const TernaryForm& q, int64_t N) {
    return find_representation(q, N).has_value();
}

// Number of integer triples with Q = N, counting signs and order.
inline uint64_t representation_count(const TernaryForm& q, int64_t N) {
    if (N < 0) throw std::invalid_argument("representation_count: N must be >= 0");
    if (N == 0) return 1;
    detail::SliceGeometry geo(q);
    int64_t zmax = geo.z_max(q, N);
    uint64_t count = 0;
    for (int64_t z = -zmax; z <= zmax; ++z) {
        int64_t ylo, yhi;
        if (!geo.y_range(q, N, z, ylo, yhi)) continue;
        for (int64_t y = ylo; y <= yhi; ++y) {
            int64_t lin = q.e * z + q.f * y;
            int64_t disc = lin * lin - 4 * q.a * (q.b * y * y + q.c * z * z + q.d * y * z - N);
            if (disc < 0) continue;
            uint64_t s;
            if (!is_perfect_square(static_cast<uint64_t>(disc), s)) continue;
            auto r = static_cast<int64_t>(s);
            if ((-lin + r) % (2 * q.a) == 0) ++count;
            if (r != 0 && (-lin - r) % (2 * q.a) == 0) ++count;
        }
    }
    return count;
}

// ---------------------------------------------------------------------------
// Batch representability, two independent strategies
// ---------------------------------------------------------------------------

using Bitmap = std::vector<uint64_t>;

inline bool bitmap_get(const Bitmap& bm, uint64_t i) { return (bm[i >> 6] >> (i & 63)) & 1; }
inline void bitmap_set(Bitmap& bm, uint64_t i) { bm[i >> 6] |= uint64_t(1) << (i & 63); }

namespace detail {

// Sign symmetries that keep Q invariant and cover all orbits:
//   always (x,y,z) -> (-x,-y,-z); plus independent x or y negation when the
//   relevant cross terms vanish.
struct SignSymmetry {
    bool x_independent, y_independent;
    explicit SignSymmetry(const TernaryForm& q)
        : x_independent(q.e == 0 && q.f == 0), y_independent(q.d == 0 && q.f == 0) {}
};

} // namespace detail

// Strategy A: nested z -> y loops with an incremental inner x walk.
inline Bitmap representable_bitmap_nested(const TernaryForm& q, uint64_t limit) {
    Bitmap bm((limit + 64) / 64, 0);
    bitmap_set(bm, 0);
    detail::SliceGeometry geo(q);
    detail::SignSymmetry sym(q);
    int64_t zmax = geo.z_max(q, static_cast<int64_t>(limit));
    for (int64_t z = sym.x_independent ? 0 : -zmax; z <= zmax; ++z) {
        // With x free of cross terms the orbit (x,y,z)->(-x,-y,-z) lets z >= 0.
        int64_t ylo, yhi;
        if (!geo.y_range(q, static_cast<int64_t>(limit), z, ylo, yhi)) continue;
        if (sym.y_independent || (sym.x_independent && z == 0)) ylo = std::max<int64_t>(ylo, 0);
        for (int64_t y = ylo; y <= yhi; ++y) {
            int64_t base = q.b * y * y + q.c * z * z + q.d * y * z;
            int64_t lin = q.e * z + q.f * y;
            if (sym.x_independent) {
                // Q(x) = base + a x^2, x >= 0
                if (base < 0 || base > static_cast<int64_t>(limit)) continue;
                int64_t val = base, x = 0;
                while (val <= static_cast<int64_t>(limit)) {
                    bitmap_set(bm, static_cast<uint64_t>(val));
                    val += q.a * (2 * x + 1);
                    ++x;
                }
            } else {
                // Q(x) = a x^2 + lin x + base over the real root interval.
                double disc = double(lin) * lin - 4.0 * q.a * (double(base) - double(limit));
                if (disc < 0) continue;
                double sq = std::sqrt(disc);
                auto xlo = static_cast<int64_t>(std::floor((-lin - sq) / (2.0 * q.a))) - 1;
                auto xhi = static_cast<int64_t>(std::ceil((-lin + sq) / (2.0 * q.a))) + 1;
                for (int64_t x = xlo; x <= xhi; ++x) {
                    int64_t val = q.a * x * x + lin * x + base;
                    if (val >= 0 && val <= static_cast<int64_t>(limit))
                        bitmap_set(bm, static_cast<uint64_t>(val));
                }
            }
        }
    }
    return bm;
}

// Strategy B: sumset walk. Collect the attainable binary values
// v = b y^2 + c z^2 + d yz into a bitmap, then OR shifted copies v + a x^2.
// Requires the x variable to be cross-term free (e = f = 0).
inline Bitmap representable_bitmap_sumset(const TernaryForm& q, uint64_t limit) {
    if (q.e != 0 || q.f != 0)
        throw std::invalid_argument("sumset strategy requires e = f = 0");
    uint64_t words = (limit + 64) / 64;
    Bitmap binary(words, 0);
    // y,z ranges from b y^2 + c z^2 + d yz <= limit: positive definite binary part.
    auto L = static_cast<int64_t>(limit);
    int64_t det_b = 4 * q.b * q.c - q.d * q.d; // > 0
    auto zmax = static_cast<int64_t>(std::sqrt(4.0 * q.b * double(L) / det_b)) + 1;
    for (int64_t z = -zmax; z <= zmax; ++z) {
        // b y^2 + d z y + (c z^2 - L) <= 0
        double disc = double(q.d) * q.d * z * z - 4.0 * q.b * (double(q.c) * z * z - L);
        if (disc < 0) continue;
        double sq = std::sqrt(disc);
        auto ylo = static_cast<int64_t>(std::floor((-q.d * z - sq) / (2.0 * q.b))) - 1;
        auto yhi = static_cast<int64_t>(std::ceil((-q.d * z + sq) / (2.0 * q.b))) + 1;
        for (int64_t y = ylo; y <= yhi; ++y) {
            int64_t v = q.b * y * y + q.c * z * z + q.d * y * z;
            if (v >= 0 && v <= L) bitmap_set(binary, static_cast<uint64_t>(v));
        }
    }
    Bitmap out(words, 0);
    for (int64_t x = 0;; ++x) {
        int64_t shift = q.a * x * x;
        if (shift > L) break;
        uint64_t ws = static_cast<uint64_t>(shift) >> 6;
        unsigned bs = static_cast<unsigned>(shift & 63);
        for (uint64_t i = 0; i + ws < words; ++i) {
            uint64_t w = binary[i];
            if (!w) continue;
            out[i + ws] |= w << bs;
            if (bs && i + ws + 1 < words) out[i + ws + 1] |= w >> (64 - bs);
        }
    }
    // Mask bits beyond limit.
    unsigned rem = static_cast<unsigned>((limit + 1) % 64);
    if (rem) out[words - 1] &= (uint64_t(1) << rem) - 1;
    return out;
}

// ---------------------------------------------------------------------------
// Eligibility
// ---------------------------------------------------------------------------

// Residues mod M attainable by Q over (Z/M)^3.
inline std::vector<uint8_t> eligible_residues(const TernaryForm& q, uint64_t M) {
    if (M == 0 || M > 4096)
        throw std::invalid_argument("eligible_residues: modulus out of range");
    std::vector<uint8_t> attained(M, 0);
    auto m = static_cast<int64_t>(M);
    for (int64_t x = 0; x < m; ++x)
        for (int64_t y = 0; y < m; ++y)
            for (int64_t z = 0; z < m; ++z)
                attained[static_cast<uint64_t>(((q.eval(x, y, z) % m) + m) % m)] = 1;
    return attained;
}

// Default local modulus: 8 * odd part of 2*det(Gram). The odd part of
// det(2 Gram) is the same quantity, so no division is needed.
inline uint64_t default_eligibility_modulus(const TernaryForm& q) {
    auto v = static_cast<uint64_t>(q.det2g());
    while (v % 2 == 0) v /= 2;
    return 8 * v;
}

struct EligibilityRule {
    uint64_t modulus = 1;
    std::vector<uint8_t> allowed;      // index = residue mod modulus
    bool squarefree_required = true;
    std::vector<uint32_t> coprime_to;  // e.g. {2, 5}
};

inline EligibilityRule eligibility_rule(const TernaryForm& q,
                                        std::vector<uint32_t> coprime_to = {},
                                        uint64_t modulus = 0) {
    EligibilityRule rule;
    rule.modulus = modulus ? modulus : default_eligibility_modulus(q);
    rule.allowed = eligible_residues(q, rule.modulus);
    rule.coprime_to = std::move(coprime_to);
    return rule;
}

inline bool is_eligible(const EligibilityRule& rule, uint64_t N, const SieveTable& sieve) {
    if (N < 1) return false;
    for (uint32_t p : rule.coprime_to)
        if (N % p == 0) return false;
    if (!rule.allowed[N % rule.modulus]) return false;
    if (rule.squarefree_required && !is_squarefree(N, sieve)) return false;
    return true;
}

// Built-in side conditions: odd and coprime to 10 for x^2+y^2+10z^2,
// squarefree only for the Kaplansky forms.
inline EligibilityRule builtin_rule(const TernaryForm& q) {
    if (q.name == "ramanujan") return eligibility_rule(q, {2, 5});
    return eligibility_rule(q);
}

// Eligible N <= limit not represented per the given representability bitmap.
inline std::vector<uint64_t> exception_set(const Bitmap& representable, uint64_t limit,
                                           const EligibilityRule& rule,
                                           const SieveTable& sieve) {
    std::vector<uint64_t> out;
    for (uint64_t N = 1; N <= limit; ++N)
        if (!bitmap_get(representable, N) && is_eligible(rule, N, sieve))
            out.push_back(N);
    return out;
}

} // namespace lcrit
