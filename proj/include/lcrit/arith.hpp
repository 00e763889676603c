#pragma once

// Segmented sieve of Eratosthenes with bit-packed odd flags, the von Mangoldt
// function, Chebyshev psi, the extended Kronecker symbol and squarefree tests.
// Everything downstream (prime-power sums, eligibility scans) sits on top of
// this file.

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcrit/util.hpp"

namespace lcrit {

// Immutable after construction; safe to share across threads.
class SieveTable {
public:
    static constexpr uint64_t kMaxLimit = uint64_t(1) << 34;
    static constexpr std::size_t kDefaultSegment = std::size_t(1) << 20; // odd entries per segment
    static constexpr uint32_t kSmallPrimeCap = 131072; // covers sqrt(n) for n <= 2^34

    explicit SieveTable(uint64_t limit, std::size_t segment_size = kDefaultSegment) {
        if (limit < 2)
            throw std::invalid_argument("sieve limit must be at least 2");
        if (limit > kMaxLimit)
            throw std::invalid_argument("sieve limit exceeds memory cap 2^34");
        if (segment_size == 0) segment_size = kDefaultSegment;
        limit_ = limit;
        build(segment_size);
        collect_small_primes();
    }

    uint64_t limit() const { return limit_; }

    bool is_prime(uint64_t n) const {
        if (n > limit_)
            throw std::out_of_range("primality query beyond sieve limit");
        if (n == 2) return true;
        if (n < 2 || n % 2 == 0) return false;
        uint64_t j = (n - 1) / 2;
        return (bits_[j >> 6] >> (j & 63)) & 1;
    }

    // Number of primes <= up_to.
    uint64_t count_primes(uint64_t up_to) const {
        if (up_to > limit_)
            throw std::out_of_range("prime count beyond sieve limit");
        if (up_to < 2) return 0;
        uint64_t count = 1; // the prime 2
        uint64_t jmax = (up_to >= 3) ? (up_to - 1) / 2 : 0;
        if (up_to < 3) return count;
        uint64_t full_words = (jmax + 1) / 64;
        for (uint64_t w = 0; w < full_words; ++w)
            count += static_cast<uint64_t>(__builtin_popcountll(bits_[w]));
        uint64_t rem = (jmax + 1) % 64;
        if (rem)
            count += static_cast<uint64_t>(
                __builtin_popcountll(bits_[full_words] & ((uint64_t(1) << rem) - 1)));
        return count;
    }

    // Calls fn(p) for every prime p in [lo, hi], ascending.
    template <class Fn>
    void for_each_prime(uint64_t lo, uint64_t hi, Fn&& fn) const {
        if (hi > limit_)
            throw std::out_of_range("prime iteration beyond sieve limit");
        if (lo <= 2 && hi >= 2) fn(uint64_t(2));
        if (hi < 3) return;
        uint64_t start = std::max<uint64_t>(lo, 3);
        if (start > hi) return;
        uint64_t j = (start - 1) / 2;
        uint64_t jmax = (hi - 1) / 2;
        uint64_t w = j >> 6;
        uint64_t word = bits_[w] & ~((j & 63) ? ((uint64_t(1) << (j & 63)) - 1) : 0);
        for (;;) {
            while (word == 0) {
                if (++w > (jmax >> 6)) return;
                word = bits_[w];
            }
            uint64_t bit = static_cast<uint64_t>(__builtin_ctzll(word));
            uint64_t idx = (w << 6) + bit;
            if (idx > jmax) return;
            fn(2 * idx + 1);
            word &= word - 1;
        }
    }

    // Primes up to min(limit, kSmallPrimeCap); enough for trial division of
    // any n <= limit^2 when limit <= 2^34.
    const std::vector<uint32_t>& small_primes() const { return small_primes_; }

    // Cache file: magic "LCRT-SV1", little-endian u64 limit, then bit-packed
    // prime flags for odd integers (bit j <-> 2j+1).
    void save(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open sieve cache for writing: " + path);
        out.write(kMagic, 8);
        unsigned char lim[8];
        for (int i = 0; i < 8; ++i) lim[i] = static_cast<unsigned char>((limit_ >> (8 * i)) & 0xff);
        out.write(reinterpret_cast<const char*>(lim), 8);
        uint64_t n_odd = (limit_ + 1) / 2;
        uint64_t n_bytes = (n_odd + 7) / 8;
        std::vector<unsigned char> buf(n_bytes, 0);
        for (uint64_t byte = 0; byte < n_bytes; ++byte)
            buf[byte] = static_cast<unsigned char>((bits_[byte >> 3] >> (8 * (byte & 7))) & 0xff);
        out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(n_bytes));
        if (!out)
            throw std::runtime_error("sieve cache write failed: " + path);
    }

    static SieveTable load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::runtime_error("cannot open sieve cache: " + path);
        char magic[8];
        in.read(magic, 8);
        if (!in || std::memcmp(magic, kMagic, 8) != 0)
            throw std::runtime_error("bad sieve cache magic: " + path);
        unsigned char lim[8];
        in.read(reinterpret_cast<char*>(lim), 8);
        if (!in)
            throw std::runtime_error("truncated sieve cache: " + path);
        uint64_t limit = 0;
        for (int i = 0; i < 8; ++i) limit |= uint64_t(lim[i]) << (8 * i);
        if (limit < 2 || limit > kMaxLimit)
            throw std::runtime_error("sieve cache limit out of range: " + path);
        SieveTable t(private_tag{});
        t.limit_ = limit;
        uint64_t n_odd = (limit + 1) / 2;
        uint64_t n_bytes = (n_odd + 7) / 8;
        std::vector<unsigned char> buf(n_bytes);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n_bytes));
        if (!in || static_cast<uint64_t>(in.gcount()) != n_bytes)
            throw std::runtime_error("truncated sieve cache: " + path);
        t.bits_.assign((n_odd + 63) / 64, 0);
        for (uint64_t byte = 0; byte < n_bytes; ++byte)
            t.bits_[byte >> 3] |= uint64_t(buf[byte]) << (8 * (byte & 7));
        t.mask_tail();
        t.collect_small_primes();
        return t;
    }

private:
    struct private_tag {};
    explicit SieveTable(private_tag) {}

    void build(std::size_t segment_size) {
        uint64_t n_odd = (limit_ + 1) / 2;
        bits_.assign((n_odd + 63) / 64, 0);

        // Base primes up to sqrt(limit) by a plain sieve.
        uint64_t root = isqrt_u64(limit_);
        std::vector<uint8_t> base(root + 1, 1);
        base[0] = 0;
        if (root >= 1) base[1] = 0;
        for (uint64_t i = 2; i * i <= root; ++i)
            if (base[i])
                for (uint64_t j = i * i; j <= root; j += i) base[j] = 0;
        std::vector<uint64_t> base_primes;
        for (uint64_t i = 3; i <= root; i += 2)
            if (base[i]) base_primes.push_back(i);

        // Mark odd numbers in segments of `segment_size` odd entries.
        std::vector<uint8_t> seg(segment_size);
        for (uint64_t seg_lo_idx = 0; seg_lo_idx < n_odd; seg_lo_idx += segment_size) {
            uint64_t seg_hi_idx = std::min<uint64_t>(seg_lo_idx + segment_size, n_odd);
            uint64_t lo = 2 * seg_lo_idx + 1;            // first odd value in segment
            uint64_t hi = 2 * (seg_hi_idx - 1) + 1;      // last odd value
            std::fill(seg.begin(), seg.begin() + (seg_hi_idx - seg_lo_idx), 1);
            for (uint64_t p : base_primes) {
                uint64_t p2 = p * p;
                if (p2 > hi) break;
                uint64_t start = p2;
                if (start < lo) {
                    uint64_t k = (lo + p - 1) / p;
                    if (k % 2 == 0) ++k; // odd multiples only
                    start = k * p;
                    if (start < p2) start = p2;
                }
                for (uint64_t v = start; v <= hi; v += 2 * p)
                    seg[(v - lo) / 2] = 0;
            }
            if (seg_lo_idx == 0) seg[0] = 0; // 1 is not prime
            for (uint64_t idx = seg_lo_idx; idx < seg_hi_idx; ++idx)
                if (seg[idx - seg_lo_idx])
                    bits_[idx >> 6] |= uint64_t(1) << (idx & 63);
        }
        mask_tail();
    }

    void mask_tail() {
        uint64_t n_odd = (limit_ + 1) / 2;
        uint64_t rem = n_odd % 64;
        if (rem && !bits_.empty())
            bits_.back() &= (uint64_t(1) << rem) - 1;
    }

    void collect_small_primes() {
        small_primes_.clear();
        uint64_t cap = std::min<uint64_t>(limit_, kSmallPrimeCap);
        for_each_prime(2, cap, [&](uint64_t p) { small_primes_.push_back(static_cast<uint32_t>(p)); });
    }

    static constexpr const char kMagic[9] = "LCRT-SV1";

    uint64_t limit_ = 0;
    std::vector<uint64_t> bits_;
    std::vector<uint32_t> small_primes_;
};

inline SieveTable build_sieve(uint64_t limit, std::size_t segment_size = SieveTable::kDefaultSegment) {
    return SieveTable(limit, segment_size);
}

// Smallest prime factor by trial division against the sieve's primes.
// Returns 0 if n <= 1.
inline uint64_t smallest_prime_factor(uint64_t n, const SieveTable& sieve) {
    if (n <= 1) return 0;
    if (n % 2 == 0) return 2;
    for (uint32_t p : sieve.small_primes()) {
        if (p == 2) continue;
        if (uint64_t(p) * p > n) return n;
        if (n % p == 0) return p;
    }
    // Continue beyond the cached primes; only reachable for n > kSmallPrimeCap^2.
    uint64_t p = uint64_t(SieveTable::kSmallPrimeCap) | 1;
    for (; (unsigned __int128)p * p <= n; p += 2) {
        if (p <= sieve.limit() && !sieve.is_prime(p)) continue;
        if (n % p == 0) return p;
    }
    return n;
}

// Lambda(n) = log p if n = p^l (l >= 1), else 0.
inline double von_mangoldt(uint64_t n, const SieveTable& sieve) {
    if (n < 1 || n > sieve.limit())
        throw std::out_of_range("von_mangoldt argument outside sieve range");
    if (n == 1) return 0.0;
    uint64_t p = smallest_prime_factor(n, sieve);
    uint64_t m = n;
    while (m % p == 0) m /= p;
    return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

// psi(t) = sum_{n <= t} Lambda(n), accumulated over prime powers.
inline double chebyshev_psi(double t, const SieveTable& sieve) {
    if (t < 0 || t > static_cast<double>(sieve.limit()))
        throw std::out_of_range("chebyshev_psi argument outside sieve range");
    if (t < 2) return 0.0;
    auto bound = static_cast<uint64_t>(t);
    NeumaierSum sum;
    sieve.for_each_prime(2, bound, [&](uint64_t p) {
        double lp = std::log(static_cast<double>(p));
        uint64_t q = p;
        for (;;) {
            sum.add(lp);
            if (q > bound / p) break;
            q *= p;
            if (q > bound) break;
        }
    });
    return sum.value();
}

// Cumulative psi at integer arguments for dense sweeps; real t floors.
class PsiTable {
public:
    PsiTable(const SieveTable& sieve, uint64_t up_to) : up_to_(up_to) {
        if (up_to > sieve.limit())
            throw std::out_of_range("psi table extends beyond sieve limit");
        std::vector<double> lambda(up_to + 1, 0.0);
        if (up_to >= 2) {
            sieve.for_each_prime(2, up_to, [&](uint64_t p) {
                double lp = std::log(static_cast<double>(p));
                uint64_t q = p;
                for (;;) {
                    lambda[q] = lp;
                    if (q > up_to / p) break;
                    q *= p;
                    if (q > up_to) break;
                }
            });
        }
        psi_.resize(up_to + 1);
        NeumaierSum run;
        for (uint64_t n = 0; n <= up_to; ++n) {
            if (lambda[n] != 0.0) run.add(lambda[n]);
            psi_[n] = run.value();
        }
    }

    uint64_t up_to() const { return up_to_; }

    double operator()(double t) const {
        if (t < 0 || t > static_cast<double>(up_to_))
            throw std::out_of_range("psi query outside table range");
        return psi_[static_cast<uint64_t>(t)];
    }

private:
    uint64_t up_to_;
    std::vector<double> psi_;
};

// Extended Kronecker symbol (a/n), total over all integer pairs:
//   (a/0) = 1 iff a = +-1, else 0
//   (a/2) = 0, +1, -1 for a even, a = +-1 (mod 8), a = +-3 (mod 8)
//   (a/-1) = -1 iff a < 0
// and completely multiplicative in n.
inline int kronecker(int64_t a, int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        if (a < 0) result = -result;
        n = -n;
    }
    if (n % 2 == 0) {
        if (a % 2 == 0) return 0;
        int e = 0;
        while (n % 2 == 0) { n /= 2; ++e; }
        if (e % 2 == 1) {
            int64_t a8 = ((a % 8) + 8) % 8;
            if (a8 == 3 || a8 == 5) result = -result;
        }
    }
    // n odd positive from here; Jacobi symbol is periodic in a mod n.
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            int64_t n8 = n % 8;
            if (n8 == 3 || n8 == 5) result = -result;
        }
        int64_t t = a; a = n; n = t;
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

// True iff no prime square divides n. Valid up to sieve.limit()^2.
inline bool is_squarefree(uint64_t n, const SieveTable& sieve) {
    if (n == 0)
        throw std::invalid_argument("is_squarefree: n must be positive");
    uint64_t lim = sieve.limit();
    if (n / lim > lim)
        throw std::out_of_range("is_squarefree: n exceeds sieve.limit()^2");
    uint64_t m = n;
    if (m % 2 == 0) {
        m /= 2;
        if (m % 2 == 0) return false;
    }
    for (uint32_t p : sieve.small_primes()) {
        if (p == 2) continue;
        if (uint64_t(p) * p > m) return true;
        if (m % p == 0) {
            m /= p;
            if (m % p == 0) return false;
        }
    }
    uint64_t p = uint64_t(SieveTable::kSmallPrimeCap) | 1;
    for (; (unsigned __int128)p * p <= m; p += 2) {
        if (p <= lim && !sieve.is_prime(p)) continue;
        if (m % p == 0) {
            m /= p;
            if (m % p == 0) return false;
        }
    }
    return true;
}

} // namespace lcrit
