#pragma once

// Prime table: ascending prime list plus a smallest-prime-factor table, built
// by a segmented sieve so the working set stays bounded for limits near 1e8.

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "zmlab/common.hpp"

namespace zmlab {

struct PrimeTable {
    std::uint32_t limit = 0;
    std::vector<std::uint32_t> primes;  // all primes <= limit, ascending
    std::vector<std::uint32_t> spf;     // spf[n] = least prime factor, 2 <= n <= limit

    bool is_prime(std::uint32_t n) const { return n >= 2 && spf[n] == n; }
};

inline constexpr std::uint32_t kSieveSegment = 1u << 24;

// Builds the table. `segment` bounds the walked window; the default keeps a
// single pass below 2^24 and segments above it.
inline PrimeTable sieve(std::uint32_t limit, std::uint32_t segment = kSieveSegment) {
    if (limit < 2 || limit > (1u << 31))
        throw std::invalid_argument("sieve: limit must be in [2, 2^31]");
    if (segment < 2) throw std::invalid_argument("sieve: segment must be >= 2");

    PrimeTable t;
    t.limit = limit;
    t.spf.assign(std::size_t(limit) + 1, 0);

    // Base primes up to sqrt(limit), by a plain sieve.
    std::uint32_t root = 1;
    while (std::uint64_t(root + 1) * (root + 1) <= limit) ++root;
    std::vector<char> base(root + 1, 1);
    std::vector<std::uint32_t> base_primes;
    for (std::uint32_t i = 2; i <= root; ++i) {
        if (!base[i]) continue;
        base_primes.push_back(i);
        for (std::uint64_t j = std::uint64_t(i) * i; j <= root; j += i) base[j] = 0;
    }

    t.primes.reserve(std::size_t(limit > 16 ? double(limit) / (std::log(double(limit)) - 1.1) : 8));

    // Walk [2, limit] in segments. Marking base primes in ascending order and
    // only where unset makes spf[] the least factor; whatever stays unmarked
    // in a segment is prime there.
    for (std::uint64_t low = 2; low <= limit; low += segment) {
        std::uint64_t high = std::min<std::uint64_t>(low + segment - 1, limit);
        for (std::uint32_t p : base_primes) {
            std::uint64_t pp = std::uint64_t(p) * p;
            if (pp > high) break;
            std::uint64_t start = std::max<std::uint64_t>(pp, ((low + p - 1) / p) * p);
            for (std::uint64_t j = start; j <= high; j += p)
                if (t.spf[j] == 0) t.spf[j] = p;
        }
        for (std::uint64_t n = low; n <= high; ++n) {
            if (t.spf[n] == 0) {
                t.spf[n] = std::uint32_t(n);
                t.primes.push_back(std::uint32_t(n));
            }
        }
    }
    return t;
}

// Primes p with a < p <= b, half-open exactly as the subdivision uses it.
// b may exceed the limit by a fraction (no integer is lost until limit + 1).
inline std::span<const std::uint32_t> primes_between(const PrimeTable& t, double a, double b) {
    if (b >= double(t.limit) + 1.0)
        throw std::invalid_argument("primes_between: upper bound exceeds table limit");
    if (b <= a || t.primes.empty()) return {};
    auto lo = std::upper_bound(t.primes.begin(), t.primes.end(), a,
                               [](double v, std::uint32_t p) { return v < double(p); });
    auto hi = std::upper_bound(t.primes.begin(), t.primes.end(), b,
                               [](double v, std::uint32_t p) { return v < double(p); });
    return {t.primes.data() + (lo - t.primes.begin()), std::size_t(hi - lo)};
}

}  // namespace zmlab
