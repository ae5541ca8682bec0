#pragma once

// Shared numeric plumbing: compensated accumulation, the fixed pairwise
// reduction tree used by every parallel op, the counter-based RNG, and the
// truncated exponential series that the proxy machinery is built from.

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace zmlab {

using cplx = std::complex<double>;

// Thrown when a work/enumeration budget would be exceeded.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Default cap on count*floor(x) style work in grid evaluations.
inline constexpr double kDefaultWorkBudget = 1e10;
// Default cap on x^k in tuple-enumeration oracles.
inline constexpr double kDefaultEnumBudget = double(1u << 31);
// Running phases are rescaled to unit modulus every this many rotation steps.
inline constexpr int kRenormInterval = 1 << 10;

inline cplx unit_phase(double theta) { return {std::cos(theta), std::sin(theta)}; }

// ---------------------------------------------------------------------------
// Compensated (Kahan) accumulators.
// ---------------------------------------------------------------------------

struct KahanSum {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

struct KahanCplx {
    KahanSum re, im;
    void add(cplx v) {
        re.add(v.real());
        im.add(v.imag());
    }
    cplx value() const { return {re.value(), im.value()}; }
};

// ---------------------------------------------------------------------------
// Fixed pairwise reduction tree. Reducing always pairs neighbours
// (0,1)(2,3)... so the result depends only on the chunk boundaries, never on
// how many workers produced the chunks.
// ---------------------------------------------------------------------------

template <class T, class Combine>
T pairwise_reduce(std::vector<T> items, Combine combine) {
    if (items.empty()) throw std::invalid_argument("pairwise_reduce: empty input");
    while (items.size() > 1) {
        std::size_t half = items.size() / 2;
        for (std::size_t i = 0; i < half; ++i)
            items[i] = combine(items[2 * i], items[2 * i + 1]);
        if (items.size() % 2 == 1) {
            items[half] = items.back();
            items.resize(half + 1);
        } else {
            items.resize(half);
        }
    }
    return items.front();
}

// Runs fn(chunk_index) for chunk_index in [0, n_chunks) on up to `threads`
// workers. Chunk decomposition is the caller's and is independent of the
// worker count, so downstream pairwise reductions are bit-stable.
template <class Fn>
void parallel_chunks(std::size_t n_chunks, int threads, Fn fn) {
    if (threads < 2 || n_chunks < 2) {
        for (std::size_t i = 0; i < n_chunks; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::size_t n_workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n_chunks);
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    for (std::size_t w = 0; w < n_workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n_chunks || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) err = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failed.load()) std::rethrow_exception(err);
}

// ---------------------------------------------------------------------------
// Counter-based RNG: a phase is a pure function of (seed, sample index, key),
// so any single draw is reproducible without generating the others.
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t sample, std::uint64_t key) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ sample);
    return splitmix64(h ^ key);
}

// Uniform in [0, 1), 53 significant bits.
inline double unit_double(std::uint64_t h) { return double(h >> 11) * 0x1.0p-53; }

// Uniform phase in [0, 2*pi).
inline double counter_phase(std::uint64_t seed, std::uint64_t sample, std::uint64_t key) {
    return 2.0 * M_PI * unit_double(counter_hash(seed, sample, key));
}

// ---------------------------------------------------------------------------
// Truncated exponential series S(z, J) = sum_{j<=J} z^j / j!, evaluated by
// Horner from j = J downward. The squares of these are the R_{m,l} blocks.
// ---------------------------------------------------------------------------

inline double truncated_exp_series(double z, long long J) {
    double acc = 1.0;
    for (long long j = J; j >= 1; --j) acc = 1.0 + (z / double(j)) * acc;
    return acc;
}

inline long double truncated_exp_series_l(long double z, long long J) {
    long double acc = 1.0L;
    for (long long j = J; j >= 1; --j) acc = 1.0L + (z / (long double)(j)) * acc;
    return acc;
}

// Shift range of the proxy: integers l with |l| <= floor(ln(y)/2).
inline long long ell_limit(double y) {
    if (y <= 1.0) return 0;
    return static_cast<long long>(std::floor(std::log(y) / 2.0));
}

}  // namespace zmlab
