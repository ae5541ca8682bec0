#pragma once

// Steinhaus random multiplicative functions: f(p) independent and uniform on
// the unit circle, extended completely multiplicatively. Includes the exact
// tuple-counting energy oracle, Monte Carlo moments, the factorized per-prime
// quadrature for the exponential expectation, and the truncation tail error.

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "zmlab/common.hpp"
#include "zmlab/dirichlet.hpp"
#include "zmlab/estimate.hpp"
#include "zmlab/primes.hpp"

namespace zmlab {

// ---------------------------------------------------------------------------
// Sampling.
// ---------------------------------------------------------------------------

// One realization: a phase per prime <= limit, keyed by (seed, index, p) so
// any single phase is reproducible in isolation.
struct RmfSample {
    std::uint64_t seed = 0;
    std::uint64_t index = 0;  // sample number within a Monte Carlo run
    std::uint32_t limit = 0;
    const PrimeTable* table = nullptr;
    std::vector<double> theta;  // aligned with table->primes while p <= limit

    cplx f_prime(std::size_t prime_idx) const { return unit_phase(theta[prime_idx]); }
};

inline RmfSample sample_rmf(const PrimeTable& table, std::uint32_t limit, std::uint64_t seed,
                            std::uint64_t index = 0) {
    if (limit < 2) throw std::invalid_argument("sample_rmf: limit must be >= 2");
    if (limit > table.limit) throw std::invalid_argument("sample_rmf: limit exceeds prime table");
    RmfSample s;
    s.seed = seed;
    s.index = index;
    s.limit = limit;
    s.table = &table;
    for (std::uint32_t p : table.primes) {
        if (p > limit) break;
        s.theta.push_back(counter_phase(seed, index, p));
    }
    return s;
}

// f(n) for 1 <= n <= x via the smallest-prime-factor chain.
inline std::vector<cplx> rmf_values(const RmfSample& s, std::uint32_t x) {
    if (x > s.limit) throw std::invalid_argument("rmf_values: x exceeds sample limit");
    std::vector<cplx> f(std::size_t(x) + 1);
    f[1] = 1.0;
    std::size_t pi = 0;
    for (std::uint32_t n = 2; n <= x; ++n) {
        std::uint32_t p = s.table->spf[n];
        if (p == n) {
            while (s.table->primes[pi] != p) ++pi;
            f[n] = s.f_prime(pi);
        } else {
            f[n] = f[p] * f[n / p];
        }
    }
    return f;
}

inline cplx rmf_partial_sum(const RmfSample& s, std::uint32_t x) {
    if (x > s.limit) throw std::invalid_argument("rmf_partial_sum: x exceeds sample limit");
    auto f = rmf_values(s, x);
    KahanCplx acc;
    for (std::uint32_t n = 1; n <= x; ++n) acc.add(f[n]);
    return acc.value();
}

// ---------------------------------------------------------------------------
// Exact energy oracle: #{(n_1..n_k, m_1..m_k) in [1,x]^{2k} : prod n = prod m}
// equals E|sum_{n<=x} f(n)|^{2k} by orthogonality of the Steinhaus phases.
// ---------------------------------------------------------------------------

using BigCount = unsigned __int128;

inline std::string to_string(BigCount v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    return {s.rbegin(), s.rend()};
}

struct EnergyCount {
    std::uint32_t x = 0;
    std::uint32_t k = 0;
    BigCount count = 0;
};

// Multiset of k-fold products of [1, x]: (product, multiplicity), sorted by
// product. Convolution instead of raw 2k-tuple enumeration.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> k_fold_products(
    std::uint32_t x, std::uint32_t k, double enum_budget = kDefaultEnumBudget) {
    if (x < 1 || k < 1) throw std::invalid_argument("k_fold_products: need x >= 1, k >= 1");
    if (std::pow(double(x), double(k)) > enum_budget)
        throw resource_error("k_fold_products: x^k exceeds enumeration budget");
    std::unordered_map<std::uint64_t, std::uint64_t> cur;
    cur.reserve(x);
    cur[1] = 1;
    for (std::uint32_t step = 0; step < k; ++step) {
        std::unordered_map<std::uint64_t, std::uint64_t> next;
        next.reserve(cur.size() * 2);
        for (auto [v, m] : cur)
            for (std::uint32_t n = 1; n <= x; ++n) next[v * n] += m;
        cur = std::move(next);
    }
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out(cur.begin(), cur.end());
    std::sort(out.begin(), out.end());
    return out;
}

inline EnergyCount multiplicative_energy(std::uint32_t x, std::uint32_t k,
                                         double enum_budget = kDefaultEnumBudget) {
    auto dist = k_fold_products(x, k, enum_budget);
    BigCount total = 0;
    for (auto [v, m] : dist) total += BigCount(m) * BigCount(m);
    return {x, k, total};
}

// ---------------------------------------------------------------------------
// Monte Carlo moment E|sum_{n<=x} f(n)|^{2k}; k may be non-integer.
// ---------------------------------------------------------------------------

namespace detail {

// Per-sample partial sum drawn straight from the counter RNG, no allocation
// beyond the caller-owned scratch.
struct RmfScratch {
    std::vector<cplx> f;
};

inline cplx rmf_partial_sum_keyed(const PrimeTable& table, std::uint32_t x, std::uint64_t seed,
                                  std::uint64_t sample, RmfScratch& ws) {
    ws.f.assign(std::size_t(x) + 1, cplx{0.0, 0.0});
    ws.f[1] = 1.0;
    KahanCplx acc;
    acc.add(1.0);
    for (std::uint32_t n = 2; n <= x; ++n) {
        std::uint32_t p = table.spf[n];
        ws.f[n] = (p == n) ? unit_phase(counter_phase(seed, sample, p)) : ws.f[p] * ws.f[n / p];
        acc.add(ws.f[n]);
    }
    return acc.value();
}

struct MeanAccum {
    long long n = 0;
    double sum = 0.0, sumsq = 0.0;
};

inline MeanAccum merge_mean(const MeanAccum& a, const MeanAccum& b) {
    return {a.n + b.n, a.sum + b.sum, a.sumsq + b.sumsq};
}

inline MomentEstimate finish_mc(const MeanAccum& m) {
    double mean = m.sum / double(m.n);
    double var = std::max(0.0, (m.sumsq - double(m.n) * mean * mean) / double(m.n - 1));
    return {mean, 0.0, m.n, QuadMethod::monte_carlo, std::sqrt(var / double(m.n))};
}

inline constexpr long long kMcChunk = 4096;

}  // namespace detail

inline MomentEstimate mc_moment(const PrimeTable& table, std::uint32_t x, double k,
                                long long samples, std::uint64_t seed, int threads = 1) {
    if (x < 1 || x > table.limit) throw std::invalid_argument("mc_moment: x out of table range");
    if (samples < 2) throw std::invalid_argument("mc_moment: need samples >= 2");
    std::size_t n_chunks = std::size_t((samples + detail::kMcChunk - 1) / detail::kMcChunk);
    std::vector<detail::MeanAccum> partial(n_chunks);
    parallel_chunks(n_chunks, threads, [&](std::size_t c) {
        long long lo = (long long)(c)*detail::kMcChunk;
        long long hi = std::min(samples, lo + detail::kMcChunk);
        detail::RmfScratch ws;
        KahanSum sum, sumsq;
        for (long long s = lo; s < hi; ++s) {
            cplx S = detail::rmf_partial_sum_keyed(table, x, seed, std::uint64_t(s), ws);
            double v = std::pow(std::norm(S), k);
            sum.add(v);
            sumsq.add(v * v);
        }
        partial[c] = {hi - lo, sum.value(), sumsq.value()};
    });
    return detail::finish_mc(pairwise_reduce(std::move(partial), detail::merge_mean));
}

// ---------------------------------------------------------------------------
// The factorized exponential expectation
//   sum_{|l| <= floor(ln y / 2)} prod_{p <= y} (1/2pi) int_0^{2pi}
//       exp(2(k-1) Re[A_p e^{i th} + B_p e^{2 i th}]) dth,
// A_p = p^{-1/2 - il/ln y}, B_p = (1/2) p^{-1 - 2il/ln y}. Independence of the
// f(p) factorizes the expectation; each factor by the trapezoid rule on a
// periodic integrand, products accumulated in log space.
// ---------------------------------------------------------------------------

inline double shift_exp_moment_quadrature(const PrimeTable& table, double y, double k,
                                    long long ell_max = -1, int nodes = 256) {
    if (y > double(table.limit)) throw std::invalid_argument("shift_exp_moment: y exceeds prime table");
    if (nodes < 64) throw std::invalid_argument("shift_exp_moment: need nodes >= 64");
    long long L = ell_limit(y);
    if (ell_max >= 0) L = std::min(L, ell_max);
    auto ps = primes_between(table, 1.0, std::min(y, double(table.limit)));
    double log_y = y > 1.0 ? std::log(y) : 1.0;

    KahanSum total;
    for (long long ell = -L; ell <= L; ++ell) {
        KahanSum log_prod;
        for (std::uint32_t p : ps) {
            double lp = std::log(double(p));
            double amp_a = 1.0 / std::sqrt(double(p));
            double amp_b = 0.5 / double(p);
            double arg_a = -double(ell) * lp / log_y;
            double arg_b = 2.0 * arg_a;
            KahanSum node_sum;
            for (int i = 0; i < nodes; ++i) {
                double th = 2.0 * M_PI * double(i) / double(nodes);
                double re = amp_a * std::cos(th + arg_a) + amp_b * std::cos(2.0 * th + arg_b);
                node_sum.add(std::exp(2.0 * (k - 1.0) * re));
            }
            log_prod.add(std::log(node_sum.value() / double(nodes)));
        }
        total.add(std::exp(log_prod.value()));
    }
    return total.value();
}

// Monte Carlo companion for the same expectation (joint over primes, not
// factorized). Returns mean and standard error of the per-sample shift-sum.
inline MomentEstimate shift_exp_moment_monte_carlo(const PrimeTable& table, double y, double k,
                                             long long samples, std::uint64_t seed,
                                             long long ell_max = -1, int threads = 1) {
    if (y > double(table.limit)) throw std::invalid_argument("shift_exp_moment mc: y exceeds prime table");
    if (samples < 2) throw std::invalid_argument("shift_exp_moment mc: need samples >= 2");
    long long L = ell_limit(y);
    if (ell_max >= 0) L = std::min(L, ell_max);
    auto ps = primes_between(table, 1.0, std::min(y, double(table.limit)));
    BlockTerms terms = make_block_terms(ps);
    double inv_log_y = y > 1.0 ? 1.0 / std::log(y) : 1.0;

    std::size_t n_chunks = std::size_t((samples + detail::kMcChunk - 1) / detail::kMcChunk);
    std::vector<detail::MeanAccum> partial(n_chunks);
    parallel_chunks(n_chunks, threads, [&](std::size_t c) {
        long long lo = (long long)(c)*detail::kMcChunk;
        long long hi = std::min(samples, lo + detail::kMcChunk);
        std::vector<cplx> u(terms.size());
        std::vector<KahanCplx> dvals(std::size_t(2 * L + 1));
        KahanSum sum, sumsq;
        for (long long s = lo; s < hi; ++s) {
            for (std::size_t i = 0; i < terms.size(); ++i)
                u[i] = unit_phase(counter_phase(seed, std::uint64_t(s), ps[i]));
            for (auto& d : dvals) d = KahanCplx{};
            shifted_block_sum_range(terms, inv_log_y, -L, L, u, dvals);
            KahanSum v;
            for (auto& d : dvals) v.add(std::exp(2.0 * (k - 1.0) * d.value().real()));
            sum.add(v.value());
            sumsq.add(v.value() * v.value());
        }
        partial[c] = {hi - lo, sum.value(), sumsq.value()};
    });
    return detail::finish_mc(pairwise_reduce(std::move(partial), detail::merge_mean));
}

// ---------------------------------------------------------------------------
// Truncation tail: exp(2(k-1) reD) - (sum_{j<=J} (k-1)^j reD^j / j!)^2, which
// by the product identity equals the double series over max{u,v} > J.
// Evaluated in extended precision so the cancellation regime stays honest.
// ---------------------------------------------------------------------------

inline double tail_error(double reD, double k, long long J) {
    if (J < 0) throw std::invalid_argument("tail_error: J must be >= 0");
    long double z = (long double)(k - 1.0) * (long double)reD;
    long double s = truncated_exp_series_l(z, J);
    long double v = std::exp(2.0L * z) - s * s;
    // for z >= 0 every term of the double series is nonnegative; a negative
    // result can only be rounding residue
    if (z >= 0.0L && v < 0.0L) v = 0.0L;
    return double(v);
}

}  // namespace zmlab
