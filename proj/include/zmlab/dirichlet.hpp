#pragma once

// Evaluation of the zeta partial sum S(x,t) = sum_{n<=x} n^{-it} and of the
// shifted prime-block polynomials
//   D_l = sum_{y_lo < p <= y_hi} p^{-1/2} u_p w_p^l + (1/2) p^{-1} u_p^2 w_p^{2l},
// where w_p = exp(-i ln p / ln y) and u_p is exp(-i t ln p) on the t-line or
// f(p) under the random-multiplicative substitution.
//
// Grid evaluation uses one precomputed rotator per n (or per prime): the
// phase advances by a single complex multiply per grid step and is rescaled
// to unit modulus every kRenormInterval steps.

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "zmlab/common.hpp"
#include "zmlab/primes.hpp"

namespace zmlab {

// ---------------------------------------------------------------------------
// Parameter records.
// ---------------------------------------------------------------------------

// The scalars governing every experiment. y and L are derived.
struct GlobalParams {
    double x = 2.0;   // length of the zeta sum
    double T = 1e5;   // averaging window [0, T]
    double k = 2.0;   // moment half-exponent (2k-th moment)
    double C0 = 2.0;  // y = x^{1/C0}

    double y() const { return std::pow(x, 1.0 / C0); }
    double L() const { return std::min(x, T / x); }

    // Preconditions of the proxy construction. L > 1 is only needed for the
    // moment-scaling reports, so it is not enforced here.
    void require_proxy_preconditions() const {
        if (!(x >= 2.0)) throw std::invalid_argument("params: x must be >= 2");
        if (!(T > 0.0)) throw std::invalid_argument("params: T must be > 0");
        if (!(k > 1.0)) throw std::invalid_argument("params: k must be > 1");
        if (!(C0 > 0.0)) throw std::invalid_argument("params: C0 must be > 0");
        if (x > std::sqrt(T))
            throw std::invalid_argument("params: proxy experiments require x <= T^(1/2)");
    }
};

struct GridSpec {
    double t0 = 0.0;
    double dt = 1.0;
    long long count = 1;

    // Midpoint grid for (1/T) * integral over [0, T].
    static GridSpec midpoint(double T, long long points) {
        if (!(T > 0.0) || points < 1) throw std::invalid_argument("midpoint grid: need T > 0, points >= 1");
        double dt = T / double(points);
        return {0.5 * dt, dt, points};
    }

    void validate() const {
        if (!(dt > 0.0) || count < 1) throw std::invalid_argument("grid: dt must be > 0 and count >= 1");
    }
};

// Default quadrature resolution: >= 8 points per fastest oscillation. The
// largest frequency in |S|^{2k} is about 2k*ln(x).
inline double default_dt(double x, double two_k) {
    double half_k = std::max(1.0, two_k / 2.0);
    double lx = std::max(std::log(std::max(x, 1.0)), 0.5);
    return 1.0 / (8.0 * half_k * lx);
}

// ---------------------------------------------------------------------------
// Zeta partial sums.
// ---------------------------------------------------------------------------

// Direct evaluation: one sin/cos pair per term, compensated accumulation.
inline cplx zeta_sum_direct(double x, double t) {
    if (!(x >= 1.0)) throw std::invalid_argument("zeta_sum_direct: x must be >= 1");
    std::uint64_t xi = std::uint64_t(std::floor(x));
    KahanCplx acc;
    for (std::uint64_t n = 1; n <= xi; ++n) {
        double phi = t * std::log(double(n));
        acc.add({std::cos(phi), -std::sin(phi)});
    }
    return acc.value();
}

// Accumulates S over n in [n_lo, n_hi] at the grid points of `g` into out
// (size g.count), one rotation per step. Single-threaded chunk core.
inline void zeta_grid_accumulate(std::uint64_t n_lo, std::uint64_t n_hi, const GridSpec& g,
                                 std::vector<KahanCplx>& out) {
    for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
        double ln_n = std::log(double(n));
        cplx z = unit_phase(-g.t0 * ln_n);
        cplx rot = unit_phase(-g.dt * ln_n);
        for (long long j = 0; j < g.count; ++j) {
            out[std::size_t(j)].add(z);
            z *= rot;
            if ((j & (kRenormInterval - 1)) == kRenormInterval - 1) z /= std::abs(z);
        }
    }
}

// S(x, t0 + j*dt) for j = 0..count-1. Chunked over the n-range with a fixed
// granularity, so the result is bit-identical for any worker count.
inline std::vector<cplx> zeta_sum_grid(double x, const GridSpec& g, int threads = 1,
                                       double work_budget = kDefaultWorkBudget) {
    if (!(x >= 1.0)) throw std::invalid_argument("zeta_sum_grid: x must be >= 1");
    g.validate();
    std::uint64_t xi = std::uint64_t(std::floor(x));
    if (double(xi) * double(g.count) > work_budget)
        throw resource_error("zeta_sum_grid: count*floor(x) exceeds work budget");

    std::size_t n_chunks = std::min<std::size_t>(64, std::size_t((xi + 4095) / 4096));
    if (n_chunks == 0) n_chunks = 1;
    std::uint64_t chunk = (xi + n_chunks - 1) / n_chunks;

    std::vector<std::vector<cplx>> partial(n_chunks);
    parallel_chunks(n_chunks, threads, [&](std::size_t c) {
        std::uint64_t lo = 1 + c * chunk;
        std::uint64_t hi = std::min<std::uint64_t>(xi, lo + chunk - 1);
        std::vector<KahanCplx> acc(std::size_t(g.count));
        if (lo <= hi) zeta_grid_accumulate(lo, hi, g, acc);
        partial[c].resize(std::size_t(g.count));
        for (long long j = 0; j < g.count; ++j) partial[c][std::size_t(j)] = acc[std::size_t(j)].value();
    });

    return pairwise_reduce(std::move(partial), [](const std::vector<cplx>& a, const std::vector<cplx>& b) {
        std::vector<cplx> r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
        return r;
    });
}

// ---------------------------------------------------------------------------
// Shifted block polynomials.
// ---------------------------------------------------------------------------

// Per-prime coefficients of one block: ln p, p^{-1/2}, p^{-1}/2.
struct BlockTerms {
    std::vector<double> log_p, a, b;

    std::size_t size() const { return log_p.size(); }
};

inline BlockTerms make_block_terms(std::span<const std::uint32_t> primes) {
    BlockTerms t;
    t.log_p.reserve(primes.size());
    t.a.reserve(primes.size());
    t.b.reserve(primes.size());
    for (std::uint32_t p : primes) {
        double pd = double(p);
        t.log_p.push_back(std::log(pd));
        t.a.push_back(1.0 / std::sqrt(pd));
        t.b.push_back(0.5 / pd);
    }
    return t;
}

// D_{m,l}(t) for a single shift, directly:
//   sum_p p^{-(1/2 + it + il/ln y)} + (1/2) p^{-(1 + 2it + 2il/ln y)}.
inline cplx block_poly(const PrimeTable& table, double y_lo, double y_hi, long long ell, double y,
                       double t) {
    if (!(y >= 2.0)) throw std::invalid_argument("block_poly: y must be >= 2");
    auto ps = primes_between(table, y_lo, y_hi);
    double shift = double(ell) / std::log(y);
    KahanCplx acc;
    for (std::uint32_t p : ps) {
        double lp = std::log(double(p));
        double phi = (t + shift) * lp;
        double c = std::cos(phi), s = std::sin(phi);
        double a = 1.0 / std::sqrt(double(p));
        double b = 0.5 / double(p);
        // e^{-i phi} and e^{-2i phi} by double angle
        acc.add({a * c + b * (c * c - s * s), -(a * s + b * (2.0 * c * s))});
    }
    return acc.value();
}

// Adds D_l, l = ell_lo..ell_hi, to out (size ell_hi-ell_lo+1) for externally
// supplied unit phases u_p (one per prime in `terms`). The shift dimension is
// advanced by rotation with w_p.
inline void shifted_block_sum_range(const BlockTerms& terms, double inv_log_y, long long ell_lo,
                                    long long ell_hi, std::span<const cplx> u,
                                    std::span<KahanCplx> out) {
    if (u.size() != terms.size() || out.size() != std::size_t(ell_hi - ell_lo + 1))
        throw std::invalid_argument("shifted_block_sum_range: size mismatch");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        double lp = terms.log_p[i];
        cplx w = unit_phase(-lp * inv_log_y);
        cplx w2 = w * w;
        cplx u2 = u[i] * u[i];
        cplx z1 = terms.a[i] * u[i] * unit_phase(-double(ell_lo) * lp * inv_log_y);
        cplx z2 = terms.b[i] * u2 * unit_phase(-2.0 * double(ell_lo) * lp * inv_log_y);
        for (std::size_t c = 0; c < out.size(); ++c) {
            out[c].add(z1 + z2);
            z1 *= w;
            z2 *= w2;
        }
    }
}

// D_l(t) for l = ell_lo..ell_hi at a single t.
inline std::vector<cplx> shifted_block_at(const BlockTerms& terms, double inv_log_y, long long ell_lo,
                                          long long ell_hi, double t) {
    std::vector<cplx> u(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) u[i] = unit_phase(-t * terms.log_p[i]);
    std::vector<KahanCplx> acc(std::size_t(ell_hi - ell_lo + 1));
    shifted_block_sum_range(terms, inv_log_y, ell_lo, ell_hi, u, acc);
    std::vector<cplx> out(acc.size());
    for (std::size_t c = 0; c < acc.size(); ++c) out[c] = acc[c].value();
    return out;
}

// Grid version: out is row-major with g.count rows of (ell_hi-ell_lo+1)
// shifts, accumulated (+=). One t-rotation per prime per step.
inline void shifted_block_grid_accumulate(const BlockTerms& terms, double inv_log_y, long long ell_lo,
                                          long long ell_hi, const GridSpec& g,
                                          std::vector<KahanCplx>& out) {
    std::size_t cols = std::size_t(ell_hi - ell_lo + 1);
    if (out.size() != std::size_t(g.count) * cols)
        throw std::invalid_argument("shifted_block_grid_accumulate: bad out size");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        double lp = terms.log_p[i];
        cplx w = unit_phase(-lp * inv_log_y);
        cplx w2 = w * w;
        cplx wL = unit_phase(-double(ell_lo) * lp * inv_log_y);
        cplx w2L = wL * wL;
        cplx ut = unit_phase(-g.t0 * lp);
        cplx rot = unit_phase(-g.dt * lp);
        double a = terms.a[i], b = terms.b[i];
        for (long long j = 0; j < g.count; ++j) {
            cplx u2 = ut * ut;
            cplx z1 = a * ut * wL;
            cplx z2 = b * u2 * w2L;
            KahanCplx* row = &out[std::size_t(j) * cols];
            for (std::size_t c = 0; c < cols; ++c) {
                row[c].add(z1 + z2);
                z1 *= w;
                z2 *= w2;
            }
            ut *= rot;
            if ((j & (kRenormInterval - 1)) == kRenormInterval - 1) ut /= std::abs(ut);
        }
    }
}

// Grid version of block_poly for one shift; chunked like zeta_sum_grid.
inline std::vector<cplx> block_poly_grid(const PrimeTable& table, double y_lo, double y_hi,
                                         long long ell, double y, const GridSpec& g, int threads = 1,
                                         double work_budget = kDefaultWorkBudget) {
    if (!(y >= 2.0)) throw std::invalid_argument("block_poly_grid: y must be >= 2");
    g.validate();
    auto ps = primes_between(table, y_lo, y_hi);
    if (double(ps.size()) * double(g.count) > work_budget)
        throw resource_error("block_poly_grid: count*primes exceeds work budget");
    if (ps.empty()) return std::vector<cplx>(std::size_t(g.count), cplx{0.0, 0.0});

    double inv_log_y = 1.0 / std::log(y);
    std::size_t n_chunks = std::min<std::size_t>(64, (ps.size() + 511) / 512);
    std::size_t chunk = (ps.size() + n_chunks - 1) / n_chunks;

    std::vector<std::vector<cplx>> partial(n_chunks);
    parallel_chunks(n_chunks, threads, [&](std::size_t c) {
        std::size_t lo = c * chunk;
        std::size_t hi = std::min(ps.size(), lo + chunk);
        BlockTerms terms = make_block_terms(ps.subspan(lo, hi - lo));
        std::vector<KahanCplx> acc(std::size_t(g.count));
        shifted_block_grid_accumulate(terms, inv_log_y, ell, ell, g, acc);
        partial[c].resize(std::size_t(g.count));
        for (long long j = 0; j < g.count; ++j) partial[c][std::size_t(j)] = acc[std::size_t(j)].value();
    });

    return pairwise_reduce(std::move(partial), [](const std::vector<cplx>& a, const std::vector<cplx>& b) {
        std::vector<cplx> r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
        return r;
    });
}

}  // namespace zmlab
