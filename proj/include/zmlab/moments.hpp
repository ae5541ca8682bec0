#pragma once

// Quadrature estimation of the moment integrals, the exact tuple oracle for
// (1/T) int |S(x,t)|^{2k} dt, the Hoelder lower-bound extraction, and the
// correlation / shift-sum probes.
//
// All integrals use the midpoint rule (t = 0 is the global maximum of |S|,
// which the trapezoid rule would overweight) and stream the grid in fixed
// blocks; blocks are merged by the pairwise tree, so results do not depend on
// the worker count. Error indicators come from a half-resolution pass.

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "zmlab/common.hpp"
#include "zmlab/dirichlet.hpp"
#include "zmlab/estimate.hpp"
#include "zmlab/primes.hpp"
#include "zmlab/proxy.hpp"
#include "zmlab/steinhaus.hpp"

namespace zmlab {

namespace detail {

inline constexpr long long kGridBlock = 8192;

inline void require_midpoint_cover(const GridSpec& g, double T) {
    g.validate();
    if (std::fabs(g.t0 - 0.5 * g.dt) > 1e-9 * g.dt || std::fabs(g.dt * double(g.count) - T) > 1.0000001 * g.dt)
        throw std::invalid_argument("moment integrals expect a midpoint grid covering [0, T]");
}

// |S|^{two_k} from |S|^2, with an exact-power fast path for even two_k.
inline double power_from_norm(double norm_sq, double two_k) {
    long long h = (long long)std::llround(two_k * 0.5);
    if (double(2 * h) == two_k && h >= 0) {
        double r = 1.0, b = norm_sq;
        long long e = h;
        while (e > 0) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }
    return std::pow(norm_sq, 0.5 * two_k);
}

// One full midpoint pass of (1/T) int |S(x,t)|^{two_k} dt at `points`.
inline double zeta_moment_pass(double x, double T, double two_k, long long points, int threads,
                               double work_budget) {
    std::uint64_t xi = std::uint64_t(std::floor(x));
    if (double(xi) * double(points) > work_budget)
        throw resource_error("integrate_moment: points*floor(x) exceeds work budget");
    double dt = T / double(points);
    std::size_t n_blocks = std::size_t((points + kGridBlock - 1) / kGridBlock);
    std::vector<double> partial(n_blocks, 0.0);
    parallel_chunks(n_blocks, threads, [&](std::size_t blk) {
        long long lo = (long long)(blk)*kGridBlock;
        long long cnt = std::min(points - lo, kGridBlock);
        GridSpec g{(double(lo) + 0.5) * dt, dt, cnt};
        std::vector<KahanCplx> svals(static_cast<std::size_t>(cnt));
        zeta_grid_accumulate(1, xi, g, svals);
        KahanSum acc;
        for (long long j = 0; j < cnt; ++j)
            acc.add(power_from_norm(std::norm(svals[std::size_t(j)].value()), two_k));
        partial[blk] = acc.value();
    });
    double total = pairwise_reduce(std::move(partial), [](double a, double b) { return a + b; });
    return total / double(points);
}

struct LogSumExp {
    double max_log = -HUGE_VAL;
    double sum = 0.0;  // sum of exp(v - max_log)

    void add(double v) {
        if (v == -HUGE_VAL) return;
        if (v <= max_log) {
            sum += std::exp(v - max_log);
        } else {
            sum = sum * std::exp(max_log - v) + 1.0;
            max_log = v;
        }
    }
    double log_value() const { return sum > 0.0 ? max_log + std::log(sum) : -HUGE_VAL; }
};

inline LogSumExp merge_lse(const LogSumExp& a, const LogSumExp& b) {
    LogSumExp r;
    if (a.max_log >= b.max_log) {
        r.max_log = a.max_log;
        r.sum = a.sum + (b.max_log == -HUGE_VAL ? 0.0 : b.sum * std::exp(b.max_log - a.max_log));
    } else {
        r.max_log = b.max_log;
        r.sum = b.sum + (a.max_log == -HUGE_VAL ? 0.0 : a.sum * std::exp(a.max_log - b.max_log));
    }
    return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// (1/T) int_0^T |S(x,t)|^{two_k} dt by the midpoint rule.
// ---------------------------------------------------------------------------

inline MomentEstimate integrate_moment(const GlobalParams& params, double two_k, const GridSpec& grid,
                                       int threads = 1, double work_budget = kDefaultWorkBudget) {
    if (!(two_k > 0.0)) throw std::invalid_argument("integrate_moment: two_k must be > 0");
    detail::require_midpoint_cover(grid, params.T);
    long long points = grid.count;
    double full = detail::zeta_moment_pass(params.x, params.T, two_k, points, threads, work_budget);
    double half = detail::zeta_moment_pass(params.x, params.T, two_k, std::max<long long>(1, points / 2),
                                           threads, work_budget);
    return {full, grid.dt, points, QuadMethod::riemann_midpoint, std::fabs(full - half)};
}

// ---------------------------------------------------------------------------
// Exact tuple oracle. Expanding |S|^{2k} over 2k-tuples and integrating each
// ratio r = prod n / prod m in closed form gives
//   sum_u mult_u^2 + 2 sum_{u<v} mult_u mult_v sinc(T ln(v/u)),
// over the k-fold product multiset. No discretization error.
// ---------------------------------------------------------------------------

inline double tuple_integral_oracle(std::uint32_t x, std::uint32_t k, double T,
                                    double enum_budget = kDefaultEnumBudget) {
    if (!(T > 0.0)) throw std::invalid_argument("tuple_integral_oracle: T must be > 0");
    auto dist = k_fold_products(x, k, enum_budget);
    if (double(dist.size()) * double(dist.size()) > 2e8)
        throw resource_error("tuple_integral_oracle: pair sum over distinct products too large");
    KahanSum acc;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        acc.add(double(dist[i].second) * double(dist[i].second));
        double log_vi = std::log(double(dist[i].first));
        for (std::size_t j = i + 1; j < dist.size(); ++j) {
            double theta = T * (std::log(double(dist[j].first)) - log_vi);
            acc.add(2.0 * double(dist[i].second) * double(dist[j].second) * std::sin(theta) / theta);
        }
    }
    return acc.value();
}

// ---------------------------------------------------------------------------
// Proxy values on a grid block, streamed scale by scale.
// ---------------------------------------------------------------------------

namespace detail {

struct ProxyGridContext {
    const Subdivision* sub = nullptr;
    double k = 2.0;
    long long L = 0;
    double log_y = 0.0;
    std::vector<BlockTerms> blocks;
};

inline ProxyGridContext make_proxy_context(const Subdivision& sub, const GlobalParams& params,
                                           const PrimeTable& table) {
    ProxyGridContext ctx;
    ctx.sub = &sub;
    ctx.k = params.k;
    ctx.log_y = sub.log_y.back();
    ctx.L = ell_limit(sub.y_top());
    ctx.blocks = subdivision_block_terms(sub, table);
    return ctx;
}

// R(t_j) for every point of g. Scratch grows to g.count*(2L+1).
inline void proxy_R_on_grid(const ProxyGridContext& ctx, const GridSpec& g, std::vector<double>& R_out) {
    std::size_t cols = std::size_t(2 * ctx.L + 1);
    std::size_t cells = std::size_t(g.count) * cols;
    double inv_log_y = ctx.log_y > 0.0 ? 1.0 / ctx.log_y : 0.0;
    std::vector<double> prod(cells, 1.0);
    std::vector<KahanCplx> fam(cells);
    for (std::size_t m = 0; m < ctx.blocks.size(); ++m) {
        fam.assign(cells, KahanCplx{});
        shifted_block_grid_accumulate(ctx.blocks[m], inv_log_y, -ctx.L, ctx.L, g, fam);
        long long J = ctx.sub->J[m];
        for (std::size_t c = 0; c < cells; ++c)
            prod[c] *= truncated_block(fam[c].value().real(), ctx.k, J);
    }
    R_out.assign(std::size_t(g.count), 0.0);
    for (long long j = 0; j < g.count; ++j) {
        KahanSum s;
        const double* row = &prod[std::size_t(j) * cols];
        for (std::size_t c = 0; c < cols; ++c) s.add(row[c]);
        R_out[std::size_t(j)] = s.value();
    }
}

struct WeightedPassSums {
    double weighted = 0.0;     // sum |S|^2 R
    double proxy_power = 0.0;  // sum R^{k/(k-1)}
    double moment_2k = 0.0;    // sum |S|^{2k}
};

// One midpoint pass that evaluates S and R on the same grid.
inline WeightedPassSums weighted_pass(const GlobalParams& params, const ProxyGridContext& ctx,
                                      long long points, int threads, double work_budget) {
    std::uint64_t xi = std::uint64_t(std::floor(params.x));
    double per_point = double(xi);
    for (const auto& b : ctx.blocks) per_point += double(b.size()) * double(2 * ctx.L + 1);
    if (per_point * double(points) > work_budget)
        throw resource_error("weighted integral: grid work exceeds budget");
    double dt = params.T / double(points);
    double kk = params.k;
    std::size_t n_blocks = std::size_t((points + kGridBlock - 1) / kGridBlock);
    std::vector<WeightedPassSums> partial(n_blocks);
    parallel_chunks(n_blocks, threads, [&](std::size_t blk) {
        long long lo = (long long)(blk)*kGridBlock;
        long long cnt = std::min(points - lo, kGridBlock);
        GridSpec g{(double(lo) + 0.5) * dt, dt, cnt};
        std::vector<KahanCplx> svals(static_cast<std::size_t>(cnt));
        zeta_grid_accumulate(1, xi, g, svals);
        std::vector<double> R;
        proxy_R_on_grid(ctx, g, R);
        KahanSum w, p, m2k;
        for (long long j = 0; j < cnt; ++j) {
            double ns = std::norm(svals[std::size_t(j)].value());
            w.add(ns * R[std::size_t(j)]);
            p.add(std::pow(R[std::size_t(j)], kk / (kk - 1.0)));
            m2k.add(power_from_norm(ns, 2.0 * kk));
        }
        partial[blk] = {w.value(), p.value(), m2k.value()};
    });
    WeightedPassSums total = pairwise_reduce(
        std::move(partial), [](const WeightedPassSums& a, const WeightedPassSums& b) {
            return WeightedPassSums{a.weighted + b.weighted, a.proxy_power + b.proxy_power,
                                    a.moment_2k + b.moment_2k};
        });
    total.weighted /= double(points);
    total.proxy_power /= double(points);
    total.moment_2k /= double(points);
    return total;
}

}  // namespace detail

// (1/T) int |S(x,t)|^2 R(t) dt.
inline MomentEstimate integrate_weighted(const GlobalParams& params, const Subdivision& sub,
                                         const ProxyConfig& cfg, const PrimeTable& table,
                                         const GridSpec& grid, int threads = 1,
                                         double work_budget = kDefaultWorkBudget) {
    (void)cfg;
    detail::require_midpoint_cover(grid, params.T);
    auto ctx = detail::make_proxy_context(sub, params, table);
    auto full = detail::weighted_pass(params, ctx, grid.count, threads, work_budget);
    auto half = detail::weighted_pass(params, ctx, std::max<long long>(1, grid.count / 2), threads,
                                      work_budget);
    return {full.weighted, grid.dt, grid.count, QuadMethod::riemann_midpoint,
            std::fabs(full.weighted - half.weighted)};
}

// (1/T) int R(t)^{k/(k-1)} dt.
inline MomentEstimate integrate_proxy_power(const GlobalParams& params, const Subdivision& sub,
                                            const ProxyConfig& cfg, const PrimeTable& table,
                                            const GridSpec& grid, int threads = 1,
                                            double work_budget = kDefaultWorkBudget) {
    (void)cfg;
    if (!(params.k > 1.0)) throw std::invalid_argument("integrate_proxy_power: k must be > 1");
    detail::require_midpoint_cover(grid, params.T);
    auto ctx = detail::make_proxy_context(sub, params, table);
    auto full = detail::weighted_pass(params, ctx, grid.count, threads, work_budget);
    auto half = detail::weighted_pass(params, ctx, std::max<long long>(1, grid.count / 2), threads,
                                      work_budget);
    return {full.proxy_power, grid.dt, grid.count, QuadMethod::riemann_midpoint,
            std::fabs(full.proxy_power - half.proxy_power)};
}

// ---------------------------------------------------------------------------
// Hoelder extraction. On any fixed grid the discrete inequality
//   M_{2k}^{1/k} P^{(k-1)/k} >= W
// is exact mathematics; only rounding can break it, hence the 1e-9 slack.
// ---------------------------------------------------------------------------

inline double holder_lower_bound(const MomentEstimate& I_w, const MomentEstimate& I_p, double k) {
    if (I_w.dt != I_p.dt || I_w.points != I_p.points)
        throw std::invalid_argument("holder_lower_bound: estimates come from different grids");
    if (!(I_p.value > 0.0)) throw std::invalid_argument("holder_lower_bound: proxy power must be > 0");
    if (I_w.value <= 0.0) return 0.0;
    return std::exp(k * std::log(I_w.value) - (k - 1.0) * std::log(I_p.value));
}

struct HolderReport {
    MomentEstimate weighted;     // W
    MomentEstimate proxy_power;  // P
    MomentEstimate moment_2k;    // M_{2k} on the same grid
    double lower_bound = 0.0;    // (W / P^{(k-1)/k})^k
    double holder_slack = 0.0;   // max(0, W / (M^{1/k} P^{(k-1)/k}) - 1)
    bool holder_ok = false;
};

inline HolderReport run_holder(const GlobalParams& params, const Subdivision& sub,
                               const ProxyConfig& cfg, const PrimeTable& table, const GridSpec& grid,
                               int threads = 1, double work_budget = kDefaultWorkBudget) {
    (void)cfg;
    if (!(params.k > 1.0)) throw std::invalid_argument("run_holder: k must be > 1");
    detail::require_midpoint_cover(grid, params.T);
    auto ctx = detail::make_proxy_context(sub, params, table);
    auto full = detail::weighted_pass(params, ctx, grid.count, threads, work_budget);
    auto half = detail::weighted_pass(params, ctx, std::max<long long>(1, grid.count / 2), threads,
                                      work_budget);

    HolderReport rep;
    rep.weighted = {full.weighted, grid.dt, grid.count, QuadMethod::riemann_midpoint,
                    std::fabs(full.weighted - half.weighted)};
    rep.proxy_power = {full.proxy_power, grid.dt, grid.count, QuadMethod::riemann_midpoint,
                       std::fabs(full.proxy_power - half.proxy_power)};
    rep.moment_2k = {full.moment_2k, grid.dt, grid.count, QuadMethod::riemann_midpoint,
                     std::fabs(full.moment_2k - half.moment_2k)};
    rep.lower_bound = holder_lower_bound(rep.weighted, rep.proxy_power, params.k);

    double k = params.k;
    double rhs = std::exp(std::log(rep.moment_2k.value) / k +
                          std::log(rep.proxy_power.value) * (k - 1.0) / k);
    rep.holder_slack = std::max(0.0, rep.weighted.value / rhs - 1.0);
    rep.holder_ok = rep.holder_slack <= 1e-9 &&
                    rep.lower_bound <= rep.moment_2k.value * (1.0 + 1e-9);
    return rep;
}

// ---------------------------------------------------------------------------
// Correlation majorant probe: (1/T) int prod_m R_{m,l}(t) U_{m,l'}(t) dt, accumulated in
// log space (outside the asymptotic regime the integrand dwarfs double range),
// reported against the bound shape (ln y)^{k^2} / (|l-l'|^{2(k-1)} + 1).
// ---------------------------------------------------------------------------

struct CorrelationReport {
    long long ell = 0, ell_prime = 0;
    double log_estimate = 0.0;
    double estimate = 0.0;  // exp(log_estimate); may overflow to inf
    double shape_log = 0.0;
    double log_ratio = 0.0;
    double ratio = 0.0;
    long long points = 0;
    double dt = 0.0;
};

inline CorrelationReport correlation_probe(const GlobalParams& params, const Subdivision& sub,
                                           const ProxyConfig& cfg, const PrimeTable& table,
                                           long long ell, long long ell_prime, const GridSpec& grid,
                                           int threads = 1,
                                           double work_budget = kDefaultWorkBudget) {
    detail::require_midpoint_cover(grid, params.T);
    auto ctx = detail::make_proxy_context(sub, params, table);
    double per_point = 0.0;
    for (const auto& b : ctx.blocks) per_point += 2.0 * double(b.size());
    if (per_point * double(grid.count) > work_budget)
        throw resource_error("correlation_probe: grid work exceeds budget");

    double inv_log_y = ctx.log_y > 0.0 ? 1.0 / ctx.log_y : 0.0;
    double k = params.k;
    long long points = grid.count;
    double dt = grid.dt;
    std::size_t n_blocks = std::size_t((points + detail::kGridBlock - 1) / detail::kGridBlock);
    std::vector<detail::LogSumExp> partial(n_blocks);
    parallel_chunks(n_blocks, threads, [&](std::size_t blk) {
        long long lo = (long long)(blk)*detail::kGridBlock;
        long long cnt = std::min(points - lo, detail::kGridBlock);
        GridSpec g{(double(lo) + 0.5) * dt, dt, cnt};
        std::size_t cells = std::size_t(cnt);
        std::vector<double> vlog(cells, 0.0);
        std::vector<KahanCplx> fam_l(cells), fam_lp(cells);
        for (std::size_t m = 0; m < ctx.blocks.size(); ++m) {
            fam_l.assign(cells, KahanCplx{});
            fam_lp.assign(cells, KahanCplx{});
            shifted_block_grid_accumulate(ctx.blocks[m], inv_log_y, ell, ell, g, fam_l);
            shifted_block_grid_accumulate(ctx.blocks[m], inv_log_y, ell_prime, ell_prime, g, fam_lp);
            long long J = ctx.sub->J[m];
            for (std::size_t j = 0; j < cells; ++j) {
                double s = truncated_exp_series((k - 1.0) * fam_l[j].value().real(), J);
                double log_R = s == 0.0 ? -HUGE_VAL : 2.0 * std::log(std::fabs(s));
                cplx Dp = fam_lp[j].value();
                Band band = make_band(std::fabs(Dp.real()), double(J), cfg);
                vlog[j] += log_R + log_majorant_U(Dp, band, k, J, cfg);
            }
        }
        detail::LogSumExp lse;
        for (double v : vlog) lse.add(v);
        partial[blk] = lse;
    });
    detail::LogSumExp total = pairwise_reduce(std::move(partial), detail::merge_lse);

    CorrelationReport rep;
    rep.ell = ell;
    rep.ell_prime = ell_prime;
    rep.points = points;
    rep.dt = dt;
    rep.log_estimate = total.log_value() - std::log(double(points));
    rep.estimate = std::exp(rep.log_estimate);
    double delta = double(std::llabs(ell - ell_prime));
    rep.shape_log =
        k * k * std::log(ctx.log_y) - std::log(std::pow(delta, 2.0 * (k - 1.0)) + 1.0);
    rep.log_ratio = rep.log_estimate - rep.shape_log;
    rep.ratio = std::exp(rep.log_ratio);
    return rep;
}

// ---------------------------------------------------------------------------
// Exact shift sum: sum_{|l|,|l'| <= L} (|l-l'|^{2(k-1)} + 1)^{-1} via the
// difference-count formula, with the infinite-series bound for the ratio.
// ---------------------------------------------------------------------------

struct ShiftSumReport {
    long long ell_limit = 0;
    double sum = 0.0;
    double bound_ratio = 0.0;   // sum / (2L+1)
    double series_bound = 0.0;  // sum over all integers d of (|d|^{2(k-1)}+1)^{-1}
};

inline double shift_series_bound(double k, double tol = 1e-7) {
    double expo = 2.0 * (k - 1.0);
    if (expo <= 1.0) return HUGE_VAL;  // harmonic-type divergence
    KahanSum s;
    s.add(1.0);
    for (double d = 1.0; d < 1e9; d += 1.0) {
        double term = 1.0 / (std::pow(d, expo) + 1.0);
        s.add(2.0 * term);
        // integral tail bound: 2 * d^{1-expo} / (expo - 1)
        if (2.0 * std::pow(d, 1.0 - expo) / (expo - 1.0) < tol) break;
    }
    return s.value();
}

inline ShiftSumReport shift_sum_check_ell(long long L, double k) {
    if (!(k > 1.0)) throw std::invalid_argument("shift_sum_check: k must be > 1");
    if (L < 0) throw std::invalid_argument("shift_sum_check: L must be >= 0");
    double expo = 2.0 * (k - 1.0);
    KahanSum s;
    double n_ell = double(2 * L + 1);
    s.add(n_ell);  // d = 0
    for (long long d = 1; d <= 2 * L; ++d)
        s.add(2.0 * (n_ell - double(d)) / (std::pow(double(d), expo) + 1.0));
    ShiftSumReport rep;
    rep.ell_limit = L;
    rep.sum = s.value();
    rep.bound_ratio = rep.sum / n_ell;
    rep.series_bound = shift_series_bound(k);
    return rep;
}

inline ShiftSumReport shift_sum_check(double y, double k) {
    return shift_sum_check_ell(ell_limit(y), k);
}

// ---------------------------------------------------------------------------
// Second-moment comparison: the t-integral (1/T) int |S|^2 R dt against the
// Monte Carlo expectation E |sum_{n<=x} f(n)|^2 R(f), with R(f) obtained by
// substituting f(p) for p^{-it}. Their gap is the unquantified error term of the construction.
// ---------------------------------------------------------------------------

struct ExpectationComparison {
    MomentEstimate integral;       // t-side
    MomentEstimate rmf;            // f-side Monte Carlo (value, SE)
    double discrepancy = 0.0;      // integral - rmf
};

inline ExpectationComparison expectation_comparison(const GlobalParams& params, const Subdivision& sub,
                                                    const ProxyConfig& cfg, const PrimeTable& table,
                                                    const GridSpec& grid, long long samples,
                                                    std::uint64_t seed, int threads = 1,
                                                    double work_budget = kDefaultWorkBudget) {
    ExpectationComparison rep;
    rep.integral = integrate_weighted(params, sub, cfg, table, grid, threads, work_budget);

    std::uint32_t x = std::uint32_t(std::floor(params.x));
    if (x < 1 || x > table.limit)
        throw std::invalid_argument("expectation_comparison: x out of table range");
    auto ctx = detail::make_proxy_context(sub, params, table);
    double inv_log_y = ctx.log_y > 0.0 ? 1.0 / ctx.log_y : 0.0;

    // prime lists per block, for keyed phase draws
    std::vector<std::span<const std::uint32_t>> block_primes;
    for (long long m = 1; m <= sub.M; ++m)
        block_primes.push_back(primes_between(table, sub.y(std::size_t(m - 1)), sub.y(std::size_t(m))));

    std::size_t n_chunks = std::size_t((samples + detail::kMcChunk - 1) / detail::kMcChunk);
    std::vector<detail::MeanAccum> partial(n_chunks);
    parallel_chunks(n_chunks, threads, [&](std::size_t c) {
        long long lo = (long long)(c)*detail::kMcChunk;
        long long hi = std::min(samples, lo + detail::kMcChunk);
        detail::RmfScratch ws;
        std::vector<cplx> u;
        std::vector<KahanCplx> dvals(std::size_t(2 * ctx.L + 1));
        std::vector<std::vector<cplx>> fam(ctx.blocks.size());
        KahanSum sum, sumsq;
        for (long long s = lo; s < hi; ++s) {
            cplx S = detail::rmf_partial_sum_keyed(table, x, seed, std::uint64_t(s), ws);
            for (std::size_t m = 0; m < ctx.blocks.size(); ++m) {
                auto ps = block_primes[m];
                u.resize(ps.size());
                for (std::size_t i = 0; i < ps.size(); ++i)
                    u[i] = unit_phase(counter_phase(seed, std::uint64_t(s), ps[i]));
                dvals.assign(std::size_t(2 * ctx.L + 1), KahanCplx{});
                shifted_block_sum_range(ctx.blocks[m], inv_log_y, -ctx.L, ctx.L, u, dvals);
                fam[m].resize(dvals.size());
                for (std::size_t i = 0; i < dvals.size(); ++i) fam[m][i] = dvals[i].value();
            }
            double Rf = proxy_R_from_families(fam, sub.J, params.k);
            double v = std::norm(S) * Rf;
            sum.add(v);
            sumsq.add(v * v);
        }
        partial[c] = {hi - lo, sum.value(), sumsq.value()};
    });
    rep.rmf = detail::finish_mc(pairwise_reduce(std::move(partial), detail::merge_mean));
    rep.discrepancy = rep.integral.value - rep.rmf.value;
    return rep;
}

// ---------------------------------------------------------------------------
// Exponent sweep: fitted slope of ln M_k against ln ln L across a T-sweep.
// Non-binding: the (k-1)^2 asymptotic regime is unreachable at desk scale.
// ---------------------------------------------------------------------------

inline constexpr const char* kSweepWarning =
    "non-binding probe: the (k-1)^2 asymptotic regime is unreachable at desk scale";

struct SweepRow {
    double T = 0.0, L = 0.0, ln_ln_L = 0.0, moment = 0.0;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    double slope = 0.0;
    double intercept = 0.0;
    std::string warning = kSweepWarning;
};

inline SweepReport exponent_sweep(double x, double two_k, std::span<const double> Ts,
                                  long long points_cap = 1 << 22, int threads = 1,
                                  double work_budget = kDefaultWorkBudget) {
    SweepReport rep;
    double dt = default_dt(x, two_k);
    for (double T : Ts) {
        GlobalParams p;
        p.x = x;
        p.T = T;
        double L = p.L();
        if (!(L > M_E)) continue;  // ln ln L must exist
        long long points = std::min<long long>(points_cap, (long long)std::ceil(T / dt));
        points = std::max<long long>(points, 2);
        MomentEstimate est = integrate_moment(p, two_k, GridSpec::midpoint(T, points), threads,
                                              work_budget);
        rep.rows.push_back({T, L, std::log(std::log(L)), est.value});
    }
    if (rep.rows.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& r : rep.rows) {
            double xv = r.ln_ln_L, yv = std::log(r.moment);
            sx += xv;
            sy += yv;
            sxx += xv * xv;
            sxy += xv * yv;
        }
        double n = double(rep.rows.size());
        double denom = n * sxx - sx * sx;
        if (denom != 0.0) {
            rep.slope = (n * sxy - sx * sy) / denom;
            rep.intercept = (sy - rep.slope * sx) / n;
        }
    }
    return rep;
}

}  // namespace zmlab
