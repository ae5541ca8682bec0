#pragma once

// The proxy construction: geometric subdivision of [1, y], per-scale
// truncation depths, truncated exponentials R_{m,l}, the proxy R(t), dyadic
// band classification of |Re D_{m,l}|, the three-case majorant U, and the
// pointwise-inequality checker for the majorant chains.

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "zmlab/common.hpp"
#include "zmlab/dirichlet.hpp"
#include "zmlab/primes.hpp"

namespace zmlab {

// Exponent factor of the short-polynomial inequality prod y_m^{1e4 k J_m} < x.
inline constexpr double kShortPolyFactor = 1e4;

// ---------------------------------------------------------------------------
// Configuration and subdivision.
// ---------------------------------------------------------------------------

struct ProxyConfig {
    double C0 = 2.0;
    double step_ratio = 20.0;        // y_{m-1} = y_m^{1/step_ratio}
    double j1_exponent = 1.5;        // J_1 = ceil((ln ln y)^{j1_exponent}) in reference mode
    double jm_divisor = 2e5;         // J_M = C0 / jm_divisor; reference value 1e5*k
    double band_divisor = 200.0;     // band width J_m / band_divisor; reference value 100*k
    double power_multiplier = 400.0; // a_m = 2*ceil(power_multiplier*J_m); reference value 200*k
    bool desk_mode = false;
    long long desk_JM = 0;  // replaces J_M in desk mode
    long long desk_M = 0;   // explicit M in desk mode; 0 keeps the window rule

    static ProxyConfig reference(double k, double C0) {
        if (!(k > 1.0)) throw std::invalid_argument("ProxyConfig: k must be > 1");
        ProxyConfig c;
        c.C0 = C0;
        c.jm_divisor = 1e5 * k;
        c.band_divisor = 100.0 * k;
        c.power_multiplier = 200.0 * k;
        return c;
    }

    static ProxyConfig desk(double k, double C0, long long M, long long JM) {
        ProxyConfig c = reference(k, C0);
        c.desk_mode = true;
        c.desk_M = M;
        c.desk_JM = JM;
        return c;
    }
};

// Scales are kept as logarithms: full-scale y_m overflow any double while
// ln y_m stays tame. y list is 1 = y_0 < y_1 < ... < y_M = y.
struct Subdivision {
    long long M = 1;
    std::vector<double> log_y;  // size M+1, log_y[0] = 0
    std::vector<long long> J;   // size M, J[m-1] = J_m
    bool window_ok = false;
    bool jm_assumption_ok = false;  // large-J regime assumption J_M >= exp(1e4 k^2)

    double y(std::size_t m) const { return std::exp(log_y[m]); }
    double y_top() const { return std::exp(log_y.back()); }
};

// Core constructor from ln y. Desk mode decouples J_M (and optionally M) from
// the reference constants while preserving every structural relation.
inline Subdivision build_subdivision_from_log(double log_y, double k, const ProxyConfig& cfg) {
    if (!(log_y >= 0.0)) throw std::invalid_argument("subdivision: need y >= 1");
    if (!(cfg.step_ratio > 1.0)) throw std::invalid_argument("subdivision: step_ratio must be > 1");
    if (!cfg.desk_mode && log_y < M_E)
        throw std::invalid_argument("subdivision: reference mode requires y >= e^e");

    double llog = log_y > 0.0 ? std::log(log_y) : 0.0;  // ln ln y

    Subdivision sub;
    if (cfg.desk_mode && cfg.desk_M >= 1) {
        sub.M = cfg.desk_M;
    } else {
        if (!(llog > 0.0))
            throw std::runtime_error("subdivision: window rule needs ln ln y > 0; give desk_M");
        // largest M with y_1 = y^{step^{1-M}} >= y^{1/(step*(ln ln y)^2)}
        sub.M = 2 + (long long)std::floor(2.0 * std::log(llog) / std::log(cfg.step_ratio));
        if (sub.M < 1) throw std::runtime_error("subdivision: no M >= 1 satisfies the window bound");
    }

    sub.log_y.resize(std::size_t(sub.M) + 1);
    sub.log_y[0] = 0.0;
    for (long long m = 1; m <= sub.M; ++m)
        sub.log_y[std::size_t(m)] = log_y * std::pow(cfg.step_ratio, double(m - sub.M));

    if (llog > 0.0) {
        double a1 = std::pow(cfg.step_ratio, double(1 - sub.M));
        sub.window_ok = a1 >= 1.0 / (cfg.step_ratio * llog * llog) && a1 <= 1.0 / (llog * llog);
    }

    long long JM;
    if (cfg.desk_mode) {
        if (cfg.desk_JM < 0) throw std::invalid_argument("subdivision: desk_JM must be >= 0");
        JM = cfg.desk_JM;
    } else {
        JM = (long long)std::llround(cfg.C0 / cfg.jm_divisor);
        if (JM < 1) throw std::invalid_argument("subdivision: C0/jm_divisor < 1; raise C0");
    }
    sub.jm_assumption_ok = JM > 0 && std::log(double(JM)) >= 1e4 * k * k;

    sub.J.resize(std::size_t(sub.M));
    for (long long m = 1; m <= sub.M; ++m) sub.J[std::size_t(m - 1)] = JM + (sub.M - m);
    if (!cfg.desk_mode && sub.M >= 2)
        sub.J[0] = (long long)std::ceil(std::pow(llog, cfg.j1_exponent));
    return sub;
}

inline Subdivision build_subdivision(const GlobalParams& params, const ProxyConfig& cfg) {
    return build_subdivision_from_log(std::log(params.x) / cfg.C0, params.k, cfg);
}

// ---------------------------------------------------------------------------
// Short-polynomial inequality, entirely in log space: the raw products
// overflow for reference constants.
// ---------------------------------------------------------------------------

struct ShortPolyReport {
    double lhs_log = 0.0;  // sum_m 1e4 * k * J_m * ln y_m
    double rhs_log = 0.0;  // ln x
    bool holds = false;
};

inline ShortPolyReport check_short_polynomial_logs(std::span<const double> log_y,
                                                   std::span<const double> J, double k,
                                                   double log_x) {
    if (log_y.size() != J.size() + 1)
        throw std::invalid_argument("short_polynomial: expected log_y of size M+1 and J of size M");
    KahanSum lhs;
    for (std::size_t m = 0; m < J.size(); ++m)
        lhs.add(kShortPolyFactor * k * J[m] * log_y[m + 1]);
    ShortPolyReport r;
    r.lhs_log = lhs.value();
    r.rhs_log = log_x;
    r.holds = r.lhs_log < r.rhs_log;
    return r;
}

inline ShortPolyReport check_short_polynomial(const Subdivision& sub, const GlobalParams& params,
                                              const ProxyConfig& cfg) {
    std::vector<double> J(sub.J.begin(), sub.J.end());
    (void)cfg;
    return check_short_polynomial_logs(sub.log_y, J, params.k, std::log(params.x));
}

// ---------------------------------------------------------------------------
// Truncated exponential block R_{m,l} = (sum_{j<=J} (k-1)^j reD^j / j!)^2.
// ---------------------------------------------------------------------------

inline double truncated_block(double reD, double k, long long J) {
    if (J < 0) throw std::invalid_argument("truncated_block: J must be >= 0");
    double s = truncated_exp_series((k - 1.0) * reD, J);
    return s * s;
}

// ---------------------------------------------------------------------------
// Dyadic bands I_0 = [0, b), I_n = [2^{n-1} b, 2^n b) with b = J/band_divisor.
// Half-open on the right; a value on a shared endpoint lands in the higher
// band. J = 0 degenerates to band 0 for every input.
// ---------------------------------------------------------------------------

inline long long band_index(double absReD, double J, double band_divisor) {
    if (!(absReD >= 0.0)) throw std::invalid_argument("band_index: need absReD >= 0");
    if (!(band_divisor > 0.0)) throw std::invalid_argument("band_index: need band_divisor > 0");
    double b = J / band_divisor;
    if (b <= 0.0 || absReD < b) return 0;
    return (long long)std::ilogb(absReD / b) + 1;
}

struct Band {
    long long n = 0;
    double A = 0.0;   // inf of band n (0 for n = 0)
    long long a = 0;  // majorant power 2*ceil(power_multiplier*J)
};

inline Band make_band(double absReD, double J, const ProxyConfig& cfg) {
    Band band;
    band.n = band_index(absReD, J, cfg.band_divisor);
    band.A = band.n == 0 ? 0.0 : std::exp2(double(band.n - 1)) * J / cfg.band_divisor;
    band.a = 2 * (long long)std::ceil(cfg.power_multiplier * J);
    return band;
}

// Per-scale bands for one shift at one t.
inline std::vector<Band> assign_bands(std::span<const cplx> D_per_scale,
                                      std::span<const long long> J, const ProxyConfig& cfg) {
    if (D_per_scale.size() != J.size()) throw std::invalid_argument("assign_bands: size mismatch");
    std::vector<Band> out(J.size());
    for (std::size_t m = 0; m < J.size(); ++m)
        out[m] = make_band(std::fabs(D_per_scale[m].real()), double(J[m]), cfg);
    return out;
}

// ---------------------------------------------------------------------------
// Majorant U: three cases keyed by the band.
//   n = 0:                  (sum_{j<=J} (Re D)^j / j!)^2      (no k-1 factor)
//   b <= A <= J*divisor:    e^{4A} |D/A|^a
//   A >  J*divisor:         (2 (2(k-1)A)^J / J!)^{2/(k-1)} |D/A|^a
// The middle/upper split point J*band_divisor equals 100kJ under the reference divisors.
// ---------------------------------------------------------------------------

inline double log_majorant_U(cplx D, const Band& band, double k, long long J,
                             const ProxyConfig& cfg) {
    if (band.n == 0) {
        double s = truncated_exp_series(D.real(), J);
        return s == 0.0 ? -HUGE_VAL : 2.0 * std::log(std::fabs(s));
    }
    if (!(band.A > 0.0)) throw std::logic_error("majorant_U: band n >= 1 requires A > 0");
    double log_da = std::log(std::abs(D) / band.A);
    if (band.A <= double(J) * cfg.band_divisor) return 4.0 * band.A + double(band.a) * log_da;
    double log_base = std::log(2.0) + double(J) * std::log(2.0 * (k - 1.0) * band.A) -
                      std::lgamma(double(J) + 1.0);
    return (2.0 / (k - 1.0)) * log_base + double(band.a) * log_da;
}

// Direct evaluation; representable only for small exponents.
inline double majorant_U_direct(cplx D, const Band& band, double k, long long J,
                                const ProxyConfig& cfg) {
    if (band.n == 0) {
        double s = truncated_exp_series(D.real(), J);
        return s * s;
    }
    if (!(band.A > 0.0)) throw std::logic_error("majorant_U: band n >= 1 requires A > 0");
    double da = std::abs(D) / band.A;
    if (band.A <= double(J) * cfg.band_divisor)
        return std::exp(4.0 * band.A) * std::pow(da, double(band.a));
    double base = 2.0 * std::pow(2.0 * (k - 1.0) * band.A, double(J)) / std::tgamma(double(J) + 1.0);
    return std::pow(base, 2.0 / (k - 1.0)) * std::pow(da, double(band.a));
}

// Chooses the direct path only while every exponent stays small.
inline double majorant_U(cplx D, const Band& band, double k, long long J, const ProxyConfig& cfg) {
    if (band.n == 0) return majorant_U_direct(D, band, k, J, cfg);
    double log_u = log_majorant_U(D, band, k, J, cfg);
    bool small = std::fabs(log_u) < 300.0 && double(J) * std::log(std::max(2.0 * (k - 1.0) * band.A, 2.0)) < 300.0 &&
                 J < 170;
    if (small) return majorant_U_direct(D, band, k, J, cfg);
    return std::exp(log_u);
}

// ---------------------------------------------------------------------------
// Proxy R(t) = sum_{|l| <= floor(ln y / 2)} prod_m R_{m,l}(t).
// ---------------------------------------------------------------------------

inline std::vector<BlockTerms> subdivision_block_terms(const Subdivision& sub,
                                                       const PrimeTable& table) {
    std::vector<BlockTerms> blocks;
    blocks.reserve(std::size_t(sub.M));
    for (long long m = 1; m <= sub.M; ++m)
        blocks.push_back(make_block_terms(
            primes_between(table, sub.y(std::size_t(m - 1)), sub.y(std::size_t(m)))));
    return blocks;
}

// D_{m,l}(t) for every scale and every shift in [-L, L]; out[m-1][L+l].
inline std::vector<std::vector<cplx>> proxy_families_at(double t,
                                                        const std::vector<BlockTerms>& blocks,
                                                        double log_y, long long L) {
    double inv_log_y = log_y > 0.0 ? 1.0 / log_y : 0.0;
    std::vector<std::vector<cplx>> fam;
    fam.reserve(blocks.size());
    for (const auto& terms : blocks) fam.push_back(shifted_block_at(terms, inv_log_y, -L, L, t));
    return fam;
}

inline double proxy_R_from_families(const std::vector<std::vector<cplx>>& fam,
                                    std::span<const long long> J, double k) {
    std::size_t cols = fam.empty() ? 1 : fam[0].size();
    KahanSum r;
    for (std::size_t c = 0; c < cols; ++c) {
        double prod = 1.0;
        for (std::size_t m = 0; m < fam.size(); ++m)
            prod *= truncated_block(fam[m][c].real(), k, J[m]);
        r.add(prod);
    }
    return r.value();
}

inline double proxy_R(double t, const Subdivision& sub, const GlobalParams& params,
                      const ProxyConfig& cfg, const PrimeTable& table) {
    (void)cfg;
    auto blocks = subdivision_block_terms(sub, table);
    long long L = ell_limit(sub.y_top());
    auto fam = proxy_families_at(t, blocks, sub.log_y.back(), L);
    return proxy_R_from_families(fam, sub.J, params.k);
}

// ---------------------------------------------------------------------------
// Pointwise majorant check: r = R_{m,l}(t)^{1/(k-1)} / U_{m,l}(t) must stay
// <= 1 + 2 e^{-J_m} in band 0 and <= 1 exactly in bands n >= 1.
// ---------------------------------------------------------------------------

struct MajorantCheck {
    int case_idx = 0;  // 0: band 0; 1: middle A; 2: large A
    double ratio = 0.0;
    double bound = 1.0;
};

inline MajorantCheck majorant_ratio(cplx D, double k, long long J, const ProxyConfig& cfg) {
    Band band = make_band(std::fabs(D.real()), double(J), cfg);
    MajorantCheck chk;
    if (band.n == 0)
        chk.case_idx = 0;
    else
        chk.case_idx = band.A <= double(J) * cfg.band_divisor ? 1 : 2;
    chk.bound = chk.case_idx == 0 ? 1.0 + 2.0 * std::exp(-double(J)) : 1.0;

    double s = truncated_exp_series((k - 1.0) * D.real(), J);
    if (s == 0.0) {
        chk.ratio = 0.0;
        return chk;
    }
    double log_num = (2.0 / (k - 1.0)) * std::log(std::fabs(s));
    double log_u = log_majorant_U(D, band, k, J, cfg);
    chk.ratio = std::exp(log_num - log_u);
    return chk;
}

struct MajorantReport {
    long long checks = 0;
    long long violations = 0;
    double max_violation_ratio = 0.0;  // worst raw ratio seen
    long long cases_hit[3] = {0, 0, 0};
    double max_ratio_by_case[3] = {0.0, 0.0, 0.0};
};

inline MajorantReport check_majorant_domination(std::span<const double> t_samples, const Subdivision& sub,
                                   const GlobalParams& params, const ProxyConfig& cfg,
                                   const PrimeTable& table, int threads = 1) {
    auto blocks = subdivision_block_terms(sub, table);
    long long L = ell_limit(sub.y_top());
    double log_y = sub.log_y.back();
    double k = params.k;

    constexpr std::size_t kChunk = 256;
    std::size_t n_chunks = (t_samples.size() + kChunk - 1) / kChunk;
    if (n_chunks == 0) n_chunks = 1;
    std::vector<MajorantReport> partial(n_chunks);
    parallel_chunks(n_chunks, threads, [&](std::size_t c) {
        MajorantReport rep;
        std::size_t lo = c * kChunk, hi = std::min(t_samples.size(), lo + kChunk);
        for (std::size_t i = lo; i < hi; ++i) {
            auto fam = proxy_families_at(t_samples[i], blocks, log_y, L);
            for (std::size_t m = 0; m < fam.size(); ++m) {
                for (const cplx& D : fam[m]) {
                    MajorantCheck chk = majorant_ratio(D, k, sub.J[m], cfg);
                    ++rep.checks;
                    ++rep.cases_hit[chk.case_idx];
                    rep.max_ratio_by_case[chk.case_idx] =
                        std::max(rep.max_ratio_by_case[chk.case_idx], chk.ratio);
                    rep.max_violation_ratio = std::max(rep.max_violation_ratio, chk.ratio);
                    if (chk.ratio > chk.bound) ++rep.violations;
                }
            }
        }
        partial[c] = rep;
    });

    return pairwise_reduce(std::move(partial), [](const MajorantReport& a, const MajorantReport& b) {
        MajorantReport r;
        r.checks = a.checks + b.checks;
        r.violations = a.violations + b.violations;
        r.max_violation_ratio = std::max(a.max_violation_ratio, b.max_violation_ratio);
        for (int i = 0; i < 3; ++i) {
            r.cases_hit[i] = a.cases_hit[i] + b.cases_hit[i];
            r.max_ratio_by_case[i] = std::max(a.max_ratio_by_case[i], b.max_ratio_by_case[i]);
        }
        return r;
    });
}

}  // namespace zmlab
