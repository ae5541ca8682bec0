// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line each. Exits 0 only if all pass. argv[1] must be the path
// to the CLI binary (used by criterion 10).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "zmlab/zmlab.hpp"

using namespace zmlab;
namespace fs = std::filesystem;

namespace {

int g_threads = 2;

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// The tail double series, truncated at u, v <= 60, extended precision.
double tail_series_oracle(double reD, double k, long long J) {
    const long long cap = 60;
    long double z = (long double)(k - 1.0) * (long double)reD;
    std::vector<long double> pw(cap + 1);
    pw[0] = 1.0L;
    for (long long j = 1; j <= cap; ++j) pw[std::size_t(j)] = pw[std::size_t(j - 1)] * z / (long double)j;
    long double sum = 0.0L, comp = 0.0L;
    for (long long u = 0; u <= cap; ++u)
        for (long long v = 0; v <= cap; ++v) {
            if (u <= J && v <= J) continue;
            long double term = pw[std::size_t(u)] * pw[std::size_t(v)];
            long double y = term - comp;
            long double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    return double(sum);
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
    Outcome out;
    auto start = std::chrono::steady_clock::now();
    for (double x : {2.0, 8.0, 20.0}) {
        for (std::uint32_t k : {1u, 2u}) {
            for (double T : {1e5, 1e6}) {
                GlobalParams p{x, T, double(k), 2.0};
                double two_k = 2.0 * k;
                long long points = (long long)std::ceil(T / default_dt(x, two_k));
                MomentEstimate est =
                    integrate_moment(p, two_k, GridSpec::midpoint(T, points), g_threads);
                double oracle = tuple_integral_oracle(std::uint32_t(x), k, T);
                double gap = std::fabs(est.value - oracle);
                if (gap > std::max(1e-3 * oracle, 3.0 * est.error_indicator))
                    out.fail("x=" + fmt(x) + " k=" + std::to_string(k) + " T=" + fmt(T) +
                             ": gap " + fmt(gap) + " vs oracle " + fmt(oracle));
            }
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.note("12 configs in " + fmt(secs) + "s");
    if (secs > 120.0) out.fail("runtime over 2 minutes");
    return out;
}

Outcome criterion2() {
    Outcome out;
    auto start = std::chrono::steady_clock::now();
    PrimeTable table = sieve(30);
    for (std::uint32_t x : {2u, 10u, 30u}) {
        for (std::uint32_t k : {1u, 2u}) {
            MomentEstimate est = mc_moment(table, x, double(k), 100000, 20240810, g_threads);
            double exact = double(multiplicative_energy(x, k).count);
            if (std::fabs(est.value - exact) > 3.0 * est.error_indicator)
                out.fail("x=" + std::to_string(x) + " k=" + std::to_string(k) + ": mc " +
                         fmt(est.value) + " vs exact " + fmt(exact) + " (3se " +
                         fmt(3.0 * est.error_indicator) + ")");
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.note("6 configs x 1e5 samples in " + fmt(secs) + "s");
    if (secs > 60.0) out.fail("runtime over 1 minute");
    return out;
}

Outcome criterion3() {
    Outcome out;
    auto start = std::chrono::steady_clock::now();
    GlobalParams p{1e8, 1e16, 3.0, 2.0};  // y = 1e4
    ProxyConfig cfg = ProxyConfig::desk(3.0, 2.0, 3, 5);
    Subdivision sub = build_subdivision(p, cfg);
    if (sub.J != std::vector<long long>{7, 6, 5}) out.fail("J schedule is not [7,6,5]");
    if (ell_limit(p.y()) != 4) out.fail("ell range is not [-4,4]");
    PrimeTable table = sieve(10000);

    std::vector<double> ts(10000);
    for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = 1e6 * unit_double(counter_hash(31337, i, 1));
    MajorantReport rep = check_majorant_domination(ts, sub, p, cfg, table, g_threads);

    long long min_J = *std::min_element(sub.J.begin(), sub.J.end());
    if (rep.violations != 0) out.fail(std::to_string(rep.violations) + " violations");
    if (rep.max_violation_ratio > 1.0 + 2.0 * std::exp(-double(min_J)))
        out.fail("worst ratio " + fmt(rep.max_violation_ratio));
    if (rep.max_ratio_by_case[1] > 1.0 || rep.max_ratio_by_case[2] > 1.0)
        out.fail("band n>=1 ratio above 1");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.note(std::to_string(rep.checks) + " checks, worst ratio " + fmt(rep.max_violation_ratio) +
             ", cases [" + std::to_string(rep.cases_hit[0]) + "," + std::to_string(rep.cases_hit[1]) +
             "," + std::to_string(rep.cases_hit[2]) + "], " + fmt(secs) + "s");
    if (secs > 120.0) out.fail("runtime over 2 minutes");
    return out;
}

Outcome criterion4() {
    Outcome out;
    struct Cfg {
        double x, T, k, y;
        long long M, JM, points;
    };
    std::vector<Cfg> cfgs{{200, 1e5, 2.5, 30, 2, 4, 8192},  {200, 1e5, 3.0, 30, 2, 5, 8192},
                          {500, 4e5, 4.0, 50, 2, 4, 8192},  {500, 4e5, 2.5, 20, 1, 6, 16384},
                          {1000, 1e6, 3.0, 100, 3, 5, 16384}, {1000, 1e6, 4.0, 50, 2, 6, 16384}};
    PrimeTable table = sieve(2000);
    for (const Cfg& c : cfgs) {
        GlobalParams p{c.x, c.T, c.k, std::log(c.x) / std::log(c.y)};
        ProxyConfig cfg = ProxyConfig::desk(c.k, p.C0, c.M, c.JM);
        Subdivision sub = build_subdivision(p, cfg);
        HolderReport rep = run_holder(p, sub, cfg, table, GridSpec::midpoint(c.T, c.points),
                                      g_threads);
        std::string tag = "x=" + fmt(c.x) + " k=" + fmt(c.k);
        if (rep.holder_slack > 1e-9) out.fail(tag + ": slack " + fmt(rep.holder_slack));
        if (rep.lower_bound > rep.moment_2k.value * (1.0 + 1e-9))
            out.fail(tag + ": LB " + fmt(rep.lower_bound) + " above M_2k " +
                     fmt(rep.moment_2k.value));
    }
    out.note("6 configs, k in {2.5,3,4}");
    return out;
}

Outcome criterion5() {
    Outcome out;
    double reDs[5] = {-2.0, -1.0, -0.3, 0.7, 2.0};
    double ks[4] = {1.5, 2.5, 3.2, 4.0};
    long long Js[5] = {0, 3, 7, 10, 12};
    double worst_gap = 0.0;
    for (double reD : reDs)
        for (double k : ks)
            for (long long J : Js) {
                double diff_form = tail_error(reD, k, J);
                double series = tail_series_oracle(reD, k, J);
                double gap = std::fabs(diff_form - series);
                worst_gap = std::max(worst_gap, gap);
                if (gap > 1e-12)
                    out.fail("reD=" + fmt(reD) + " k=" + fmt(k) + " J=" + std::to_string(J) +
                             ": |diff-series| = " + fmt(gap));
                double z = (k - 1.0) * std::fabs(reD);
                double bound = 4.0 * std::exp(2.0 * z) * std::pow(z, double(J + 1)) /
                               std::tgamma(double(J + 2));
                double floor_ulp = 4096.0 * 1.1e-19 * std::exp(2.0 * z);
                if (std::fabs(diff_form) > bound + floor_ulp)
                    out.fail("bound exceeded at reD=" + fmt(reD) + " k=" + fmt(k) +
                             " J=" + std::to_string(J));
            }
    out.note("100 lattice points, worst identity gap " + fmt(worst_gap));
    return out;
}

Outcome criterion6() {
    Outcome out;
    PrimeTable table = sieve(100);
    double quad = shift_exp_moment_quadrature(table, 100.0, 2.0, -1, 256);
    double quad2 = shift_exp_moment_quadrature(table, 100.0, 2.0, -1, 512);
    MomentEstimate mc = shift_exp_moment_monte_carlo(table, 100.0, 2.0, 100000, 424242, -1, g_threads);
    if (std::fabs(quad - mc.value) > 3.0 * mc.error_indicator)
        out.fail("quadrature " + fmt(quad) + " vs mc " + fmt(mc.value) + " (3se " +
                 fmt(3.0 * mc.error_indicator) + ")");
    if (std::fabs(quad2 - quad) > 1e-10 * std::fabs(quad))
        out.fail("node doubling moved the value by " + fmt(std::fabs(quad2 - quad) / quad));
    if (shift_exp_moment_quadrature(table, 100.0, 1.0) != 5.0) out.fail("k=1 is not the ell count");
    out.note("quad " + fmt(quad) + ", mc " + fmt(mc.value) + " +- " + fmt(mc.error_indicator));
    return out;
}

Outcome criterion7() {
    Outcome out;
    double log_y = std::exp(10.0);  // ln ln y = 10
    for (double k : {2.5, 3.0, 5.0}) {
        for (double C0 : {1e6, 1e8, 1e10, 1e12}) {
            ProxyConfig cfg = ProxyConfig::reference(k, C0);
            Subdivision sub = build_subdivision_from_log(log_y, k, cfg);
            std::vector<double> J(sub.J.begin(), sub.J.end());
            auto rep = check_short_polynomial_logs(sub.log_y, J, k, C0 * log_y);
            if (!rep.holds) out.fail("holds=false at k=" + fmt(k) + " C0=" + fmt(C0));
            for (double& j : J) j *= 20.0;
            auto inflated = check_short_polynomial_logs(sub.log_y, J, k, C0 * log_y);
            if (inflated.holds) out.fail("20x inflation still holds at k=" + fmt(k) + " C0=" + fmt(C0));
        }
    }

    // single block: flip threshold has the closed form C0 / (1e4 k J)
    double k = 3.0, C0 = 1e6;
    double J0 = C0 / (1e5 * k);
    std::vector<double> lys{0.0, 1.0};
    auto holds_at = [&](double lambda) {
        std::vector<double> J{J0 * lambda};
        return check_short_polynomial_logs(lys, J, k, C0).holds;
    };
    double lo = 1.0, hi = 20.0;
    if (!holds_at(lo) || holds_at(hi)) {
        out.fail("bisection bracket invalid");
    } else {
        for (int i = 0; i < 60; ++i) {
            double mid = 0.5 * (lo + hi);
            (holds_at(mid) ? lo : hi) = mid;
        }
        double predicted = C0 / (1e4 * k * J0);
        if (std::fabs(lo - predicted) > 1e-6)
            out.fail("bisection " + fmt(lo) + " vs closed form " + fmt(predicted));
        out.note("flip multiplier " + fmt(lo) + " = closed form " + fmt(predicted));
    }
    return out;
}

Outcome criterion8() {
    Outcome out;
    for (long long L : {1, 10, 100, 1000}) {
        // y = e^{2L+1} realises floor(ln y / 2) = L; overflow-free core
        ShiftSumReport rep = shift_sum_check_ell(L, 2.0);
        if (L <= 100 && shift_sum_check(std::exp(double(2 * L + 1)), 2.0).sum != rep.sum)
            out.fail("y-surface and L-surface disagree at L=" + std::to_string(L));
        if (rep.ell_limit != L) out.fail("ell limit mismatch at L=" + std::to_string(L));
        if (rep.bound_ratio > 3.1533)
            out.fail("L=" + std::to_string(L) + ": ratio " + fmt(rep.bound_ratio));
        double pi_coth_pi = M_PI / std::tanh(M_PI);
        if (std::fabs(rep.series_bound - pi_coth_pi) > 1e-6)
            out.fail("series bound " + fmt(rep.series_bound) + " vs pi coth pi");
    }
    out.note("ratios bounded by pi coth(pi) = 3.15335 at L in {1,10,100,1000}");
    return out;
}

Outcome criterion9() {
    Outcome out;
    const double x = 1e5;
    GridSpec g{0.1, 0.2, 4096};

    auto t0 = std::chrono::steady_clock::now();
    auto grid_vals = zeta_sum_grid(x, g, 1);
    double t_grid = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    t0 = std::chrono::steady_clock::now();
    std::vector<cplx> direct(4096);
    for (int j = 0; j < 4096; ++j) direct[std::size_t(j)] = zeta_sum_direct(x, g.t0 + g.dt * j);
    double t_direct = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    double worst = 0.0;
    for (int j = 0; j < 4096; ++j)
        worst = std::max(worst, std::abs(grid_vals[std::size_t(j)] - direct[std::size_t(j)]) /
                                    std::abs(direct[std::size_t(j)]));
    if (worst > 1e-8) out.fail("max relative error " + fmt(worst));

    double speedup = t_direct / t_grid;
    if (speedup < 3.0) out.fail("speedup only " + fmt(speedup) + "x");

    auto four = zeta_sum_grid(x, g, 4);
    for (std::size_t j = 0; j < four.size(); ++j)
        if (four[j] != grid_vals[j]) {
            out.fail("worker counts disagree at point " + std::to_string(j));
            break;
        }
    out.note("max rel err " + fmt(worst) + ", speedup " + fmt(speedup) + "x (" + fmt(t_grid) +
             "s vs " + fmt(t_direct) + "s), 1 vs 4 workers bit-identical");
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Outcome criterion10(const char* cli) {
    Outcome out;
    if (!cli) {
        out.fail("no CLI path given on the command line");
        return out;
    }
    fs::path dir = fs::temp_directory_path() / "zmlab_acceptance";
    fs::create_directories(dir);
    auto run = [&](const std::string& args, const fs::path& outfile) {
        std::string cmd = std::string("\"") + cli + "\" " + args + " --out " + outfile.string();
        return std::system(cmd.c_str());
    };

    fs::path sweep_out = dir / "sweep.csv";
    if (run("exponent-sweep --x 50 --two-k 2 --T-list 1e3,1e4,1e5", sweep_out) != 0)
        out.fail("exponent-sweep failed");
    std::string sweep = slurp(sweep_out);
    if (sweep.find("non-binding") == std::string::npos) out.fail("sweep lacks non-binding warning");
    if (sweep.find("slope") == std::string::npos) out.fail("sweep lacks slope column");
    if (sweep.find("ln_ln_L") == std::string::npos) out.fail("sweep lacks ln_ln_L column");

    fs::path lb_out = dir / "lb.csv";
    if (run("lower-bound --x 200 --T 1e5 --k 3 --c0 1.558 --desk-m 2 --desk-jm 4 --points 2048",
            lb_out) != 0)
        out.fail("lower-bound failed");
    std::string lb = slurp(lb_out);
    if (lb.find("I_p_shape_ratio") == std::string::npos)
        out.fail("lower-bound lacks the proxy-power shape-ratio column");
    if (lb.find("non-binding") == std::string::npos) out.fail("lower-bound lacks non-binding label");

    fs::path corr_out = dir / "corr.csv";
    if (run("correlation --x 100 --T 1e4 --k 2 --c0 1.54 --desk-m 1 --desk-jm 1 --ell 0 "
            "--ell-prime 2 --points 1024",
            corr_out) != 0)
        out.fail("correlation failed");
    std::string corr = slurp(corr_out);
    for (const char* col : {"shape_log", "log_ratio", "ratio", "non-binding"})
        if (corr.find(col) == std::string::npos)
            out.fail(std::string("correlation output lacks ") + col);
    out.note("exponent-sweep, lower-bound and correlation probe schemas verified");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    const char* cli = argc > 1 ? argv[1] : nullptr;
    struct Entry {
        int id;
        const char* name;
        std::function<Outcome()> fn;
    };
    std::vector<Entry> entries{
        {1, "oracle equivalence, zeta side", criterion1},
        {2, "oracle equivalence, RMF side", criterion2},
        {3, "majorant pointwise suite", criterion3},
        {4, "discrete Hoelder invariant", criterion4},
        {5, "tail identity and explicit bound", criterion5},
        {6, "factorized expectation quadrature", criterion6},
        {7, "short-polynomial log-space check", criterion7},
        {8, "shift-sum bound", criterion8},
        {9, "grid evaluation performance", criterion9},
        {10, "probe reports present and labeled", [cli] { return criterion10(cli); }},
    };

    bool all = true;
    for (auto& e : entries) {
        Outcome out;
        try {
            out = e.fn();
        } catch (const std::exception& ex) {
            out.fail(std::string("exception: ") + ex.what());
        }
        all = all && out.pass;
        std::printf("[%s] criterion %2d: %s%s%s\n", out.pass ? "PASS" : "FAIL", e.id, e.name,
                    out.detail.empty() ? "" : " -- ", out.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%s\n", all ? "acceptance: all criteria passed" : "acceptance: FAILURES present");
    return all ? 0 : 1;
}
