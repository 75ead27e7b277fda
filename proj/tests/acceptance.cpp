// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Runtime target is a couple of minutes on a laptop; the Monte Carlo
// comparisons parallelize over hardware threads.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "satnoma/montecarlo.hpp"
#include "satnoma/specfun.hpp"
#include "satnoma/sweep.hpp"

using namespace satnoma;

namespace {

int g_failures = 0;

void report(int index, const char* title, bool pass, const std::string& detail) {
    std::printf("[%s] %2d. %s%s%s\n", pass ? "PASS" : "FAIL", index, title,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++g_failures;
}

double db(double v) { return std::pow(10.0, v / 10.0); }

NomaScenario standard_scenario(SicMode sic, const char* preset,
                               std::vector<double> angles = {0.1, 0.1, 0.1}) {
    const double alloc[] = {0.5, 0.4, 0.1};
    const double rates[] = {0.1, 0.5, 1.0};
    std::vector<NomaUser> users;
    for (int i = 0; i < 3; ++i) {
        NomaUser u;
        u.alloc = alloc[i];
        u.rate_bpcu = rates[i];
        u.geometry.angle_deg = angles[i];
        u.fading = ShadowedRicianParams::preset(preset);
        users.push_back(u);
    }
    return NomaScenario::validated(std::move(users), sic, SnrReference::boresight);
}

// |analytic - mc| within 3 standard errors; the SE uses whichever of the
// two estimates is larger so both tiny- and zero-count cells are treated
// fairly.
bool within_3se(double analytic, double mc, long long trials) {
    const double var = std::max(analytic * (1.0 - analytic), mc * (1.0 - mc));
    const double se = std::sqrt(std::max(var, 0.0) / static_cast<double>(trials));
    return std::fabs(analytic - mc) <= 3.0 * se;
}

void criterion_1_analytic_vs_mc() {
    const long long trials = 1000000;
    bool pass = true;
    std::ostringstream detail;
    double worst = 0.0;
    for (const char* preset : {"fhs", "as", "ils"}) {
        for (bool ipsic : {false, true}) {
            const auto scn = standard_scenario(
                ipsic ? SicMode::ipsic(1e-3) : SicMode::psic(), preset);
            for (int p = 1; p <= 3; ++p) {
                for (double snr : {10.0, 20.0, 30.0}) {
                    const double rho = db(snr);
                    const double analytic =
                        ipsic ? outage_ipsic_exact(scn, p, rho).probability
                              : outage_psic_exact(scn, p, rho).probability;
                    SimConfig sim{trials, 0xACCE97ull, 0};
                    const double mc = simulate_outage(scn, p, rho, sim).probability;
                    const double se = std::sqrt(
                        std::max(std::max(analytic * (1 - analytic), mc * (1 - mc)), 0.0) /
                        trials);
                    if (se > 0.0) worst = std::max(worst, std::fabs(analytic - mc) / se);
                    if (!within_3se(analytic, mc, trials)) {
                        pass = false;
                        detail << preset << (ipsic ? "/ipsic" : "/psic") << " p=" << p << " "
                               << snr << "dB: analytic=" << analytic << " mc=" << mc << "; ";
                    }
                }
            }
        }
    }
    std::ostringstream d;
    d << "54 cells, worst deviation " << std::fixed << worst << " SE" << detail.str();
    report(1, "analytic vs Monte Carlo within 3 standard errors (10^6 trials)", pass, d.str());
}

void criterion_2_diversity_orders() {
    bool pass = true;
    std::ostringstream detail;
    const auto psic = standard_scenario(SicMode::psic(), "fhs");
    for (int p = 1; p <= 3; ++p) {
        std::vector<std::pair<double, double>> curve;
        for (double snr = 40.0; snr <= 60.0; snr += 5.0)
            curve.push_back({db(snr), outage_psic_exact(psic, p, db(snr)).probability});
        const double d = diversity_order(curve, {0, static_cast<int>(curve.size()) - 1});
        detail << "pSIC p=" << p << ": " << d << "  ";
        if (std::fabs(d - p) > 0.15) pass = false;
    }
    const auto ipsic = standard_scenario(SicMode::ipsic(1e-3), "fhs");
    for (int p = 2; p <= 3; ++p) { // user 1 performs no SIC: no residual, no floor
        std::vector<std::pair<double, double>> curve;
        for (double snr = 50.0; snr <= 70.0; snr += 5.0)
            curve.push_back({db(snr), outage_ipsic_exact(ipsic, p, db(snr)).probability});
        const double d = diversity_order(curve, {0, static_cast<int>(curve.size()) - 1});
        detail << "ipSIC p=" << p << ": " << d << "  ";
        if (std::fabs(d) > 0.1) pass = false;
    }
    report(2, "diversity orders (pSIC slope = p +-0.15, ipSIC slope = 0 +-0.1)", pass,
           detail.str());
}

void criterion_3_error_floor() {
    bool pass = true;
    std::ostringstream detail;
    for (double oi_db : {-40.0, -30.0, -20.0}) {
        const auto scn = standard_scenario(SicMode::ipsic(db(oi_db)), "fhs");
        for (int p = 2; p <= 3; ++p) { // SIC-performing users carry the floor
            const double exact = outage_ipsic_exact(scn, p, db(80)).probability;
            const double floor = outage_ipsic_floor(scn, p).probability;
            const double rel = std::fabs(exact - floor) / floor;
            if (rel > 0.005) {
                pass = false;
                detail << "omega_i=" << oi_db << "dB p=" << p << ": rel=" << rel << "; ";
            }
        }
    }
    report(3, "ipSIC exact at 80 dB matches the error floor within 0.5%", pass, detail.str());
}

void criterion_4_shadowing_order() {
    bool pass = true;
    std::ostringstream detail;
    const std::vector<double> angles = {0.1, 0.2, 0.3};
    const auto fhs = standard_scenario(SicMode::psic(), "fhs", angles);
    const auto as = standard_scenario(SicMode::psic(), "as", angles);
    const auto ils = standard_scenario(SicMode::psic(), "ils", angles);
    for (double snr = 0.0; snr <= 40.0; snr += 5.0) {
        for (int p = 1; p <= 3; ++p) {
            const double pf = outage_psic_exact(fhs, p, db(snr)).probability;
            const double pa = outage_psic_exact(as, p, db(snr)).probability;
            const double pi = outage_psic_exact(ils, p, db(snr)).probability;
            const bool ordered = pf >= pa && pa >= pi;
            const bool strict = pf <= 1e-6 || (pf > pa && pa > pi);
            if (!(ordered && strict)) {
                pass = false;
                detail << snr << "dB p=" << p << ": " << pf << "/" << pa << "/" << pi << "; ";
            }
        }
    }
    report(4, "shadowing order FHS >= AS >= ILS on the 0..40 dB grid (strict above 1e-6)", pass,
           detail.str());
}

void criterion_5_noma_vs_oma() {
    bool pass = true;
    std::ostringstream detail;
    const auto scn = standard_scenario(SicMode::psic(), "fhs");
    for (double snr = 20.0; snr <= 50.0; snr += 5.0) {
        for (int p = 1; p <= 3; ++p) {
            const double noma = outage_psic_exact(scn, p, db(snr)).probability;
            const double oma = outage_oma(scn, p, db(snr)).probability;
            if (!(noma <= oma)) {
                pass = false;
                detail << snr << "dB p=" << p << ": noma=" << noma << " oma=" << oma << "; ";
            }
        }
    }
    report(5, "pSIC NOMA outage <= OMA baseline for every user at rho >= 20 dB", pass,
           detail.str());
}

void criterion_6_angle_degradation() {
    bool pass = true;
    std::ostringstream detail;
    std::vector<NomaScenario> runs;
    for (double angle : {0.1, 0.2, 0.3})
        runs.push_back(standard_scenario(SicMode::psic(), "fhs", {angle, angle, angle}));
    for (double snr = 0.0; snr <= 40.0; snr += 5.0) {
        for (int p = 1; p <= 3; ++p) {
            double prev = -1.0;
            for (const auto& scn : runs) {
                const double v = outage_psic_exact(scn, p, db(snr)).probability;
                if (v < prev) {
                    pass = false;
                    detail << snr << "dB p=" << p << "; ";
                }
                prev = v;
            }
        }
    }
    report(6, "outage nondecreasing in the off-boresight angle {0.1, 0.2, 0.3} deg", pass,
           detail.str());
}

void criterion_7_channel_law() {
    bool pass = true;
    std::ostringstream detail;
    std::mt19937_64 rng(0xC4A22E1ull);
    for (const char* preset : {"fhs", "as", "ils"}) {
        const auto params = ShadowedRicianParams::preset(preset);
        std::vector<double> draws(100000);
        for (auto& d : draws) d = sample_gain(params, rng);
        std::sort(draws.begin(), draws.end());
        double ks = 0.0;
        const double n = static_cast<double>(draws.size());
        for (std::size_t i = 0; i < draws.size(); ++i) {
            const double f = cdf_gain(params, draws[i]);
            ks = std::max(ks, std::fabs(f - i / n));
            ks = std::max(ks, std::fabs((i + 1) / n - f));
        }
        const double band = 1.358 / std::sqrt(n); // 95% Kolmogorov
        double mean = 0.0;
        for (int i = 0; i < 1000000; ++i) mean += sample_gain(params, rng);
        mean /= 1e6;
        const double expected = 2.0 * params.b + params.omega;
        detail << preset << ": KS=" << ks << " (<" << band << "), mean err "
               << std::fabs(mean - expected) / expected << "  ";
        if (ks >= band || std::fabs(mean - expected) > 0.01 * expected) pass = false;
    }
    report(7, "sampler matches the gain law (95% KS band, mean within 1%)", pass, detail.str());
}

void criterion_8_dual_forms() {
    bool pass = true;
    std::ostringstream detail;
    // closed form as its own series vs the ordered-CDF composition
    const auto psic = standard_scenario(SicMode::psic(), "fhs");
    for (int p = 1; p <= 3; ++p) {
        for (double snr : {5.0, 15.0, 25.0, 45.0}) {
            const double ps = psi_star(psic, p, db(snr));
            const double series = outage_psic_exact(psic, p, db(snr)).probability;
            const double composed = ordered_cdf(psic.user(p).fading, 3, p, ps);
            if (std::fabs(series - composed) > 1e-10 * std::max(composed, 1e-30)) {
                pass = false;
                detail << "series/ordered mismatch p=" << p << " " << snr << "dB; ";
            }
        }
    }
    // chain form vs threshold form, shared seeds, trial-exact
    for (bool ipsic : {false, true}) {
        const auto scn =
            standard_scenario(ipsic ? SicMode::ipsic(1e-3) : SicMode::psic(), "fhs");
        SimConfig sim{100000, 0xD0A1ull, 0};
        for (int p = 1; p <= 3; ++p) {
            const double a = simulate_outage(scn, p, db(15), sim).probability;
            const double b = simulate_outage_threshold_form(scn, p, db(15), sim).probability;
            if (a != b) {
                pass = false;
                detail << (ipsic ? "ipsic" : "psic") << " p=" << p << ": " << a << " vs " << b
                       << "; ";
            }
        }
    }
    report(8, "dual forms: closed-form series == ordered CDF (1e-10), chain == threshold "
              "Monte Carlo (trial-exact)", pass, detail.str());
}

void criterion_9_special_functions() {
    bool pass = true;
    std::ostringstream detail;
    // incomplete gamma recurrence
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ua(0.5, 25.0), ux(0.0, 40.0);
    for (int i = 0; i < 2000; ++i) {
        const double a = ua(rng), x = ux(rng);
        const double lhs = specfun::lower_incomplete_gamma(a + 1.0, x);
        const double rhs =
            a * specfun::lower_incomplete_gamma(a, x) - std::pow(x, a) * std::exp(-x);
        const double scale = std::max(std::fabs(lhs), 1e-300);
        if (std::fabs(lhs - rhs) > 1e-10 * scale) {
            pass = false;
            detail << "gamma recurrence a=" << a << " x=" << x << "; ";
            break;
        }
    }
    // Gauss-Laguerre polynomial exactness
    for (int n : {2, 8, 32, 64}) {
        const auto& rule = specfun::gauss_laguerre_rule(n);
        for (int k = 0; k <= std::min(2 * n - 1, 30); ++k) {
            long double moment = 0.0L;
            for (int i = 0; i < rule.size(); ++i)
                moment += static_cast<long double>(rule.weight[i]) *
                          std::pow(static_cast<long double>(rule.node[i]), k);
            const double expected = std::exp(std::lgamma(k + 1.0));
            if (std::fabs(static_cast<double>(moment) - expected) > 1e-11 * expected) {
                pass = false;
                detail << "GL n=" << n << " k=" << k << "; ";
            }
        }
    }
    // Bessel series agreement: ascending series in long double
    for (int order : {1, 3}) {
        for (double u = 0.0; u <= 20.0; u += 0.05) {
            long double half = static_cast<long double>(u) / 2.0L, term = 1.0L;
            for (int i = 1; i <= order; ++i) term *= half / i;
            long double sum = 0.0L;
            for (int k = 0; k < 200; ++k) {
                sum += term;
                term *= -(half * half) / ((k + 1.0L) * (k + 1.0L + order));
            }
            if (std::fabs(specfun::bessel_j(order, u) - static_cast<double>(sum)) > 1e-10) {
                pass = false;
                detail << "bessel J" << order << "(" << u << "); ";
            }
        }
    }
    // 1F1(1;1;z) = e^z
    for (double z = 0.0; z <= 30.0; z += 0.5) {
        if (std::fabs(specfun::kummer_1f1(1.0, 1.0, z) - std::exp(z)) > 1e-12 * std::exp(z)) {
            pass = false;
            detail << "1F1(1;1;" << z << "); ";
        }
    }
    report(9, "special-function suite (recurrence, quadrature exactness, Bessel, Kummer)", pass,
           detail.str());
}

void criterion_10_reproducibility() {
#ifndef SATNOMA_CLI_PATH
    report(10, "byte-identical fig1 CSV across reruns", false, "CLI path not configured");
    return;
#else
    const std::string cli = SATNOMA_CLI_PATH;
    const std::string base = "acceptance_fig1";
    auto run = [&](const std::string& out) {
        const std::string cmd = "\"" + cli + "\" --preset fig1 --trials 20000 --seed 99 --out " +
                                out + " >/dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    const int rc1 = run(base + "_a.csv");
    const int rc2 = run(base + "_b.csv");
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string a = slurp(base + "_a.csv");
    const std::string b = slurp(base + "_b.csv");
    std::remove((base + "_a.csv").c_str());
    std::remove((base + "_b.csv").c_str());
    const bool pass = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
    std::ostringstream detail;
    detail << a.size() << " bytes" << (pass ? "" : " (mismatch or run failure)");
    report(10, "byte-identical fig1 CSV across reruns of the CLI", pass, detail.str());
#endif
}

} // namespace

int main() {
    criterion_1_analytic_vs_mc();
    criterion_2_diversity_orders();
    criterion_3_error_floor();
    criterion_4_shadowing_order();
    criterion_5_noma_vs_oma();
    criterion_6_angle_degradation();
    criterion_7_channel_law();
    criterion_8_dual_forms();
    criterion_9_special_functions();
    criterion_10_reproducibility();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
