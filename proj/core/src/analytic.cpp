#include "satnoma/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "satnoma/errors.hpp"

namespace satnoma {

namespace {

double clamp_probability(double p, const char* what) {
    constexpr double slack = 1e-9;
    if (p < -slack || p > 1.0 + slack)
        throw NumericalError(std::string(what) + ": probability " + std::to_string(p) +
                             " outside [0,1] beyond the allowed slack");
    return std::clamp(p, 0.0, 1.0);
}

// The high-SNR approximations are unbounded above as rho -> 0; reported as
// probabilities they saturate at 1 instead of tripping the clamp contract.
double saturate_probability(double p) { return std::clamp(p, 0.0, 1.0); }

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
    return std::round(r);
}

double theta_coef(int M, int p) {
    // M! / ((M-p)! (p-1)!)
    double t = 1.0;
    for (int i = M - p + 1; i <= M; ++i) t *= i;
    for (int i = 2; i <= p - 1; ++i) t /= i;
    return t;
}

void require_psic(const NomaScenario& s, const char* what) {
    if (s.sic().kind != SicKind::psic)
        throw ValidationError(std::string(what) + ": scenario must be configured for pSIC");
}

void require_ipsic(const NomaScenario& s, const char* what) {
    if (s.sic().kind != SicKind::ipsic)
        throw ValidationError(std::string(what) + ": scenario must be configured for ipSIC");
}

// The ordered-CDF expansion integrated against the unit exponential weight:
// per node, the unordered CDF is evaluated once at arg(t) and its powers
// feed every term of the alternating l-sum.
template <typename ArgFn>
double laguerre_outage(const NomaScenario& s, int p, ArgFn&& arg_of_t, int quad_n,
                       const specfun::SeriesControl& ctl, OutageDiagnostics& diag) {
    const int M = s.user_count();
    const auto& rule = specfun::gauss_laguerre_rule(quad_n);
    const DerivedConstants dc = derive(s.user(p).fading);
    const double m = s.user(p).fading.m;
    std::vector<long double> integral(M - p + 1, 0.0L);
    specfun::SeriesStatus st;
    for (int i = 0; i < rule.size(); ++i) {
        const double f = cdf_gain(dc, m, arg_of_t(rule.node[i]), ctl, &st);
        diag.series_terms_used = std::max(diag.series_terms_used, st.terms_used);
        diag.truncation_hit = diag.truncation_hit || st.cap_hit;
        long double fpow = 1.0L;
        for (int j = 0; j < p; ++j) fpow *= f;
        for (int l = 0; l <= M - p; ++l) {
            integral[l] += rule.weight[i] * fpow;
            fpow *= f;
        }
    }
    // Alternating outer sum, accumulated in extended precision; the direct
    // binomial identity of the ordered CDF is enforced by the pSIC path and
    // its tests, this path shares the same coefficients.
    long double sum = 0.0L;
    for (int l = 0; l <= M - p; ++l) {
        const double sign = (l % 2 == 0) ? 1.0 : -1.0;
        sum += static_cast<long double>(sign * binomial(M - p, l) / (p + l)) * integral[l];
    }
    return static_cast<double>(theta_coef(M, p) * sum);
}

int reference_quad_n(int quad_n) {
    return (2 * quad_n <= 128) ? 2 * quad_n : std::max(quad_n / 2, 2);
}

} // namespace

std::string_view to_string(Method m) {
    switch (m) {
        case Method::exact_ipsic: return "exact_ipsic";
        case Method::exact_psic: return "exact_psic";
        case Method::floor_ipsic: return "floor_ipsic";
        case Method::asymptote_psic: return "asymptote_psic";
        case Method::series_psic: return "series_psic";
        case Method::monte_carlo: return "monte_carlo";
        case Method::oma: return "oma";
    }
    return "unknown";
}

OutageResult outage_ipsic_exact(const NomaScenario& s, int p, double rho, int quad_n,
                                const specfun::SeriesControl& ctl) {
    require_ipsic(s, "outage_ipsic_exact");
    if (quad_n < 2 || quad_n > 128)
        throw ValidationError("outage_ipsic_exact: quad_n must be in [2, 128]");
    const double ps = psi_star(s, p, rho);
    const double eta = s.residual_eta(p);
    const double omega_i = s.sic().omega_i;
    const auto arg = [&](double t) { return ps * (eta * rho * omega_i * t + 1.0); };

    OutageResult out;
    out.method = Method::exact_ipsic;
    const int ref_n = reference_quad_n(quad_n);
    OutageDiagnostics scratch;
    const double coarse = laguerre_outage(s, p, arg, std::min(quad_n, ref_n), ctl, scratch);
    const double fine = laguerre_outage(s, p, arg, std::max(quad_n, ref_n), ctl, out.diagnostics);
    out.diagnostics.quadrature_nodes = std::max(quad_n, ref_n);
    if (std::fabs(fine - coarse) > 1e-8 * std::max(std::fabs(fine), 1e-300))
        throw NumericalError("outage_ipsic_exact: quadrature not converged between n=" +
                             std::to_string(std::min(quad_n, ref_n)) + " and n=" +
                             std::to_string(std::max(quad_n, ref_n)));
    out.probability = clamp_probability(fine, "outage_ipsic_exact");
    return out;
}

OutageResult outage_psic_exact(const NomaScenario& s, int p, double rho,
                               const specfun::SeriesControl& ctl) {
    require_psic(s, "outage_psic_exact");
    const int M = s.user_count();
    const double ps = psi_star(s, p, rho);
    OutageResult out;
    out.method = Method::exact_psic;
    specfun::SeriesStatus st;
    const double f = cdf_gain(s.user(p).fading, ps, ctl, &st);
    out.diagnostics.series_terms_used = st.terms_used;
    out.diagnostics.truncation_hit = st.cap_hit;
    long double sum = 0.0L;
    long double fpow = 1.0L;
    for (int j = 0; j < p; ++j) fpow *= f;
    for (int l = 0; l <= M - p; ++l) {
        const double sign = (l % 2 == 0) ? 1.0 : -1.0;
        sum += static_cast<long double>(sign * binomial(M - p, l) / (p + l)) * fpow;
        fpow *= f;
    }
    const double series_form = static_cast<double>(theta_coef(M, p) * sum);
    const double ordered_form = ordered_cdf(s.user(p).fading, M, p, ps, ctl);
    if (std::fabs(series_form - ordered_form) > 1e-10 * std::max(ordered_form, 1e-300) &&
        std::fabs(series_form - ordered_form) > 1e-12)
        throw NumericalError("outage_psic_exact: series and ordered-CDF forms disagree");
    out.probability = clamp_probability(series_form, "outage_psic_exact");
    return out;
}

OutageResult outage_ipsic_floor(const NomaScenario& s, int p, int quad_n,
                                const specfun::SeriesControl& ctl) {
    require_ipsic(s, "outage_ipsic_floor");
    if (quad_n < 2 || quad_n > 128)
        throw ValidationError("outage_ipsic_floor: quad_n must be in [2, 128]");
    OutageResult out;
    out.method = Method::floor_ipsic;
    const double eta = s.residual_eta(p);
    if (eta == 0.0) {
        // No SIC at the weakest user: no residual term and no floor.
        out.probability = 0.0;
        return out;
    }
    const double theta = vartheta_star(s, p);
    const double omega_i = s.sic().omega_i;
    const auto arg = [&](double t) { return theta * omega_i * t; };
    const int ref_n = reference_quad_n(quad_n);
    OutageDiagnostics scratch;
    const double coarse = laguerre_outage(s, p, arg, std::min(quad_n, ref_n), ctl, scratch);
    const double fine = laguerre_outage(s, p, arg, std::max(quad_n, ref_n), ctl, out.diagnostics);
    out.diagnostics.quadrature_nodes = std::max(quad_n, ref_n);
    if (std::fabs(fine - coarse) > 1e-8 * std::max(std::fabs(fine), 1e-300))
        throw NumericalError("outage_ipsic_floor: quadrature not converged");
    out.probability = clamp_probability(fine, "outage_ipsic_floor");
    return out;
}

OutageResult outage_psic_asymptote(const NomaScenario& s, int p, double rho) {
    require_psic(s, "outage_psic_asymptote");
    const int M = s.user_count();
    const double ps = psi_star(s, p, rho);
    const double alpha = derive(s.user(p).fading).alpha;
    // M!/((M-p)! p!) = Theta_p / p
    const double coef = theta_coef(M, p) / p;
    OutageResult out;
    out.method = Method::asymptote_psic;
    out.probability = saturate_probability(coef * std::pow(alpha * ps, p));
    return out;
}

OutageResult outage_psic_series_approx(const NomaScenario& s, int p, double rho,
                                       const specfun::SeriesControl& ctl) {
    require_psic(s, "outage_psic_series_approx");
    const int M = s.user_count();
    const double ps = psi_star(s, p, rho);
    const DerivedConstants dc = derive(s.user(p).fading);
    const double m = s.user(p).fading.m;
    OutageResult out;
    out.method = Method::series_psic;
    out.diagnostics.out_of_regime = ps * dc.beta > 0.1;

    // Inner sum with gamma(k+1, psi* beta) ~ (psi* beta)^(k+1)/(k+1): the
    // beta^(k+1) denominators cancel, leaving
    //   sum_k (m)_k delta^k psi*^(k+1) / ((k!)^2 (k+1))
    double term = ps;
    double inner = 0.0;
    int k = 0;
    bool cap = false;
    for (;;) {
        inner += term;
        if (term < ctl.rel_tol * inner && (m + k) * dc.delta * ps < (k + 1.0)) {
            ++k;
            break;
        }
        if (k + 1 >= ctl.max_terms) {
            ++k;
            cap = true;
            break;
        }
        term *= (m + k) * dc.delta * ps / ((k + 1.0) * (k + 2.0));
        ++k;
    }
    out.diagnostics.series_terms_used = k;
    out.diagnostics.truncation_hit = cap;
    if (cap)
        throw NumericalError("outage_psic_series_approx: series cap hit before tolerance");

    long double sum = 0.0L;
    long double ipow = 1.0L;
    const long double alpha_inner = static_cast<long double>(dc.alpha) * inner;
    for (int j = 0; j < p; ++j) ipow *= alpha_inner;
    for (int l = 0; l <= M - p; ++l) {
        const double sign = (l % 2 == 0) ? 1.0 : -1.0;
        sum += static_cast<long double>(sign * binomial(M - p, l) / (p + l)) * ipow;
        ipow *= alpha_inner;
    }
    out.probability = saturate_probability(static_cast<double>(theta_coef(M, p) * sum));
    return out;
}

double diversity_order(std::span<const std::pair<double, double>> rho_prob,
                       std::pair<int, int> window) {
    const int lo = window.first;
    const int hi = window.second;
    if (lo < 0 || hi >= static_cast<int>(rho_prob.size()) || hi - lo < 1)
        throw ValidationError("diversity_order: window must hold at least 2 points");
    double mean_x = 0.0, mean_y = 0.0;
    const int n = hi - lo + 1;
    for (int i = lo; i <= hi; ++i) {
        if (i > lo && !(rho_prob[i].first > rho_prob[i - 1].first))
            throw ValidationError("diversity_order: rho must be strictly increasing");
        if (!(rho_prob[i].second > 0.0))
            throw ValidationError("diversity_order: probabilities must be > 0");
        mean_x += std::log(rho_prob[i].first);
        mean_y += std::log(rho_prob[i].second);
    }
    mean_x /= n;
    mean_y /= n;
    double sxx = 0.0, sxy = 0.0;
    for (int i = lo; i <= hi; ++i) {
        const double dx = std::log(rho_prob[i].first) - mean_x;
        const double dy = std::log(rho_prob[i].second) - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
    }
    return -sxy / sxx;
}

OutageResult outage_oma(const NomaScenario& s, int p, double rho,
                        const specfun::SeriesControl& ctl) {
    const int M = s.user_count();
    double rate_sum = 0.0;
    for (int i = 1; i <= M; ++i) rate_sum += s.user(i).rate_bpcu;
    const double threshold = std::exp2(M * rate_sum) - 1.0;
    OutageResult out;
    out.method = Method::oma;
    specfun::SeriesStatus st;
    out.probability = ordered_cdf(s.user(p).fading, M, p, threshold / (rho * s.gain(p)), ctl, &st);
    out.diagnostics.series_terms_used = st.terms_used;
    out.diagnostics.truncation_hit = st.cap_hit;
    return out;
}

} // namespace satnoma
