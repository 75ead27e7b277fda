#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>

#include "satnoma/noma.hpp"

namespace satnoma {

enum class Method {
    exact_ipsic,
    exact_psic,
    floor_ipsic,
    asymptote_psic,
    series_psic,
    monte_carlo,
    oma,
};

std::string_view to_string(Method m);

struct OutageDiagnostics {
    int series_terms_used = 0; // largest k-sum truncation index encountered
    int quadrature_nodes = 0;  // Gauss-Laguerre size actually used (0 = none)
    bool truncation_hit = false;
    bool out_of_regime = false; // small-argument approximation used outside its regime
};

struct OutageResult {
    double probability = 0.0;
    Method method = Method::exact_psic;
    OutageDiagnostics diagnostics;
    std::optional<double> ci_halfwidth; // Monte Carlo only: 95% half-width
};

// Exact ipSIC outage of user p: the ordered-CDF series integrated against
// the exponential residual-interference density, evaluated with a
// Gauss-Laguerre rule after substituting t = x / omega_i. The result is
// cross-checked against a second rule size (2n, clamped to the [2,128]
// cap, or n/2 from the top) and must agree to 1e-8 relative.
OutageResult outage_ipsic_exact(const NomaScenario& s, int p, double rho,
                                int quad_n = 64, const specfun::SeriesControl& ctl = {});

// Closed-form pSIC outage of user p. Computed both as its own alternating
// series and as ordered_cdf(M, p, psi_p*); the two must agree to 1e-10.
OutageResult outage_psic_exact(const NomaScenario& s, int p, double rho,
                               const specfun::SeriesControl& ctl = {});

// rho-independent ipSIC error floor (the high-SNR limit of the exact
// expression, with the integrand argument vartheta_p* omega_i t).
OutageResult outage_ipsic_floor(const NomaScenario& s, int p, int quad_n = 64,
                                const specfun::SeriesControl& ctl = {});

// High-SNR pSIC asymptote M!/((M-p)! p!) alpha_p^p (psi_p*)^p, which decays
// as rho^-p.
OutageResult outage_psic_asymptote(const NomaScenario& s, int p, double rho);

// Small-argument pSIC approximation: gamma(k+1, psi* beta) replaced by
// (psi* beta)^(k+1)/(k+1) inside the closed form (the beta powers cancel).
// Flags out_of_regime when psi* beta > 0.1.
OutageResult outage_psic_series_approx(const NomaScenario& s, int p, double rho,
                                       const specfun::SeriesControl& ctl = {});

// Negated least-squares slope of log P against log rho over the inclusive
// index window [window.first, window.second]. Requires >= 2 points,
// strictly increasing rho and strictly positive probabilities.
double diversity_order(std::span<const std::pair<double, double>> rho_prob,
                       std::pair<int, int> window);

// OMA baseline: equal time share, full power per slot, same ordered channel.
// The orthogonal user's target rate is the sum of the NOMA rates, so user p
// is in outage when (1/M) log2(1 + rho phi_p |h_p|^2) < sum_i R_i.
OutageResult outage_oma(const NomaScenario& s, int p, double rho,
                        const specfun::SeriesControl& ctl = {});

} // namespace satnoma
