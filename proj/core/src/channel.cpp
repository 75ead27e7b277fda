#include "satnoma/channel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

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

// Exact binomial coefficient for the small arguments used here.
double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
    return std::round(r);
}

} // namespace

ShadowedRicianParams ShadowedRicianParams::preset(std::string_view name) {
    std::string key(name);
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (key == "fhs") return {0.063, 0.739, 8.97e-4};
    if (key == "as") return {0.126, 10.1, 0.835};
    if (key == "ils") return {0.158, 19.4, 1.29};
    throw ValidationError("unknown fading preset '" + std::string(name) + "' (expected fhs|as|ils)");
}

void ShadowedRicianParams::validate() const {
    if (!(b > 0.0)) throw ValidationError("fading: b must be > 0");
    if (!(m > 0.0)) throw ValidationError("fading: m must be > 0");
    if (omega < 0.0) throw ValidationError("fading: omega must be >= 0");
}

DerivedConstants derive(const ShadowedRicianParams& params) {
    params.validate();
    const double two_b = 2.0 * params.b;
    const double denom = two_b * params.m + params.omega;
    DerivedConstants dc;
    dc.beta = 1.0 / two_b;
    dc.delta = (params.omega / two_b) / denom;
    // The m-th power computed in log space; m can be ~20 and the base < 1.
    dc.alpha = std::exp(params.m * std::log(two_b * params.m / denom)) / two_b;
    return dc;
}

double cdf_gain(const DerivedConstants& dc, double m, double x,
                const specfun::SeriesControl& ctl, specfun::SeriesStatus* status) {
    if (x < 0.0) throw NumericalError("cdf_gain: x must be >= 0");
    if (status) *status = {};
    if (x == 0.0) return 0.0;

    const double z = x * dc.beta;
    const double r = dc.delta / dc.beta; // < 1 for valid parameters
    // F(x) = (alpha/beta) sum_k c_k P(k+1, z) with
    //   c_k = (m)_k r^k / k!   and   P the regularized lower gamma.
    // Both factors update incrementally:
    //   c_{k+1} = c_k (m+k) r / (k+1)
    //   P(k+2, z) = P(k+1, z) - g_{k+1},  g_k = z^k e^-z / k!
    double coeff = 1.0;
    double g = std::exp(-z);
    double p_reg = -std::expm1(-z); // P(1, z)
    double sum = 0.0;
    int k = 0;
    bool cap = false;
    for (;;) {
        const double term = coeff * p_reg;
        sum += term;
        const bool past_coeff_peak = (m + k) * r < (k + 1.0);
        if (past_coeff_peak && term < ctl.rel_tol * sum) {
            ++k;
            break;
        }
        if (k + 1 >= ctl.max_terms) {
            ++k;
            cap = true;
            break;
        }
        coeff *= (m + k) * r / (k + 1.0);
        g *= z / (k + 1.0);
        p_reg -= g;
        if (p_reg < 0.0) p_reg = 0.0; // guard against rounding below zero
        ++k;
    }
    if (status) {
        status->terms_used = k;
        status->cap_hit = cap;
    }
    if (cap && !status)
        throw NumericalError("cdf_gain: series cap hit before tolerance (x=" + std::to_string(x) + ")");
    return clamp_probability(dc.alpha / dc.beta * sum, "cdf_gain");
}

double cdf_gain(const ShadowedRicianParams& params, double x,
                const specfun::SeriesControl& ctl, specfun::SeriesStatus* status) {
    return cdf_gain(derive(params), params.m, x, ctl, status);
}

double pdf_gain(const ShadowedRicianParams& params, double x,
                const specfun::SeriesControl& ctl, specfun::SeriesStatus* status) {
    if (x < 0.0) throw NumericalError("pdf_gain: x must be >= 0");
    const DerivedConstants dc = derive(params);
    const double hyp = specfun::kummer_1f1(params.m, 1.0, x * dc.delta, ctl, status);
    return dc.alpha * std::exp(-x * dc.beta) * hyp;
}

double sample_gain(const ShadowedRicianParams& params, std::mt19937_64& rng) {
    double los_amplitude = 0.0;
    if (params.omega > 0.0) {
        std::gamma_distribution<double> los_power(params.m, params.omega / params.m);
        los_amplitude = std::sqrt(los_power(rng));
    }
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> scatter(0.0, std::sqrt(params.b));
    const double theta = phase(rng);
    const double re = los_amplitude * std::cos(theta) + scatter(rng);
    const double im = los_amplitude * std::sin(theta) + scatter(rng);
    return re * re + im * im;
}

std::vector<double> sample_ordered_gains(const ShadowedRicianParams& params,
                                         int user_count, std::mt19937_64& rng) {
    if (user_count < 1) throw ValidationError("sample_ordered_gains: user_count must be >= 1");
    std::vector<double> gains(user_count);
    for (auto& g : gains) g = sample_gain(params, rng);
    std::stable_sort(gains.begin(), gains.end());
    return gains;
}

double ordered_from_unordered(double unordered_cdf, int user_count, int position) {
    const int M = user_count;
    const int p = position;
    if (p < 1 || p > M) throw ValidationError("ordered CDF: position must be in [1, M]");
    // Theta_p = M! / ((p-1)! (M-p)!)
    double theta = 1.0;
    for (int i = M - p + 1; i <= M; ++i) theta *= i;
    theta /= std::tgamma(p); // (p-1)!
    long double sum = 0.0L;
    long double fpow = 1.0L;
    for (int i = 0; i < p; ++i) fpow *= unordered_cdf;
    for (int l = 0; l <= M - p; ++l) {
        const double sign = (l % 2 == 0) ? 1.0 : -1.0;
        sum += static_cast<long double>(sign * binomial(M - p, l) / (p + l)) * fpow;
        fpow *= unordered_cdf;
    }
    return clamp_probability(static_cast<double>(theta * sum), "ordered_cdf");
}

double ordered_cdf(const ShadowedRicianParams& params, int user_count, int position,
                   double x, const specfun::SeriesControl& ctl, specfun::SeriesStatus* status) {
    return ordered_from_unordered(cdf_gain(params, x, ctl, status), user_count, position);
}

} // namespace satnoma
