#pragma once

#include <random>
#include <string_view>
#include <vector>

#include "satnoma/specfun.hpp"

namespace satnoma {

// Shadowed-Rician fading triple: 2b is the average multipath power,
// omega the average LoS power, m the Nakagami shadowing parameter.
struct ShadowedRicianParams {
    double b = 0.0;
    double m = 0.0;
    double omega = 0.0;

    // "fhs" | "as" | "ils" (case-insensitive), the standard frequent-heavy /
    // average / infrequent-light shadowing parameter sets.
    static ShadowedRicianParams preset(std::string_view name);
    void validate() const;
};

// Constants of the gain CDF/PDF series:
//   beta  = 1/(2b)
//   delta = (omega/(2b)) / (2bm + omega)
//   alpha = (2bm/(2bm + omega))^m / (2b)
// delta < beta always holds for valid parameters, which is what makes the
// k-series converge geometrically.
struct DerivedConstants {
    double alpha = 0.0;
    double beta = 0.0;
    double delta = 0.0;
};

DerivedConstants derive(const ShadowedRicianParams& params);

// CDF of the unordered channel power |h|^2:
//   F(x) = alpha * sum_k (m)_k delta^k / ((k!)^2 beta^(k+1)) gamma(k+1, x beta)
// Result is clamped into [0,1]; a violation beyond 1e-9 throws.
double cdf_gain(const ShadowedRicianParams& params, double x,
                const specfun::SeriesControl& ctl = {},
                specfun::SeriesStatus* status = nullptr);

// Same series evaluated from precomputed constants (hot path for the
// analytic integrals, which call this once per quadrature node).
double cdf_gain(const DerivedConstants& dc, double m, double x,
                const specfun::SeriesControl& ctl = {},
                specfun::SeriesStatus* status = nullptr);

// PDF of the unordered channel power:
//   f(x) = alpha e^(-x beta) 1F1(m; 1; x delta)
double pdf_gain(const ShadowedRicianParams& params, double x,
                const specfun::SeriesControl& ctl = {},
                specfun::SeriesStatus* status = nullptr);

// One draw of |h|^2: LoS amplitude with Nakagami-m power (Gamma(m, omega/m)),
// uniform LoS phase, plus a circularly-symmetric complex Gaussian scattered
// component of total variance 2b.
double sample_gain(const ShadowedRicianParams& params, std::mt19937_64& rng);

// user_count i.i.d. draws sorted ascending; slot p-1 holds the p-th order
// statistic. Ties (a probability-zero event) keep draw order.
std::vector<double> sample_ordered_gains(const ShadowedRicianParams& params,
                                         int user_count, std::mt19937_64& rng);

// CDF of the position-th smallest of user_count i.i.d. gains, through the
// standard order-statistics expansion of the unordered CDF.
double ordered_cdf(const ShadowedRicianParams& params, int user_count,
                   int position, double x,
                   const specfun::SeriesControl& ctl = {},
                   specfun::SeriesStatus* status = nullptr);

// The order-statistics transform itself, exposed so the analytic layer can
// apply it to an already-evaluated unordered CDF value:
//   M!/((p-1)!(M-p)!) sum_{l=0}^{M-p} C(M-p,l) (-1)^l/(p+l) F^(p+l)
double ordered_from_unordered(double unordered_cdf, int user_count, int position);

} // namespace satnoma
