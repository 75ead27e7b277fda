#pragma once

#include <vector>

namespace satnoma::specfun {

// Truncation control for the infinite series that appear throughout the
// outage expressions. Every production series reports how many terms it
// consumed and whether it ran into the cap instead of the tolerance.
struct SeriesControl {
    double rel_tol = 1e-12;
    int max_terms = 500;
};

struct SeriesStatus {
    int terms_used = 0;
    bool cap_hit = false;
};

// ln Gamma(x), x > 0. Relative error of exp(result) <= 1e-13 on [0.1, 200].
double log_gamma(double x);

// Pochhammer symbol (m)_k = m (m+1) ... (m+k-1), m > 0, k >= 0.
// Switches to log space once the direct product risks overflow.
double pochhammer(double m, int k);

// Lower incomplete gamma gamma(a,x) = int_0^x t^(a-1) e^(-t) dt,
// a > 0, x >= 0. Relative error <= 1e-12.
double lower_incomplete_gamma(double a, double x);

// Regularized form P(a,x) = gamma(a,x) / Gamma(a).
double regularized_lower_gamma(double a, double x);

// Kummer confluent hypergeometric 1F1(a;b;z) by ascending series,
// a > 0, b > 0, z >= 0. Truncation is reported through `status` when
// provided; with no status sink a cap hit throws NumericalError.
double kummer_1f1(double a, double b, double z, const SeriesControl& ctl = {},
                  SeriesStatus* status = nullptr);

// First-kind Bessel J_order(u) for order 1 or 3 (the two orders used by
// the beam pattern). Absolute error <= 1e-10 for |u| <= 50; larger |u|
// is computed best-effort with slowly degrading accuracy.
double bessel_j(int order, double u);

// Gauss-Laguerre rule: sum_i weight[i] f(node[i]) ~ int_0^inf f(x) e^(-x) dx,
// exact for polynomials of degree <= 2n-1.
struct GaussLaguerreRule {
    std::vector<double> node;
    std::vector<double> weight;
    int size() const { return static_cast<int>(node.size()); }
};

// Cached rule of size n, 1 <= n <= 128. Nodes are found once by Newton
// iteration on the Laguerre recurrence and kept for the process lifetime;
// the returned reference stays valid and is safe to read concurrently.
const GaussLaguerreRule& gauss_laguerre_rule(int n);

} // namespace satnoma::specfun
