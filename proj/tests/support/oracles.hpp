#pragma once

// Independent reference implementations used only by tests. Everything here
// is deliberately written from the defining series/integrals, not by calling
// into the library under test.

#include <functional>

namespace oracles {

// ln Gamma by Spouge's approximation (a = 18), ~1e-15 relative on (0, 200].
double spouge_log_gamma(double x);

// Lower incomplete gamma by the defining ascending series
//   gamma(a,x) = x^a e^-x sum_n x^n / (a (a+1) ... (a+n))
// evaluated in long double.
double series_lower_incomplete_gamma(double a, double x);

// J_n(u) for odd n by the ascending power series in long double with
// compensated summation; good to ~1e-12 absolute for u <= 20.
double bessel_series(int order, double u);

// Adaptive Simpson on [a, b] to the given absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 40);

// Shadowed-Rician density from its own 1F1 series (long double).
double sr_pdf_reference(double b, double m, double omega, double x);

// Direct binomial order-statistics CDF: sum_{j=p}^{M} C(M,j) F^j (1-F)^(M-j).
double ordered_cdf_binomial(double F, int M, int p);

} // namespace oracles
