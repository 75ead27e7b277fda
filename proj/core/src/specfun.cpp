#include "satnoma/specfun.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>

#include "satnoma/errors.hpp"

namespace satnoma::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Regularized lower gamma by its ascending series; valid and fast for
// x < a + 1.
double lower_regularized_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 10000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) break;
    }
    // P(a,x) = x^a e^-x / Gamma(a) * sum
    return sum * std::exp(a * std::log(x) - x - log_gamma(a));
}

// Regularized upper gamma Q(a,x) by the Lentz continued fraction; the
// stable choice for x >= a + 1.
double upper_regularized_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return std::exp(a * std::log(x) - x - log_gamma(a)) * h;
}

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0))
        throw NumericalError("log_gamma: domain error, x must be > 0 (x=" + std::to_string(x) + ")");
    return std::lgamma(x);
}

double pochhammer(double m, int k) {
    if (!(m > 0.0)) throw NumericalError("pochhammer: m must be > 0");
    if (k < 0) throw NumericalError("pochhammer: k must be >= 0");
    if (k == 0) return 1.0;
    // Direct product while it cannot overflow; (m+k) < ~170 keeps the
    // running product far from 1e308 for any sensible m.
    if (m + k < 120.0) {
        double prod = 1.0;
        for (int i = 0; i < k; ++i) prod *= m + i;
        return prod;
    }
    return std::exp(log_gamma(m + k) - log_gamma(m));
}

double regularized_lower_gamma(double a, double x) {
    if (!(a > 0.0)) throw NumericalError("incomplete gamma: a must be > 0");
    if (x < 0.0) throw NumericalError("incomplete gamma: x must be >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return lower_regularized_series(a, x);
    return 1.0 - upper_regularized_cf(a, x);
}

double lower_incomplete_gamma(double a, double x) {
    return regularized_lower_gamma(a, x) * std::exp(log_gamma(a));
}

double kummer_1f1(double a, double b, double z, const SeriesControl& ctl, SeriesStatus* status) {
    if (!(a > 0.0) || !(b > 0.0))
        throw NumericalError("kummer_1f1: requires a > 0 and b > 0");
    if (z < 0.0)
        throw NumericalError("kummer_1f1: requires z >= 0");
    double term = 1.0;
    double sum = 1.0;
    int k = 0;
    bool cap = false;
    if (z > 0.0) {
        for (;;) {
            if (k >= ctl.max_terms) {
                cap = true;
                break;
            }
            term *= (a + k) * z / ((b + k) * (k + 1.0));
            sum += term;
            ++k;
            // All terms are positive here, so the term/sum ratio is a
            // faithful truncation estimate.
            if (term < ctl.rel_tol * sum) break;
        }
    }
    if (status) {
        status->terms_used = k;
        status->cap_hit = cap;
    }
    if (cap && !status)
        throw NumericalError("kummer_1f1: series cap hit before tolerance (z=" + std::to_string(z) + ")");
    return sum;
}

double bessel_j(int order, double u) {
    if (order != 1 && order != 3)
        throw NumericalError("bessel_j: only orders 1 and 3 are supported");
    // J_1 and J_3 are odd; std::cyl_bessel_j wants a nonnegative argument.
    const double sign = (u < 0.0) ? -1.0 : 1.0;
    return sign * std::cyl_bessel_j(static_cast<double>(order), std::fabs(u));
}

namespace {

// Laguerre L_n and L_{n-1} at z via the three-term recurrence.
void laguerre_pair(int n, double z, double& ln, double& lnm1) {
    double p0 = 1.0;
    double p1 = 1.0 - z;
    for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0 - z) * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
    }
    ln = p1;
    lnm1 = p0;
}

GaussLaguerreRule compute_gauss_laguerre(int n) {
    GaussLaguerreRule rule;
    rule.node.resize(n);
    rule.weight.resize(n);
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        // Stroud-Secrest style initial guesses, then Newton.
        if (i == 0) {
            z = 3.0 / (1.0 + 2.4 * n);
        } else if (i == 1) {
            z += 15.0 / (1.0 + 2.5 * n);
        } else {
            const double ai = i - 1;
            z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - rule.node[i - 2]);
        }
        double ln = 0.0, lnm1 = 0.0, deriv = 0.0;
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            laguerre_pair(n, z, ln, lnm1);
            deriv = n * (ln - lnm1) / z; // L_n'(z) = n (L_n - L_{n-1}) / z
            const double dz = ln / deriv;
            z -= dz;
            if (std::fabs(dz) <= 1e-14 * std::max(1.0, std::fabs(z))) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw NumericalError("gauss_laguerre_rule: Newton iteration failed for n=" + std::to_string(n));
        laguerre_pair(n, z, ln, lnm1);
        deriv = n * (ln - lnm1) / z;
        rule.node[i] = z;
        rule.weight[i] = -1.0 / (deriv * n * lnm1);
    }
    return rule;
}

} // namespace

const GaussLaguerreRule& gauss_laguerre_rule(int n) {
    if (n < 1 || n > 128)
        throw NumericalError("gauss_laguerre_rule: n must be in [1, 128] (n=" + std::to_string(n) + ")");
    static std::mutex mutex;
    static std::map<int, GaussLaguerreRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_laguerre(n)).first;
    return it->second;
}

} // namespace satnoma::specfun
