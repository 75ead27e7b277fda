#include "satnoma/noma.hpp"

#include <cmath>
#include <string>

#include "satnoma/errors.hpp"

namespace satnoma {

namespace {

double effective_gain(const NomaUser& u, SnrReference ref) {
    const double phi = composite_gain(u.geometry);
    if (ref == SnrReference::transmit) return phi;
    LinkGeometry boresight = u.geometry;
    boresight.angle_deg = 0.0;
    return phi / composite_gain(boresight);
}

// Remaining interference power sum_{i>q} a_i (1-based q, empty for q = M).
double tail_alloc(const NomaScenario& s, int q) {
    double sum = 0.0;
    for (int i = q + 1; i <= s.user_count(); ++i) sum += s.user(i).alloc;
    return sum;
}

// psi_q evaluated at the detecting user's gain phi_det.
double psi_at(const NomaScenario& s, int q, double phi_det, double rho) {
    const double th = gamma_threshold(s.user(q).rate_bpcu);
    const int M = s.user_count();
    const double margin = (q < M) ? s.user(q).alloc - th * tail_alloc(s, q) : s.user(M).alloc;
    return th / (rho * phi_det * margin);
}

} // namespace

NomaScenario::NomaScenario(std::vector<NomaUser> users, SicMode sic, SnrReference ref,
                           bool validate)
    : users_(std::move(users)), sic_(sic), ref_(ref) {
    if (validate) {
        const int M = user_count();
        if (M < 2) throw ValidationError("scenario: needs at least 2 users");
        double alloc_sum = 0.0;
        for (int p = 1; p <= M; ++p) {
            const NomaUser& u = user(p);
            if (!(u.alloc > 0.0))
                throw ValidationError("scenario: alloc of user " + std::to_string(p) + " must be > 0");
            if (p > 1 && u.alloc > user(p - 1).alloc)
                throw ValidationError("scenario: alloc must be nonincreasing (fairness ordering), "
                                      "violated at user " + std::to_string(p));
            if (!(u.rate_bpcu > 0.0))
                throw ValidationError("scenario: rate of user " + std::to_string(p) + " must be > 0");
            u.geometry.validate();
            u.fading.validate();
            alloc_sum += u.alloc;
        }
        if (std::fabs(alloc_sum - 1.0) > 1e-12)
            throw ValidationError("scenario: alloc must sum to 1 (got " + std::to_string(alloc_sum) + ")");
        for (int p = 1; p < M; ++p) {
            double tail = 0.0;
            for (int i = p + 1; i <= M; ++i) tail += user(i).alloc;
            const double margin = user(p).alloc - gamma_threshold(user(p).rate_bpcu) * tail;
            if (!(margin > 0.0))
                throw ValidationError("scenario: infeasible allocation, a_p <= gamma_th_p * sum_{i>p} a_i "
                                      "at user " + std::to_string(p) +
                                      " (margin " + std::to_string(margin) + ")");
        }
        if (sic_.kind == SicKind::ipsic && !(sic_.omega_i > 0.0))
            throw ValidationError("scenario: ipSIC requires omega_i > 0");
        if (sic_.kind == SicKind::psic && sic_.omega_i != 0.0)
            throw ValidationError("scenario: pSIC must not carry a residual interference power");
    }
    gains_.reserve(users_.size());
    for (const auto& u : users_) gains_.push_back(effective_gain(u, ref_));
}

NomaScenario NomaScenario::validated(std::vector<NomaUser> users, SicMode sic, SnrReference ref) {
    return NomaScenario(std::move(users), sic, ref, true);
}

NomaScenario NomaScenario::unchecked(std::vector<NomaUser> users, SicMode sic, SnrReference ref) {
    return NomaScenario(std::move(users), sic, ref, false);
}

double NomaScenario::residual_eta(int p) const {
    return (sic_.kind == SicKind::ipsic && p >= 2) ? 1.0 : 0.0;
}

NomaScenario NomaScenario::with_sic(SicMode sic) const {
    return NomaScenario(users_, sic, ref_, true);
}

double gamma_threshold(double rate_bpcu) { return std::exp2(rate_bpcu) - 1.0; }

double psi(const NomaScenario& s, int p, double rho) {
    if (p < 1 || p > s.user_count()) throw ValidationError("psi: user index out of range");
    if (!(rho > 0.0)) throw ValidationError("psi: rho must be > 0");
    return psi_at(s, p, s.gain(p), rho);
}

double psi_star(const NomaScenario& s, int p, double rho) {
    if (p < 1 || p > s.user_count()) throw ValidationError("psi_star: user index out of range");
    if (!(rho > 0.0)) throw ValidationError("psi_star: rho must be > 0");
    double best = 0.0;
    for (int q = 1; q <= p; ++q) best = std::max(best, psi_at(s, q, s.gain(p), rho));
    return best;
}

double vartheta_star(const NomaScenario& s, int p) { return psi_star(s, p, 1.0); }

double sinr_detect(const NomaScenario& s, int p, int q, double gain_p,
                   double residual_power, double rho) {
    if (q < 1 || p > s.user_count() || q > p)
        throw ValidationError("sinr_detect: requires 1 <= q <= p <= M");
    const double eta = s.residual_eta(p);
    const double signal = s.gain(p) * rho * gain_p;
    const double interference = signal * tail_alloc(s, q) + eta * rho * residual_power + 1.0;
    return signal * s.user(q).alloc / interference;
}

} // namespace satnoma
