#include "brjuno/siegel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "brjuno/dynamics.hpp"
#include "brjuno/errors.hpp"
#include "brjuno/phi.hpp"

namespace brjuno {

linearizer_series linearizer_coeffs(const contfrac& theta, size_t n,
                                    mpfr_prec_t prec) {
    if (theta.tail() != cf_tail::all_ones)
        throw std::invalid_argument("linearizer_coeffs: all-ones tail required");
    if (n < 1) throw std::invalid_argument("linearizer_coeffs: order must be >= 1");

    const mpfr_prec_t prec_cap = mpfr_prec_t(1) << 15;
    for (mpfr_prec_t p = prec;; p *= 2) {
        cinterval lambda = lambda_of_theta(theta.value(p));
        std::vector<cinterval> b(n + 1, cinterval::exact(0, 0, p));
        b[1] = cinterval::exact(1, 0, p);
        cinterval lam_pow = lambda; // lambda^k
        bool retry = false;
        for (size_t k = 2; k <= n; ++k) {
            lam_pow = lam_pow * lambda;
            cinterval div = lam_pow - lambda;
            if (div.contains_zero()) {
                retry = true;
                break;
            }
            cinterval num = cinterval::exact(0, 0, p);
            for (size_t i = 1; 2 * i < k; ++i) num = num + b[i] * b[k - i];
            num = num.mul_2exp(1);
            if (k % 2 == 0) num = num + b[k / 2].sqr();
            b[k] = num / div;
        }
        if (!retry) {
            linearizer_series out;
            out.theta = theta;
            out.lambda = lambda;
            out.b = std::move(b);
            out.order = n;
            out.prec = p;
            return out;
        }
        if (p * 2 > prec_cap)
            throw precision_error("linearizer_coeffs: small divisor enclosure meets 0 at the precision cap");
    }
}

radius_estimate conformal_radius(const contfrac& theta, size_t n,
                                 mpfr_prec_t prec) {
    if (n < 8) throw std::invalid_argument("conformal_radius: order must be >= 8");
    linearizer_series s = linearizer_coeffs(theta, n, prec);

    radius_estimate est;
    std::vector<double> vals;
    for (size_t k = 3 * n / 4 + 1; k <= n; ++k) {
        double log_bk = s.b[k].abs2().log().mul_2exp(-1).mid_double();
        double v = std::exp(-log_bk / double(k));
        est.window_estimates.emplace_back(k, v);
        vals.push_back(v);
    }
    std::vector<double> sorted = vals;
    std::sort(sorted.begin(), sorted.end());
    double median = sorted[sorted.size() / 2];
    est.point_estimate = median;
    est.oscillation = (sorted.back() - sorted.front()) / median;
    est.rigorous = false;
    return est;
}

upsilon_report upsilon_estimate(const contfrac& theta, size_t n, long k) {
    upsilon_report rep;
    rep.phi = phi(theta, k);
    radius_estimate est = conformal_radius(theta, n);
    rep.radius_hat = est.point_estimate;
    rep.oscillation = est.oscillation;
    rep.upsilon_hat = rep.phi.mid_double() + std::log(rep.radius_hat);
    return rep;
}

drop_report radius_drop_bound(test_domain domain, const mpq_class& outer_radius,
                              const mpq_class& epsilon) {
    drop_report rep;
    rep.domain = domain;
    rep.outer_radius = outer_radius;
    rep.epsilon = epsilon;
    if (epsilon <= 0) throw std::invalid_argument("radius_drop_bound: eps must be positive");

    if (domain == test_domain::disk) {
        if (outer_radius <= epsilon)
            throw std::invalid_argument("radius_drop_bound: disk family needs eps < R");
        rep.inner_radius = outer_radius - epsilon;
        rep.drop = epsilon;
    } else {
        if (outer_radius != 1)
            throw std::invalid_argument("radius_drop_bound: slit family is over the unit disk");
        if (epsilon >= 1)
            throw std::invalid_argument("radius_drop_bound: slit depth must be below 1");
        mpq_class s = 1 - epsilon;
        mpq_class one_plus = (1 + s) * (1 + s);
        rep.inner_radius = 4 * s / one_plus;
        rep.drop = outer_radius - rep.inner_radius; // = eps^2/(2-eps)^2
    }
    rep.positive = rep.drop > 0;
    rep.bounded = rep.drop * rep.drop <= 16 * outer_radius * epsilon;
    return rep;
}

} // namespace brjuno
