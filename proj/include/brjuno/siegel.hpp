#pragma once

#include <gmpxx.h>
#include <utility>
#include <vector>

#include "brjuno/complex_interval.hpp"
#include "brjuno/contfrac.hpp"
#include "brjuno/interval.hpp"

namespace brjuno {

// Power series of the map conjugating w -> lambda w to P(z) = lambda z + z^2
// near 0: phi(w) = sum b_k w^k with b_1 = 1 and
// b_k = (sum_{i+j=k, i,j>=1} b_i b_j) / (lambda^k - lambda).
struct linearizer_series {
    contfrac theta;
    cinterval lambda;
    std::vector<cinterval> b; // 1-based; b[0] unused
    size_t order = 0;
    mpfr_prec_t prec = 0;
};

// Small divisors with an enclosure meeting 0 trigger a precision ladder;
// precision_error past the cap.  Requires an all-ones tail.
linearizer_series linearizer_coeffs(const contfrac& theta, size_t n,
                                    mpfr_prec_t prec = 192);

// Non-rigorous estimate of the conformal radius of the rotation domain from
// the coefficient decay 1/|b_k|^{1/k}.
struct radius_estimate {
    double point_estimate = 0.0; // window median
    std::vector<std::pair<size_t, double>> window_estimates; // (k, 1/|b_k|^{1/k})
    double oscillation = 0.0;    // (max - min)/median over the window
    bool rigorous = false;       // always false: decay oscillates with the divisors
};
radius_estimate conformal_radius(const contfrac& theta, size_t n,
                                 mpfr_prec_t prec = 192);

struct upsilon_report {
    interval phi;             // rigorous enclosure
    double radius_hat = 0.0;  // non-rigorous
    double upsilon_hat = 0.0; // phi midpoint + log(radius_hat)
    double oscillation = 0.0;
};
upsilon_report upsilon_estimate(const contfrac& theta, size_t n, long k = 40);

// Synthetic domain families with closed-form conformal radii, used to check
// the shrink inequality 0 < r(U,0) - r(V,0) <= 4 sqrt(r(U,0)) sqrt(eps).
//   disk:      U = disk of radius R, V = disk of radius R - eps
//   slit_disk: U = unit disk, V = unit disk minus the radial slit [1-eps, 1];
//              r(V,0) = 4s/(1+s)^2 with s = 1 - eps
enum class test_domain { disk, slit_disk };

struct drop_report {
    test_domain domain = test_domain::disk;
    mpq_class outer_radius; // r(U, 0)
    mpq_class epsilon;
    mpq_class inner_radius; // r(V, 0)
    mpq_class drop;         // r(U,0) - r(V,0), exact
    bool positive = false;  // drop > 0
    bool bounded = false;   // drop^2 <= 16 r(U,0) eps, checked exactly
};
drop_report radius_drop_bound(test_domain domain, const mpq_class& outer_radius,
                              const mpq_class& epsilon);

} // namespace brjuno
