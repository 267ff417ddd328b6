#pragma once

#include <gmpxx.h>
#include <vector>

#include "brjuno/complex_interval.hpp"
#include "brjuno/interval.hpp"

namespace brjuno {

// e^{2 pi i theta}
cinterval lambda_of_theta(const mpq_class& theta, mpfr_prec_t prec = interval::default_prec);
cinterval lambda_of_theta(const interval& theta);

// c = lambda/2 - lambda^2/4; the fixed point lambda/2 of z^2 + c then has
// multiplier exactly lambda
cinterval c_of_lambda(const cinterval& lambda);
cinterval theta_to_c(const mpq_class& theta, mpfr_prec_t prec = interval::default_prec);
cinterval theta_to_c(const interval& theta);

// The two normal forms of a quadratic map:
//   theta_form: P(z) = lambda z + z^2
//   c_form:     f(z) = z^2 + c
struct quadratic_map {
    enum class normal_form { theta_form, c_form };
    normal_form form;
    cinterval lambda; // theta_form only
    cinterval c;      // c_form only

    static quadratic_map from_lambda(const cinterval& lambda);
    static quadratic_map from_theta(const mpq_class& theta,
                                    mpfr_prec_t prec = interval::default_prec);
    static quadratic_map from_c(const cinterval& c);

    cinterval apply(const cinterval& z) const;
    cinterval derivative(const cinterval& z) const; // lambda + 2z or 2z
    cinterval to_c() const;                         // conjugacy to c_form
};

// coefficients[k] multiplies z^k; fixed order, compositions truncate eagerly
struct truncated_polynomial {
    std::vector<cinterval> coefficients;
    size_t order() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
    cinterval eval(const cinterval& z) const;
};

// q-fold self-composition of P(z) = lambda z + z^2 kept at the given order
truncated_polynomial iterate_truncated(const cinterval& lambda, size_t q,
                                       size_t order, mpfr_prec_t prec);

// Head of the Taylor expansion of P_theta^(q) at 0 for theta = p/q:
// P^(q)(z) = z + A z^{q+1} + ...
struct taylor_head {
    cinterval a;  // z^{q+1} coefficient
    cinterval z1; // z coefficient; encloses 1 since lambda^q = 1
    size_t q = 0;
};
taylor_head iterate_taylor_A(const mpq_class& theta,
                             mpfr_prec_t prec = 192,
                             size_t order_cap = 4096);

// upsilon(p/q) = phi_trunc(p/q) + log L + log(2 pi)/q with
// L = (1/(q |A|))^{1/q}; row carries every factor for table output
struct upsilon_row {
    mpz_class p, q;
    interval phi_trunc;
    interval abs_a;
    interval l;
    interval upsilon;
    bool endpoint_convention = false; // true at theta = 1 (orbit convention)
};
upsilon_row upsilon_rational_detail(const mpq_class& theta, long k = 48);
interval upsilon_rational(const mpq_class& theta, long k = 48);

enum class cycle_class { attracting, repelling, indifferent, unresolved };

struct multiplier_report {
    cinterval lambda;
    cycle_class classification = cycle_class::unresolved;
};

// Chain-rule product of derivatives along a verified cycle.  Each orbit point
// must map to the next within tolerance (certified), else invalid_argument.
multiplier_report multiplier(const quadratic_map& map,
                             const std::vector<cinterval>& orbit,
                             const mpq_class& tolerance);

enum class connectivity { connected, cantor, undecided };

struct connectivity_report {
    connectivity verdict = connectivity::undecided;
    long escape_index = -1; // first i with |z_i| > escape_radius certified
    size_t iterations = 0;
};

// Dichotomy for J(z^2 + c) from the critical orbit: certified escape gives
// cantor; |c| < 1/4 strictly traps the orbit in the disk of radius 1/2 and
// gives connected; otherwise undecided.  escape_radius must certifiably be
// >= max(2, |c|) + 1.
connectivity_report classify_connectivity(const cinterval& c, size_t maxiter,
                                          const mpq_class& escape_radius);

} // namespace brjuno
