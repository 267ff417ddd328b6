#include "brjuno/dynamics.hpp"

#include <stdexcept>

#include "brjuno/errors.hpp"
#include "brjuno/phi.hpp"

namespace brjuno {

cinterval lambda_of_theta(const mpq_class& theta, mpfr_prec_t prec) {
    return cinterval::unit_angle(theta, prec);
}

cinterval lambda_of_theta(const interval& theta) {
    interval angle = interval::pi(theta.prec()) * theta.mul_2exp(1);
    return {angle.cos(), angle.sin()};
}

cinterval c_of_lambda(const cinterval& lambda) {
    return lambda.mul_2exp(-1) - lambda.sqr().mul_2exp(-2);
}

cinterval theta_to_c(const mpq_class& theta, mpfr_prec_t prec) {
    return c_of_lambda(lambda_of_theta(theta, prec));
}

cinterval theta_to_c(const interval& theta) {
    return c_of_lambda(lambda_of_theta(theta));
}

quadratic_map quadratic_map::from_lambda(const cinterval& lambda) {
    quadratic_map m;
    m.form = normal_form::theta_form;
    m.lambda = lambda;
    return m;
}

quadratic_map quadratic_map::from_theta(const mpq_class& theta, mpfr_prec_t prec) {
    return from_lambda(lambda_of_theta(theta, prec));
}

quadratic_map quadratic_map::from_c(const cinterval& c) {
    quadratic_map m;
    m.form = normal_form::c_form;
    m.c = c;
    return m;
}

cinterval quadratic_map::apply(const cinterval& z) const {
    if (form == normal_form::theta_form) return lambda * z + z.sqr();
    return z.sqr() + c;
}

cinterval quadratic_map::derivative(const cinterval& z) const {
    if (form == normal_form::theta_form) return lambda + z.mul_2exp(1);
    return z.mul_2exp(1);
}

cinterval quadratic_map::to_c() const {
    if (form == normal_form::theta_form) return c_of_lambda(lambda);
    return c;
}

cinterval truncated_polynomial::eval(const cinterval& z) const {
    if (coefficients.empty()) return cinterval();
    mpfr_prec_t prec = coefficients.front().re.prec();
    cinterval acc = cinterval::exact(0, 0, prec);
    for (size_t j = coefficients.size(); j-- > 0;)
        acc = acc * z + coefficients[j];
    return acc;
}

truncated_polynomial iterate_truncated(const cinterval& lambda, size_t q,
                                       size_t order, mpfr_prec_t prec) {
    if (q < 1) throw std::invalid_argument("iterate_truncated: q must be >= 1");
    if (order < 2) throw std::invalid_argument("iterate_truncated: order must be >= 2");
    cinterval zero = cinterval::exact(0, 0, prec);
    std::vector<cinterval> s(order + 1, zero);
    s[1] = lambda;
    s[2] = cinterval::exact(1, 0, prec);
    // compose P on the outside: S <- lambda S + S^2, truncated; S[0] stays 0
    std::vector<cinterval> sq(order + 1, zero);
    for (size_t step = 1; step < q; ++step) {
        for (size_t j = 2; j <= order; ++j) {
            cinterval acc = zero;
            for (size_t i = 1; 2 * i < j; ++i)
                acc = acc + s[i] * s[j - i];
            acc = acc.mul_2exp(1);
            if (j % 2 == 0) acc = acc + s[j / 2].sqr();
            sq[j] = acc;
        }
        sq[0] = zero;
        sq[1] = zero;
        for (size_t j = 1; j <= order; ++j) s[j] = lambda * s[j] + sq[j];
    }
    truncated_polynomial out;
    out.coefficients = std::move(s);
    return out;
}

taylor_head iterate_taylor_A(const mpq_class& theta, mpfr_prec_t prec,
                             size_t order_cap) {
    if (theta.get_den() <= 0) throw std::invalid_argument("iterate_taylor_A: bad rational");
    size_t q = size_t(theta.get_den().get_ui());
    if (!mpz_fits_ulong_p(theta.get_den().get_mpz_t()) || q < 1 || q + 1 > order_cap)
        throw std::invalid_argument("iterate_taylor_A: denominator beyond the order cap");
    cinterval lambda = lambda_of_theta(theta, prec);
    truncated_polynomial s = iterate_truncated(lambda, q, q + 1, prec);
    taylor_head head;
    head.z1 = s.coefficients[1];
    head.a = s.coefficients[q + 1];
    head.q = q;
    return head;
}

upsilon_row upsilon_rational_detail(const mpq_class& theta, long k) {
    if (theta <= 0 || theta > 1)
        throw std::invalid_argument("upsilon_rational: theta must be in (0, 1]");

    upsilon_row row;
    row.p = theta.get_num();
    row.q = theta.get_den();
    row.endpoint_convention = (theta == 1);
    row.phi_trunc = phi_trunc(theta, k);

    mpfr_prec_t prec = 192;
    taylor_head head;
    for (int round = 0;; ++round) {
        head = iterate_taylor_A(theta, prec);
        row.abs_a = head.a.abs();
        if (!row.abs_a.contains_zero()) break;
        if (round >= 5)
            throw precision_error("upsilon_rational: head coefficient enclosure meets 0");
        prec *= 2;
    }

    interval qi = interval::exact(row.q, prec);
    interval log_l = -(row.abs_a.log() + qi.log()) / qi;
    row.l = log_l.exp();
    interval log_2pi = interval::pi(prec).mul_2exp(1).log();
    row.upsilon = row.phi_trunc + log_l + log_2pi / qi;
    return row;
}

interval upsilon_rational(const mpq_class& theta, long k) {
    return upsilon_rational_detail(theta, k).upsilon;
}

multiplier_report multiplier(const quadratic_map& map,
                             const std::vector<cinterval>& orbit,
                             const mpq_class& tolerance) {
    if (orbit.empty()) throw std::invalid_argument("multiplier: empty orbit");
    if (tolerance < 0) throw std::invalid_argument("multiplier: negative tolerance");
    mpq_class tol2 = tolerance * tolerance;
    for (size_t i = 0; i < orbit.size(); ++i) {
        cinterval step = map.apply(orbit[i]) - orbit[(i + 1) % orbit.size()];
        if (!step.abs2().certainly_le(tol2))
            throw std::invalid_argument("multiplier: orbit point does not map to the next within tolerance");
    }
    multiplier_report rep;
    mpfr_prec_t prec = orbit.front().re.prec();
    rep.lambda = cinterval::exact(1, 0, prec);
    for (const cinterval& z : orbit) rep.lambda = rep.lambda * map.derivative(z);

    interval a = rep.lambda.abs();
    mpq_class one(1);
    if (a.certainly_lt(one)) rep.classification = cycle_class::attracting;
    else if (a.certainly_gt(one)) rep.classification = cycle_class::repelling;
    else if (a.singleton() && a.contains(one)) rep.classification = cycle_class::indifferent;
    else rep.classification = cycle_class::unresolved;
    return rep;
}

connectivity_report classify_connectivity(const cinterval& c, size_t maxiter,
                                          const mpq_class& escape_radius) {
    mpfr_prec_t prec = std::max(c.re.prec(), mpfr_prec_t(64));
    interval required = c.abs().max_with(interval(2, prec)) + interval(1, prec);
    if (!required.certainly_le(interval::from_mpq(escape_radius, prec)))
        throw std::invalid_argument("classify_connectivity: escape radius below max(2,|c|)+1");

    connectivity_report rep;
    if (c.abs2().certainly_lt(mpq_class(1, 16))) {
        // |z| <= 1/2 maps into |z^2 + c| <= 1/4 + |c| < 1/2: the critical
        // orbit never leaves the trap disk
        rep.verdict = connectivity::connected;
        return rep;
    }

    mpq_class r2 = escape_radius * escape_radius;
    cinterval z = cinterval::exact(0, 0, prec);
    for (size_t i = 1; i <= maxiter; ++i) {
        z = z.sqr() + c;
        if (z.abs2().certainly_gt(r2)) {
            rep.verdict = connectivity::cantor;
            rep.escape_index = long(i);
            rep.iterations = i;
            return rep;
        }
    }
    rep.verdict = connectivity::undecided;
    rep.iterations = maxiter;
    return rep;
}

} // namespace brjuno
