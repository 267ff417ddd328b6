#include "brjuno/phi.hpp"

#include <algorithm>
#include <stdexcept>

#include "brjuno/errors.hpp"

namespace brjuno {

namespace {

mpq_class pow2_mpq(long k) {
    return dyadic(mpz_class(1), k).to_mpq();
}

// [0, hi] from a nonnegative upper bound
interval nonneg_span(const interval& hi_bound) {
    return interval::hull(interval(0, hi_bound.prec()), hi_bound);
}

// log(1/theta*) / (1 - theta*): value of the all-ones series with P_0 = 1
interval golden_series_closed(mpfr_prec_t prec) {
    interval theta = golden_field::golden_tail().enclosure(prec);
    return (-theta.log()) / (interval(1, prec) - theta);
}

} // namespace

interval phi(const contfrac& cf, long k) {
    if (cf.tail() != cf_tail::all_ones)
        throw std::domain_error("phi: needs an all-ones tail (phi_trunc handles rationals)");
    if (k < 0) throw std::invalid_argument("phi: k >= 0");

    mpq_class budget = pow2_mpq(-(k + 2));
    size_t n = cf.prefix_len();
    size_t terms = std::max<size_t>(n + 4, 8);
    mpfr_prec_t p = std::max<mpfr_prec_t>(interval::default_prec, k + 64);

    for (int round = 0; round < 64; ++round) {
        std::vector<interval> alpha = cf.alpha_enclosures(terms, p);
        interval sum(0, p);
        interval prod(1, p);
        for (size_t i = 0; i < terms; ++i) {
            sum = sum + prod * (-alpha[i].log());
            prod = prod * alpha[i];
        }
        // Terms past `terms` all lie in the all-ones region (terms >= n):
        // consecutive alpha pairs multiply below 1/2 and each log factor is
        // below log 2, so the remainder is at most 4 log2 * P_terms.
        interval rem_hi = prod * interval::log2_const(p).mul_2exp(2);
        if (rem_hi.hi_dyadic().to_mpq() > budget) {
            terms += std::max<size_t>(4, terms / 2);
            continue;
        }
        interval out = sum + nonneg_span(rem_hi);
        if (out.width_upper().to_mpq() <= pow2_mpq(-k)) return out;
        p *= 2;
    }
    throw precision_error("phi: enclosure did not converge");
}

interval phi_trunc(const contfrac& terminating, long k) {
    if (terminating.tail() != cf_tail::terminating)
        throw std::domain_error("phi_trunc: needs a terminating expansion");
    if (k < 0) throw std::invalid_argument("phi_trunc: k >= 0");
    size_t len = terminating.prefix_len();

    // exact alpha_i and exact products by backward evaluation
    std::vector<mpq_class> alpha(len);
    {
        mpq_class x = 0;
        for (size_t j = len; j >= 1; --j) {
            x = 1 / (mpq_class(terminating.digit(j)) + x);
            alpha[j - 1] = x;
        }
    }

    mpfr_prec_t p = std::max<mpfr_prec_t>(interval::default_prec, k + 64);
    for (int round = 0; round < 64; ++round) {
        interval sum(0, p);
        mpq_class prod = 1;
        for (size_t i = 0; i < len; ++i) {
            sum = sum + interval::from_mpq(prod, p) * (-interval::from_mpq(alpha[i], p).log());
            prod *= alpha[i];
        }
        if (sum.width_upper().to_mpq() <= pow2_mpq(-k)) return sum;
        p *= 2;
    }
    throw precision_error("phi_trunc: enclosure did not converge");
}

interval phi_trunc(const mpq_class& theta, long k) {
    return phi_trunc(contfrac::from_rational(theta), k);
}

phi_decomposition phi_decompose(const contfrac& cf, size_t n, size_t m, long k) {
    if (cf.tail() != cf_tail::all_ones)
        throw std::domain_error("phi_decompose: needs an all-ones tail");
    if (m < 1) throw std::invalid_argument("phi_decompose: m >= 1");

    mpfr_prec_t p = std::max<mpfr_prec_t>(interval::default_prec, k + 64);
    phi_decomposition out;
    out.n = n;
    out.m = m;
    for (int round = 0; round < 64; ++round) {
        std::vector<interval> alpha = cf.alpha_enclosures(n + m, p);
        interval prod(1, p);
        for (size_t i = 0; i + 1 < n + m; ++i) prod = prod * alpha[i];
        out.phi_one = prod * (-alpha[n + m - 1].log());
        if (out.phi_one.width_upper().to_mpq() <= pow2_mpq(-k)) break;
        p *= 2;
    }
    interval total = phi(cf, k + 2);
    interval minus = total - out.phi_one;
    // the series without one term is still a sum of nonnegative terms
    if (minus.lo_dyadic().sgn() < 0) minus = minus.max_with(interval(0, minus.prec()));
    out.phi_minus = minus;
    return out;
}

interval brjuno_sum_b(const contfrac& cf, size_t terms, mpfr_prec_t prec) {
    if (terms < 1) throw std::invalid_argument("brjuno_sum_b: terms >= 1");
    if (cf.tail() == cf_tail::unspecified)
        throw std::domain_error("brjuno_sum_b: unspecified tail");

    size_t eff = terms;
    if (cf.tail() == cf_tail::terminating)
        eff = std::min(terms, cf.prefix_len()); // q_{n+1} must exist
    size_t t0 = eff;
    if (cf.tail() == cf_tail::all_ones)
        t0 = std::max<size_t>(std::max(eff, cf.prefix_len()), 1);

    std::vector<cf_convergent> cv = cf.convergents(t0);
    auto qat = [&](size_t i) -> mpz_class {
        return i == 0 ? mpz_class(1) : cv[i - 1].q;
    };

    interval sum(0, prec);
    for (size_t nn = 0; nn + 1 <= t0; ++nn) {
        interval term =
            interval::exact(qat(nn + 1), prec).log() / interval::exact(qat(nn), prec);
        if (nn < eff)
            sum = sum + term;
        else
            sum = sum + nonneg_span(term); // between eff and t0: enclosure [0, term]
    }
    if (cf.tail() == cf_tail::terminating) return sum;

    // All digits past t0 are 1, so q_{n+1} <= 2 q_n and q_{n+2} >= 2 q_n.
    // Sum of log(q_{n+1})/q_n over n >= t0 is then at most
    // (4 log q_{t0} + 14 log 2) / q_{t0}.
    interval qt = interval::exact(qat(t0), prec);
    interval tail_hi =
        (qt.log().mul_2exp(2) + interval(14, prec) * interval::log2_const(prec)) / qt;
    return sum + nonneg_span(tail_hi);
}

interval phi_tail_from(const contfrac& cf, size_t j0, mpfr_prec_t prec) {
    if (cf.tail() != cf_tail::all_ones)
        throw std::domain_error("phi_tail_from: needs an all-ones tail");
    if (j0 < 1) throw std::invalid_argument("phi_tail_from: j0 >= 1");
    size_t n = cf.prefix_len();
    size_t last = std::max(j0 - 1, n); // exact terms j0..last, closed tail past
    std::vector<interval> alpha = cf.alpha_enclosures(last, prec);
    interval prod(1, prec);
    interval sum(0, prec);
    for (size_t i = 0; i < last; ++i) {
        if (i + 1 >= j0) sum = sum + prod * (-alpha[i].log());
        prod = prod * alpha[i];
    }
    return sum + prod * golden_series_closed(prec);
}

std::vector<interval> prefix_products(const contfrac& cf, size_t count, mpfr_prec_t prec) {
    std::vector<interval> alpha = cf.alpha_enclosures(count, prec);
    std::vector<interval> out;
    out.reserve(count + 1);
    out.push_back(interval(1, prec));
    for (size_t i = 0; i < count; ++i) out.push_back(out.back() * alpha[i]);
    return out;
}

} // namespace brjuno
