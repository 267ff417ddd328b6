#include "brjuno/golden.hpp"

#include <stdexcept>

#include "brjuno/errors.hpp"

namespace brjuno {

const mpq_class& golden_field::rational_value() const {
    if (b_ != 0) throw std::domain_error("golden_field: not rational");
    return a_;
}

golden_field golden_field::recip() const {
    // 1 / (a + b sqrt5) = (a - b sqrt5) / (a^2 - 5 b^2); the norm vanishes
    // only at zero because sqrt5 is irrational.
    mpq_class norm = a_ * a_ - 5 * b_ * b_;
    if (norm == 0) throw std::domain_error("golden_field: reciprocal of zero");
    return golden_field(a_ / norm, -b_ / norm);
}

int golden_field::sgn() const {
    int sa = ::sgn(a_), sb = ::sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with 5 b^2; equality is impossible
    int c = ::cmp(a_ * a_, 5 * b_ * b_);
    return c > 0 ? sa : sb;
}

mpz_class golden_field::floor() const {
    if (b_ == 0) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a_.get_num().get_mpz_t(), a_.get_den().get_mpz_t());
        return q;
    }
    // irrational value: refine an enclosure until both endpoints share a floor
    for (mpfr_prec_t p = 128; p <= (mpfr_prec_t)1 << 22; p *= 2) {
        interval e = enclosure(p);
        mpz_class flo, fhi;
        mpfr_t t;
        mpfr_init2(t, p);
        mpfr_floor(t, e.lo_raw());
        mpfr_get_z(flo.get_mpz_t(), t, MPFR_RNDN);
        mpfr_floor(t, e.hi_raw());
        mpfr_get_z(fhi.get_mpz_t(), t, MPFR_RNDN);
        mpfr_clear(t);
        if (flo == fhi) return flo;
    }
    throw precision_error("golden_field: floor undecided at precision cap");
}

interval golden_field::enclosure(mpfr_prec_t prec) const {
    interval s5 = interval(5, prec).sqrt();
    return interval::from_mpq(a_, prec) + interval::from_mpq(b_, prec) * s5;
}

std::string golden_field::str() const {
    return "(" + a_.get_str() + ")+(" + b_.get_str() + ")*sqrt5";
}

} // namespace brjuno
