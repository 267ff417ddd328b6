#include "brjuno/interval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace brjuno {

namespace {

dyadic dyadic_from_mpfr(const mpfr_t x) {
    if (mpfr_zero_p(x)) return dyadic();
    mpz_class man;
    mpfr_exp_t e = mpfr_get_z_2exp(man.get_mpz_t(), x);
    return dyadic(man, static_cast<long>(e));
}

} // namespace

interval::interval(mpfr_prec_t prec, int) : prec_(prec) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
}

interval::interval() : interval(default_prec, 0) {
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

interval::interval(long v, mpfr_prec_t prec) : interval(prec, 0) {
    mpfr_set_si(lo_, v, MPFR_RNDD);
    mpfr_set_si(hi_, v, MPFR_RNDU);
}

interval::interval(const interval& o) : interval(o.prec_, 0) {
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

interval::interval(interval&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, 2);
    mpfr_init2(hi_, 2);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

interval& interval::operator=(const interval& o) {
    if (this == &o) return *this;
    if (prec_ != o.prec_) {
        mpfr_set_prec(lo_, o.prec_);
        mpfr_set_prec(hi_, o.prec_);
        prec_ = o.prec_;
    }
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
    return *this;
}

interval& interval::operator=(interval&& o) noexcept {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    std::swap(prec_, o.prec_);
    return *this;
}

interval::~interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

interval interval::exact(const mpz_class& v, mpfr_prec_t prec) {
    interval r(prec, 0);
    mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
    return r;
}

interval interval::from_mpq(const mpq_class& q, mpfr_prec_t prec) {
    interval r(prec, 0);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
}

interval interval::from_mpq(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec) {
    interval r(prec, 0);
    mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
    return r;
}

interval interval::from_dyadic(const dyadic& d) {
    mpfr_prec_t p = std::max<mpfr_prec_t>(
        default_prec, mpz_sizeinbase(d.mantissa().get_mpz_t(), 2) + 2);
    interval r(p, 0);
    mpfr_set_z_2exp(r.lo_, d.mantissa().get_mpz_t(), d.exponent(), MPFR_RNDD);
    mpfr_set_z_2exp(r.hi_, d.mantissa().get_mpz_t(), d.exponent(), MPFR_RNDU);
    return r;
}

interval interval::from_dyadic(const dyadic& lo, const dyadic& hi) {
    interval a = from_dyadic(lo), b = from_dyadic(hi);
    if (lo > hi) throw std::invalid_argument("interval: lo > hi");
    return hull(a, b);
}

interval interval::from_double(double lo, double hi, mpfr_prec_t prec) {
    if (!(lo <= hi)) throw std::invalid_argument("interval: bad double endpoints");
    interval r(prec, 0);
    mpfr_set_d(r.lo_, lo, MPFR_RNDD);
    mpfr_set_d(r.hi_, hi, MPFR_RNDU);
    return r;
}

interval interval::hull(const interval& a, const interval& b) {
    interval r(std::max(a.prec_, b.prec_), 0);
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

interval interval::pi(mpfr_prec_t prec) {
    interval r(prec, 0);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

interval interval::log2_const(mpfr_prec_t prec) {
    interval r(prec, 0);
    mpfr_const_log2(r.lo_, MPFR_RNDD);
    mpfr_const_log2(r.hi_, MPFR_RNDU);
    return r;
}

interval interval::with_prec(mpfr_prec_t prec) const {
    interval r(prec, 0);
    mpfr_set(r.lo_, lo_, MPFR_RNDD);
    mpfr_set(r.hi_, hi_, MPFR_RNDU);
    return r;
}

interval interval::binary_op(const interval& a, const interval& b,
                             int (*op)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t)) {
    interval r(std::max(a.prec_, b.prec_), 0);
    op(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    op(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

interval interval::operator+(const interval& o) const {
    return binary_op(*this, o, mpfr_add);
}

interval interval::operator-(const interval& o) const {
    interval r(std::max(prec_, o.prec_), 0);
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

interval interval::operator-() const {
    interval r(prec_, 0);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

interval interval::operator*(const interval& o) const {
    interval r(std::max(prec_, o.prec_), 0);
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    const mpfr_srcptr xs[2] = {lo_, hi_};
    const mpfr_srcptr ys[2] = {o.lo_, o.hi_};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_mul(t, xs[i], ys[j], MPFR_RNDD);
            if (first)
                mpfr_set(r.lo_, t, MPFR_RNDD);
            else
                mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, xs[i], ys[j], MPFR_RNDU);
            if (first)
                mpfr_set(r.hi_, t, MPFR_RNDU);
            else
                mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

interval interval::operator/(const interval& o) const {
    if (o.contains_zero())
        throw std::domain_error("interval: division by interval containing zero");
    interval r(std::max(prec_, o.prec_), 0);
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    const mpfr_srcptr xs[2] = {lo_, hi_};
    const mpfr_srcptr ys[2] = {o.lo_, o.hi_};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_div(t, xs[i], ys[j], MPFR_RNDD);
            if (first)
                mpfr_set(r.lo_, t, MPFR_RNDD);
            else
                mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
            mpfr_div(t, xs[i], ys[j], MPFR_RNDU);
            if (first)
                mpfr_set(r.hi_, t, MPFR_RNDU);
            else
                mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

interval interval::recip() const {
    if (contains_zero())
        throw std::domain_error("interval: reciprocal of interval containing zero");
    interval r(prec_, 0);
    mpfr_ui_div(r.lo_, 1, hi_, MPFR_RNDD);
    mpfr_ui_div(r.hi_, 1, lo_, MPFR_RNDU);
    return r;
}

interval interval::sqr() const {
    interval r(prec_, 0);
    if (contains_zero()) {
        mpfr_set_zero(r.lo_, 1);
        mpfr_t a, b;
        mpfr_init2(a, prec_);
        mpfr_init2(b, prec_);
        mpfr_sqr(a, lo_, MPFR_RNDU);
        mpfr_sqr(b, hi_, MPFR_RNDU);
        mpfr_max(r.hi_, a, b, MPFR_RNDU);
        mpfr_clear(a);
        mpfr_clear(b);
    } else if (mpfr_sgn(lo_) > 0) {
        mpfr_sqr(r.lo_, lo_, MPFR_RNDD);
        mpfr_sqr(r.hi_, hi_, MPFR_RNDU);
    } else {
        mpfr_sqr(r.lo_, hi_, MPFR_RNDD);
        mpfr_sqr(r.hi_, lo_, MPFR_RNDU);
    }
    return r;
}

interval interval::monotone_inc(int (*op)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) const {
    interval r(prec_, 0);
    op(r.lo_, lo_, MPFR_RNDD);
    op(r.hi_, hi_, MPFR_RNDU);
    return r;
}

interval interval::sqrt() const {
    if (mpfr_sgn(lo_) < 0)
        throw std::domain_error("interval: sqrt of negative interval");
    return monotone_inc(mpfr_sqrt);
}

interval interval::log() const {
    if (mpfr_sgn(lo_) <= 0)
        throw std::domain_error("interval: log requires lo > 0");
    return monotone_inc(mpfr_log);
}

interval interval::log1p() const {
    if (mpfr_cmp_si(lo_, -1) <= 0)
        throw std::domain_error("interval: log1p requires lo > -1");
    return monotone_inc(mpfr_log1p);
}

interval interval::exp() const { return monotone_inc(mpfr_exp); }
interval interval::expm1() const { return monotone_inc(mpfr_expm1); }

interval interval::abs() const {
    interval r(prec_, 0);
    if (contains_zero()) {
        mpfr_set_zero(r.lo_, 1);
        mpfr_t a;
        mpfr_init2(a, prec_);
        mpfr_abs(a, lo_, MPFR_RNDU);
        mpfr_abs(r.hi_, hi_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, a, MPFR_RNDU);
        mpfr_clear(a);
    } else if (mpfr_sgn(lo_) > 0) {
        r = *this;
    } else {
        r = -*this;
    }
    return r;
}

interval interval::mul_2exp(long k) const {
    interval r(prec_, 0);
    mpfr_mul_2si(r.lo_, lo_, k, MPFR_RNDD);
    mpfr_mul_2si(r.hi_, hi_, k, MPFR_RNDU);
    return r;
}

interval interval::widen_2exp(long log2_r) const {
    interval r(prec_, 0);
    mpfr_t t;
    mpfr_init2(t, 8);
    mpfr_set_ui_2exp(t, 1, log2_r, MPFR_RNDU);
    mpfr_sub(r.lo_, lo_, t, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

interval interval::min_with(const interval& o) const {
    return binary_op(*this, o, mpfr_min);
}

interval interval::max_with(const interval& o) const {
    return binary_op(*this, o, mpfr_max);
}

// sin enclosure: endpoint values plus +-1 whenever a critical point
// (4n+-1) * pi/2 may intersect the argument range.
interval interval::sin() const {
    interval r(prec_, 0);
    mpfr_t w;
    mpfr_init2(w, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    bool full = mpfr_cmp_ui(w, 7) >= 0;
    mpfr_clear(w);
    if (full) {
        mpfr_set_si(r.lo_, -1, MPFR_RNDD);
        mpfr_set_si(r.hi_, 1, MPFR_RNDU);
        return r;
    }

    mpfr_t a, b;
    mpfr_init2(a, prec_);
    mpfr_init2(b, prec_);
    mpfr_sin(a, lo_, MPFR_RNDD);
    mpfr_sin(b, hi_, MPFR_RNDD);
    mpfr_min(r.lo_, a, b, MPFR_RNDD);
    mpfr_sin(a, lo_, MPFR_RNDU);
    mpfr_sin(b, hi_, MPFR_RNDU);
    mpfr_max(r.hi_, a, b, MPFR_RNDU);
    mpfr_clear(a);
    mpfr_clear(b);

    // Locate candidate critical points.  u = (x - pi/2) / (2 pi); integer u
    // marks a maximum, and minima sit half a period away.
    interval x = hull(*this, *this);
    interval p = pi(prec_ + 16);
    interval u = (x - p.mul_2exp(-1)) / p.mul_2exp(1);
    double ulo = u.lo_double(), uhi = u.hi_double();
    if (!(uhi - ulo < 8) || !(std::fabs(ulo) < 9e14) || !(std::fabs(uhi) < 9e14)) {
        // cannot localize critical points; give the full range

        mpfr_set_si(r.lo_, -1, MPFR_RNDD);
        mpfr_set_si(r.hi_, 1, MPFR_RNDU);
        return r;
    }
    long n0 = static_cast<long>(std::floor(ulo)) - 1;
    long n1 = static_cast<long>(std::ceil(uhi)) + 1;
    for (long n = n0; n <= n1; ++n) {
        // maximum at (4n+1) pi/2, minimum at (4n+3) pi/2
        for (int k = 0; k < 2; ++k) {
            interval crit = interval(4 * n + 1 + 2 * k, prec_ + 16) * p.mul_2exp(-1);
            bool disjoint = mpfr_cmp(crit.hi_, lo_) < 0 || mpfr_cmp(crit.lo_, hi_) > 0;
            if (!disjoint) {
                if (k == 0)
                    mpfr_set_si(r.hi_, 1, MPFR_RNDU);
                else
                    mpfr_set_si(r.lo_, -1, MPFR_RNDD);
            }
        }
    }
    if (mpfr_cmp_si(r.lo_, -1) < 0) mpfr_set_si(r.lo_, -1, MPFR_RNDD);
    if (mpfr_cmp_si(r.hi_, 1) > 0) mpfr_set_si(r.hi_, 1, MPFR_RNDU);
    return r;
}

interval interval::cos() const {
    return (*this + pi(prec_ + 16).mul_2exp(-1)).sin();
}

dyadic interval::lo_dyadic() const { return dyadic_from_mpfr(lo_); }
dyadic interval::hi_dyadic() const { return dyadic_from_mpfr(hi_); }
double interval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double interval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double interval::mid_double() const {
    mpfr_t t;
    mpfr_init2(t, prec_);
    mpfr_add(t, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(t, t, 1, MPFR_RNDN);
    double d = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return d;
}

dyadic interval::width_upper() const {
    mpfr_t t;
    mpfr_init2(t, prec_);
    mpfr_sub(t, hi_, lo_, MPFR_RNDU);
    dyadic d = dyadic_from_mpfr(t);
    mpfr_clear(t);
    return d;
}

dyadic interval::mid() const {
    return (lo_dyadic() + hi_dyadic()).mul_2exp(-1);
}

bool interval::contains(const mpq_class& q) const {
    return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool interval::contains(const interval& o) const {
    return mpfr_cmp(lo_, o.lo_) <= 0 && mpfr_cmp(o.hi_, hi_) <= 0;
}

bool interval::contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool interval::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool interval::is_nonnegative() const { return mpfr_sgn(lo_) >= 0; }
bool interval::is_negative() const { return mpfr_sgn(hi_) < 0; }

bool interval::intersects(const interval& o) const {
    return !(mpfr_cmp(hi_, o.lo_) < 0 || mpfr_cmp(o.hi_, lo_) < 0);
}

bool interval::certainly_lt(const interval& o) const { return mpfr_cmp(hi_, o.lo_) < 0; }
bool interval::certainly_le(const interval& o) const { return mpfr_cmp(hi_, o.lo_) <= 0; }
bool interval::certainly_lt(const mpq_class& q) const { return mpfr_cmp_q(hi_, q.get_mpq_t()) < 0; }
bool interval::certainly_gt(const mpq_class& q) const { return mpfr_cmp_q(lo_, q.get_mpq_t()) > 0; }
bool interval::certainly_le(const mpq_class& q) const { return mpfr_cmp_q(hi_, q.get_mpq_t()) <= 0; }
bool interval::certainly_ge(const mpq_class& q) const { return mpfr_cmp_q(lo_, q.get_mpq_t()) >= 0; }

bool interval::singleton() const { return mpfr_equal_p(lo_, hi_); }

std::string interval::str(int digits) const {
    char buf[2048];
    std::string out = "[";
    mpfr_snprintf(buf, sizeof buf, "%.*RDg", digits, lo_);
    out += buf;
    out += ", ";
    mpfr_snprintf(buf, sizeof buf, "%.*RUg", digits, hi_);
    out += buf;
    out += "]";
    return out;
}

} // namespace brjuno
