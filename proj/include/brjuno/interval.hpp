#pragma once

#include <mpfr.h>
#include <gmpxx.h>
#include <string>

#include "brjuno/dyadic.hpp"

namespace brjuno {

// Closed interval [lo, hi] with mpfr endpoints (every endpoint is an exact
// dyadic rational).  All operations round outward, so the result encloses the
// exact image of the operands.  Precision is carried per value; binary
// operations work at the larger of the two operand precisions.
class interval {
public:
    interval();
    explicit interval(long v, mpfr_prec_t prec = default_prec);
    interval(const interval& o);
    interval(interval&& o) noexcept;
    interval& operator=(const interval& o);
    interval& operator=(interval&& o) noexcept;
    ~interval();

    static constexpr mpfr_prec_t default_prec = 96;

    static interval exact(const mpz_class& v, mpfr_prec_t prec);
    static interval from_mpq(const mpq_class& q, mpfr_prec_t prec);
    static interval from_mpq(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec);
    static interval from_dyadic(const dyadic& d);
    static interval from_dyadic(const dyadic& lo, const dyadic& hi);
    static interval from_double(double lo, double hi, mpfr_prec_t prec = 64);
    static interval hull(const interval& a, const interval& b);
    static interval pi(mpfr_prec_t prec);
    static interval log2_const(mpfr_prec_t prec);

    mpfr_prec_t prec() const { return prec_; }
    interval with_prec(mpfr_prec_t prec) const; // outward re-round

    interval operator+(const interval& o) const;
    interval operator-(const interval& o) const;
    interval operator*(const interval& o) const;
    interval operator/(const interval& o) const; // throws if o contains 0
    interval operator-() const;
    interval recip() const;                      // throws if contains 0
    interval sqr() const;
    interval sqrt() const;                       // requires lo >= 0
    interval log() const;                        // requires lo > 0
    interval log1p() const;                      // requires lo > -1
    interval exp() const;
    interval expm1() const;
    interval sin() const;
    interval cos() const;
    interval abs() const;
    interval mul_2exp(long k) const;             // exact scaling
    interval widen_2exp(long log2_r) const;      // Minkowski sum with [-2^k, 2^k]
    interval min_with(const interval& o) const;  // enclosure of min(x, y)
    interval max_with(const interval& o) const;

    dyadic lo_dyadic() const;  // exact endpoint
    dyadic hi_dyadic() const;
    double lo_double() const;  // rounded down
    double hi_double() const;  // rounded up
    double mid_double() const;
    dyadic width_upper() const; // >= exact hi - lo
    dyadic mid() const;         // exact (lo + hi) / 2

    bool contains(const mpq_class& q) const;
    bool contains(const dyadic& d) const { return contains(d.to_mpq()); }
    bool contains(const interval& o) const; // o subset of *this
    bool contains_zero() const;
    bool is_positive() const;  // lo > 0
    bool is_nonnegative() const;
    bool is_negative() const;  // hi < 0
    bool intersects(const interval& o) const;
    bool certainly_lt(const interval& o) const;  // hi < o.lo
    bool certainly_le(const interval& o) const;  // hi <= o.lo
    bool certainly_lt(const mpq_class& q) const;
    bool certainly_gt(const mpq_class& q) const;
    bool certainly_le(const mpq_class& q) const;
    bool certainly_ge(const mpq_class& q) const;
    bool singleton() const;

    // Decimal "[lo, hi]" with outward rounding of the printed digits.
    std::string str(int digits = 17) const;

    const mpfr_t& lo_raw() const { return lo_; }
    const mpfr_t& hi_raw() const { return hi_; }

private:
    interval(mpfr_prec_t prec, int /*uninit marker*/);
    static interval binary_op(const interval& a, const interval& b,
                              int (*op)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t));
    interval monotone_inc(int (*op)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) const;
    mpfr_t lo_, hi_;
    mpfr_prec_t prec_;
};

} // namespace brjuno
