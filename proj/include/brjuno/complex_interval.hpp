#pragma once

#include <string>

#include "brjuno/interval.hpp"

namespace brjuno {

// Rectangular complex enclosure re + i*im.  Every operation returns a box
// containing the exact image of the operand boxes.
struct cinterval {
    interval re, im;

    cinterval() = default;
    cinterval(interval r, interval i) : re(std::move(r)), im(std::move(i)) {}

    static cinterval exact(long r, long i, mpfr_prec_t prec = interval::default_prec) {
        return cinterval(interval(r, prec), interval(i, prec));
    }
    static cinterval from_mpq(const mpq_class& r, const mpq_class& i,
                              mpfr_prec_t prec = interval::default_prec) {
        return cinterval(interval::from_mpq(r, prec), interval::from_mpq(i, prec));
    }
    static cinterval from_dyadic(const dyadic& r, const dyadic& i) {
        return cinterval(interval::from_dyadic(r), interval::from_dyadic(i));
    }
    // e^{2 pi i t} for exact rational t
    static cinterval unit_angle(const mpq_class& t, mpfr_prec_t prec = interval::default_prec) {
        interval angle = interval::pi(prec) * interval::from_mpq(2 * t, prec);
        return cinterval(angle.cos(), angle.sin());
    }

    cinterval operator+(const cinterval& o) const { return {re + o.re, im + o.im}; }
    cinterval operator-(const cinterval& o) const { return {re - o.re, im - o.im}; }
    cinterval operator-() const { return {-re, -im}; }
    cinterval operator*(const cinterval& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    cinterval operator*(const interval& s) const { return {re * s, im * s}; }
    cinterval sqr() const { return {re.sqr() - im.sqr(), (re * im).mul_2exp(1)}; }
    cinterval conj() const { return {re, -im}; }
    interval abs2() const { return re.sqr() + im.sqr(); }
    interval abs() const { return abs2().sqrt(); }
    // throws via interval division when the enclosure meets 0
    cinterval recip() const {
        interval d = abs2();
        return {re / d, (-im) / d};
    }
    cinterval operator/(const cinterval& o) const { return *this * o.recip(); }
    cinterval mul_2exp(long k) const { return {re.mul_2exp(k), im.mul_2exp(k)}; }

    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool is_exactly(long r, long i) const {
        return re.singleton() && im.singleton() &&
               re.contains(mpq_class(r)) && im.contains(mpq_class(i));
    }

    std::string str(int digits = 17) const {
        return re.str(digits) + " + i*" + im.str(digits);
    }
};

} // namespace brjuno
