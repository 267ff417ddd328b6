#pragma once

#include <gmpxx.h>
#include <string>

#include "brjuno/interval.hpp"

namespace brjuno {

// Exact element a + b*sqrt(5) of the field Q(sqrt(5)).
// Sign, comparison and floor are exact (no rounding anywhere).
class golden_field {
public:
    golden_field() : a_(0), b_(0) {}
    golden_field(const mpq_class& a, const mpq_class& b) : a_(a), b_(b) {
        a_.canonicalize();
        b_.canonicalize();
    }

    static golden_field rational(const mpq_class& a) { return golden_field(a, 0); }
    static golden_field sqrt5() { return golden_field(0, 1); }
    // (sqrt(5) - 1) / 2: value of the all-ones continued fraction.
    static golden_field golden_tail() {
        return golden_field(mpq_class(-1, 2), mpq_class(1, 2));
    }
    // (sqrt(5) + 1) / 2
    static golden_field golden_ratio() {
        return golden_field(mpq_class(1, 2), mpq_class(1, 2));
    }

    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }
    bool is_rational() const { return b_ == 0; }
    const mpq_class& rational_value() const;

    golden_field operator+(const golden_field& o) const {
        return golden_field(a_ + o.a_, b_ + o.b_);
    }
    golden_field operator-(const golden_field& o) const {
        return golden_field(a_ - o.a_, b_ - o.b_);
    }
    golden_field operator-() const { return golden_field(-a_, -b_); }
    golden_field operator*(const golden_field& o) const {
        return golden_field(a_ * o.a_ + 5 * b_ * o.b_, a_ * o.b_ + b_ * o.a_);
    }
    golden_field recip() const;
    golden_field operator/(const golden_field& o) const { return *this * o.recip(); }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    int sgn() const;
    bool operator==(const golden_field& o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator!=(const golden_field& o) const { return !(*this == o); }
    bool operator<(const golden_field& o) const { return (*this - o).sgn() < 0; }
    bool operator>(const golden_field& o) const { return (*this - o).sgn() > 0; }
    bool operator<=(const golden_field& o) const { return (*this - o).sgn() <= 0; }
    bool operator>=(const golden_field& o) const { return (*this - o).sgn() >= 0; }

    mpz_class floor() const;
    interval enclosure(mpfr_prec_t prec) const;
    std::string str() const;

private:
    mpq_class a_, b_;
};

} // namespace brjuno
