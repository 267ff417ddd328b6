#pragma once

#include <gmpxx.h>
#include <string>

namespace brjuno {

// Exact dyadic rational man * 2^exp.
// Canonical form: man odd, or (man == 0 and exp == 0).
class dyadic {
public:
    dyadic() : man_(0), exp_(0) {}
    explicit dyadic(long v) : man_(v), exp_(0) { normalize(); }
    explicit dyadic(const mpz_class& man, long exp = 0) : man_(man), exp_(exp) { normalize(); }

    // Exact conversion; rejects NaN and infinities.
    static dyadic from_double(double d);
    // Accepts "p/2^k", integers, "p/q" with q a power of two, and decimal
    // literals whose value is exactly dyadic ("2.25").  Throws otherwise.
    static dyadic parse(const std::string& s);

    const mpz_class& mantissa() const { return man_; }
    long exponent() const { return exp_; }
    bool is_zero() const { return man_ == 0; }
    int sgn() const { return ::sgn(man_); }

    dyadic operator-() const { return dyadic(-man_, exp_); }
    dyadic operator+(const dyadic& o) const;
    dyadic operator-(const dyadic& o) const { return *this + (-o); }
    dyadic operator*(const dyadic& o) const { return dyadic(man_ * o.man_, exp_ + o.exp_); }
    dyadic mul_2exp(long k) const;

    bool operator==(const dyadic& o) const { return man_ == o.man_ && exp_ == o.exp_; }
    bool operator!=(const dyadic& o) const { return !(*this == o); }
    bool operator<(const dyadic& o) const { return cmp(o) < 0; }
    bool operator<=(const dyadic& o) const { return cmp(o) <= 0; }
    bool operator>(const dyadic& o) const { return cmp(o) > 0; }
    bool operator>=(const dyadic& o) const { return cmp(o) >= 0; }
    int cmp(const dyadic& o) const;

    mpq_class to_mpq() const;
    double to_double() const; // nearest; exact when representable
    // "p/2^k" for negative exponents, plain integer otherwise.
    std::string str() const;

private:
    void normalize();
    mpz_class man_;
    long exp_;
};

} // namespace brjuno
