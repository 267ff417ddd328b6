#include "brjuno/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace brjuno {

void dyadic::normalize() {
    if (man_ == 0) {
        exp_ = 0;
        return;
    }
    unsigned long tz = mpz_scan1(man_.get_mpz_t(), 0);
    if (tz > 0) {
        mpz_fdiv_q_2exp(man_.get_mpz_t(), man_.get_mpz_t(), tz);
        exp_ += static_cast<long>(tz);
    }
}

dyadic dyadic::from_double(double d) {
    if (!std::isfinite(d)) throw std::invalid_argument("dyadic: non-finite double");
    if (d == 0.0) return dyadic();
    int e = 0;
    double m = std::frexp(d, &e); // m in [0.5, 1), d = m * 2^e
    m = std::ldexp(m, 53);
    e -= 53;
    mpz_class man;
    mpz_set_d(man.get_mpz_t(), m); // integer by construction
    return dyadic(man, e);
}

dyadic dyadic::operator+(const dyadic& o) const {
    if (man_ == 0) return o;
    if (o.man_ == 0) return *this;
    long e = std::min(exp_, o.exp_);
    mpz_class a = man_, b = o.man_;
    mpz_mul_2exp(a.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(exp_ - e));
    mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(o.exp_ - e));
    return dyadic(a + b, e);
}

dyadic dyadic::mul_2exp(long k) const {
    if (man_ == 0) return dyadic();
    return dyadic(man_, exp_ + k);
}

int dyadic::cmp(const dyadic& o) const {
    int sa = sgn(), sb = o.sgn();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    long e = std::min(exp_, o.exp_);
    mpz_class a = man_, b = o.man_;
    mpz_mul_2exp(a.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(exp_ - e));
    mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(o.exp_ - e));
    return ::cmp(a, b);
}

mpq_class dyadic::to_mpq() const {
    mpq_class q;
    if (exp_ >= 0) {
        mpz_class n = man_;
        mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(exp_));
        q = n;
    } else {
        mpz_class den = 1;
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(-exp_));
        q = mpq_class(man_, den);
    }
    q.canonicalize();
    return q;
}

double dyadic::to_double() const {
    return mpq_get_d(to_mpq().get_mpq_t());
}

std::string dyadic::str() const {
    if (exp_ >= 0) {
        mpz_class n = man_;
        mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(exp_));
        return n.get_str();
    }
    return man_.get_str() + "/2^" + std::to_string(-exp_);
}

namespace {

bool power_of_two(const mpz_class& v, unsigned long& k) {
    if (v <= 0) return false;
    if (mpz_popcount(v.get_mpz_t()) != 1) return false;
    k = mpz_scan1(v.get_mpz_t(), 0);
    return true;
}

} // namespace

dyadic dyadic::parse(const std::string& s0) {
    std::string s;
    for (char c : s0)
        if (!isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("dyadic: empty literal");

    auto caret = s.find("/2^");
    if (caret != std::string::npos) {
        mpz_class man(s.substr(0, caret), 10);
        long k = std::stol(s.substr(caret + 3));
        if (k < 0) throw std::invalid_argument("dyadic: negative power in p/2^k");
        return dyadic(man, -k);
    }
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        mpz_class num(s.substr(0, slash), 10);
        mpz_class den(s.substr(slash + 1), 10);
        unsigned long k = 0;
        if (!power_of_two(den, k))
            throw std::invalid_argument("dyadic: denominator is not a power of two: " + s0);
        return dyadic(num, -static_cast<long>(k));
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        long frac = static_cast<long>(s.size() - dot - 1);
        if (digits.empty() || digits == "-" || digits == "+")
            throw std::invalid_argument("dyadic: bad literal " + s0);
        mpz_class num(digits, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(frac));
        mpq_class q(num, den);
        q.canonicalize();
        unsigned long k = 0;
        if (q.get_den() == 1) return dyadic(q.get_num(), 0);
        if (!power_of_two(q.get_den(), k))
            throw std::invalid_argument("dyadic: decimal is not exactly dyadic: " + s0);
        return dyadic(q.get_num(), -static_cast<long>(k));
    }
    return dyadic(mpz_class(s, 10), 0);
}

} // namespace brjuno
