#pragma once

#include <cmath>
#include <limits>

namespace brjuno {

// Double-precision closed interval.  IEEE arithmetic rounds to nearest, so
// every elementary result is within half an ulp of the exact value; widening
// each endpoint by one ulp after the operation therefore keeps the enclosure
// sound.  Used on the hot render path where pixel geometry is far above the
// double noise floor.
struct dival {
    double lo, hi;

    static dival point(double x) { return {x, x}; }
    static dival make(double a, double b) { return a <= b ? dival{a, b} : dival{b, a}; }

    bool valid() const { return lo <= hi && std::isfinite(lo) && std::isfinite(hi); }
    double width() const { return hi - lo; }
    double mag_hi() const { return std::fmax(std::fabs(lo), std::fabs(hi)); }

    static double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
    static double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

    dival operator+(const dival& o) const { return {down(lo + o.lo), up(hi + o.hi)}; }
    dival operator-(const dival& o) const { return {down(lo - o.hi), up(hi - o.lo)}; }
    dival operator-() const { return {-hi, -lo}; }
    dival operator*(const dival& o) const {
        double a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        return {down(std::fmin(std::fmin(a, b), std::fmin(c, d))),
                up(std::fmax(std::fmax(a, b), std::fmax(c, d)))};
    }
    dival sqr() const {
        if (lo >= 0) return {down(lo * lo), up(hi * hi)};
        if (hi <= 0) return {down(hi * hi), up(lo * lo)};
        double m = std::fmax(-lo, hi);
        return {0.0, up(m * m)};
    }
    dival mul2() const { return {2 * lo, 2 * hi}; }
    dival abs() const {
        if (lo >= 0) return *this;
        if (hi <= 0) return {-hi, -lo};
        return {0.0, std::fmax(-lo, hi)};
    }
    // sound for nonnegative intervals; sqrt is correctly rounded
    dival sqrt() const { return {down(std::sqrt(lo < 0 ? 0 : lo)), up(std::sqrt(hi))}; }
};

// Axis-aligned complex box.
struct cdival {
    dival re, im;

    static cdival point(double x, double y) { return {dival::point(x), dival::point(y)}; }

    bool valid() const { return re.valid() && im.valid(); }
    double width() const { return std::fmax(re.width(), im.width()); }

    cdival operator+(const cdival& o) const { return {re + o.re, im + o.im}; }
    cdival sqr_plus(const cdival& c) const {
        return {re.sqr() - im.sqr() + c.re, (re * im).mul2() + c.im};
    }
    dival mod2() const { return re.sqr() + im.sqr(); }
};

} // namespace brjuno
