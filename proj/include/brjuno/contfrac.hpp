#pragma once

#include <gmpxx.h>
#include <string>
#include <vector>

#include "brjuno/golden.hpp"
#include "brjuno/interval.hpp"

namespace brjuno {

// Tail of a continued fraction [r_1, r_2, ...] with all digits >= 1.
//   all_ones:    the listed prefix is followed by an infinite run of 1s
//   terminating: the listed digits are the whole expansion (a rational)
//   unspecified: digits beyond the prefix are unknown (a digit cylinder)
enum class cf_tail { all_ones, terminating, unspecified };

struct cf_convergent {
    mpz_class p, q; // p_n / q_n, the value of [r_1..r_n]
};

class contfrac {
public:
    // golden mean: empty prefix, all-ones tail
    contfrac() : tail_(cf_tail::all_ones) {}
    contfrac(std::vector<mpz_class> prefix, cf_tail tail);

    static contfrac golden() { return contfrac(); }
    // x in (0, 1]; digits from the Euclidean algorithm (canonical: last >= 2,
    // except [1] for x = 1)
    static contfrac from_rational(const mpq_class& x);
    static contfrac parse(const std::string& text);
    std::string format() const;

    cf_tail tail() const { return tail_; }
    const std::vector<mpz_class>& prefix() const { return prefix_; }
    size_t prefix_len() const { return prefix_.size(); }
    bool is_golden() const { return tail_ == cf_tail::all_ones && prefix_.empty(); }

    // 1-based digit access; all-ones tails extend with 1s indefinitely
    mpz_class digit(size_t i) const;
    bool has_digit(size_t i) const;

    // [r_1..r_n; ones]; requires digits up to n
    contfrac truncated_all_ones(size_t n) const;
    // [prefix, 1 x (m-1), big, ones]; requires all-ones tail, m >= 1, big >= 1
    contfrac with_inserted_digit(size_t m, const mpz_class& big) const;
    // digit-wise prefix extension (this agrees with o on o's whole prefix)
    bool extends(const contfrac& o) const;

    // exact value in Q(sqrt5); all_ones or terminating only
    golden_field value_exact() const;
    interval value(mpfr_prec_t prec) const;
    // alpha_i = exact value of [r_i, r_{i+1}, ...]; 1-based.
    // terminating: defined for i <= prefix_len; all_ones: for all i >= 1.
    golden_field alpha_exact(size_t i) const;
    // enclosures of alpha_1..alpha_count by backward recurrence; works for
    // digits of any size
    std::vector<interval> alpha_enclosures(size_t count, mpfr_prec_t prec) const;

    // convergents 1..n of the digit sequence (needs digits up to n)
    std::vector<cf_convergent> convergents(size_t n) const;
    cf_convergent convergent(size_t n) const;

    bool operator==(const contfrac& o) const {
        return tail_ == o.tail_ && prefix_ == o.prefix_;
    }
    bool operator!=(const contfrac& o) const { return !(*this == o); }

private:
    std::vector<mpz_class> prefix_;
    cf_tail tail_;
};

} // namespace brjuno
