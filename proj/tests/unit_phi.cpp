#include <doctest.h>

#include "brjuno/contfrac.hpp"
#include "brjuno/golden.hpp"
#include "brjuno/phi.hpp"

using namespace brjuno;

namespace {

// closed form for the all-ones expansion: log(1/t) / (1 - t) with t = (sqrt5-1)/2
interval golden_phi_oracle(mpfr_prec_t prec) {
    interval t = golden_field::golden_tail().enclosure(prec);
    return -t.log() / (interval::exact(mpz_class(1), prec) - t);
}

} // namespace

TEST_CASE("series value of the all-ones expansion matches its closed form") {
    interval oracle = golden_phi_oracle(160);
    for (long k : {20L, 40L, 60L}) {
        interval v = phi(contfrac::golden(), k);
        CHECK(v.width_upper().to_mpq() <= mpq_class(mpz_class(1), mpz_class(1) << k));
        CHECK(v.intersects(oracle));
    }
    interval v = phi(contfrac::golden(), 60);
    CHECK(v.certainly_gt(mpq_class("12598/10000")));
    CHECK(v.certainly_lt(mpq_class("12599/10000")));
}

TEST_CASE("truncated series endpoints: value one gives zero, one half gives log 2") {
    CHECK(phi_trunc(mpq_class(1), 48).contains(mpq_class(0)));
    CHECK(phi_trunc(mpq_class(1), 48).width_upper().to_double() < 1e-12);
    interval half = phi_trunc(mpq_class(1, 2), 64);
    CHECK(half.intersects(interval::log2_const(128)));
}

TEST_CASE("truncated series is a function of the value, not the digit string") {
    contfrac a({2, 2}, cf_tail::terminating);
    contfrac b({2, 1, 1}, cf_tail::terminating);
    REQUIRE(a.value_exact() == b.value_exact());
    interval va = phi_trunc(a, 60);
    interval vb = phi_trunc(b, 60);
    CHECK(va.intersects(vb));
    // oracle: alpha_1 = 2/5, alpha_2 = 1/2 gives log(5/2) + (2/5) log 2
    interval oracle = interval::from_mpq(mpq_class(5, 2), 160).log() +
                      interval::from_mpq(mpq_class(2, 5), 160) * interval::log2_const(160);
    CHECK(va.intersects(oracle));
    CHECK(vb.intersects(oracle));
}

TEST_CASE("prefix products are exact golden powers on the all-ones expansion") {
    auto ps = prefix_products(contfrac::golden(), 6, 128);
    REQUIRE(ps.size() == 7);
    CHECK(ps[0].contains(mpq_class(1)));
    CHECK(ps[0].singleton());
    golden_field t = golden_field::golden_tail();
    golden_field pow = golden_field::rational(1);
    for (size_t j = 1; j <= 6; ++j) {
        pow = pow * t;
        CHECK(ps[j].contains(pow.enclosure(256)));
    }
}

TEST_CASE("tail sums factor through the golden closed form") {
    contfrac cf({1, 1, 1, 20}, cf_tail::all_ones);
    interval tail5 = phi_tail_from(cf, 5, 128);
    interval oracle = prefix_products(cf, 4, 160)[4] * golden_phi_oracle(160);
    CHECK(tail5.intersects(oracle));
    CHECK(tail5.is_positive());

    interval whole = phi_tail_from(contfrac::golden(), 1, 128);
    CHECK(whole.intersects(phi(contfrac::golden(), 50)));

    interval tail10 = phi_tail_from(cf, 10, 128);
    CHECK(tail10.certainly_lt(tail5));
}

TEST_CASE("decomposition splits off the single insertion term") {
    contfrac g = contfrac::golden();
    phi_decomposition dec = phi_decompose(g, 2, 3, 50);
    CHECK(dec.n == 2);
    CHECK(dec.m == 3);
    CHECK(dec.phi_minus.is_nonnegative());
    CHECK(dec.phi_one.is_positive());
    CHECK((dec.phi_minus + dec.phi_one).intersects(phi(g, 50)));
}

TEST_CASE("denominator-sum variant converges on the all-ones expansion") {
    interval b = brjuno_sum_b(contfrac::golden(), 25, 128);
    CHECK(b.certainly_gt(mpq_class(2)));
    CHECK(b.certainly_lt(mpq_class(5)));
    interval b_more = brjuno_sum_b(contfrac::golden(), 35, 128);
    CHECK(b.intersects(b_more));
}

TEST_CASE("series enclosures respect the requested width on mixed digits") {
    contfrac cf({1, 1, 1, 20}, cf_tail::all_ones);
    for (long k : {20L, 40L}) {
        interval v = phi(cf, k);
        CHECK(v.width_upper().to_mpq() <= mpq_class(mpz_class(1), mpz_class(1) << k));
        CHECK(v.is_positive());
    }
    contfrac big({1, mpz_class("340282366920938463463374607431768211456"), 1},
                 cf_tail::all_ones); // digit of 128 bits
    interval v = phi(big, 40);
    CHECK(v.width_upper().to_mpq() <= mpq_class(mpz_class(1), mpz_class(1) << 40));
}
