#include <doctest.h>

#include <random>

#include "brjuno/contfrac.hpp"

using namespace brjuno;

namespace {

// independent convergent recurrence: p_n = r_n p_{n-1} + p_{n-2}
std::vector<std::pair<mpz_class, mpz_class>> convergent_oracle(const std::vector<mpz_class>& r) {
    mpz_class pm1 = 1, pm2 = 0, qm1 = 0, qm2 = 1;
    std::vector<std::pair<mpz_class, mpz_class>> out;
    for (const mpz_class& d : r) {
        mpz_class p = d * pm1 + pm2;
        mpz_class q = d * qm1 + qm2;
        out.emplace_back(p, q);
        pm2 = pm1;
        pm1 = p;
        qm2 = qm1;
        qm1 = q;
    }
    // digits encode 1/(r_1 + 1/(r_2 + ...)), so the value of the prefix is q/p
    // of the plain recurrence; swap to keep out[i] = (numerator, denominator).
    for (auto& pq : out) std::swap(pq.first, pq.second);
    return out;
}

mpq_class value_oracle(const std::vector<mpz_class>& r) {
    mpq_class v = 0;
    for (size_t i = r.size(); i-- > 0;) v = mpq_class(1) / (mpq_class(r[i]) + v);
    return v;
}

} // namespace

TEST_CASE("golden convergent denominators follow the fibonacci sequence") {
    auto cs = contfrac::golden().convergents(5);
    REQUIRE(cs.size() == 5);
    long q_expect[5] = {1, 2, 3, 5, 8};
    long p_expect[5] = {1, 1, 2, 3, 5};
    for (int i = 0; i < 5; ++i) {
        CHECK(cs[i].q == q_expect[i]);
        CHECK(cs[i].p == p_expect[i]);
    }
}

TEST_CASE("fourth convergent of [1,1,1,20] is 41/62") {
    contfrac cf({1, 1, 1, 20}, cf_tail::terminating);
    cf_convergent c = cf.convergent(4);
    CHECK(c.p == 41);
    CHECK(c.q == 62);
}

TEST_CASE("convergents match an independent recurrence on random digit strings") {
    std::mt19937_64 gen(13);
    std::uniform_int_distribution<long> digit(1, 9);
    std::uniform_int_distribution<int> len(1, 10);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<mpz_class> r;
        int n = len(gen);
        for (int i = 0; i < n; ++i) r.emplace_back(digit(gen));
        contfrac cf(r, cf_tail::unspecified);
        auto got = cf.convergents(r.size());
        auto want = convergent_oracle(r);
        REQUIRE(got.size() == want.size());
        for (size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].p == want[i].first);
            CHECK(got[i].q == want[i].second);
        }
        mpq_class last(got.back().p, got.back().q);
        last.canonicalize();
        CHECK(last == value_oracle(r));
    }
}

TEST_CASE("from_rational inverts the expansion") {
    contfrac cf = contfrac::from_rational(mpq_class(41, 62));
    REQUIRE(cf.tail() == cf_tail::terminating);
    REQUIRE(cf.prefix_len() == 4);
    CHECK(cf.digit(1) == 1);
    CHECK(cf.digit(2) == 1);
    CHECK(cf.digit(3) == 1);
    CHECK(cf.digit(4) == 20);
    CHECK(cf.value_exact().rational_value() == mpq_class(41, 62));

    std::mt19937_64 gen(29);
    std::uniform_int_distribution<long> digit(1, 12);
    std::uniform_int_distribution<int> len(1, 9);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<mpz_class> r;
        int n = len(gen);
        for (int i = 0; i < n; ++i) r.emplace_back(digit(gen));
        if (r.back() == 1) r.back() = 2; // canonical final digit
        mpq_class x = value_oracle(r);
        contfrac cf2 = contfrac::from_rational(x);
        CHECK(cf2.prefix() == r);
    }
}

TEST_CASE("parse and format round trip") {
    const char* cases[] = {"[;ones]", "[1,1,1,20;ones]", "[3,5]", "[2]", "[1]"};
    for (const char* text : cases) {
        contfrac cf = contfrac::parse(text);
        CHECK(contfrac::parse(cf.format()) == cf);
        CHECK(cf.format() == text);
    }
    CHECK(contfrac::parse("[;ones]").is_golden());
    CHECK_THROWS_AS(contfrac::parse("[0,2]"), std::invalid_argument);
    CHECK_THROWS_AS(contfrac::parse("nonsense"), std::invalid_argument);
}

TEST_CASE("digit access extends all-ones tails") {
    contfrac cf({1, 1, 1, 20}, cf_tail::all_ones);
    CHECK(cf.digit(4) == 20);
    CHECK(cf.digit(5) == 1);
    CHECK(cf.digit(1000) == 1);
    CHECK(cf.has_digit(1000));
    contfrac fin({3, 5}, cf_tail::terminating);
    CHECK_FALSE(fin.has_digit(3));
}

TEST_CASE("digit insertion produces an extension with the expected layout") {
    contfrac omega({1, 1, 1}, cf_tail::all_ones);
    // ones ahead of an all-ones tail are redundant, so the prefix collapses
    REQUIRE(omega.prefix_len() == 0);
    contfrac beta = omega.with_inserted_digit(4, mpz_class(100));
    REQUIRE(beta.tail() == cf_tail::all_ones);
    // three filler ones, then the big digit
    REQUIRE(beta.prefix_len() == 4);
    CHECK(beta.digit(4) == 100);
    for (size_t i = 1; i <= 3; ++i) CHECK(beta.digit(i) == 1);
    CHECK(beta.extends(omega.truncated_all_ones(3)));

    // inserting digit 1 recreates the all-ones tail: the value is unchanged
    contfrac same = omega.with_inserted_digit(4, mpz_class(1));
    CHECK(same.value_exact() == omega.value_exact());
}

TEST_CASE("exact golden values satisfy the defining identities") {
    contfrac g = contfrac::golden();
    golden_field t = g.value_exact();
    CHECK(t == golden_field::golden_tail());
    for (size_t i = 1; i <= 5; ++i) CHECK(g.alpha_exact(i) == t);

    contfrac cf({1, 1, 1, 20}, cf_tail::all_ones);
    // alpha_5 restarts the all-ones tail
    CHECK(cf.alpha_exact(5) == t);
    // alpha_4 = 1/(20 + alpha_5)
    CHECK(cf.alpha_exact(4) == (golden_field::rational(20) + t).recip());
}

TEST_CASE("alpha enclosures bracket the exact orbit") {
    contfrac cf({2, 7, 1, 1, 3}, cf_tail::all_ones);
    auto encl = cf.alpha_enclosures(8, 128);
    REQUIRE(encl.size() == 8);
    for (size_t i = 1; i <= 8; ++i) {
        golden_field exact = cf.alpha_exact(i);
        CHECK(encl[i - 1].contains(exact.enclosure(256)));
        CHECK(encl[i - 1].is_positive());
    }
}

TEST_CASE("terminating expansions canonicalize a trailing one") {
    contfrac a({3, 1}, cf_tail::terminating);
    REQUIRE(a.prefix_len() == 1);
    CHECK(a.digit(1) == 4);
    CHECK(a.value_exact().rational_value() == mpq_class(1, 4));
    contfrac b({2, 1, 1}, cf_tail::terminating);
    REQUIRE(b.prefix_len() == 2);
    CHECK(b.digit(2) == 2);
    CHECK(b.value_exact().rational_value() == mpq_class(2, 5));
    // the theta = 1 endpoint keeps its single digit
    contfrac one({1}, cf_tail::terminating);
    CHECK(one.prefix_len() == 1);
    CHECK(one.digit(1) == 1);
    // orbit entries of canonical spellings never reach 1, so the adjacent
    // product below stays strictly below one half even at the last pair
    contfrac c({1, 1}, cf_tail::terminating);
    REQUIRE(c.prefix_len() == 1);
    CHECK(c.digit(1) == 2);
    CHECK(c.alpha_exact(1).rational_value() == mpq_class(1, 2));
}

TEST_CASE("adjacent gauss orbit values multiply below one half") {
    // exact-arithmetic sample; the acceptance sweep covers 10^4 cases
    std::mt19937_64 gen(7);
    std::uniform_int_distribution<long> digit(1, 5);
    std::uniform_int_distribution<int> len(2, 8);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<mpz_class> r;
        int n = len(gen);
        for (int i = 0; i < n; ++i) r.emplace_back(digit(gen));
        contfrac cf(r, cf_tail::all_ones);
        for (int k = 2; k <= n; ++k) {
            golden_field prod = cf.alpha_exact(k - 1) * cf.alpha_exact(k);
            CHECK(prod < golden_field::rational(mpq_class(1, 2)));
        }
    }
}

TEST_CASE("value enclosures agree with exact values") {
    contfrac cf({1, 1, 1, 20}, cf_tail::terminating);
    CHECK(cf.value(96).contains(mpq_class(41, 62)));
    contfrac g = contfrac::golden();
    CHECK(g.value(96).contains(golden_field::golden_tail().enclosure(256)));
    contfrac big({1, mpz_class("123456789123456789"), 2}, cf_tail::all_ones);
    CHECK(big.value(96).is_positive());
}
