#include <doctest.h>

#include "brjuno/complex_interval.hpp"
#include "brjuno/dynamics.hpp"
#include "brjuno/errors.hpp"
#include "brjuno/interval.hpp"

using namespace brjuno;

TEST_CASE("parameter map hits the known endpoints") {
    // theta = 1: lambda = 1, c = 1/2 - 1/4
    cinterval c1 = theta_to_c(mpq_class(1), 128);
    CHECK(c1.re.contains(mpq_class(1, 4)));
    CHECK(c1.im.contains(mpq_class(0)));
    // theta = 1/2: lambda = -1, c = -1/2 - 1/4
    cinterval c2 = theta_to_c(mpq_class(1, 2), 128);
    CHECK(c2.re.contains(mpq_class(-3, 4)));
    CHECK(c2.im.contains(mpq_class(0)));
}

TEST_CASE("the two normal forms are conjugate by a half-lambda shift") {
    // (w + lambda/2)^2 + c = (lambda w + w^2) + lambda/2 when c = lambda/2 - lambda^2/4
    for (long k = 1; k <= 100; ++k) {
        mpq_class theta(k, 101);
        quadratic_map tf = quadratic_map::from_theta(theta, 96);
        quadratic_map cf = quadratic_map::from_c(tf.to_c());
        cinterval half = tf.lambda.mul_2exp(-1);
        cinterval w = cinterval::from_mpq(mpq_class(k, 307), mpq_class(-k, 509), 96);
        cinterval lhs = cf.apply(w + half);
        cinterval rhs = tf.apply(w) + half;
        CHECK(lhs.re.intersects(rhs.re));
        CHECK(lhs.im.intersects(rhs.im));
    }
}

TEST_CASE("leading resonant coefficient at one half is minus two") {
    // by hand: with lambda = -1, P(P(z)) = z - 2 z^3 + z^4, so A = -2 at q = 2
    taylor_head head = iterate_taylor_A(mpq_class(1, 2));
    CHECK(head.q == 2);
    CHECK(head.a.re.contains(mpq_class(-2)));
    CHECK(head.a.im.contains(mpq_class(0)));
    CHECK(head.z1.re.contains(mpq_class(1)));
    CHECK(head.z1.im.contains(mpq_class(0)));
}

TEST_CASE("leading resonant coefficient at one is the square term itself") {
    taylor_head head = iterate_taylor_A(mpq_class(1));
    CHECK(head.q == 1);
    CHECK(head.a.re.contains(mpq_class(1)));
    CHECK(head.a.im.contains(mpq_class(0)));
}

TEST_CASE("linear coefficient returns to one at the cycle length") {
    taylor_head head = iterate_taylor_A(mpq_class(1, 3));
    CHECK(head.q == 3);
    CHECK(head.z1.re.contains(mpq_class(1)));
    CHECK(head.z1.im.contains(mpq_class(0)));
    CHECK(head.z1.re.width_upper().to_double() < 1e-12);
}

TEST_CASE("eager truncation preserves every kept coefficient") {
    cinterval lambda = lambda_of_theta(mpq_class(1, 3), 160);
    truncated_polynomial full = iterate_truncated(lambda, 3, 8, 160);
    truncated_polynomial cut = iterate_truncated(lambda, 3, 4, 160);
    REQUIRE(cut.coefficients.size() == 5);
    REQUIRE(full.coefficients.size() == 9);
    for (size_t j = 0; j <= 4; ++j) {
        CHECK(full.coefficients[j].re.intersects(cut.coefficients[j].re));
        CHECK(full.coefficients[j].im.intersects(cut.coefficients[j].im));
    }
}

TEST_CASE("upsilon at one half collapses to half the log of two pi") {
    upsilon_row row = upsilon_rational_detail(mpq_class(1, 2));
    CHECK(row.abs_a.contains(mpq_class(2)));
    CHECK(row.l.contains(mpq_class(1, 2)));
    interval oracle = interval::pi(192).mul_2exp(1).log().mul_2exp(-1);
    CHECK(row.upsilon.intersects(oracle));
    CHECK_FALSE(row.endpoint_convention);
}

TEST_CASE("upsilon at one follows the declared orbit convention") {
    upsilon_row row = upsilon_rational_detail(mpq_class(1));
    CHECK(row.endpoint_convention);
    CHECK(row.upsilon.intersects(interval::pi(192).mul_2exp(1).log()));
}

TEST_CASE("multiplier classifies exact cycles") {
    // indifferent: fixed point -1/2 of z^2 - 3/4 has derivative -1
    quadratic_map m1 = quadratic_map::from_c(cinterval::from_mpq(mpq_class(-3, 4), 0, 96));
    multiplier_report r1 =
        multiplier(m1, {cinterval::from_mpq(mpq_class(-1, 2), 0, 96)}, mpq_class(1, 1000));
    CHECK(r1.classification == cycle_class::indifferent);
    CHECK(r1.lambda.re.contains(mpq_class(-1)));

    // superattracting: 2-cycle {0, -1} of z^2 - 1
    quadratic_map m2 = quadratic_map::from_c(cinterval::exact(-1, 0, 96));
    multiplier_report r2 = multiplier(
        m2, {cinterval::exact(0, 0, 96), cinterval::exact(-1, 0, 96)}, mpq_class(1, 1000));
    CHECK(r2.classification == cycle_class::attracting);

    // repelling: fixed point 2 of z^2 - 2
    quadratic_map m3 = quadratic_map::from_c(cinterval::exact(-2, 0, 96));
    multiplier_report r3 =
        multiplier(m3, {cinterval::exact(2, 0, 96)}, mpq_class(1, 1000));
    CHECK(r3.classification == cycle_class::repelling);
    CHECK(r3.lambda.re.contains(mpq_class(4)));

    // a point that is not a cycle is rejected
    CHECK_THROWS_AS(multiplier(m1, {cinterval::exact(0, 0, 96)}, mpq_class(1, 1000)),
                    std::invalid_argument);
}

TEST_CASE("connectivity dichotomy from the critical orbit") {
    auto c_of = [](long re, long im) { return cinterval::exact(re, im, 96); };

    connectivity_report center = classify_connectivity(c_of(0, 0), 64, mpq_class(3));
    CHECK(center.verdict == connectivity::connected);

    connectivity_report cusp = classify_connectivity(
        cinterval::from_mpq(mpq_class(1, 4), 0, 96), 64, mpq_class(3));
    CHECK(cusp.verdict == connectivity::undecided);

    connectivity_report escaped = classify_connectivity(c_of(1, 0), 64, mpq_class(3));
    CHECK(escaped.verdict == connectivity::cantor);
    CHECK(escaped.escape_index == 3); // orbit 0, 1, 2, 5 leaves the radius-3 disk

    // the segment parameter never escapes and the trap does not apply
    connectivity_report segment = classify_connectivity(c_of(-2, 0), 64, mpq_class(3));
    CHECK(segment.verdict == connectivity::undecided);

    connectivity_report dendrite = classify_connectivity(c_of(0, 1), 64, mpq_class(3));
    CHECK(dendrite.verdict == connectivity::undecided);

    CHECK_THROWS_AS(classify_connectivity(c_of(0, 0), 64, mpq_class(1)),
                    std::invalid_argument);
}
