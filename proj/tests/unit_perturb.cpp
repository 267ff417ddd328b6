#include <doctest.h>

#include "brjuno/contfrac.hpp"
#include "brjuno/errors.hpp"
#include "brjuno/perturb.hpp"
#include "brjuno/phi.hpp"

using namespace brjuno;

TEST_CASE("insertion depth satisfies its three floor conditions") {
    contfrac omega({1, 1, 1}, cf_tail::all_ones);
    for (mpq_class eps : {mpq_class(1, 2), mpq_class(1, 10)}) {
        m_choice mc = choose_m(omega, 3, eps);
        CHECK(mc.m >= 2);
        CHECK(mc.m >= mc.m_tail + 1);
        CHECK(mc.m >= mc.m_slack);
        CHECK(mc.m >= mc.m_guard);
        // independent re-check of the tail floor
        interval tail = phi_tail_from(omega, 3 + mc.m_tail + 1, 160);
        CHECK(tail.certainly_lt(eps / 40));
    }
    m_choice small = choose_m(omega, 3, mpq_class(1, 2));
    m_choice tight = choose_m(omega, 3, mpq_class(1, 100));
    CHECK(tight.m >= small.m);
}

TEST_CASE("guard depth collapses to one for large increments") {
    contfrac omega({1, 1, 1}, cf_tail::all_ones);
    CHECK(tail_guard_m0(omega, 3, mpq_class(4)) == 1);
    CHECK(tail_guard_m0(omega, 3, mpq_class(1, 10)) >= 1);
}

TEST_CASE("crossing search certifies the window and its minimality") {
    contfrac omega({1, 1, 1}, cf_tail::all_ones);
    mpq_class eps(1, 2);
    m_choice mc = choose_m(omega, 3, eps);
    perturbation_plan plan = find_crossing(omega, 3, mc.m, eps);

    CHECK(plan.exact_first_crossing);
    CHECK(plan.beta.extends(omega));
    CHECK(plan.big_digit >= 2);
    CHECK(!plan.visited.empty());

    // fresh enclosures, independent of those stored in the plan; the margin
    // at the first crossing can be tiny, so walk a doubling precision ladder
    bool window_ok = false;
    for (long kb = 60; kb <= (1L << 14) && !window_ok; kb *= 2) {
        interval diff = phi(plan.beta, kb) - phi(omega, kb);
        window_ok = diff.certainly_gt(eps) && diff.certainly_lt(2 * eps);
    }
    CHECK(window_ok);

    // the previous digit does not yet cross the lower edge
    size_t ins = plan.n + plan.m - omega.prefix_len();
    contfrac prev = omega.with_inserted_digit(ins, plan.big_digit - 1);
    bool minimal_ok = false;
    for (long kb = 60; kb <= (1L << 14) && !minimal_ok; kb *= 2) {
        interval diff_prev = phi(prev, kb) - phi(omega, kb);
        minimal_ok = diff_prev.certainly_le(interval::from_mpq(eps, 96));
    }
    CHECK(minimal_ok);
}

TEST_CASE("crossing search on a non-golden prefix still lands inside") {
    contfrac omega({2, 3}, cf_tail::all_ones);
    mpq_class eps(1, 3);
    m_choice mc = choose_m(omega, 2, eps);
    perturbation_plan plan = find_crossing(omega, 2, mc.m, eps);
    bool window_ok = false;
    for (long kb = 60; kb <= (1L << 14) && !window_ok; kb *= 2) {
        interval diff = phi(plan.beta, kb) - phi(omega, kb);
        window_ok = diff.certainly_gt(eps) && diff.certainly_lt(2 * eps);
    }
    CHECK(window_ok);
}

TEST_CASE("stabilization point is one on the all-ones expansion") {
    CHECK(stabilization_point(contfrac::golden(), mpq_class(1, 2)) == 1);
    contfrac cf({1, 1, 1, 50}, cf_tail::all_ones);
    size_t loose = stabilization_point(cf, mpq_class(1, 2));
    size_t tight = stabilization_point(cf, mpq_class(1, 10));
    CHECK(loose >= 1);
    CHECK(tight >= loose);
}

TEST_CASE("geometric schedule halves each step") {
    auto s = geometric_schedule(3);
    REQUIRE(s.size() == 3);
    CHECK(s[0] == mpq_class(1, 2));
    CHECK(s[1] == mpq_class(1, 4));
    CHECK(s[2] == mpq_class(1, 8));
}

TEST_CASE("feasible increments grow with the digit budget") {
    contfrac g = contfrac::golden();
    mpq_class lo = feasible_epsilon(g, 1, 300);
    mpq_class hi = feasible_epsilon(g, 1, 3000);
    CHECK(lo > 0);
    CHECK(hi > lo);
}

TEST_CASE("staircase completes a feasible step and brackets the value") {
    contfrac prefix({1}, cf_tail::terminating);
    std::vector<mpq_class> schedule{mpq_class(1, 2)};
    staircase_result res = staircase(prefix, schedule);
    REQUIRE(res.complete);
    REQUIRE(res.states.size() == 1);
    CHECK(res.failure.empty());

    const fooling_state& st = res.states[0];
    CHECK(st.step == 1);
    CHECK(st.epsilon == schedule[0]);
    CHECK(st.digit >= 2);
    CHECK(st.l <= st.r);
    dyadic mid = st.phi.mid();
    CHECK(st.l <= mid);
    CHECK(mid <= st.r);

    // the certified increment sits inside (eps, 2 eps): re-derive from scratch
    contfrac base({1}, cf_tail::all_ones);
    CHECK(st.gamma.extends(base));
    bool window_ok = false;
    for (long kb = 60; kb <= (1L << 14) && !window_ok; kb *= 2) {
        interval diff = phi(st.gamma, kb) - phi(base, kb);
        window_ok = diff.certainly_gt(schedule[0]) && diff.certainly_lt(2 * schedule[0]);
    }
    CHECK(window_ok);
}

TEST_CASE("staircase reports an honest partial result at the digit cap") {
    contfrac prefix({1}, cf_tail::terminating);
    staircase_result res = staircase(prefix, geometric_schedule(5));
    CHECK_FALSE(res.complete);
    CHECK(res.states.size() == 1);
    CHECK(res.states[0].step == 1);
    CHECK(!res.failure.empty());
    // the second digit would need astronomically many bits: the insertion
    // depth forced by the shrunken increment wipes out the prefix products
    CHECK(res.bits_estimate > 1e30);
}

TEST_CASE("digit cap raises before attempting an infeasible crossing") {
    contfrac omega({1}, cf_tail::all_ones);
    // force a second-step-sized problem directly: a tiny increment over a
    // prefix already carrying a huge digit
    mpq_class eps(1, 2);
    m_choice mc = choose_m(omega, 1, eps);
    perturbation_plan plan = find_crossing(omega, 1, mc.m, eps);
    contfrac gamma = plan.beta;
    m_choice mc2 = choose_m(gamma, gamma.prefix_len(), mpq_class(1, 4));
    CHECK_THROWS_AS(find_crossing(gamma, gamma.prefix_len(), mc2.m, mpq_class(1, 4)),
                    digit_cap_error);
}
