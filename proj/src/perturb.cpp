#include "brjuno/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "brjuno/errors.hpp"
#include "brjuno/phi.hpp"

namespace brjuno {

namespace {

constexpr size_t depth_cap = 100000;

// ~ ceil(log2(1/eps)), at least 1
long eps_bits(const mpq_class& eps) {
    long num = long(mpz_sizeinbase(eps.get_num().get_mpz_t(), 2));
    long den = long(mpz_sizeinbase(eps.get_den().get_mpz_t(), 2));
    return std::max(den - num + 1, 1L);
}

void require_all_ones(const contfrac& omega, const char* who) {
    if (omega.tail() != cf_tail::all_ones)
        throw std::invalid_argument(std::string(who) + ": all-ones tail required");
}

void require_positive(const mpq_class& eps, const char* who) {
    if (eps <= 0)
        throw std::invalid_argument(std::string(who) + ": eps must be positive");
}

// floor(exp(x)) for a dyadic x, as an explicit integer
mpz_class exp_floor_mpz(const dyadic& x, mpfr_prec_t prec) {
    mpfr_t v, r;
    mpfr_init2(v, std::max<mpfr_prec_t>(prec, 64));
    mpfr_init2(r, std::max<mpfr_prec_t>(prec, 64));
    mpfr_set_z(v, x.mantissa().get_mpz_t(), MPFR_RNDN);
    mpfr_mul_2si(v, v, x.exponent(), MPFR_RNDN);
    mpfr_exp(r, v, MPFR_RNDN);
    mpz_class mant;
    long e = long(mpfr_get_z_2exp(mant.get_mpz_t(), r));
    mpfr_clear(v);
    mpfr_clear(r);
    mpz_class n;
    if (e >= 0)
        mpz_mul_2exp(n.get_mpz_t(), mant.get_mpz_t(), mp_bitcnt_t(e));
    else
        mpz_fdiv_q_2exp(n.get_mpz_t(), mant.get_mpz_t(), mp_bitcnt_t(-e));
    return n;
}

enum class window_pos { below, inside, above, unknown };

window_pos classify(const interval& phi_beta, const interval& phi_omega,
                    const mpq_class& eps) {
    interval d = phi_beta - phi_omega;
    if (d.certainly_gt(eps) && d.certainly_lt(2 * eps)) return window_pos::inside;
    if (d.certainly_le(eps)) return window_pos::below;
    if (d.certainly_ge(2 * eps)) return window_pos::above;
    return window_pos::unknown;
}

} // namespace

size_t tail_guard_m0(const contfrac& omega, size_t n, const mpq_class& eps) {
    require_all_ones(omega, "tail_guard_m0");
    require_positive(eps, "tail_guard_m0");
    long kb = eps_bits(eps) + 16;
    mpfr_prec_t prec = mpfr_prec_t(96 + 2 * kb);
    mpq_class x = eps / (2 * phi(omega, kb).hi_dyadic().to_mpq());
    if (x >= 1) return 1; // the floor (1-x)*phi is vacuous
    mpq_class quarter = eps / 4;
    size_t m1 = 1;
    for (;; ++m1) {
        if (m1 > depth_cap) throw precision_error("tail_guard_m0: mass condition did not settle");
        if (phi_tail_from(omega, n + m1 + 1, prec).certainly_lt(quarter)) break;
    }
    mpq_class rhs = 1 - x;
    for (size_t m0 = 1;; ++m0) {
        if (m0 > depth_cap) throw precision_error("tail_guard_m0: guard condition did not settle");
        interval t = interval(1, prec).mul_2exp(long(m1) + 3 - long(m0));
        if ((-t).exp().certainly_gt(rhs)) return m0;
    }
}

m_choice choose_m(const contfrac& omega, size_t n, const mpq_class& eps) {
    require_all_ones(omega, "choose_m");
    require_positive(eps, "choose_m");
    if (n < omega.prefix_len())
        throw std::invalid_argument("choose_m: n below the prefix length");
    mpfr_prec_t prec = mpfr_prec_t(96 + 2 * eps_bits(eps));

    mpq_class tail_budget = eps / 40;
    size_t m_tail = 1;
    for (;; ++m_tail) {
        if (m_tail > depth_cap) throw precision_error("choose_m: tail condition did not settle");
        if (phi_tail_from(omega, n + m_tail + 1, prec).certainly_lt(tail_budget)) break;
    }

    // uniform slack of the first n+m log-ratios under a digit change at n+m:
    // 2^{-(n+m-2)/2} * 14 * log(golden ratio) < eps/2, compared squared so the
    // half-integer power of two stays exact
    interval lhs2 = (golden_field::golden_ratio().enclosure(prec).log() * interval(14, prec)).sqr();
    mpq_class rhs2 = (eps / 2) * (eps / 2);
    size_t m_slack = 1;
    for (;; ++m_slack) {
        if (m_slack > depth_cap) throw precision_error("choose_m: slack condition did not settle");
        if (lhs2.mul_2exp(2 - long(n + m_slack)).certainly_lt(rhs2)) break;
    }

    size_t m_guard = tail_guard_m0(omega, n, eps);
    size_t m = std::max({m_tail + 1, m_slack, m_guard, size_t(2)});
    return {m, m_tail, m_slack, m_guard};
}

size_t stabilization_point(const contfrac& omega, const mpq_class& eps) {
    require_all_ones(omega, "stabilization_point");
    require_positive(eps, "stabilization_point");
    if (omega.is_golden()) return 1;
    long kb = eps_bits(eps) + 16;
    mpfr_prec_t prec = mpfr_prec_t(96 + 2 * kb);

    // depth m0: mass past m0 below eps/(4 e^2) and drift slack 2^{4-m0/2} below eps/2
    interval esq = interval(2, prec).exp();
    mpq_class quarter = eps / 4;
    size_t m0 = 1;
    for (;; ++m0) {
        if (m0 > depth_cap) throw precision_error("stabilization_point: mass condition did not settle");
        if ((phi_tail_from(omega, m0 + 1, prec) * esq).certainly_lt(quarter)) break;
    }
    mpq_class rhs2 = eps * eps / 4; // squared form of 2^{4-m0/2} < eps/2
    while (true) {
        if (m0 > depth_cap) throw precision_error("stabilization_point: drift condition did not settle");
        if (interval(1, prec).mul_2exp(8 - long(m0)).certainly_lt(rhs2)) break;
        ++m0;
    }

    mpq_class bound = 1 + eps / (4 * phi(omega, kb).hi_dyadic().to_mpq());
    for (size_t N = m0 + 1;; ++N) {
        if (N > depth_cap) throw precision_error("stabilization_point: depth condition did not settle");
        if (interval(1, prec).mul_2exp(long(m0) + 3 - long(N)).exp().certainly_lt(bound))
            return N;
    }
}

perturbation_plan find_crossing(const contfrac& omega, size_t n, size_t m,
                                const mpq_class& eps, const perturb_options& opt) {
    require_all_ones(omega, "find_crossing");
    require_positive(eps, "find_crossing");
    if (n < omega.prefix_len())
        throw std::invalid_argument("find_crossing: n below the prefix length");
    if (m < 2) throw std::invalid_argument("find_crossing: m must be at least 2");

    perturbation_plan plan;
    plan.omega = omega;
    plan.n = n;
    plan.m = m;
    plan.epsilon = eps;

    size_t ins = n + m - omega.prefix_len();
    long k = eps_bits(eps) + 4;
    mpfr_prec_t pprec = mpfr_prec_t(96 + 2 * k + long(n + m));
    interval phiw = phi(omega, k);

    // the window needs log N ~ 1.5 eps / P_{n+m-1}
    interval P = prefix_products(omega, n + m - 1, pprec).back();
    interval logN = interval::from_mpq(3 * eps / 2, pprec) / P;
    double bits = logN.hi_double() / std::log(2.0);
    if (!(bits <= opt.digit_cap_bits)) {
        std::ostringstream os;
        os << "find_crossing: crossing digit needs ~" << bits << " bits";
        throw digit_cap_error(os.str(), bits);
    }

    auto beta_of = [&](const mpz_class& N) { return omega.with_inserted_digit(ins, N); };

    if (bits <= opt.exact_cap_bits) {
        // bisect down to the exact first crossing
        auto crossed = [&](const mpz_class& N) -> bool {
            plan.visited.push_back(N);
            for (int round = 0; round < 10; ++round) {
                interval d = phi(beta_of(N), k) - phiw;
                if (d.certainly_gt(eps)) return true;
                if (d.certainly_le(eps)) return false;
                k *= 2;
                phiw = phi(omega, k);
            }
            throw precision_error("find_crossing: crossing test did not settle");
        };

        mpz_class n0 = exp_floor_mpz(logN.mid(), mpfr_prec_t(std::max(64.0, bits + 64)));
        if (n0 < 2) n0 = 2;
        mpz_class below = 1, above; // inserting 1 reproduces omega, so 1 never crosses
        if (crossed(n0)) {
            above = n0;
            mpz_class probe = n0 / 2;
            while (probe > 1 && crossed(probe)) {
                above = probe;
                probe /= 2;
            }
            if (probe > 1) below = probe;
        } else {
            below = n0;
            above = n0 * 2;
            int guard = 0;
            while (!crossed(above)) {
                below = above;
                above *= 2;
                if (++guard > 300) throw precision_error("find_crossing: bracket search ran away");
            }
        }
        while (above - below > 1) {
            mpz_class mid = (above + below) / 2;
            if (crossed(mid)) above = mid; else below = mid;
        }

        for (int round = 0; round < 10; ++round) {
            interval pbeta = phi(beta_of(above), k);
            switch (classify(pbeta, phiw, eps)) {
            case window_pos::inside:
                plan.big_digit = above;
                plan.beta = beta_of(above);
                plan.phi_omega = phiw;
                plan.phi_beta = pbeta;
                plan.exact_first_crossing = true;
                return plan;
            case window_pos::above:
                throw overshoot_error("find_crossing: first crossing steps past the window; increase m");
            case window_pos::below:
                throw precision_error("find_crossing: inconsistent crossing bracket");
            case window_pos::unknown:
                k *= 2;
                phiw = phi(omega, k);
            }
        }
        throw precision_error("find_crossing: window certification did not settle");
    }

    // landing mode: one logarithmic step, digit too large to bisect around
    static const std::pair<long, long> targets[] = {
        {3, 2}, {17, 10}, {13, 10}, {9, 5}, {5, 4}, {8, 5}};
    for (auto [tn, td] : targets) {
        interval t = interval::from_mpq(mpq_class(tn, td) * eps, pprec) / P;
        double this_bits = t.hi_double() / std::log(2.0);
        if (!(this_bits <= opt.digit_cap_bits)) {
            std::ostringstream os;
            os << "find_crossing: crossing digit needs ~" << this_bits << " bits";
            throw digit_cap_error(os.str(), this_bits);
        }
        mpz_class N = exp_floor_mpz(t.mid(), 192);
        if (N < 2) N = 2;
        plan.visited.push_back(N);
        for (int round = 0; round < 6; ++round) {
            interval pbeta = phi(beta_of(N), k);
            window_pos w = classify(pbeta, phiw, eps);
            if (w == window_pos::inside) {
                plan.big_digit = N;
                plan.beta = beta_of(N);
                plan.phi_omega = phiw;
                plan.phi_beta = pbeta;
                plan.exact_first_crossing = false;
                return plan;
            }
            if (w == window_pos::below || w == window_pos::above) break; // retry a shifted target
            k *= 2;
            phiw = phi(omega, k);
        }
    }
    throw overshoot_error("find_crossing: landing never settled inside the window; increase m");
}

std::vector<mpq_class> geometric_schedule(size_t steps) {
    std::vector<mpq_class> s;
    s.reserve(steps);
    for (size_t i = 1; i <= steps; ++i)
        s.emplace_back(mpq_class(1) / (mpz_class(1) << i));
    return s;
}

mpq_class feasible_epsilon(const contfrac& gamma, size_t n, long target_bits) {
    require_all_ones(gamma, "feasible_epsilon");
    if (target_bits < 8) throw std::invalid_argument("feasible_epsilon: target too small");
    // the digit size is U-shaped in the increment: large increments need many
    // bits outright, small ones force a deep insertion point first; walk the
    // increment downward and return the first fit
    double min_bits = 1e300;
    for (long e = -64; e <= 256; ++e) {
        mpq_class eps = e >= 0 ? mpq_class(mpz_class(1), mpz_class(1) << e)
                               : mpq_class(mpz_class(1) << (-e));
        m_choice mc = choose_m(gamma, n, eps);
        interval P = prefix_products(gamma, n + mc.m - 1, 192).back();
        double bits = (interval::from_mpq(3 * eps / 2, 192) / P).hi_double() / std::log(2.0);
        if (bits <= double(target_bits)) return eps;
        min_bits = std::min(min_bits, bits);
        if (bits > 4 * min_bits) break; // well past the minimum, no fit exists
    }
    std::ostringstream os;
    os << "feasible_epsilon: no increment fits in " << target_bits << " bits";
    throw digit_cap_error(os.str(), min_bits);
}

staircase_result staircase(const contfrac& prefix,
                           const std::vector<mpq_class>& schedule,
                           const perturb_options& opt) {
    staircase_result res;
    if (schedule.empty()) throw std::invalid_argument("staircase: empty schedule");
    for (const auto& e : schedule) require_positive(e, "staircase");

    // the prefix names a digit cylinder; the walk starts at its all-ones point
    contfrac gamma(prefix.prefix(), cf_tail::all_ones);

    std::vector<mpq_class> rem(schedule.size() + 1, 0);
    for (size_t i = schedule.size(); i-- > 0;)
        rem[i] = rem[i + 1] + schedule[i];

    for (size_t i = 0; i < schedule.size(); ++i) {
        const mpq_class& eps = schedule[i];
        size_t n = gamma.prefix_len();
        // window guard: the previous increment must survive every later rewrite
        mpq_class guard_eps = (i == 0) ? mpq_class(2 * schedule[0]) : schedule[i - 1];
        m_choice mc = choose_m(gamma, n, eps);
        size_t m = std::max(mc.m, tail_guard_m0(gamma, n, guard_eps));

        // estimate the digit before building anything
        interval P = prefix_products(gamma, n + m - 1, 192).back();
        double bits = (interval::from_mpq(3 * eps / 2, 192) / P).hi_double() / std::log(2.0);
        if (!(bits <= opt.digit_cap_bits)) {
            std::ostringstream os;
            os << "step " << (i + 1) << ": crossing digit needs ~" << bits
               << " bits, cap is " << opt.digit_cap_bits;
            res.failure = os.str();
            res.bits_estimate = bits;
            return res;
        }

        perturbation_plan plan;
        try {
            plan = find_crossing(gamma, n, m, eps, opt);
        } catch (const digit_cap_error& e) {
            std::ostringstream os;
            os << "step " << (i + 1) << ": " << e.what();
            res.failure = os.str();
            res.bits_estimate = e.bits_estimate;
            return res;
        }
        if (!plan.beta.extends(gamma))
            throw std::logic_error("staircase: extension invariant broken");

        fooling_state st;
        st.gamma = plan.beta;
        st.phi = plan.phi_beta;
        st.epsilon = eps;
        st.step = i + 1;
        st.m = m;
        st.digit = plan.big_digit;
        interval rem_iv = interval::from_mpq(rem[i + 1], 96);
        st.l = (plan.phi_beta + rem_iv).lo_dyadic();
        st.r = (plan.phi_beta + rem_iv.mul_2exp(1)).hi_dyadic();
        res.states.push_back(std::move(st));
        gamma = plan.beta;
    }
    res.complete = true;
    return res;
}

} // namespace brjuno
