#pragma once

#include <gmpxx.h>
#include <string>
#include <vector>

#include "brjuno/contfrac.hpp"
#include "brjuno/dyadic.hpp"
#include "brjuno/interval.hpp"

namespace brjuno {

struct perturb_options {
    // refuse to materialize an inserted digit larger than this many bits
    double digit_cap_bits = double(1L << 26);
    // below this digit size the search bisects down to the exact first
    // crossing; above it a single logarithmic landing step is used
    double exact_cap_bits = double(1L << 15);
};

// Insertion depth for a digit at position n+m of omega, as the max of three
// requirements:
//   m_tail:  series mass past n+m_tail is below eps/40 (m > m_tail)
//   m_slack: digit-change slack 2^{-(n+m-2)/2} * 14 * log(golden ratio),
//            a uniform-in-N bound on the sum of log-ratio drifts of the
//            first n+m terms, is below eps/2
//   m_guard: rewriting the tail past n+m_guard cannot pull the series value
//            below (1 - eps/(2 phi)) * phi
struct m_choice {
    size_t m;
    size_t m_tail;
    size_t m_slack;
    size_t m_guard;
};
m_choice choose_m(const contfrac& omega, size_t n, const mpq_class& eps);

// Guard depth m0: any expansion agreeing with omega through digit n+m0 has
// phi value above (1 - eps/(2 phi(omega))) * phi(omega).
size_t tail_guard_m0(const contfrac& omega, size_t n, const mpq_class& eps);

// Smallest certified prefix length t such that replacing the tail of omega
// beyond digit t with all ones moves phi by less than eps.
size_t stabilization_point(const contfrac& omega, const mpq_class& eps);

struct perturbation_plan {
    contfrac omega, beta;
    size_t n = 0, m = 0;
    mpz_class big_digit;
    interval phi_omega, phi_beta;
    mpq_class epsilon;
    // true when the search also certified that big_digit - 1 does not cross
    bool exact_first_crossing = false;
    // digit values whose phi was evaluated, in search order
    std::vector<mpz_class> visited;
};

// Finds N with  phi(omega) + eps < phi(beta^N) < phi(omega) + 2 eps
// certified, where beta^N inserts digit N at position n+m of omega.
perturbation_plan find_crossing(const contfrac& omega, size_t n, size_t m,
                                const mpq_class& eps,
                                const perturb_options& opt = {});

struct fooling_state {
    contfrac gamma;
    interval phi;
    // dyadic window pinning every later value of the sequence:
    // phi(gamma_j) lies in (l, r) for all j >= this step
    dyadic l, r;
    mpq_class epsilon;
    size_t step = 0;
    size_t m = 0;
    mpz_class digit;
};

struct staircase_result {
    std::vector<fooling_state> states;
    bool complete = false;
    std::string failure;        // reason when incomplete
    double bits_estimate = 0.0; // size of the digit that broke the cap
};

// Iterated crossings gamma_0 = [prefix; ones] -> gamma_1 -> ...: step i
// inserts one digit so that phi increases by an amount inside
// (schedule[i-1], 2*schedule[i-1]), with the tail guard of the previous
// window enforced on the insertion depth.  Stops early (partial result,
// complete = false) when a step would need a digit beyond the cap.
staircase_result staircase(const contfrac& prefix,
                           const std::vector<mpq_class>& schedule,
                           const perturb_options& opt = {});

// eps_i = 2^-i for i = 1..steps
std::vector<mpq_class> geometric_schedule(size_t steps);

// Increment sized to the series mass at depth ~n+11 of gamma so that the
// digit the crossing needs stays near target_bits bits.
mpq_class feasible_epsilon(const contfrac& gamma, size_t n, long target_bits);

} // namespace brjuno
