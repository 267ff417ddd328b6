#pragma once

#include <gmpxx.h>
#include <vector>

#include "brjuno/contfrac.hpp"
#include "brjuno/interval.hpp"

namespace brjuno {

// Sum of P_{i-1} * log(1/alpha_i) over the Gauss orbit of cf, where
// P_j = alpha_1 ... alpha_j (P_0 = 1).  Requires an all-ones tail; returns an
// enclosure of width <= 2^-k.
interval phi(const contfrac& cf, long k);

// Same series truncated at a rational point: finite sum over the terminating
// expansion.  Enclosure of width <= 2^-k.
interval phi_trunc(const mpq_class& theta, long k);
interval phi_trunc(const contfrac& terminating, long k);

// Splits phi into the single term at index n+m and everything else.
// phi_minus is clamped at >= 0.
struct phi_decomposition {
    interval phi_minus, phi_one;
    size_t n, m;
};
phi_decomposition phi_decompose(const contfrac& cf, size_t n, size_t m, long k);

// Partial sum of log(q_{n+1}) / q_n over convergent denominators (q_0 = 1),
// n = 0..terms-1, plus a rigorous tail bound when the tail is all ones.
interval brjuno_sum_b(const contfrac& cf, size_t terms, mpfr_prec_t prec);

// Enclosure of the series tail: sum of terms with index >= j0 (j0 >= 1).
// All-ones tails only.
interval phi_tail_from(const contfrac& cf, size_t j0, mpfr_prec_t prec);

// P_0..P_count as enclosures (P_0 = 1).
std::vector<interval> prefix_products(const contfrac& cf, size_t count, mpfr_prec_t prec);

} // namespace brjuno
