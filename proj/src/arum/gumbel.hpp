#pragma once

#include <vector>

namespace arum {

// Closed forms for the classic special case of i.i.d. standard Gumbel shocks.
// Both are evaluated with max-subtraction so extreme utilities do not overflow.

// log(sum_k exp(u_k))
double log_sum_exp(const std::vector<double>& u);

// p_k = exp(u_k) / sum_j exp(u_j)
std::vector<double> gumbel_choice_prob(const std::vector<double>& u);

// V(u) = logsumexp(u) - log K, the Gumbel social surplus.
double gumbel_social_surplus(const std::vector<double>& u);

}  // namespace arum
