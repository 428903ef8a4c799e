#pragma once

#include <cstdint>
#include <vector>

#include "arum/model.hpp"

namespace arum {

// Counter-based splitmix64: the value for (seed, draw, substream) is a pure
// function of its arguments, so results are reproducible regardless of how
// draws are scheduled.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t draw, std::uint64_t substream);

// Uniform in the open interval (0, 1).
double uniform_open01(std::uint64_t seed, std::uint64_t draw, std::uint64_t substream);

struct McEstimate {
  std::vector<double> probs;  // empirical choice frequencies
  std::vector<double> se;     // sqrt(p(1-p)/n) per coordinate
  std::uint64_t draws = 0;
};

// Empirical choice frequencies over n i.i.d. atom draws from a finite-support
// model. Throws ArgmaxTieError if a drawn atom ties at u.
McEstimate monte_carlo_choice_prob(const Model<double>& model, const UtilityPoint<double>& u,
                                   std::uint64_t n, std::uint64_t seed);

// Same, drawing i.i.d. standard Gumbel shocks (exact float ties rejected).
McEstimate monte_carlo_choice_prob_gumbel(const UtilityPoint<double>& u, std::uint64_t n,
                                          std::uint64_t seed);

}  // namespace arum
