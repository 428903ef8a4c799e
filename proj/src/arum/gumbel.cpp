#include "arum/gumbel.hpp"

#include <algorithm>
#include <cmath>

#include "arum/errors.hpp"

namespace arum {

double log_sum_exp(const std::vector<double>& u) {
  if (u.empty()) throw InvalidArgumentError("log_sum_exp of empty vector");
  double m = *std::max_element(u.begin(), u.end());
  double s = 0.0;
  for (double v : u) s += std::exp(v - m);
  return m + std::log(s);
}

std::vector<double> gumbel_choice_prob(const std::vector<double>& u) {
  if (u.size() < 2) throw InvalidArgumentError("need K >= 2 alternatives");
  double m = *std::max_element(u.begin(), u.end());
  double s = 0.0;
  std::vector<double> p(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    p[k] = std::exp(u[k] - m);
    s += p[k];
  }
  for (double& v : p) v /= s;
  return p;
}

double gumbel_social_surplus(const std::vector<double>& u) {
  return log_sum_exp(u) - std::log(static_cast<double>(u.size()));
}

}  // namespace arum
