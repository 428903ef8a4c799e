#include "arum/welfare.hpp"

#include <algorithm>
#include <cmath>

namespace arum {

double envelope_deviation_gumbel(const UtilityPoint<double>& u, double h) {
  if (!(h > 0)) throw InvalidArgumentError("step h must be positive");
  std::vector<double> p = gumbel_choice_prob(u);
  double worst = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    std::vector<double> up = u;
    std::vector<double> dn = u;
    up[k] += h;
    dn[k] -= h;
    double diff = (gumbel_social_surplus(up) - gumbel_social_surplus(dn)) / (2.0 * h);
    worst = std::max(worst, std::fabs(p[k] - diff));
  }
  return worst;
}

double welfare_change_path_integral(
    const std::function<std::vector<double>(const std::vector<double>&)>& prob_evaluator,
    const UtilityPoint<double>& u, const UtilityPoint<double>& u_tilde, int panels) {
  if (u.size() != u_tilde.size()) throw InvalidArgumentError("endpoint dimensions differ");
  std::vector<double> d(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) d[j] = u_tilde[j] - u[j];
  auto integrand = [&](double t) {
    std::vector<double> ut(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) ut[j] = u[j] + t * d[j];
    std::vector<double> p = prob_evaluator(ut);
    double s = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) s += p[j] * d[j];
    return s;
  };
  return gauss_legendre(integrand, 0.0, 1.0, panels);
}

namespace {

void collect_pair_kinks(const std::vector<double>& eps, const std::vector<int>& feasible,
                        const UtilityPoint<double>& u, const std::vector<double>& d,
                        std::vector<double>& out) {
  for (std::size_t x = 0; x < feasible.size(); ++x) {
    for (std::size_t y = x + 1; y < feasible.size(); ++y) {
      int j = feasible[x];
      int kk = feasible[y];
      double slope = d[static_cast<std::size_t>(j)] - d[static_cast<std::size_t>(kk)];
      if (slope == 0.0) continue;
      double gap = (u[static_cast<std::size_t>(kk)] + eps[static_cast<std::size_t>(kk)]) -
                   (u[static_cast<std::size_t>(j)] + eps[static_cast<std::size_t>(j)]);
      double t = gap / slope;
      if (t > 0.0 && t < 1.0) out.push_back(t);
    }
  }
}

}  // namespace

std::vector<double> path_kinks(const Model<double>& model, const UtilityPoint<double>& u,
                               const UtilityPoint<double>& u_tilde) {
  std::vector<double> d(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) d[j] = u_tilde[j] - u[j];
  std::vector<double> out;
  std::visit(
      [&]<class D>(const D& dist) {
        for (const auto& atom : dist.atoms()) {
          if constexpr (std::is_same_v<D, ArumCsDistribution<double>>) {
            collect_pair_kinks(atom.eps, atom.consideration, u, d, out);
          } else {
            std::vector<double> eps;
            std::vector<int> feasible;
            for (int j = 0; j < static_cast<int>(atom.eps.size()); ++j) {
              if (atom.eps[static_cast<std::size_t>(j)].is_finite()) {
                feasible.push_back(j);
              }
            }
            eps.resize(atom.eps.size(), 0.0);
            for (int j : feasible)
              eps[static_cast<std::size_t>(j)] = atom.eps[static_cast<std::size_t>(j)].value();
            collect_pair_kinks(eps, feasible, u, d, out);
          }
        }
      },
      model);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double welfare_change_path_integral(const Model<double>& model, const UtilityPoint<double>& u,
                                    const UtilityPoint<double>& u_tilde, int panels) {
  if (static_cast<int>(u.size()) != model_alternatives(model) || u.size() != u_tilde.size())
    throw InvalidArgumentError("endpoint dimensions do not match model");
  std::vector<double> d(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) d[j] = u_tilde[j] - u[j];
  auto integrand = [&](double t) {
    std::vector<double> ut(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) ut[j] = u[j] + t * d[j];
    SimplexVector<double> p = choice_prob(model, ut);
    double s = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) s += p[static_cast<int>(j)] * d[j];
    return s;
  };
  return gauss_legendre_split(integrand, 0.0, 1.0, panels, path_kinks(model, u, u_tilde));
}

}  // namespace arum
