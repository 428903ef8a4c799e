#include "arum/monte_carlo.hpp"

#include <cmath>

#include "arum/engine.hpp"

namespace arum {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

McEstimate finalize(std::vector<std::uint64_t> counts, std::uint64_t n) {
  McEstimate est;
  est.draws = n;
  est.probs.resize(counts.size());
  est.se.resize(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) {
    double p = static_cast<double>(counts[k]) / static_cast<double>(n);
    est.probs[k] = p;
    est.se[k] = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  }
  return est;
}

}  // namespace

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t draw, std::uint64_t substream) {
  std::uint64_t key = mix64(seed + (draw + 1) * kGamma);
  return mix64(key + (substream + 1) * kGamma);
}

double uniform_open01(std::uint64_t seed, std::uint64_t draw, std::uint64_t substream) {
  std::uint64_t bits = splitmix64_at(seed, draw, substream);
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

McEstimate monte_carlo_choice_prob(const Model<double>& model, const UtilityPoint<double>& u,
                                   std::uint64_t n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgumentError("draw count must be >= 1");
  const int K = model_alternatives(model);
  if (static_cast<int>(u.size()) != K)
    throw InvalidArgumentError("utility point dimension does not match model");

  // Cumulative weights in atom order; one uniform selects the atom.
  std::vector<double> cum;
  std::visit(
      [&](const auto& dist) {
        double s = 0.0;
        for (const auto& a : dist.atoms()) {
          s += a.weight;
          cum.push_back(s);
        }
      },
      model);
  cum.back() = 1.0;

  std::vector<std::uint64_t> counts(static_cast<std::size_t>(K), 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    double v = uniform_open01(seed, i, 0);
    std::size_t a = 0;
    while (a + 1 < cum.size() && v > cum[a]) ++a;
    int k = std::visit([&](const auto& dist) { return atom_choice(dist.atoms()[a], u, a); }, model);
    ++counts[static_cast<std::size_t>(k)];
  }
  return finalize(std::move(counts), n);
}

McEstimate monte_carlo_choice_prob_gumbel(const UtilityPoint<double>& u, std::uint64_t n,
                                          std::uint64_t seed) {
  if (n < 1) throw InvalidArgumentError("draw count must be >= 1");
  if (u.size() < 2) throw InvalidArgumentError("need K >= 2 alternatives");
  std::vector<std::uint64_t> counts(u.size(), 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    int best = 0;
    bool tied = false;
    double best_v = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
      double g = -std::log(-std::log(uniform_open01(seed, i, k)));
      double v = u[k] + g;
      if (k == 0 || v > best_v) {
        best = static_cast<int>(k);
        best_v = v;
        tied = false;
      } else if (v == best_v) {
        tied = true;
      }
    }
    if (tied) throw ArgmaxTieError(i, point_to_string(u));
    ++counts[static_cast<std::size_t>(best)];
  }
  return finalize(std::move(counts), n);
}

}  // namespace arum
