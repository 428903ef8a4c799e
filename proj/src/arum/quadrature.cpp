#include "arum/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "arum/errors.hpp"

namespace arum {

const double kGauss5Nodes[5] = {
    -0.90617984593866399280, -0.53846931010568309104, 0.0,
    0.53846931010568309104, 0.90617984593866399280};

const double kGauss5Weights[5] = {
    0.23692688505618908751, 0.47862867049936646804, 0.56888888888888888889,
    0.47862867049936646804, 0.23692688505618908751};

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels < 1) throw InvalidArgumentError("panel count must be >= 1");
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * width;
    double mid = lo + 0.5 * width;
    double half = 0.5 * width;
    double s = 0.0;
    for (int i = 0; i < 5; ++i) s += kGauss5Weights[i] * f(mid + half * kGauss5Nodes[i]);
    total += s * half;
  }
  return total;
}

double gauss_legendre_split(const std::function<double(double)>& f, double a, double b, int panels,
                            const std::vector<double>& breakpoints) {
  if (panels < 1) throw InvalidArgumentError("panel count must be >= 1");
  std::vector<double> bounds;
  bounds.push_back(a);
  for (double t : breakpoints)
    if (t > a && t < b) bounds.push_back(t);
  bounds.push_back(b);
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    double len = bounds[i + 1] - bounds[i];
    int sub = std::max(1, static_cast<int>(std::ceil(panels * len / (b - a))));
    total += gauss_legendre(f, bounds[i], bounds[i + 1], sub);
  }
  return total;
}

}  // namespace arum
