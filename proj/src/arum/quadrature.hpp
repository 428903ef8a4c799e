#pragma once

#include <functional>
#include <vector>

namespace arum {

// 5-point Gauss-Legendre nodes and weights on [-1, 1].
extern const double kGauss5Nodes[5];
extern const double kGauss5Weights[5];

// Composite 5-point Gauss-Legendre over [a, b] with `panels` equal panels.
// Node evaluation order is fixed, so results are bit-reproducible.
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels);

// Same, with panel boundaries additionally placed at the given interior
// breakpoints (each sub-interval receives panels proportional to its length,
// at least one).
double gauss_legendre_split(const std::function<double(double)>& f, double a, double b, int panels,
                            const std::vector<double>& breakpoints);

}  // namespace arum
