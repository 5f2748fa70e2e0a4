#pragma once

#include <vector>

namespace cp1lab {

struct GaussRule {
    std::vector<double> nodes;    // in [-1, 1]
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
GaussRule gauss_legendre(int n);

/// The same rule affinely mapped to [a, b].
GaussRule gauss_legendre(int n, double a, double b);

}  // namespace cp1lab
