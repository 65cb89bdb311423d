#pragma once

#include <vector>

namespace su11 {

struct Rule {
    std::vector<double> x, w;
};

Rule gauss_legendre(int n, double a, double b);
// nodes/weights for int_0^inf e^{-t} g(t) dt
Rule gauss_laguerre(int n);
// n equispaced angles on [0, 2pi), weight 2pi/n
Rule uniform_angles(int n);

}  // namespace su11
