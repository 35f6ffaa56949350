#pragma once

#include <utility>
#include <vector>

#include "smallball/hyperbolic/shape.hpp"

namespace smallball {

// Parameters of the short Riesz product in d = 3. The first coordinate
// range {0..n} is cut into q consecutive intervals; block t holds the shapes
// whose first level falls into interval t.
struct RieszParams {
  int n = 0;
  int d = 3;
  double a = 1.0;
  double eps = 0.0;
  int q = 1;
  double b = 1.0 / 6.0;
  double rho_tilde = 0.0;        // a q^b / n
  double rho = 0.0;              // sqrt(q) / n
  Rational rho_tilde_exact;      // rational stand-in for rho_tilde in exact runs
  std::vector<std::pair<int, int>> intervals;  // inclusive, over r_1
  std::vector<std::vector<Shape>> blocks;

  int block_of(const Shape& r) const;
  std::size_t block_size(int t) const { return blocks.at(static_cast<std::size_t>(t)).size(); }
};

// q = round(a n^eps).
RieszParams make_params(int n, double a, double eps);
RieszParams make_params_q(int n, int q, double a = 1.0);
// Replaces the product parameter (both float and exact values).
RieszParams with_rho_tilde(RieszParams p, const Rational& rho_tilde);

// Nearest multiple of 2^-bits.
Rational dyadic_approximation(double x, int bits = 20);

template <class S>
S rho_tilde_as(const RieszParams& p) {
  if constexpr (std::is_same_v<S, double>) {
    return p.rho_tilde;
  } else {
    return p.rho_tilde_exact;
  }
}

}  // namespace smallball
