#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smallball/hyperbolic/rfunction.hpp"
#include "smallball/riesz/keyed.hpp"

namespace smallball {

namespace detail {

template <GridScalar A>
std::vector<GridFunction<Integer>> temlyakov_factors(const CoefficientField<A>& alpha) {
  if (alpha.d() != 2) throw DomainError("the two-dimensional product needs d = 2");
  const int n = alpha.n();
  Resolution res = default_resolution(n, 2);
  std::vector<GridFunction<Integer>> psi;
  for (int s = 0; s <= n; ++s) psi.push_back(r_function_grid(r_function(alpha, Shape{s, n - s}), res));
  return psi;
}

template <FieldScalar S>
KeyedFunction<S> temlyakov_keyed(const std::vector<GridFunction<Integer>>& psi) {
  std::vector<const GridFunction<Integer>*> parts;
  for (const auto& g : psi) parts.push_back(&g);
  auto index = std::make_shared<const KeyIndex>(parts);
  const S half = S(1) / S(2);
  return KeyedFunction<S>(index, [&](std::span<const Integer> key) {
    S prod(1);
    for (Integer v : key) prod *= S(S(1) + half * convert<S>(v));
    return prod;
  });
}

}  // namespace detail

// Psi = prod_{s=0..n} (1 + psi_s / 2), psi_s the r-function of shape (s, n-s).
template <FieldScalar S, GridScalar A>
GridFunction<S> temlyakov_product(const CoefficientField<A>& alpha) {
  return detail::temlyakov_keyed<S>(detail::temlyakov_factors(alpha)).materialize();
}

template <FieldScalar S>
struct TemlyakovReport {
  int n = 0;
  S min_value{};
  S mean{};
  S inner{};     // <H, Psi>
  S expected{};  // 2^{-n-1} sum over |R| = 2^-n of |alpha(R)|
  bool nonnegative = false;
  bool mean_is_one = false;
  bool identity_holds = false;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

template <FieldScalar S>
bool scalars_agree(const S& a, const S& b, double rel_tol = 1e-10) {
  if constexpr (scalar_traits<S>::exact) {
    return a == b;
  } else {
    return std::fabs(a - b) <= rel_tol * std::max({1.0, std::fabs(a), std::fabs(b)});
  }
}

template <FieldScalar S, GridScalar A>
TemlyakovReport<S> verify_temlyakov(const CoefficientField<A>& alpha) {
  auto psi = detail::temlyakov_factors(alpha);
  auto Psi = detail::temlyakov_keyed<S>(psi);
  TemlyakovReport<S> rep;
  rep.n = alpha.n();
  rep.min_value = Psi.min();
  rep.mean = Psi.mean();
  auto H = hyperbolic_sum(alpha, psi[0].resolution());
  rep.inner = Psi.inner(H);
  rep.expected = convert<S>(alpha.coefficient_sum()) / S(2);
  rep.nonnegative = !(rep.min_value < 0);
  rep.mean_is_one = scalars_agree(rep.mean, S(1));
  rep.identity_holds = scalars_agree(rep.inner, rep.expected);
  if (!rep.nonnegative) {
    for (std::size_t i = 0; i < Psi.index().cells(); ++i)
      if (Psi.at(i) < 0) {
        rep.failures.push_back("negative product at cell " + std::to_string(i));
        break;
      }
  }
  if (!rep.mean_is_one) rep.failures.push_back("mean " + to_string(rep.mean) + " != 1");
  if (!rep.identity_holds)
    rep.failures.push_back("<H,Psi> = " + to_string(rep.inner) + " but expected " + to_string(rep.expected));
  return rep;
}

}  // namespace smallball
