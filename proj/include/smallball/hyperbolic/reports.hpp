#pragma once

#include <cstdint>
#include <vector>

#include "smallball/hyperbolic/line_engine.hpp"

namespace smallball {

// Chain 2^-n sum|alpha| <= sqrt(#shapes) |H|_2 <= sqrt(#shapes) |H|_inf,
// checked on squares so the exact backend needs no square roots.
template <GridScalar S>
struct TrivialBoundReport {
  int n = 0;
  int d = 0;
  std::size_t shape_count = 0;
  field_t<S> coefficient_sum{};  // 2^-n sum |alpha(R)|
  field_t<S> l2_squared{};
  S sup{};
  bool cauchy_schwarz_holds = false;  // sum^2 <= #shapes |H|_2^2
  bool l2_below_sup = false;          // |H|_2^2 <= |H|_inf^2
};

template <GridScalar S>
TrivialBoundReport<S> trivial_bound_report(const CoefficientField<S>& alpha) {
  if (alpha.mode() != FieldMode::ExactVolume) throw DomainError("trivial bound uses exact-volume fields");
  TrivialBoundReport<S> rep;
  rep.n = alpha.n();
  rep.d = alpha.d();
  rep.shape_count = shape_count(alpha.n(), alpha.d());
  auto H = hyperbolic_sum(alpha);
  rep.coefficient_sum = alpha.coefficient_sum();
  rep.l2_squared = lp_moment(H, 2);
  rep.sup = sup_norm(H);
  using F = field_t<S>;
  F count = convert<F>(static_cast<Integer>(rep.shape_count));
  F lhs = rep.coefficient_sum * rep.coefficient_sum;
  F mid = count * rep.l2_squared;
  F sup_sq = convert<F>(rep.sup) * convert<F>(rep.sup);
  if constexpr (scalar_traits<S>::exact) {
    rep.cauchy_schwarz_holds = lhs <= mid;
    rep.l2_below_sup = rep.l2_squared <= sup_sq;
  } else {
    double slack = 1e-12 * (1.0 + to_double(mid));
    rep.cauchy_schwarz_holds = to_double(lhs) <= to_double(mid) + slack;
    rep.l2_below_sup = to_double(rep.l2_squared) <= to_double(sup_sq) * (1 + 1e-12) + 1e-12;
  }
  return rep;
}

struct SharpnessRow {
  int n = 0;
  std::size_t shape_count = 0;
  std::vector<Integer> sups;  // one per trial
  double mean_sup = 0;
  Integer max_sup = 0;
  bool coefficient_sums_ok = true;  // 2^-n sum|alpha| == #shapes in every trial
};

struct SharpnessReport {
  int d = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<SharpnessRow> rows;
  double fitted_exponent = 0;  // slope of log mean sup against log n
  double reference_low = 0;    // d/2
  double reference_high = 0;   // d-1
};

// Random sign coefficients; trial t at level n draws from Rng(seed, n * 2^20 + t).
SharpnessReport sharpness_experiment(std::span<const int> n_list, int d, int trials, std::uint64_t seed,
                                     unsigned threads = 1);

struct ExpIntegrabilityRow {
  int p = 0;
  double lp_norm = 0;
  double normalized = 0;  // p^{-(d-1)/2} |H|_p / |S_alpha|_inf
};

struct ExpIntegrabilityProfile {
  double square_function_sup = 0;  // sup_x (sum alpha(R)^2 1_R(x))^{1/2}
  std::vector<ExpIntegrabilityRow> rows;
  double sup_normalized = 0;
};

ExpIntegrabilityProfile exp_integrability_profile(const CoefficientField<double>& alpha, int p_max);

}  // namespace smallball
