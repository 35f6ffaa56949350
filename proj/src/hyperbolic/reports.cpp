#include "smallball/hyperbolic/reports.hpp"

#include <cmath>

#include "smallball/core/fit.hpp"

namespace smallball {

SharpnessReport sharpness_experiment(std::span<const int> n_list, int d, int trials, std::uint64_t seed,
                                     unsigned threads) {
  if (trials < 1) throw DomainError("need at least one trial");
  SharpnessReport rep;
  rep.d = d;
  rep.trials = trials;
  rep.seed = seed;
  rep.reference_low = d / 2.0;
  rep.reference_high = d - 1.0;
  std::vector<double> xs, ys;
  for (int n : n_list) {
    SharpnessRow row;
    row.n = n;
    row.shape_count = shape_count(n, d);
    auto shapes = enumerate_shapes(n, d);
    std::vector<ProductTerm> terms;
    for (std::uint32_t k = 0; k < shapes.size(); ++k) terms.push_back({{k}, 1});
    double total = 0;
    for (int t = 0; t < trials; ++t) {
      Rng rng(seed, (static_cast<std::uint64_t>(n) << 20) + static_cast<std::uint64_t>(t));
      auto alpha = random_field<Integer>(n, d, FieldMode::ExactVolume, AlphaKind::Signs, rng);
      if (alpha.coefficient_sum() != Rational(static_cast<long>(row.shape_count))) row.coefficient_sums_ok = false;
      // With +-1 coefficients H is the plain sum of the r-functions.
      LineEngine engine(r_functions(alpha, shapes), default_resolution(n, d));
      Integer s = engine.sup(terms, threads);
      row.sups.push_back(s);
      row.max_sup = std::max(row.max_sup, s);
      total += static_cast<double>(s);
    }
    row.mean_sup = total / trials;
    xs.push_back(n);
    ys.push_back(row.mean_sup);
    rep.rows.push_back(std::move(row));
  }
  if (xs.size() >= 2) rep.fitted_exponent = log_log_fit(xs, ys).slope;
  return rep;
}

ExpIntegrabilityProfile exp_integrability_profile(const CoefficientField<double>& alpha, int p_max) {
  if (p_max < 1) throw DomainError("p_max must be positive");
  Resolution res = default_resolution(alpha.n(), alpha.d());
  auto H = hyperbolic_sum(alpha, res);
  std::vector<double> sq(res.cells(), 0.0);
  for (std::size_t k = 0; k < alpha.shapes().size(); ++k) {
    auto c = alpha.values(k);
    for_each_shape_cell(alpha.shapes()[k], res,
                        [&](std::size_t cell, std::size_t p, int) { sq[cell] += c[p] * c[p]; });
  }
  ExpIntegrabilityProfile out;
  double m = 0;
  for (double v : sq) m = std::max(m, v);
  out.square_function_sup = std::sqrt(m);
  for (int p = 1; p <= p_max; ++p) {
    ExpIntegrabilityRow row;
    row.p = p;
    row.lp_norm = lp_norm(H, p);
    row.normalized = out.square_function_sup > 0
                         ? std::pow(p, -(alpha.d() - 1) / 2.0) * row.lp_norm / out.square_function_sup
                         : 0.0;
    out.sup_normalized = std::max(out.sup_normalized, row.normalized);
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace smallball
