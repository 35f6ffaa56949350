#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smallball/core/error.hpp"
#include "smallball/hyperbolic/rfunction.hpp"
#include "smallball/riesz/keyed.hpp"
#include "smallball/riesz/params.hpp"
#include "smallball/riesz/temlyakov.hpp"

namespace smallball {

// F_t = sum of the r-functions of the shapes in block t (0-based).
GridFunction<Integer> block_sum(const std::vector<RFunction>& block, const Resolution& res);

template <GridScalar A>
GridFunction<Integer> block_sum(const CoefficientField<A>& alpha, const RieszParams& p, int t) {
  if (t < 0 || t >= p.q) throw DomainError("block index out of range");
  return block_sum(r_functions(alpha, p.blocks[t]), default_resolution(p.n, 3));
}

template <GridScalar A>
std::vector<GridFunction<Integer>> block_sums(const CoefficientField<A>& alpha, const RieszParams& p) {
  std::vector<GridFunction<Integer>> out;
  for (int t = 0; t < p.q; ++t) out.push_back(block_sum(alpha, p, t));
  return out;
}

template <GridScalar A>
void check_riesz_field(const CoefficientField<A>& alpha, const RieszParams& p) {
  if (alpha.d() != 3 || alpha.n() != p.n || alpha.mode() != FieldMode::ExactVolume)
    throw DomainError("short product needs an exact-volume d = 3 field at the parameters' n");
}

// prod_t (1 + rho_tilde F_t) over a key index of the F_t.
template <FieldScalar S>
KeyedFunction<S> short_product_keyed(const std::vector<GridFunction<Integer>>& F, const S& rho) {
  std::vector<const GridFunction<Integer>*> parts;
  for (const auto& g : F) parts.push_back(&g);
  auto index = std::make_shared<const KeyIndex>(parts);
  return KeyedFunction<S>(index, [&](std::span<const Integer> key) {
    S prod(1);
    for (Integer v : key) prod *= S(S(1) + rho * convert<S>(v));
    return prod;
  });
}

template <FieldScalar S, GridScalar A>
GridFunction<S> short_product(const CoefficientField<A>& alpha, const RieszParams& p) {
  check_riesz_field(alpha, p);
  return short_product_keyed<S>(block_sums(alpha, p), rho_tilde_as<S>(p)).materialize();
}

// Integer coefficient grids of the expansion of prod (1 + x F_t) in powers of
// x, split into strongly distinct and remaining tuples. Index u-1 holds x^u.
struct DegreeExpansion {
  std::vector<GridFunction<Integer>> sd;
  std::vector<GridFunction<Integer>> nsd;
  std::uint64_t sd_tuples = 0;
  std::uint64_t nsd_tuples = 0;
};

// prod (1 + #A_t) - 1 tuples are visited.
std::uint64_t expansion_tuple_count(const RieszParams& p);

DegreeExpansion expand_by_degree(const std::vector<std::vector<RFunction>>& blocks, const Resolution& res,
                                 std::uint64_t budget = kDefaultTupleBudget);

// e_u(F_1..F_q) cellwise, u = 1..q.
std::vector<GridFunction<Integer>> elementary_symmetric(const std::vector<GridFunction<Integer>>& F);

template <FieldScalar S>
struct SdDecomposition {
  GridFunction<S> psi;             // product form
  GridFunction<S> sd;              // sum over strongly distinct tuples
  GridFunction<S> nsd;             // psi - 1 - sd
  GridFunction<S> nsd_enumerated;  // sum over the remaining tuples
  DegreeExpansion expansion;
  bool identity_holds = false;         // psi == 1 + sd + nsd_enumerated cellwise
  bool degree_identity_holds = false;  // e_u == sd_u + nsd_u for every u (integers)
  std::optional<std::size_t> mismatch_cell;
};

template <FieldScalar S>
KeyedFunction<S> polynomial_keyed(const std::vector<GridFunction<Integer>>& coeffs, const S& x) {
  std::vector<const GridFunction<Integer>*> parts;
  for (const auto& g : coeffs) parts.push_back(&g);
  auto index = std::make_shared<const KeyIndex>(parts);
  return KeyedFunction<S>(index, [&](std::span<const Integer> key) {
    S acc(0);
    for (std::size_t u = key.size(); u-- > 0;) acc = S(x * S(acc + convert<S>(key[u])));
    return acc;
  });
}

template <FieldScalar S, GridScalar A>
SdDecomposition<S> sd_decomposition(const CoefficientField<A>& alpha, const RieszParams& p,
                                    std::uint64_t budget = kDefaultTupleBudget) {
  check_riesz_field(alpha, p);
  const Resolution res = default_resolution(p.n, 3);
  const S rho = rho_tilde_as<S>(p);
  std::vector<std::vector<RFunction>> blocks;
  for (int t = 0; t < p.q; ++t) blocks.push_back(r_functions(alpha, p.blocks[t]));
  SdDecomposition<S> out;
  out.expansion = expand_by_degree(blocks, res, budget);
  auto F = block_sums(alpha, p);
  auto psi = short_product_keyed<S>(F, rho);
  auto sd = polynomial_keyed<S>(out.expansion.sd, rho);
  auto nsd_enum = polynomial_keyed<S>(out.expansion.nsd, rho);
  out.psi = psi.materialize();
  out.sd = sd.materialize();
  out.nsd_enumerated = nsd_enum.materialize();
  std::vector<S> nsd(res.cells());
  out.identity_holds = true;
  for (std::size_t i = 0; i < res.cells(); ++i) {
    nsd[i] = S(out.psi[i] - S(1) - out.sd[i]);
    if (out.identity_holds && !scalars_agree(nsd[i], out.nsd_enumerated[i])) {
      out.identity_holds = false;
      out.mismatch_cell = i;
    }
  }
  out.nsd = GridFunction<S>(res, std::move(nsd));
  auto e = elementary_symmetric(F);
  out.degree_identity_holds = true;
  for (std::size_t u = 0; u < e.size(); ++u)
    if (!(e[u] == out.expansion.sd[u] + out.expansion.nsd[u])) out.degree_identity_holds = false;
  return out;
}

template <FieldScalar S>
struct Certificate {
  S inner{};        // <H, Phi>
  S l1{};           // |Phi|_1
  S lower_bound{};  // <H, Phi> / |Phi|_1, 0 when Phi = 0
  S sup_norm{};     // |H|_inf
  bool holds = false;
};

template <FieldScalar S>
struct DualityReport {
  S sd1_inner{};
  S sd1_expected{};  // rho_tilde 2^-n sum |alpha|
  bool sd1_identity = false;
  std::vector<S> higher_inner;  // <H, Psi^sd_u>, u >= 2
  bool higher_vanish = false;
  Certificate<S> psi;
  Certificate<S> sd;
  bool passed() const { return sd1_identity && higher_vanish && psi.holds && sd.holds; }
};

template <FieldScalar S, GridScalar A>
DualityReport<S> duality_certificate(const CoefficientField<A>& alpha, const RieszParams& p,
                                     std::uint64_t budget = kDefaultTupleBudget) {
  check_riesz_field(alpha, p);
  const Resolution res = default_resolution(p.n, 3);
  const S rho = rho_tilde_as<S>(p);
  std::vector<std::vector<RFunction>> blocks;
  for (int t = 0; t < p.q; ++t) blocks.push_back(r_functions(alpha, p.blocks[t]));
  auto exp = expand_by_degree(blocks, res, budget);
  auto H = hyperbolic_sum(alpha, res);
  DualityReport<S> rep;
  S rho_pow = rho;
  rep.higher_vanish = true;
  for (std::size_t u = 0; u < exp.sd.size(); ++u) {
    // <H, rho^u sd_u>
    S ip = convert<S>(detail::sum_values<A>(std::span<const A>((H * exp.sd[u].template cast<A>()).values())));
    ip = S(ip * rho_pow / convert<S>(static_cast<Integer>(res.cells())));
    if (u == 0) {
      rep.sd1_inner = ip;
    } else {
      rep.higher_inner.push_back(ip);
      if (!scalars_agree(ip, S(0))) rep.higher_vanish = false;
    }
    rho_pow = S(rho_pow * rho);
  }
  rep.sd1_expected = S(rho * convert<S>(alpha.coefficient_sum()));
  rep.sd1_identity = scalars_agree(rep.sd1_inner, rep.sd1_expected);
  const S sup = convert<S>(sup_norm(H));
  auto certify = [&](const KeyedFunction<S>& phi) {
    Certificate<S> c;
    c.inner = phi.inner(H);
    c.l1 = phi.l1();
    c.sup_norm = sup;
    c.lower_bound = c.l1 == S(0) ? S(0) : S(c.inner / c.l1);
    if constexpr (scalar_traits<S>::exact) {
      c.holds = c.inner <= S(sup * c.l1);
    } else {
      c.holds = c.inner <= sup * c.l1 * (1 + 1e-12) + 1e-12;
    }
    return c;
  };
  rep.psi = certify(short_product_keyed<S>(block_sums(alpha, p), rho));
  rep.sd = certify(polynomial_keyed<S>(exp.sd, rho));
  return rep;
}

// Gamma_t: sum over ordered pairs r != s in block t with r_1 = s_1 of f_r f_s.
GridFunction<Integer> gamma_sum(const std::vector<RFunction>& block, const Resolution& res);

template <GridScalar A>
GridFunction<Integer> gamma(const CoefficientField<A>& alpha, const RieszParams& p, int t) {
  check_riesz_field(alpha, p);
  if (t < 0 || t >= p.q) throw DomainError("block index out of range");
  return gamma_sum(r_functions(alpha, p.blocks[t]), default_resolution(p.n, 3));
}

struct GammaReport {
  int block = 0;
  std::size_t block_size = 0;
  std::size_t ordered_pairs = 0;
  Rational gamma_mean;
  bool identity_holds = false;  // E_{x1} F_t^2 == #A_t + E_{x1} Gamma_t
  bool pairs_mean_zero = false;  // every contributing pair passes the unique-maximum test
  std::optional<std::size_t> mismatch_cell;
};

GammaReport gamma_identity(const std::vector<RFunction>& block, const Resolution& res, int t = 0);

template <GridScalar A>
GammaReport gamma_identity(const CoefficientField<A>& alpha, const RieszParams& p, int t) {
  check_riesz_field(alpha, p);
  if (t < 0 || t >= p.q) throw DomainError("block index out of range");
  return gamma_identity(r_functions(alpha, p.blocks[t]), default_resolution(p.n, 3), t);
}

template <FieldScalar S>
struct PartialProductNorm {
  std::vector<int> blocks;  // V
  double r = 0;
  double norm = 0;  // |prod_{t in V} (1 + rho F_t)|_r
};

template <FieldScalar S>
struct RieszNormReport {
  S mean{};
  S negative_fraction{};
  S l1{};
  double l2 = 0;
  S l1_sd{};
  S l1_nsd{};
  S min_value{};
  S factor_lower_bound{};  // 1 - q rho max |F_t|_inf
  double a_prime = 0;
  double exp_reference = 0;  // exp(a' q^{2b})
  double rho_sq_block = 0;   // rho_tilde^2 #A_q
  double a_sq_q_power = 0;   // a^2 q^{2b-1}
  std::vector<PartialProductNorm<S>> partial;
};

template <FieldScalar S, GridScalar A>
RieszNormReport<S> norm_report(const CoefficientField<A>& alpha, const RieszParams& p,
                               const std::vector<std::vector<int>>& V_list, const std::vector<double>& r_list,
                               double a_prime = 1.0, std::uint64_t budget = kDefaultTupleBudget) {
  check_riesz_field(alpha, p);
  const S rho = rho_tilde_as<S>(p);
  auto F = block_sums(alpha, p);
  auto psi = short_product_keyed<S>(F, rho);
  RieszNormReport<S> rep;
  rep.mean = psi.mean();
  rep.negative_fraction = psi.negative_fraction();
  rep.l1 = psi.l1();
  rep.l2 = std::sqrt(to_double(psi.l2_squared()));
  rep.min_value = psi.min();
  Integer fmax = 0;
  for (const auto& f : F) fmax = std::max(fmax, sup_norm(f));
  rep.factor_lower_bound = S(S(1) - convert<S>(static_cast<Integer>(p.q)) * rho * convert<S>(fmax));
  auto dec = sd_decomposition<S>(alpha, p, budget);
  rep.l1_sd = polynomial_keyed<S>(dec.expansion.sd, rho).l1();
  std::vector<S> nsd(dec.nsd.values().begin(), dec.nsd.values().end());
  S l1n(0);
  for (const auto& v : nsd) l1n += abs_value(v);
  rep.l1_nsd = S(l1n / convert<S>(static_cast<Integer>(nsd.size())));
  rep.a_prime = a_prime;
  rep.exp_reference = std::exp(a_prime * std::pow(p.q, 2 * p.b));
  rep.rho_sq_block = p.rho_tilde * p.rho_tilde * static_cast<double>(p.blocks.back().size());
  rep.a_sq_q_power = p.a * p.a * std::pow(p.q, 2 * p.b - 1);
  for (const auto& V : V_list) {
    std::vector<GridFunction<Integer>> sub;
    for (int t : V) {
      if (t < 0 || t >= p.q) throw DomainError("block index out of range");
      sub.push_back(F[t]);
    }
    for (double r : r_list) {
      PartialProductNorm<S> row;
      row.blocks = V;
      row.r = r;
      row.norm = sub.empty() ? 1.0 : short_product_keyed<S>(sub, rho).lp_norm(r);
      rep.partial.push_back(row);
    }
  }
  return rep;
}

}  // namespace smallball
