#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "smallball/grid/grid_function.hpp"

namespace smallball {

// h_I = -1 on the left half of I, +1 on the right half, 0 elsewhere.
template <GridScalar S = Integer>
GridFunction<S> haar_tensor(const DyadicRectangle& R, const Resolution& res) {
  require_resolves(res, R);
  return GridFunction<S>::generate(res, [&](std::size_t i) {
    auto c = res.cell(i);
    int v = 1;
    for (int t = 0; t < R.dim(); ++t) {
      int shift = res.level(t) - R[t].level;
      if ((c[t] >> shift) != R[t].pos) return S(0);
      if (((c[t] >> (shift - 1)) & 1) == 0) v = -v;
    }
    return S(v);
  });
}

template <GridScalar S = Integer>
GridFunction<S> haar_1d(const DyadicInterval& I, const Resolution& res) {
  if (res.dim() != 1) throw DomainError("haar_1d needs a one-dimensional grid");
  return haar_tensor<S>(DyadicRectangle{I}, res);
}

template <GridScalar S = Integer>
GridFunction<S> indicator(const DyadicRectangle& R, const Resolution& res) {
  if (R.dim() != res.dim()) throw DomainError("dimension mismatch");
  for (int t = 0; t < R.dim(); ++t)
    if (res.level(t) < R[t].level) throw ResolutionError("insufficient resolution for indicator");
  return GridFunction<S>::generate(res, [&](std::size_t i) {
    auto c = res.cell(i);
    for (int t = 0; t < R.dim(); ++t)
      if ((c[t] >> (res.level(t) - R[t].level)) != R[t].pos) return S(0);
    return S(1);
  });
}

namespace detail {

template <FieldScalar S>
S half(const S& x) {
  if constexpr (std::is_same_v<S, double>) {
    return x * 0.5;
  } else {
    Rational r;
    mpq_div_2exp(r.get_mpq_t(), x.get_mpq_t(), 1);
    return r;
  }
}

// Applies fn to every axis-`t` line of a row-major array.
template <class T, class Fn>
void for_each_line(std::vector<T>& data, const Resolution& res, int axis, Fn&& fn) {
  std::size_t n = std::size_t{1} << res.level(axis);
  std::size_t stride = 1;
  for (int t = axis + 1; t < res.dim(); ++t) stride <<= res.level(t);
  std::size_t outer = res.cells() / (n * stride);
  std::vector<T> line(n);
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t s = 0; s < stride; ++s) {
      std::size_t base = o * n * stride + s;
      for (std::size_t k = 0; k < n; ++k) line[k] = data[base + k * stride];
      fn(line);
      for (std::size_t k = 0; k < n; ++k) data[base + k * stride] = line[k];
    }
}

template <FieldScalar S>
void analyze_line(std::vector<S>& x) {
  std::vector<S> tmp(x.size());
  for (std::size_t len = x.size(); len > 1; len /= 2) {
    std::size_t h = len / 2;
    for (std::size_t i = 0; i < h; ++i) {
      tmp[i] = half<S>(S(x[2 * i] + x[2 * i + 1]));
      tmp[h + i] = half<S>(S(x[2 * i + 1] - x[2 * i]));
    }
    for (std::size_t i = 0; i < len; ++i) x[i] = tmp[i];
  }
}

template <FieldScalar S>
void synthesize_line(std::vector<S>& x) {
  std::vector<S> tmp(x.size());
  for (std::size_t len = 2; len <= x.size(); len *= 2) {
    std::size_t h = len / 2;
    for (std::size_t i = 0; i < h; ++i) {
      tmp[2 * i] = S(x[i] - x[h + i]);
      tmp[2 * i + 1] = S(x[i] + x[h + i]);
    }
    for (std::size_t i = 0; i < len; ++i) x[i] = tmp[i];
  }
}

}  // namespace detail

// Coefficients in the L-infinity normalised tensor Haar basis. Along each
// axis slot 0 is the constant function and slot 2^l + j is h of the interval
// (level l, position j).
template <FieldScalar S>
class HaarSpectrum {
 public:
  HaarSpectrum(Resolution res, std::vector<S> coeffs) : res_(res), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != res_.cells()) throw DomainError("coefficient count does not match resolution");
  }

  const Resolution& resolution() const { return res_; }
  std::span<const S> coefficients() const { return coeffs_; }
  const S& mean() const { return coeffs_[0]; }

  // nullopt in a slot selects the constant factor.
  S coefficient(std::span<const std::optional<DyadicInterval>> basis) const {
    return coeffs_[slot_index(basis)];
  }
  S coefficient(const DyadicRectangle& R) const {
    std::array<std::optional<DyadicInterval>, kMaxDim> b;
    for (int t = 0; t < R.dim(); ++t) b[t] = R[t];
    return coefficient(std::span<const std::optional<DyadicInterval>>(b.data(), R.dim()));
  }

  std::size_t slot_index(std::span<const std::optional<DyadicInterval>> basis) const {
    if (static_cast<int>(basis.size()) != res_.dim()) throw DomainError("dimension mismatch");
    std::array<std::int64_t, kMaxDim> slot{};
    for (int t = 0; t < res_.dim(); ++t) {
      if (!basis[t]) continue;
      if (basis[t]->level >= res_.level(t)) throw ResolutionError("Haar level not resolved by grid");
      slot[t] = (std::int64_t{1} << basis[t]->level) + basis[t]->pos;
    }
    return res_.index(std::span<const std::int64_t>(slot.data(), res_.dim()));
  }

  // Haar basis function measure |supp| for the basis element at a slot.
  Rational support_measure(std::size_t slot) const {
    auto c = res_.cell(slot);
    int level = 0;
    for (int t = 0; t < res_.dim(); ++t)
      if (c[t] > 0) level += 63 - __builtin_clzll(static_cast<unsigned long long>(c[t]));
    return pow2(-level);
  }

 private:
  Resolution res_;
  std::vector<S> coeffs_;
};

template <FieldScalar S>
HaarSpectrum<S> haar_analyze(const GridFunction<S>& f) {
  std::vector<S> data(f.values().begin(), f.values().end());
  for (int t = 0; t < f.dim(); ++t)
    detail::for_each_line(data, f.resolution(), t, [](std::vector<S>& x) { detail::analyze_line(x); });
  return HaarSpectrum<S>(f.resolution(), std::move(data));
}

template <FieldScalar S>
GridFunction<S> haar_synthesize(const HaarSpectrum<S>& spec) {
  std::vector<S> data(spec.coefficients().begin(), spec.coefficients().end());
  for (int t = spec.resolution().dim() - 1; t >= 0; --t)
    detail::for_each_line(data, spec.resolution(), t, [](std::vector<S>& x) { detail::synthesize_line(x); });
  return GridFunction<S>(spec.resolution(), std::move(data));
}

// S(f)^2 = sum over basis elements b of c_b^2 1_{supp b} (constant factors
// have full support). Exact in the rational backend.
template <FieldScalar S>
GridFunction<S> square_function_sq(const GridFunction<S>& f) {
  HaarSpectrum<S> spec = haar_analyze(f);
  std::vector<S> data;
  data.reserve(f.size());
  for (const auto& c : spec.coefficients()) data.push_back(S(c * c));
  for (int t = 0; t < f.dim(); ++t) {
    int m = f.resolution().level(t);
    detail::for_each_line(data, f.resolution(), t, [m](std::vector<S>& x) {
      std::vector<S> out(x.size(), x[0]);
      for (std::size_t k = 0; k < x.size(); ++k)
        for (int l = 0; l < m; ++l) out[k] += x[(std::size_t{1} << l) + (k >> (m - l))];
      x.swap(out);
    });
  }
  return GridFunction<S>(f.resolution(), std::move(data));
}

template <FieldScalar S>
GridFunction<double> square_function(const GridFunction<S>& f) {
  auto sq = square_function_sq(f);
  return GridFunction<double>::generate(f.resolution(),
                                        [&](std::size_t i) { return std::sqrt(to_double(sq[i])); });
}

struct LPRow {
  double p = 0;
  double f_norm = 0;
  double s_norm = 0;
  double ratio = 0;            // |f|_p / |S f|_p
  double ratio_over_sqrt_p = 0;
  double inverse_ratio = 0;    // |S f|_p / |f|_p
};

struct LPProfile {
  std::vector<LPRow> rows;
};

template <FieldScalar S>
LPProfile lp_profile(const GridFunction<S>& f, std::span<const double> p_list) {
  auto sq = square_function_sq(f);
  LPProfile out;
  for (double p : p_list) {
    LPRow row;
    row.p = p;
    row.f_norm = lp_norm(f, p);
    // |S f|_p = (E (S^2)^(p/2))^(1/p); even p stays exact.
    if (std::isinf(p)) {
      row.s_norm = std::sqrt(to_double(sup_norm(sq)));
    } else if (p == std::floor(p) && static_cast<long>(p) % 2 == 0) {
      row.s_norm = std::pow(to_double(lp_moment(sq, static_cast<unsigned>(p / 2))), 1.0 / p);
    } else {
      row.s_norm = lp_norm(square_function(f), p);
    }
    row.ratio = row.s_norm > 0 ? row.f_norm / row.s_norm : 0.0;
    row.inverse_ratio = row.f_norm > 0 ? row.s_norm / row.f_norm : 0.0;
    row.ratio_over_sqrt_p = std::isinf(p) ? 0.0 : row.ratio / std::sqrt(p);
    out.rows.push_back(row);
  }
  return out;
}

// max over integer 1 <= p <= p_max of p^(-1/alpha) |f|_p.
template <GridScalar S>
double orlicz_norm_estimate(const GridFunction<S>& f, double alpha, int p_max) {
  if (!(alpha > 0) || p_max < 1) throw DomainError("orlicz estimate needs alpha > 0 and p_max >= 1");
  double best = 0;
  for (int p = 1; p <= p_max; ++p) best = std::max(best, std::pow(p, -1.0 / alpha) * lp_norm(f, p));
  return best;
}

}  // namespace smallball
