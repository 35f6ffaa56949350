#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "smallball/core/error.hpp"
#include "smallball/core/scalar.hpp"
#include "smallball/grid/dyadic.hpp"

namespace smallball {

// Piecewise constant function on the cells of a dyadic grid.
template <GridScalar S>
class GridFunction {
 public:
  using value_type = S;

  GridFunction() = default;
  explicit GridFunction(Resolution res, const S& fill = S(0))
      : res_(res), values_(res.cells(), fill) {}
  GridFunction(Resolution res, std::vector<S> values) : res_(res), values_(std::move(values)) {
    if (values_.size() != res_.cells()) throw DomainError("value count does not match resolution");
  }

  template <class Fn>
  static GridFunction generate(Resolution res, Fn&& fn) {
    std::vector<S> v;
    v.reserve(res.cells());
    for (std::size_t i = 0; i < res.cells(); ++i) v.push_back(fn(i));
    return GridFunction(res, std::move(v));
  }

  const Resolution& resolution() const noexcept { return res_; }
  int dim() const noexcept { return res_.dim(); }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const S> values() const noexcept { return values_; }
  const S& operator[](std::size_t i) const { return values_[i]; }
  const S& at(std::span<const std::int64_t> cell) const { return values_[res_.index(cell)]; }

  // Same function on a finer grid.
  GridFunction refine(const Resolution& fine) const {
    if (fine == res_) return *this;
    if (!fine.refines(res_)) throw ResolutionError("target resolution " + fine.str() +
                                                   " does not refine " + res_.str());
    std::vector<S> v;
    v.reserve(fine.cells());
    std::array<int, kMaxDim> shift{};
    for (int t = 0; t < dim(); ++t) shift[t] = fine.level(t) - res_.level(t);
    for (std::size_t i = 0; i < fine.cells(); ++i) {
      auto c = fine.cell(i);
      for (int t = 0; t < dim(); ++t) c[t] >>= shift[t];
      v.push_back(values_[res_.index(c)]);
    }
    return GridFunction(fine, std::move(v));
  }

  template <GridScalar T>
  GridFunction<T> cast() const {
    std::vector<T> v;
    v.reserve(values_.size());
    for (const auto& x : values_) v.push_back(convert<T>(x));
    return GridFunction<T>(res_, std::move(v));
  }

  bool operator==(const GridFunction& o) const { return res_ == o.res_ && values_ == o.values_; }

 private:
  Resolution res_;
  std::vector<S> values_;
};

namespace detail {

template <GridScalar S, class Op>
GridFunction<S> zip(const GridFunction<S>& f, const GridFunction<S>& g, Op op) {
  if (f.dim() != g.dim()) throw DomainError("dimension mismatch");
  Resolution r = join(f.resolution(), g.resolution());
  const GridFunction<S> a = f.refine(r);
  const GridFunction<S> b = g.refine(r);
  std::vector<S> v;
  v.reserve(r.cells());
  for (std::size_t i = 0; i < r.cells(); ++i) v.push_back(op(a[i], b[i]));
  return GridFunction<S>(r, std::move(v));
}

// Fixed pairwise tree; result does not depend on how callers chunk work.
inline double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 64) {
    double s = 0;
    for (double v : x) s += v;
    return s;
  }
  std::size_t half = std::size_t{1} << (63 - __builtin_clzll(x.size() - 1));
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

template <GridScalar S>
field_t<S> sum_values(std::span<const S> x) {
  if constexpr (std::is_same_v<S, double>) {
    return pairwise_sum(x);
  } else if constexpr (std::is_same_v<S, Integer>) {
    __int128 s = 0;
    for (Integer v : x) s += v;
    mpz_class z;
    bool neg = s < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(s) : static_cast<unsigned __int128>(s);
    mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0,
               std::array<std::uint64_t, 2>{static_cast<std::uint64_t>(u),
                                            static_cast<std::uint64_t>(u >> 64)}
                   .data());
    if (neg) z = -z;
    return Rational(z);
  } else {
    Rational s(0);
    for (const auto& v : x) s += v;
    return s;
  }
}

template <GridScalar S>
field_t<S> divide_by_cells(field_t<S> total, std::size_t cells) {
  if constexpr (std::is_same_v<field_t<S>, double>) {
    return total / static_cast<double>(cells);
  } else {
    Rational r = total / Rational(mpz_class(static_cast<unsigned long>(cells)));
    r.canonicalize();
    return r;
  }
}

}  // namespace detail

template <GridScalar S>
GridFunction<S> operator+(const GridFunction<S>& f, const GridFunction<S>& g) {
  return detail::zip(f, g, [](const S& a, const S& b) { return S(a + b); });
}
template <GridScalar S>
GridFunction<S> operator-(const GridFunction<S>& f, const GridFunction<S>& g) {
  return detail::zip(f, g, [](const S& a, const S& b) { return S(a - b); });
}
template <GridScalar S>
GridFunction<S> operator*(const GridFunction<S>& f, const GridFunction<S>& g) {
  return detail::zip(f, g, [](const S& a, const S& b) { return S(a * b); });
}

template <GridScalar S>
GridFunction<S> scale(const GridFunction<S>& f, const S& c) {
  std::vector<S> v;
  v.reserve(f.size());
  for (const auto& x : f.values()) v.push_back(S(c * x));
  return GridFunction<S>(f.resolution(), std::move(v));
}

// a f + b
template <GridScalar S>
GridFunction<S> affine(const GridFunction<S>& f, const S& a, const S& b) {
  std::vector<S> v;
  v.reserve(f.size());
  for (const auto& x : f.values()) v.push_back(S(a * x + b));
  return GridFunction<S>(f.resolution(), std::move(v));
}

template <GridScalar S>
field_t<S> expectation(const GridFunction<S>& f) {
  return detail::divide_by_cells<S>(detail::sum_values<S>(f.values()), f.size());
}

template <GridScalar S>
field_t<S> inner_product(const GridFunction<S>& f, const GridFunction<S>& g) {
  return expectation(f * g);
}

template <GridScalar S>
S sup_norm(const GridFunction<S>& f) {
  S m(0);
  for (const auto& x : f.values()) {
    S a = abs_value(x);
    if (a > m) m = a;
  }
  return m;
}

template <GridScalar S>
S min_value(const GridFunction<S>& f) {
  if (f.size() == 0) throw DomainError("empty grid");
  S m = f[0];
  for (const auto& x : f.values())
    if (x < m) m = x;
  return m;
}

// E|f|^p for integer p >= 1; exact in the exact backends.
template <GridScalar S>
field_t<S> lp_moment(const GridFunction<S>& f, unsigned p) {
  if (p == 0) throw DomainError("moment order must be positive");
  if constexpr (std::is_same_v<S, Integer>) {
    // Integer grids hold few distinct values; powers go through mpz.
    std::map<Integer, unsigned long> hist;
    for (Integer x : f.values()) ++hist[abs_value(x)];
    mpz_class total(0), power;
    for (const auto& [v, c] : hist) {
      mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(v), p);
      total += power * c;
    }
    Rational r(total, mpz_class(static_cast<unsigned long>(f.size())));
    r.canonicalize();
    return r;
  } else {
    std::vector<S> v;
    v.reserve(f.size());
    for (const auto& x : f.values()) {
      S a = abs_value(x);
      S r = a;
      for (unsigned k = 1; k < p; ++k) r = S(r * a);
      v.push_back(r);
    }
    return detail::divide_by_cells<S>(detail::sum_values<S>(std::span<const S>(v)), f.size());
  }
}

// (E|f|^p)^(1/p); integer p goes through the exact moment.
template <GridScalar S>
double lp_norm(const GridFunction<S>& f, double p) {
  if (!(p > 0)) throw DomainError("p must be positive");
  if (std::isinf(p)) return to_double(sup_norm(f));
  if (p == std::floor(p) && p <= 64) {
    return std::pow(to_double(lp_moment(f, static_cast<unsigned>(p))), 1.0 / p);
  }
  std::vector<double> v;
  v.reserve(f.size());
  for (const auto& x : f.values()) v.push_back(std::pow(std::fabs(to_double(x)), p));
  return std::pow(detail::pairwise_sum(v) / static_cast<double>(f.size()), 1.0 / p);
}

// Measure of { |f| > lambda }.
template <GridScalar S>
field_t<S> distribution(const GridFunction<S>& f, const S& lambda) {
  std::size_t count = 0;
  for (const auto& x : f.values())
    if (abs_value(x) > lambda) ++count;
  if constexpr (std::is_same_v<field_t<S>, double>) {
    return static_cast<double>(count) / static_cast<double>(f.size());
  } else {
    Rational r(mpz_class(static_cast<unsigned long>(count)),
               mpz_class(static_cast<unsigned long>(f.size())));
    r.canonicalize();
    return r;
  }
}

// Conditional expectation onto the sigma-algebra of a coarser grid; the
// result lives on that grid.
template <GridScalar S>
GridFunction<field_t<S>> conditional_expectation(const GridFunction<S>& f, const Resolution& coarse) {
  if (!f.resolution().refines(coarse))
    throw ResolutionError("conditioning grid " + coarse.str() + " is finer than " + f.resolution().str());
  using F = field_t<S>;
  const Resolution& fine = f.resolution();
  std::array<int, kMaxDim> shift{};
  int block_level = 0;
  for (int t = 0; t < f.dim(); ++t) {
    shift[t] = fine.level(t) - coarse.level(t);
    block_level += shift[t];
  }
  std::vector<F> acc(coarse.cells(), F(0));
  for (std::size_t i = 0; i < fine.cells(); ++i) {
    auto c = fine.cell(i);
    for (int t = 0; t < f.dim(); ++t) c[t] >>= shift[t];
    acc[coarse.index(c)] += convert<F>(f[i]);
  }
  for (auto& a : acc) {
    if constexpr (std::is_same_v<F, double>) {
      a = std::ldexp(a, -block_level);
    } else {
      a /= pow2(block_level);
      a.canonicalize();
    }
  }
  return GridFunction<F>(coarse, std::move(acc));
}

// First cell (on the common refinement) where f and g differ.
template <GridScalar S>
std::optional<std::size_t> first_mismatch(const GridFunction<S>& f, const GridFunction<S>& g) {
  Resolution r = join(f.resolution(), g.resolution());
  const GridFunction<S> a = f.refine(r);
  const GridFunction<S> b = g.refine(r);
  for (std::size_t i = 0; i < r.cells(); ++i)
    if (!(a[i] == b[i])) return i;
  return std::nullopt;
}

// Largest |f - g| relative to max(1, sup|f|, sup|g|).
template <GridScalar S>
double max_relative_difference(const GridFunction<S>& f, const GridFunction<S>& g) {
  Resolution r = join(f.resolution(), g.resolution());
  const GridFunction<S> a = f.refine(r);
  const GridFunction<S> b = g.refine(r);
  double scale_ = 1.0, diff = 0.0;
  for (std::size_t i = 0; i < r.cells(); ++i) {
    double x = to_double(a[i]), y = to_double(b[i]);
    scale_ = std::max({scale_, std::fabs(x), std::fabs(y)});
    diff = std::max(diff, std::fabs(x - y));
  }
  return diff / scale_;
}

}  // namespace smallball
