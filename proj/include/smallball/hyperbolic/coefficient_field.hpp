#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "smallball/core/error.hpp"
#include "smallball/core/rng.hpp"
#include "smallball/hyperbolic/shape.hpp"

namespace smallball {

// ExactVolume: shapes with |r| = n. Extended (d = 2): every |r| <= n.
enum class FieldMode { ExactVolume, Extended };

const char* field_mode_name(FieldMode m);
FieldMode parse_field_mode(const std::string& s);

std::vector<Shape> field_shapes(int n, int d, FieldMode mode);

// Coefficients alpha(R) indexed by shape and row-major position.
template <GridScalar S>
class CoefficientField {
 public:
  CoefficientField(int n, int d, FieldMode mode, std::vector<std::vector<S>> values)
      : n_(n), d_(d), mode_(mode), shapes_(field_shapes(n, d, mode)), values_(std::move(values)) {
    if (values_.size() != shapes_.size()) throw DomainError("one value array per shape expected");
    for (std::size_t k = 0; k < shapes_.size(); ++k) {
      if (values_[k].size() != shapes_[k].rectangle_count())
        throw DomainError("shape " + shapes_[k].str() + " needs " +
                          std::to_string(shapes_[k].rectangle_count()) + " values");
      index_.emplace(shapes_[k], k);
    }
  }

  template <class Fn>
  static CoefficientField generate(int n, int d, FieldMode mode, Fn&& fn) {
    std::vector<std::vector<S>> values;
    for (const Shape& r : field_shapes(n, d, mode)) {
      std::vector<S> v;
      v.reserve(r.rectangle_count());
      for (std::size_t p = 0; p < r.rectangle_count(); ++p) v.push_back(fn(r, p));
      values.push_back(std::move(v));
    }
    return CoefficientField(n, d, mode, std::move(values));
  }

  int n() const { return n_; }
  int d() const { return d_; }
  FieldMode mode() const { return mode_; }
  const std::vector<Shape>& shapes() const { return shapes_; }
  std::vector<Shape> exact_shapes() const { return enumerate_shapes(n_, d_); }
  bool has_shape(const Shape& r) const { return index_.count(r) != 0; }
  std::size_t shape_index(const Shape& r) const {
    auto it = index_.find(r);
    if (it == index_.end()) throw DomainError("shape " + r.str() + " not in coefficient field");
    return it->second;
  }
  std::span<const S> values(const Shape& r) const { return values_[shape_index(r)]; }
  std::span<const S> values(std::size_t shape_idx) const { return values_[shape_idx]; }
  const S& at(const DyadicRectangle& R) const { return values_[shape_index(shape_of(R))][position_index(R)]; }

  template <GridScalar T>
  CoefficientField<T> cast() const {
    std::vector<std::vector<T>> v;
    for (const auto& row : values_) {
      std::vector<T> out;
      for (const auto& x : row) out.push_back(convert<T>(x));
      v.push_back(std::move(out));
    }
    return CoefficientField<T>(n_, d_, mode_, std::move(v));
  }

  // 2^-n * sum |alpha(R)| over exact-volume rectangles.
  field_t<S> coefficient_sum() const {
    field_t<S> total(0);
    for (const Shape& r : exact_shapes())
      for (const auto& x : values(r)) total += convert<field_t<S>>(abs_value(x));
    if constexpr (std::is_same_v<field_t<S>, double>) {
      return std::ldexp(total, -n_);
    } else {
      total /= pow2(n_);
      return total;
    }
  }

 private:
  int n_, d_;
  FieldMode mode_;
  std::vector<Shape> shapes_;
  std::vector<std::vector<S>> values_;
  std::map<Shape, std::size_t> index_;
};

// Signs: +-1. Integers: uniform in [-3, 3], zero included. Dyadic: k/8 with
// |k| <= 8. The same Rng state gives the same field in every backend.
enum class AlphaKind { Signs, Integers, Dyadic };

AlphaKind parse_alpha_kind(const std::string& s);

template <GridScalar S>
CoefficientField<S> random_field(int n, int d, FieldMode mode, AlphaKind kind, Rng& rng) {
  if (std::is_same_v<S, Integer> && kind == AlphaKind::Dyadic)
    throw DomainError("dyadic coefficients need a rational or float field");
  return CoefficientField<S>::generate(n, d, mode, [&](const Shape&, std::size_t) {
    switch (kind) {
      case AlphaKind::Signs:
        return convert<S>(Integer{rng.sign()});
      case AlphaKind::Integers:
        return convert<S>(Integer{rng.between(-3, 3)});
      case AlphaKind::Dyadic:
        break;
    }
    Rational q(static_cast<long>(rng.between(-8, 8)), 8);
    q.canonicalize();
    return convert<S>(q);
  });
}

nlohmann::json field_to_json(const CoefficientField<Rational>& f);
nlohmann::json field_to_json(const CoefficientField<double>& f);
nlohmann::json field_to_json(const CoefficientField<Integer>& f);
// Values may be numbers or rational strings.
CoefficientField<Rational> field_from_json(const nlohmann::json& j);

}  // namespace smallball
