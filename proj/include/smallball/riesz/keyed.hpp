#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "smallball/grid/grid_function.hpp"

namespace smallball {

// Groups the cells of a grid by the tuple of values several integer grids
// take there. A function that depends on the cell only through that tuple is
// evaluated once per distinct tuple, which keeps exact rational work small.
class KeyIndex {
 public:
  explicit KeyIndex(std::span<const GridFunction<Integer>* const> parts);

  const Resolution& resolution() const { return res_; }
  std::size_t key_count() const { return keys_.size() / width_; }
  std::span<const Integer> key(std::size_t k) const { return {keys_.data() + k * width_, width_}; }
  std::uint64_t count(std::size_t k) const { return counts_[k]; }
  std::uint32_t key_of_cell(std::size_t cell) const { return cell_key_[cell]; }
  std::size_t cells() const { return cell_key_.size(); }

 private:
  Resolution res_;
  std::size_t width_ = 0;
  std::vector<Integer> keys_;
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint32_t> cell_key_;
};

template <FieldScalar S>
class KeyedFunction {
 public:
  template <class Fn>
  KeyedFunction(std::shared_ptr<const KeyIndex> index, Fn&& value_of_key) : index_(std::move(index)) {
    values_.reserve(index_->key_count());
    for (std::size_t k = 0; k < index_->key_count(); ++k) values_.push_back(value_of_key(index_->key(k)));
  }

  const KeyIndex& index() const { return *index_; }
  const S& value_of_key(std::size_t k) const { return values_[k]; }
  const S& at(std::size_t cell) const { return values_[index_->key_of_cell(cell)]; }

  GridFunction<S> materialize() const {
    return GridFunction<S>::generate(index_->resolution(), [&](std::size_t i) { return at(i); });
  }

  template <class Weight>
  S weighted_sum(Weight&& w) const {
    S total(0);
    for (std::size_t k = 0; k < values_.size(); ++k)
      total += w(values_[k]) * convert<S>(static_cast<Integer>(index_->count(k)));
    return total / convert<S>(static_cast<Integer>(index_->cells()));
  }
  S mean() const {
    return weighted_sum([](const S& v) { return v; });
  }
  S l1() const {
    return weighted_sum([](const S& v) { return abs_value(v); });
  }
  S l2_squared() const {
    return weighted_sum([](const S& v) { return S(v * v); });
  }
  double lp_norm(double p) const {
    double total = 0;
    for (std::size_t k = 0; k < values_.size(); ++k)
      total += static_cast<double>(index_->count(k)) * std::pow(std::fabs(to_double(values_[k])), p);
    return std::pow(total / static_cast<double>(index_->cells()), 1.0 / p);
  }
  S min() const {
    S m = values_.at(0);
    for (const auto& v : values_)
      if (v < m) m = v;
    return m;
  }
  // Fraction of cells where the value is negative.
  S negative_fraction() const {
    std::uint64_t c = 0;
    for (std::size_t k = 0; k < values_.size(); ++k)
      if (values_[k] < 0) c += index_->count(k);
    return convert<S>(static_cast<Integer>(c)) / convert<S>(static_cast<Integer>(index_->cells()));
  }

  // E(h * this) for a grid function h on the same grid.
  template <GridScalar A>
  S inner(const GridFunction<A>& h) const {
    if (!(h.resolution() == index_->resolution())) throw DomainError("inner product needs a common grid");
    using F = field_t<A>;
    std::vector<F> sums(values_.size(), F(0));
    if constexpr (std::is_same_v<A, Integer>) {
      std::vector<__int128> isums(values_.size(), 0);
      for (std::size_t i = 0; i < h.size(); ++i) isums[index_->key_of_cell(i)] += h[i];
      for (std::size_t k = 0; k < values_.size(); ++k) {
        __int128 s = isums[k];
        if (s > std::numeric_limits<long>::max() || s < std::numeric_limits<long>::min())
          throw DomainError("inner product overflow");
        sums[k] = F(static_cast<long>(s));
      }
    } else {
      for (std::size_t i = 0; i < h.size(); ++i) sums[index_->key_of_cell(i)] += convert<F>(h[i]);
    }
    S total(0);
    for (std::size_t k = 0; k < values_.size(); ++k) total += values_[k] * convert<S>(sums[k]);
    return total / convert<S>(static_cast<Integer>(index_->cells()));
  }

 private:
  std::shared_ptr<const KeyIndex> index_;
  std::vector<S> values_;
};

}  // namespace smallball
