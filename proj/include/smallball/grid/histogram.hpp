#pragma once

#include <cstdint>
#include <map>

#include "smallball/grid/grid_function.hpp"

namespace smallball {

// Distribution of an integer valued grid function: value -> number of cells.
// All norms of the function follow exactly from it.
class ValueHistogram {
 public:
  ValueHistogram() = default;
  explicit ValueHistogram(const GridFunction<Integer>& f);

  void add(Integer value, std::uint64_t count = 1);
  void merge(const ValueHistogram& other);

  const std::map<Integer, std::uint64_t>& counts() const { return counts_; }
  std::uint64_t cells() const { return cells_; }
  Integer sup() const;
  Integer min() const;
  Integer max() const;
  Rational mean() const;
  Rational moment(unsigned p) const;  // E|f|^p
  double lp_norm(double p) const;
  Rational distribution(Integer lambda) const;  // P(|f| > lambda)

  bool operator==(const ValueHistogram&) const = default;

 private:
  std::map<Integer, std::uint64_t> counts_;
  std::uint64_t cells_ = 0;
};

}  // namespace smallball
