#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "smallball/grid/histogram.hpp"
#include "smallball/hyperbolic/rfunction.hpp"

namespace smallball {

// coefficient * product of the listed r-functions.
struct ProductTerm {
  std::vector<std::uint32_t> factors;
  Integer coefficient = 1;
};

// Evaluates integer sums of products of r-functions one grid line at a time,
// so grids far larger than memory can be summarised exactly.
class LineEngine {
 public:
  LineEngine(std::vector<RFunction> functions, Resolution res);

  const Resolution& resolution() const { return res_; }
  std::size_t function_count() const { return rows_.size(); }

  ValueHistogram histogram(std::span<const ProductTerm> terms, unsigned threads = 1) const;
  Integer sup(std::span<const ProductTerm> terms, unsigned threads = 1) const;
  GridFunction<Integer> dense(std::span<const ProductTerm> terms) const;

 private:
  void evaluate_line(std::size_t line, std::span<const ProductTerm> terms, std::vector<std::int32_t>& acc,
                     std::vector<std::int8_t>& tmp) const;
  void check_terms(std::span<const ProductTerm> terms) const;

  Resolution res_;
  std::vector<RFunctionRows> rows_;
};

}  // namespace smallball
