#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smallball/grid/dyadic.hpp"
#include "smallball/hyperbolic/shape.hpp"

namespace smallball {

// Pairwise distinct in every coordinate. Throws on mixed level sums.
bool strongly_distinct(std::span<const Shape> shapes);

struct HaarProduct {
  enum class Kind { Haar, Indicator, Zero, NotApplicable };
  Kind kind = Kind::Zero;
  int sign = 1;
  DyadicRectangle support;  // S for Haar / Indicator
};

// prod h_{R_j} = sign * h_S with S the intersection, when no coordinate
// repeats a side length.
HaarProduct product_rule(std::span<const DyadicRectangle> rects);

// Two rectangles of equal area in the plane: 0, 1_R or +-h_{R cap R'}.
HaarProduct pair_product_2d(const DyadicRectangle& R, const DyadicRectangle& Rp);

// Some coordinate has a unique smallest side length.
bool mean_zero_predicate(std::span<const DyadicRectangle> rects);

struct ProductRuleCheck {
  std::uint64_t tuples = 0;
  std::optional<std::string> failure;  // first offending tuple
};

// Strongly distinct pairs and triples of d-dimensional shapes with level sum
// 1..n_max, compared cell by cell against direct Haar evaluation.
ProductRuleCheck check_product_rule(int n_max, int d = 3, bool triples = true);

// Test hook: flips every sign reported by product_rule.
void set_product_rule_fault(bool on);
bool product_rule_fault();

}  // namespace smallball
