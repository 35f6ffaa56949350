#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "smallball/grid/dyadic.hpp"

namespace smallball {

// Vector of dyadic levels r with |r| = n; R has shape r when |R_t| = 2^-r_t.
class Shape {
 public:
  Shape() = default;
  Shape(std::initializer_list<int> r);
  explicit Shape(std::span<const int> r);

  int dim() const { return d_; }
  int n() const;
  int operator[](int t) const { return r_[t]; }
  std::span<const int> levels() const { return {r_.data(), static_cast<std::size_t>(d_)}; }
  // Number of rectangles of this shape (2^|r|).
  std::size_t rectangle_count() const;
  std::string str() const;

  auto operator<=>(const Shape&) const = default;

 private:
  std::array<int, kMaxDim> r_{};
  int d_ = 0;
};

std::size_t shape_count(int n, int d);

// All shapes with |r| = n in dimension d, lexicographically decreasing
// ((n,0,..) first).
std::vector<Shape> enumerate_shapes(int n, int d);

Shape shape_of(const DyadicRectangle& R);

// Rectangles of a shape in row-major position order.
std::vector<DyadicRectangle> rectangles_of_shape(const Shape& r);

// Row-major position index of a rectangle within its shape.
std::size_t position_index(const DyadicRectangle& R);
DyadicRectangle rectangle_at(const Shape& r, std::size_t position);

}  // namespace smallball
