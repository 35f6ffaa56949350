#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "smallball/grid/grid_function.hpp"
#include "smallball/hyperbolic/coefficient_field.hpp"

namespace smallball {

// f_r = sum over R of shape r of sgn(alpha(R)) h_R, with sgn(0) = +1.
struct RFunction {
  Shape shape;
  std::vector<std::int8_t> signs;  // row-major positions
};

template <GridScalar S>
RFunction r_function(const CoefficientField<S>& alpha, const Shape& r) {
  RFunction f{r, {}};
  auto v = alpha.values(r);
  f.signs.reserve(v.size());
  for (const auto& x : v) f.signs.push_back(static_cast<std::int8_t>(sign_of(x)));
  return f;
}

template <GridScalar S>
std::vector<RFunction> r_functions(const CoefficientField<S>& alpha, const std::vector<Shape>& shapes) {
  std::vector<RFunction> out;
  out.reserve(shapes.size());
  for (const Shape& r : shapes) out.push_back(r_function(alpha, r));
  return out;
}

// Grid on which every Haar function of level sum n is resolved.
Resolution default_resolution(int n, int d);

// Calls fn(cell, position, haar_sign) for every cell of `res`; position is the
// rectangle of shape r containing the cell and haar_sign = h_R(cell).
template <class Fn>
void for_each_shape_cell(const Shape& r, const Resolution& res, Fn&& fn) {
  const int d = r.dim();
  if (res.dim() != d) throw DomainError("dimension mismatch");
  for (int t = 0; t < d; ++t)
    if (res.level(t) < r[t] + 1)
      throw ResolutionError("insufficient resolution: shape " + r.str() + " on grid " + res.str());
  std::array<std::vector<std::uint32_t>, kMaxDim> pos;
  std::array<std::vector<std::int8_t>, kMaxDim> hs;
  for (int t = 0; t < d; ++t) {
    std::int64_t m = res.extent(t);
    int shift = res.level(t) - r[t];
    pos[t].resize(m);
    hs[t].resize(m);
    for (std::int64_t i = 0; i < m; ++i) {
      pos[t][i] = static_cast<std::uint32_t>(i >> shift);
      hs[t][i] = ((i >> (shift - 1)) & 1) ? 1 : -1;
    }
  }
  std::array<std::int64_t, kMaxDim> ext{1, 1, 1};
  std::array<int, kMaxDim> rl{0, 0, 0};
  for (int t = 0; t < d; ++t) {
    ext[t] = res.extent(t);
    rl[t] = r[t];
  }
  std::size_t cell = 0;
  for (std::int64_t a = 0; a < ext[0]; ++a) {
    std::size_t pa = pos[0][a];
    int ha = hs[0][a];
    for (std::int64_t b = 0; b < ext[1]; ++b) {
      std::size_t pb = d > 1 ? (pa << rl[1]) | pos[1][b] : pa;
      int hb = d > 1 ? ha * hs[1][b] : ha;
      for (std::int64_t c = 0; c < ext[2]; ++c) {
        std::size_t pc = d > 2 ? (pb << rl[2]) | pos[2][c] : pb;
        int hc = d > 2 ? hb * hs[2][c] : hb;
        fn(cell++, pc, hc);
      }
    }
  }
}

template <GridScalar S = Integer>
GridFunction<S> r_function_grid(const RFunction& f, const Resolution& res) {
  std::vector<S> v(res.cells(), S(0));
  for_each_shape_cell(f.shape, res, [&](std::size_t cell, std::size_t p, int h) { v[cell] = S(h * f.signs[p]); });
  return GridFunction<S>(res, std::move(v));
}

// H = sum over the field's rectangles of alpha(R) h_R.
template <GridScalar S>
GridFunction<S> hyperbolic_sum(const CoefficientField<S>& alpha, const Resolution& res) {
  std::vector<S> v(res.cells(), S(0));
  for (std::size_t k = 0; k < alpha.shapes().size(); ++k) {
    auto coeffs = alpha.values(k);
    for_each_shape_cell(alpha.shapes()[k], res, [&](std::size_t cell, std::size_t p, int h) {
      if (h > 0) {
        v[cell] += coeffs[p];
      } else {
        v[cell] -= coeffs[p];
      }
    });
  }
  return GridFunction<S>(res, std::move(v));
}

template <GridScalar S>
GridFunction<S> hyperbolic_sum(const CoefficientField<S>& alpha) {
  return hyperbolic_sum(alpha, default_resolution(alpha.n(), alpha.d()));
}

// Expanded last-coordinate rows of an r-function: on line L (all coordinates
// but the last fixed) f_r = sign(L) * row(L)[i_last].
class RFunctionRows {
 public:
  RFunctionRows(const RFunction& f, const Resolution& res);

  std::size_t line_count() const { return line_count_; }
  std::size_t line_length() const { return line_length_; }
  const std::int8_t* row(std::size_t line, int& sign) const {
    std::size_t r = 0;
    int s = 1;
    std::size_t rest = line;
    for (int t = prefix_dims_ - 1; t >= 0; --t) {
      std::size_t i = rest & prefix_mask_[t];
      rest >>= prefix_bits_[t];
      r |= static_cast<std::size_t>(prefix_pos_[t][i]) << prefix_pos_shift_[t];
      s *= prefix_h_[t][i];
    }
    sign = s;
    return rows_.data() + r * line_length_;
  }

 private:
  int prefix_dims_ = 0;
  std::size_t line_count_ = 1;
  std::size_t line_length_ = 1;
  std::array<std::size_t, kMaxDim> prefix_mask_{};
  std::array<int, kMaxDim> prefix_bits_{};
  std::array<int, kMaxDim> prefix_pos_shift_{};
  std::array<std::vector<std::uint32_t>, kMaxDim> prefix_pos_;
  std::array<std::vector<std::int8_t>, kMaxDim> prefix_h_;
  std::vector<std::int8_t> rows_;
};

}  // namespace smallball
