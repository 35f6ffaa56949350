#include "smallball/hyperbolic/shape.hpp"

#include <sstream>

#include "smallball/core/error.hpp"

namespace smallball {

Shape::Shape(std::initializer_list<int> r) : Shape(std::span<const int>(r.begin(), r.size())) {}

Shape::Shape(std::span<const int> r) {
  if (r.empty() || r.size() > kMaxDim) throw DomainError("shape dimension must be 1..3");
  d_ = static_cast<int>(r.size());
  for (int t = 0; t < d_; ++t) {
    if (r[t] < 0) throw DomainError("negative shape level");
    r_[t] = r[t];
  }
}

int Shape::n() const {
  int s = 0;
  for (int t = 0; t < d_; ++t) s += r_[t];
  return s;
}

std::size_t Shape::rectangle_count() const {
  if (n() > 62) throw DomainError("shape level sum too large for rectangle indexing");
  return std::size_t{1} << n();
}

std::string Shape::str() const {
  std::ostringstream os;
  os << '(';
  for (int t = 0; t < d_; ++t) os << (t ? "," : "") << r_[t];
  os << ')';
  return os.str();
}

std::size_t shape_count(int n, int d) {
  if (n < 0 || d < 1) return 0;
  // C(n + d - 1, d - 1)
  std::size_t c = 1;
  for (int k = 1; k < d; ++k) c = c * static_cast<std::size_t>(n + k) / static_cast<std::size_t>(k);
  return c;
}

std::vector<Shape> enumerate_shapes(int n, int d) {
  if (d < 1 || d > kMaxDim) throw DomainError("dimension must be 1..3");
  if (n < 0) throw DomainError("n must be non-negative");
  std::vector<Shape> out;
  std::array<int, kMaxDim> r{};
  auto rec = [&](auto&& self, int t, int remaining) -> void {
    if (t == d - 1) {
      r[t] = remaining;
      out.emplace_back(std::span<const int>(r.data(), static_cast<std::size_t>(d)));
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      r[t] = v;
      self(self, t + 1, remaining - v);
    }
  };
  rec(rec, 0, n);
  return out;
}

Shape shape_of(const DyadicRectangle& R) {
  std::array<int, kMaxDim> r{};
  for (int t = 0; t < R.dim(); ++t) r[t] = R[t].level;
  return Shape(std::span<const int>(r.data(), static_cast<std::size_t>(R.dim())));
}

std::size_t position_index(const DyadicRectangle& R) {
  std::size_t p = 0;
  for (int t = 0; t < R.dim(); ++t) p = (p << R[t].level) | static_cast<std::size_t>(R[t].pos);
  return p;
}

DyadicRectangle rectangle_at(const Shape& r, std::size_t p) {
  if (p >= r.rectangle_count()) throw DomainError("position out of range for shape " + r.str());
  std::array<DyadicInterval, kMaxDim> sides{};
  for (int t = r.dim() - 1; t >= 0; --t) {
    sides[t] = DyadicInterval(r[t], static_cast<std::int64_t>(p & ((std::size_t{1} << r[t]) - 1)));
    p >>= r[t];
  }
  return DyadicRectangle(std::span<const DyadicInterval>(sides.data(), static_cast<std::size_t>(r.dim())));
}

std::vector<DyadicRectangle> rectangles_of_shape(const Shape& r) {
  std::vector<DyadicRectangle> out;
  out.reserve(r.rectangle_count());
  for (std::size_t p = 0; p < r.rectangle_count(); ++p) out.push_back(rectangle_at(r, p));
  return out;
}

}  // namespace smallball
