#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "smallball/core/scalar.hpp"

namespace smallball {

inline constexpr int kMaxDim = 3;

// [pos 2^-level, (pos+1) 2^-level)
struct DyadicInterval {
  int level = 0;
  std::int64_t pos = 0;

  DyadicInterval() = default;
  DyadicInterval(int level, std::int64_t pos);

  Rational left() const;
  Rational right() const;
  Rational length() const { return pow2(-level); }
  bool contains(const Rational& x) const;
  bool contains(const DyadicInterval& other) const;
  bool intersects(const DyadicInterval& other) const;
  DyadicInterval left_half() const { return {level + 1, 2 * pos}; }
  DyadicInterval right_half() const { return {level + 1, 2 * pos + 1}; }
  DyadicInterval ancestor(int coarser_level) const;

  auto operator<=>(const DyadicInterval&) const = default;
};

class DyadicRectangle {
 public:
  DyadicRectangle() = default;
  explicit DyadicRectangle(std::span<const DyadicInterval> sides);
  DyadicRectangle(std::initializer_list<DyadicInterval> sides);

  int dim() const { return d_; }
  const DyadicInterval& operator[](int t) const { return sides_[t]; }
  std::span<const DyadicInterval> sides() const { return {sides_.data(), static_cast<std::size_t>(d_)}; }
  int level_sum() const;
  Rational volume() const { return pow2(-level_sum()); }
  bool contains(const DyadicRectangle& other) const;

  auto operator<=>(const DyadicRectangle&) const = default;
  std::string str() const;

 private:
  std::array<DyadicInterval, kMaxDim> sides_{};
  int d_ = 0;
};

// Per-coordinate grid levels; cells are indexed row-major with coordinate 0
// varying slowest.
class Resolution {
 public:
  Resolution() = default;
  Resolution(std::initializer_list<int> levels);
  explicit Resolution(std::span<const int> levels);
  static Resolution uniform(int d, int level);

  int dim() const { return d_; }
  int level(int t) const { return levels_[t]; }
  std::span<const int> levels() const { return {levels_.data(), static_cast<std::size_t>(d_)}; }
  int total_level() const;
  std::size_t cells() const { return std::size_t{1} << total_level(); }
  std::int64_t extent(int t) const { return std::int64_t{1} << levels_[t]; }
  std::size_t index(std::span<const std::int64_t> cell) const;
  std::array<std::int64_t, kMaxDim> cell(std::size_t index) const;
  // Every coordinate at least as fine as `other`.
  bool refines(const Resolution& other) const;
  std::string str() const;

  auto operator<=>(const Resolution&) const = default;

 private:
  std::array<int, kMaxDim> levels_{};
  int d_ = 0;
};

Resolution join(const Resolution& a, const Resolution& b);

// Ceiling on total grid level; default 27 (2^27 cells).
int max_total_level();
void set_max_total_level(int level);

class ScopedGridLimit {
 public:
  explicit ScopedGridLimit(int level) : saved_(max_total_level()) { set_max_total_level(level); }
  ~ScopedGridLimit() { set_max_total_level(saved_); }
  ScopedGridLimit(const ScopedGridLimit&) = delete;
  ScopedGridLimit& operator=(const ScopedGridLimit&) = delete;

 private:
  int saved_;
};

// Throws ResolutionError unless the resolution resolves the halves of I / R.
void require_resolves(const Resolution& res, int coordinate, const DyadicInterval& I);
void require_resolves(const Resolution& res, const DyadicRectangle& R);

}  // namespace smallball
