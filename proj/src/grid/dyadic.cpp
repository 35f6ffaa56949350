#include "smallball/grid/dyadic.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

#include "smallball/core/error.hpp"

namespace smallball {

namespace {
std::atomic<int> g_max_total_level{27};
}

int max_total_level() { return g_max_total_level.load(); }
void set_max_total_level(int level) { g_max_total_level.store(level); }

DyadicInterval::DyadicInterval(int lvl, std::int64_t p) : level(lvl), pos(p) {
  if (lvl < 0 || lvl > 62) throw DomainError("dyadic level out of range: " + std::to_string(lvl));
  if (p < 0 || p >= (std::int64_t{1} << lvl))
    throw DomainError("dyadic position out of range: level " + std::to_string(lvl) + " pos " +
                      std::to_string(p));
}

Rational DyadicInterval::left() const { return Rational(static_cast<long>(pos)) * pow2(-level); }
Rational DyadicInterval::right() const { return Rational(static_cast<long>(pos + 1)) * pow2(-level); }

bool DyadicInterval::contains(const Rational& x) const { return left() <= x && x < right(); }

bool DyadicInterval::contains(const DyadicInterval& o) const {
  return o.level >= level && (o.pos >> (o.level - level)) == pos;
}

bool DyadicInterval::intersects(const DyadicInterval& o) const {
  return contains(o) || o.contains(*this);
}

DyadicInterval DyadicInterval::ancestor(int coarser) const {
  if (coarser > level || coarser < 0) throw DomainError("ancestor level out of range");
  return {coarser, pos >> (level - coarser)};
}

DyadicRectangle::DyadicRectangle(std::span<const DyadicInterval> sides) {
  if (sides.empty() || sides.size() > kMaxDim) throw DomainError("rectangle dimension must be 1..3");
  d_ = static_cast<int>(sides.size());
  std::copy(sides.begin(), sides.end(), sides_.begin());
}

DyadicRectangle::DyadicRectangle(std::initializer_list<DyadicInterval> sides)
    : DyadicRectangle(std::span<const DyadicInterval>(sides.begin(), sides.size())) {}

int DyadicRectangle::level_sum() const {
  int s = 0;
  for (int t = 0; t < d_; ++t) s += sides_[t].level;
  return s;
}

bool DyadicRectangle::contains(const DyadicRectangle& o) const {
  if (o.d_ != d_) return false;
  for (int t = 0; t < d_; ++t)
    if (!sides_[t].contains(o.sides_[t])) return false;
  return true;
}

std::string DyadicRectangle::str() const {
  std::ostringstream os;
  for (int t = 0; t < d_; ++t) {
    if (t) os << 'x';
    os << '[' << sides_[t].pos << "/2^" << sides_[t].level << ']';
  }
  return os.str();
}

Resolution::Resolution(std::initializer_list<int> levels)
    : Resolution(std::span<const int>(levels.begin(), levels.size())) {}

Resolution::Resolution(std::span<const int> levels) {
  if (levels.empty() || levels.size() > kMaxDim) throw DomainError("resolution dimension must be 1..3");
  d_ = static_cast<int>(levels.size());
  int total = 0;
  for (int t = 0; t < d_; ++t) {
    if (levels[t] < 0) throw DomainError("negative grid level");
    levels_[t] = levels[t];
    total += levels[t];
  }
  if (total > max_total_level())
    throw GridTooLarge("grid too large: total level " + std::to_string(total) + " exceeds " +
                       std::to_string(max_total_level()));
}

Resolution Resolution::uniform(int d, int level) {
  std::array<int, kMaxDim> l{level, level, level};
  if (d < 1 || d > kMaxDim) throw DomainError("resolution dimension must be 1..3");
  return Resolution(std::span<const int>(l.data(), static_cast<std::size_t>(d)));
}

int Resolution::total_level() const {
  int s = 0;
  for (int t = 0; t < d_; ++t) s += levels_[t];
  return s;
}

std::size_t Resolution::index(std::span<const std::int64_t> c) const {
  std::size_t idx = 0;
  for (int t = 0; t < d_; ++t) idx = (idx << levels_[t]) | static_cast<std::size_t>(c[t]);
  return idx;
}

std::array<std::int64_t, kMaxDim> Resolution::cell(std::size_t idx) const {
  std::array<std::int64_t, kMaxDim> c{};
  for (int t = d_ - 1; t >= 0; --t) {
    c[t] = static_cast<std::int64_t>(idx & ((std::size_t{1} << levels_[t]) - 1));
    idx >>= levels_[t];
  }
  return c;
}

bool Resolution::refines(const Resolution& o) const {
  if (o.d_ != d_) return false;
  for (int t = 0; t < d_; ++t)
    if (levels_[t] < o.levels_[t]) return false;
  return true;
}

std::string Resolution::str() const {
  std::ostringstream os;
  os << '(';
  for (int t = 0; t < d_; ++t) os << (t ? "," : "") << levels_[t];
  os << ')';
  return os.str();
}

Resolution join(const Resolution& a, const Resolution& b) {
  if (a.dim() != b.dim()) throw DomainError("dimension mismatch");
  std::array<int, kMaxDim> l{};
  for (int t = 0; t < a.dim(); ++t) l[t] = std::max(a.level(t), b.level(t));
  return Resolution(std::span<const int>(l.data(), static_cast<std::size_t>(a.dim())));
}

void require_resolves(const Resolution& res, int t, const DyadicInterval& I) {
  if (t >= res.dim()) throw DomainError("coordinate out of range");
  if (res.level(t) < I.level + 1)
    throw ResolutionError("insufficient resolution: coordinate " + std::to_string(t) + " needs level " +
                          std::to_string(I.level + 1) + ", grid has " + std::to_string(res.level(t)));
}

void require_resolves(const Resolution& res, const DyadicRectangle& R) {
  if (R.dim() != res.dim()) throw DomainError("dimension mismatch");
  for (int t = 0; t < R.dim(); ++t) require_resolves(res, t, R[t]);
}

}  // namespace smallball
