#include "smallball/coincidence/product_rule.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <set>

#include "smallball/core/error.hpp"

namespace smallball {

namespace {

std::atomic<bool> g_fault{false};

bool intervals_nested(const DyadicInterval& a, const DyadicInterval& b) {
  return a.contains(b) || b.contains(a);
}

// sign of h_I on the finer interval J inside it
int haar_sign_on(const DyadicInterval& I, const DyadicInterval& J) {
  return J.ancestor(I.level + 1) == I.right_half() ? 1 : -1;
}

}  // namespace

void set_product_rule_fault(bool on) { g_fault = on; }
bool product_rule_fault() { return g_fault; }

bool strongly_distinct(std::span<const Shape> shapes) {
  if (shapes.empty()) return true;
  const int n = shapes[0].n();
  const int d = shapes[0].dim();
  for (const auto& r : shapes)
    if (r.n() != n || r.dim() != d) throw DomainError("shapes with different level sums or dimensions");
  for (int t = 0; t < d; ++t) {
    std::set<int> seen;
    for (const auto& r : shapes)
      if (!seen.insert(r[t]).second) return false;
  }
  return true;
}

HaarProduct product_rule(std::span<const DyadicRectangle> rects) {
  HaarProduct out;
  if (rects.empty()) throw DomainError("empty product");
  const int d = rects[0].dim();
  for (const auto& R : rects)
    if (R.dim() != d) throw DomainError("dimension mismatch");
  for (int t = 0; t < d; ++t) {
    std::set<int> levels;
    for (const auto& R : rects)
      if (!levels.insert(R[t].level).second) {
        out.kind = HaarProduct::Kind::NotApplicable;
        return out;
      }
  }
  std::array<DyadicInterval, kMaxDim> sides{};
  int sign = 1;
  for (int t = 0; t < d; ++t) {
    const DyadicInterval* finest = &rects[0][t];
    for (const auto& R : rects)
      if (R[t].level > finest->level) finest = &R[t];
    for (const auto& R : rects) {
      if (!intervals_nested(R[t], *finest)) {
        out.kind = HaarProduct::Kind::Zero;
        return out;
      }
      if (&R[t] != finest) sign *= haar_sign_on(R[t], *finest);
    }
    sides[t] = *finest;
  }
  out.kind = HaarProduct::Kind::Haar;
  out.sign = g_fault ? -sign : sign;
  out.support = DyadicRectangle(std::span<const DyadicInterval>(sides.data(), static_cast<std::size_t>(d)));
  return out;
}

HaarProduct pair_product_2d(const DyadicRectangle& R, const DyadicRectangle& Rp) {
  if (R.dim() != 2 || Rp.dim() != 2) throw DomainError("pair_product_2d needs planar rectangles");
  if (R.level_sum() != Rp.level_sum()) throw DomainError("rectangles of different area");
  HaarProduct out;
  if (R == Rp) {
    out.kind = HaarProduct::Kind::Indicator;
    out.support = R;
    return out;
  }
  if (R[0].level == Rp[0].level) {
    // same shape, different rectangle: disjoint
    out.kind = HaarProduct::Kind::Zero;
    return out;
  }
  const DyadicRectangle pair[2] = {R, Rp};
  return product_rule(pair);
}

bool mean_zero_predicate(std::span<const DyadicRectangle> rects) {
  if (rects.empty()) return false;
  const int d = rects[0].dim();
  for (int t = 0; t < d; ++t) {
    int best = -1, count = 0;
    for (const auto& R : rects) {
      if (R[t].level > best) {
        best = R[t].level;
        count = 1;
      } else if (R[t].level == best) {
        ++count;
      }
    }
    if (count == 1) return true;
  }
  return false;
}

namespace {

// h_I at the midpoint of dyadic cell k of level L (L > I.level)
int haar_cell(const DyadicInterval& I, std::int64_t k, int L) {
  const int s = L - I.level;
  if ((k >> s) != I.pos) return 0;
  return ((k >> (s - 1)) & 1) ? 1 : -1;
}

bool tuple_ok(const std::vector<DyadicRectangle>& R) {
  const int d = R[0].dim();
  auto pr = product_rule(R);
  bool meet = true;
  for (std::size_t a = 0; a < R.size(); ++a)
    for (std::size_t b = a + 1; b < R.size(); ++b)
      for (int t = 0; t < d; ++t) meet = meet && R[a][t].intersects(R[b][t]);
  if (!meet) return pr.kind == HaarProduct::Kind::Zero;
  if (pr.kind != HaarProduct::Kind::Haar) return false;
  std::array<int, kMaxDim> finest{};
  for (int t = 0; t < d; ++t)
    for (const auto& x : R) finest[t] = std::max(finest[t], x[t].level + 1);
  // cells of the finest grid inside the support
  std::array<std::int64_t, kMaxDim> lo{}, span{};
  std::int64_t total = 1;
  for (int t = 0; t < d; ++t) {
    const int s = finest[t] - pr.support[t].level;
    lo[t] = pr.support[t].pos << s;
    span[t] = std::int64_t{1} << s;
    total *= span[t];
  }
  for (std::int64_t c = 0; c < total; ++c) {
    std::int64_t rest = c;
    int direct = 1, claimed = pr.sign;
    for (int t = 0; t < d; ++t) {
      const std::int64_t k = lo[t] + rest % span[t];
      rest /= span[t];
      for (const auto& x : R) direct *= haar_cell(x[t], k, finest[t]);
      claimed *= haar_cell(pr.support[t], k, finest[t]);
    }
    if (direct != claimed) return false;
  }
  return true;
}

std::string tuple_str(const std::vector<DyadicRectangle>& R) {
  std::string s;
  for (const auto& x : R) s += (s.empty() ? "" : " * ") + x.str();
  return s;
}

}  // namespace

ProductRuleCheck check_product_rule(int n_max, int d, bool triples) {
  if (d < 1 || d > kMaxDim) throw DomainError("dimension must be 1..3");
  ProductRuleCheck out;
  for (int n = 1; n <= n_max; ++n) {
    auto shapes = enumerate_shapes(n, d);
    std::vector<std::vector<DyadicRectangle>> rects;
    for (const auto& r : shapes) rects.push_back(rectangles_of_shape(r));
    auto run = [&](const std::vector<std::size_t>& idx) {
      std::vector<DyadicRectangle> R(idx.size());
      std::vector<std::size_t> pos(idx.size(), 0);
      while (true) {
        for (std::size_t j = 0; j < idx.size(); ++j) R[j] = rects[idx[j]][pos[j]];
        ++out.tuples;
        if (!tuple_ok(R)) {
          out.failure = tuple_str(R);
          return false;
        }
        std::size_t j = 0;
        while (j < idx.size() && ++pos[j] == rects[idx[j]].size()) pos[j++] = 0;
        if (j == idx.size()) return true;
      }
    };
    for (std::size_t i = 0; i < shapes.size(); ++i)
      for (std::size_t j = i + 1; j < shapes.size(); ++j) {
        std::vector<Shape> two{shapes[i], shapes[j]};
        if (!strongly_distinct(two)) continue;
        if (!run({i, j})) return out;
        if (!triples) continue;
        for (std::size_t k = j + 1; k < shapes.size(); ++k) {
          std::vector<Shape> three{shapes[i], shapes[j], shapes[k]};
          if (strongly_distinct(three) && !run({i, j, k})) return out;
        }
      }
  }
  return out;
}

}  // namespace smallball
