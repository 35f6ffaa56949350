#include "smallball/riesz/short_product.hpp"

#include <functional>

namespace smallball {

namespace {

std::vector<std::int8_t> dense_signs(const RFunction& f, const Resolution& res) {
  std::vector<std::int8_t> v(res.cells());
  for_each_shape_cell(f.shape, res,
                      [&](std::size_t cell, std::size_t p, int h) { v[cell] = static_cast<std::int8_t>(h * f.signs[p]); });
  return v;
}

GridFunction<Integer> widen(const Resolution& res, const std::vector<std::int32_t>& acc) {
  return GridFunction<Integer>(res, std::vector<Integer>(acc.begin(), acc.end()));
}

}  // namespace

GridFunction<Integer> block_sum(const std::vector<RFunction>& block, const Resolution& res) {
  std::vector<Integer> v(res.cells(), 0);
  for (const auto& f : block)
    for_each_shape_cell(f.shape, res, [&](std::size_t cell, std::size_t p, int h) { v[cell] += h * f.signs[p]; });
  return GridFunction<Integer>(res, std::move(v));
}

std::uint64_t expansion_tuple_count(const RieszParams& p) {
  std::uint64_t total = 1;
  for (const auto& b : p.blocks) total *= 1 + b.size();
  return total - 1;
}

DegreeExpansion expand_by_degree(const std::vector<std::vector<RFunction>>& blocks, const Resolution& res,
                                 std::uint64_t budget) {
  const std::size_t q = blocks.size();
  std::uint64_t tuples = 1;
  for (const auto& b : blocks) tuples *= 1 + b.size();
  tuples -= 1;
  if (tuples > budget)
    throw BudgetExceeded("expansion needs " + std::to_string(tuples) + " tuples, budget " + std::to_string(budget),
                         tuples, budget);
  const std::size_t cells = res.cells();
  std::vector<std::vector<std::vector<std::int8_t>>> grids(q);
  for (std::size_t t = 0; t < q; ++t)
    for (const auto& f : blocks[t]) grids[t].push_back(dense_signs(f, res));
  std::vector<std::vector<std::int32_t>> sd_acc(q, std::vector<std::int32_t>(cells, 0));
  std::vector<std::vector<std::int32_t>> nsd_acc(q, std::vector<std::int32_t>(cells, 0));
  std::vector<std::vector<std::int8_t>> part(q, std::vector<std::int8_t>(cells));
  DegreeExpansion out;

  using Masks = std::array<std::uint32_t, kMaxDim>;
  std::function<void(std::size_t, std::size_t, const std::int8_t*, bool, Masks)> rec =
      [&](std::size_t v_start, std::size_t depth, const std::int8_t* parent, bool sd, Masks used) {
        for (std::size_t v = v_start; v < q; ++v) {
          for (std::size_t k = 0; k < blocks[v].size(); ++k) {
            const Shape& r = blocks[v][k].shape;
            bool now_sd = sd;
            Masks next = used;
            for (int t = 0; t < r.dim(); ++t) {
              std::uint32_t bit = 1u << r[t];
              if (used[t] & bit) now_sd = false;
              next[t] |= bit;
            }
            const std::int8_t* f = grids[v][k].data();
            std::int8_t* buf = part[depth].data();
            std::int32_t* acc = now_sd ? sd_acc[depth].data() : nsd_acc[depth].data();
            if (parent == nullptr) {
              for (std::size_t i = 0; i < cells; ++i) {
                buf[i] = f[i];
                acc[i] += f[i];
              }
            } else {
              for (std::size_t i = 0; i < cells; ++i) {
                std::int8_t x = static_cast<std::int8_t>(parent[i] * f[i]);
                buf[i] = x;
                acc[i] += x;
              }
            }
            (now_sd ? out.sd_tuples : out.nsd_tuples) += 1;
            if (v + 1 < q) rec(v + 1, depth + 1, buf, now_sd, next);
          }
        }
      };
  rec(0, 0, nullptr, true, Masks{});
  for (std::size_t u = 0; u < q; ++u) {
    out.sd.push_back(widen(res, sd_acc[u]));
    out.nsd.push_back(widen(res, nsd_acc[u]));
  }
  return out;
}

std::vector<GridFunction<Integer>> elementary_symmetric(const std::vector<GridFunction<Integer>>& F) {
  if (F.empty()) return {};
  const Resolution res = F[0].resolution();
  const std::size_t q = F.size();
  std::vector<std::vector<Integer>> e(q, std::vector<Integer>(res.cells(), 0));
  std::vector<Integer> E(q + 1);
  for (std::size_t i = 0; i < res.cells(); ++i) {
    std::fill(E.begin(), E.end(), 0);
    E[0] = 1;
    for (std::size_t t = 0; t < q; ++t)
      for (std::size_t u = t + 1; u >= 1; --u) E[u] += E[u - 1] * F[t][i];
    for (std::size_t u = 0; u < q; ++u) e[u][i] = E[u + 1];
  }
  std::vector<GridFunction<Integer>> out;
  for (auto& v : e) out.emplace_back(res, std::move(v));
  return out;
}

GridFunction<Integer> gamma_sum(const std::vector<RFunction>& block, const Resolution& res) {
  std::vector<std::vector<std::int8_t>> g;
  for (const auto& f : block) g.push_back(dense_signs(f, res));
  std::vector<Integer> v(res.cells(), 0);
  for (std::size_t a = 0; a < block.size(); ++a)
    for (std::size_t b = 0; b < block.size(); ++b) {
      if (a == b || block[a].shape[0] != block[b].shape[0]) continue;
      for (std::size_t i = 0; i < res.cells(); ++i) v[i] += g[a][i] * g[b][i];
    }
  return GridFunction<Integer>(res, std::move(v));
}

GammaReport gamma_identity(const std::vector<RFunction>& block, const Resolution& res, int t) {
  GammaReport rep;
  rep.block = t;
  rep.block_size = block.size();
  rep.pairs_mean_zero = true;
  for (std::size_t a = 0; a < block.size(); ++a)
    for (std::size_t b = 0; b < block.size(); ++b) {
      if (a == b || block[a].shape[0] != block[b].shape[0]) continue;
      ++rep.ordered_pairs;
      bool unique_max = false;
      for (int c = 0; c < block[a].shape.dim(); ++c)
        if (block[a].shape[c] != block[b].shape[c]) unique_max = true;
      if (!unique_max) rep.pairs_mean_zero = false;
    }
  auto F = block_sum(block, res);
  auto G = gamma_sum(block, res);
  rep.gamma_mean = expectation(G);
  std::array<int, kMaxDim> lv{0, res.level(1), res.level(2)};
  Resolution x1_field(std::span<const int>(lv.data(), 3));
  auto lhs = conditional_expectation(F * F, x1_field);
  auto rhs = conditional_expectation(G, x1_field);
  Rational count(static_cast<long>(block.size()));
  rep.identity_holds = true;
  for (std::size_t i = 0; i < x1_field.cells(); ++i)
    if (lhs[i] != count + rhs[i]) {
      rep.identity_holds = false;
      rep.mismatch_cell = i;
      break;
    }
  return rep;
}

}  // namespace smallball
