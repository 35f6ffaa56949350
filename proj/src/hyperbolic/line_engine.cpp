#include "smallball/hyperbolic/line_engine.hpp"

#include <algorithm>
#include <mutex>

#include "smallball/core/parallel.hpp"

namespace smallball {

namespace {
constexpr std::size_t kChunks = 64;
}

LineEngine::LineEngine(std::vector<RFunction> functions, Resolution res) : res_(res) {
  rows_.reserve(functions.size());
  for (const auto& f : functions) rows_.emplace_back(f, res);
}

void LineEngine::check_terms(std::span<const ProductTerm> terms) const {
  std::uint64_t bound = 0;
  for (const auto& t : terms) {
    if (t.factors.empty()) throw DomainError("product term without factors");
    for (auto k : t.factors)
      if (k >= rows_.size()) throw DomainError("product term refers to unknown r-function");
    bound += static_cast<std::uint64_t>(abs_value(t.coefficient));
  }
  if (bound > 0x7fffffffULL) throw DomainError("product sum may overflow 32-bit accumulators");
}

void LineEngine::evaluate_line(std::size_t line, std::span<const ProductTerm> terms,
                               std::vector<std::int32_t>& acc, std::vector<std::int8_t>& tmp) const {
  const std::size_t len = res_.extent(res_.dim() - 1);
  std::fill(acc.begin(), acc.end(), 0);
  for (const auto& term : terms) {
    int s0;
    const std::int8_t* a = rows_[term.factors[0]].row(line, s0);
    if (term.factors.size() == 1) {
      const std::int32_t c = static_cast<std::int32_t>(term.coefficient) * s0;
      for (std::size_t i = 0; i < len; ++i) acc[i] += c * a[i];
      continue;
    }
    int s1;
    const std::int8_t* b = rows_[term.factors[1]].row(line, s1);
    if (term.factors.size() == 2) {
      const std::int32_t c = static_cast<std::int32_t>(term.coefficient) * s0 * s1;
      for (std::size_t i = 0; i < len; ++i) acc[i] += c * static_cast<std::int8_t>(a[i] * b[i]);
      continue;
    }
    int sign = s0 * s1;
    for (std::size_t i = 0; i < len; ++i) tmp[i] = static_cast<std::int8_t>(a[i] * b[i]);
    for (std::size_t k = 2; k < term.factors.size(); ++k) {
      int s;
      const std::int8_t* c = rows_[term.factors[k]].row(line, s);
      sign *= s;
      for (std::size_t i = 0; i < len; ++i) tmp[i] = static_cast<std::int8_t>(tmp[i] * c[i]);
    }
    const std::int32_t c = static_cast<std::int32_t>(term.coefficient) * sign;
    for (std::size_t i = 0; i < len; ++i) acc[i] += c * tmp[i];
  }
}

ValueHistogram LineEngine::histogram(std::span<const ProductTerm> terms, unsigned threads) const {
  check_terms(terms);
  std::int64_t bound = 0;
  for (const auto& t : terms) bound += abs_value(t.coefficient);
  const std::size_t lines = res_.cells() / res_.extent(res_.dim() - 1);
  const std::size_t len = res_.extent(res_.dim() - 1);
  const bool dense_bins = bound <= (1 << 22);
  std::vector<ValueHistogram> parts(kChunks);
  parallel_chunks(lines, kChunks, threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    std::vector<std::int32_t> acc(len);
    std::vector<std::int8_t> tmp(len);
    std::vector<std::uint64_t> bins(dense_bins ? static_cast<std::size_t>(2 * bound + 1) : 0);
    ValueHistogram local;
    for (std::size_t line = begin; line < end; ++line) {
      evaluate_line(line, terms, acc, tmp);
      if (dense_bins) {
        for (std::size_t i = 0; i < len; ++i) ++bins[static_cast<std::size_t>(acc[i] + bound)];
      } else {
        for (std::size_t i = 0; i < len; ++i) local.add(acc[i]);
      }
    }
    if (dense_bins)
      for (std::size_t v = 0; v < bins.size(); ++v) local.add(static_cast<Integer>(v) - bound, bins[v]);
    parts[chunk] = std::move(local);
  });
  ValueHistogram out;
  for (const auto& p : parts) out.merge(p);
  return out;
}

Integer LineEngine::sup(std::span<const ProductTerm> terms, unsigned threads) const {
  check_terms(terms);
  const std::size_t lines = res_.cells() / res_.extent(res_.dim() - 1);
  const std::size_t len = res_.extent(res_.dim() - 1);
  std::vector<std::int32_t> best(kChunks, 0);
  parallel_chunks(lines, kChunks, threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    std::vector<std::int32_t> acc(len);
    std::vector<std::int8_t> tmp(len);
    std::int32_t m = 0;
    for (std::size_t line = begin; line < end; ++line) {
      evaluate_line(line, terms, acc, tmp);
      for (std::size_t i = 0; i < len; ++i) m = std::max(m, acc[i] < 0 ? -acc[i] : acc[i]);
    }
    best[chunk] = m;
  });
  return *std::max_element(best.begin(), best.end());
}

GridFunction<Integer> LineEngine::dense(std::span<const ProductTerm> terms) const {
  check_terms(terms);
  const std::size_t len = res_.extent(res_.dim() - 1);
  const std::size_t lines = res_.cells() / len;
  std::vector<Integer> v(res_.cells());
  std::vector<std::int32_t> acc(len);
  std::vector<std::int8_t> tmp(len);
  for (std::size_t line = 0; line < lines; ++line) {
    evaluate_line(line, terms, acc, tmp);
    std::copy(acc.begin(), acc.end(), v.begin() + static_cast<std::ptrdiff_t>(line * len));
  }
  return GridFunction<Integer>(res_, std::move(v));
}

}  // namespace smallball
