#include "smallball/hyperbolic/rfunction.hpp"

namespace smallball {

Resolution default_resolution(int n, int d) { return Resolution::uniform(d, n + 1); }

RFunctionRows::RFunctionRows(const RFunction& f, const Resolution& res) {
  const Shape& r = f.shape;
  const int d = r.dim();
  if (res.dim() != d) throw DomainError("dimension mismatch");
  for (int t = 0; t < d; ++t)
    if (res.level(t) < r[t] + 1)
      throw ResolutionError("insufficient resolution: shape " + r.str() + " on grid " + res.str());
  if (f.signs.size() != r.rectangle_count()) throw DomainError("sign count does not match shape");

  prefix_dims_ = d - 1;
  int shift_acc = 0;
  for (int t = prefix_dims_ - 1; t >= 0; --t) {
    prefix_pos_shift_[t] = shift_acc;
    shift_acc += r[t];
  }
  for (int t = 0; t < prefix_dims_; ++t) {
    std::int64_t m = res.extent(t);
    int shift = res.level(t) - r[t];
    prefix_bits_[t] = res.level(t);
    prefix_mask_[t] = static_cast<std::size_t>(m - 1);
    prefix_pos_[t].resize(m);
    prefix_h_[t].resize(m);
    for (std::int64_t i = 0; i < m; ++i) {
      prefix_pos_[t][i] = static_cast<std::uint32_t>(i >> shift);
      prefix_h_[t][i] = ((i >> (shift - 1)) & 1) ? 1 : -1;
    }
    line_count_ *= static_cast<std::size_t>(m);
  }
  const int last = d - 1;
  line_length_ = static_cast<std::size_t>(res.extent(last));
  const int last_shift = res.level(last) - r[last];
  std::size_t row_ids = std::size_t{1} << shift_acc;
  rows_.resize(row_ids * line_length_);
  for (std::size_t id = 0; id < row_ids; ++id)
    for (std::size_t i = 0; i < line_length_; ++i) {
      std::size_t j = i >> last_shift;
      int h = ((i >> (last_shift - 1)) & 1) ? 1 : -1;
      rows_[id * line_length_ + i] = static_cast<std::int8_t>(h * f.signs[(id << r[last]) | j]);
    }
}

}  // namespace smallball
