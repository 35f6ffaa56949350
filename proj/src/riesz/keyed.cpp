#include "smallball/riesz/keyed.hpp"

#include <cstring>
#include <string>
#include <unordered_map>

namespace smallball {

KeyIndex::KeyIndex(std::span<const GridFunction<Integer>* const> parts) {
  if (parts.empty()) throw DomainError("key index needs at least one grid");
  res_ = parts[0]->resolution();
  for (const auto* p : parts)
    if (!(p->resolution() == res_)) throw DomainError("key grids must share a resolution");
  width_ = parts.size();
  cell_key_.resize(res_.cells());
  std::unordered_map<std::string, std::uint32_t> lookup;
  std::string buf(width_ * sizeof(Integer), '\0');
  for (std::size_t i = 0; i < res_.cells(); ++i) {
    for (std::size_t k = 0; k < width_; ++k) {
      Integer v = (*parts[k])[i];
      std::memcpy(buf.data() + k * sizeof(Integer), &v, sizeof v);
    }
    auto [it, inserted] = lookup.try_emplace(buf, static_cast<std::uint32_t>(counts_.size()));
    if (inserted) {
      for (std::size_t k = 0; k < width_; ++k) keys_.push_back((*parts[k])[i]);
      counts_.push_back(0);
    }
    ++counts_[it->second];
    cell_key_[i] = it->second;
  }
}

}  // namespace smallball
