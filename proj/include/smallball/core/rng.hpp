#pragma once

#include <cstdint>
#include <random>

namespace smallball {

// std::mt19937_64 has a standardised output sequence; the draws below avoid
// the implementation-defined std distributions so runs are portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }
  int sign() { return (next() >> 63) ? 1 : -1; }
  // Uniform on [0, bound).
  std::uint64_t below(std::uint64_t bound);
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace smallball
