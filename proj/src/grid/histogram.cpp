#include "smallball/grid/histogram.hpp"

#include <cmath>

namespace smallball {

ValueHistogram::ValueHistogram(const GridFunction<Integer>& f) {
  for (Integer v : f.values()) add(v);
}

void ValueHistogram::add(Integer value, std::uint64_t count) {
  if (count == 0) return;
  counts_[value] += count;
  cells_ += count;
}

void ValueHistogram::merge(const ValueHistogram& other) {
  for (const auto& [v, c] : other.counts_) add(v, c);
}

Integer ValueHistogram::sup() const {
  if (counts_.empty()) return 0;
  return std::max(abs_value(counts_.begin()->first), abs_value(counts_.rbegin()->first));
}

Integer ValueHistogram::min() const {
  if (counts_.empty()) throw DomainError("empty histogram");
  return counts_.begin()->first;
}

Integer ValueHistogram::max() const {
  if (counts_.empty()) throw DomainError("empty histogram");
  return counts_.rbegin()->first;
}

namespace {
Rational ratio(const mpz_class& num, std::uint64_t den) {
  Rational r(num, mpz_class(static_cast<unsigned long>(den)));
  r.canonicalize();
  return r;
}
}  // namespace

Rational ValueHistogram::mean() const {
  if (cells_ == 0) throw DomainError("empty histogram");
  mpz_class total(0);
  for (const auto& [v, c] : counts_) total += mpz_class(static_cast<long>(v)) * static_cast<unsigned long>(c);
  return ratio(total, cells_);
}

Rational ValueHistogram::moment(unsigned p) const {
  if (cells_ == 0) throw DomainError("empty histogram");
  mpz_class total(0), power;
  for (const auto& [v, c] : counts_) {
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(abs_value(v)), p);
    total += power * static_cast<unsigned long>(c);
  }
  return ratio(total, cells_);
}

double ValueHistogram::lp_norm(double p) const {
  if (std::isinf(p)) return static_cast<double>(sup());
  if (p == std::floor(p) && p >= 1 && p <= 64) return std::pow(moment(static_cast<unsigned>(p)).get_d(), 1.0 / p);
  double total = 0;
  for (const auto& [v, c] : counts_) total += static_cast<double>(c) * std::pow(std::fabs(static_cast<double>(v)), p);
  return std::pow(total / static_cast<double>(cells_), 1.0 / p);
}

Rational ValueHistogram::distribution(Integer lambda) const {
  std::uint64_t count = 0;
  for (const auto& [v, c] : counts_)
    if (abs_value(v) > lambda) count += c;
  return ratio(mpz_class(static_cast<unsigned long>(count)), cells_);
}

}  // namespace smallball
