#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace smallball {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A requested object does not exist (bad shape, bad level, mixed n, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ResolutionError : public Error {
 public:
  using Error::Error;
};

class GridTooLarge : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string what, std::uint64_t estimate, std::uint64_t budget)
      : Error(std::move(what)), estimate_(estimate), budget_(budget) {}
  std::uint64_t estimate() const noexcept { return estimate_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t estimate_;
  std::uint64_t budget_;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::uint64_t kDefaultTupleBudget = 10'000'000;

}  // namespace smallball
