#pragma once

#include <limits>
#include <string>
#include <vector>

#include "smallball/coincidence/classes.hpp"

namespace smallball {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Exponent of n in the known L^p bound for each class (p fixed).
double predicted_exponent(ClassKind k);

struct BeckGainConfig {
  ClassKind kind = ClassKind::C2Restricted;
  std::vector<int> n_list{4, 5, 6, 7, 8};
  std::vector<double> p_list{2.0};  // kInfinity allowed
  int q = 2;                        // restricted class: blocks s, t of make_params_q(n, q)
  int s = 0, t = 1;
  int b = 0;                        // C2b
  int a = 0;                        // B4a
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::uint64_t budget = kDefaultTupleBudget;
};

struct BeckGainRow {
  int n = 0;
  double p = 2.0;
  std::size_t tuples = 0;
  double norm = 0.0;
  Rational moment;      // E|Prod|^p for integer p
  double normalized = 0.0;  // rho^arity * norm, rho = sqrt(q)/n
  double trivial = 0.0;     // number of tuples: the triangle inequality bound
};

struct BeckGainFit {
  double p = 2.0;
  double fitted_exponent = 0.0;
  double predicted_exponent = 0.0;
};

struct BeckGainTable {
  BeckGainConfig config;
  std::vector<BeckGainRow> rows;
  std::vector<BeckGainFit> fits;

  std::string csv() const;
};

CoincidenceClass make_class(const BeckGainConfig& cfg, int n);
// alpha for a given n: uniform random signs, stream n.
CoefficientField<Integer> beck_gain_field(int n, std::uint64_t seed);

BeckGainTable beck_gain_measure(const BeckGainConfig& cfg);

// ||Prod(C)||_2^2 two ways for a class of pairs: from the grid, and as the sum
// of E f_r f_s f_t f_u over quadruples of C x C that either repeat a shape
// or have their maxima attained twice in coordinates 1 and 3. The remaining
// quadruples are also evaluated and must integrate to zero.
struct L2TwoWays {
  Rational grid;
  Rational expansion;
  Rational b_part;
  Rational btilde_part;
  std::size_t b_quadruples = 0;
  std::size_t btilde_quadruples = 0;
  std::size_t other_quadruples = 0;
  std::size_t other_nonzero = 0;

  bool agree() const { return grid == expansion && other_nonzero == 0; }
};

L2TwoWays l2_two_ways(const CoincidenceClass& c, const CoefficientField<Integer>& alpha, unsigned threads = 1);

}  // namespace smallball
