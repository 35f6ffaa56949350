#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "smallball/core/scalar.hpp"

namespace smallball {

enum class PointSource { VanDerCorput, Halton, Random, User };
std::string source_name(PointSource s);

struct PointSet {
  int d = 2;
  std::vector<std::vector<Rational>> points;
  PointSource source = PointSource::User;
  std::string tag;

  std::size_t size() const { return points.size(); }
  void validate() const;
};

// Radical inverse of i in base b.
Rational radical_inverse(std::uint64_t i, unsigned base);

// (i/N, radical_inverse_2(i)), i = 0..N-1.
PointSet van_der_corput(std::size_t N);
// (radical_inverse_{b_1}(i), ...), i = 0..N-1; bases pairwise coprime.
PointSet halton(std::size_t N, const std::vector<unsigned>& bases = {2, 3, 5});
// Coordinates k / 2^bits with k uniform.
PointSet random_points(std::size_t N, int d, std::uint64_t seed, int bits = 30);

void write_points_csv(std::ostream& os, const PointSet& A);
PointSet read_points_csv(std::istream& is);

// Number of points in the closed box [0, x] or the half-open box [0, x).
std::size_t count_in_box(const PointSet& A, const std::vector<Rational>& x, bool closed);

// D_N(x) = #(A cap [0,x)) - N |[0,x)|.
Rational discrepancy_eval(const PointSet& A, const std::vector<Rational>& x);

struct SupReport {
  bool exact = true;
  Rational sup;  // sup of D_N, approached from above a corner
  Rational inf;  // inf of D_N, approached from below a corner
  Rational norm;
  std::vector<Rational> sup_corner;
  std::vector<Rational> inf_corner;
  std::uint64_t corners = 0;
  int sample_level = 0;  // for sampled lower bounds
};

// Exact sup/inf over the critical corners (point coordinates and 1 on each
// axis). Refuses jobs with more than `budget` corners unless approximate is
// set, in which case D_N is sampled on a 2^level grid and labelled inexact.
SupReport discrepancy_sup(const PointSet& A, std::uint64_t budget = 10'000'000, bool approximate = false,
                          int sample_level = 8);

// max |D_N| over the grid nodes k 2^-level (k = 0..2^level per axis).
Rational grid_scan_sup(const PointSet& A, int level);

// Exact ||D_N||_2^2.
Rational l2_squared_warnock(const PointSet& A);

struct LpEstimate {
  double p = 2;
  int grid_level = 0;
  double value = 0;
  double error_bound = 0;     // N d 2^-level
  bool bound_rigorous = false;  // every coordinate is a multiple of 2^-level
};

// Midpoint rule on the 2^(level d) cell grid.
LpEstimate discrepancy_lp(const PointSet& A, double p, int grid_level);

struct ScalingRow {
  std::size_t N = 0;
  double log_n = 0;
  double sup_norm = 0;
  bool sup_exact = true;
  double l2_norm = 0;
};

struct ScalingReport {
  std::string generator;
  std::vector<ScalingRow> rows;
  double sup_exponent = 0;  // slope of log |D|_inf against log log N
  double l2_exponent = 0;

  std::string csv() const;
};

ScalingReport scaling_report(const std::string& generator, const std::vector<std::size_t>& N_list,
                             int d = 2, std::uint64_t seed = 1, std::uint64_t budget = 10'000'000);

PointSet make_points(const std::string& generator, std::size_t N, int d, std::uint64_t seed);

}  // namespace smallball
