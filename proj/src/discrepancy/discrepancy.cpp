#include "smallball/discrepancy/discrepancy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "smallball/core/error.hpp"
#include "smallball/core/fit.hpp"
#include "smallball/core/rng.hpp"

namespace smallball {

std::string source_name(PointSource s) {
  switch (s) {
    case PointSource::VanDerCorput: return "vdc";
    case PointSource::Halton: return "halton";
    case PointSource::Random: return "random";
    case PointSource::User: return "user";
  }
  return "?";
}

void PointSet::validate() const {
  if (d < 1 || d > 3) throw DomainError("point dimension must be 1..3");
  if (points.empty()) throw DomainError("empty point set");
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != d) throw DomainError("point of wrong dimension");
    for (const auto& c : p)
      if (c < 0 || c >= 1) throw DomainError("coordinate outside [0,1): " + to_string(c));
  }
}

Rational radical_inverse(std::uint64_t i, unsigned base) {
  if (base < 2) throw DomainError("radical inverse base must be >= 2");
  mpz_class num = 0, den = 1;
  while (i > 0) {
    num = num * base + static_cast<unsigned long>(i % base);
    den *= base;
    i /= base;
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

PointSet van_der_corput(std::size_t N) {
  if (N == 0) throw DomainError("N must be positive");
  PointSet A;
  A.d = 2;
  A.source = PointSource::VanDerCorput;
  A.tag = "vdc";
  for (std::size_t i = 0; i < N; ++i) {
    Rational x(static_cast<long>(i), static_cast<unsigned long>(N));
    x.canonicalize();
    A.points.push_back({x, radical_inverse(i, 2)});
  }
  return A;
}

PointSet halton(std::size_t N, const std::vector<unsigned>& bases) {
  if (N == 0) throw DomainError("N must be positive");
  if (bases.empty() || bases.size() > 3) throw DomainError("halton needs 1..3 bases");
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (bases[i] < 2) throw DomainError("halton bases must be >= 2");
    for (std::size_t j = i + 1; j < bases.size(); ++j)
      if (std::gcd(bases[i], bases[j]) != 1) throw DomainError("halton bases must be pairwise coprime");
  }
  PointSet A;
  A.d = static_cast<int>(bases.size());
  A.source = PointSource::Halton;
  A.tag = "halton";
  for (std::size_t i = 0; i < N; ++i) {
    std::vector<Rational> p;
    for (unsigned b : bases) p.push_back(radical_inverse(i, b));
    A.points.push_back(std::move(p));
  }
  return A;
}

PointSet random_points(std::size_t N, int d, std::uint64_t seed, int bits) {
  if (N == 0) throw DomainError("N must be positive");
  if (bits < 1 || bits > 62) throw DomainError("bits must be 1..62");
  PointSet A;
  A.d = d;
  A.source = PointSource::Random;
  A.tag = "random(" + std::to_string(seed) + ")";
  Rng rng(seed);
  const Rational scale = pow2(-bits);
  for (std::size_t i = 0; i < N; ++i) {
    std::vector<Rational> p;
    for (int t = 0; t < d; ++t) {
      Rational c(static_cast<long>(rng.below(std::uint64_t{1} << bits)));
      c *= scale;
      p.push_back(c);
    }
    A.points.push_back(std::move(p));
  }
  A.validate();
  return A;
}

void write_points_csv(std::ostream& os, const PointSet& A) {
  for (const auto& p : A.points) {
    for (int t = 0; t < A.d; ++t) os << (t ? "," : "") << to_string(p[t]);
    os << '\n';
  }
}

PointSet read_points_csv(std::istream& is) {
  PointSet A;
  A.d = 0;
  std::string line;
  std::size_t row = 0;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty() || line[0] == '#') continue;
    std::vector<Rational> p;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        p.push_back(parse_rational(cell));
      } catch (const std::exception&) {
        throw FormatError("bad coordinate '" + cell + "' on row " + std::to_string(row));
      }
    }
    if (A.d == 0) A.d = static_cast<int>(p.size());
    if (static_cast<int>(p.size()) != A.d) throw FormatError("ragged point file at row " + std::to_string(row));
    A.points.push_back(std::move(p));
  }
  A.validate();
  return A;
}

std::size_t count_in_box(const PointSet& A, const std::vector<Rational>& x, bool closed) {
  std::size_t c = 0;
  for (const auto& p : A.points) {
    bool in = true;
    for (int t = 0; t < A.d && in; ++t) in = closed ? p[t] <= x[t] : p[t] < x[t];
    c += in;
  }
  return c;
}

namespace {

Rational volume(const std::vector<Rational>& x) {
  Rational v(1);
  for (const auto& c : x) v *= c;
  return v;
}

void check_box(const PointSet& A, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != A.d) throw DomainError("box corner of wrong dimension");
  for (const auto& c : x)
    if (c < 0 || c > 1) throw DomainError("box corner outside [0,1]");
}

}  // namespace

Rational discrepancy_eval(const PointSet& A, const std::vector<Rational>& x) {
  check_box(A, x);
  Rational N(static_cast<long>(A.size()));
  Rational D = Rational(static_cast<long>(count_in_box(A, x, false))) - N * volume(x);
  return D;
}

Rational grid_scan_sup(const PointSet& A, int level) {
  A.validate();
  if (level < 0 || level * A.d > 30) throw DomainError("grid scan level too large");
  const std::int64_t m = (std::int64_t{1} << level) + 1;
  const int d = A.d;
  std::array<std::int64_t, 3> ext{1, 1, 1};
  for (int t = 0; t < d; ++t) ext[t] = m;
  // cnt[k] = points whose first admitting node index is k; then prefix sums
  // turn it into #{p : p < x_k}
  std::vector<std::int64_t> cnt(static_cast<std::size_t>(ext[0] * ext[1] * ext[2]), 0);
  const Rational scale = pow2(level);
  for (const auto& p : A.points) {
    std::array<std::int64_t, 3> j{0, 0, 0};
    for (int t = 0; t < d; ++t) {
      mpz_class f;
      Rational y = p[t] * scale;
      mpz_fdiv_q(f.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
      j[t] = f.get_si() + 1;
    }
    if (j[0] < ext[0] && j[1] < ext[1] && j[2] < ext[2])
      ++cnt[static_cast<std::size_t>((j[0] * ext[1] + j[1]) * ext[2] + j[2])];
  }
  auto at = [&](std::int64_t a, std::int64_t b, std::int64_t c) -> std::int64_t& {
    return cnt[static_cast<std::size_t>((a * ext[1] + b) * ext[2] + c)];
  };
  for (int t = 0; t < d; ++t)
    for (std::int64_t a = 0; a < ext[0]; ++a)
      for (std::int64_t b = 0; b < ext[1]; ++b)
        for (std::int64_t c = 0; c < ext[2]; ++c) {
          std::array<std::int64_t, 3> k{a, b, c};
          if (k[t] == 0) continue;
          std::array<std::int64_t, 3> prev = k;
          --prev[t];
          at(a, b, c) += at(prev[0], prev[1], prev[2]);
        }
  // |D| * 2^(level d) = |count 2^(level d) - N prod k_t|
  const std::int64_t N = static_cast<std::int64_t>(A.size());
  const int shift = level * d;
  mpz_class best = 0;
  std::int64_t best64 = 0;
  bool small = shift + 12 < 62 && N < 4096;
  for (std::int64_t a = 0; a < ext[0]; ++a)
    for (std::int64_t b = 0; b < ext[1]; ++b)
      for (std::int64_t c = 0; c < ext[2]; ++c) {
        std::int64_t vol = (d > 0 ? a : 1) * (d > 1 ? b : 1) * (d > 2 ? c : 1);
        if (small) {
          std::int64_t v = (at(a, b, c) << shift) - N * vol;
          if (v < 0) v = -v;
          best64 = std::max(best64, v);
        } else {
          mpz_class v = mpz_class(static_cast<long>(at(a, b, c))) * (mpz_class(1) << shift) -
                        mpz_class(static_cast<long>(N)) * mpz_class(static_cast<long>(vol));
          v = abs(v);
          if (v > best) best = v;
        }
      }
  if (small) best = static_cast<long>(best64);
  Rational out(best, mpz_class(1) << shift);
  out.canonicalize();
  return out;
}

SupReport discrepancy_sup(const PointSet& A, std::uint64_t budget, bool approximate, int sample_level) {
  A.validate();
  const int d = A.d;
  const std::size_t N = A.size();
  std::vector<std::vector<Rational>> cand(static_cast<std::size_t>(d));
  std::uint64_t corners = 1;
  for (int t = 0; t < d; ++t) {
    auto& c = cand[static_cast<std::size_t>(t)];
    for (const auto& p : A.points) c.push_back(p[t]);
    c.push_back(Rational(1));
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    corners *= c.size();
  }
  SupReport rep;
  rep.corners = corners;
  rep.sup_corner.assign(static_cast<std::size_t>(d), Rational(0));
  rep.inf_corner = rep.sup_corner;
  if (corners > budget) {
    if (!approximate) throw BudgetExceeded("critical corners", corners, budget);
    // sampled lower bound on the grid nodes
    rep.exact = false;
    rep.sample_level = sample_level;
    const std::size_t m = (std::size_t{1} << sample_level) + 1;
    std::size_t total = 1;
    for (int t = 0; t < d; ++t) total *= m;
    std::vector<Rational> x(static_cast<std::size_t>(d));
    const Rational h = pow2(-sample_level);
    for (std::size_t k = 0; k < total; ++k) {
      std::size_t rest = k;
      for (int t = d - 1; t >= 0; --t) {
        x[static_cast<std::size_t>(t)] = h * Rational(static_cast<long>(rest % m));
        rest /= m;
      }
      Rational D = discrepancy_eval(A, x);
      if (D > rep.sup) {
        rep.sup = D;
        rep.sup_corner = x;
      }
      if (D < rep.inf) {
        rep.inf = D;
        rep.inf_corner = x;
      }
    }
    rep.norm = std::max(rep.sup, Rational(-rep.inf));
    return rep;
  }
  const Rational Nq(static_cast<long>(N));
  // fix all but the last coordinate, then sweep the last one over points
  // sorted by their last coordinate
  std::vector<std::size_t> outer(static_cast<std::size_t>(d - 1), 0);
  std::vector<Rational> x(static_cast<std::size_t>(d));
  const auto& last = cand[static_cast<std::size_t>(d - 1)];
  std::vector<Rational> closed_last, open_last;
  for (;;) {
    Rational partial(1);
    for (int t = 0; t + 1 < d; ++t) {
      x[static_cast<std::size_t>(t)] = cand[static_cast<std::size_t>(t)][outer[static_cast<std::size_t>(t)]];
      partial *= x[static_cast<std::size_t>(t)];
    }
    closed_last.clear();
    open_last.clear();
    for (const auto& p : A.points) {
      bool cl = true, op = true;
      for (int t = 0; t + 1 < d; ++t) {
        cl = cl && p[t] <= x[static_cast<std::size_t>(t)];
        op = op && p[t] < x[static_cast<std::size_t>(t)];
      }
      if (cl) closed_last.push_back(p[d - 1]);
      if (op) open_last.push_back(p[d - 1]);
    }
    std::sort(closed_last.begin(), closed_last.end());
    std::sort(open_last.begin(), open_last.end());
    std::size_t ic = 0, io = 0;
    const Rational scale = Nq * partial;
    for (const auto& c : last) {
      while (ic < closed_last.size() && closed_last[ic] <= c) ++ic;
      while (io < open_last.size() && open_last[io] < c) ++io;
      const Rational vol = scale * c;
      Rational hi = Rational(static_cast<long>(ic)) - vol;
      Rational lo = Rational(static_cast<long>(io)) - vol;
      x[static_cast<std::size_t>(d - 1)] = c;
      // strict comparisons keep the lexicographically smallest corner
      if (hi > rep.sup) {
        rep.sup = hi;
        rep.sup_corner = x;
      }
      if (lo < rep.inf) {
        rep.inf = lo;
        rep.inf_corner = x;
      }
    }
    int t = d - 2;
    while (t >= 0 && ++outer[static_cast<std::size_t>(t)] == cand[static_cast<std::size_t>(t)].size())
      outer[static_cast<std::size_t>(t--)] = 0;
    if (t < 0) break;
  }
  rep.norm = std::max(rep.sup, Rational(-rep.inf));
  return rep;
}

Rational l2_squared_warnock(const PointSet& A) {
  A.validate();
  const std::size_t N = A.size();
  Rational cross(0);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k) {
      Rational prod(1);
      for (int t = 0; t < A.d; ++t) prod *= Rational(1) - std::max(A.points[i][t], A.points[k][t]);
      cross += prod;
    }
  Rational single(0);
  for (const auto& p : A.points) {
    Rational prod(1);
    for (int t = 0; t < A.d; ++t) prod *= (Rational(1) - p[t] * p[t]) / 2;
    single += prod;
  }
  Rational Nq(static_cast<long>(N));
  Rational third = rational_pow(Rational(1, 3), static_cast<unsigned>(A.d));
  Rational out = cross - 2 * Nq * single + Nq * Nq * third;
  out.canonicalize();
  return out;
}

LpEstimate discrepancy_lp(const PointSet& A, double p, int grid_level) {
  A.validate();
  if (!(p >= 1)) throw DomainError("p must be >= 1");
  if (grid_level < 0 || grid_level * A.d > 24) throw DomainError("grid level too large");
  LpEstimate e;
  e.p = p;
  e.grid_level = grid_level;
  const std::size_t m = std::size_t{1} << grid_level;
  const double h = 1.0 / static_cast<double>(m);
  const double N = static_cast<double>(A.size());
  std::vector<std::vector<double>> pts;
  e.bound_rigorous = true;
  const Rational grid = pow2(grid_level);
  for (const auto& q : A.points) {
    std::vector<double> v;
    for (const auto& c : q) {
      v.push_back(c.get_d());
      Rational scaled = c * grid;
      if (scaled.get_den() != 1) e.bound_rigorous = false;
    }
    pts.push_back(std::move(v));
  }
  std::size_t total = 1;
  for (int t = 0; t < A.d; ++t) total *= m;
  double acc = 0;
  std::vector<double> x(static_cast<std::size_t>(A.d));
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t rest = k;
    double vol = 1;
    for (int t = A.d - 1; t >= 0; --t) {
      x[static_cast<std::size_t>(t)] = (static_cast<double>(rest % m) + 0.5) * h;
      vol *= x[static_cast<std::size_t>(t)];
      rest /= m;
    }
    std::size_t c = 0;
    for (const auto& q : pts) {
      bool in = true;
      for (int t = 0; t < A.d && in; ++t) in = q[static_cast<std::size_t>(t)] < x[static_cast<std::size_t>(t)];
      c += in;
    }
    acc += std::pow(std::abs(static_cast<double>(c) - N * vol), p);
  }
  e.value = std::pow(acc / static_cast<double>(total), 1.0 / p);
  e.error_bound = N * A.d * h;
  return e;
}

PointSet make_points(const std::string& generator, std::size_t N, int d, std::uint64_t seed) {
  if (generator == "vdc") {
    if (d != 2) throw DomainError("vdc points are planar");
    return van_der_corput(N);
  }
  if (generator == "halton") {
    std::vector<unsigned> bases{2, 3, 5};
    bases.resize(static_cast<std::size_t>(d));
    return halton(N, bases);
  }
  if (generator == "random") return random_points(N, d, seed);
  throw DomainError("unknown generator: " + generator);
}

ScalingReport scaling_report(const std::string& generator, const std::vector<std::size_t>& N_list,
                             int d, std::uint64_t seed, std::uint64_t budget) {
  ScalingReport rep;
  rep.generator = generator;
  std::vector<double> lx, ls, l2;
  for (std::size_t N : N_list) {
    auto A = make_points(generator, N, d, seed);
    ScalingRow row;
    row.N = N;
    row.log_n = std::log(static_cast<double>(N));
    auto s = discrepancy_sup(A, budget, true);
    row.sup_norm = s.norm.get_d();
    row.sup_exact = s.exact;
    row.l2_norm = std::sqrt(l2_squared_warnock(A).get_d());
    rep.rows.push_back(row);
    if (N >= 2) {
      lx.push_back(row.log_n);
      ls.push_back(row.sup_norm);
      l2.push_back(row.l2_norm);
    }
  }
  if (lx.size() >= 2) {
    rep.sup_exponent = log_log_fit(lx, ls).slope;
    rep.l2_exponent = log_log_fit(lx, l2).slope;
  }
  return rep;
}

std::string ScalingReport::csv() const {
  std::ostringstream os;
  os.precision(12);
  os << "generator,N,log_N,sup_norm,sup_exact,l2_norm,sup_exponent,l2_exponent\n";
  for (const auto& r : rows)
    os << generator << ',' << r.N << ',' << r.log_n << ',' << r.sup_norm << ',' << (r.sup_exact ? 1 : 0) << ','
       << r.l2_norm << ',' << sup_exponent << ',' << l2_exponent << '\n';
  return os.str();
}

}  // namespace smallball
