#include "smallball/coincidence/beck_gain.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <sstream>

#include "smallball/core/fit.hpp"
#include "smallball/core/parallel.hpp"
#include "smallball/core/rng.hpp"

namespace smallball {

double predicted_exponent(ClassKind k) {
  switch (k) {
    case ClassKind::C2: return 1.75;
    case ClassKind::C2Restricted: return 1.5;
    case ClassKind::C2b: return 1.25;
    case ClassKind::B4: return 3.5;
    case ClassKind::B4a: return 2.5;
  }
  return 0.0;
}

CoincidenceClass make_class(const BeckGainConfig& cfg, int n) {
  switch (cfg.kind) {
    case ClassKind::C2: return c2_class(n);
    case ClassKind::C2Restricted: return c2_restricted_class(make_params_q(n, cfg.q), cfg.s, cfg.t);
    case ClassKind::C2b: return c2b_class(n, cfg.b);
    case ClassKind::B4: return b4_class(n, cfg.budget);
    case ClassKind::B4a: return b4a_class(n, cfg.a);
  }
  throw DomainError("unknown class");
}

CoefficientField<Integer> beck_gain_field(int n, std::uint64_t seed) {
  Rng rng(seed, static_cast<std::uint64_t>(n));
  return random_field<Integer>(n, 3, FieldMode::ExactVolume, AlphaKind::Signs, rng);
}

BeckGainTable beck_gain_measure(const BeckGainConfig& cfg) {
  BeckGainTable table;
  table.config = cfg;
  for (int n : cfg.n_list) {
    auto cls = make_class(cfg, n);
    if (cls.size() > cfg.budget) throw BudgetExceeded("coincidence class", cls.size(), cfg.budget);
    auto alpha = beck_gain_field(n, cfg.seed);
    const double q = cfg.kind == ClassKind::C2Restricted ? cfg.q : 1.0;
    const double rho = std::sqrt(q) / n;
    ValueHistogram hist;
    if (!cls.tuples.empty()) {
      ProdEvaluator ev(cls.tuples, {}, tuple_functions(cls.tuples, alpha), minimal_resolution(cls.tuples));
      hist = ev.histogram(cfg.threads);
    } else {
      hist.add(0);
    }
    for (double p : cfg.p_list) {
      BeckGainRow row;
      row.n = n;
      row.p = p;
      row.tuples = cls.size();
      row.trivial = static_cast<double>(cls.size());
      if (std::isinf(p)) {
        row.norm = static_cast<double>(hist.sup());
        row.moment = Rational(static_cast<long>(hist.sup()));
      } else {
        row.norm = hist.lp_norm(p);
        if (p == std::floor(p)) row.moment = hist.moment(static_cast<unsigned>(p));
      }
      row.normalized = std::pow(rho, cls.arity()) * row.norm;
      table.rows.push_back(row);
    }
  }
  for (double p : cfg.p_list) {
    std::vector<double> xs, ys;
    for (const auto& r : table.rows)
      if (r.p == p && r.norm > 0) {
        xs.push_back(r.n);
        ys.push_back(r.norm);
      }
    BeckGainFit fit;
    fit.p = p;
    fit.predicted_exponent = predicted_exponent(cfg.kind);
    fit.fitted_exponent = xs.size() >= 2 ? log_log_fit(xs, ys).slope : std::nan("");
    table.fits.push_back(fit);
  }
  return table;
}

std::string BeckGainTable::csv() const {
  std::ostringstream os;
  os.precision(12);
  os << "kind,n,p,tuples,norm,normalized,fitted_exponent,predicted_exponent\n";
  for (const auto& r : rows) {
    double fitted = 0.0;
    for (const auto& f : fits)
      if (f.p == r.p) fitted = f.fitted_exponent;
    os << kind_name(config.kind) << ',' << r.n << ',' << (std::isinf(r.p) ? std::string("inf") : std::to_string(r.p))
       << ',' << r.tuples << ',' << r.norm << ',' << r.normalized << ',' << fitted << ','
       << predicted_exponent(config.kind) << '\n';
  }
  return os.str();
}

namespace {

using Bits = std::vector<std::uint64_t>;

// bit set where f_r = -1
Bits sign_bits(const RFunction& f, const Resolution& res) {
  Bits b((res.cells() + 63) / 64, 0);
  for_each_shape_cell(f.shape, res, [&](std::size_t cell, std::size_t p, int h) {
    if (h * f.signs[p] < 0) b[cell >> 6] |= std::uint64_t{1} << (cell & 63);
  });
  return b;
}

std::uint64_t negative_cells(const Bits& a, const Bits& b, const Bits& c, const Bits& d) {
  std::uint64_t h = 0;
  for (std::size_t i = 0; i < a.size(); ++i) h += static_cast<std::uint64_t>(std::popcount(a[i] ^ b[i] ^ c[i] ^ d[i]));
  return h;
}

}  // namespace

L2TwoWays l2_two_ways(const CoincidenceClass& c, const CoefficientField<Integer>& alpha, unsigned threads) {
  if (c.arity() != 2) throw DomainError("l2_two_ways needs a class of pairs");
  L2TwoWays out;
  if (c.tuples.empty()) return out;
  const Resolution res = minimal_resolution(c.tuples);
  const auto functions = tuple_functions(c.tuples, alpha);
  ProdEvaluator ev(c.tuples, {}, functions, res);
  out.grid = ev.histogram(threads).moment(2);

  std::map<Shape, std::size_t> index;
  std::vector<Bits> bits;
  for (const auto& f : functions) {
    index[f.shape] = bits.size();
    bits.push_back(sign_bits(f, res));
  }
  const std::size_t m = c.tuples.size();
  const auto cells = static_cast<std::int64_t>(res.cells());
  struct Acc {
    std::int64_t b = 0, bt = 0;
    std::size_t nb = 0, nbt = 0, other = 0, other_nonzero = 0;
  };
  std::vector<Acc> acc(64);
  parallel_chunks(m, acc.size(), threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Acc& a = acc[chunk];
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const auto& x = c.tuples[i];
        const auto& y = c.tuples[j];
        ShapeTuple quad{x[0], x[1], y[0], y[1]};
        const std::int64_t sum = cells - 2 * static_cast<std::int64_t>(negative_cells(
                                                 bits[index.at(quad[0])], bits[index.at(quad[1])],
                                                 bits[index.at(quad[2])], bits[index.at(quad[3])]));
        bool repeated = false;
        for (int u = 0; u < 4; ++u)
          for (int v = u + 1; v < 4; ++v) repeated = repeated || quad[u] == quad[v];
        if (repeated) {
          a.bt += sum;
          ++a.nbt;
        } else if (maximum_attained_twice(quad, 0) && maximum_attained_twice(quad, 2)) {
          a.b += sum;
          ++a.nb;
        } else {
          ++a.other;
          if (sum != 0) ++a.other_nonzero;
        }
      }
  });
  std::int64_t b = 0, bt = 0;
  for (const auto& a : acc) {
    b += a.b;
    bt += a.bt;
    out.b_quadruples += a.nb;
    out.btilde_quadruples += a.nbt;
    out.other_quadruples += a.other;
    out.other_nonzero += a.other_nonzero;
  }
  const Rational N(static_cast<long>(cells));
  out.b_part = Rational(static_cast<long>(b)) / N;
  out.btilde_part = Rational(static_cast<long>(bt)) / N;
  out.expansion = out.b_part + out.btilde_part;
  out.expansion.canonicalize();
  return out;
}

}  // namespace smallball
