#include "smallball/riesz/params.hpp"

#include <cmath>

#include "smallball/core/error.hpp"

namespace smallball {

int RieszParams::block_of(const Shape& r) const {
  for (std::size_t t = 0; t < intervals.size(); ++t)
    if (r[0] >= intervals[t].first && r[0] <= intervals[t].second) return static_cast<int>(t);
  throw DomainError("shape " + r.str() + " lies in no block");
}

Rational dyadic_approximation(double x, int bits) {
  double scaled = std::nearbyint(std::ldexp(x, bits));
  Rational q(mpz_class(scaled), mpz_class(1));
  q /= pow2(bits);
  q.canonicalize();
  return q;
}

RieszParams make_params_q(int n, int q, double a) {
  if (n < 1) throw DomainError("n must be positive");
  if (!(a > 0)) throw DomainError("a must be positive");
  if (q < 1 || q > n + 1)
    throw DomainError("q must satisfy 1 <= q <= n+1 (got q=" + std::to_string(q) + ", n=" + std::to_string(n) + ")");
  RieszParams p;
  p.n = n;
  p.a = a;
  p.q = q;
  p.rho_tilde = a * std::pow(static_cast<double>(q), p.b) / n;
  p.rho = std::sqrt(static_cast<double>(q)) / n;
  p.rho_tilde_exact = dyadic_approximation(p.rho_tilde);
  const int values = n + 1;
  int start = 0;
  for (int t = 0; t < q; ++t) {
    int len = values / q + (t < values % q ? 1 : 0);
    p.intervals.emplace_back(start, start + len - 1);
    start += len;
  }
  p.blocks.resize(q);
  for (const Shape& r : enumerate_shapes(n, 3)) p.blocks[p.block_of(r)].push_back(r);
  return p;
}

RieszParams make_params(int n, double a, double eps) {
  if (n < 1) throw DomainError("n must be positive");
  int q = static_cast<int>(std::lround(a * std::pow(static_cast<double>(n), eps)));
  RieszParams p = make_params_q(n, q, a);
  p.eps = eps;
  return p;
}

RieszParams with_rho_tilde(RieszParams p, const Rational& rho_tilde) {
  p.rho_tilde_exact = rho_tilde;
  p.rho_tilde = rho_tilde.get_d();
  return p;
}

}  // namespace smallball
