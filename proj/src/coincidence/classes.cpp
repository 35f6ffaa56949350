#include "smallball/coincidence/classes.hpp"

#include <algorithm>
#include <map>

namespace smallball {

std::string kind_name(ClassKind k) {
  switch (k) {
    case ClassKind::C2: return "C2";
    case ClassKind::C2Restricted: return "C2_restricted";
    case ClassKind::C2b: return "C2b";
    case ClassKind::B4: return "B4";
    case ClassKind::B4a: return "B4a";
  }
  return "?";
}

ClassKind parse_kind(const std::string& s) {
  for (auto k : {ClassKind::C2, ClassKind::C2Restricted, ClassKind::C2b, ClassKind::B4, ClassKind::B4a})
    if (kind_name(k) == s) return k;
  throw DomainError("unknown class kind: " + s);
}

CoincidenceClass c2_class(int n) {
  CoincidenceClass c;
  c.kind = ClassKind::C2;
  c.n = n;
  auto shapes = enumerate_shapes(n, 3);
  for (std::size_t i = 0; i < shapes.size(); ++i)
    for (std::size_t j = i + 1; j < shapes.size(); ++j)
      if (shapes[i][1] == shapes[j][1]) c.tuples.push_back({shapes[i], shapes[j]});
  return c;
}

CoincidenceClass c2_restricted_class(const RieszParams& p, int s, int t) {
  if (s < 0 || t < 0 || s >= p.q || t >= p.q) throw DomainError("block index out of range");
  CoincidenceClass c;
  c.kind = ClassKind::C2Restricted;
  c.n = p.n;
  c.s = s;
  c.t = t;
  for (const auto& r : p.blocks[s])
    for (const auto& u : p.blocks[t])
      if (r != u && r[1] == u[1]) {
        // inside one block keep each unordered pair once
        if (s == t && !(u < r)) continue;
        c.tuples.push_back({r, u});
      }
  return c;
}

CoincidenceClass c2b_class(int n, int b) {
  if (b < 0 || b > n) throw DomainError("b out of range");
  CoincidenceClass c;
  c.kind = ClassKind::C2b;
  c.n = n;
  c.b = b;
  auto shapes = enumerate_shapes(n, 3);
  for (const auto& r : shapes) {
    if (r[0] != b) continue;
    for (const auto& u : shapes)
      if (u != r && u[1] == r[1]) c.tuples.push_back({r, u});
  }
  return c;
}

bool maximum_attained_twice(const ShapeTuple& tuple, int coordinate, bool exactly) {
  int best = -1, count = 0;
  for (const auto& r : tuple) {
    if (r[coordinate] > best) {
      best = r[coordinate];
      count = 1;
    } else if (r[coordinate] == best) {
      ++count;
    }
  }
  return exactly ? count == 2 : count >= 2;
}

namespace {

bool all_distinct(const ShapeTuple& t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (t[i] == t[j]) return false;
  return true;
}

}  // namespace

CoincidenceClass b4_class(int n, std::uint64_t budget) {
  CoincidenceClass c;
  c.kind = ClassKind::B4;
  c.n = n;
  auto shapes = enumerate_shapes(n, 3);
  // r and s share r_2; so do t and u
  std::map<int, std::vector<Shape>> by_second;
  for (const auto& r : shapes) by_second[r[1]].push_back(r);
  std::uint64_t pairs = 0;
  for (const auto& [k, v] : by_second) pairs += v.size() * v.size();
  if (pairs * pairs > budget) throw BudgetExceeded("B4 enumeration", pairs * pairs, budget);
  for (const auto& [k1, g1] : by_second)
    for (const auto& r : g1)
      for (const auto& s : g1) {
        if (r == s) continue;
        for (const auto& [k2, g2] : by_second)
          for (const auto& t : g2)
            for (const auto& u : g2) {
              ShapeTuple tu{r, s, t, u};
              if (!all_distinct(tu)) continue;
              if (!maximum_attained_twice(tu, 0) || !maximum_attained_twice(tu, 2)) continue;
              if (maximum_attained_twice(tu, 0, true) && maximum_attained_twice(tu, 2, true)) ++c.exactly_twice;
              c.tuples.push_back(std::move(tu));
            }
      }
  return c;
}

CoincidenceClass b4a_class(int n, int a) {
  if (a < 0 || a > n) throw DomainError("a out of range");
  CoincidenceClass c;
  c.kind = ClassKind::B4a;
  c.n = n;
  c.a = a;
  auto shapes = enumerate_shapes(n, 3);
  auto with_first = [&](int second) -> std::vector<Shape> {
    int third = n - a - second;
    if (third < 0) return {};
    return {Shape{a, second, third}};
  };
  for (const auto& r : shapes)
    for (const auto& s : with_first(r[1]))
      for (const auto& t : shapes)
        for (const auto& u : with_first(t[1])) {
          ShapeTuple tu{r, s, t, u};
          if (!all_distinct(tu)) continue;
          bool third = false;
          for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) third = third || tu[i][2] == tu[j][2];
          if (third) c.tuples.push_back(std::move(tu));
        }
  return c;
}

ProdEvaluator::ProdEvaluator(const std::vector<ShapeTuple>& tuples, std::vector<Integer> coefficients,
                             const std::vector<RFunction>& functions, const Resolution& res)
    : engine_(functions, res) {
  if (!coefficients.empty() && coefficients.size() != tuples.size())
    throw DomainError("coefficient count mismatch");
  std::map<Shape, std::uint32_t> index;
  for (std::size_t i = 0; i < functions.size(); ++i) index[functions[i].shape] = static_cast<std::uint32_t>(i);
  terms_.reserve(tuples.size());
  for (std::size_t k = 0; k < tuples.size(); ++k) {
    ProductTerm term;
    for (const auto& r : tuples[k]) {
      auto it = index.find(r);
      if (it == index.end()) throw DomainError("no r-function for shape " + r.str());
      term.factors.push_back(it->second);
    }
    term.coefficient = coefficients.empty() ? 1 : coefficients[k];
    terms_.push_back(std::move(term));
  }
}

Resolution minimal_resolution(const std::vector<ShapeTuple>& tuples, int d) {
  std::array<int, kMaxDim> lv{1, 1, 1};
  for (const auto& tu : tuples)
    for (const auto& r : tu)
      for (int t = 0; t < d; ++t) lv[t] = std::max(lv[t], r[t] + 1);
  return Resolution(std::span<const int>(lv.data(), static_cast<std::size_t>(d)));
}

}  // namespace smallball
