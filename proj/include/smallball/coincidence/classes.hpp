#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smallball/core/error.hpp"
#include "smallball/grid/histogram.hpp"
#include "smallball/hyperbolic/line_engine.hpp"
#include "smallball/riesz/params.hpp"

namespace smallball {

using ShapeTuple = std::vector<Shape>;

enum class ClassKind { C2, C2Restricted, C2b, B4, B4a };
std::string kind_name(ClassKind k);
ClassKind parse_kind(const std::string& s);

struct CoincidenceClass {
  ClassKind kind = ClassKind::C2;
  int n = 0;
  int s = -1, t = -1;  // blocks (0-based) for C2Restricted
  int b = -1;          // C2b
  int a = -1;          // B4a
  std::vector<ShapeTuple> tuples;
  std::uint64_t exactly_twice = 0;  // B4: tuples whose maxima occur exactly twice in both coordinates

  std::size_t size() const { return tuples.size(); }
  int arity() const { return kind == ClassKind::B4 || kind == ClassKind::B4a ? 4 : 2; }
};

// Unordered pairs {r, s} of distinct shapes with r_2 = s_2; r precedes s in
// enumeration order.
CoincidenceClass c2_class(int n);
// Pairs (r, s) in block s x block t with r_2 = s_2.
CoincidenceClass c2_restricted_class(const RieszParams& p, int s, int t);
// C2 pairs whose first member has r_1 = b.
CoincidenceClass c2b_class(int n, int b);
// 4-tuples of distinct shapes, r_2 = s_2, t_2 = u_2, maximum attained at
// least twice in coordinates 1 and 3.
CoincidenceClass b4_class(int n, std::uint64_t budget = kDefaultTupleBudget);
// 4-tuples of distinct shapes, r_2 = s_2, t_2 = u_2, s_1 = u_1 = a, and two of
// the four agree in coordinate 3.
CoincidenceClass b4a_class(int n, int a);

bool maximum_attained_twice(const ShapeTuple& tuple, int coordinate, bool exactly = false);

// Sum over tuples of products of r-functions, computed line by line.
class ProdEvaluator {
 public:
  ProdEvaluator(const std::vector<ShapeTuple>& tuples, std::vector<Integer> coefficients,
                const std::vector<RFunction>& functions, const Resolution& res);

  ValueHistogram histogram(unsigned threads = 1) const { return engine_.histogram(terms_, threads); }
  Integer sup(unsigned threads = 1) const { return engine_.sup(terms_, threads); }
  GridFunction<Integer> dense() const { return engine_.dense(terms_); }
  const std::vector<ProductTerm>& terms() const { return terms_; }

 private:
  LineEngine engine_;
  std::vector<ProductTerm> terms_;
};

// Smallest resolution resolving every shape in the tuples (at least level 1
// per coordinate).
Resolution minimal_resolution(const std::vector<ShapeTuple>& tuples, int d = 3);

template <GridScalar S>
std::vector<RFunction> tuple_functions(const std::vector<ShapeTuple>& tuples, const CoefficientField<S>& alpha) {
  std::vector<Shape> shapes;
  for (const auto& tu : tuples) shapes.insert(shapes.end(), tu.begin(), tu.end());
  std::sort(shapes.begin(), shapes.end());
  shapes.erase(std::unique(shapes.begin(), shapes.end()), shapes.end());
  return r_functions(alpha, shapes);
}

template <GridScalar S>
GridFunction<Integer> prod_over(const std::vector<ShapeTuple>& tuples, const CoefficientField<S>& alpha,
                                const Resolution& res) {
  if (tuples.empty()) return GridFunction<Integer>(res, Integer{0});
  ProdEvaluator ev(tuples, {}, tuple_functions(tuples, alpha), res);
  return ev.dense();
}

}  // namespace smallball
