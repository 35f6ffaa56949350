#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smallball/coincidence/classes.hpp"
#include "smallball/coincidence/graph.hpp"

namespace smallball {

// Vertex v of a graph stands for block v - 1 of the Riesz parameters.
enum class Membership { AtLeast, Exact };

// Tuples (r_v)_{v in V} from the blocks such that every edge of color j forces
// r_{v,j} = r_{v',j}; with Exact, coincidences outside the graph are excluded.
std::vector<ShapeTuple> x_of_graph(const CoincidenceGraph& g, const RieszParams& p,
                                   Membership m = Membership::AtLeast,
                                   std::uint64_t budget = kDefaultTupleBudget);

// Tuples in which every member shares coordinate 2 or 3 with another member.
std::vector<ShapeTuple> nsd_tuples(const std::vector<int>& vertices, const RieszParams& p,
                                   std::uint64_t budget = kDefaultTupleBudget);

// Coincidence pattern of a tuple as a graph on the given vertices.
CoincidenceGraph coincidence_graph(const std::vector<int>& vertices, const ShapeTuple& tuple);

struct InclusionExclusionReport {
  std::vector<int> vertices;
  std::size_t nsd_count = 0;
  std::size_t graph_count = 0;
  std::size_t prime_count = 0;
  std::size_t rhs_terms = 0;
  bool holds = false;            // coefficients c(G) from the inclusion order
  bool literal_holds = false;    // sign (-1)^(grade - 1), primes positive
  bool exact_partition_holds = false;  // sum over graphs with exact membership
  std::optional<std::size_t> first_mismatch;
  std::vector<std::pair<CoincidenceGraph, Integer>> coefficients;  // nonzero c(G)
};

template <GridScalar S>
InclusionExclusionReport inclusion_exclusion_check(const std::vector<int>& vertices, const CoefficientField<S>& alpha,
                                                   const RieszParams& p,
                                                   std::uint64_t budget = kDefaultTupleBudget);

struct FactorizationReport {
  bool holds = false;
  std::size_t lhs_terms = 0;
  std::vector<std::size_t> component_terms;
  std::optional<std::size_t> first_mismatch;
};

// components on pairwise disjoint vertex sets; an empty component contributes 1.
template <GridScalar S>
FactorizationReport factorization_check(const std::vector<CoincidenceGraph>& components,
                                        const CoefficientField<S>& alpha, const RieszParams& p,
                                        std::uint64_t budget = kDefaultTupleBudget);

// Sum of products over tuples (optionally weighted) on the default grid for p.
GridFunction<Integer> prod_tuples(const std::vector<ShapeTuple>& tuples, const std::vector<Integer>& weights,
                                  const std::vector<RFunction>& functions, const RieszParams& p);

namespace detail {

InclusionExclusionReport inclusion_exclusion_impl(const std::vector<int>& vertices,
                                                  const std::vector<RFunction>& functions, const RieszParams& p,
                                                  std::uint64_t budget);
FactorizationReport factorization_impl(const std::vector<CoincidenceGraph>& components,
                                       const std::vector<RFunction>& functions, const RieszParams& p,
                                       std::uint64_t budget);

template <GridScalar S>
std::vector<RFunction> all_functions(const CoefficientField<S>& alpha) {
  return r_functions(alpha, enumerate_shapes(alpha.n(), alpha.d()));
}

}  // namespace detail

template <GridScalar S>
InclusionExclusionReport inclusion_exclusion_check(const std::vector<int>& vertices, const CoefficientField<S>& alpha,
                                                   const RieszParams& p, std::uint64_t budget) {
  return detail::inclusion_exclusion_impl(vertices, detail::all_functions(alpha), p, budget);
}

template <GridScalar S>
FactorizationReport factorization_check(const std::vector<CoincidenceGraph>& components,
                                        const CoefficientField<S>& alpha, const RieszParams& p,
                                        std::uint64_t budget) {
  return detail::factorization_impl(components, detail::all_functions(alpha), p, budget);
}

}  // namespace smallball
