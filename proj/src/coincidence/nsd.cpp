#include "smallball/coincidence/nsd.hpp"

#include <functional>

namespace smallball {

namespace {

std::vector<const std::vector<Shape>*> blocks_for(const std::vector<int>& vertices, const RieszParams& p,
                                                  std::uint64_t budget) {
  std::vector<const std::vector<Shape>*> out;
  std::uint64_t total = 1;
  for (int v : vertices) {
    if (v < 1 || v > p.q) throw DomainError("vertex " + std::to_string(v) + " is not a block label 1..q");
    out.push_back(&p.blocks[static_cast<std::size_t>(v - 1)]);
    total *= out.back()->size();
    if (total > budget) throw BudgetExceeded("tuple enumeration", total, budget);
  }
  return out;
}

// depth-first over blocks; accept(i, r, partial) prunes
void walk(const std::vector<const std::vector<Shape>*>& blocks,
          const std::function<bool(std::size_t, const ShapeTuple&)>& accept,
          const std::function<void(const ShapeTuple&)>& emit) {
  ShapeTuple cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == blocks.size()) {
      emit(cur);
      return;
    }
    for (const auto& r : *blocks[i]) {
      cur.push_back(r);
      if (accept(i, cur)) rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace

CoincidenceGraph coincidence_graph(const std::vector<int>& vertices, const ShapeTuple& tuple) {
  CoincidenceGraph g(vertices);
  if (tuple.size() != g.size()) throw DomainError("tuple size does not match vertex count");
  for (std::size_t i = 0; i < tuple.size(); ++i)
    for (std::size_t j = i + 1; j < tuple.size(); ++j)
      for (int color : {2, 3})
        if (tuple[i][color - 1] == tuple[j][color - 1]) g.add_edge(color, g.vertices()[i], g.vertices()[j]);
  return g;
}

std::vector<ShapeTuple> x_of_graph(const CoincidenceGraph& g, const RieszParams& p, Membership m,
                                   std::uint64_t budget) {
  const auto& V = g.vertices();
  auto blocks = blocks_for(V, p, budget);
  std::vector<ShapeTuple> out;
  walk(
      blocks,
      [&](std::size_t i, const ShapeTuple& cur) {
        for (std::size_t j = 0; j < i; ++j)
          for (int color : {2, 3}) {
            bool edge = g.has_edge(color, V[j], V[i]);
            bool equal = cur[j][color - 1] == cur[i][color - 1];
            if (edge && !equal) return false;
            if (m == Membership::Exact && equal && !edge) return false;
          }
        return true;
      },
      [&](const ShapeTuple& t) { out.push_back(t); });
  return out;
}

std::vector<ShapeTuple> nsd_tuples(const std::vector<int>& vertices, const RieszParams& p, std::uint64_t budget) {
  std::vector<int> V = vertices;
  std::sort(V.begin(), V.end());
  std::vector<ShapeTuple> out;
  if (V.empty()) return out;
  auto blocks = blocks_for(V, p, budget);
  walk(
      blocks, [](std::size_t, const ShapeTuple&) { return true; },
      [&](const ShapeTuple& t) {
        for (std::size_t i = 0; i < t.size(); ++i) {
          bool paired = false;
          for (std::size_t j = 0; j < t.size() && !paired; ++j)
            paired = j != i && (t[i][1] == t[j][1] || t[i][2] == t[j][2]);
          if (!paired) return;
        }
        out.push_back(t);
      });
  return out;
}

GridFunction<Integer> prod_tuples(const std::vector<ShapeTuple>& tuples, const std::vector<Integer>& weights,
                                  const std::vector<RFunction>& functions, const RieszParams& p) {
  const Resolution res = default_resolution(p.n, 3);
  if (tuples.empty()) return GridFunction<Integer>(res, Integer{0});
  ProdEvaluator ev(tuples, weights, functions, res);
  return ev.dense();
}

namespace detail {

InclusionExclusionReport inclusion_exclusion_impl(const std::vector<int>& vertices,
                                                  const std::vector<RFunction>& functions, const RieszParams& p,
                                                  std::uint64_t budget) {
  InclusionExclusionReport rep;
  rep.vertices = vertices;
  std::sort(rep.vertices.begin(), rep.vertices.end());
  const auto lhs_tuples = nsd_tuples(rep.vertices, p, budget);
  rep.nsd_count = lhs_tuples.size();
  const auto lhs = prod_tuples(lhs_tuples, {}, functions, p);

  GraphLattice L;
  if (!rep.vertices.empty()) L = graph_lattice(rep.vertices);
  rep.graph_count = L.graphs.size();
  std::vector<ShapeTuple> mob_t, lit_t, exact_t;
  std::vector<Integer> mob_w, lit_w, exact_w;
  for (std::size_t i = 0; i < L.graphs.size(); ++i) {
    const auto& G = L.graphs[i];
    rep.prime_count += L.prime[i];
    const Integer c = L.coefficient[i];
    const Integer literal = L.grade[i] == 0 ? 0 : (L.grade[i] % 2 == 1 ? 1 : -1);
    if (c != 0) rep.coefficients.emplace_back(G, c);
    if (c != 0 || literal != 0) {
      for (auto& t : x_of_graph(G, p, Membership::AtLeast, budget)) {
        if (c != 0) {
          mob_t.push_back(t);
          mob_w.push_back(c);
        }
        if (literal != 0) {
          lit_t.push_back(t);
          lit_w.push_back(literal);
        }
      }
    }
    for (auto& t : x_of_graph(G, p, Membership::Exact, budget)) {
      exact_t.push_back(std::move(t));
      exact_w.push_back(1);
    }
  }
  rep.rhs_terms = mob_t.size();
  const auto rhs = prod_tuples(mob_t, mob_w, functions, p);
  rep.first_mismatch = first_mismatch(lhs, rhs);
  rep.holds = !rep.first_mismatch.has_value();
  rep.literal_holds = lhs == prod_tuples(lit_t, lit_w, functions, p);
  rep.exact_partition_holds = lhs == prod_tuples(exact_t, exact_w, functions, p);
  return rep;
}

FactorizationReport factorization_impl(const std::vector<CoincidenceGraph>& components,
                                       const std::vector<RFunction>& functions, const RieszParams& p,
                                       std::uint64_t budget) {
  FactorizationReport rep;
  std::vector<int> all;
  for (const auto& c : components) all.insert(all.end(), c.vertices().begin(), c.vertices().end());
  CoincidenceGraph joined(all);  // throws on overlap
  for (const auto& c : components)
    for (int color : {2, 3})
      for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j)
          if (c.has_edge(color, c.vertices()[i], c.vertices()[j]))
            joined.add_edge(color, c.vertices()[i], c.vertices()[j]);
  const Resolution res = default_resolution(p.n, 3);
  auto grid_of = [&](const CoincidenceGraph& g, std::size_t& terms) {
    if (g.size() == 0) {
      terms = 1;
      return GridFunction<Integer>(res, Integer{1});
    }
    auto tuples = x_of_graph(g, p, Membership::AtLeast, budget);
    terms = tuples.size();
    return prod_tuples(tuples, {}, functions, p);
  };
  const auto lhs = grid_of(joined, rep.lhs_terms);
  GridFunction<Integer> rhs(res, Integer{1});
  for (const auto& c : components) {
    std::size_t terms = 0;
    rhs = rhs * grid_of(c, terms);
    rep.component_terms.push_back(terms);
  }
  rep.first_mismatch = first_mismatch(lhs, rhs);
  rep.holds = !rep.first_mismatch.has_value();
  return rep;
}

}  // namespace detail

}  // namespace smallball
