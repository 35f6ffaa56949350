#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smallball/core/scalar.hpp"
#include <json.hpp>

namespace smallball {

// Two-colored graph on a sorted vertex set. Colors are 2 and 3 (the shape
// coordinate whose equality an edge records). Vertex labels carry the block
// order and are never quotiented out.
class CoincidenceGraph {
 public:
  static constexpr int kMaxVertices = 11;

  CoincidenceGraph() = default;
  explicit CoincidenceGraph(std::vector<int> vertices);
  static CoincidenceGraph from_cliques(std::vector<int> vertices, const std::vector<std::vector<int>>& cliques2,
                                       const std::vector<std::vector<int>>& cliques3);

  const std::vector<int>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  int position(int vertex) const;

  void add_edge(int color, int u, int v);
  bool has_edge(int color, int u, int v) const;
  std::uint64_t mask(int color) const { return m_[color == 2 ? 0 : 1]; }
  void set_mask(int color, std::uint64_t m) { m_[color == 2 ? 0 : 1] = m; }
  std::size_t edge_count() const;
  std::size_t pair_index(std::size_t i, std::size_t j) const;  // positions, i != j

  // Contains every edge of `other` (same vertices).
  bool contains(const CoincidenceGraph& other) const;

  auto operator<=>(const CoincidenceGraph&) const = default;
  std::string str() const;

 private:
  std::vector<int> v_;
  std::uint64_t m_[2] = {0, 0};
};

// Maximal complete vertex sets of size >= 2 in one color, sorted.
std::vector<std::vector<int>> cliques(const CoincidenceGraph& g, int color);

// Each color is a disjoint union of cliques, a color-2 clique and a color-3
// clique share at most one vertex, and every vertex lies in a clique.
bool is_admissible(const CoincidenceGraph& g);
bool is_connected(const CoincidenceGraph& g);

// Smallest admissible graph containing both edge sets, if any.
std::optional<CoincidenceGraph> wedge(const CoincidenceGraph& a, const CoincidenceGraph& b);

// Every admissible graph on exactly these vertices, sorted.
std::vector<CoincidenceGraph> enumerate_admissible(const std::vector<int>& vertices, std::size_t cap = 6);

// All admissible graphs on a vertex set with prime flags, grades (0 when no
// wedge of primes produces the graph) and inclusion-exclusion coefficients
// c(G) = 1 - sum_{H strictly inside G} c(H).
struct GraphLattice {
  std::vector<CoincidenceGraph> graphs;
  std::vector<bool> prime;
  std::vector<int> grade;
  std::vector<Integer> coefficient;

  std::size_t index_of(const CoincidenceGraph& g) const;
};

GraphLattice graph_lattice(const std::vector<int>& vertices, std::size_t cap = 6);

bool is_prime(const CoincidenceGraph& g);
int grade(const CoincidenceGraph& g);

nlohmann::json graph_to_json(const CoincidenceGraph& g);
CoincidenceGraph graph_from_json(const nlohmann::json& j);

// Vertex-by-vertex bookkeeping of the recursive L^p estimate for a connected
// admissible graph.
struct ExponentReport {
  std::vector<int> v32;
  std::vector<int> v12;
  std::vector<int> determined;
  std::vector<std::string> steps;
  Rational exponent;  // (3/2|V32| + 1/2|V12| - |V|) / |V|

  double exponent_value() const { return exponent.get_d(); }
};

ExponentReport exponent_recursion(const CoincidenceGraph& g);

}  // namespace smallball
