#include "smallball/coincidence/graph.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "smallball/core/error.hpp"

namespace smallball {

CoincidenceGraph::CoincidenceGraph(std::vector<int> vertices) : v_(std::move(vertices)) {
  std::sort(v_.begin(), v_.end());
  if (std::adjacent_find(v_.begin(), v_.end()) != v_.end()) throw DomainError("repeated vertex");
  if (v_.size() > kMaxVertices) throw DomainError("too many vertices");
}

CoincidenceGraph CoincidenceGraph::from_cliques(std::vector<int> vertices,
                                                const std::vector<std::vector<int>>& cliques2,
                                                const std::vector<std::vector<int>>& cliques3) {
  CoincidenceGraph g(std::move(vertices));
  for (int color : {2, 3})
    for (const auto& q : color == 2 ? cliques2 : cliques3)
      for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = i + 1; j < q.size(); ++j) g.add_edge(color, q[i], q[j]);
  return g;
}

int CoincidenceGraph::position(int vertex) const {
  auto it = std::lower_bound(v_.begin(), v_.end(), vertex);
  if (it == v_.end() || *it != vertex) throw DomainError("vertex " + std::to_string(vertex) + " not in graph");
  return static_cast<int>(it - v_.begin());
}

std::size_t CoincidenceGraph::pair_index(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  // pairs (i, j), i < j, in order (0,1),(0,2),(1,2),(0,3),...
  return j * (j - 1) / 2 + i;
}

void CoincidenceGraph::add_edge(int color, int u, int v) {
  if (color != 2 && color != 3) throw DomainError("edge color must be 2 or 3");
  if (u == v) throw DomainError("loops are not allowed");
  m_[color == 2 ? 0 : 1] |= std::uint64_t{1} << pair_index(position(u), position(v));
}

bool CoincidenceGraph::has_edge(int color, int u, int v) const {
  if (u == v) return false;
  return (mask(color) >> pair_index(position(u), position(v))) & 1;
}

std::size_t CoincidenceGraph::edge_count() const {
  return static_cast<std::size_t>(std::popcount(m_[0]) + std::popcount(m_[1]));
}

bool CoincidenceGraph::contains(const CoincidenceGraph& o) const {
  return v_ == o.v_ && (o.m_[0] & ~m_[0]) == 0 && (o.m_[1] & ~m_[1]) == 0;
}

std::string CoincidenceGraph::str() const {
  std::ostringstream os;
  os << "V{";
  for (std::size_t i = 0; i < v_.size(); ++i) os << (i ? "," : "") << v_[i];
  os << "}";
  for (int color : {2, 3}) {
    os << " c" << color << ":";
    for (const auto& q : cliques(*this, color)) {
      os << "[";
      for (std::size_t i = 0; i < q.size(); ++i) os << (i ? "," : "") << q[i];
      os << "]";
    }
  }
  return os.str();
}

std::vector<std::vector<int>> cliques(const CoincidenceGraph& g, int color) {
  const std::size_t m = g.size();
  const auto& V = g.vertices();
  auto adjacent = [&](std::size_t i, std::size_t j) { return i != j && ((g.mask(color) >> g.pair_index(i, j)) & 1); };
  std::vector<std::uint32_t> complete;
  for (std::uint32_t s = 1; s < (1u << m); ++s) {
    if (std::popcount(s) < 2) continue;
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i)
      for (std::size_t j = i + 1; j < m && ok; ++j)
        if ((s >> i & 1) && (s >> j & 1) && !adjacent(i, j)) ok = false;
    if (ok) complete.push_back(s);
  }
  std::vector<std::vector<int>> out;
  for (auto s : complete) {
    bool maximal = true;
    for (auto t : complete)
      if (t != s && (t & s) == s) maximal = false;
    if (!maximal) continue;
    std::vector<int> q;
    for (std::size_t i = 0; i < m; ++i)
      if (s >> i & 1) q.push_back(V[i]);
    out.push_back(q);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_admissible(const CoincidenceGraph& g) {
  const auto& V = g.vertices();
  std::vector<bool> covered(V.size(), false);
  std::vector<std::vector<int>> q2, q3;
  for (int color : {2, 3}) {
    auto qs = cliques(g, color);
    // cliques must be vertex disjoint and carry every edge
    std::uint64_t carried = 0;
    std::vector<bool> used(V.size(), false);
    for (const auto& q : qs) {
      for (std::size_t i = 0; i < q.size(); ++i) {
        auto pi = static_cast<std::size_t>(g.position(q[i]));
        if (used[pi]) return false;
        used[pi] = true;
        covered[pi] = true;
        for (std::size_t j = i + 1; j < q.size(); ++j)
          carried |= std::uint64_t{1} << g.pair_index(pi, static_cast<std::size_t>(g.position(q[j])));
      }
    }
    if (carried != g.mask(color)) return false;
    (color == 2 ? q2 : q3) = std::move(qs);
  }
  for (const auto& a : q2)
    for (const auto& b : q3) {
      std::vector<int> common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      if (common.size() > 1) return false;
    }
  return std::all_of(covered.begin(), covered.end(), [](bool c) { return c; });
}

bool is_connected(const CoincidenceGraph& g) {
  const std::size_t m = g.size();
  if (m == 0) return true;
  std::vector<bool> seen(m, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  const std::uint64_t both = g.mask(2) | g.mask(3);
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < m; ++j)
      if (!seen[j] && j != i && ((both >> g.pair_index(i, j)) & 1)) {
        seen[j] = true;
        stack.push_back(j);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool s) { return s; });
}

namespace {

std::uint64_t closure(const CoincidenceGraph& g, std::uint64_t mask) {
  const std::size_t m = g.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t j = 1; j < m; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if ((mask >> g.pair_index(i, j)) & 1) parent[find(i)] = find(j);
  std::uint64_t out = 0;
  for (std::size_t j = 1; j < m; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (find(i) == find(j)) out |= std::uint64_t{1} << g.pair_index(i, j);
  return out;
}

// restricted growth strings
void set_partitions(std::size_t m, std::vector<std::vector<int>>& out) {
  std::vector<int> a(m, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int top) {
    if (i == m) {
      out.push_back(a);
      return;
    }
    for (int b = 0; b <= top + 1; ++b) {
      a[i] = b;
      rec(i + 1, std::max(top, b));
    }
  };
  if (m == 0) {
    out.push_back({});
    return;
  }
  a[0] = 0;
  rec(1, 0);
}

}  // namespace

std::optional<CoincidenceGraph> wedge(const CoincidenceGraph& a, const CoincidenceGraph& b) {
  if (a.vertices() != b.vertices()) throw DomainError("wedge of graphs on different vertex sets");
  CoincidenceGraph g = a;
  g.set_mask(2, closure(a, a.mask(2) | b.mask(2)));
  g.set_mask(3, closure(a, a.mask(3) | b.mask(3)));
  if (g.mask(2) & g.mask(3)) return std::nullopt;
  if (!is_admissible(g)) return std::nullopt;
  return g;
}

std::vector<CoincidenceGraph> enumerate_admissible(const std::vector<int>& vertices, std::size_t cap) {
  if (vertices.size() > cap) throw DomainError("vertex set larger than the configured cap");
  CoincidenceGraph base(vertices);
  const std::size_t m = base.size();
  std::vector<std::vector<int>> parts;
  set_partitions(m, parts);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> masks;  // (edges, covered vertices)
  for (const auto& p : parts) {
    std::uint64_t e = 0, cov = 0;
    for (std::size_t j = 1; j < m; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (p[i] == p[j]) {
          e |= std::uint64_t{1} << base.pair_index(i, j);
          cov |= (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
        }
    masks.emplace_back(e, cov);
  }
  const std::uint64_t all = m == 0 ? 0 : (std::uint64_t{1} << m) - 1;
  std::vector<CoincidenceGraph> out;
  if (m == 0) return out;
  for (const auto& [e2, c2] : masks)
    for (const auto& [e3, c3] : masks) {
      // two vertices sharing a clique of each color is the only way two
      // cliques meet twice
      if ((e2 & e3) || (c2 | c3) != all) continue;
      CoincidenceGraph g = base;
      g.set_mask(2, e2);
      g.set_mask(3, e3);
      out.push_back(g);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t GraphLattice::index_of(const CoincidenceGraph& g) const {
  auto it = std::lower_bound(graphs.begin(), graphs.end(), g);
  if (it == graphs.end() || *it != g) throw DomainError("graph not in lattice: " + g.str());
  return static_cast<std::size_t>(it - graphs.begin());
}

GraphLattice graph_lattice(const std::vector<int>& vertices, std::size_t cap) {
  GraphLattice L;
  L.graphs = enumerate_admissible(vertices, cap);
  const std::size_t N = L.graphs.size();
  std::vector<std::size_t> order(N);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](auto x, auto y) { return L.graphs[x].edge_count() < L.graphs[y].edge_count(); });
  L.prime.assign(N, true);
  L.coefficient.assign(N, 0);
  for (std::size_t a = 0; a < N; ++a) {
    const auto& G = L.graphs[order[a]];
    Integer c = 1;
    for (std::size_t b = 0; b < a; ++b) {
      const auto& H = L.graphs[order[b]];
      if (H.edge_count() < G.edge_count() && G.contains(H)) {
        c -= L.coefficient[order[b]];
        L.prime[order[a]] = false;
      }
    }
    L.coefficient[order[a]] = c;
  }
  L.grade.assign(N, 0);
  std::vector<std::size_t> frontier, primes;
  for (std::size_t i = 0; i < N; ++i)
    if (L.prime[i]) {
      L.grade[i] = 1;
      frontier.push_back(i);
      primes.push_back(i);
    }
  for (int k = 1; !frontier.empty(); ++k) {
    std::vector<std::size_t> next;
    for (auto i : frontier)
      for (auto p : primes) {
        auto w = wedge(L.graphs[i], L.graphs[p]);
        if (!w) continue;
        auto j = L.index_of(*w);
        if (L.grade[j] == 0) {
          L.grade[j] = k + 1;
          next.push_back(j);
        }
      }
    frontier = std::move(next);
  }
  return L;
}

bool is_prime(const CoincidenceGraph& g) {
  if (!is_admissible(g)) throw DomainError("prime test needs an admissible graph");
  for (const auto& h : enumerate_admissible(g.vertices(), CoincidenceGraph::kMaxVertices))
    if (h != g && g.contains(h)) return false;
  return true;
}

int grade(const CoincidenceGraph& g) {
  if (!is_admissible(g)) throw DomainError("grade needs an admissible graph");
  auto L = graph_lattice(g.vertices(), CoincidenceGraph::kMaxVertices);
  return L.grade[L.index_of(g)];
}

nlohmann::json graph_to_json(const CoincidenceGraph& g) {
  return {{"vertices", g.vertices()}, {"cliques2", cliques(g, 2)}, {"cliques3", cliques(g, 3)}};
}

CoincidenceGraph graph_from_json(const nlohmann::json& j) {
  try {
    return CoincidenceGraph::from_cliques(j.at("vertices").get<std::vector<int>>(),
                                          j.at("cliques2").get<std::vector<std::vector<int>>>(),
                                          j.at("cliques3").get<std::vector<std::vector<int>>>());
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("graph json: ") + e.what());
  }
}

ExponentReport exponent_recursion(const CoincidenceGraph& g) {
  if (!is_admissible(g)) throw DomainError("exponent recursion needs an admissible graph");
  if (!is_connected(g)) throw DomainError("exponent recursion needs a connected graph");
  const auto& V = g.vertices();
  const std::size_t m = V.size();
  auto c2 = cliques(g, 2), c3 = cliques(g, 3);
  // clique ids: color-2 cliques first
  std::vector<std::vector<int>> all = c2;
  all.insert(all.end(), c3.begin(), c3.end());
  auto in_clique = [&](std::size_t q, int v) { return std::binary_search(all[q].begin(), all[q].end(), v); };
  std::vector<bool> fixed(all.size(), false), chosen(m, false);
  ExponentReport rep;
  auto fix_cliques_of = [&](int v) {
    for (std::size_t q = 0; q < all.size(); ++q)
      if (in_clique(q, v)) fixed[q] = true;
  };
  // two fixed cliques (one of each color) pin down the shape
  auto determined = [&](std::size_t i) {
    if (chosen[i]) return true;
    bool f2 = false, f3 = false;
    for (std::size_t q = 0; q < all.size(); ++q)
      if (fixed[q] && in_clique(q, V[i])) (q < c2.size() ? f2 : f3) = true;
    return f2 && f3;
  };
  auto fixed_containing = [&](int v) {
    int count = 0;
    for (std::size_t q = 0; q < all.size(); ++q) count += fixed[q] && in_clique(q, v);
    return count;
  };
  // base case: the largest vertex
  chosen[m - 1] = true;
  rep.v32.push_back(V[m - 1]);
  fix_cliques_of(V[m - 1]);
  rep.steps.push_back("base " + std::to_string(V[m - 1]) + " -> V32");
  for (;;) {
    std::size_t k = m;
    for (std::size_t i = m; i-- > 0;)
      if (!determined(i)) {
        k = i;
        break;
      }
    if (k == m) break;
    const int v = V[k];
    const int touching = fixed_containing(v);
    chosen[k] = true;
    if (touching == 0) {
      rep.v32.push_back(v);
      rep.steps.push_back(std::to_string(v) + " free -> V32");
    } else {
      rep.v12.push_back(v);
      rep.steps.push_back(std::to_string(v) + " on one fixed clique -> V12");
    }
    fix_cliques_of(v);
  }
  for (std::size_t i = 0; i < m; ++i)
    if (std::find(rep.v32.begin(), rep.v32.end(), V[i]) == rep.v32.end() &&
        std::find(rep.v12.begin(), rep.v12.end(), V[i]) == rep.v12.end())
      rep.determined.push_back(V[i]);
  std::sort(rep.v32.begin(), rep.v32.end());
  std::sort(rep.v12.begin(), rep.v12.end());
  const long a = static_cast<long>(rep.v32.size()), b = static_cast<long>(rep.v12.size()),
             n = static_cast<long>(m);
  rep.exponent = Rational(3 * a + b - 2 * n, 2 * n);
  rep.exponent.canonicalize();
  return rep;
}

}  // namespace smallball
