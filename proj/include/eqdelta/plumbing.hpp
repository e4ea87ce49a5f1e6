#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "eqdelta/forms.hpp"

namespace eqdelta {

struct Vertex {
  std::string id;
  Int degree;
};

// Weighted forest. Vertex order is insertion order.
class PlumbingGraph {
 public:
  PlumbingGraph() = default;

  PlumbingGraph(std::vector<Vertex> vertices, std::vector<std::pair<std::size_t, std::size_t>> edges)
      : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    validate();
  }

  static PlumbingGraph chain(const std::vector<Int>& degrees, const std::string& prefix = "v") {
    std::vector<Vertex> vs;
    std::vector<std::pair<std::size_t, std::size_t>> es;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
      vs.push_back({prefix + std::to_string(i), degrees[i]});
      if (i > 0) es.emplace_back(i - 1, i);
    }
    return PlumbingGraph(std::move(vs), std::move(es));
  }

  std::size_t size() const { return vertices_.size(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  const Int& degree(std::size_t i) const { return vertices_.at(i).degree; }

  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(size());
    for (auto [a, b] : edges_) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    return adj;
  }

  std::vector<std::vector<std::size_t>> components() const {
    std::vector<std::size_t> root(size());
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](std::size_t x) {
      while (root[x] != x) x = root[x] = root[root[x]];
      return x;
    };
    for (auto [a, b] : edges_) root[find(a)] = find(b);
    std::vector<std::vector<std::size_t>> out;
    std::vector<long> slot(size(), -1);
    for (std::size_t v = 0; v < size(); ++v) {
      std::size_t r = find(v);
      if (slot[r] < 0) {
        slot[r] = static_cast<long>(out.size());
        out.emplace_back();
      }
      out[static_cast<std::size_t>(slot[r])].push_back(v);
    }
    return out;
  }

  // Induced subgraph on `subset`, renumbered in ascending order.
  PlumbingGraph induced(const std::vector<std::size_t>& subset) const {
    std::vector<long> pos(size(), -1);
    std::vector<std::size_t> s = subset;
    std::sort(s.begin(), s.end());
    std::vector<Vertex> vs;
    for (std::size_t k = 0; k < s.size(); ++k) {
      pos.at(s[k]) = static_cast<long>(k);
      vs.push_back(vertices_[s[k]]);
    }
    std::vector<std::pair<std::size_t, std::size_t>> es;
    for (auto [a, b] : edges_)
      if (pos[a] >= 0 && pos[b] >= 0) es.emplace_back(pos[a], pos[b]);
    return PlumbingGraph(std::move(vs), std::move(es));
  }

  PlumbingGraph disjoint_union(const PlumbingGraph& other) const {
    std::vector<Vertex> vs = vertices_;
    auto es = edges_;
    for (const auto& v : other.vertices_) vs.push_back({"u" + v.id, v.degree});
    for (auto [a, b] : other.edges_) es.emplace_back(a + size(), b + size());
    return PlumbingGraph(std::move(vs), std::move(es));
  }

  bool all_degrees_even() const {
    return std::all_of(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return v.degree % 2 == 0; });
  }

 private:
  void validate() const {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::vector<std::size_t> root(size());
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](std::size_t x) {
      while (root[x] != x) x = root[x] = root[root[x]];
      return x;
    };
    for (auto [a, b] : edges_) {
      if (a >= size() || b >= size()) throw make_error("ParseError", "edge endpoint out of range");
      if (a == b) throw make_error("ParseError", "forest violation: self-loop");
      auto key = std::minmax(a, b);
      if (!seen.insert(key).second) throw make_error("ParseError", "forest violation: repeated edge");
      std::size_t ra = find(a), rb = find(b);
      if (ra == rb) throw make_error("ParseError", "forest violation: cycle");
      root[ra] = rb;
    }
  }

  std::vector<Vertex> vertices_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

inline SymForm linking_matrix(const PlumbingGraph& g) {
  IntMat m(g.size(), IntVec(g.size(), Int(0)));
  for (std::size_t i = 0; i < g.size(); ++i) m[i][i] = g.degree(i);
  for (auto [a, b] : g.edges()) m[a][b] = m[b][a] = 1;
  return SymForm(std::move(m));
}

inline bool is_admissible(const PlumbingGraph& g, const std::vector<std::size_t>& s) {
  return determinant(linking_matrix(g.induced(s))) != 0;
}

struct CobordismSplit {
  SymForm inner;
  SignatureProfile complement_profile;
  RatForm complement;
};

// Splits A(Γ) into the span of the vertices in s and its orthogonal complement.
inline CobordismSplit cobordism_split(const PlumbingGraph& g, const std::vector<std::size_t>& s) {
  if (!is_admissible(g, s)) throw make_error("NotAdmissible", "induced subgraph has zero determinant");
  SymForm a = linking_matrix(g);
  ComplementResult c = orthogonal_complement(a, coordinate_subspace(g.size(), s));
  CobordismSplit out{linking_matrix(g.induced(s)), signature_profile(c.restricted), c.restricted};
  return out;
}

}  // namespace eqdelta
