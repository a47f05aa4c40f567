#pragma once

// Cayley graphs on Z[zeta_m]/A (first and second kind) and circulants
// Cay(Z_n, S), stored as flat index-based adjacency.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cyclo/errors.hpp"
#include "cyclo/ideal.hpp"

namespace cyclo {

enum class GraphKind { full_cyclotomic, second_kind, circulant };

inline std::string to_string(GraphKind k) {
  switch (k) {
    case GraphKind::full_cyclotomic: return "full";
    case GraphKind::second_kind: return "second-kind";
    case GraphKind::circulant: return "circulant";
  }
  return "?";
}

using Vertex = std::uint32_t;

struct CirculantSource {
  std::int64_t n = 0;
  std::vector<std::int64_t> connection_set;
};

// Every vertex has exactly |connection_set| neighbours; the neighbours of v
// occupy adjacency[v*degree, (v+1)*degree). Residue semantics (when any)
// live only in the source.
class CayleyGraph {
 public:
  using Source = std::variant<std::shared_ptr<const QuotientRing>, CirculantSource>;

  CayleyGraph(GraphKind kind, Source source, std::vector<std::int64_t> connection_set, std::size_t n_vertices,
              std::vector<Vertex> adjacency)
      : kind_(kind),
        source_(std::move(source)),
        connection_set_(std::move(connection_set)),
        n_(n_vertices),
        adjacency_(std::move(adjacency)) {
    if (n_ == 0 || adjacency_.size() != n_ * connection_set_.size())
      throw InvalidParameter("adjacency size does not match vertex count and degree");
  }

  GraphKind kind() const { return kind_; }
  const Source& source() const { return source_; }
  std::size_t n_vertices() const { return n_; }
  std::size_t degree() const { return connection_set_.size(); }
  const std::vector<std::int64_t>& connection_set() const { return connection_set_; }
  const std::vector<Vertex>& adjacency() const { return adjacency_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + static_cast<std::size_t>(v) * degree(), degree()};
  }

  bool adjacent(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    return std::find(nb.begin(), nb.end(), v) != nb.end();
  }

  // The quotient ring behind a cyclotomic graph, or null for circulants.
  const QuotientRing* ring() const {
    if (auto p = std::get_if<std::shared_ptr<const QuotientRing>>(&source_)) return p->get();
    return nullptr;
  }

  std::size_t edge_count() const { return n_ * degree() / 2; }

 private:
  GraphKind kind_;
  Source source_;
  std::vector<std::int64_t> connection_set_;
  std::size_t n_;
  std::vector<Vertex> adjacency_;
};

constexpr std::int32_t kUnreachable = -1;

inline std::vector<std::int32_t> bfs_distances(const CayleyGraph& g, Vertex source) {
  if (source >= g.n_vertices()) throw InvalidParameter("BFS source out of range");
  std::vector<std::int32_t> dist(g.n_vertices(), kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(g.n_vertices());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] != kUnreachable) continue;
      dist[w] = dist[u] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

inline bool is_connected(const CayleyGraph& g) {
  const auto d = bfs_distances(g, 0);
  return std::none_of(d.begin(), d.end(), [](std::int32_t x) { return x == kUnreachable; });
}

inline std::int32_t eccentricity(const CayleyGraph& g, Vertex v) {
  const auto d = bfs_distances(g, v);
  return *std::max_element(d.begin(), d.end());
}

// Handshake and symmetry checks on the stored adjacency.
struct StructureReport {
  bool symmetric = true;
  bool simple = true;  // no loops, no repeated neighbours
  bool handshake = true;
  bool connected = true;
};

inline StructureReport check_structure(const CayleyGraph& g) {
  StructureReport r;
  std::size_t degree_sum = 0;
  for (Vertex v = 0; v < g.n_vertices(); ++v) {
    auto nb = g.neighbors(v);
    degree_sum += nb.size();
    std::vector<Vertex> sorted(nb.begin(), nb.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) r.simple = false;
    for (Vertex w : nb) {
      if (w == v) r.simple = false;
      if (w >= g.n_vertices() || !g.adjacent(w, v)) r.symmetric = false;
    }
  }
  r.handshake = degree_sum == 2 * g.edge_count() && degree_sum % 2 == 0;
  r.connected = is_connected(g);
  return r;
}

namespace detail {

inline std::vector<Vertex> cayley_adjacency(std::size_t n, const std::vector<std::int64_t>& conn,
                                            const auto& add) {
  std::vector<Vertex> adj(n * conn.size());
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t k = 0; k < conn.size(); ++k)
      adj[v * conn.size() + k] = static_cast<Vertex>(add(static_cast<std::int64_t>(v), conn[k]));
  return adj;
}

}  // namespace detail

struct GraphBuildOptions {
  std::int64_t max_vertices = 4'000'000;
};

// Indices of the distinct residues +-zeta^i, i < m (full) or i < phi(m)
// (second kind), sorted.
inline std::vector<std::int64_t> cyclotomic_connection_set(const QuotientRing& q, GraphKind kind) {
  const auto& ctx = q.context();
  const int top = kind == GraphKind::second_kind ? ctx->phi() : ctx->m();
  std::set<std::int64_t> s;
  for (int i = 0; i < top; ++i) {
    const std::int64_t z = q.index_of(zeta_power(ctx, i));
    s.insert(z);
    s.insert(q.neg(z));
  }
  if (s.count(0)) throw UnitIdeal("a power of zeta lies in A, so A is the unit ideal");
  return {s.begin(), s.end()};
}

inline CayleyGraph build_cyclotomic_graph(std::shared_ptr<const QuotientRing> q, GraphKind kind,
                                          const GraphBuildOptions& opts = {}) {
  if (kind == GraphKind::circulant) throw InvalidParameter("use build_circulant for circulant graphs");
  if (q->order() > opts.max_vertices)
    throw ResourceLimit("graph order " + std::to_string(q->order()) + " exceeds the vertex bound");
  auto conn = cyclotomic_connection_set(*q, kind);
  const auto n = static_cast<std::size_t>(q->order());
  const QuotientRing& ring = *q;
  auto adj = detail::cayley_adjacency(n, conn, [&ring](std::int64_t a, std::int64_t b) { return ring.add(a, b); });
  CayleyGraph g(kind, std::move(q), std::move(conn), n, std::move(adj));
  if (!is_connected(g)) throw InternalInconsistency("cyclotomic graph is not connected");
  return g;
}

inline CayleyGraph build_cyclotomic_graph(const QuotientRing& q, GraphKind kind, const GraphBuildOptions& opts = {}) {
  return build_cyclotomic_graph(std::make_shared<const QuotientRing>(q), kind, opts);
}

// Cay(Z_n, S); S is normalised into [0, n) and deduplicated.
inline CayleyGraph build_circulant(std::int64_t n, const std::vector<std::int64_t>& s,
                                   const GraphBuildOptions& opts = {}) {
  if (n < 3) throw InvalidParameter("circulant order must be at least 3");
  if (n > opts.max_vertices) throw ResourceLimit("circulant order exceeds the vertex bound");
  if (s.empty()) throw InvalidParameter("connection set is empty");
  std::set<std::int64_t> set;
  for (auto x : s) set.insert(floor_mod(x, n));
  if (set.count(0)) throw InvalidParameter("connection set contains 0");
  for (auto x : set)
    if (!set.count(n - x)) throw InvalidParameter("connection set is not closed under negation");
  std::vector<std::int64_t> conn(set.begin(), set.end());
  auto adj = detail::cayley_adjacency(static_cast<std::size_t>(n), conn,
                                      [n](std::int64_t a, std::int64_t b) { return (a + b) % n; });
  return CayleyGraph(GraphKind::circulant, CirculantSource{n, conn}, conn, static_cast<std::size_t>(n),
                     std::move(adj));
}

// |{v : d(source, v) = t}| for t = 0..t_max.
inline std::vector<std::int64_t> shell_series(const CayleyGraph& g, std::int32_t t_max, Vertex source = 0) {
  const auto dist = bfs_distances(g, source);
  const std::int32_t diam = *std::max_element(dist.begin(), dist.end());
  if (t_max < 0 || t_max > diam) throw InvalidParameter("t_max must lie in [0, eccentricity]");
  std::vector<std::int64_t> shells(static_cast<std::size_t>(t_max) + 1);
  for (auto d : dist)
    if (d <= t_max) ++shells[static_cast<std::size_t>(d)];
  return shells;
}

struct IsoWitness {
  std::vector<Vertex> map;
  bool verified = false;
  std::size_t edge_checks = 0;
  std::string failure;  // empty when verified
};

// Certifies that `map` is a bijection V(g1) -> V(g2) carrying the neighbour
// set of every u exactly onto the neighbour set of map[u]. Equal degrees make
// this equivalent to preserving adjacency and non-adjacency.
inline IsoWitness verify_isomorphism(const CayleyGraph& g1, const CayleyGraph& g2, std::vector<Vertex> map) {
  if (g1.n_vertices() != g2.n_vertices() || map.size() != g1.n_vertices())
    throw InvalidParameter("isomorphism check needs equal vertex counts and a full map");
  IsoWitness w;
  w.map = std::move(map);
  const std::size_t n = g1.n_vertices();
  std::vector<char> hit(n, 0);
  for (Vertex u = 0; u < n; ++u) {
    const Vertex x = w.map[u];
    if (x >= n || hit[x]) {
      w.failure = "map is not a bijection at vertex " + std::to_string(u);
      return w;
    }
    hit[x] = 1;
  }
  if (g1.degree() != g2.degree()) {
    w.failure = "degrees differ";
    return w;
  }
  std::vector<Vertex> image, target;
  for (Vertex u = 0; u < n; ++u) {
    image.clear();
    for (Vertex v : g1.neighbors(u)) image.push_back(w.map[v]);
    auto nb = g2.neighbors(w.map[u]);
    target.assign(nb.begin(), nb.end());
    std::sort(image.begin(), image.end());
    std::sort(target.begin(), target.end());
    w.edge_checks += image.size();
    if (image != target) {
      w.failure = "adjacency not preserved at vertex " + std::to_string(u);
      return w;
    }
  }
  w.verified = true;
  return w;
}

}  // namespace cyclo
