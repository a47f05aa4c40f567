#pragma once

// Weights on Z[zeta_m]/A (Mannheim, rho-taxicab, EJ), balls, perfect t-code
// verification, exhaustive search over ideal codes D/A, and the two-sided
// reconciliations for Gaussian and Eisenstein-Jacobi networks.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cyclo/graph.hpp"

namespace cyclo {

// ---------------------------------------------------------------- weights

// Distance from 0 in G*_m(A) for every residue index.
inline std::vector<std::int32_t> mannheim_weights(const CayleyGraph& second_kind) {
  if (second_kind.kind() != GraphKind::second_kind) throw InvalidParameter("Mannheim weights need G*_m(A)");
  return bfs_distances(second_kind, 0);
}

inline std::int64_t mannheim_weight_bfs(const CayleyGraph& second_kind, std::int64_t index) {
  if (index < 0 || static_cast<std::size_t>(index) >= second_kind.n_vertices())
    throw InvalidParameter("residue index out of range");
  return mannheim_weights(second_kind)[static_cast<std::size_t>(index)];
}

inline std::int64_t mannheim_weight_bfs(const QuotientRing& q, const Residue& r) {
  return mannheim_weight_bfs(build_cyclotomic_graph(q, GraphKind::second_kind), r.index);
}

namespace detail {

// Calls f(v) for every v in Z^dim with sum |v_i| == w.
inline void for_each_l1_sphere(std::size_t dim, std::int64_t w, const std::function<void(const std::vector<std::int64_t>&)>& f) {
  std::vector<std::int64_t> v(dim, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i + 1 == dim) {
      v[i] = left;
      f(v);
      if (left != 0) {
        v[i] = -left;
        f(v);
      }
      v[i] = 0;
      return;
    }
    for (std::int64_t a = 0; a <= left; ++a) {
      v[i] = a;
      rec(i + 1, left - a);
      if (a != 0) {
        v[i] = -a;
        rec(i + 1, left - a);
      }
    }
    v[i] = 0;
  };
  if (dim == 0) return;
  rec(0, w);
}

}  // namespace detail

// Definitional route: min Manhattan weight over the coset rep + A,
// searched over all v with weight <= radius_hint by membership of rep - v
// in A (HNF test). Returns nullopt if no v within the radius lies in the
// coset.
inline std::optional<std::int64_t> mannheim_weight_oracle(const QuotientRing& q, const Residue& r,
                                                          std::int64_t radius_hint) {
  const IdealLattice& a = q.ideal();
  const std::size_t dim = q.ctx().dim();
  const IntVector& rep = r.canonical_rep.coeffs();
  for (std::int64_t w = 0; w <= radius_hint; ++w) {
    bool found = false;
    detail::for_each_l1_sphere(dim, w, [&](const std::vector<std::int64_t>& v) {
      if (found) return;
      IntVector diff(dim);
      for (std::size_t j = 0; j < dim; ++j) diff[j] = rep[j] - v[j];
      if (a.contains_coeffs(std::move(diff))) found = true;
    });
    if (found) return w;
  }
  return std::nullopt;
}

// The same definition for every residue at once: enumerate Z^phi by
// increasing weight and record the first weight at which each coset is
// hit. Entries never hit within max_radius stay kUnreachable.
inline std::vector<std::int32_t> mannheim_weight_oracle_sweep(const QuotientRing& q, std::int64_t max_radius) {
  std::vector<std::int32_t> best(static_cast<std::size_t>(q.order()), kUnreachable);
  std::int64_t remaining = q.order();
  for (std::int64_t w = 0; w <= max_radius && remaining > 0; ++w)
    detail::for_each_l1_sphere(q.ctx().dim(), w, [&](const std::vector<std::int64_t>& v) {
      auto& slot = best[static_cast<std::size_t>(q.index_of(std::span<const std::int64_t>(v)))];
      if (slot == kUnreachable) {
        slot = static_cast<std::int32_t>(w);
        --remaining;
      }
    });
  return best;
}

// min |x|+|y|+|z| over gamma = x + y rho + z rho^2 with gamma = c + d rho.
// Using rho^2 = rho - 1 the representations are (c+z) + (d-z) rho + z rho^2;
// the cost is convex piecewise-linear in z with breakpoints -c, d, 0.
inline Integer rho_taxicab(const Integer& c, const Integer& d) {
  Integer best = -1;
  for (const Integer& z : {Integer(0), Integer(-c), Integer(d)}) {
    const Integer cost = abs_value(c + z) + abs_value(d - z) + abs_value(z);
    if (best < 0 || cost < best) best = cost;
  }
  return best;
}

inline Integer rho_taxicab(const CycInt& gamma) {
  rho::require_m3(gamma.ctx());
  const auto [c, d] = rho::to_rho(gamma);
  return rho_taxicab(c, d);
}

// Direct scan over every z in [-(|c|+|d|), |c|+|d|].
inline Integer rho_taxicab_scan(const Integer& c, const Integer& d) {
  const Integer bound = abs_value(c) + abs_value(d);
  Integer best = -1;
  for (Integer z = -bound; z <= bound; ++z) {
    const Integer cost = abs_value(c + z) + abs_value(d - z) + abs_value(z);
    if (best < 0 || cost < best) best = cost;
  }
  return best;
}

inline void require_eisenstein(const CayleyGraph& g) {
  const QuotientRing* q = g.ring();
  if (!q || q->ctx().m() != 3 || g.kind() != GraphKind::full_cyclotomic)
    throw InvalidParameter("EJ weights need the full graph G_3(A)");
}

inline std::vector<std::int32_t> ej_weights(const CayleyGraph& full) {
  require_eisenstein(full);
  return bfs_distances(full, 0);
}

inline std::int64_t ej_weight_bfs(const CayleyGraph& full, std::int64_t index) {
  require_eisenstein(full);
  if (index < 0 || static_cast<std::size_t>(index) >= full.n_vertices())
    throw InvalidParameter("residue index out of range");
  return ej_weights(full)[static_cast<std::size_t>(index)];
}

// min rho-taxicab weight over the coset, by enumerating x + y rho + z rho^2
// with |x|+|y|+|z| <= radius for every residue at once.
inline std::vector<std::int32_t> ej_weight_oracle_sweep(const QuotientRing& q, std::int64_t radius) {
  rho::require_m3(q.ctx());
  std::vector<std::int32_t> best(static_cast<std::size_t>(q.order()), kUnreachable);
  for (std::int64_t w = 0; w <= radius; ++w)
    detail::for_each_l1_sphere(3, w, [&](const std::vector<std::int64_t>& v) {
      // x + y rho + z rho^2 = (x - z) + (y + z) rho; rho-coordinates (c, d)
      // are power-basis (c, -d).
      const std::int64_t coeffs[2] = {v[0] - v[2], -(v[1] + v[2])};
      auto& slot = best[static_cast<std::size_t>(q.index_of(std::span<const std::int64_t>(coeffs, 2)))];
      if (slot == kUnreachable) slot = static_cast<std::int32_t>(w);
    });
  return best;
}

// ------------------------------------------------------------------ codes

inline std::vector<Vertex> ball(const CayleyGraph& g, Vertex v, std::int32_t t) {
  if (t < 0) throw InvalidParameter("ball radius must be non-negative");
  const auto dist = bfs_distances(g, v);
  std::vector<Vertex> out;
  for (Vertex u = 0; u < dist.size(); ++u)
    if (dist[u] != kUnreachable && dist[u] <= t) out.push_back(u);
  return out;
}

struct CodeSet {
  std::vector<Vertex> members;  // sorted, unique
  std::int32_t t = 1;

  CodeSet(const CayleyGraph& g, std::vector<Vertex> m, std::int32_t radius) : members(std::move(m)), t(radius) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty()) throw InvalidParameter("code is empty");
    if (members.back() >= g.n_vertices()) throw InvalidParameter("code member out of range");
    if (t < 1) throw InvalidParameter("code radius must be at least 1");
  }
};

struct CodeWitness {
  enum class Kind { none, overlap, gap };
  Kind kind = Kind::none;
  Vertex vertex = 0;    // the doubly covered or uncovered vertex
  Vertex member_a = 0;  // overlap: the two members whose balls meet at `vertex`
  Vertex member_b = 0;
};

struct CodeVerdict {
  bool is_perfect = false;
  std::int64_t ball_size_at_zero = 0;             // |B_t(0)|
  std::optional<std::int64_t> min_nonzero_weight;  // min d(members[0], c), c another member
  CodeWitness witness;
};

// One multi-source BFS to depth t. Two balls meet iff some vertex u with
// d(C, u) < t has a neighbour already owned by a different member.
inline CodeVerdict is_perfect_t_code(const CayleyGraph& g, const CodeSet& c) {
  const std::size_t n = g.n_vertices();
  CodeVerdict v;
  v.ball_size_at_zero = static_cast<std::int64_t>(ball(g, 0, c.t).size());
  if (c.members.size() > 1) {
    const auto d0 = bfs_distances(g, c.members.front());
    std::int32_t best = std::numeric_limits<std::int32_t>::max();
    for (std::size_t k = 1; k < c.members.size(); ++k) best = std::min(best, d0[c.members[k]]);
    v.min_nonzero_weight = best;
  }

  constexpr Vertex kNone = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> owner(n, kNone);
  std::vector<std::int32_t> dist(n, kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(n);
  for (Vertex m : c.members) {
    owner[m] = m;
    dist[m] = 0;
    queue.push_back(m);
  }
  bool overlap = false;
  for (std::size_t head = 0; head < queue.size() && !overlap; ++head) {
    const Vertex u = queue[head];
    if (dist[u] >= c.t) continue;
    for (Vertex w : g.neighbors(u)) {
      if (owner[w] == kNone) {
        owner[w] = owner[u];
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      } else if (owner[w] != owner[u]) {
        v.witness = {CodeWitness::Kind::overlap, w, std::min(owner[u], owner[w]), std::max(owner[u], owner[w])};
        overlap = true;
        break;
      }
    }
  }
  if (overlap) return v;
  for (Vertex u = 0; u < n; ++u)
    if (owner[u] == kNone) {
      v.witness = {CodeWitness::Kind::gap, u, 0, 0};
      return v;
    }
  v.is_perfect = true;
  return v;
}

// Residue indices of D/A, as the additive closure of the images of D's
// basis in Z[zeta]/A.
inline std::vector<Vertex> ideal_code_members(const QuotientRing& q, const IdealLattice& d) {
  if (!q.ideal().is_subset_of(d)) throw InvalidParameter("D does not contain A");
  std::vector<std::int64_t> gens;
  for (const auto& b : d.basis()) {
    const std::int64_t idx = q.index_of(b);
    if (idx != 0) gens.push_back(idx);
  }
  std::vector<char> seen(static_cast<std::size_t>(q.order()), 0);
  std::vector<Vertex> out{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < out.size(); ++head)
    for (auto g : gens) {
      const auto s = static_cast<std::size_t>(q.add(out[head], g));
      if (!seen[s]) {
        seen[s] = 1;
        out.push_back(static_cast<Vertex>(s));
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

struct IdealCodeConditions {
  GraphKind kind = GraphKind::second_kind;
  std::int32_t t = 1;
  Integer norm_d;
  std::size_t code_size = 0;
  std::int64_t ball_size = 0;                // |B_t(0)| in the requested graph
  bool ball_condition = false;               // ball_size == N(D)
  std::optional<std::int64_t> min_weight;    // min Mannheim weight over nonzero D/A
  bool distance_condition = false;           // min_weight >= 2t+1 (vacuous if D = A)
  bool conditions_hold = false;
  bool is_perfect = false;
  // second kind: conditions <=> perfect; full: perfect => conditions.
  bool consistent = false;
  // full kind only: conditions hold but the balls do not partition.
  bool sufficiency_gap = false;
};

inline IdealCodeConditions verify_ideal_code_conditions(const QuotientRing& q, const CayleyGraph& graph,
                                                        const CayleyGraph& second_kind, const IdealLattice& d,
                                                        std::int32_t t) {
  if (second_kind.kind() != GraphKind::second_kind) throw InvalidParameter("need G*_m(A) for Mannheim weights");
  if (graph.kind() == GraphKind::circulant) throw InvalidParameter("ideal codes live on cyclotomic graphs");
  IdealCodeConditions r;
  r.kind = graph.kind();
  r.t = t;
  r.norm_d = d.norm();
  const auto members = ideal_code_members(q, d);
  r.code_size = members.size();
  r.ball_size = static_cast<std::int64_t>(ball(graph, 0, t).size());
  r.ball_condition = Integer(r.ball_size) == d.norm();
  const auto weights = mannheim_weights(second_kind);
  for (Vertex v : members)
    if (v != 0 && (!r.min_weight || weights[v] < *r.min_weight)) r.min_weight = weights[v];
  r.distance_condition = !r.min_weight || *r.min_weight >= 2 * static_cast<std::int64_t>(t) + 1;
  r.conditions_hold = r.ball_condition && r.distance_condition;
  r.is_perfect = is_perfect_t_code(graph, CodeSet(graph, members, t)).is_perfect;
  if (r.kind == GraphKind::second_kind) {
    r.consistent = r.conditions_hold == r.is_perfect;
  } else {
    r.consistent = !r.is_perfect || r.conditions_hold;
    r.sufficiency_gap = r.conditions_hold && !r.is_perfect;
  }
  return r;
}

struct IdealCodeCandidate {
  IdealLattice ideal;
  std::vector<Vertex> members;
  CodeVerdict verdict;
};

// Every D with A in D (as produced by intermediate_ideals), tested by the
// partition check on g. Sorted by HNF key.
inline std::vector<IdealCodeCandidate> evaluate_ideal_codes(const QuotientRing& q, const CayleyGraph& g, std::int32_t t,
                                                            const IntermediateIdealOptions& opts = {}) {
  if (t < 1) throw InvalidParameter("code radius must be at least 1");
  auto ideals = intermediate_ideals(q, opts).ideals;
  std::sort(ideals.begin(), ideals.end(), [](const IdealLattice& a, const IdealLattice& b) { return a.key() < b.key(); });
  std::vector<IdealCodeCandidate> out;
  for (auto& d : ideals) {
    auto members = ideal_code_members(q, d);
    auto verdict = is_perfect_t_code(g, CodeSet(g, members, t));
    out.push_back({std::move(d), std::move(members), std::move(verdict)});
  }
  return out;
}

inline std::vector<IdealCodeCandidate> search_perfect_ideal_codes(const QuotientRing& q, const CayleyGraph& g,
                                                                  std::int32_t t,
                                                                  const IntermediateIdealOptions& opts = {}) {
  auto all = evaluate_ideal_codes(q, g, t, opts);
  std::erase_if(all, [](const IdealCodeCandidate& c) { return !c.verdict.is_perfect; });
  return all;
}

// ------------------------------------------------- theorem reconciliations

// a + b*omega with a, b >= 0 (omega = i or rho), together with the unit used.
struct NormalizedAlpha {
  CycInt alpha;  // the normalized element
  Integer a, b;
  CycInt unit;
};

// Units of Z[i] / Z[rho] in the matching coordinates; the first one that
// brings alpha into the closed first sector wins.
inline NormalizedAlpha normalize_alpha(const CycInt& alpha) {
  const auto& ctx = alpha.context();
  const int m = ctx->m();
  if (m != 3 && m != 4) throw InvalidParameter("normalization is defined for m = 3 and m = 4");
  if (alpha.is_zero()) throw ZeroIdeal("alpha is zero");
  for (const auto& u : torsion_units(ctx)) {
    const CycInt x = u * alpha;
    Integer a, b;
    if (m == 4) {
      a = x[0];
      b = x[1];
    } else {
      std::tie(a, b) = rho::to_rho(x);
    }
    if (a >= 0 && b >= 0) return {x, a, b, u};
  }
  throw InternalInconsistency("no unit brings alpha into the first sector");
}

struct TheoremRow {
  IdealLattice ideal;
  bool predicted = false;
  bool observed = false;
  std::string associate_class;  // which predicted generator D equals, if any
};

struct TheoremReport {
  int m = 0;
  CycInt alpha;  // normalized
  Integer a, b;
  std::int32_t t = 0;
  std::vector<TheoremRow> rows;  // all intermediate ideals, by HNF key
  std::vector<std::string> predicted;  // HNF keys
  std::vector<std::string> observed;
  bool agreement = false;
  bool identities_hold = true;  // EJ unit identities used in the case analysis
};

// The two generators of the predicted associate classes, in the ring of alpha.
inline std::vector<std::pair<std::string, CycInt>> predicted_generators(const ContextPtr& ctx, std::int32_t t) {
  const Integer s(t), s1(t + 1);
  if (ctx->m() == 4)
    return {{"t+(t+1)i", CycInt(ctx, IntVector{s, s1})}, {"t-(t+1)i", CycInt(ctx, IntVector{s, -s1})}};
  if (ctx->m() == 3)
    return {{"(t+1)+t*rho", rho::from_rho(ctx, s1, s)}, {"t+(t+1)*rho", rho::from_rho(ctx, s, s1)}};
  throw InvalidParameter("associate classes are defined for m = 3 and m = 4");
}

// Associate-class label of D for radius t, or "" if D is in neither class.
inline std::string associate_class(const IdealLattice& d, std::int32_t t) {
  for (const auto& [label, gen] : predicted_generators(d.context(), t))
    if (principal_ideal(gen) == d) return label;
  return "";
}

inline TheoremReport reconcile_theorem(const CycInt& alpha_in, std::int32_t t, const IntermediateIdealOptions& opts = {}) {
  const auto& ctx = alpha_in.context();
  const NormalizedAlpha na = normalize_alpha(alpha_in);
  const Integer upper = (na.a + na.b - 1) / 2;
  if (t < 1 || Integer(t) > upper)
    throw RangeError("t = " + std::to_string(t) + " outside [1, " + upper.str() + "]");

  TheoremReport r{.m = ctx->m(), .alpha = na.alpha, .a = na.a, .b = na.b, .t = t, .rows = {}, .predicted = {}, .observed = {}, .agreement = false, .identities_hold = true};
  auto q = std::make_shared<const QuotientRing>(principal_ideal(na.alpha));
  const CayleyGraph g = build_cyclotomic_graph(q, GraphKind::full_cyclotomic);
  for (auto& c : evaluate_ideal_codes(*q, g, t, opts)) {
    TheoremRow row{c.ideal, false, c.verdict.is_perfect, associate_class(c.ideal, t)};
    row.predicted = !row.associate_class.empty();
    if (row.predicted) r.predicted.push_back(row.ideal.key());
    if (row.observed) r.observed.push_back(row.ideal.key());
    r.rows.push_back(std::move(row));
  }
  r.agreement = r.predicted == r.observed;

  if (r.m == 3) {
    // rho^5 = 1 - rho maps the two classes onto (2t+1) - (t+1) rho and
    // (2t+1) - t rho.
    const CycInt rho1 = rho::from_rho(ctx, 0, 1);
    CycInt rho5 = CycInt::one(ctx);
    for (int k = 0; k < 5; ++k) rho5 = rho5 * rho1;
    const Integer s(t);
    r.identities_hold = rho::from_rho(ctx, 2 * s + 1, -(s + 1)) == rho5 * rho::from_rho(ctx, s + 1, s) &&
                        rho::from_rho(ctx, 2 * s + 1, -s) == rho5 * rho::from_rho(ctx, s, s + 1);
  }
  return r;
}

inline TheoremReport gaussian_theorem_check(const CycInt& alpha, std::int32_t t, const IntermediateIdealOptions& opts = {}) {
  if (alpha.ctx().m() != 4) throw InvalidParameter("Gaussian check needs m = 4");
  if (field_norm(alpha) < 5) throw InvalidParameter("Gaussian check needs N(alpha) >= 5");
  return reconcile_theorem(alpha, t, opts);
}

inline TheoremReport ej_theorem_check(const CycInt& alpha, std::int32_t t, const IntermediateIdealOptions& opts = {}) {
  if (alpha.ctx().m() != 3) throw InvalidParameter("EJ check needs m = 3");
  if (field_norm(alpha) < 7) throw InvalidParameter("EJ check needs N(alpha) >= 7");
  return reconcile_theorem(alpha, t, opts);
}

}  // namespace cyclo
