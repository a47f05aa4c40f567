#pragma once

// 2p-valent first-kind Frobenius circulants: the arithmetic classifier, a
// definitional brute-force test, and the bridge Cay(Z_n, <-a>) ~ G_m(A_{m,n,a}).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "cyclo/graph.hpp"

namespace cyclo {

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % n);
}

inline std::int64_t pow_mod(std::int64_t a, std::int64_t e, std::int64_t n) {
  std::int64_t r = 1 % n;
  a = floor_mod(a, n);
  for (; e > 0; e >>= 1) {
    if (e & 1) r = mul_mod(r, a, n);
    a = mul_mod(a, a, n);
  }
  return r;
}

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// True iff gcd(h - 1, n) = 1 for every h in <a> other than 1.
inline bool is_semiregular(std::int64_t n, std::int64_t a) {
  if (n < 2) throw InvalidParameter("modulus must be at least 2");
  a = floor_mod(a, n);
  if (std::gcd(a, n) != 1) throw InvalidParameter("a is not a unit modulo n");
  for (std::int64_t h = a; h != 1 % n; h = mul_mod(h, a, n))
    if (std::gcd(floor_mod(h - 1, n), n) != 1) return false;
  return true;
}

struct FrobeniusChecks {
  bool n_congruent = false;    // n = 1 mod 2p
  bool power_condition = false;  // a^p + 1 = 0 mod n
  bool gcd_conditions = false;   // gcd(a^i +- 1, n) = 1 for 1 <= i <= p-1
  bool all() const { return n_congruent && power_condition && gcd_conditions; }
};

struct FrobeniusCandidate {
  std::int64_t n = 0;
  std::int64_t p = 0;
  std::int64_t a = 0;
  std::vector<std::int64_t> connection_set;  // {+-a^i}, sorted
  FrobeniusChecks checks;
  std::int64_t class_rep = 0;  // smallest generator a giving the same set
};

inline void require_odd_prime(std::int64_t p) {
  if (p < 3 || !is_prime(p)) throw InvalidParameter("p must be an odd prime");
}

inline FrobeniusChecks frobenius_checks(std::int64_t n, std::int64_t p, std::int64_t a) {
  FrobeniusChecks c;
  c.n_congruent = n % (2 * p) == 1;
  c.power_condition = (pow_mod(a, p, n) + 1) % n == 0;
  c.gcd_conditions = true;
  std::int64_t ai = 1;
  for (std::int64_t i = 1; i < p; ++i) {
    ai = mul_mod(ai, floor_mod(a, n), n);
    if (std::gcd(ai + 1, n) != 1 || std::gcd(floor_mod(ai - 1, n), n) != 1) c.gcd_conditions = false;
  }
  return c;
}

inline std::vector<std::int64_t> signed_power_set(std::int64_t n, std::int64_t p, std::int64_t a) {
  std::set<std::int64_t> s;
  std::int64_t ai = 1;
  for (std::int64_t i = 0; i < p; ++i) {
    s.insert(ai);
    s.insert(floor_mod(-ai, n));
    ai = mul_mod(ai, a, n);
  }
  return {s.begin(), s.end()};
}

// All a in [2, n-2] meeting the arithmetic conditions, in increasing a.
inline std::vector<FrobeniusCandidate> classify_2p(std::int64_t n, std::int64_t p) {
  require_odd_prime(p);
  if (n < 3) throw InvalidParameter("modulus must be at least 3");
  std::vector<FrobeniusCandidate> out;
  if (n % (2 * p) != 1) return out;
  std::map<std::vector<std::int64_t>, std::int64_t> first;
  for (std::int64_t a = 2; a <= n - 2; ++a) {
    const FrobeniusChecks c = frobenius_checks(n, p, a);
    if (!c.all()) continue;
    auto s = signed_power_set(n, p, a);
    const std::int64_t rep = first.try_emplace(s, a).first->second;
    out.push_back({n, p, a, std::move(s), c, rep});
  }
  return out;
}

// Definitional test on Z_n: S is a subgroup H of Z_n^* of even order, every
// h != 1 in H fixes no nonzero residue, and S generates Z_n additively.
inline bool brute_force_frobenius(std::int64_t n, const std::vector<std::int64_t>& s_in) {
  if (n < 3 || s_in.empty()) return false;
  std::set<std::int64_t> h;
  for (auto x : s_in) h.insert(floor_mod(x, n));
  if (h.count(0) || !h.count(1) || h.size() % 2 != 0) return false;
  for (auto x : h)
    if (std::gcd(x, n) != 1 || !h.count(n - x)) return false;
  for (auto x : h)
    for (auto y : h)
      if (!h.count(mul_mod(x, y, n))) return false;
  for (auto x : h) {
    if (x == 1) continue;
    for (std::int64_t v = 1; v < n; ++v)
      if (mul_mod(x, v, n) == v) return false;
  }
  std::int64_t g = n;
  for (auto x : h) g = std::gcd(g, x);
  return g == 1;
}

// Every subgroup of Z_n^* of order 2p (necessarily cyclic), sorted.
inline std::vector<std::vector<std::int64_t>> subgroups_of_order(std::int64_t n, std::int64_t order) {
  std::set<std::vector<std::int64_t>> found;
  for (std::int64_t g = 1; g < n; ++g) {
    if (std::gcd(g, n) != 1) continue;
    std::vector<std::int64_t> elems{1};
    for (std::int64_t x = g; x != 1 && static_cast<std::int64_t>(elems.size()) <= order; x = mul_mod(x, g, n))
      elems.push_back(x);
    if (static_cast<std::int64_t>(elems.size()) != order) continue;
    std::sort(elems.begin(), elems.end());
    found.insert(std::move(elems));
  }
  return {found.begin(), found.end()};
}

// The connection sets each side accepts for one n.
struct ClassifierComparison {
  std::int64_t n = 0;
  std::set<std::vector<std::int64_t>> classifier;
  std::set<std::vector<std::int64_t>> brute_force;
  bool agree() const { return classifier == brute_force; }
};

inline ClassifierComparison compare_classifier(std::int64_t n, std::int64_t p) {
  ClassifierComparison c;
  c.n = n;
  for (const auto& cand : classify_2p(n, p)) c.classifier.insert(cand.connection_set);
  for (auto& h : subgroups_of_order(n, 2 * p))
    if (brute_force_frobenius(n, h)) c.brute_force.insert(std::move(h));
  return c;
}

// Lattice {x : sum x_i a^i = 0 mod n} after checking that a satisfies the
// reduction identities of zeta_m modulo n and has order exactly m with no
// a^i = +-1 for 0 < i < m.
inline IdealLattice build_A_mna(int m, std::int64_t n, std::int64_t a) {
  if (m < 3 || m % 2 == 0) throw HypothesisViolation("m must be odd and at least 3");
  if (n < 3 || n % 2 == 0) throw HypothesisViolation("n must be odd and at least 3");
  a = floor_mod(a, n);
  const ContextPtr ctx = make_context(m);
  const int phi = ctx->phi();
  std::vector<std::int64_t> pw(static_cast<std::size_t>(m) + 1);
  pw[0] = 1 % n;
  for (int i = 1; i <= m; ++i) pw[static_cast<std::size_t>(i)] = mul_mod(pw[static_cast<std::size_t>(i) - 1], a, n);
  if (pw[static_cast<std::size_t>(m)] != 1) throw HypothesisViolation("a^m is not 1 mod n");
  for (int i = 1; i < m; ++i) {
    const std::int64_t x = pw[static_cast<std::size_t>(i)];
    if (x == 1 || x == n - 1) throw HypothesisViolation("a^" + std::to_string(i) + " is +-1 mod n");
  }
  for (int i = phi; i < m; ++i) {
    const IntVector& row = ctx->zeta_row(i);
    Integer s = 0;
    for (int j = 0; j < phi; ++j) s += row[static_cast<std::size_t>(j)] * pw[static_cast<std::size_t>(j)];
    if (floor_mod(s, Integer(n)) != pw[static_cast<std::size_t>(i)])
      throw HypothesisViolation("reduction identity for zeta^" + std::to_string(i) + " fails mod n");
  }
  std::vector<IntVector> cols;
  IntVector c0(static_cast<std::size_t>(phi));
  c0[0] = n;
  cols.push_back(c0);
  for (int i = 1; i < phi; ++i) {
    IntVector c(static_cast<std::size_t>(phi));
    c[static_cast<std::size_t>(i)] = 1;
    c[0] = -pw[static_cast<std::size_t>(i)];
    cols.push_back(std::move(c));
  }
  IdealLattice ideal = IdealLattice::from_lattice_columns(ctx, cols);
  if (ideal.norm() != n) throw InternalInconsistency("A_{m,n,a} does not have norm n");
  return ideal;
}

struct BridgeResult {
  int m = 0;
  std::int64_t n = 0;
  std::int64_t a = 0;  // the multiplier used in A_{m,n,a}
  std::shared_ptr<const QuotientRing> ring;
  std::shared_ptr<const CayleyGraph> cyclotomic;  // G_m(A_{m,n,a})
  std::shared_ptr<const CayleyGraph> circulant;   // Cay(Z_n, <-a>)
  std::vector<Vertex> vertex_map;                 // residue index -> Z_n
  IsoWitness iso;
  const IdealLattice& ideal() const { return ring->ideal(); }
};

// f(sum a_i zeta^i) = sum a_i a^i mod n, applied to each canonical rep.
inline std::vector<Vertex> bridge_vertex_map(const QuotientRing& q, std::int64_t n, std::int64_t a) {
  const std::size_t dim = q.ctx().dim();
  std::vector<std::int64_t> pw(dim);
  pw[0] = 1 % n;
  for (std::size_t j = 1; j < dim; ++j) pw[j] = mul_mod(pw[j - 1], floor_mod(a, n), n);
  std::vector<Vertex> map(static_cast<std::size_t>(q.order()));
  for (std::int64_t r = 0; r < q.order(); ++r) {
    const CycInt rep = q.canonical_rep(r);
    Integer s = 0;
    for (std::size_t j = 0; j < dim; ++j) s += rep[j] * pw[j];
    map[static_cast<std::size_t>(r)] = static_cast<Vertex>(to_int64(floor_mod(s, Integer(n))));
  }
  return map;
}

inline BridgeResult circulant_to_cyclotomic(int m, std::int64_t n, std::int64_t a, const GraphBuildOptions& opts = {}) {
  a = floor_mod(a, n);
  BridgeResult b;
  b.m = m;
  b.n = n;
  b.a = a;
  b.ring = std::make_shared<const QuotientRing>(build_A_mna(m, n, a));
  b.cyclotomic = std::make_shared<const CayleyGraph>(build_cyclotomic_graph(b.ring, GraphKind::full_cyclotomic, opts));
  std::vector<std::int64_t> s;
  for (std::int64_t i = 0, x = 1; i < 2 * m; ++i, x = mul_mod(x, n - a, n)) s.push_back(x);
  b.circulant = std::make_shared<const CayleyGraph>(build_circulant(n, s, opts));
  if (b.cyclotomic->degree() != 2 * static_cast<std::size_t>(m))
    throw InternalInconsistency("G_m(A_{m,n,a}) does not have valency 2m");
  b.vertex_map = bridge_vertex_map(*b.ring, n, a);
  b.iso = verify_isomorphism(*b.cyclotomic, *b.circulant, b.vertex_map);
  if (!b.iso.verified) throw InternalInconsistency("bridge is not an isomorphism: " + b.iso.failure);
  return b;
}

inline BridgeResult frobenius_to_cyclotomic(std::int64_t p, std::int64_t n, std::int64_t a,
                                            const GraphBuildOptions& opts = {}) {
  require_odd_prime(p);
  if (!frobenius_checks(n, p, a).all()) throw HypothesisViolation("(p, n, a) fails the classifier conditions");
  return circulant_to_cyclotomic(static_cast<int>(p), n, floor_mod(-a, n), opts);
}

}  // namespace cyclo
