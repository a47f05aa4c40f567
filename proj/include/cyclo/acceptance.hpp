#pragma once

// The end-to-end acceptance battery, shared by the `accept` subcommand and
// the acceptance test binary.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cyclo/codes.hpp"
#include "cyclo/frobenius.hpp"
#include "cyclo/graph_checks.hpp"

namespace cyclo {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  double limit_seconds = 0;  // 0: no time limit
  std::string detail;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240607;
  // Corrupts one circulant before the bridge check; criterion 7 must fail.
  bool inject_fault = false;
};

// Random proper ideals with N(A) <= max_norm: a random small element,
// optionally together with a rational integer to keep the norm down.
inline std::vector<IdealLattice> random_ideal_suite(int m, std::size_t count, std::int64_t max_norm, std::mt19937_64& rng) {
  const ContextPtr ctx = make_context(m);
  std::uniform_int_distribution<int> coeff(-3, 3), scalar(2, 12), coin(0, 1);
  std::vector<IdealLattice> out;
  std::vector<std::string> keys;
  for (int attempt = 0; out.size() < count && attempt < 100000; ++attempt) {
    IntVector v(ctx->dim());
    for (auto& x : v) x = coeff(rng);
    std::vector<CycInt> gens{CycInt(ctx, v)};
    if (gens.front().is_zero()) continue;
    if (coin(rng)) gens.push_back(CycInt(ctx, IntVector{scalar(rng)}));
    IdealLattice a = ideal_from_generators(gens);
    if (a.is_unit() || a.norm() > max_norm) continue;
    if (std::find(keys.begin(), keys.end(), a.key()) != keys.end()) continue;
    keys.push_back(a.key());
    out.push_back(std::move(a));
  }
  if (out.size() < count) throw InternalInconsistency("could not draw enough random ideals");
  return out;
}

inline std::vector<IdealLattice> lemma_suite(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<IdealLattice> suite;
  for (int m : {3, 4, 5, 8})
    for (auto& a : random_ideal_suite(m, 10, 2000, rng)) suite.push_back(std::move(a));
  return suite;
}

// Expected Z_91 image of the unique 1-code of G_3(1 + 9 rho).
inline std::vector<std::int64_t> example_code_image() {
  std::vector<std::int64_t> v;
  for (std::int64_t x = 0; x < 91; x += 7) v.push_back(x);
  return v;
}

namespace detail {

inline CriterionResult timed(int id, std::string name, double limit, const std::function<bool(std::ostringstream&)>& body) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.limit_seconds = limit;
  std::ostringstream detail;
  const auto start = std::chrono::steady_clock::now();
  try {
    r.pass = body(detail);
  } catch (const std::exception& e) {
    r.pass = false;
    detail << "exception: " << e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit > 0 && r.seconds >= limit) {
    r.pass = false;
    detail << " time " << r.seconds << "s over limit " << limit << "s";
  }
  r.detail = detail.str();
  return r;
}

}  // namespace detail

inline CriterionResult criterion_example_code() {
  return detail::timed(1, "example 1+9rho: unique perfect 1-code and its Z_91 image", 1.0, [](std::ostringstream& out) {
    const ContextPtr ctx = make_context(3);
    auto q = std::make_shared<const QuotientRing>(principal_ideal(rho::from_rho(ctx, 1, 9)));
    const CayleyGraph g = build_cyclotomic_graph(q, GraphKind::full_cyclotomic);
    const auto codes = search_perfect_ideal_codes(*q, g, 1);
    out << "codes=" << codes.size();
    if (codes.size() != 1) return false;
    const auto& c = codes.front();
    out << " norm=" << c.ideal.norm() << " members=" << c.members.size();
    if (c.ideal.norm() != 7 || c.members.size() != 13) return false;
    const BridgeResult b = frobenius_to_cyclotomic(3, 91, 10);
    if (!(b.ideal() == q->ideal())) {
      out << " bridge ideal differs";
      return false;
    }
    std::vector<std::int64_t> image;
    for (Vertex v : c.members) image.push_back(b.vertex_map[static_cast<std::size_t>(b.ring->index_of(q->canonical_rep(v)))]);
    std::sort(image.begin(), image.end());
    const bool match = image == example_code_image();
    out << " image " << (match ? "matches" : "differs");
    return match;
  });
}

inline CriterionResult criterion_mannheim_sweep(const std::vector<IdealLattice>& suite) {
  return detail::timed(2, "BFS distance in G* equals lattice Mannheim oracle", 60.0, [&](std::ostringstream& out) {
    std::int64_t vertices = 0, mismatches = 0;
    for (const auto& a : suite) {
      auto q = std::make_shared<const QuotientRing>(a);
      const CayleyGraph g = build_cyclotomic_graph(q, GraphKind::second_kind);
      const auto bfs = mannheim_weights(g);
      const auto oracle = mannheim_weight_oracle_sweep(*q, *std::max_element(bfs.begin(), bfs.end()));
      for (std::size_t v = 0; v < bfs.size(); ++v)
        if (bfs[v] != oracle[v]) ++mismatches;
      vertices += static_cast<std::int64_t>(bfs.size());
    }
    out << "ideals=" << suite.size() << " vertices=" << vertices << " mismatches=" << mismatches;
    return mismatches == 0 && suite.size() >= 40;
  });
}

inline CriterionResult criterion_shells(std::uint64_t seed) {
  return detail::timed(3, "shell sizes 4t (Gaussian) and 6t (EJ)", 30.0, [seed](std::ostringstream& out) {
    std::mt19937_64 rng(seed ^ 0x5348454cULL);
    std::uniform_int_distribution<int> coord(0, 70);
    int failures = 0;
    for (int m : {4, 3}) {
      const ContextPtr ctx = make_context(m);
      const std::int64_t per_t = m == 4 ? 4 : 6;
      int done = 0;
      while (done < 10) {
        const int a = coord(rng), b = coord(rng);
        const CycInt alpha = m == 4 ? CycInt(ctx, IntVector{a, b}) : rho::from_rho(ctx, a, b);
        if (a + b < 3 || alpha.is_zero() || field_norm(alpha) > 5000) continue;
        const std::int32_t t_max = (a + b - 1) / 2;
        const CayleyGraph g = build_cyclotomic_graph(quotient_ring(principal_ideal(alpha)), GraphKind::full_cyclotomic);
        const auto shells = shell_series(g, t_max);
        for (std::int32_t t = 1; t <= t_max; ++t)
          if (shells[static_cast<std::size_t>(t)] != per_t * t) {
            ++failures;
            out << " m=" << m << " alpha=(" << a << "," << b << ") t=" << t;
            break;
          }
        ++done;
      }
    }
    out << " failures=" << failures;
    return failures == 0;
  });
}

namespace detail {

// alpha = base * gamma for random small gamma, with t in range after
// normalization and N(alpha) <= max_norm.
inline std::vector<CycInt> multiples_in_range(const CycInt& base, std::int32_t t, std::size_t count, std::int64_t max_norm,
                                              std::mt19937_64& rng) {
  const ContextPtr& ctx = base.context();
  std::uniform_int_distribution<int> coord(-6, 6);
  std::vector<CycInt> out;
  std::vector<std::string> seen;
  for (int attempt = 0; out.size() < count && attempt < 100000; ++attempt) {
    const CycInt gamma(ctx, IntVector{coord(rng), coord(rng)});
    if (gamma.is_zero()) continue;
    const CycInt alpha = base * gamma;
    if (field_norm(alpha) > max_norm) continue;
    const NormalizedAlpha na = normalize_alpha(alpha);
    if (na.a + na.b - 1 < 2 * t) continue;
    const std::string key = principal_ideal(alpha).key();
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);
    out.push_back(alpha);
  }
  return out;
}

inline bool reconcile_all(const std::vector<CycInt>& alphas, std::int32_t t, std::ostringstream& out) {
  bool ok = true;
  for (const auto& alpha : alphas) {
    const TheoremReport r = reconcile_theorem(alpha, t);
    const bool good = r.agreement && r.identities_hold && !r.predicted.empty();
    if (!good) out << " discrepancy alpha=" << r.alpha.str() << " t=" << t;
    ok = ok && good;
  }
  return ok;
}

}  // namespace detail

inline CriterionResult criterion_gaussian_theorem(std::uint64_t seed) {
  return detail::timed(4, "Gaussian perfect codes equal the associate prediction", 0, [seed](std::ostringstream& out) {
    std::mt19937_64 rng(seed ^ 0x4741555353ULL);
    const ContextPtr ctx = make_context(4);
    std::vector<CycInt> t1, t2;
    for (const auto& base : {CycInt(ctx, {1, 2}), CycInt(ctx, {1, -2})})
      for (auto& a : detail::multiples_in_range(base, 1, 3, 3000, rng)) t1.push_back(a);
    for (const auto& base : {CycInt(ctx, {2, 3}), CycInt(ctx, {2, -3})})
      for (auto& a : detail::multiples_in_range(base, 2, 2, 3000, rng)) t2.push_back(a);
    out << "t1=" << t1.size() << " t2=" << t2.size();
    const bool ok1 = detail::reconcile_all(t1, 1, out);
    const bool ok2 = detail::reconcile_all(t2, 2, out);
    return ok1 && ok2 && t1.size() >= 5 && t2.size() >= 3;
  });
}

inline CriterionResult criterion_ej_theorem(std::uint64_t seed) {
  return detail::timed(5, "EJ perfect codes equal the associate prediction (incl. gcd > 1)", 0, [seed](std::ostringstream& out) {
    std::mt19937_64 rng(seed ^ 0x454aULL);
    const ContextPtr ctx = make_context(3);
    std::vector<CycInt> t1, t2;
    for (const auto& base : {rho::from_rho(ctx, 2, 1), rho::from_rho(ctx, 1, 2)})
      for (auto& a : detail::multiples_in_range(base, 1, 3, 3000, rng)) t1.push_back(a);
    // (2 + rho) * 2 = 4 + 2 rho has rho-coordinates with gcd 2.
    const CycInt non_primitive = rho::from_rho(ctx, 4, 2);
    t1.push_back(non_primitive);
    for (const auto& base : {rho::from_rho(ctx, 3, 2), rho::from_rho(ctx, 2, 3)})
      for (auto& a : detail::multiples_in_range(base, 2, 2, 3000, rng)) t2.push_back(a);
    out << "t1=" << t1.size() << " t2=" << t2.size();
    const bool ok1 = detail::reconcile_all(t1, 1, out);
    const bool ok2 = detail::reconcile_all(t2, 2, out);
    return ok1 && ok2 && t1.size() >= 5 && t2.size() >= 3;
  });
}

inline CriterionResult criterion_classifier() {
  return detail::timed(6, "2p-valent classifier equals brute-force Frobenius test", 120.0, [](std::ostringstream& out) {
    std::int64_t disagreements = 0, accepted = 0;
    for (std::int64_t p : {3, 5}) {
      const std::int64_t n_max = p == 3 ? 500 : 350;
      for (std::int64_t n = 3; n <= n_max; ++n) {
        const auto c = compare_classifier(n, p);
        accepted += static_cast<std::int64_t>(c.classifier.size());
        if (!c.agree()) {
          ++disagreements;
          out << " p=" << p << " n=" << n;
        }
      }
    }
    auto listed = [](std::int64_t n, std::int64_t p, std::int64_t a) {
      for (const auto& c : classify_2p(n, p))
        if (c.a == a) return true;
      return false;
    };
    const bool examples = listed(91, 3, 10) && listed(7, 3, 3);
    out << " accepted_sets=" << accepted << " disagreements=" << disagreements << " examples=" << examples;
    return disagreements == 0 && examples;
  });
}

inline CriterionResult criterion_bridges(bool inject_fault) {
  return detail::timed(7, "every classified circulant with n <= 200 bridges to G_p(A)", 0, [inject_fault](std::ostringstream& out) {
    std::int64_t total = 0, verified = 0;
    bool first = true;
    for (std::int64_t p : {3, 5})
      for (std::int64_t n = 3; n <= 200; ++n)
        for (const auto& c : classify_2p(n, p)) {
          ++total;
          try {
            const BridgeResult b = frobenius_to_cyclotomic(p, n, c.a);
            bool ok = b.iso.verified && b.cyclotomic->degree() == 2 * static_cast<std::size_t>(p);
            if (inject_fault && first) {
              auto adj = b.circulant->adjacency();
              std::swap(adj[0], adj[adj.size() - 1]);
              const CayleyGraph broken(b.circulant->kind(), b.circulant->source(), b.circulant->connection_set(),
                                       b.circulant->n_vertices(), std::move(adj));
              ok = ok && verify_isomorphism(*b.cyclotomic, broken, b.vertex_map).verified;
            }
            first = false;
            if (ok) ++verified;
            else out << " failed p=" << p << " n=" << n << " a=" << c.a;
          } catch (const Error& e) {
            out << " error p=" << p << " n=" << n << " a=" << c.a << ": " << e.what();
          }
        }
    out << " verified=" << verified << "/" << total;
    return total > 0 && verified == total;
  });
}

inline CriterionResult criterion_structure(const std::vector<IdealLattice>& suite) {
  return detail::timed(8, "valency, complete rotation and arc-regularity over the ideal suite", 0, [&](std::ostringstream& out) {
    int failures = 0, arc_checked = 0, literal_a = 0, corrected_a_fail = 0;
    for (const auto& a : suite) {
      auto q = std::make_shared<const QuotientRing>(a);
      const CayleyGraph g = build_cyclotomic_graph(q, GraphKind::full_cyclotomic);
      const ValencyReport v = verify_valency_theorem(*q, g);
      const RotationReport rot = check_complete_rotation(*q, g);
      if (v.literal_a_counterexample) ++literal_a;
      if (!v.corrected_a_holds) ++corrected_a_fail;
      bool ok = !v.mismatch && rot.is_complete_rotation();
      if (static_cast<std::int64_t>(g.n_vertices() * g.degree()) <= 100000) {
        const ArcRegularReport ar = check_arc_regular(*q, g);
        ok = ok && ar.arc_regular() && ar.stabilizer_of_zero == g.degree();
        ++arc_checked;
      }
      if (!ok) {
        ++failures;
        out << " fail m=" << a.ctx().m() << " hnf=" << a.hnf().key() << " val=" << g.degree()
            << (v.mismatch ? " (" + v.detail + ")" : "") << (v.two_in_ideal ? " [2 in A]" : "") << ";";
      }
    }
    out << " ideals=" << suite.size() << " arc_checked=" << arc_checked << " failures=" << failures
        << " literal_clause_a_counterexamples=" << literal_a << " corrected_clause_a_failures=" << corrected_a_fail;
    return failures == 0 && !suite.empty();
  });
}

inline std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {}) {
  std::vector<CriterionResult> out;
  out.push_back(criterion_example_code());
  std::vector<IdealLattice> suite;
  try {
    suite = lemma_suite(opts.seed);
  } catch (const Error&) {
  }
  out.push_back(criterion_mannheim_sweep(suite));
  out.push_back(criterion_shells(opts.seed));
  out.push_back(criterion_gaussian_theorem(opts.seed));
  out.push_back(criterion_ej_theorem(opts.seed));
  out.push_back(criterion_classifier());
  out.push_back(criterion_bridges(opts.inject_fault));
  out.push_back(criterion_structure(suite));
  return out;
}

inline std::string format_criterion(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name << " [" << std::fixed;
  s.precision(3);
  s << r.seconds << "s";
  if (r.limit_seconds > 0) s << " < " << r.limit_seconds << "s";
  s << "] " << r.detail;
  return s.str();
}

}  // namespace cyclo
