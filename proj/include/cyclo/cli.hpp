#pragma once

// Command-line front end. run() is callable in-process so tests can drive
// every subcommand and inspect exit codes and output.
//
// Exit codes: 0 success, 1 verification or suite failure, 2 usage or invalid
// input, 3 resource limit.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cyclo/acceptance.hpp"
#include "cyclo/codes.hpp"
#include "cyclo/export.hpp"
#include "cyclo/frobenius.hpp"
#include "cyclo/graph.hpp"

namespace cyclo::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kResource = 3 };

struct Bounds {
  std::int64_t max_vertices = 4'000'000;
  std::int64_t max_candidates = 1'000'000;
};

inline std::int64_t env_bound(const char* name, std::int64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != std::string(v).size() || x <= 0) throw std::invalid_argument(name);
    return x;
  } catch (const std::exception&) {
    throw InvalidParameter(std::string("environment variable ") + name + " must be a positive integer");
  }
}

// Defaults come from CYCLO_MAX_VERTICES / CYCLO_MAX_CANDIDATES when set.
inline Bounds default_bounds() {
  Bounds b;
  b.max_vertices = env_bound("CYCLO_MAX_VERTICES", b.max_vertices);
  b.max_candidates = env_bound("CYCLO_MAX_CANDIDATES", b.max_candidates);
  return b;
}

inline std::vector<Integer> parse_integer_list(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw InvalidParameter("empty entry in integer list '" + text + "'");
    item = item.substr(b, e - b + 1);
    const std::size_t digits_from = (item[0] == '-' || item[0] == '+') ? 1 : 0;
    if (digits_from == item.size() || item.find_first_not_of("0123456789", digits_from) != std::string::npos)
      throw InvalidParameter("not an integer: '" + item + "'");
    out.emplace_back(item[0] == '+' ? item.substr(1) : item);
  }
  if (out.empty()) throw InvalidParameter("empty integer list");
  return out;
}

enum class Basis { automatic, power, rho };

inline CycInt parse_generator(const ContextPtr& ctx, const std::string& text, Basis basis) {
  const auto coeffs = parse_integer_list(text);
  const bool use_rho = basis == Basis::rho || (basis == Basis::automatic && ctx->m() == 3);
  if (use_rho) {
    if (ctx->m() != 3) throw InvalidParameter("rho coordinates need m = 3");
    if (coeffs.size() > 2) throw InvalidParameter("rho coordinates take at most two entries");
    return rho::from_rho(ctx, coeffs[0], coeffs.size() > 1 ? coeffs[1] : Integer(0));
  }
  if (coeffs.size() > ctx->dim())
    throw InvalidParameter("generator has more than phi(m) = " + std::to_string(ctx->dim()) + " coefficients");
  return CycInt(ctx, coeffs);
}

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidParameter("cannot open output file " + path);
  f << text;
}

// Applies fn to every index in [0, count) on up to `jobs` threads; results
// keep index order.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, unsigned jobs, Fn fn) {
  std::vector<T> out(count);
  std::vector<std::exception_ptr> errors(count);
  auto work = [&](std::size_t start, std::size_t stride) {
    for (std::size_t i = start; i < count; i += stride) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(work, k, threads);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

struct Common {
  std::string format = "text";
  std::string output;
  std::int64_t max_vertices = 0;
  std::int64_t max_candidates = 0;
  unsigned jobs = 1;
};

inline void add_common(CLI::App* sub, Common& c, const Bounds& defaults, bool allow_dot) {
  std::vector<std::string> formats{"text", "json"};
  if (allow_dot) formats.push_back("dot");
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember(formats))->capture_default_str();
  sub->add_option("-o,--output", c.output, "write output to this file instead of standard output");
  c.max_vertices = defaults.max_vertices;
  c.max_candidates = defaults.max_candidates;
  sub->add_option("--max-vertices", c.max_vertices, "vertex bound (env CYCLO_MAX_VERTICES)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--max-candidates", c.max_candidates, "intermediate-ideal bound (env CYCLO_MAX_CANDIDATES)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("-j,--jobs", c.jobs, "worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
}

struct IdealInput {
  int m = 0;
  std::vector<std::string> gens;
  std::string basis = "auto";
  bool rho_flag = false;
};

inline void add_ideal_input(CLI::App* sub, IdealInput& in, bool required) {
  auto* m = sub->add_option("-m,--m", in.m, "cyclotomic order m >= 2")->check(CLI::Range(2, 100000));
  auto* g = sub->add_option("-g,--gen", in.gens, "ideal generator as comma-separated coefficients (repeatable)");
  if (required) {
    m->required();
    g->required();
  }
  sub->add_option("--basis", in.basis, "coefficient basis; auto = rho for m = 3, power otherwise")
      ->check(CLI::IsMember({"auto", "power", "rho"}))
      ->capture_default_str();
  sub->add_flag("--rho", in.rho_flag, "shorthand for --basis rho");
}

inline std::shared_ptr<const QuotientRing> build_ring(const IdealInput& in, const Common& c) {
  const ContextPtr ctx = make_context(in.m);
  const Basis basis = in.rho_flag ? Basis::rho : in.basis == "power" ? Basis::power : in.basis == "rho" ? Basis::rho : Basis::automatic;
  std::vector<CycInt> gens;
  for (const auto& g : in.gens) gens.push_back(parse_generator(ctx, g, basis));
  IdealLattice a = ideal_from_generators(gens);
  if (a.norm() > c.max_vertices) throw ResourceLimit("N(A) = " + a.norm().str() + " exceeds the vertex bound");
  return std::make_shared<const QuotientRing>(std::move(a));
}

inline GraphKind parse_kind(const std::string& k) {
  if (k == "full") return GraphKind::full_cyclotomic;
  if (k == "second") return GraphKind::second_kind;
  return GraphKind::circulant;
}

// ------------------------------------------------------------------ graph

struct GraphArgs {
  Common common;
  IdealInput ideal;
  std::string kind = "full";
  std::int64_t n = 0;
  std::string connection_set;
};

inline int cmd_graph(const GraphArgs& a, std::ostream& out) {
  const GraphBuildOptions opts{a.common.max_vertices};
  std::optional<CayleyGraph> g;
  const GraphKind kind = a.n > 0 ? GraphKind::circulant : parse_kind(a.kind);
  if (kind == GraphKind::circulant) {
    if (a.n <= 0 || a.connection_set.empty()) throw InvalidParameter("circulants need --n and --connection-set");
    std::vector<std::int64_t> s;
    for (const auto& x : parse_integer_list(a.connection_set)) s.push_back(to_int64(x));
    g.emplace(build_circulant(a.n, s, opts));
  } else {
    if (a.ideal.m == 0 || a.ideal.gens.empty()) throw InvalidParameter("cyclotomic graphs need --m and --gen");
    g.emplace(build_cyclotomic_graph(build_ring(a.ideal, a.common), kind, opts));
  }
  const GraphInfo info = graph_info(*g);
  if (a.common.format == "dot") {
    emit(graph_dot(*g), a.common.output, out);
  } else if (a.common.format == "json") {
    emit(graph_json(*g, info).dump(2) + "\n", a.common.output, out);
  } else {
    std::ostringstream s;
    s << "kind: " << to_string(g->kind()) << "\n";
    s << "order: " << g->n_vertices() << "\n";
    s << "valency: " << g->degree() << "\n";
    s << "diameter: " << info.diameter << "\n";
    s << "shells:";
    for (auto x : info.shells) s << ' ' << x;
    s << "\n";
    if (info.rotational) s << "complete rotation: " << (*info.rotational ? "yes" : "no") << "\n";
    emit(s.str(), a.common.output, out);
  }
  return kOk;
}

// ------------------------------------------------------------------ codes

struct CodesArgs {
  Common common;
  IdealInput ideal;
  std::int32_t t = 1;
  std::string kind = "full";
};

inline int cmd_codes(const CodesArgs& a, std::ostream& out) {
  auto q = build_ring(a.ideal, a.common);
  const GraphBuildOptions opts{a.common.max_vertices};
  const CayleyGraph g = build_cyclotomic_graph(q, parse_kind(a.kind), opts);
  const CayleyGraph gstar = g.kind() == GraphKind::second_kind ? g : build_cyclotomic_graph(q, GraphKind::second_kind, opts);
  IntermediateIdealOptions iopts{a.common.max_candidates, a.common.max_candidates};
  auto ideals = intermediate_ideals(*q, iopts).ideals;
  std::sort(ideals.begin(), ideals.end(), [](const IdealLattice& x, const IdealLattice& y) { return x.key() < y.key(); });

  const int m = q->ctx().m();
  const bool annotate = m == 3 || m == 4;
  std::vector<CodesCandidateRow> rows;
  bool consistent = true;
  for (auto& d : ideals) {
    CodesCandidateRow row{d, verify_ideal_code_conditions(*q, g, gstar, d, a.t), std::nullopt};
    if (annotate) {
      const std::string cls = associate_class(d, a.t);
      if (!cls.empty()) row.associate_class = cls;
    }
    consistent = consistent && row.conditions.consistent;
    rows.push_back(std::move(row));
  }

  // Associate prediction versus observation, when the theorem applies:
  // principal ideal, full graph, t inside the normalized range.
  std::optional<bool> agreement;
  if (annotate && a.ideal.gens.size() == 1 && g.kind() == GraphKind::full_cyclotomic) {
    const ContextPtr& ctx = q->context();
    const Basis basis = a.ideal.rho_flag ? Basis::rho : a.ideal.basis == "power" ? Basis::power : a.ideal.basis == "rho" ? Basis::rho : Basis::automatic;
    const NormalizedAlpha na = normalize_alpha(parse_generator(ctx, a.ideal.gens.front(), basis));
    const bool norm_ok = q->ideal().norm() >= (m == 4 ? 5 : 7);
    if (norm_ok && a.t >= 1 && Integer(2 * a.t) <= na.a + na.b - 1) {
      bool agree = true;
      for (const auto& r : rows) agree = agree && (r.associate_class.has_value() == r.conditions.is_perfect);
      agreement = agree;
    }
  }

  if (a.common.format == "json") {
    emit(codes_json(g, a.t, rows, agreement).dump(2) + "\n", a.common.output, out);
  } else {
    std::ostringstream s;
    s << "graph: " << to_string(g.kind()) << " m=" << m << " order=" << g.n_vertices() << " valency=" << g.degree()
      << " t=" << a.t << "\n";
    std::size_t perfect = 0;
    for (const auto& r : rows) {
      if (r.conditions.is_perfect) ++perfect;
      s << (r.conditions.is_perfect ? "perfect " : "        ") << "norm=" << r.ideal.norm()
        << " size=" << r.conditions.code_size << " ball=" << r.conditions.ball_size << " min_weight="
        << (r.conditions.min_weight ? std::to_string(*r.conditions.min_weight) : std::string("-"));
      if (r.associate_class) s << " class=" << *r.associate_class;
      s << "\n";
    }
    s << "perfect codes: " << perfect << "\n";
    if (agreement) s << "associate prediction agrees: " << (*agreement ? "yes" : "no") << "\n";
    emit(s.str(), a.common.output, out);
  }
  return consistent && agreement.value_or(true) ? kOk : kFailure;
}

// -------------------------------------------------------------- frobenius

struct FrobeniusArgs {
  Common common;
  std::int64_t p = 0;
  std::int64_t n = 0;
  std::string n_range;
  bool bridge = true;
};

inline std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidParameter("range must look like LO:HI");
  const auto lo = parse_integer_list(text.substr(0, colon));
  const auto hi = parse_integer_list(text.substr(colon + 1));
  if (lo.size() != 1 || hi.size() != 1) throw InvalidParameter("range must look like LO:HI");
  const std::int64_t l = to_int64(lo[0]), h = to_int64(hi[0]);
  if (l < 3 || h < l) throw InvalidParameter("range needs 3 <= LO <= HI");
  return {l, h};
}

inline int cmd_frobenius(const FrobeniusArgs& a, std::ostream& out) {
  require_odd_prime(a.p);
  std::int64_t lo = a.n, hi = a.n;
  if (!a.n_range.empty()) {
    if (a.n != 0) throw InvalidParameter("give either --n or --n-range");
    std::tie(lo, hi) = parse_range(a.n_range);
  } else if (a.n < 3) {
    throw InvalidParameter("--n must be at least 3");
  }
  if (hi > a.common.max_vertices) throw ResourceLimit("n exceeds the vertex bound");
  const GraphBuildOptions opts{a.common.max_vertices};
  using Rows = std::vector<FrobeniusRow>;
  const auto count = static_cast<std::size_t>(hi - lo + 1);
  auto rows = parallel_map<Rows>(count, a.common.jobs, [&](std::size_t i) {
    const std::int64_t n = lo + static_cast<std::int64_t>(i);
    Rows out_rows;
    for (auto& c : classify_2p(n, a.p)) {
      FrobeniusRow row{std::move(c), false, std::nullopt, ""};
      if (a.bridge) {
        try {
          const BridgeResult b = frobenius_to_cyclotomic(a.p, n, row.candidate.a, opts);
          row.bridged = b.iso.verified;
          row.ideal = b.ideal();
        } catch (const InternalInconsistency& e) {
          row.bridge_error = e.what();
        } catch (const HypothesisViolation& e) {
          row.bridge_error = e.what();
        }
      }
      out_rows.push_back(std::move(row));
    }
    return out_rows;
  });

  std::vector<std::pair<std::int64_t, Rows>> per_n;
  bool all_bridged = true;
  for (std::size_t i = 0; i < count; ++i) {
    for (const auto& r : rows[i]) all_bridged = all_bridged && (!a.bridge || r.bridged);
    if (!rows[i].empty() || count == 1) per_n.emplace_back(lo + static_cast<std::int64_t>(i), std::move(rows[i]));
  }

  if (a.common.format == "json") {
    emit(frobenius_json(a.p, per_n).dump(2) + "\n", a.common.output, out);
  } else {
    std::ostringstream s;
    std::size_t total = 0;
    for (const auto& [n, list] : per_n) {
      if (list.empty()) s << "n=" << n << ": no candidates\n";
      for (const auto& r : list) {
        ++total;
        s << "n=" << n << " a=" << r.candidate.a << " S={";
        for (std::size_t k = 0; k < r.candidate.connection_set.size(); ++k)
          s << (k ? "," : "") << r.candidate.connection_set[k];
        s << "} class_rep=" << r.candidate.class_rep;
        if (a.bridge) s << " bridge=" << (r.bridged ? "verified" : "FAILED " + r.bridge_error);
        s << "\n";
      }
    }
    s << "candidates: " << total << "\n";
    emit(s.str(), a.common.output, out);
  }
  return all_bridged ? kOk : kFailure;
}

// ----------------------------------------------------------------- accept

struct AcceptArgs {
  Common common;
  std::uint64_t seed = AcceptanceOptions{}.seed;
  bool inject_fault = false;
};

inline int cmd_accept(const AcceptArgs& a, std::ostream& out) {
  AcceptanceOptions opts;
  opts.seed = a.seed;
  opts.inject_fault = a.inject_fault;
  const auto results = run_acceptance(opts);
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  if (a.common.format == "json") {
    emit(acceptance_json(results, a.seed).dump(2) + "\n", a.common.output, out);
  } else {
    std::ostringstream s;
    for (const auto& r : results) s << format_criterion(r) << "\n";
    s << (all ? "all criteria pass" : "some criteria FAIL") << "\n";
    emit(s.str(), a.common.output, out);
  }
  return all ? kOk : kFailure;
}

// -------------------------------------------------------------------- run

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Bounds defaults;
  try {
    defaults = default_bounds();
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  CLI::App app{"Cyclotomic graphs, perfect codes and Frobenius circulants", "cyclo"};
  app.require_subcommand(1);

  GraphArgs graph;
  auto* g = app.add_subcommand("graph", "build a cyclotomic graph or circulant and report its structure");
  add_common(g, graph.common, defaults, true);
  add_ideal_input(g, graph.ideal, false);
  g->add_option("--kind", graph.kind, "graph kind")->check(CLI::IsMember({"full", "second", "circulant"}))->capture_default_str();
  g->add_option("-n,--n", graph.n, "circulant order")->check(CLI::Range(std::int64_t{3}, std::int64_t{1} << 40));
  g->add_option("-S,--connection-set", graph.connection_set, "circulant connection set, comma-separated");

  CodesArgs codes;
  auto* c = app.add_subcommand("codes", "search perfect t-codes of the form D/A");
  add_common(c, codes.common, defaults, false);
  add_ideal_input(c, codes.ideal, true);
  c->add_option("-t,--t", codes.t, "code radius t >= 1")->required()->check(CLI::Range(1, 1 << 20));
  c->add_option("--kind", codes.kind, "graph kind")->check(CLI::IsMember({"full", "second"}))->capture_default_str();

  FrobeniusArgs frob;
  auto* f = app.add_subcommand("frobenius", "classify 2p-valent first-kind Frobenius circulants");
  add_common(f, frob.common, defaults, false);
  f->add_option("-p,--p", frob.p, "odd prime p")->required();
  auto* n_opt = f->add_option("-n,--n", frob.n, "single modulus n");
  auto* r_opt = f->add_option("--n-range", frob.n_range, "modulus range LO:HI");
  n_opt->excludes(r_opt);
  bool no_bridge = false;
  f->add_flag("--no-bridge", no_bridge, "skip the cyclotomic bridge check");

  AcceptArgs acc;
  auto* a = app.add_subcommand("accept", "run the acceptance battery");
  add_common(a, acc.common, defaults, false);
  a->add_option("--seed", acc.seed, "seed for the randomized suites")->capture_default_str();
  a->add_flag("--inject-fault", acc.inject_fault, "corrupt one bridge circulant; the run must fail");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*g) return cmd_graph(graph, out);
    if (*c) return cmd_codes(codes, out);
    if (*f) {
      if (n_opt->count() == 0 && r_opt->count() == 0) throw InvalidParameter("give --n or --n-range");
      frob.bridge = !no_bridge;
      return cmd_frobenius(frob, out);
    }
    if (*a) return cmd_accept(acc, out);
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const InvalidParameter& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace cyclo::cli
