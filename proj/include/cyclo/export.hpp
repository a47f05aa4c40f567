#pragma once

// JSON and DOT renderings. Every JSON document carries "schema": 1; object
// keys are sorted, so equal inputs give byte-identical output.

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cyclo/acceptance.hpp"
#include "cyclo/codes.hpp"
#include "cyclo/frobenius.hpp"
#include "cyclo/graph.hpp"

namespace cyclo {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline Json to_json(const Integer& x) {
  if (fits_int64(x)) return x.convert_to<std::int64_t>();
  return x.str();
}

inline Json hnf_json(const IdealLattice& a) {
  Json rows = Json::array();
  const Matrix& h = a.hnf();
  for (std::size_t r = 0; r < h.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < h.cols(); ++c) row.push_back(to_json(h(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Vertex label: canonical representative coefficients, or the integer for
// circulants.
inline std::string vertex_label(const CayleyGraph& g, Vertex v) {
  if (const QuotientRing* q = g.ring()) return q->canonical_rep(v).str();
  return std::to_string(v);
}

inline Json graph_summary_json(const CayleyGraph& g) {
  Json j;
  j["kind"] = to_string(g.kind());
  j["n_vertices"] = g.n_vertices();
  j["valency"] = g.degree();
  if (const QuotientRing* q = g.ring()) {
    j["m"] = q->ctx().m();
    j["ideal_hnf"] = hnf_json(q->ideal());
    j["norm"] = to_json(q->ideal().norm());
  } else {
    j["m"] = nullptr;
    j["ideal_hnf"] = nullptr;
  }
  Json conn = Json::array();
  for (auto s : g.connection_set()) conn.push_back(vertex_label(g, static_cast<Vertex>(s)));
  j["connection_set"] = std::move(conn);
  return j;
}

struct GraphInfo {
  std::int32_t diameter = 0;
  std::vector<std::int64_t> shells;
  std::optional<bool> rotational;  // full cyclotomic graphs only
};

inline GraphInfo graph_info(const CayleyGraph& g) {
  GraphInfo info;
  info.diameter = eccentricity(g, 0);
  info.shells = shell_series(g, info.diameter);
  if (g.kind() == GraphKind::full_cyclotomic) info.rotational = check_complete_rotation(*g.ring(), g).is_complete_rotation();
  return info;
}

inline Json graph_json(const CayleyGraph& g, const GraphInfo& info, bool with_edges = true) {
  Json j = graph_summary_json(g);
  j["schema"] = kSchemaVersion;
  j["diameter"] = info.diameter;
  j["shells"] = info.shells;
  j["rotational"] = info.rotational ? Json(*info.rotational) : Json(nullptr);
  if (with_edges) {
    Json edges = Json::array();
    for (Vertex u = 0; u < g.n_vertices(); ++u)
      for (Vertex w : g.neighbors(u))
        if (u < w) edges.push_back({u, w});
    j["edges"] = std::move(edges);
  }
  return j;
}

inline std::string graph_dot(const CayleyGraph& g) {
  std::ostringstream s;
  s << "graph G {\n";
  for (Vertex v = 0; v < g.n_vertices(); ++v) s << "  " << v << " [label=\"" << vertex_label(g, v) << "\"];\n";
  for (Vertex u = 0; u < g.n_vertices(); ++u)
    for (Vertex w : g.neighbors(u))
      if (u < w) s << "  " << u << " -- " << w << ";\n";
  s << "}\n";
  return s.str();
}

struct CodesCandidateRow {
  IdealLattice ideal;
  IdealCodeConditions conditions;
  std::optional<std::string> associate_class;
};

inline Json codes_json(const CayleyGraph& g, std::int32_t t, const std::vector<CodesCandidateRow>& rows,
                       const std::optional<bool>& agreement) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["graph"] = graph_summary_json(g);
  j["t"] = t;
  Json cands = Json::array();
  std::int64_t perfect = 0;
  for (const auto& r : rows) {
    Json c;
    c["ideal_hnf"] = hnf_json(r.ideal);
    c["norm"] = to_json(r.ideal.norm());
    c["code_size"] = r.conditions.code_size;
    c["is_perfect"] = r.conditions.is_perfect;
    c["ball_size"] = r.conditions.ball_size;
    c["min_weight"] = r.conditions.min_weight ? Json(*r.conditions.min_weight) : Json(nullptr);
    c["conditions_hold"] = r.conditions.conditions_hold;
    c["consistent"] = r.conditions.consistent;
    c["associate_class"] = r.associate_class ? Json(*r.associate_class) : Json(nullptr);
    if (r.conditions.is_perfect) ++perfect;
    cands.push_back(std::move(c));
  }
  j["candidates"] = std::move(cands);
  j["perfect_count"] = perfect;
  j["agreement"] = agreement ? Json(*agreement) : Json(nullptr);
  return j;
}

struct FrobeniusRow {
  FrobeniusCandidate candidate;
  bool bridged = false;
  std::optional<IdealLattice> ideal;
  std::string bridge_error;
};

inline Json frobenius_json(std::int64_t p, const std::vector<std::pair<std::int64_t, std::vector<FrobeniusRow>>>& per_n) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["p"] = p;
  Json results = Json::array();
  for (const auto& [n, rows] : per_n) {
    Json r;
    r["n"] = n;
    Json cands = Json::array();
    for (const auto& row : rows) {
      Json c;
      c["a"] = row.candidate.a;
      c["S"] = row.candidate.connection_set;
      c["class_rep"] = row.candidate.class_rep;
      c["checks"] = {{"n_congruent", row.candidate.checks.n_congruent},
                     {"power_condition", row.candidate.checks.power_condition},
                     {"gcd_conditions", row.candidate.checks.gcd_conditions}};
      c["bridged"] = row.bridged;
      c["ideal_hnf"] = row.ideal ? hnf_json(*row.ideal) : Json(nullptr);
      if (!row.bridge_error.empty()) c["bridge_error"] = row.bridge_error;
      cands.push_back(std::move(c));
    }
    r["candidates"] = std::move(cands);
    results.push_back(std::move(r));
  }
  j["results"] = std::move(results);
  return j;
}

inline Json acceptance_json(const std::vector<CriterionResult>& results, std::uint64_t seed) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["seed"] = seed;
  Json list = Json::array();
  bool all = true;
  for (const auto& r : results) {
    list.push_back({{"id", r.id},
                    {"name", r.name},
                    {"pass", r.pass},
                    {"seconds", r.seconds},
                    {"limit_seconds", r.limit_seconds},
                    {"detail", r.detail}});
    all = all && r.pass;
  }
  j["criteria"] = std::move(list);
  j["all_pass"] = all;
  return j;
}

}  // namespace cyclo
