#pragma once

// JSON, text and DOT renderings of the computed objects. Key order is fixed
// (nlohmann::json sorts object keys), so output is byte-stable.

#include <sstream>
#include <string>
#include <vector>

#include "fkgraph/checks.hpp"
#include "fkgraph/graph_io.hpp"
#include "json.hpp"

namespace fkgraph {

using nlohmann::json;

inline json to_json(const BigInt& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return x.str();
}

inline json to_json(const IntVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

/// Row-major list of rows.
inline json to_json(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

inline json vertex_names(const Graph& g, VertexSet s) {
  json out = json::array();
  for (std::size_t v : s.elements()) out.push_back(g.name(v));
  return out;
}

inline json point_list(PointSet T) {
  json out = json::array();
  for (std::size_t p : T.elements()) out.push_back(p);
  return out;
}

inline std::string pair_label(const Graph& g, const AdmissiblePair& p) {
  auto names = [&](VertexSet s) {
    std::string out = "{";
    for (std::size_t v : s.elements()) out += (out.size() > 1 ? "," : "") + g.name(v);
    return out + "}";
  };
  return "(" + names(p.H) + "," + names(p.S) + ")";
}

// ---------------------------------------------------------------------------
// Lattice

inline json lattice_json(const Graph& g, const IdealLattice& L) {
  json pairs = json::array();
  for (std::size_t i = 0; i < L.size(); ++i)
    pairs.push_back({{"index", i}, {"H", vertex_names(g, L.pair(i).H)}, {"S", vertex_names(g, L.pair(i).S)}});
  json hasse = json::array();
  for (auto [a, b] : L.hasse_edges()) hasse.push_back({a, b});
  return {{"pairs", pairs}, {"hasse", hasse}, {"bottom", L.bottom()}, {"top", L.top()}};
}

inline std::string lattice_text(const Graph& g, const IdealLattice& L) {
  std::ostringstream os;
  os << L.size() << " admissible pairs\n";
  for (std::size_t i = 0; i < L.size(); ++i) os << "  #" << i << ' ' << pair_label(g, L.pair(i)) << '\n';
  os << "covering relations:\n";
  for (auto [a, b] : L.hasse_edges()) os << "  #" << a << " < #" << b << '\n';
  return os.str();
}

inline std::string lattice_dot(const Graph& g, const IdealLattice& L) {
  std::ostringstream os;
  os << "digraph lattice {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < L.size(); ++i) os << "  n" << i << " [label=\"" << pair_label(g, L.pair(i)) << "\"];\n";
  for (auto [a, b] : L.hasse_edges()) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Spectrum

inline json spectrum_json(const Graph& g, const SpectrumSpace& sp) {
  const auto& L = sp.lattice();
  json points = json::array();
  for (std::size_t p = 0; p < sp.size(); ++p)
    points.push_back({{"index", p},
                      {"lattice_index", sp.point(p)},
                      {"H", vertex_names(g, L.pair(sp.point(p)).H)},
                      {"S", vertex_names(g, L.pair(sp.point(p)).S)}});
  json spec = json::array();
  for (std::size_t p = 0; p < sp.size(); ++p)
    for (std::size_t q = 0; q < sp.size(); ++q)
      if (p != q && sp.specializes(p, q)) spec.push_back({p, q});
  json opens = json::array();
  for (std::size_t i = 0; i < sp.opens().size(); ++i)
    opens.push_back({{"points", point_list(sp.opens()[i])}, {"ideal", i}});
  return {{"points", points}, {"specialization", spec}, {"opens", opens}};
}

inline std::string spectrum_text(const Graph& g, const SpectrumSpace& sp) {
  std::ostringstream os;
  os << sp.size() << " points\n";
  for (std::size_t p = 0; p < sp.size(); ++p) os << "  p" << p << ' ' << pair_label(g, sp.lattice().pair(sp.point(p))) << '\n';
  os << "specialization (p ~> q: q in closure of p):\n";
  for (std::size_t p = 0; p < sp.size(); ++p)
    for (std::size_t q = 0; q < sp.size(); ++q)
      if (p != q && sp.specializes(p, q)) os << "  p" << p << " ~> p" << q << '\n';
  os << sp.opens().size() << " open sets:\n";
  for (const auto& U : sp.opens()) os << "  " << format_points(U) << '\n';
  return os.str();
}

/// Hasse diagram of the specialization order.
inline std::string spectrum_dot(const Graph& g, const SpectrumSpace& sp) {
  std::ostringstream os;
  os << "digraph spectrum {\n";
  for (std::size_t p = 0; p < sp.size(); ++p)
    os << "  p" << p << " [label=\"p" << p << " " << pair_label(g, sp.lattice().pair(sp.point(p))) << "\"];\n";
  for (std::size_t p = 0; p < sp.size(); ++p)
    for (std::size_t q = 0; q < sp.size(); ++q) {
      if (p == q || !sp.specializes(p, q)) continue;
      bool cover = true;
      for (std::size_t r = 0; r < sp.size() && cover; ++r)
        if (r != p && r != q && sp.specializes(p, r) && sp.specializes(r, q)) cover = false;
      if (cover) os << "  p" << p << " -> p" << q << ";\n";
    }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// K-theory

inline json group_json(const FgAbGroup& G) {
  return {{"factors", to_json(G.factors)}, {"description", G.describe()}};
}

inline json kdata_json(const Graph& g, PointSet points, const KData& k) {
  json cone = json::array();
  for (const auto& c : k.cone_generators) cone.push_back(to_json(c));
  json basis = json::array();
  for (std::size_t j = 0; j < k.K1.lift.cols(); ++j) basis.push_back(to_json(k.K1.lift.column(j)));
  json k0 = group_json(k.K0);
  k0["cone_generators"] = cone;
  k0["unit_class"] = to_json(k.unit_class);
  json k1 = group_json(k.K1);
  k1["kernel_basis"] = basis;
  return {{"points", point_list(points)},
          {"vertices", vertex_names(g, k.D)},
          {"regular_vertices", vertex_names(g, k.regular)},
          {"K0", k0},
          {"K1", k1}};
}

inline std::string vector_text(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  return os.str() + ')';
}

inline std::string kdata_text(const Graph& g, PointSet points, const KData& k) {
  std::ostringstream os;
  os << "subquotient " << format_points(points) << " on vertices {";
  bool first = true;
  for (std::size_t v : k.D.elements()) {
    os << (first ? "" : ",") << g.name(v);
    first = false;
  }
  os << "}\n  K0 = " << k.K0.describe() << '\n';
  for (std::size_t a = 0; a < k.cone_generators.size(); ++a)
    os << "    [" << g.name(k.D.elements()[a]) << "] = " << vector_text(k.cone_generators[a]) << '\n';
  os << "    unit = " << vector_text(k.unit_class) << '\n';
  os << "  K1 = " << k.K1.describe() << '\n';
  for (std::size_t j = 0; j < k.K1.lift.cols(); ++j) os << "    basis " << vector_text(k.K1.lift.column(j)) << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Comparison and checks

inline json verdict_json(const FilteredK& A, const CompareVerdict& v) {
  json out = {{"outcome", to_string(v.outcome)},
              {"reason", v.reason},
              {"homeomorphisms", v.homeomorphisms},
              {"nodes", v.nodes},
              {"witness", nullptr}};
  if (v.witness) {
    json maps = json::array();
    for (std::size_t i = 0; i < A.lcs.size(); ++i)
      maps.push_back({{"points", point_list(A.lcs[i].points)},
                      {"alpha0", to_json(v.witness->alpha0[i])},
                      {"alpha1", to_json(v.witness->alpha1[i])}});
    out["witness"] = {{"point_map", v.witness->point_map}, {"maps", maps}};
  }
  return out;
}

inline std::string verdict_text(const FilteredK& A, const CompareVerdict& v) {
  std::ostringstream os;
  os << to_string(v.outcome) << ": " << v.reason << '\n';
  if (v.witness) {
    os << "point map:";
    for (std::size_t p = 0; p < v.witness->point_map.size(); ++p) os << " p" << p << "->p" << v.witness->point_map[p];
    os << '\n';
    for (std::size_t i = 0; i < A.lcs.size(); ++i) {
      if (A.lcs[i].points.empty()) continue;
      os << "  " << format_points(A.lcs[i].points) << ": alpha0 = " << v.witness->alpha0[i]
         << ", alpha1 = " << v.witness->alpha1[i] << '\n';
    }
  }
  return os.str();
}

inline json reports_json(const std::vector<Report>& reports) {
  json list = json::array();
  bool passed = true;
  for (const auto& r : reports) {
    passed = passed && r.ok();
    list.push_back({{"name", r.name}, {"checks", r.checks}, {"passed", r.ok()}, {"failures", r.failures}});
  }
  return {{"passed", passed}, {"reports", list}};
}

inline std::string reports_text(const std::vector<Report>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << (r.ok() ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks)\n";
    for (const auto& f : r.failures) os << "    " << f << '\n';
  }
  return os.str();
}

}  // namespace fkgraph
