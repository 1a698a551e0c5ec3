#pragma once

// Structural self-checks that can be run on any user graph.

#include <vector>

#include "fkgraph/invariant.hpp"

namespace fkgraph {

/// Absorption, associativity and commutativity of the computed meet/join
/// tables, plus the row-finite meet formula (H1 n H2, empty).
inline Report verify_lattice_laws(const Graph& g, const IdealLattice& L) {
  Report r{"lattice_laws"};
  const std::size_t n = L.size();
  r.expect(L.pair(L.bottom()) == AdmissiblePair{}, "bottom is not (empty, empty)");
  r.expect(L.pair(L.top()) == AdmissiblePair{g.all(), {}}, "top is not (all vertices, empty)");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      r.expect(L.meet(a, L.join(a, b)) == a && L.join(a, L.meet(a, b)) == a, "absorption fails");
      r.expect(L.meet(a, b) == L.meet(b, a) && L.join(a, b) == L.join(b, a), "commutativity fails");
      if (g.row_finite())
        r.expect(L.pair(L.meet(a, b)) == AdmissiblePair{L.pair(a).H & L.pair(b).H, {}}, "meet is not intersection");
      for (std::size_t c = 0; c < n; ++c)
        r.expect(L.meet(L.meet(a, b), c) == L.meet(a, L.meet(b, c)) && L.join(L.join(a, b), c) == L.join(a, L.join(b, c)),
                 "associativity fails");
    }
  return r;
}

/// The hereditary saturated closure is extensive, monotone and idempotent,
/// and lands in hereditary saturated sets. Exhaustive up to 10 vertices.
inline Report verify_closure_operator(const Graph& g) {
  Report r{"closure_operator"};
  if (g.size() > 10) return r;
  std::vector<VertexSet> closed(std::size_t{1} << g.size());
  g.all().for_each_subset([&](VertexSet X) {
    const VertexSet c = saturated_hereditary_closure(g, X);
    closed[X.mask()] = c;
    r.expect(X.subset_of(c), "closure is not extensive");
    r.expect(is_hereditary(g, c) && is_saturated(g, c), "closure is not hereditary saturated");
    r.expect(saturated_hereditary_closure(g, c) == c, "closure is not idempotent");
  });
  g.all().for_each_subset([&](VertexSet X) {
    X.for_each_subset([&](VertexSet Y) { r.expect(closed[Y.mask()].subset_of(closed[X.mask()]), "closure not monotone"); });
  });
  return r;
}

/// K-data of a locally closed set is the same for every presentation U \ V.
inline Report verify_kdata_well_defined(const FilteredK& fk) {
  Report r{"kdata_well_defined"};
  const auto& L = fk.space.lattice();
  for (std::size_t i = 0; i < fk.lcs.size(); ++i) {
    const KData& canon = fk.kmap[i];
    for (auto [u, v] : fk.space.presentations(fk.lcs[i].points)) {
      const KData k = k_data_for(fk.graph, L.pair(u).H - L.pair(v).H);
      r.expect(k.D == canon.D && k.K0.factors == canon.K0.factors && k.K1.factors == canon.K1.factors &&
                   k.cone_generators == canon.cone_generators && k.unit_class == canon.unit_class &&
                   k.K0.project == canon.K0.project && k.K1.lift == canon.K1.lift,
               "K-data differs between presentations of " + format_points(fk.lcs[i].points));
    }
  }
  return r;
}

/// Exactness of every six-term sequence, K1 torsion-free, unit = sum of cone generators.
inline Report verify_exactness(const FilteredK& fk) {
  Report r{"exactness"};
  for (const auto& s : fk.sequences) {
    SixTerm six;
    six.sub = fk.kmap[s.sub];
    six.all = fk.kmap[s.all];
    six.quot = fk.kmap[s.quot];
    six.iota0 = s.iota0;
    six.pi0 = s.pi0;
    six.delta = s.delta;
    six.iota1 = s.iota1;
    six.pi1 = s.pi1;
    six.partial = s.partial;
    for (const auto& d : six_term_defects(six))
      r.expect(false, "sequence " + format_points(fk.lcs[s.sub].points) + " / " + format_points(fk.lcs[s.quot].points) + ": " + d);
    ++r.checks;
  }
  for (const auto& k : fk.kmap) {
    r.expect(k.K1.torsion_count() == 0, "K1 has torsion");
    IntVector sum = k.K0.zero();
    for (const auto& gvec : k.cone_generators)
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += gvec[i];
    r.expect(k.K0.reduce(sum) == k.unit_class, "unit class is not the sum of the vertex classes");
  }
  return r;
}

/// Nested triples compose: iota for U1<U2<U4 equals iota(U1,U3,U4) after
/// iota(U1,U2,U3), and dually for pi.
inline Report verify_functoriality(const FilteredK& fk) {
  Report r{"functoriality"};
  const auto& opens = fk.space.opens();
  auto seq = [&](std::size_t a, std::size_t b, std::size_t c) -> const SequenceMaps& {
    return fk.sequences[fk.sequence_index.at({fk.lc_index.at(opens[b] - opens[a]), fk.lc_index.at(opens[c] - opens[b])})];
  };
  const std::size_t n = opens.size();
  for (std::size_t u1 = 0; u1 < n; ++u1)
    for (std::size_t u2 = 0; u2 < n; ++u2) {
      if (!opens[u1].subset_of(opens[u2])) continue;
      for (std::size_t u3 = 0; u3 < n; ++u3) {
        if (!opens[u2].subset_of(opens[u3])) continue;
        for (std::size_t u4 = 0; u4 < n; ++u4) {
          if (!opens[u3].subset_of(opens[u4])) continue;
          const auto& direct = seq(u1, u2, u4);
          const auto& first = seq(u1, u2, u3);
          const auto& second = seq(u1, u3, u4);
          const auto& tgt = fk.kmap[direct.all];
          r.expect(maps_equal(tgt.K0, direct.iota0, second.iota0 * first.iota0), "iota0 does not compose");
          r.expect(maps_equal(tgt.K1, direct.iota1, second.iota1 * first.iota1), "iota1 does not compose");
          // pi: K(U4\U1) -> K(U4\U3) equals K(U4\U2) -> K(U4\U3) after K(U4\U1) -> K(U4\U2).
          const auto& pdirect = seq(u1, u3, u4);
          const auto& p1 = seq(u1, u2, u4);
          const auto& p2 = seq(u2, u3, u4);
          const auto& ptgt = fk.kmap[pdirect.quot];
          r.expect(maps_equal(ptgt.K0, pdirect.pi0, p2.pi0 * p1.pi0), "pi0 does not compose");
          r.expect(maps_equal(ptgt.K1, pdirect.pi1, p2.pi1 * p1.pi1), "pi1 does not compose");
        }
      }
    }
  return r;
}

struct CheckOptions {
  AssembleOptions assemble;
};

/// Everything above, on one graph. K-theory checks run only for row-finite
/// graphs whose spectrum fits the point cap.
inline std::vector<Report> run_all_checks(const Graph& g, const CheckOptions& opts = {}) {
  std::vector<Report> out;
  out.push_back(verify_closure_operator(g));
  const SpectrumSpace sp(enumerate_admissible_pairs(g, opts.assemble.vertex_cap));
  out.push_back(verify_lattice_laws(g, sp.lattice()));
  out.push_back(verify_kuratowski(sp));
  out.push_back(verify_lattice_isomorphism(sp));
  out.push_back(verify_kernel_identity(sp));
  out.push_back(verify_presentation_independence(sp));
  if (g.row_finite()) {
    Report assembled{"assemble"};
    try {
      const FilteredK fk = assemble(g, opts.assemble);
      ++assembled.checks;
      out.push_back(assembled);
      out.push_back(verify_kdata_well_defined(fk));
      out.push_back(verify_exactness(fk));
      out.push_back(verify_functoriality(fk));
    } catch (const InvariantViolation& e) {
      assembled.expect(false, e.what());
      out.push_back(assembled);
    }
  }
  return out;
}

}  // namespace fkgraph
