#include <gtest/gtest.h>

#include <numeric>

#include "support.hpp"

using namespace fkgraph;
using namespace fktest;

namespace {

const std::map<std::string, FilteredK>& assembled() {
  static const std::map<std::string, FilteredK> all = [] {
    std::map<std::string, FilteredK> out;
    for (const auto& [name, g] : row_finite_corpus()) out.emplace(name, assemble(g));
    return out;
  }();
  return all;
}

Graph with_source(const Graph& g, std::size_t target) {
  Graph h = g;
  const std::size_t s = h.add_vertex("src");
  h.add_edges(s, target, 1);
  return h;
}

}  // namespace

TEST(Assemble, OnePointGraphs) {
  const FilteredK g1 = assemble(load("g1"));
  EXPECT_EQ(g1.space.size(), 1u);
  EXPECT_EQ(g1.at(g1.space.all()).K0.factors, vec({0}));
  EXPECT_EQ(g1.at(g1.space.all()).K1.factors, vec({0}));
  const FilteredK o2 = assemble(load("o2"));
  EXPECT_EQ(o2.space.size(), 1u);
  EXPECT_TRUE(o2.at(o2.space.all()).K0.trivial());
  EXPECT_TRUE(o2.at(o2.space.all()).K1.trivial());
}

TEST(Assemble, G4) {
  const FilteredK fk = assemble(load("g4"));
  EXPECT_EQ(fk.space.size(), 2u);
  ASSERT_EQ(fk.lcs.size(), 4u);
  for (std::size_t i = 1; i < fk.lcs.size(); ++i) {
    EXPECT_EQ(fk.kmap[i].K0.factors, vec({0}));
    EXPECT_EQ(fk.kmap[i].K1.factors, vec({0}));
  }
  EXPECT_EQ(fk.unit_class(), vec({1}));
}

TEST(Assemble, KeysAreExactlyTheLocallyClosedSets) {
  for (const auto& [name, fk] : assembled()) {
    const auto lcs = fk.space.locally_closed_sets();
    ASSERT_EQ(fk.lcs.size(), lcs.size()) << name;
    for (std::size_t i = 0; i < lcs.size(); ++i) EXPECT_EQ(fk.lc_index.at(lcs[i].points), i) << name;
    EXPECT_EQ(fk.lcs[fk.full].points, fk.space.all()) << name;
  }
}

TEST(Assemble, Preconditions) {
  EXPECT_THROW(assemble(load("inf_uw")), PreconditionError);
  EXPECT_THROW(assemble(load("chain3"), {IdealLattice::kDefaultVertexCap, 2}), CapExceeded);
}

TEST(PosetIsomorphisms, Examples) {
  const SpectrumSpace one = SpectrumSpace(enumerate_admissible_pairs(load("g1")));
  EXPECT_EQ(poset_isomorphisms(one, one).size(), 1u);
  const SpectrumSpace chain = SpectrumSpace(enumerate_admissible_pairs(load("g3")));
  const SpectrumSpace anti = SpectrumSpace(enumerate_admissible_pairs(load("two_loops")));
  EXPECT_TRUE(poset_isomorphisms(chain, anti).empty());
  EXPECT_EQ(poset_isomorphisms(chain, chain).size(), 1u);
  EXPECT_EQ(poset_isomorphisms(anti, anti).size(), 2u);
  const SpectrumSpace vee = SpectrumSpace(enumerate_admissible_pairs(load("v_shape")));
  EXPECT_EQ(poset_isomorphisms(vee, vee).size(), 2u);
}

TEST(PosetIsomorphisms, MatchBruteForcePermutations) {
  for (const auto& [name, fk] : assembled()) {
    const auto& sp = fk.space;
    std::vector<std::size_t> perm(sp.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t count = 0;
    do {
      bool ok = true;
      for (std::size_t p = 0; p < sp.size() && ok; ++p)
        for (std::size_t q = 0; q < sp.size() && ok; ++q) ok = sp.specializes(p, q) == sp.specializes(perm[p], perm[q]);
      if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(poset_isomorphisms(sp, sp).size(), count) << name;
  }
}

TEST(Compare, G1VersusO2) {
  const auto v = compare(assembled().at("g1"), assembled().at("o2"));
  EXPECT_EQ(v.outcome, Outcome::Distinguished);
  EXPECT_EQ(v.nodes, 0u);
}

TEST(Compare, O2VersusComplete2) {
  const auto& A = assembled().at("o2");
  const auto& B = assembled().at("complete2");
  const auto v = compare(A, B);
  ASSERT_EQ(v.outcome, Outcome::Compatible);
  ASSERT_TRUE(v.witness.has_value());
  const Report r = verify_witness(A, B, *v.witness);
  EXPECT_TRUE(r.ok()) << (r.failures.empty() ? "" : r.failures.front());
}

TEST(Compare, SelfCompareGivesIdentityWitness) {
  for (const auto& [name, fk] : assembled()) {
    const auto v = compare(fk, fk);
    ASSERT_EQ(v.outcome, Outcome::Compatible) << name << ": " << v.reason;
    const Witness& w = *v.witness;
    for (std::size_t p = 0; p < w.point_map.size(); ++p) EXPECT_EQ(w.point_map[p], p) << name;
    for (std::size_t i = 0; i < fk.lcs.size(); ++i) {
      EXPECT_EQ(w.alpha0[i], identity_map(fk.kmap[i].K0)) << name;
      EXPECT_EQ(w.alpha1[i], identity_map(fk.kmap[i].K1)) << name;
    }
    EXPECT_TRUE(verify_witness(fk, fk, w).ok()) << name;
  }
}

TEST(Compare, SymmetricAndWitnessesReplay) {
  for (const auto& [a, A] : assembled())
    for (const auto& [b, B] : assembled()) {
      const auto ab = compare(A, B);
      const auto ba = compare(B, A);
      EXPECT_EQ(ab.outcome == Outcome::Distinguished, ba.outcome == Outcome::Distinguished) << a << " vs " << b;
      if (ab.witness) EXPECT_TRUE(verify_witness(A, B, *ab.witness).ok()) << a << " vs " << b;
    }
}

TEST(Compare, UnitClassSeparatesCircleFromMatrixCircle) {
  // Both are one-point spaces with K0 = K1 = Z; the units are 1 and 2.
  const auto& g1 = assembled().at("g1");
  const auto& c2 = assembled().at("cycle2");
  const auto v = compare(g1, c2);
  EXPECT_EQ(v.outcome, Outcome::Distinguished);
  EXPECT_GT(v.nodes, 0u);
  CompareOptions no_unit;
  no_unit.unital = false;
  const auto w = compare(g1, c2, no_unit);
  ASSERT_EQ(w.outcome, Outcome::Compatible);
  EXPECT_TRUE(verify_witness(g1, c2, *w.witness, no_unit).ok());
  EXPECT_FALSE(verify_witness(g1, c2, *w.witness).ok());
}

TEST(Compare, PointwiseStageDecidesDifferentFactors) {
  const auto v = compare(assembled().at("g1"), assembled().at("sink"));
  EXPECT_EQ(v.outcome, Outcome::Distinguished);
  EXPECT_EQ(v.nodes, 0u);
  const auto w = compare(assembled().at("g3"), assembled().at("two_loops"));
  EXPECT_EQ(w.outcome, Outcome::Distinguished);
  EXPECT_EQ(w.homeomorphisms, 0u);
}

TEST(Compare, AddingASourceKeepsGroupsAndMovesTheUnit) {
  for (const auto& [name, fk] : assembled()) {
    for (std::size_t v = 0; v < fk.graph.size(); ++v) {
      const FilteredK ext = assemble(with_source(fk.graph, v));
      ASSERT_EQ(ext.space.size(), fk.space.size()) << name;
      const auto homeos = poset_isomorphisms(fk.space, ext.space);
      ASSERT_FALSE(homeos.empty()) << name;
      EXPECT_TRUE(std::any_of(homeos.begin(), homeos.end(),
                              [&](const auto& h) { return !pointwise_mismatch(fk, ext, h).has_value(); }))
          << name;
      CompareOptions no_unit;
      no_unit.unital = false;
      EXPECT_NE(compare(fk, ext, no_unit).outcome, Outcome::Distinguished) << name;
    }
  }
}

TEST(Compare, NodeCapGivesUnknown) {
  const auto& A = assembled().at("mixed5");
  CompareOptions opts;
  opts.node_cap = 1;
  const auto v = compare(A, A, opts);
  EXPECT_EQ(v.outcome, Outcome::Unknown);
  EXPECT_FALSE(v.witness.has_value());
}

TEST(Compare, BudgetMustBePositive) {
  CompareOptions opts;
  opts.budget = 0;
  EXPECT_THROW(compare(assembled().at("g1"), assembled().at("g1"), opts), PreconditionError);
}

TEST(Witness, TamperedWitnessFailsReplay) {
  const auto& A = assembled().at("g4");
  auto v = compare(A, A);
  ASSERT_TRUE(v.witness);
  Witness w = *v.witness;
  w.alpha0[A.full] = IntMatrix{{-1}};
  EXPECT_FALSE(verify_witness(A, A, w).ok());
  w = *v.witness;
  w.point_map = {1, 0};
  EXPECT_FALSE(verify_witness(A, A, w).ok());
}

TEST(Checks, AllSuitesPassOnCorpus) {
  for (const auto& [name, g] : corpus())
    for (const Report& r : run_all_checks(g))
      EXPECT_TRUE(r.ok()) << name << " " << r.name << ": " << (r.failures.empty() ? "" : r.failures.front());
}
