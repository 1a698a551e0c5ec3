// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <iostream>
#include <set>

#include "support.hpp"

using namespace fkgraph;
using namespace fktest;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    pass = false;
    if (failures.size() < 10) failures.push_back(what);
  }
};

int g_failed = 0;

void report(int n, const std::string& title, const Result& o) {
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << title;
  if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
  std::cout << '\n';
  for (const auto& f : o.failures) std::cout << "    " << f << '\n';
  if (!o.pass) ++g_failed;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << s << " s";
  return os.str();
}

SpectrumSpace space_of(const Graph& g) { return SpectrumSpace(enumerate_admissible_pairs(g)); }

VertexSet vs(const Graph& g, std::initializer_list<const char*> names) {
  VertexSet s;
  for (const char* n : names) s.insert(g.index_of(n));
  return s;
}

// 1. Closure axioms, exhaustively over every subset of points.
Result kuratowski(const std::map<std::string, Graph>& corpus) {
  Result o;
  const auto t0 = std::chrono::steady_clock::now();
  bool has_inf = false;
  std::size_t subsets = 0;
  o.require(corpus.size() >= 12, "corpus has fewer than 12 graphs");
  for (const auto& [name, g] : corpus) {
    o.require(g.size() >= 1 && g.size() <= 6, name + ": vertex count outside 1..6");
    has_inf = has_inf || !g.row_finite();
    const SpectrumSpace sp = space_of(g);
    o.require(sp.closure(PointSet{}) == PointSet{}, name + ": closure of the empty set is not empty");
    sp.all().for_each_subset([&](PointSet A) {
      ++subsets;
      const PointSet cA = sp.closure(A);
      o.require(A.subset_of(cA), name + ": closure not extensive at " + format_points(A));
      o.require(sp.closure(cA) == cA, name + ": closure not idempotent at " + format_points(A));
      sp.all().for_each_subset([&](PointSet B) {
        o.require(sp.closure(A | B) == (cA | sp.closure(B)),
                  name + ": closure does not distribute over " + format_points(A) + " u " + format_points(B));
      });
    });
    const Report r = verify_kuratowski(sp);
    o.require(r.ok(), name + ": " + (r.failures.empty() ? "" : r.failures.front()));
  }
  o.require(has_inf, "corpus has no INF-multiplicity graph");
  const double t = seconds_since(t0);
  o.require(t < 5.0, "runtime " + fmt_seconds(t) + " exceeds 5 s");
  o.detail = std::to_string(corpus.size()) + " graphs, " + std::to_string(subsets) + " subsets, " + fmt_seconds(t);
  return o;
}

// 2. phi and gamma are mutually inverse and order preserving.
Result lattice_iso(const std::map<std::string, Graph>& corpus) {
  Result o;
  std::size_t checks = 0;
  for (const auto& [name, g] : corpus) {
    const SpectrumSpace sp = space_of(g);
    const auto& L = sp.lattice();
    for (std::size_t I = 0; I < L.size(); ++I) {
      o.require(sp.phi(sp.gamma(I)) == I, name + ": phi(gamma(I)) != I");
      for (std::size_t J = 0; J < L.size(); ++J) {
        ++checks;
        o.require(L.leq(I, J) == sp.gamma(I).subset_of(sp.gamma(J)), name + ": gamma not an order isomorphism");
      }
    }
    for (const PointSet& U : sp.opens()) {
      o.require(sp.gamma(sp.phi(U)) == U, name + ": gamma(phi(U)) != U");
      for (const PointSet& V : sp.opens())
        o.require(U.subset_of(V) == L.leq(sp.phi(U), sp.phi(V)), name + ": phi not order preserving");
    }
    // Every open set of the topology is some gamma(I).
    std::size_t opens = 0;
    sp.all().for_each_subset([&](PointSet U) {
      const PointSet C = U.complement(sp.size());
      if (sp.closure(C) == C) {
        ++opens;
        o.require(sp.is_open(U), name + ": open set " + format_points(U) + " missing from gamma's image");
      }
    });
    o.require(opens == L.size(), name + ": open set count differs from lattice size");
    const Report r = verify_lattice_isomorphism(sp);
    o.require(r.ok(), name + ": " + (r.failures.empty() ? "" : r.failures.front()));
  }
  o.detail = std::to_string(checks) + " order comparisons";
  return o;
}

// 3. Each proper ideal is the meet of the points above it.
Result kernel_identity(const std::map<std::string, Graph>& corpus) {
  Result o;
  std::size_t pairs = 0;
  for (const auto& [name, g] : corpus) {
    const SpectrumSpace sp = space_of(g);
    const auto& L = sp.lattice();
    for (std::size_t I = 0; I < L.size(); ++I) {
      if (I == L.top()) continue;
      ++pairs;
      std::size_t meet = L.top();
      for (std::size_t p = 0; p < sp.size(); ++p)
        if (pair_leq(L.pair(I), L.pair(sp.point(p)))) meet = L.meet(meet, sp.point(p));
      o.require(meet == I, name + ": kernel identity fails");
    }
  }
  o.detail = std::to_string(pairs) + " proper admissible pairs";
  return o;
}

bool same_kdata(const KData& a, const KData& b) {
  return a.D == b.D && a.regular == b.regular && a.B == b.B && a.K0.factors == b.K0.factors &&
         a.K0.project == b.K0.project && a.K1.factors == b.K1.factors && a.K1.lift == b.K1.lift &&
         a.cone_generators == b.cone_generators && a.unit_class == b.unit_class;
}

// 4. D and the K-data depend only on the point set.
Result well_defined(const std::map<std::string, Graph>& corpus) {
  Result o;
  std::size_t presentations = 0;
  for (const auto& [name, g] : corpus) {
    const SpectrumSpace sp = space_of(g);
    const auto& L = sp.lattice();
    for (const auto& Y : sp.locally_closed_sets()) {
      const std::optional<KData> canonical = g.row_finite() ? std::optional<KData>(k_data(g, sp, Y)) : std::nullopt;
      for (auto [u, v] : sp.presentations(Y.points)) {
        ++presentations;
        const VertexSet D = L.pair(u).H - L.pair(v).H;
        o.require(D == Y.D, name + ": D differs between presentations of " + format_points(Y.points));
        if (canonical)
          o.require(same_kdata(k_data_for(g, D), *canonical),
                    name + ": K-data differs between presentations of " + format_points(Y.points));
      }
    }
  }
  o.detail = std::to_string(presentations) + " presentations";
  return o;
}

// 5. Six-term exactness for every open triple.
Result exactness(const std::map<std::string, Graph>& corpus) {
  Result o;
  std::size_t triples = 0;
  for (const auto& [name, g] : corpus) {
    if (!g.row_finite()) continue;
    const SpectrumSpace sp = space_of(g);
    const std::size_t n = sp.lattice().size();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          if (!sp.opens()[a].subset_of(sp.opens()[b]) || !sp.opens()[b].subset_of(sp.opens()[c])) continue;
          ++triples;
          try {
            const SixTerm s = six_term(g, sp, a, b, c);
            const auto d = six_term_defects(s);
            o.require(d.empty(), name + ": " + (d.empty() ? "" : d.front()));
          } catch (const InvariantViolation& e) {
            o.require(false, name + ": " + e.what());
          }
        }
  }
  o.detail = std::to_string(triples) + " triples, 6 positions each";
  return o;
}

// 6. Fixed K-theory values, against frozen hand computations.
Result fixed_values() {
  Result o;
  auto full = [](const Graph& g) {
    const SpectrumSpace sp = space_of(g);
    return k_data(g, sp, sp.canonical(sp.all()));
  };
  auto check = [&](const std::string& name, const IntMatrix& B, std::initializer_list<long long> k0,
                   std::initializer_list<long long> k1) {
    const KData k = full(load(name));
    o.require(k.B == B, name + ": B matrix");
    o.require(k.K0.factors == vec(k0), name + ": K0 is " + k.K0.describe());
    o.require(k.K1.factors == vec(k1), name + ": K1 is " + k.K1.describe());
    const auto oracle = oracle_cokernel_factors(B);
    o.require(k.K0.factors == IntVector(oracle.begin(), oracle.end()), name + ": K0 disagrees with minors oracle");
  };
  check("g1", IntMatrix{{0}}, {0}, {0});
  check("o2", IntMatrix{{1}}, {}, {});
  check("g4", IntMatrix{{0, 0}, {1, 0}}, {0}, {0});
  check("complete2", IntMatrix{{0, 1}, {1, 0}}, {}, {});

  const Graph g4 = load("g4");
  const KData k = full(g4);
  o.require(k.unit_class == vec({1}), "g4: unit class is not 1");
  o.require(k.cone_generators == std::vector<IntVector>{vec({1}), vec({0})}, "g4: vertex classes are not (1, 0)");
  const SpectrumSpace sp = space_of(g4);
  const auto& L = sp.lattice();
  const SixTerm s = six_term(g4, sp, L.bottom(), L.index_of({vs(g4, {"2"}), {}}), L.top());
  o.require(is_isomorphism(s.quot.K1, s.sub.K0, s.partial), "g4: boundary map over H = {2} is not an isomorphism");
  o.require(s.pi1.is_zero(), "g4: pi1 over H = {2} is not zero");
  o.detail = "G1 (Z, Z), O2 (0, 0), G4 (Z, Z) unit 1, complete-2 (0, 0)";
  return o;
}

// 7. Comparison fixtures.
Result compare_fixtures(const std::map<std::string, Graph>& corpus) {
  Result o;
  double worst = 0;
  auto timed = [&](const FilteredK& A, const FilteredK& B, const std::string& label) {
    const auto t0 = std::chrono::steady_clock::now();
    CompareVerdict v = compare(A, B);
    const double t = seconds_since(t0);
    worst = std::max(worst, t);
    o.require(t < 10.0, label + ": took " + fmt_seconds(t));
    return v;
  };
  const FilteredK g1 = assemble(load("g1")), o2 = assemble(load("o2")), c2 = assemble(load("complete2"));
  o.require(timed(g1, o2, "g1 vs o2").outcome == fkgraph::Outcome::Distinguished, "g1 vs o2 is not DISTINGUISHED");
  {
    const CompareVerdict v = timed(o2, c2, "o2 vs complete2");
    o.require(v.outcome == fkgraph::Outcome::Compatible, "o2 vs complete2 is not COMPATIBLE");
    if (v.witness) {
      const Report r = verify_witness(o2, c2, *v.witness);
      o.require(r.ok(), "o2 vs complete2 witness does not replay");
    }
  }
  std::size_t selfs = 0;
  for (const auto& [name, g] : corpus) {
    if (!g.row_finite()) continue;
    const FilteredK A = assemble(g);
    const CompareVerdict v = timed(A, A, name + " vs itself");
    ++selfs;
    o.require(v.outcome == fkgraph::Outcome::Compatible, name + " vs itself: " + v.reason);
    if (v.witness) o.require(verify_witness(A, A, *v.witness).ok(), name + " vs itself: witness does not replay");
  }
  o.detail = std::to_string(selfs) + " self-comparisons (row-finite graphs), slowest " + fmt_seconds(worst);
  return o;
}

// 8. Condition (K).
Result condition_k(const std::map<std::string, Graph>& corpus) {
  Result o;
  o.require(!satisfies_condition_K(load("g1")), "g1 satisfies Condition (K)");
  o.require(satisfies_condition_K(load("o2")), "o2 fails Condition (K)");
  o.require(satisfies_condition_K(load("sink")), "sink fails Condition (K)");
  std::size_t graphs = 0;
  for (const auto& [name, g] : corpus) {
    if (!g.row_finite()) continue;
    ++graphs;
    o.require(satisfies_condition_K(g) == oracle_condition_K(g), name + ": disagrees with return-path enumeration");
  }
  o.detail = std::to_string(graphs) + " row-finite graphs cross-checked";
  return o;
}

// 9. Randomized Smith normal form.
Result smith_random() {
  Result o;
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int i = 0; i < 1000; ++i) {
    const IntMatrix M = random_matrix(rng, static_cast<std::size_t>(dim(rng)), static_cast<std::size_t>(dim(rng)), -9, 9);
    const SmithForm f = smith_normal_form(M);
    const std::string tag = "matrix #" + std::to_string(i);
    o.require(f.P * M * f.Q == f.S, tag + ": P M Q != S");
    const BigInt dp = determinant(f.P), dq = determinant(f.Q);
    o.require((dp == 1 || dp == -1) && (dq == 1 || dq == -1), tag + ": P or Q not unimodular");
    o.require(is_diagonal_chain(f.S), tag + ": S is not a divisibility chain");
    const auto want = oracle_smith_diagonal(M);
    o.require(f.diagonal() == IntVector(want.begin(), want.end()), tag + ": diagonal disagrees with minors oracle");
  }
  o.detail = "1000 matrices up to 6x6, entries in [-9, 9]";
  return o;
}

}  // namespace

int main() {
  const auto corpus = fktest::corpus();
  report(1, "closure axioms hold exhaustively on the corpus", kuratowski(corpus));
  report(2, "open sets and ideals are isomorphic lattices", lattice_iso(corpus));
  report(3, "every proper ideal is the kernel of its hull", kernel_identity(corpus));
  report(4, "subquotient data independent of presentation", well_defined(corpus));
  report(5, "six-term sequences exact for every open triple", exactness(corpus));
  report(6, "fixed K-theory values", fixed_values());
  report(7, "comparison fixtures", compare_fixtures(corpus));
  report(8, "Condition (K) fixtures and enumeration cross-check", condition_k(corpus));
  report(9, "randomized Smith normal form", smith_random());
  std::cout << (g_failed == 0 ? "ALL PASS" : std::to_string(g_failed) + " criteria FAILED") << '\n';
  return g_failed == 0 ? 0 : 1;
}
