#pragma once

// Corpus access and brute-force oracles shared by the test binaries. The
// oracles work straight from the definitions and share no code paths with
// the library beyond the Graph container.

#include <algorithm>
#include <filesystem>
#include <functional>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fkgraph/fkgraph.hpp"

namespace fktest {

using namespace fkgraph;

inline Graph load(const std::string& name) {
  std::ifstream in(std::string(FK_CORPUS_DIR) + "/" + name + ".graph");
  if (!in) throw std::runtime_error("missing corpus graph " + name);
  return parse_graph(in);
}

/// Every corpus graph by stem, sorted.
inline std::map<std::string, Graph> corpus() {
  std::map<std::string, Graph> out;
  for (const auto& entry : std::filesystem::directory_iterator(FK_CORPUS_DIR))
    if (entry.path().extension() == ".graph") out.emplace(entry.path().stem().string(), load(entry.path().stem().string()));
  return out;
}

inline std::map<std::string, Graph> row_finite_corpus() {
  auto all = corpus();
  std::erase_if(all, [](const auto& kv) { return !kv.second.row_finite(); });
  return all;
}

// ---------------------------------------------------------------------------
// Graph oracles

inline bool bfs_reaches(const Graph& g, std::size_t v, std::size_t w) {
  std::vector<bool> seen(g.size(), false);
  std::vector<std::size_t> queue{v};
  seen[v] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t x = queue[head];
    if (x == w) return true;
    for (std::size_t y = 0; y < g.size(); ++y)
      if (!g.mult(x, y).is_zero() && !seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
  }
  return false;
}

inline std::vector<std::size_t> members(std::uint64_t mask, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if ((mask >> i) & 1U) out.push_back(i);
  return out;
}

inline bool oracle_hereditary(const Graph& g, std::uint64_t H) {
  for (std::size_t v : members(H, g.size()))
    for (std::size_t w = 0; w < g.size(); ++w)
      if (!g.mult(v, w).is_zero() && !((H >> w) & 1U)) return false;
  return true;
}

inline bool oracle_regular(const Graph& g, std::size_t v) {
  bool any = false;
  for (std::size_t w = 0; w < g.size(); ++w) {
    if (g.mult(v, w).is_infinite()) return false;
    any = any || !g.mult(v, w).is_zero();
  }
  return any;
}

inline bool oracle_saturated(const Graph& g, std::uint64_t H) {
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (((H >> v) & 1U) || !oracle_regular(g, v)) continue;
    bool inside = true;
    for (std::size_t w = 0; w < g.size(); ++w)
      if (!g.mult(v, w).is_zero() && !((H >> w) & 1U)) inside = false;
    if (inside) return false;
  }
  return true;
}

/// Hereditary saturated subsets as masks, by scanning every subset.
inline std::vector<std::uint64_t> oracle_hs_sets(const Graph& g) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t H = 0; H < (std::uint64_t{1} << g.size()); ++H)
    if (oracle_hereditary(g, H) && oracle_saturated(g, H)) out.push_back(H);
  return out;
}

/// Number of return paths at v of length <= max_len (edges with multiplicity
/// counted separately), capped at 2. Enumerates walks explicitly.
inline int oracle_return_paths(const Graph& g, std::size_t v, std::size_t max_len) {
  long long count = 0;
  std::vector<bool> back(g.size());
  for (std::size_t w = 0; w < g.size(); ++w) back[w] = bfs_reaches(g, w, v);
  // DFS over (vertex, length, weight); weight = number of edge choices so far.
  struct Frame {
    std::size_t at;
    std::size_t len;
    long long weight;
  };
  std::vector<Frame> stack{{v, 0, 1}};
  while (!stack.empty() && count < 2) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.len == max_len) continue;
    for (std::size_t w = 0; w < g.size(); ++w) {
      const auto m = g.mult(f.at, w);
      if (m.is_zero()) continue;
      const long long k = m.is_infinite() ? 2 : static_cast<long long>(std::min<std::uint64_t>(m.count(), 2));
      const long long weight = std::min<long long>(2, f.weight * k);
      if (w == v)
        count += weight;
      else if (back[w])
        stack.push_back({w, f.len + 1, weight});
    }
  }
  return static_cast<int>(std::min<long long>(count, 2));
}

inline bool oracle_condition_K(const Graph& g) {
  for (std::size_t v = 0; v < g.size(); ++v)
    if (oracle_return_paths(g, v, 2 * g.size()) == 1) return false;
  return true;
}

inline Graph permuted(const Graph& g, const std::vector<std::size_t>& order) {
  Graph out;
  for (std::size_t i : order) out.add_vertex(g.name(i));
  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = 0; b < order.size(); ++b)
      if (!g.mult(order[a], order[b]).is_zero()) out.add_edges(a, b, g.mult(order[a], order[b]));
  return out;
}

inline Graph random_graph(std::mt19937& rng, std::size_t n, int max_mult, double density) {
  Graph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> mult(1, max_mult);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w)
      if (coin(rng) < density) g.add_edges(v, w, Multiplicity(static_cast<std::uint64_t>(mult(rng))));
  return g;
}

// ---------------------------------------------------------------------------
// Integer oracles

/// Determinant by cofactor expansion.
inline BigInt cofactor_det(const std::vector<std::vector<BigInt>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  BigInt det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<BigInt>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<BigInt> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(std::move(row));
    }
    const BigInt term = a[0][c] * cofactor_det(minor);
    det += (c % 2 == 0) ? term : BigInt(-term);
  }
  return det;
}

inline BigInt big_gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline void for_each_combination(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Smith diagonal from determinantal divisors: d_k = gcd of all k x k minors,
/// s_k = d_k / d_{k-1}. Returns min(rows, cols) entries.
inline std::vector<BigInt> oracle_smith_diagonal(const IntMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols(), n = std::min(r, c);
  std::vector<BigInt> d{1};
  for (std::size_t k = 1; k <= n; ++k) {
    BigInt g = 0;
    for_each_combination(r, k, [&](const std::vector<std::size_t>& rows) {
      for_each_combination(c, k, [&](const std::vector<std::size_t>& cols) {
        std::vector<std::vector<BigInt>> sub(k, std::vector<BigInt>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m(rows[i], cols[j]);
        g = big_gcd(g, cofactor_det(sub));
      });
    });
    d.push_back(g);
  }
  std::vector<BigInt> s;
  for (std::size_t k = 1; k <= n; ++k) s.push_back(d[k] == 0 ? BigInt(0) : BigInt(d[k] / d[k - 1]));
  return s;
}

/// Cokernel invariant factors of m (rows x cols) with unit factors dropped:
/// torsion factors > 1 ascending, then one 0 per free generator.
inline std::vector<BigInt> oracle_cokernel_factors(const IntMatrix& m) {
  std::vector<BigInt> out;
  std::size_t nonzero = 0;
  for (const auto& s : oracle_smith_diagonal(m)) {
    if (s == 0) continue;
    ++nonzero;
    if (s > 1) out.push_back(s);
  }
  for (std::size_t i = nonzero; i < m.rows(); ++i) out.push_back(0);
  return out;
}

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

inline bool is_diagonal_chain(const IntMatrix& S) {
  for (std::size_t i = 0; i < S.rows(); ++i)
    for (std::size_t j = 0; j < S.cols(); ++j)
      if (i != j && S(i, j) != 0) return false;
  const std::size_t n = std::min(S.rows(), S.cols());
  for (std::size_t i = 0; i < n; ++i) {
    if (S(i, i) < 0) return false;
    if (i + 1 < n) {
      const BigInt& a = S(i, i);
      const BigInt& b = S(i + 1, i + 1);
      if (a == 0 ? b != 0 : b % a != 0) return false;
    }
  }
  return true;
}

inline IntVector vec(std::initializer_list<long long> xs) {
  IntVector v;
  for (long long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace fktest
