// Enumeration of small pointed metric spaces shared by the unit tests and
// the acceptance runner.
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "egh/gh.hpp"
#include "egh/isometry.hpp"
#include "egh/metric.hpp"

namespace egh::testing {

// All pointed metric spaces on 1..max_points points with distances drawn from
// `values`, one representative per pointed isometry class, basepoint 0.
inline std::vector<FiniteMetricSpace> small_pointed_spaces(int max_points, const std::vector<int>& values) {
  std::vector<FiniteMetricSpace> out;
  for (int n = 1; n <= max_points; ++n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    std::map<std::vector<int>, bool> seen;
    std::vector<int> code(edges.size(), 0);
    while (true) {
      std::vector<int> d(n * n, 0);
      for (size_t e = 0; e < edges.size(); ++e) {
        auto [i, j] = edges[e];
        d[i * n + j] = d[j * n + i] = values[code[e]];
      }
      bool metric = true;
      for (int i = 0; i < n && metric; ++i)
        for (int j = 0; j < n && metric; ++j)
          for (int k = 0; k < n && metric; ++k) metric = d[i * n + k] <= d[i * n + j] + d[j * n + k];
      if (metric) {
        // Canonical form: smallest relabelling that keeps 0 fixed.
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<int> best;
        do {
          std::vector<int> c(n * n);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) c[i * n + j] = d[perm[i] * n + perm[j]];
          if (best.empty() || c < best) best = c;
        } while (std::next_permutation(perm.begin() + 1, perm.end()));
        if (!seen[best]) {
          seen[best] = true;
          out.emplace_back(n, std::vector<double>(best.begin(), best.end()), 0);
        }
      }
      size_t e = 0;
      while (e < code.size() && ++code[e] == static_cast<int>(values.size())) code[e++] = 0;
      if (e == code.size()) break;
    }
  }
  return out;
}

// Every subgroup of order <= max_order of the full isometry group, as triples.
inline std::vector<Triple> small_group_triples(const FiniteMetricSpace& m, int max_order) {
  Triple full = full_triple(m);
  std::vector<Triple> out;
  for (const Subgroup& H : enumerate_subgroups(full.G())) {
    if (static_cast<int>(H.size()) > max_order) continue;
    std::vector<Perm> gens;
    for (int h : H) gens.push_back(full.G().element(h));
    out.push_back(make_triple(m, gens));
  }
  return out;
}

}  // namespace egh::testing
