#pragma once

#include "csst/csst.hpp"
#include "csst/rational.hpp"
#include "csst/tree.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace csst {

/// Deterministic model factory.
struct PerturbSpec {
  int level = 3;
  Rational factor_lo{1};
  Rational factor_hi{1};
  std::uint64_t seed = 0;
};

struct RandomTrivalentSpec {
  int branch_points = 8;
  std::uint64_t seed = 0;
};

SimplicialMetricTree make_jn_model(int level, const WordBudget& budget = {});
/// J_n with every edge length multiplied by an independent rational factor
/// drawn from [lo, hi]; geodesic mode (the embedding no longer matches).
SimplicialMetricTree make_perturbed_model(const PerturbSpec& spec, const WordBudget& budget = {});
/// Trivalent tree grown by midpoint-sprouting: exactly `branch_points`
/// branch points, all of degree 3.
SimplicialMetricTree make_random_trivalent(const RandomTrivalentSpec& spec);

/// Discretized Brownian excursion on m steps (m a power of two), via the
/// cyclic-shift construction over a +-1 bridge. Values are exact multiples
/// of `scale` (about 1/sqrt(m)).
struct ExcursionSample {
  std::size_t resolution = 0;      // m
  std::uint64_t seed = 0;
  Rational scale{1};               // declared precision of the values
  std::vector<long> units;         // e(j/m) = units[j] * scale, j = 0..m
  Rational value(std::size_t j) const { return scale * units[j]; }
};

ExcursionSample brownian_excursion(std::size_t resolution, std::uint64_t seed);

/// Pseudo-metric d_e(s,t) = e(s) + e(t) - 2 inf e over [s,t], in units.
long excursion_dist_units(const ExcursionSample& e, std::size_t s, std::size_t t);

struct CrtQuotient {
  SimplicialMetricTree tree;
  std::vector<int> vertex_of_grid;  // grid index -> tree vertex
  int max_degree = 0;               // > 3 possible on coarse grids; recorded
};

/// Quotient tree of the excursion: grid points identified at d_e = 0,
/// degree-2 chains contracted; edges shorter than epsilon merged (default 0).
CrtQuotient crt_quotient(const ExcursionSample& e, const Rational& epsilon = Rational(0));

}  // namespace csst
