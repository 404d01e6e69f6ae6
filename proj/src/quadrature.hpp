#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "linalg.hpp"

namespace ncphase {

// Nodes and weights for int f(t) exp(-t^2) dt.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Cached per order; order in [1, 256].
const GaussHermiteRule& gauss_hermite(int order);

double integrate_gh_1d(const std::function<double(double)>& f, int order);

struct QuadratureRule {
  enum class Kind { GaussHermiteTensor, MonteCarlo };

  Kind kind = Kind::GaussHermiteTensor;
  int order_per_axis = 24;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 42;

  static QuadratureRule tensor(int order) { return {Kind::GaussHermiteTensor, order, 0, 0}; }
  static QuadratureRule monte_carlo(std::uint64_t samples, std::uint64_t seed) {
    return {Kind::MonteCarlo, 0, samples, seed};
  }
};

void validate(const QuadratureRule& rule);

// Deterministic per-point stream seed derived from a base seed.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

// Halton cloud (bases 2,3,5,7) in [lo, hi]^4 with a seeded Cranley-Patterson
// shift; seed 0 gives the unshifted sequence.
std::vector<PhasePoint> probe_cloud(std::size_t count, std::uint64_t seed, double lo, double hi);

}  // namespace ncphase
