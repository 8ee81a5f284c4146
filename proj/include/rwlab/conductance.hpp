// conductance.hpp - exact and sweep conductance, and the spectral sandwich.
//
// For a reversible chain with ergodic flow Q(x, y) = pi(x) P[x][y],
//   Phi = min over nonempty S with pi(S) <= 1/2 of Q(S, S^c) / pi(S).
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rwlab/graph.hpp"
#include "rwlab/markov.hpp"
#include "rwlab/scheme.hpp"

namespace rwlab {

inline constexpr std::size_t kConductanceCap = 22;

enum class ConductanceMethod { exact_enumeration, sweep_upper_bound };

struct ConductanceResult {
  double phi = 0.0;
  std::vector<Vertex> subset;  // argmin, pi(subset) <= 1/2
  ConductanceMethod method = ConductanceMethod::exact_enumeration;

  std::string to_json() const;
};

/// Enumerates every cut by walking a Gray code over subsets containing
/// vertex 0 and scoring the lighter side. n <= 22, SizeError otherwise.
ConductanceResult conductance_exact(const TransitionKernel& k);
ConductanceResult conductance_exact(const Graph& g, std::optional<Scheme> scheme = {}, bool lazy = false);

/// Best prefix cut of the vertices ordered by v_2(x) / sqrt(pi_x); an upper bound on Phi.
ConductanceResult conductance_sweep(const TransitionKernel& k);
ConductanceResult conductance_sweep(const Graph& g, std::optional<Scheme> scheme = {}, bool lazy = false);

/// Cut ratio Q(S, S^c) / min(pi(S), pi(S^c)) of an arbitrary proper subset.
double cut_ratio(const TransitionKernel& k, const std::vector<Vertex>& subset);

struct SandwichMargins {
  double phi = 0.0;       // exact conductance of the lazy chain
  double gap = 0.0;       // 1 - lambda_2 of the lazy chain
  double lower = 0.0;     // gap - phi^2 / 2
  double upper = 0.0;     // 2 phi - gap
};

/// Uses the lazy kernel of g (with `scheme`, or g's own weights).
SandwichMargins jerrum_sinclair_check(const Graph& g, std::optional<Scheme> scheme = {});

/// Smallest t with sqrt(max pi / min pi) (1 - phi^2/2)^t <= n^-3.
std::size_t mixing_from_conductance(const TransitionKernel& lazy_kernel, double phi);

}  // namespace rwlab
