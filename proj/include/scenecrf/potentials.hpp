#pragma once

#include <array>
#include <stdexcept>

namespace scenecrf {

// Interaction state of a pedestrian pair: 0 = inconsistent intentions,
// 1 = consistent not-crossing, 2 = consistent crossing.
enum class InteractionState : int { Inconsistent = 0, BothNotCrossing = 1, BothCrossing = 2 };

// Lower clamp for probabilities entering a logarithm, keeping every
// potential finite at p in {0,1}.
struct ProbClamp {
  double epsilon;

  explicit ProbClamp(double eps = 1e-7) : epsilon(eps) {
    if (!(eps > 0.0 && eps < 0.5))
      throw std::invalid_argument("ProbClamp: epsilon must lie in (0, 0.5)");
  }

  double apply(double p) const {
    if (p < epsilon) return epsilon;
    if (p > 1.0 - epsilon) return 1.0 - epsilon;
    return p;
  }
};

// The pair-configuration mapping: (0,0) -> 1, (1,1) -> 2, mixed -> 0.
// Symmetric in its arguments.
InteractionState interaction_state(int y_i, int y_j);

// Negative log-likelihood of assigning label y_i under crossing
// probability p_i (clamped). Always >= 0.
double unary_potential(int y_i, double p_i, const ProbClamp& clamp);

// Negative log of the interaction-state component selected by
// interaction_state(y_i, y_j). Throws std::invalid_argument when probs
// is not a probability simplex.
double pp_potential(int y_i, int y_j, const std::array<double, 3>& probs, const ProbClamp& clamp);

// Cost of intention y_i under environment support probability p_ie;
// same functional form as unary_potential.
double pe_potential(int y_i, double p_ie, const ProbClamp& clamp);

}  // namespace scenecrf
