#include "scenecrf/potentials.hpp"

#include <cmath>

namespace scenecrf {

namespace {

void check_label(int y, const char* where) {
  if (y != 0 && y != 1) throw std::invalid_argument(std::string(where) + ": label must be 0 or 1");
}

}  // namespace

InteractionState interaction_state(int y_i, int y_j) {
  check_label(y_i, "interaction_state");
  check_label(y_j, "interaction_state");
  if (y_i != y_j) return InteractionState::Inconsistent;
  return y_i == 0 ? InteractionState::BothNotCrossing : InteractionState::BothCrossing;
}

double unary_potential(int y_i, double p_i, const ProbClamp& clamp) {
  check_label(y_i, "unary_potential");
  const double p = clamp.apply(p_i);
  return y_i == 1 ? -std::log(p) : -std::log(1.0 - p);
}

double pp_potential(int y_i, int y_j, const std::array<double, 3>& probs, const ProbClamp& clamp) {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw std::invalid_argument("pp_potential: simplex component negative");
    sum += p;
  }
  if (!(std::abs(sum - 1.0) <= 1e-9))
    throw std::invalid_argument("pp_potential: components do not sum to 1");
  const int k = static_cast<int>(interaction_state(y_i, y_j));
  return -std::log(clamp.apply(probs[static_cast<std::size_t>(k)]));
}

double pe_potential(int y_i, double p_ie, const ProbClamp& clamp) {
  check_label(y_i, "pe_potential");
  const double p = clamp.apply(p_ie);
  return y_i == 1 ? -std::log(p) : -std::log(1.0 - p);
}

}  // namespace scenecrf
