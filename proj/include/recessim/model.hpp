#pragma once

#include <cstdint>
#include <vector>

#include "recessim/params.hpp"
#include "recessim/rng.hpp"
#include "recessim/smallworld.hpp"

namespace recessim {

// Binary recession indicator per country, 1 = in recession.
struct WorldState {
  std::vector<std::uint8_t> in_recession;

  static WorldState all_clear(int n) { return WorldState{std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0)}; }
  int count() const;
};

// Per-country rates drawn for a single step (or once per run for thresholds
// when redraw_thresholds_each_step is off).
struct StepDraws {
  std::vector<double> pi;   // entry probability, U[pi_lo, pi_hi)
  std::vector<double> rho;  // exit probability, U[rho_lo, rho_hi)
  std::vector<double> tau;  // cascade threshold, U[tau_floor, 1)
};

StepDraws draw_step_rates(const ModelParams& p, RandomStream& rng);
std::vector<double> draw_thresholds(const ModelParams& p, RandomStream& rng);

// Phase 1. A country in recession exits with probability rho_i and, having
// exited, immediately re-enters with probability pi_i (net exit rho*(1-pi)).
// A country not in recession enters with probability pi_i. Updates state in
// place; consumes exactly one uniform per in-recession country plus one more
// on exit, and one per out-of-recession country.
void stochastic_phase(WorldState& state, const StepDraws& draws,
                      RandomStream& rng);

// Phase 2. Weighted neighbor pressure
//   pressure_i = sum_{j in N(i), s_j=1} size_j / sum_{j in N(i)} size_j
// (isolated vertices have pressure 0). A country not in recession enters when
// pressure_i > tau_i strictly; the cascade never removes a recession. With
// fixed_point the synchronous pass repeats until no state changes, otherwise
// a single synchronous pass is applied.
int cascade_phase(WorldState& state, const Graph& g,
                  const std::vector<double>& sizes,
                  const std::vector<double>& tau, bool fixed_point);

// One full step: draw rates, stochastic phase, cascade phase. When
// fixed_thresholds is non-null it overrides the per-step tau draw (the draw
// still happens so the uniform stream advances identically in both modes).
void step(WorldState& state, const Graph& g, const std::vector<double>& sizes,
          const ModelParams& p, RandomStream& rng,
          const std::vector<double>* fixed_thresholds = nullptr);

}  // namespace recessim
