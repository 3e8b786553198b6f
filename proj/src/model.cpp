#include "recessim/model.hpp"

#include <numeric>

#include "recessim/errors.hpp"

namespace recessim {

int WorldState::count() const {
  return std::accumulate(in_recession.begin(), in_recession.end(), 0);
}

StepDraws draw_step_rates(const ModelParams& p, RandomStream& rng) {
  StepDraws draws;
  const std::size_t n = static_cast<std::size_t>(p.n_countries);
  draws.pi.resize(n);
  draws.rho.resize(n);
  for (std::size_t i = 0; i < n; ++i) draws.pi[i] = rng.uniform(p.pi_lo, p.pi_hi);
  for (std::size_t i = 0; i < n; ++i) draws.rho[i] = rng.uniform(p.rho_lo, p.rho_hi);
  draws.tau = draw_thresholds(p, rng);
  return draws;
}

std::vector<double> draw_thresholds(const ModelParams& p, RandomStream& rng) {
  std::vector<double> tau(static_cast<std::size_t>(p.n_countries));
  for (auto& t : tau) t = rng.uniform(p.tau_floor, 1.0);
  return tau;
}

void stochastic_phase(WorldState& state, const StepDraws& draws,
                      RandomStream& rng) {
  for (std::size_t i = 0; i < state.in_recession.size(); ++i) {
    if (state.in_recession[i]) {
      if (rng.bernoulli(draws.rho[i])) {
        state.in_recession[i] = rng.bernoulli(draws.pi[i]) ? 1 : 0;
      }
    } else {
      if (rng.bernoulli(draws.pi[i])) state.in_recession[i] = 1;
    }
  }
}

int cascade_phase(WorldState& state, const Graph& g,
                  const std::vector<double>& sizes,
                  const std::vector<double>& tau, bool fixed_point) {
  const int n = static_cast<int>(state.in_recession.size());
  if (g.n != n || static_cast<int>(sizes.size()) != n ||
      static_cast<int>(tau.size()) != n)
    throw ConfigError("cascade inputs disagree on country count");

  int added_total = 0;
  while (true) {
    const std::vector<std::uint8_t> snapshot = state.in_recession;
    int added = 0;
    for (int i = 0; i < n; ++i) {
      if (snapshot[i]) continue;
      double total_weight = 0.0;
      double recession_weight = 0.0;
      for (int j : g.adjacency[i]) {
        total_weight += sizes[j];
        if (snapshot[j]) recession_weight += sizes[j];
      }
      if (total_weight <= 0.0) continue;
      if (recession_weight / total_weight > tau[i]) {
        state.in_recession[i] = 1;
        ++added;
      }
    }
    added_total += added;
    // Each pass only adds recessions, so iterating to the fixed point
    // terminates in at most n passes.
    if (!fixed_point || added == 0) break;
  }
  return added_total;
}

void step(WorldState& state, const Graph& g, const std::vector<double>& sizes,
          const ModelParams& p, RandomStream& rng,
          const std::vector<double>* fixed_thresholds) {
  StepDraws draws = draw_step_rates(p, rng);
  const std::vector<double>& tau =
      fixed_thresholds != nullptr ? *fixed_thresholds : draws.tau;
  stochastic_phase(state, draws, rng);
  cascade_phase(state, g, sizes, tau, p.cascade_fixed_point);
}

}  // namespace recessim
