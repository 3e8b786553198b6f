#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace recessim {

struct KsResult {
  double d = 0.0;
  double p_value = 1.0;
};

// Asymptotic Kolmogorov-Smirnov tail Q(lambda) = 2 sum_{j>=1} (-1)^{j-1}
// exp(-2 j^2 lambda^2); returns 1.0 when the series fails to converge
// (lambda ~ 0).
double kolmogorov_q(double lambda);

// One-sample KS test of `sample` against Exp(rate). Uses the small-sample
// corrected statistic lambda = (sqrt(n) + 0.12 + 0.11/sqrt(n)) * D.
KsResult ks_one_sample_exp(const std::vector<double>& sample, double rate);

// Two-sample KS test with effective size n_x*n_y/(n_x+n_y).
KsResult ks_two_sample(std::vector<double> x, std::vector<double> y);

struct RateFit {
  double rate = 0.0;
  KsResult ks;
};

// Exponential rate minimizing the KS distance of `sample` to Exp(rate)
// (equivalently maximizing the p-value): coarse grid over
// [1e-3, 10] in steps of 1e-3 followed by golden-section refinement of the
// best bracket.
RateFit fit_exp_rate_max_p(const std::vector<double>& sample);

double pearson(const std::vector<double>& x, const std::vector<double>& y);

// Flattens a value -> count histogram into the sample it tallies, in
// ascending value order, so histogram-level results can feed the KS tests.
std::vector<double> expand_counts(const std::map<int, std::int64_t>& counts);
// Same for a dense histogram where the index is the value.
std::vector<double> expand_counts(const std::vector<std::int64_t>& hist);

// Histogram counts over the inclusive value range [lo, hi] as doubles,
// zero-filled, for correlating two histograms over a common support.
std::vector<double> counts_in_range(const std::map<int, std::int64_t>& counts,
                                    int lo, int hi);

struct FitResult {
  double a = 0.0;
  double b = 0.0;
  double se_a = 0.0;
  double se_b = 0.0;
  std::vector<double> fitted;
  double rss = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Nonlinear least squares for y ~ exp(a + b*x) by Gauss-Newton with step
// halving, initialized from the log-linear fit on positive y. Standard
// errors from sqrt(diag((J'J)^-1) * rss/(n-2)).
FitResult nls_exp(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace recessim
