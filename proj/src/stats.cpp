#include "recessim/stats.hpp"

#include <algorithm>
#include <cmath>

#include "recessim/errors.hpp"

namespace recessim {

double kolmogorov_q(double lambda) {
  const double a2 = -2.0 * lambda * lambda;
  double sum = 0.0;
  double sign = 1.0;
  double prev_term = 0.0;
  for (int j = 1; j <= 100; ++j) {
    double term = 2.0 * sign * std::exp(a2 * j * j);
    sum += term;
    double mag = std::abs(term);
    if (mag <= 0.001 * prev_term || mag <= 1e-8 * sum)
      return std::clamp(sum, 0.0, 1.0);
    sign = -sign;
    prev_term = mag;
  }
  return 1.0;  // series did not converge (lambda ~ 0)
}

namespace {

double corrected_lambda(double n_eff, double d) {
  double sq = std::sqrt(n_eff);
  return (sq + 0.12 + 0.11 / sq) * d;
}

double exp_cdf(double x, double rate) {
  return x <= 0.0 ? 0.0 : 1.0 - std::exp(-rate * x);
}

// Sup distance between the empirical CDF of a sorted sample and Exp(rate).
double ks_stat_exp_sorted(const std::vector<double>& sorted, double rate) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double f = exp_cdf(sorted[i], rate);
    d = std::max(d, std::max(f - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - f));
  }
  return d;
}

}  // namespace

KsResult ks_one_sample_exp(const std::vector<double>& sample, double rate) {
  if (sample.empty()) throw NumericError("KS test on an empty sample");
  if (!(rate > 0.0)) throw ConfigError("exponential rate must be positive");
  std::vector<double> sorted = sample;
  std::sort(sorted.begin(), sorted.end());
  KsResult res;
  res.d = ks_stat_exp_sorted(sorted, rate);
  res.p_value = kolmogorov_q(
      corrected_lambda(static_cast<double>(sorted.size()), res.d));
  return res;
}

KsResult ks_two_sample(std::vector<double> x, std::vector<double> y) {
  if (x.empty() || y.empty())
    throw NumericError("KS test on an empty sample");
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double en_x = static_cast<double>(x.size());
  const double en_y = static_cast<double>(y.size());
  std::size_t jx = 0, jy = 0;
  double fx = 0.0, fy = 0.0, d = 0.0;
  while (jx < x.size() && jy < y.size()) {
    double vx = x[jx];
    double vy = y[jy];
    // Step over whole tie blocks before comparing: evaluating mid-block
    // fabricates a CDF gap whenever the samples repeat a value a different
    // number of times.
    if (vx <= vy) {
      do ++jx; while (jx < x.size() && x[jx] == vx);
      fx = static_cast<double>(jx) / en_x;
    }
    if (vy <= vx) {
      do ++jy; while (jy < y.size() && y[jy] == vy);
      fy = static_cast<double>(jy) / en_y;
    }
    d = std::max(d, std::abs(fx - fy));
  }
  double n_eff = en_x * en_y / (en_x + en_y);
  return {d, kolmogorov_q(corrected_lambda(n_eff, d))};
}

RateFit fit_exp_rate_max_p(const std::vector<double>& sample) {
  if (sample.empty()) throw NumericError("rate fit on an empty sample");
  double sum = 0.0;
  for (double v : sample) sum += v;
  if (!(sum > 0.0))
    throw NumericError("rate fit needs a sample with positive mean");
  std::vector<double> sorted = sample;
  std::sort(sorted.begin(), sorted.end());
  auto d_for = [&sorted](double rate) {
    return ks_stat_exp_sorted(sorted, rate);
  };

  constexpr double kStep = 1e-3;
  constexpr double kLo = 1e-3;
  constexpr double kHi = 10.0;
  double best_rate = kLo;
  double best_d = d_for(kLo);
  for (int i = 2; i <= 10000; ++i) {
    double rate = i * kStep;
    double d = d_for(rate);
    if (d < best_d) {
      best_d = d;
      best_rate = rate;
    }
  }

  // Golden-section refinement inside the winning grid bracket.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = std::max(kLo, best_rate - kStep);
  double hi = std::min(kHi, best_rate + kStep);
  double c = hi - invphi * (hi - lo);
  double e = lo + invphi * (hi - lo);
  double fc = d_for(c);
  double fe = d_for(e);
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    if (fc < fe) {
      hi = e;
      e = c;
      fe = fc;
      c = hi - invphi * (hi - lo);
      fc = d_for(c);
    } else {
      lo = c;
      c = e;
      fc = fe;
      e = lo + invphi * (hi - lo);
      fe = d_for(e);
    }
  }
  double refined = 0.5 * (lo + hi);
  double rate = d_for(refined) <= best_d ? refined : best_rate;

  RateFit fit;
  fit.rate = rate;
  fit.ks = ks_one_sample_exp(sample, rate);
  return fit;
}

std::vector<double> expand_counts(const std::map<int, std::int64_t>& counts) {
  std::vector<double> sample;
  for (const auto& [value, count] : counts) {
    if (count < 0) throw NumericError("negative histogram count");
    sample.insert(sample.end(), static_cast<std::size_t>(count),
                  static_cast<double>(value));
  }
  return sample;
}

std::vector<double> expand_counts(const std::vector<std::int64_t>& hist) {
  std::vector<double> sample;
  for (std::size_t value = 0; value < hist.size(); ++value) {
    if (hist[value] < 0) throw NumericError("negative histogram count");
    sample.insert(sample.end(), static_cast<std::size_t>(hist[value]),
                  static_cast<double>(value));
  }
  return sample;
}

std::vector<double> counts_in_range(const std::map<int, std::int64_t>& counts,
                                    int lo, int hi) {
  if (hi < lo) throw NumericError("empty histogram range");
  std::vector<double> out(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (const auto& [value, count] : counts) {
    if (value < lo || value > hi) continue;
    out[static_cast<std::size_t>(value - lo)] = static_cast<double>(count);
  }
  return out;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size())
    throw NumericError("correlation inputs differ in length");
  if (x.size() < 2) throw NumericError("correlation needs at least 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = x[i] - mx;
    double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0)
    throw NumericError("correlation undefined for a constant input");
  return sxy / std::sqrt(sxx * syy);
}

namespace {

double rss_at(const std::vector<double>& x, const std::vector<double>& y,
              double a, double b) {
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - std::exp(a + b * x[i]);
    rss += r * r;
  }
  return rss;
}

}  // namespace

FitResult nls_exp(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size())
    throw NumericError("fit inputs differ in length");
  const std::size_t n = x.size();
  if (n < 3) throw NumericError("fit needs at least 3 points");

  // Log-linear initialization on the strictly positive observations.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(y[i] > 0.0)) continue;
    double ly = std::log(y[i]);
    sx += x[i];
    sy += ly;
    sxx += x[i] * x[i];
    sxy += x[i] * ly;
    ++m;
  }
  if (m < 2)
    throw NumericError("fit needs at least 2 positive observations");
  double denom = m * sxx - sx * sx;
  if (std::abs(denom) < 1e-30)
    throw NumericError("fit initialization is degenerate");
  double b = (m * sxy - sx * sy) / denom;
  double a = (sy - b * sx) / m;

  FitResult res;
  double rss = rss_at(x, y, a, b);
  double jtj[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  int iter = 0;
  for (; iter < 200; ++iter) {
    // Gauss-Newton normal equations for residual y - exp(a + b x).
    double jtr[2] = {0.0, 0.0};
    jtj[0][0] = jtj[0][1] = jtj[1][1] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double f = std::exp(a + b * x[i]);
      double r = y[i] - f;
      double ja = f;
      double jb = f * x[i];
      jtj[0][0] += ja * ja;
      jtj[0][1] += ja * jb;
      jtj[1][1] += jb * jb;
      jtr[0] += ja * r;
      jtr[1] += jb * r;
    }
    double det = jtj[0][0] * jtj[1][1] - jtj[0][1] * jtj[0][1];
    if (std::abs(det) < 1e-300)
      throw NumericError("fit normal equations are singular");
    double da = (jtj[1][1] * jtr[0] - jtj[0][1] * jtr[1]) / det;
    double db = (jtj[0][0] * jtr[1] - jtj[0][1] * jtr[0]) / det;

    double scale = 1.0;
    double new_a = a, new_b = b, new_rss = rss;
    bool improved = false;
    for (int h = 0; h < 60; ++h) {
      double ta = a + scale * da;
      double tb = b + scale * db;
      double trss = rss_at(x, y, ta, tb);
      if (trss < rss) {
        new_a = ta;
        new_b = tb;
        new_rss = trss;
        improved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!improved) {
      res.converged = true;
      break;
    }
    double rel = std::abs(rss - new_rss) / std::max(rss, 1e-300);
    a = new_a;
    b = new_b;
    rss = new_rss;
    if (rel < 1e-9) {
      res.converged = true;
      ++iter;
      break;
    }
  }

  res.a = a;
  res.b = b;
  res.rss = rss;
  res.iterations = iter;
  res.fitted.resize(n);
  for (std::size_t i = 0; i < n; ++i) res.fitted[i] = std::exp(a + b * x[i]);

  // Recompute J'J at the optimum for the covariance estimate.
  jtj[0][0] = jtj[0][1] = jtj[1][1] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double f = res.fitted[i];
    double ja = f;
    double jb = f * x[i];
    jtj[0][0] += ja * ja;
    jtj[0][1] += ja * jb;
    jtj[1][1] += jb * jb;
  }
  double det = jtj[0][0] * jtj[1][1] - jtj[0][1] * jtj[0][1];
  if (std::abs(det) < 1e-300)
    throw NumericError("fit covariance is singular");
  double sigma2 = rss / static_cast<double>(n - 2);
  res.se_a = std::sqrt(jtj[1][1] / det * sigma2);
  res.se_b = std::sqrt(jtj[0][0] / det * sigma2);
  return res;
}

}  // namespace recessim
