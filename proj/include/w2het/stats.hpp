#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace w2het {

// Standard normal quantile by Wichura's algorithm AS 241 (PPND16): three
// rational approximations with |relative error| below 1e-15 on (0, 1).
// Throws std::domain_error for p outside (0, 1).
double normal_quantile(double p);

double normal_cdf(double z);

// Asymptotic Kolmogorov tail probability P(sup|B| > x) = 2 sum (-1)^{k-1} e^{-2 k^2 x^2}.
double kolmogorov_tail(double x);

// One-sample Kolmogorov-Smirnov statistics (input need not be sorted).
double ks_statistic_normal(std::span<const double> values);   // against N(0,1)
double ks_statistic_uniform(std::span<const double> values);  // against U(0,1)

// p-value of the one-sample KS test from the asymptotic null distribution.
double ks_p_value(double d, std::size_t n);

// Compensated (Kahan) accumulation.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;  // divisor n-1
  double skewness = 0.0;
  double kurtosis = 0.0;  // raw kurtosis (Normal -> 3)
};

MomentSummary moments(std::span<const double> xs);

double sample_mean(std::span<const double> xs);
double sample_variance(std::span<const double> xs);  // divisor n-1
double median(std::vector<double> xs);               // even count: midpoint

}  // namespace w2het
