#include "w2het/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace w2het {

namespace {

// AS 241 coefficient sets (Wichura 1988, PPND16).
double central(double q) {
  // |q| <= 0.425
  const double r = 0.180625 - q * q;
  const double num = q * (((((((2509.0809287301226727 * r + 33430.575583588128105) * r +
                               67265.770927008700853) *
                                  r +
                              45921.953931549871457) *
                                 r +
                             13731.693765509461125) *
                                r +
                            1971.5909503065514427) *
                               r +
                           133.14166789178437745) *
                              r +
                          3.387132872796366608);
  const double den = (((((((5226.495278852854561 * r + 28729.085735721942674) * r +
                           39307.89580009271061) *
                              r +
                          21213.794301586595867) *
                             r +
                         5394.1960214247511077) *
                            r +
                        687.1870074920579083) *
                           r +
                       42.313330701600911252) *
                          r +
                      1.0);
  return num / den;
}

double middle(double r) {
  // 1.6 already subtracted; covers sqrt(-log(min(p,1-p))) <= 5
  const double num = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r +
                           0.24178072517745061177) *
                              r +
                          1.27045825245236838258) *
                             r +
                         3.64784832476320460504) *
                            r +
                        5.7694972214606914055) *
                           r +
                       4.6303378461565452959) *
                          r +
                      1.42343711074968357734);
  const double den = (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r +
                           0.0151986665636164571966) *
                              r +
                          0.14810397642748007459) *
                             r +
                         0.68976733498510000455) *
                            r +
                        1.6763848301838038494) *
                           r +
                       2.05319162663775882187) *
                          r +
                      1.0);
  return num / den;
}

double tail(double r) {
  // 5 already subtracted; deep tail
  const double num = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                           0.0012426609473880784386) *
                              r +
                          0.026532189526576123093) *
                             r +
                         0.29656057182850489123) *
                            r +
                        1.7848265399172913358) *
                           r +
                       5.4637849111641143699) *
                          r +
                      6.6579046435011037772);
  const double den = (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r +
                           1.8463183175100546818e-5) *
                              r +
                          7.868691311456132591e-4) *
                             r +
                         0.0148753612908506148525) *
                            r +
                        0.13692988092273580531) *
                           r +
                       0.59983220655588793769) *
                          r +
                      1.0);
  return num / den;
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("normal_quantile: p must lie strictly in (0, 1)");
  }
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    return central(q);
  }
  const double r = (q < 0.0) ? p : 1.0 - p;
  double s = std::sqrt(-std::log(r));
  double val = (s <= 5.0) ? middle(s - 1.6) : tail(s - 5.0);
  return (q < 0.0) ? -val : val;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z * 0.7071067811865475244); }

double kolmogorov_tail(double x) {
  if (x <= 0.0) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

template <typename Cdf>
double ks_statistic(std::span<const double> values, Cdf cdf) {
  if (values.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::vector<double> xs(values.begin(), values.end());
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  return d;
}

}  // namespace

double ks_statistic_normal(std::span<const double> values) {
  return ks_statistic(values, [](double x) { return normal_cdf(x); });
}

double ks_statistic_uniform(std::span<const double> values) {
  return ks_statistic(values, [](double x) { return std::clamp(x, 0.0, 1.0); });
}

double ks_p_value(double d, std::size_t n) {
  return kolmogorov_tail(std::sqrt(static_cast<double>(n)) * d);
}

MomentSummary moments(std::span<const double> xs) {
  if (xs.size() < 2) throw std::invalid_argument("moments: need at least two values");
  const double n = static_cast<double>(xs.size());
  KahanSum s;
  for (double x : xs) s.add(x);
  const double mean = s.value() / n;
  KahanSum m2, m3, m4;
  for (double x : xs) {
    const double d = x - mean;
    m2.add(d * d);
    m3.add(d * d * d);
    m4.add(d * d * d * d);
  }
  MomentSummary out;
  out.mean = mean;
  out.variance = m2.value() / (n - 1.0);
  const double v = m2.value() / n;  // population variance for shape moments
  const double sd = std::sqrt(v);
  out.skewness = (v > 0.0) ? (m3.value() / n) / (sd * sd * sd) : 0.0;
  out.kurtosis = (v > 0.0) ? (m4.value() / n) / (v * v) : 0.0;
  return out;
}

double sample_mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("sample_mean: empty input");
  KahanSum s;
  for (double x : xs) s.add(x);
  return s.value() / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) throw std::invalid_argument("sample_variance: need at least two values");
  const double mean = sample_mean(xs);
  KahanSum s;
  for (double x : xs) {
    const double d = x - mean;
    s.add(d * d);
  }
  return s.value() / static_cast<double>(xs.size() - 1);
}

double median(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("median: empty input");
  const std::size_t mid = xs.size() / 2;
  std::nth_element(xs.begin(), xs.begin() + mid, xs.end());
  const double upper = xs[mid];
  if (xs.size() % 2 == 1) return upper;
  const double lower = *std::max_element(xs.begin(), xs.begin() + mid);
  return 0.5 * (lower + upper);
}

}  // namespace w2het
