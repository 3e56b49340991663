#pragma once

#include <span>
#include <utility>
#include <vector>

#include "w2het/measures.hpp"

namespace w2het {

enum class MatrixSource {
  computed_gaussian,
  computed_gaussian_diag,
  computed_discrete,
  computed_empirical1d,
  ingested,
};

std::string matrix_source_name(MatrixSource s);
MatrixSource matrix_source_from_name(const std::string& name);

// Symmetric matrix of pairwise W2 values (distances, not squared). The
// sufficient statistic for all downstream inference.
class DistanceMatrix {
 public:
  DistanceMatrix(Eigen::MatrixXd values, MatrixSource source);

  std::size_t size() const { return static_cast<std::size_t>(values_.rows()); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }
  const Eigen::MatrixXd& values() const { return values_; }
  MatrixSource source() const { return source_; }

  // Strict upper triangle in row-major order, length n(n-1)/2.
  std::vector<double> upper_triangle() const;

 private:
  Eigen::MatrixXd values_;
  MatrixSource source_;
};

// Optimal coupling for a discrete pair, with the dual certificate produced by
// the solver: plan cost is the squared-distance objective, and the potentials
// satisfy feasibility and complementary slackness within kCertificateTol.
struct TransportPlan {
  Eigen::MatrixXd plan;
  double cost = 0.0;
  Eigen::VectorXd source_potential;
  Eigen::VectorXd target_potential;
};

inline constexpr std::size_t kDefaultCostEntryCap = 4'000'000;
inline constexpr double kCertificateTol = 1e-8;

// Bures-Wasserstein distance between Gaussians:
// W2^2 = |m_a - m_b|^2 + tr(Sa + Sb - 2 (Sa^{1/2} Sb Sa^{1/2})^{1/2}),
// evaluated by symmetric eigendecomposition with eigenvalue clamping.
// Arguments are ordered canonically so w2_gaussian(a, b) == w2_gaussian(b, a) exactly.
double w2_gaussian(const GaussianMeasure& a, const GaussianMeasure& b);

// Axis-aligned closed form: W2^2 = |m_a - m_b|^2 + |s_a - s_b|^2.
double w2_gaussian_diag(const GaussianMeasure& a, const GaussianMeasure& b);

// Quantile-coupling evaluation on the line.
double w2_empirical_1d(const Empirical1D& a, const Empirical1D& b);

// Exact W2 between weighted atomic measures on the line: piecewise-constant
// integral of (Fa^{-1} - Fb^{-1})^2 over the merged grid of jump points.
// Atom locations must be sorted nondecreasing; weights sum to one.
double w2_quantile_1d(std::span<const double> xa, std::span<const double> wa,
                      std::span<const double> xb, std::span<const double> wb);

// Exact discrete optimal transport (network simplex on the bipartite problem).
// Throws if k1*k2 exceeds cost_entry_cap.
std::pair<double, TransportPlan> w2_discrete_exact(const DiscreteMeasure& a,
                                                   const DiscreteMeasure& b,
                                                   std::size_t cost_entry_cap = kDefaultCostEntryCap);

// Independent brute-force oracle for supports of at most 6 atoms each: vertex
// enumeration of the transport polytope (northwest-corner bases over all
// row/column orderings). Test harness use only.
double w2_discrete_oracle(const DiscreteMeasure& a, const DiscreteMeasure& b);

// W2 within a single family (dispatch on the measure variant).
double w2(const Measure& a, const Measure& b);

// All unordered pairs, each computed exactly once. Deterministic and
// independent of the worker count (each cell is one pure evaluation).
DistanceMatrix pairwise_distances(const MeasureCollection& c, int workers = 1);

}  // namespace w2het
