#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace w2het {

enum class Family { gaussian, gaussian_diag, discrete, empirical1d };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

struct ValidationResult {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  bool ok() const { return errors.empty(); }
  // First violated invariant, or empty when valid.
  std::string first_error() const { return errors.empty() ? std::string{} : errors.front(); }
};

// Covariance eigenvalues in [-kCovEigenFloor * lambda_max, 0) are treated as
// round-off and clamped to zero; anything lower is rejected as indefinite.
inline constexpr double kCovEigenFloor = 1e-10;
inline constexpr double kCovSymmetryTol = 1e-10;   // relative to max |entry|
inline constexpr double kWeightSumTol = 1e-12;

ValidationResult validate_gaussian(const Eigen::VectorXd& mean, const Eigen::MatrixXd& covariance);
ValidationResult validate_gaussian_diag(const Eigen::VectorXd& mean, const Eigen::VectorXd& diag_std);
ValidationResult validate_discrete(const Eigen::MatrixXd& support, const Eigen::VectorXd& weights);
ValidationResult validate_empirical1d(const Eigen::VectorXd& samples);

// Gaussian measure, either with a full symmetric PSD covariance or in the
// axis-aligned form that stores marginal standard deviations only.
// Immutable after construction; constructors throw std::invalid_argument.
class GaussianMeasure {
 public:
  GaussianMeasure(Eigen::VectorXd mean, Eigen::MatrixXd covariance);
  static GaussianMeasure axis_aligned(Eigen::VectorXd mean, Eigen::VectorXd diag_std);

  const Eigen::VectorXd& mean() const { return mean_; }
  bool is_axis_aligned() const { return diag_std_.has_value(); }
  const Eigen::VectorXd& diag_std() const;   // axis-aligned form only
  const Eigen::MatrixXd& covariance() const; // full form only
  Eigen::MatrixXd covariance_matrix() const; // either form
  Eigen::Index dim() const { return mean_.size(); }

 private:
  GaussianMeasure() = default;
  Eigen::VectorXd mean_;
  std::optional<Eigen::MatrixXd> covariance_;
  std::optional<Eigen::VectorXd> diag_std_;
};

// Finitely supported measure: k atom locations (rows) with weights on the simplex.
class DiscreteMeasure {
 public:
  DiscreteMeasure(Eigen::MatrixXd support, Eigen::VectorXd weights);

  const Eigen::MatrixXd& support() const { return support_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  Eigen::Index atoms() const { return support_.rows(); }
  Eigen::Index dim() const { return support_.cols(); }

 private:
  Eigen::MatrixXd support_;
  Eigen::VectorXd weights_;
};

// Uniform empirical measure on the line; samples are stored sorted.
class Empirical1D {
 public:
  explicit Empirical1D(Eigen::VectorXd samples);

  const Eigen::VectorXd& samples() const { return samples_; }
  Eigen::Index size() const { return samples_.size(); }

 private:
  Eigen::VectorXd samples_;
};

using Measure = std::variant<GaussianMeasure, DiscreteMeasure, Empirical1D>;

Family measure_family(const Measure& m);
Eigen::Index measure_dim(const Measure& m);
bool measure_equal(const Measure& a, const Measure& b);  // exact content equality
ValidationResult validate_measure(const Measure& m);

// Pushforward under x -> x + shift (1-d measures take shift of length 1).
Measure translate(const Measure& m, const Eigen::VectorXd& shift);

// Ordered, homogeneous collection: one family, one ambient dimension.
class MeasureCollection {
 public:
  explicit MeasureCollection(std::vector<Measure> items, std::vector<std::string> labels = {});

  std::size_t size() const { return items_.size(); }
  const Measure& operator[](std::size_t i) const { return items_[i]; }
  const std::vector<Measure>& items() const { return items_; }
  const std::vector<std::string>& labels() const { return labels_; }  // empty or size()
  std::string label(std::size_t i) const;
  Family family() const { return family_; }
  Eigen::Index dimension() const { return dimension_; }

 private:
  std::vector<Measure> items_;
  std::vector<std::string> labels_;
  Family family_;
  Eigen::Index dimension_;
};

// `size` i.i.d. draws from m with uniform weights; deterministic given seed.
DiscreteMeasure subsample_discrete(const DiscreteMeasure& m, std::size_t size, std::uint64_t seed);

}  // namespace w2het
