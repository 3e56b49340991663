#include "w2het/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "w2het/rng.hpp"

namespace w2het {

std::string family_name(Family f) {
  switch (f) {
    case Family::gaussian: return "gaussian";
    case Family::gaussian_diag: return "gaussian_diag";
    case Family::discrete: return "discrete";
    case Family::empirical1d: return "empirical1d";
  }
  throw std::logic_error("family_name: unreachable");
}

Family family_from_name(const std::string& name) {
  if (name == "gaussian") return Family::gaussian;
  if (name == "gaussian_diag") return Family::gaussian_diag;
  if (name == "discrete") return Family::discrete;
  if (name == "empirical1d") return Family::empirical1d;
  throw std::invalid_argument("unknown measure family: " + name);
}

namespace {

bool all_finite(const Eigen::MatrixXd& m) { return m.allFinite(); }

void throw_if_invalid(const ValidationResult& r, const char* what) {
  if (!r.ok()) throw std::invalid_argument(std::string(what) + ": " + r.first_error());
}

}  // namespace

ValidationResult validate_gaussian(const Eigen::VectorXd& mean, const Eigen::MatrixXd& covariance) {
  ValidationResult r;
  if (mean.size() == 0) r.errors.push_back("mean is empty");
  if (!all_finite(mean)) r.errors.push_back("mean has non-finite entries");
  if (covariance.rows() != covariance.cols()) {
    r.errors.push_back("covariance is not square");
    return r;
  }
  if (covariance.rows() != mean.size()) {
    r.errors.push_back("covariance dimension does not match mean");
    return r;
  }
  if (!all_finite(covariance)) {
    r.errors.push_back("covariance has non-finite entries");
    return r;
  }
  const double scale = std::max(1e-300, covariance.cwiseAbs().maxCoeff());
  const double asym = (covariance - covariance.transpose()).cwiseAbs().maxCoeff();
  if (asym > kCovSymmetryTol * scale) {
    r.errors.push_back("covariance is not symmetric (max asymmetry " + std::to_string(asym) + ")");
    return r;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (covariance + covariance.transpose()),
                                                    Eigen::EigenvaluesOnly);
  const double lmax = std::max(0.0, es.eigenvalues().maxCoeff());
  const double lmin = es.eigenvalues().minCoeff();
  const double floor = -kCovEigenFloor * std::max(lmax, 1e-300);
  if (lmin < floor) {
    r.errors.push_back("covariance has eigenvalue " + std::to_string(lmin) +
                       " below the round-off floor; matrix is indefinite");
  } else if (lmin < 0.0) {
    r.warnings.push_back("covariance eigenvalue " + std::to_string(lmin) +
                         " within round-off floor; clamped to zero");
  }
  return r;
}

ValidationResult validate_gaussian_diag(const Eigen::VectorXd& mean, const Eigen::VectorXd& diag_std) {
  ValidationResult r;
  if (mean.size() == 0) r.errors.push_back("mean is empty");
  if (!all_finite(mean)) r.errors.push_back("mean has non-finite entries");
  if (diag_std.size() != mean.size()) r.errors.push_back("diag_std length does not match mean");
  if (!all_finite(diag_std)) {
    r.errors.push_back("diag_std has non-finite entries");
  } else if ((diag_std.array() <= 0.0).any()) {
    r.errors.push_back("diag_std entries must be > 0");
  }
  return r;
}

ValidationResult validate_discrete(const Eigen::MatrixXd& support, const Eigen::VectorXd& weights) {
  ValidationResult r;
  if (support.rows() < 1) r.errors.push_back("support needs at least one atom");
  if (weights.size() != support.rows()) r.errors.push_back("weights length does not match atom count");
  if (!all_finite(support)) r.errors.push_back("support has non-finite entries");
  if (!all_finite(weights)) {
    r.errors.push_back("weights have non-finite entries");
    return r;
  }
  if ((weights.array() < 0.0).any()) r.errors.push_back("weights must be nonnegative");
  if (weights.size() > 0 && std::abs(weights.sum() - 1.0) > kWeightSumTol) {
    r.errors.push_back("weights sum != 1 (sum = " + std::to_string(weights.sum()) + ")");
  }
  return r;
}

ValidationResult validate_empirical1d(const Eigen::VectorXd& samples) {
  ValidationResult r;
  if (samples.size() < 1) r.errors.push_back("empirical measure needs at least one sample");
  if (!all_finite(samples)) r.errors.push_back("samples have non-finite entries");
  return r;
}

GaussianMeasure::GaussianMeasure(Eigen::VectorXd mean, Eigen::MatrixXd covariance) {
  throw_if_invalid(validate_gaussian(mean, covariance), "GaussianMeasure");
  mean_ = std::move(mean);
  covariance_ = std::move(covariance);
}

GaussianMeasure GaussianMeasure::axis_aligned(Eigen::VectorXd mean, Eigen::VectorXd diag_std) {
  throw_if_invalid(validate_gaussian_diag(mean, diag_std), "GaussianMeasure (axis-aligned)");
  GaussianMeasure g;
  g.mean_ = std::move(mean);
  g.diag_std_ = std::move(diag_std);
  return g;
}

const Eigen::VectorXd& GaussianMeasure::diag_std() const {
  if (!diag_std_) throw std::logic_error("GaussianMeasure: not in axis-aligned form");
  return *diag_std_;
}

const Eigen::MatrixXd& GaussianMeasure::covariance() const {
  if (!covariance_) throw std::logic_error("GaussianMeasure: no full covariance stored");
  return *covariance_;
}

Eigen::MatrixXd GaussianMeasure::covariance_matrix() const {
  if (covariance_) return *covariance_;
  return diag_std_->array().square().matrix().asDiagonal();
}

DiscreteMeasure::DiscreteMeasure(Eigen::MatrixXd support, Eigen::VectorXd weights) {
  throw_if_invalid(validate_discrete(support, weights), "DiscreteMeasure");
  support_ = std::move(support);
  weights_ = std::move(weights);
}

Empirical1D::Empirical1D(Eigen::VectorXd samples) {
  throw_if_invalid(validate_empirical1d(samples), "Empirical1D");
  samples_ = std::move(samples);
  std::sort(samples_.begin(), samples_.end());
}

Family measure_family(const Measure& m) {
  return std::visit(
      [](const auto& v) -> Family {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, GaussianMeasure>) {
          return v.is_axis_aligned() ? Family::gaussian_diag : Family::gaussian;
        } else if constexpr (std::is_same_v<T, DiscreteMeasure>) {
          return Family::discrete;
        } else {
          return Family::empirical1d;
        }
      },
      m);
}

Eigen::Index measure_dim(const Measure& m) {
  return std::visit(
      [](const auto& v) -> Eigen::Index {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Empirical1D>) {
          return 1;
        } else {
          return v.dim();
        }
      },
      m);
}

bool measure_equal(const Measure& a, const Measure& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ga = std::get_if<GaussianMeasure>(&a)) {
    const auto& gb = std::get<GaussianMeasure>(b);
    if (ga->is_axis_aligned() != gb.is_axis_aligned()) return false;
    if (ga->mean() != gb.mean()) return false;
    return ga->is_axis_aligned() ? ga->diag_std() == gb.diag_std()
                                 : ga->covariance() == gb.covariance();
  }
  if (const auto* da = std::get_if<DiscreteMeasure>(&a)) {
    const auto& db = std::get<DiscreteMeasure>(b);
    return da->support() == db.support() && da->weights() == db.weights();
  }
  const auto& ea = std::get<Empirical1D>(a);
  const auto& eb = std::get<Empirical1D>(b);
  return ea.samples() == eb.samples();
}

ValidationResult validate_measure(const Measure& m) {
  return std::visit(
      [](const auto& v) -> ValidationResult {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, GaussianMeasure>) {
          return v.is_axis_aligned() ? validate_gaussian_diag(v.mean(), v.diag_std())
                                     : validate_gaussian(v.mean(), v.covariance());
        } else if constexpr (std::is_same_v<T, DiscreteMeasure>) {
          return validate_discrete(v.support(), v.weights());
        } else {
          return validate_empirical1d(v.samples());
        }
      },
      m);
}

Measure translate(const Measure& m, const Eigen::VectorXd& shift) {
  if (shift.size() != measure_dim(m)) {
    throw std::invalid_argument("translate: shift dimension does not match measure");
  }
  if (const auto* g = std::get_if<GaussianMeasure>(&m)) {
    if (g->is_axis_aligned()) {
      return GaussianMeasure::axis_aligned(g->mean() + shift, g->diag_std());
    }
    return GaussianMeasure(g->mean() + shift, g->covariance());
  }
  if (const auto* d = std::get_if<DiscreteMeasure>(&m)) {
    Eigen::MatrixXd support = d->support();
    support.rowwise() += shift.transpose();
    return DiscreteMeasure(std::move(support), d->weights());
  }
  const auto& e = std::get<Empirical1D>(m);
  return Empirical1D(e.samples().array() + shift(0));
}

MeasureCollection::MeasureCollection(std::vector<Measure> items, std::vector<std::string> labels) {
  if (items.empty()) throw std::invalid_argument("MeasureCollection: empty collection");
  if (!labels.empty() && labels.size() != items.size()) {
    throw std::invalid_argument("MeasureCollection: label count does not match item count");
  }
  family_ = measure_family(items.front());
  dimension_ = measure_dim(items.front());
  for (const auto& m : items) {
    if (measure_family(m) != family_) {
      throw std::invalid_argument("MeasureCollection: mixed measure families");
    }
    if (measure_dim(m) != dimension_) {
      throw std::invalid_argument("MeasureCollection: mixed dimensions");
    }
  }
  items_ = std::move(items);
  labels_ = std::move(labels);
}

std::string MeasureCollection::label(std::size_t i) const {
  if (!labels_.empty()) return labels_[i];
  return std::to_string(i);
}

DiscreteMeasure subsample_discrete(const DiscreteMeasure& m, std::size_t size, std::uint64_t seed) {
  if (size == 0) throw std::invalid_argument("subsample_discrete: size must be positive");
  // inverse-CDF draws over the atom weights
  const Eigen::Index k = m.atoms();
  std::vector<double> cum(static_cast<std::size_t>(k));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    acc += m.weights()(i);
    cum[static_cast<std::size_t>(i)] = acc;
  }
  cum.back() = 1.0;

  Rng rng(seed);
  Eigen::MatrixXd support(static_cast<Eigen::Index>(size), m.dim());
  for (std::size_t s = 0; s < size; ++s) {
    const double u = rng.uniform();
    const auto it = std::lower_bound(cum.begin(), cum.end(), u);
    const auto idx = static_cast<Eigen::Index>(it - cum.begin());
    support.row(static_cast<Eigen::Index>(s)) = m.support().row(idx);
  }
  Eigen::VectorXd weights =
      Eigen::VectorXd::Constant(static_cast<Eigen::Index>(size), 1.0 / static_cast<double>(size));
  return DiscreteMeasure(std::move(support), std::move(weights));
}

}  // namespace w2het
