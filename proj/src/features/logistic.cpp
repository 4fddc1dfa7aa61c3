#include "reid/features/logistic.hpp"

#include <cmath>

#include "reid/error.hpp"

namespace reid {

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

}  // namespace

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double BinaryLogistic::score(std::span<const double> x) const {
  if (x.size() != weights.size()) {
    throw InvalidArgument("logistic model expects " + std::to_string(weights.size()) +
                          " features, got " + std::to_string(x.size()));
  }
  double s = bias;
  for (std::size_t i = 0; i < x.size(); ++i) s += weights[i] * x[i];
  return s;
}

double LogisticObjective::value(const Eigen::VectorXd& params) const {
  const Eigen::Index d = x_.cols();
  const Eigen::VectorXd z = (x_ * params.head(d)).array() + params(d);
  double loss = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) loss += softplus(z(i)) - y_(i) * z(i);
  loss /= static_cast<double>(z.size());
  return loss + 0.5 * l2_ * params.head(d).squaredNorm();
}

double LogisticObjective::value_and_gradient(const Eigen::VectorXd& params, Eigen::VectorXd& grad) const {
  const Eigen::Index d = x_.cols();
  const double n = static_cast<double>(x_.rows());
  const Eigen::VectorXd z = (x_ * params.head(d)).array() + params(d);
  Eigen::VectorXd residual(z.size());
  double loss = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    loss += softplus(z(i)) - y_(i) * z(i);
    residual(i) = sigmoid(z(i)) - y_(i);
  }
  grad.resize(d + 1);
  grad.head(d) = x_.transpose() * residual / n + l2_ * params.head(d);
  grad(d) = residual.sum() / n;
  return loss / n + 0.5 * l2_ * params.head(d).squaredNorm();
}

LogisticFit train_logistic(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                           const LogisticTrainOptions& options) {
  if (x.rows() == 0) throw InvalidArgument("logistic regression needs at least one sample");
  if (y.size() != x.rows()) throw InvalidArgument("label count does not match sample count");

  const LogisticObjective objective(x, y, options.l2);
  Eigen::VectorXd params = Eigen::VectorXd::Zero(x.cols() + 1);
  Eigen::VectorXd grad;
  double loss = objective.value_and_gradient(params, grad);

  LogisticFit fit;
  fit.loss_history.push_back(loss);
  double step = 1.0;
  for (int epoch = 0; epoch < options.max_epochs; ++epoch) {
    const double g2 = grad.squaredNorm();
    if (g2 == 0.0) break;
    double t = std::min(step * 2.0, 1e3);
    Eigen::VectorXd candidate;
    double candidate_loss = loss;
    bool accepted = false;
    while (t > 1e-12) {
      candidate = params - t * grad;
      candidate_loss = objective.value(candidate);
      if (candidate_loss <= loss - 0.5 * t * g2) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    const double decrease = loss - candidate_loss;
    params = candidate;
    loss = objective.value_and_gradient(params, grad);
    fit.loss_history.push_back(loss);
    step = t;
    if (decrease < options.tolerance) break;
  }

  const Eigen::Index d = x.cols();
  fit.model.weights.assign(params.data(), params.data() + d);
  fit.model.bias = params(d);
  return fit;
}

OneVsAllFit train_one_vs_all(const Eigen::MatrixXd& x, std::span<const int> labels,
                             std::span<const int> classes, const LogisticTrainOptions& options) {
  if (labels.size() != static_cast<std::size_t>(x.rows())) {
    throw InvalidArgument("label count does not match sample count");
  }
  const Eigen::Index d = x.cols();
  const double n = static_cast<double>(x.rows());
  const Eigen::RowVectorXd mean = x.colwise().mean();
  Eigen::RowVectorXd scale(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double var = (x.col(j).array() - mean(j)).square().sum() / n;
    scale(j) = var > 0.0 ? std::sqrt(var) : 1.0;
  }
  const Eigen::MatrixXd z = (x.rowwise() - mean).array().rowwise() / scale.array();

  OneVsAllFit out;
  for (int cls : classes) {
    Eigen::VectorXd y(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) y(i) = labels[static_cast<std::size_t>(i)] == cls ? 1.0 : 0.0;
    auto fit = train_logistic(z, y, options);
    // Fold the standardization back into raw-feature weights.
    BinaryLogistic raw;
    raw.weights.resize(static_cast<std::size_t>(d));
    raw.bias = fit.model.bias;
    for (Eigen::Index j = 0; j < d; ++j) {
      const double w = fit.model.weights[static_cast<std::size_t>(j)] / scale(j);
      raw.weights[static_cast<std::size_t>(j)] = w;
      raw.bias -= w * mean(j);
    }
    out.models.push_back(std::move(raw));
    out.loss_histories.push_back(std::move(fit.loss_history));
  }
  return out;
}

}  // namespace reid
